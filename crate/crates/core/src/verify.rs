//! Structural verification battery: every quantitative claim the
//! construction is supposed to satisfy, with its tolerance pinned here.
//!
//! `run_all` drives the `verify-all` CLI command; the acceptance test
//! suite calls the same functions one criterion at a time (plus the
//! dense-eigensolver cross-check, whose reference implementation lives
//! in the test suite to stay independent of the inertia path).

use crate::error::Result;
use crate::grid::RadialGrid;
use crate::norms::{critical_family, fit_exponent, scan};
use crate::profile::Profile;
use crate::solution::{pde_residual, RadialSolution};
use crate::spectral::{hardy_check, radial_morse_index, splitting_check, stability_quotient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Sup-norm ceiling for the strong PDE residual.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// |u(1)| ceiling.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Rounding slack under N - 1 allowed for the annulus quotient.
pub const QUOTIENT_SLACK: f64 = 1e-9;
/// Nodes for the pointwise sign checks of f and f'.
pub const SIGN_NODES: usize = 10_000;
/// Working grid for index counts; refinement partner is twice this.
pub const INDEX_GRID: usize = 2048;
/// Grids at which the stability quotient must agree.
pub const QUOTIENT_GRIDS: [usize; 2] = [2048, 4096];
/// Residual grids (graded toward the origin).
pub const RESIDUAL_GRIDS: [usize; 2] = [2048, 4096];
/// Quadrature resolution for norm scans.
pub const NORM_GRID: usize = 2048;
/// Relative tolerance on fitted scaling slopes.
pub const SLOPE_REL_TOL: f64 = 0.05;
/// One-sided ceiling for the sup/L^q divergence slope at (N, q) = (3, 2):
/// -N/q + 0.1.
pub const LINFTY_SLOPE_MAX: f64 = -1.4;
/// Number of random Hardy test functions.
pub const HARDY_TRIALS: usize = 100;
/// Relative slack in the Hardy comparison lhs >= rhs - slack * lhs.
pub const HARDY_REL_SLACK: f64 = 1e-10;
/// Grid for the splitting meta-property.
pub const SPLITTING_GRID: usize = 512;

/// (N, r0) construction matrix shared by the structural criteria.
pub fn construction_matrix() -> Vec<(u32, f64)> {
    let mut out = Vec::new();
    for n in 3..=9u32 {
        for r0 in [0.2, 0.1, 0.05] {
            out.push((n, r0));
        }
    }
    out
}

/// Norm-quotient triples (N, p, q) for the divergence scaling fit, with
/// target slope N(1/q - 1/p).
pub const SCAN_TRIPLES: [(u32, f64, f64); 3] = [(3, 4.0, 2.0), (5, 3.0, 2.0), (9, 2.0, 1.5)];

/// r0 ladder for the scaling fits.
pub const SCAN_R0: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

/// Bubble-family sweep.
pub const CRITICAL_DIMS: [u32; 3] = [3, 4, 5];
pub const CRITICAL_LAMBDAS: [f64; 4] = [0.5, 0.25, 0.125, 0.0625];

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: &'static str,
    pub label: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn status_line(&self) -> String {
        format!("[{}] criterion {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.label)
    }
}

fn build(n: u32, r0: f64) -> Result<RadialSolution> {
    RadialSolution::build(Profile::new(n, r0)?)
}

/// Criterion 1: residual, boundary value, cutoff bound, and sign
/// structure across the construction matrix.
pub fn construction_validity() -> CriterionResult {
    let checks: Vec<(bool, String)> = construction_matrix()
        .par_iter()
        .map(|&(n, r0)| -> (bool, String) {
            let run = || -> Result<(bool, String)> {
                let sol = build(n, r0)?;
                let mut residual: f64 = 0.0;
                for g in RESIDUAL_GRIDS {
                    let grid = RadialGrid::geometric(0.0, 1.0, g)?;
                    residual = residual.max(pde_residual(&sol, &grid)?);
                }
                let boundary = sol.u(1.0)?.abs().max(sol.u_direct(1.0)?.abs());
                let psi_one = sol.profile().psi(1.0)?;
                let bound = sol.profile().params().kappa() * sol.profile().params().join_point();
                let mut signs_ok = true;
                for k in 0..=SIGN_NODES {
                    let r = k as f64 / SIGN_NODES as f64;
                    if sol.f_at_r(r)? < 0.0 || sol.fprime_at_r(r)? < 0.0 {
                        signs_ok = false;
                        break;
                    }
                }
                let ok = residual <= RESIDUAL_TOL
                    && boundary <= BOUNDARY_TOL
                    && psi_one <= bound * (1.0 + 1e-12)
                    && signs_ok;
                Ok((
                    ok,
                    format!(
                        "N={n} r0={r0}: residual={residual:.3e} |u(1)|={boundary:.3e} \
                         psi(1)={psi_one:.6e}<=bound {bound:.6e} signs_ok={signs_ok}"
                    ),
                ))
            };
            run().unwrap_or_else(|e| (false, format!("N={n} r0={r0}: error: {e}")))
        })
        .collect();
    CriterionResult {
        id: "1",
        label: "construction validity (residual, boundary, cutoff bound, signs)",
        passed: checks.iter().all(|(ok, _)| *ok),
        details: checks.into_iter().map(|(_, d)| d).collect(),
    }
}

/// Criterion 2: annulus stability quotient at or above N - 1 on both
/// working grids.
pub fn quotient_stability() -> CriterionResult {
    let checks: Vec<(bool, String)> = construction_matrix()
        .par_iter()
        .map(|&(n, r0)| {
            let run = || -> Result<(bool, String)> {
                let sol = build(n, r0)?;
                let floor = (n - 1) as f64 - QUOTIENT_SLACK;
                let mut values = Vec::new();
                let mut ok = true;
                for g in QUOTIENT_GRIDS {
                    let q = stability_quotient(&sol, r0, g)?;
                    ok &= q >= floor;
                    values.push(format!("n={g}: {q:.6}"));
                }
                Ok((ok, format!("N={n} r0={r0}: quotient {} (floor {floor:.9})", values.join(", "))))
            };
            run().unwrap_or_else(|e| (false, format!("N={n} r0={r0}: error: {e}")))
        })
        .collect();
    CriterionResult {
        id: "2",
        label: "annulus stability quotient >= N - 1 (weighted Rayleigh route)",
        passed: checks.iter().all(|(ok, _)| *ok),
        details: checks.into_iter().map(|(_, d)| d).collect(),
    }
}

/// Criterion 3: index 0 on the inner ball and annulus, 1 on the whole
/// ball, refinement-consistent, for r0 <= 0.1.
pub fn spectral_stability() -> CriterionResult {
    let configs: Vec<(u32, f64)> =
        construction_matrix().into_iter().filter(|&(_, r0)| r0 <= 0.1).collect();
    let checks: Vec<(bool, String)> = configs
        .par_iter()
        .map(|&(n, r0)| {
            let run = || -> Result<(bool, String)> {
                let sol = build(n, r0)?;
                let inner = radial_morse_index(&sol, 0.0, r0, INDEX_GRID)?;
                let annulus = radial_morse_index(&sol, r0, 1.0, INDEX_GRID)?;
                let whole = radial_morse_index(&sol, 0.0, 1.0, INDEX_GRID)?;
                let consistent = inner.refinement_consistent
                    && annulus.refinement_consistent
                    && whole.refinement_consistent;
                let ok = inner.negative_count == 0
                    && annulus.negative_count == 0
                    && whole.negative_count == 1
                    && consistent;
                Ok((
                    ok,
                    format!(
                        "N={n} r0={r0}: inner={} annulus={} whole={} consistent={consistent} \
                         lambda1(whole)={:.4e}",
                        inner.negative_count,
                        annulus.negative_count,
                        whole.negative_count,
                        whole.smallest_eigenvalue
                    ),
                ))
            };
            run().unwrap_or_else(|e| (false, format!("N={n} r0={r0}: error: {e}")))
        })
        .collect();
    CriterionResult {
        id: "3",
        label: "index structure 0 / 0 / 1 with refinement consistency (spectral route)",
        passed: checks.iter().all(|(ok, _)| *ok),
        details: checks.into_iter().map(|(_, d)| d).collect(),
    }
}

/// Criterion 4: fitted log-log slope of norm_q / norm_p against r0
/// within 5% of N(1/q - 1/p) for the three scan triples.
pub fn divergence_scaling() -> CriterionResult {
    let mut details = Vec::new();
    let mut passed = true;
    for &(n, p, q) in &SCAN_TRIPLES {
        match scan(&[n], &[(p, q)], &SCAN_R0, NORM_GRID).and_then(|rows| {
            let fit = fit_exponent(&rows)?;
            Ok((rows, fit))
        }) {
            Ok((rows, fit)) => {
                let target = n as f64 * (1.0 / q - 1.0 / p);
                let rel = (fit.slope - target).abs() / target;
                let ok = rel <= SLOPE_REL_TOL;
                passed &= ok;
                let ratios: Vec<String> =
                    rows.iter().map(|r| format!("{:.4e}", r.ratio_q_over_p)).collect();
                details.push(format!(
                    "(N={n}, p={p}, q={q}): slope={:.5} target={target:.5} rel_err={:.2}% \
                     (tol 5%) {} | ratios: {}",
                    fit.slope,
                    rel * 100.0,
                    if ok { "ok" } else { "OUT OF TOLERANCE" },
                    ratios.join(", ")
                ));
                if !ok && q <= n as f64 / (n as f64 - 2.0) {
                    details.push(format!(
                        "  note: q = {q} <= N/(N-2) = {:.4}; in this range the L^q mass \
                         concentrates away from the origin and the asymptotic quotient \
                         exponent is N - (N + 2p)/p, not N(1/q - 1/p)",
                        n as f64 / (n as f64 - 2.0)
                    ));
                }
            }
            Err(e) => {
                passed = false;
                details.push(format!("(N={n}, p={p}, q={q}): error: {e}"));
            }
        }
    }
    CriterionResult {
        id: "4",
        label: "norm-quotient divergence slopes match N(1/q - 1/p) within 5%",
        passed,
        details,
    }
}

/// Criterion 5: one-sided sup/L^q divergence for (N, q) = (3, 2): the
/// fitted slope of log(norm_inf / norm_q) vs log r0 must not exceed
/// -N/q + 0.1 = -1.4.
pub fn linfty_divergence() -> CriterionResult {
    let (n, q) = (3u32, 2.0);
    match scan(&[n], &[(f64::INFINITY, q)], &SCAN_R0, NORM_GRID).and_then(|rows| {
        let fit = fit_exponent(&rows)?;
        Ok((rows, fit))
    }) {
        Ok((rows, fit)) => {
            let ok = fit.slope <= LINFTY_SLOPE_MAX;
            let ratios: Vec<String> =
                rows.iter().map(|r| format!("{:.4e}", r.norm_p / r.norm_q)).collect();
            let mut details = vec![format!(
                "(N={n}, q={q}): slope={:.5} must be <= {LINFTY_SLOPE_MAX} {} | inf/q ratios: {}",
                fit.slope,
                if ok { "ok" } else { "OUT OF TOLERANCE" },
                ratios.join(", ")
            )];
            if !ok {
                details.push(format!(
                    "  note: q = {q} <= N/(N-2) = {:.4}; here ||u||_q ~ r0^N while \
                     ||u||_inf ~ r0^2, so the true slope is 2 - N = {}, slower than -N/q",
                    n as f64 / (n as f64 - 2.0),
                    2.0 - n as f64
                ));
            }
            CriterionResult {
                id: "5",
                label: "sup/L^q divergence slope <= -N/q + 0.1 (one-sided)",
                passed: ok,
                details,
            }
        }
        Err(e) => CriterionResult {
            id: "5",
            label: "sup/L^q divergence slope <= -N/q + 0.1 (one-sided)",
            passed: false,
            details: vec![format!("error: {e}")],
        },
    }
}

/// Criterion 6: the generalized Hardy inequality on 100 seeded random
/// polynomial bumps.
pub fn hardy_suite(seed: u64) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphas = [-9.0, -8.0, -7.0, -6.0, -5.0, -4.0, -3.0];
    let lefts = [0.05, 0.1, 0.3];
    let mut details = Vec::new();
    let mut failures = 0usize;
    for trial in 0..HARDY_TRIALS {
        let alpha = alphas[rng.gen_range(0..alphas.len())];
        let a = lefts[rng.gen_range(0..lefts.len())];
        let b = 1.0;
        let coeffs: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let poly = move |r: f64| {
            let mut v = 0.0;
            let mut d = 0.0;
            for &c in coeffs.iter().rev() {
                d = d * r + v;
                v = v * r + c;
            }
            (v, d)
        };
        let omega = move |r: f64| {
            let (pv, pd) = poly(r);
            let bump = (r - a) * (b - r);
            (bump * pv, (a + b - 2.0 * r) * pv + bump * pd)
        };
        match hardy_check(alpha, a, b, omega) {
            Ok((lhs, rhs)) => {
                if lhs < rhs - HARDY_REL_SLACK * lhs.abs() {
                    failures += 1;
                    details.push(format!(
                        "trial {trial}: VIOLATION alpha={alpha} a={a}: lhs={lhs:.12e} < rhs={rhs:.12e}"
                    ));
                }
            }
            Err(e) => {
                failures += 1;
                details.push(format!("trial {trial}: error: {e}"));
            }
        }
    }
    details.insert(0, format!("{}/{HARDY_TRIALS} trials satisfied lhs >= rhs - 1e-10 lhs", HARDY_TRIALS - failures));
    CriterionResult {
        id: "6",
        label: "generalized Hardy inequality property suite",
        passed: failures == 0,
        details,
    }
}

/// Criterion 8: the index-splitting implication across the matrix.
pub fn splitting_meta() -> CriterionResult {
    let checks: Vec<(bool, String)> = construction_matrix()
        .par_iter()
        .map(|&(n, r0)| {
            let run = || -> Result<(bool, String)> {
                let sol = build(n, r0)?;
                let ok = splitting_check(&sol, r0, SPLITTING_GRID)?;
                Ok((ok, format!("N={n} r0={r0}: splitting implication holds = {ok}")))
            };
            run().unwrap_or_else(|e| (false, format!("N={n} r0={r0}: error: {e}")))
        })
        .collect();
    CriterionResult {
        id: "8",
        label: "index-splitting implication (stable parts bound the whole index by 1)",
        passed: checks.iter().all(|(ok, _)| *ok),
        details: checks.into_iter().map(|(_, d)| d).collect(),
    }
}

/// Criterion 9: bubble-family sup/L^1 ratio strictly increasing as
/// lambda decreases; boundary values and residuals reported verbatim.
pub fn critical_family_trend() -> CriterionResult {
    let mut details = Vec::new();
    let mut passed = true;
    for &n in &CRITICAL_DIMS {
        let mut prev = f64::NEG_INFINITY;
        for &lambda in &CRITICAL_LAMBDAS {
            match critical_family(n, lambda, 2048) {
                Ok(pt) => {
                    let ok = pt.ratio > prev;
                    passed &= ok;
                    details.push(format!(
                        "N={n} lambda={lambda}: sup={:.6e} l1={:.6e} ratio={:.6e}{} \
                         boundary={:.6e} residual={:.6e}",
                        pt.sup_norm,
                        pt.l1_norm,
                        pt.ratio,
                        if ok { "" } else { " NOT INCREASING" },
                        pt.boundary_value,
                        pt.residual
                    ));
                    prev = pt.ratio;
                }
                Err(e) => {
                    passed = false;
                    details.push(format!("N={n} lambda={lambda}: error: {e}"));
                }
            }
        }
    }
    details.push(
        "note: boundary values and residuals are reported verbatim from the closed-form \
         parametrization; they are nonzero for lambda != 1 and carry no pass/fail"
            .to_string(),
    );
    CriterionResult {
        id: "9",
        label: "bubble family: sup/L^1 ratio strictly increasing as lambda -> 0",
        passed,
        details,
    }
}

/// Runs criteria 1-6, 8, 9. The dense-eigensolver cross-check
/// (criterion 7) lives in the acceptance test suite, where the
/// reference eigensolver is kept independent of the library.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        construction_validity(),
        quotient_stability(),
        spectral_stability(),
        divergence_scaling(),
        linfty_divergence(),
        hardy_suite(seed),
        splitting_meta(),
        critical_family_trend(),
    ]
}
