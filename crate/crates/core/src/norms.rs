//! Radial L^p norms, the r0 parameter scan, scaling-exponent fits, and
//! the critical-exponent bubble family.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::profile::Profile;
use crate::quad;
use crate::solution::{pde_residual, RadialSolution};
use crate::special::unit_sphere_area;
use crate::spectral::{radial_morse_index, stability_quotient};
use rayon::prelude::*;

/// Default r0 ladder: halving steps, small enough for the asymptotics,
/// large enough that r0^9 stays well inside double range.
pub const DEFAULT_R0_SCAN: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

// 4-point Gauss-Legendre rule on [-1, 1].
const GAUSS_X: [f64; 4] = [
    -0.8611363115940526,
    -0.3399810435848563,
    0.3399810435848563,
    0.8611363115940526,
];
const GAUSS_W: [f64; 4] = [
    0.34785484513745385,
    0.6521451548625461,
    0.6521451548625461,
    0.34785484513745385,
];

/// Cell layout for norm quadrature: uniform panels on [0, r0], a
/// refined band across the transition layer [r0, 4 r0], and uniform
/// panels on the rest.
fn norm_cells(r0: f64, n: usize) -> Vec<f64> {
    let mut cells = Vec::with_capacity(n + 3);
    let band = (4.0 * r0).min(1.0);
    let (n_in, n_band, n_out) = if band >= 1.0 {
        (n / 2, n - n / 2, 0)
    } else {
        (n / 4, n / 2, n - n / 4 - n / 2)
    };
    for k in 0..n_in {
        cells.push(r0 * k as f64 / n_in as f64);
    }
    for k in 0..n_band {
        cells.push(r0 + (band - r0) * k as f64 / n_band as f64);
    }
    for k in 0..n_out {
        cells.push(band + (1.0 - band) * k as f64 / n_out as f64);
    }
    cells.push(1.0);
    cells
}

/// (omega_{N-1} int_0^1 r^{N-1} |f(r)|^p dr)^{1/p} by composite Gauss
/// quadrature on the given cell boundaries.
fn radial_lp_of(n_dim: u32, f: impl Fn(f64) -> f64, p: f64, cells: &[f64]) -> f64 {
    let exp = n_dim as i32 - 1;
    let mut acc = 0.0;
    for w in cells.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let half = 0.5 * (w[1] - w[0]);
        for (xg, wg) in GAUSS_X.iter().zip(GAUSS_W) {
            let r = mid + half * xg;
            acc += wg * half * r.powi(exp) * f(r).abs().powf(p);
        }
    }
    (unit_sphere_area(n_dim) * acc).powf(1.0 / p)
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("exponent p = {p} rejected: need p in [1, inf]")));
    }
    Ok(())
}

/// L^p(B_1) norm of the solution; p = inf returns u(0) exactly.
pub fn lp_norm(sol: &RadialSolution, p: f64, n: usize) -> Result<f64> {
    check_p(p)?;
    if n < 256 {
        return Err(Error::InvalidParameter(format!("norm quadrature needs n >= 256, got {n}")));
    }
    if p.is_infinite() {
        return Ok(sol.sup_norm());
    }
    let cells = norm_cells(sol.r0(), n);
    Ok(radial_lp_of(sol.dimension(), |r| sol.u_raw(r), p, &cells))
}

/// One record of the parameter scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub dimension: u32,
    pub r0: f64,
    pub p: f64,
    pub q: f64,
    pub norm_p: f64,
    pub norm_q: f64,
    pub ratio_q_over_p: f64,
    pub index_inner: i64,
    pub index_annulus: i64,
    pub index_whole: i64,
    pub quotient_annulus: f64,
    pub residual: f64,
    /// Populated with the failure message when the row is poisoned.
    pub error: Option<String>,
}

impl ScanRow {
    fn poisoned(dimension: u32, r0: f64, p: f64, q: f64, message: String) -> Self {
        Self {
            dimension,
            r0,
            p,
            q,
            norm_p: f64::NAN,
            norm_q: f64::NAN,
            ratio_q_over_p: f64::NAN,
            index_inner: -1,
            index_annulus: -1,
            index_whole: -1,
            quotient_annulus: f64::NAN,
            residual: f64::NAN,
            error: Some(message),
        }
    }
}

/// Validates a norm-pair against the dimension. The divergence theorem
/// needs p > N/(N-2); the sharper exponent formula additionally needs
/// q above the same threshold, which is not enforced here.
pub fn validate_pair(n_dim: u32, p: f64, q: f64) -> Result<()> {
    check_p(q)?;
    check_p(p)?;
    if !(q < p) {
        return Err(Error::InvalidParameter(format!(
            "invalid pair: q = {q} must be strictly below p = {p}"
        )));
    }
    if q.is_infinite() {
        return Err(Error::InvalidParameter("q = inf rejected: need q < p <= inf".into()));
    }
    if n_dim < 3 {
        return Err(Error::InvalidParameter(format!("dimension N = {n_dim} rejected: need N >= 3")));
    }
    let threshold = n_dim as f64 / (n_dim as f64 - 2.0);
    if !(p > threshold) {
        return Err(Error::InvalidParameter(format!(
            "p = {p} violates p > N/(N-2) = {threshold} for N = {n_dim}"
        )));
    }
    Ok(())
}

fn compute_row(n_dim: u32, r0: f64, p: f64, q: f64, grid_n: usize) -> ScanRow {
    let attempt = || -> Result<ScanRow> {
        let sol = RadialSolution::build(Profile::new(n_dim, r0)?)?;
        let norm_p = lp_norm(&sol, p, grid_n)?;
        let norm_q = lp_norm(&sol, q, grid_n)?;
        let inner = radial_morse_index(&sol, 0.0, r0, grid_n.max(64))?;
        let annulus = radial_morse_index(&sol, r0, 1.0, grid_n.max(64))?;
        let whole = radial_morse_index(&sol, 0.0, 1.0, grid_n.max(64))?;
        let quotient = stability_quotient(&sol, r0, grid_n.max(64))?;
        let residual_grid = RadialGrid::geometric(0.0, 1.0, grid_n.max(64))?;
        let residual = pde_residual(&sol, &residual_grid)?;
        Ok(ScanRow {
            dimension: n_dim,
            r0,
            p,
            q,
            norm_p,
            norm_q,
            ratio_q_over_p: norm_q / norm_p,
            index_inner: inner.negative_count as i64,
            index_annulus: annulus.negative_count as i64,
            index_whole: whole.negative_count as i64,
            quotient_annulus: quotient,
            residual,
            error: None,
        })
    };
    attempt().unwrap_or_else(|e| ScanRow::poisoned(n_dim, r0, p, q, e.to_string()))
}

/// Runs the full scan over dimensions x pairs x r0 values.
///
/// Rows are computed in parallel but emitted in input order; a failing
/// configuration poisons its own row (NaN ratio) without aborting.
pub fn scan(
    dimensions: &[u32],
    pairs: &[(f64, f64)],
    r0_values: &[f64],
    grid_n: usize,
) -> Result<Vec<ScanRow>> {
    if dimensions.is_empty() || pairs.is_empty() || r0_values.is_empty() {
        return Err(Error::InvalidParameter("scan needs at least one N, pair, and r0".into()));
    }
    for w in r0_values.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidParameter(format!(
                "r0 values must be strictly decreasing, got {} before {}",
                w[0], w[1]
            )));
        }
    }
    for &n_dim in dimensions {
        for &(p, q) in pairs {
            validate_pair(n_dim, p, q)?;
        }
    }
    let mut configs = Vec::new();
    for &n_dim in dimensions {
        for &(p, q) in pairs {
            for &r0 in r0_values {
                configs.push((n_dim, r0, p, q));
            }
        }
    }
    Ok(configs
        .par_iter()
        .map(|&(n_dim, r0, p, q)| compute_row(n_dim, r0, p, q, grid_n))
        .collect())
}

/// Least-squares line through the log-log scaling data.
#[derive(Debug, Clone, Copy)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_deviation: f64,
}

/// Fits log(norm_q / norm_p) against log r0 (for p = inf, the
/// reciprocal log(norm_inf / norm_q), matching the one-sided estimate).
pub fn fit_exponent(rows: &[ScanRow]) -> Result<ExponentFit> {
    if rows.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "exponent fit needs at least 4 rows, got {}",
            rows.len()
        )));
    }
    let (n_dim, p, q) = (rows[0].dimension, rows[0].p, rows[0].q);
    let mut xs = Vec::with_capacity(rows.len());
    let mut ys = Vec::with_capacity(rows.len());
    for row in rows {
        if row.dimension != n_dim || row.p != p || row.q != q {
            return Err(Error::InvalidParameter(
                "exponent fit requires identical (N, p, q) across rows".into(),
            ));
        }
        let ratio = if p.is_infinite() { row.norm_p / row.norm_q } else { row.ratio_q_over_p };
        if !(ratio.is_finite() && ratio > 0.0 && row.r0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "row (N={}, r0={}) has no usable ratio",
                row.dimension, row.r0
            )));
        }
        xs.push(row.r0.ln());
        ys.push(ratio.ln());
    }
    for i in 1..xs.len() {
        if xs[i..].contains(&xs[i - 1]) {
            return Err(Error::InvalidParameter("exponent fit requires distinct r0 values".into()));
        }
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_deviation = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0f64, f64::max);
    Ok(ExponentFit { slope, intercept, max_deviation })
}

/// One member of the critical-exponent bubble family, evaluated
/// verbatim from its closed form.
#[derive(Debug, Clone, Copy)]
pub struct CriticalFamilyPoint {
    pub dimension: u32,
    pub lambda: f64,
    pub sup_norm: f64,
    pub l1_norm: f64,
    pub ratio: f64,
    /// u_lambda(1); nonzero for lambda != 1 under this parametrization,
    /// reported rather than corrected.
    pub boundary_value: f64,
    /// Sup-norm defect of -Delta u = (lambda + u)^{(N+2)/(N-2)} on the
    /// grid; NaN where the right side is undefined (negative base with a
    /// non-integer exponent).
    pub residual: f64,
}

fn bubble(n_dim: u32, lambda: f64, r: f64) -> f64 {
    let n = n_dim as f64;
    let amp = (lambda * n * (n - 2.0)).powf((n - 2.0) / 4.0);
    amp * (lambda * lambda + r * r).powf(-(n - 2.0) / 2.0)
}

fn bubble_laplacian(n_dim: u32, lambda: f64, r: f64) -> f64 {
    let n = n_dim as f64;
    let amp = (lambda * n * (n - 2.0)).powf((n - 2.0) / 4.0);
    -amp * n * (n - 2.0) * lambda * lambda * (lambda * lambda + r * r).powf(-n / 2.0 - 1.0)
}

/// Evaluates the family member u_lambda = U(lambda, .) - U(1, .) on
/// [0, 1]: norms, boundary value, and the PDE defect against the
/// critical nonlinearity.
pub fn critical_family(n_dim: u32, lambda: f64, n: usize) -> Result<CriticalFamilyPoint> {
    if n_dim < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension N = {n_dim} rejected: the bubble family needs N >= 3"
        )));
    }
    if !(lambda.is_finite() && lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} outside (0, 1]")));
    }
    if n < 64 {
        return Err(Error::InvalidParameter(format!("family grid needs n >= 64, got {n}")));
    }
    let u = |r: f64| bubble(n_dim, lambda, r) - bubble(n_dim, 1.0, r);
    let nf = n_dim as f64;
    let crit = (nf + 2.0) / (nf - 2.0);

    let mut sup: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for k in 0..=n {
        let r = k as f64 / n as f64;
        sup = sup.max(u(r).abs());
        let lap = bubble_laplacian(n_dim, lambda, r) - bubble_laplacian(n_dim, 1.0, r);
        let rhs = (lambda + u(r)).powf(crit);
        let defect = (-lap - rhs).abs();
        residual = if defect.is_nan() { f64::NAN } else { residual.max(defect) };
        if residual.is_nan() {
            break;
        }
    }
    let l1 = unit_sphere_area(n_dim)
        * quad::integrate(|r| r.powi(n_dim as i32 - 1) * u(r).abs(), 0.0, 1.0, 1e-10, 1e-14)?;
    let ratio = if l1 == 0.0 { f64::NAN } else { sup / l1 };
    Ok(CriticalFamilyPoint {
        dimension: n_dim,
        lambda,
        sup_norm: sup,
        l1_norm: l1,
        ratio,
        boundary_value: u(1.0),
        residual,
    })
}
