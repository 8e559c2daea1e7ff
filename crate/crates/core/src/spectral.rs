//! Radial Morse index and stability checks for the linearized operator.
//!
//! The second-variation form on a subinterval (a, b) of the radius is
//!   Q[phi] = int_a^b r^{N-1} (phi'^2 - f'(u) phi^2) dr,
//! with natural boundary behaviour at r = 0 (radial restrictions of
//! compactly supported functions are free at the origin) and Dirichlet
//! conditions at every other endpoint. The index on the subdomain is the
//! number of negative pencil eigenvalues against the r^{N-1} mass.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::pencil::{assemble_weighted, Boundary, OperatorPencil};
use crate::quad::integrate_default;
use crate::solution::RadialSolution;

/// Bisection width for extremal eigenvalues.
const EIGENVALUE_REL_WIDTH: f64 = 1e-10;

/// Outcome of an index computation on one subinterval.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumReport {
    pub negative_count: usize,
    pub smallest_eigenvalue: f64,
    /// Minimum of a weighted Rayleigh quotient, when one was computed.
    pub quotient_min: f64,
    pub grid_size: usize,
    /// Count agreed between the requested grid and its refinement.
    pub refinement_consistent: bool,
}

/// Assembles the linearized form with potential `V` against the
/// r^{N-1} weight on the given grid. The left end is natural exactly
/// when the grid starts at the origin.
pub fn assemble_form(
    sol: &RadialSolution,
    grid: &RadialGrid,
    potential: impl Fn(f64) -> f64,
) -> Result<OperatorPencil> {
    let exp = sol.dimension() as i32 - 1;
    let left = if grid.left() == 0.0 { Boundary::Natural } else { Boundary::Dirichlet };
    assemble_weighted(
        grid,
        |r| r.powi(exp),
        |r| r.powi(exp) * potential(r),
        |r| r.powi(exp),
        left,
        Boundary::Dirichlet,
    )
}

fn index_on_grid(sol: &RadialSolution, a: f64, b: f64, n: usize) -> Result<(OperatorPencil, usize)> {
    let grid = RadialGrid::for_interval(a, b, n)?;
    let pencil = assemble_form(sol, &grid, |r| sol.fprime_at_r_raw(r))?;
    let count = pencil.inertia(0.0)?.negative;
    Ok((pencil, count))
}

/// Radial Morse index of the solution on (a, b), computed on graded
/// grids of n and 2n intervals with a refinement-consistency flag.
pub fn radial_morse_index(sol: &RadialSolution, a: f64, b: f64, n: usize) -> Result<SpectrumReport> {
    if !(a.is_finite() && b.is_finite() && (0.0..1.0).contains(&a) && a < b && b <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "index interval [{a}, {b}] must satisfy 0 <= a < b <= 1"
        )));
    }
    if n < 64 {
        return Err(Error::InvalidParameter(format!("index grid needs n >= 64, got {n}")));
    }
    let (pencil, count) = index_on_grid(sol, a, b, n)?;
    let (_, count_fine) = index_on_grid(sol, a, b, 2 * n)?;
    let smallest = pencil.smallest_eigenvalue(EIGENVALUE_REL_WIDTH)?;
    Ok(SpectrumReport {
        negative_count: count,
        smallest_eigenvalue: smallest,
        quotient_min: f64::NAN,
        grid_size: n,
        refinement_consistent: count == count_fine,
    })
}

/// Minimum over the discrete space of the annulus stability quotient
///   int r^{N-1} u_r^2 w'^2 / int r^{N-3} u_r^2 w^2
/// with Dirichlet conditions at both ends of (r0, 1). Values at or above
/// N - 1 certify stability of the solution on the annulus.
pub fn stability_quotient(sol: &RadialSolution, r0: f64, n: usize) -> Result<f64> {
    if !(r0.is_finite() && r0 > 0.0 && r0 < 1.0) {
        return Err(Error::InvalidParameter(format!("annulus radius r0 = {r0} outside (0, 1)")));
    }
    if n < 64 {
        return Err(Error::InvalidParameter(format!("quotient grid needs n >= 64, got {n}")));
    }
    let grid = RadialGrid::for_interval(r0, 1.0, n)?;
    for &r in grid.nodes() {
        if sol.u_derivative_raw(r) == 0.0 {
            return Err(Error::DegenerateWeight(format!(
                "u_r vanishes at grid node r = {r}; the quotient weights degenerate"
            )));
        }
    }
    let exp = sol.dimension() as i32;
    let pencil = assemble_weighted(
        &grid,
        |r| {
            let ur = sol.u_derivative_raw(r);
            r.powi(exp - 1) * ur * ur
        },
        |_| 0.0,
        |r| {
            let ur = sol.u_derivative_raw(r);
            r.powi(exp - 3) * ur * ur
        },
        Boundary::Dirichlet,
        Boundary::Dirichlet,
    )?;
    pencil.smallest_eigenvalue(EIGENVALUE_REL_WIDTH)
}

/// Both sides of the weighted Hardy inequality
///   int_a^b r^{alpha+1} w'^2 dr >= (alpha^2/4) int_a^b r^{alpha-1} w^2 dr
/// for a C^1 test function given as r -> (value, derivative).
///
/// The function must vanish at both endpoints (checked against
/// 1e-12 * max |w| on a sample); the caller asserts lhs >= rhs - tol.
pub fn hardy_check(
    alpha: f64,
    a: f64,
    b: f64,
    omega: impl Fn(f64) -> (f64, f64),
) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite() && a > 0.0 && a < b) {
        return Err(Error::InvalidParameter(format!(
            "hardy interval [{a}, {b}] must satisfy 0 < a < b"
        )));
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter("alpha must be finite".into()));
    }
    let mut sup: f64 = 0.0;
    for i in 0..=512 {
        let r = a + (b - a) * i as f64 / 512.0;
        sup = sup.max(omega(r).0.abs());
    }
    let (wa, _) = omega(a);
    let (wb, _) = omega(b);
    if wa.abs() > 1e-12 * sup || wb.abs() > 1e-12 * sup {
        return Err(Error::InvalidTestFunction(format!(
            "omega must vanish at the endpoints: |omega(a)| = {}, |omega(b)| = {}, max = {sup}",
            wa.abs(),
            wb.abs()
        )));
    }
    let lhs = integrate_default(|r| r.powf(alpha + 1.0) * omega(r).1.powi(2), a, b)?;
    let rhs = alpha * alpha / 4.0 * integrate_default(|r| r.powf(alpha - 1.0) * omega(r).0.powi(2), a, b)?;
    Ok((lhs, rhs))
}

/// Index-splitting meta-property: if the index vanishes on (0, delta)
/// and on (delta, 1), the whole-ball index cannot exceed 1. Returns the
/// truth of that implication for the computed counts.
pub fn splitting_check(sol: &RadialSolution, delta: f64, n: usize) -> Result<bool> {
    if !(delta.is_finite() && delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside (0, 1)")));
    }
    let inner = radial_morse_index(sol, 0.0, delta, n)?;
    let outer = radial_morse_index(sol, delta, 1.0, n)?;
    let whole = radial_morse_index(sol, 0.0, 1.0, n)?;
    let premise = inner.negative_count == 0 && outer.negative_count == 0;
    Ok(!premise || whole.negative_count <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;
    use std::f64::consts::PI;

    fn solution(n: u32, r0: f64) -> RadialSolution {
        RadialSolution::build(Profile::new(n, r0).unwrap()).unwrap()
    }

    #[test]
    fn zero_potential_form_is_coercive() {
        let sol = solution(3, 0.2);
        let grid = RadialGrid::for_interval(0.0, 1.0, 128).unwrap();
        let pencil = assemble_form(&sol, &grid, |_| 0.0).unwrap();
        assert_eq!(pencil.inertia(0.0).unwrap().negative, 0);
    }

    #[test]
    fn inner_potential_vanishes_identically() {
        // On (0, r0) the linearized potential is exactly zero, so the
        // assembled matrices coincide with the zero-potential ones.
        let sol = solution(3, 0.3);
        let grid = RadialGrid::for_interval(0.0, 0.3, 64).unwrap();
        for &r in grid.nodes() {
            if r > 0.0 {
                assert_eq!(sol.fprime_at_r(r).unwrap(), 0.0);
            }
        }
        let with_v = assemble_form(&sol, &grid, |r| sol.fprime_at_r_raw(r)).unwrap();
        let without = assemble_form(&sol, &grid, |_| 0.0).unwrap();
        assert_eq!(with_v.stiffness().0, without.stiffness().0);
        assert_eq!(with_v.stiffness().1, without.stiffness().1);
    }

    #[test]
    fn index_structure_small_r0() {
        let sol = solution(3, 0.05);
        let inner = radial_morse_index(&sol, 0.0, 0.05, 128).unwrap();
        let annulus = radial_morse_index(&sol, 0.05, 1.0, 256).unwrap();
        let whole = radial_morse_index(&sol, 0.0, 1.0, 512).unwrap();
        assert_eq!(inner.negative_count, 0);
        assert_eq!(annulus.negative_count, 0);
        assert_eq!(whole.negative_count, 1);
        assert!(inner.refinement_consistent);
        assert!(annulus.refinement_consistent);
        assert!(whole.refinement_consistent);
        assert!(whole.smallest_eigenvalue < 0.0);
        assert!(annulus.smallest_eigenvalue > 0.0);
    }

    #[test]
    fn quotient_certifies_annulus_stability() {
        let q3 = stability_quotient(&solution(3, 0.1), 0.1, 512).unwrap();
        assert!(q3 >= 2.0 - 1e-9, "quotient {q3} below N - 1 = 2");
        let q9 = stability_quotient(&solution(9, 0.1), 0.1, 512).unwrap();
        assert!(q9 >= 8.0 - 1e-9, "quotient {q9} below N - 1 = 8");
    }

    #[test]
    fn pure_power_weights_recover_hardy_constant() {
        // With u_r replaced by the pure power r^{1-N} r0^N the quotient
        // becomes the Hardy form; the log substitution gives its exact
        // minimum N^2/4 + pi^2 / ln(1/r0)^2 on a fixed annulus, which the
        // discrete minimum approaches from above under refinement.
        for n_dim in [3i32, 9] {
            let r0: f64 = 0.1;
            let exact = (n_dim * n_dim) as f64 / 4.0 + PI * PI / (1.0 / r0).ln().powi(2);
            let mut prev = f64::INFINITY;
            for n in [128usize, 512] {
                let grid = RadialGrid::uniform(r0, 1.0, n).unwrap();
                let pencil = assemble_weighted(
                    &grid,
                    |r| r.powi(1 - n_dim),
                    |_| 0.0,
                    |r| r.powi(-1 - n_dim),
                    Boundary::Dirichlet,
                    Boundary::Dirichlet,
                )
                .unwrap();
                let min = pencil.smallest_eigenvalue(1e-10).unwrap();
                assert!(min >= exact - 1e-9, "discrete minimum {min} fell below {exact}");
                assert!(min >= (n_dim * n_dim) as f64 / 4.0);
                assert!(min < prev, "refinement did not decrease the minimum");
                prev = min;
            }
            assert!(
                (prev - exact).abs() < 5e-4 * exact,
                "n = 512 minimum {prev} too far from {exact}"
            );
        }
    }

    #[test]
    fn hardy_polynomial_bump() {
        let (a, b) = (0.1, 1.0);
        let omega = |r: f64| ((r - a) * (b - r), a + b - 2.0 * r);
        let (lhs, rhs) = hardy_check(-3.0, a, b, omega).unwrap();
        assert!(lhs >= rhs - 1e-10 * lhs.abs());
        assert!(lhs > 0.0);
    }

    #[test]
    fn hardy_zero_function() {
        let (lhs, rhs) = hardy_check(-3.0, 0.1, 1.0, |_| (0.0, 0.0)).unwrap();
        assert_eq!((lhs, rhs), (0.0, 0.0));
    }

    #[test]
    fn hardy_rejects_nonvanishing_boundary() {
        let err = hardy_check(-3.0, 0.1, 1.0, |_| (1.0, 0.0));
        assert!(matches!(err, Err(Error::InvalidTestFunction(_))));
    }

    #[test]
    fn splitting_holds_at_r0() {
        let sol = solution(3, 0.05);
        assert!(splitting_check(&sol, 0.05, 128).unwrap());
    }

    #[test]
    fn splitting_with_coercive_potential() {
        // Zero potential everywhere: all three counts vanish and the
        // implication holds with whole-ball index 0.
        let sol = solution(3, 0.3);
        for (a, b) in [(0.0, 0.4), (0.4, 1.0), (0.0, 1.0)] {
            let grid = RadialGrid::for_interval(a, b, 96).unwrap();
            let pencil = assemble_form(&sol, &grid, |_| 0.0).unwrap();
            assert_eq!(pencil.inertia(0.0).unwrap().negative, 0);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let sol = solution(3, 0.2);
        assert!(radial_morse_index(&sol, 0.5, 0.2, 128).is_err());
        assert!(radial_morse_index(&sol, 0.0, 1.0, 32).is_err());
        assert!(stability_quotient(&sol, 1.5, 128).is_err());
        assert!(splitting_check(&sol, 0.0, 128).is_err());
        assert!(hardy_check(-3.0, 0.0, 1.0, |_| (0.0, 0.0)).is_err());
    }
}
