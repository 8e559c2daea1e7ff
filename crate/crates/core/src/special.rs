//! Dimensional constants: the concavity margin kappa_N, half-integer
//! gamma values, and unit-sphere areas.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// kappa_N = N / (2 sqrt(N-1)), the headroom factor of the cutoff bound.
///
/// Strictly greater than 1 for N >= 3, which is what makes a strictly
/// increasing concave extension of the identity branch possible at all;
/// N < 3 is rejected.
pub fn kappa(n: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension N = {n} rejected: kappa_N = N/(2 sqrt(N-1)) must exceed 1, which requires N >= 3"
        )));
    }
    Ok(n as f64 / (2.0 * ((n - 1) as f64).sqrt()))
}

/// Gamma(k/2) for integer k >= 1, computed exactly by the recurrence.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1, "gamma_half requires k >= 1");
    let mut value = if k % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut arg = if k % 2 == 0 { 2 } else { 1 };
    while arg < k {
        value *= arg as f64 / 2.0;
        arg += 2;
    }
    value
}

/// Surface area of the unit sphere in R^N: 2 pi^{N/2} / Gamma(N/2).
pub fn unit_sphere_area(n: u32) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Volume of the unit ball in R^N.
pub fn unit_ball_volume(n: u32) -> f64 {
    unit_sphere_area(n) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_reference_values() {
        assert!((kappa(3).unwrap() - 1.0606601717798212).abs() < 1e-15);
        assert!((kappa(9).unwrap() - 1.5909902576697319).abs() < 1e-15);
        for n in 3..=9 {
            assert!(kappa(n).unwrap() > 1.0);
        }
    }

    #[test]
    fn kappa_rejects_low_dimension() {
        assert!(kappa(2).is_err());
        assert!(kappa(0).is_err());
    }

    #[test]
    fn gamma_half_values() {
        assert_eq!(gamma_half(2), 1.0); // Gamma(1)
        assert_eq!(gamma_half(4), 1.0); // Gamma(2)
        assert_eq!(gamma_half(6), 2.0); // Gamma(3)
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(3) - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sphere_areas_against_closed_forms() {
        // 4 pi, 2 pi^2, 8 pi^2 / 3, pi^3, 16 pi^3 / 15, pi^4 / 3, 32 pi^4 / 105
        let expected = [
            4.0 * PI,
            2.0 * PI * PI,
            8.0 * PI * PI / 3.0,
            PI.powi(3),
            16.0 * PI.powi(3) / 15.0,
            PI.powi(4) / 3.0,
            32.0 * PI.powi(4) / 105.0,
        ];
        for (n, want) in (3..=9).zip(expected) {
            let got = unit_sphere_area(n);
            assert!(
                (got - want).abs() < 1e-13 * want,
                "area mismatch at N = {n}: {got} vs {want}"
            );
        }
    }
}
