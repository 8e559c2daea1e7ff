//! One-dimensional radial meshes on subintervals of [0, 1].

use crate::error::{Error, Result};

/// Target length of the first cell when grading toward r = 0; held a
/// hair under 1e-6 so rounding in the ratio power cannot push past it.
const FIRST_CELL_AT_ORIGIN: f64 = 0.99e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Uniform,
    GeometricTowardLeft,
}

/// Sorted mesh on [a, b] with at least 16 intervals.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    a: f64,
    b: f64,
    nodes: Vec<f64>,
    grading: Grading,
}

impl RadialGrid {
    fn validate(a: f64, b: f64, n: usize) -> Result<()> {
        if !(a.is_finite() && b.is_finite() && (0.0..1.0).contains(&a) && b <= 1.0 && a < b) {
            return Err(Error::InvalidParameter(format!(
                "grid interval [{a}, {b}] must satisfy 0 <= a < b <= 1"
            )));
        }
        if n < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 16 intervals, got {n}"
            )));
        }
        Ok(())
    }

    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        Self::validate(a, b, n)?;
        let mut nodes = Vec::with_capacity(n + 1);
        for k in 0..=n {
            nodes.push(a + (b - a) * k as f64 / n as f64);
        }
        nodes[0] = a;
        nodes[n] = b;
        Ok(Self { a, b, nodes, grading: Grading::Uniform })
    }

    /// Geometric refinement toward the left endpoint.
    ///
    /// With a = 0 the ratio is chosen so the first cell is at most 1e-6;
    /// with a > 0 the nodes are log-uniform between the endpoints.
    pub fn geometric(a: f64, b: f64, n: usize) -> Result<Self> {
        Self::validate(a, b, n)?;
        let mut nodes = Vec::with_capacity(n + 1);
        if a == 0.0 {
            let first = FIRST_CELL_AT_ORIGIN.min(b / n as f64);
            let q = (first / b).powf(1.0 / (n - 1) as f64);
            nodes.push(0.0);
            for k in (0..n).rev() {
                nodes.push(b * q.powi(k as i32));
            }
        } else {
            let ratio = b / a;
            for k in 0..=n {
                nodes.push(a * ratio.powf(k as f64 / n as f64));
            }
        }
        nodes[0] = a;
        nodes[n] = b;
        Ok(Self { a, b, nodes, grading: Grading::GeometricTowardLeft })
    }

    /// Grading policy for spectral problems: refine toward the origin to
    /// absorb the coordinate singularity, otherwise stay uniform.
    pub fn for_interval(a: f64, b: f64, n: usize) -> Result<Self> {
        if a == 0.0 {
            Self::geometric(a, b, n)
        } else {
            Self::uniform(a, b, n)
        }
    }

    pub fn left(&self) -> f64 {
        self.a
    }

    pub fn right(&self) -> f64 {
        self.b
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn intervals(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_nodes() {
        let g = RadialGrid::uniform(0.25, 1.0, 16).unwrap();
        assert_eq!(g.intervals(), 16);
        assert_eq!(g.nodes()[0], 0.25);
        assert_eq!(*g.nodes().last().unwrap(), 1.0);
        for w in g.nodes().windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn geometric_from_origin_first_cell() {
        let g = RadialGrid::geometric(0.0, 1.0, 2048).unwrap();
        assert_eq!(g.nodes()[0], 0.0);
        assert!(g.nodes()[1] <= 1e-6);
        assert_eq!(*g.nodes().last().unwrap(), 1.0);
        for w in g.nodes().windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn geometric_interior_is_log_uniform() {
        let g = RadialGrid::geometric(0.1, 1.0, 64).unwrap();
        let nodes = g.nodes();
        let r1 = nodes[1] / nodes[0];
        for w in nodes.windows(2) {
            assert!((w[1] / w[0] - r1).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(RadialGrid::uniform(0.5, 0.5, 32).is_err());
        assert!(RadialGrid::uniform(0.0, 1.1, 32).is_err());
        assert!(RadialGrid::uniform(0.0, 1.0, 8).is_err());
        assert!(RadialGrid::uniform(-0.1, 1.0, 32).is_err());
    }
}
