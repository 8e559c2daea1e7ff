//! Numerical laboratory for radial solutions of -Delta u = f(u) on the
//! unit ball whose radial Morse index is exactly one.
//!
//! The construction starts from a cutoff profile Psi that equals the
//! identity on (0, r0^N] and saturates below kappa_N r0^N. The radial
//! solution u(r) = int_r^1 Psi(s^N) s^{1-N} ds then solves the Dirichlet
//! problem for a smooth nonnegative nondecreasing nonlinearity, is stable
//! on the inner ball and on the annulus, yet carries one negative radial
//! direction on the whole ball. As r0 shrinks, quotients of its L^p
//! norms diverge at known rates.
//!
//! The crate provides:
//! - [`profile`]: the cutoff profile and its derivatives;
//! - [`solution`]: the solution, its nonlinearity data, and the strong
//!   PDE residual;
//! - [`spectral`]: weighted Sturm-Liouville index counts by tridiagonal
//!   inertia, the annulus stability quotient, Hardy-inequality checks,
//!   and the index-splitting meta-property;
//! - [`norms`]: radial L^p norms, the r0 scan, scaling-exponent fits,
//!   and the critical-exponent bubble family;
//! - [`verify`]: the structural verification battery behind
//!   `radmorse verify-all`.

pub mod error;
pub mod grid;
pub mod norms;
pub mod pencil;
pub mod profile;
pub mod quad;
pub mod report;
pub mod solution;
pub mod special;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{Grading, RadialGrid};
pub use norms::{
    critical_family, fit_exponent, lp_norm, scan, CriticalFamilyPoint, ExponentFit, ScanRow,
    DEFAULT_R0_SCAN,
};
pub use pencil::{assemble_weighted, Boundary, Inertia, OperatorPencil};
pub use profile::{normalization_constant, transition_kernel, Profile, ProfileParams};
pub use solution::{pde_residual, RadialSolution};
pub use special::{kappa, unit_ball_volume, unit_sphere_area};
pub use spectral::{
    assemble_form, hardy_check, radial_morse_index, splitting_check, stability_quotient,
    SpectrumReport,
};
