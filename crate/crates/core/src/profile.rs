//! The cutoff profile: a C-infinity, strictly increasing, eventually
//! concave function that equals the identity on (0, r0^N] and stays
//! below kappa_N * r0^N everywhere on (0, 1].
//!
//! The transition branch is realized through a fixed smooth kernel
//! theta(s) = s * exp(-1/s) (s > 0, zero otherwise): the profile slope
//! is exp(-theta((t - r0^N)/lambda)), which leaves the identity branch
//! with all derivatives matched, stays positive, and decays fast enough
//! that the total added mass is lambda * c0 with
//! c0 = int_0^inf exp(-theta(s)) ds. Choosing
//! lambda = (kappa_N - 1) r0^N / c0 pins the global bound.

use crate::error::{Error, Result};
use crate::quad::gk15;
use crate::special::kappa;
use std::sync::OnceLock;

/// Lower admissible r0. Below this, r0^N loses double-precision
/// relevance at N = 9 (r0^N ~ 1e-27) and the transition scale underflows.
pub const R0_MIN: f64 = 1e-3;
/// Upper admissible r0.
pub const R0_MAX: f64 = 0.99;

/// Smooth transition kernel theta(s) = s * exp(-1/s) for s > 0, 0 otherwise.
///
/// Flat to all orders at s = 0, nondecreasing, and theta(s)/s -> 1 at
/// infinity. For s <= 1e-3 the factor exp(-1/s) underflows, so the exact
/// f64 value is zero; the early return also keeps the derivative free of
/// 0 * inf artifacts.
pub fn transition_kernel(s: f64) -> f64 {
    if s <= 1e-3 {
        return 0.0;
    }
    s * (-1.0 / s).exp()
}

/// d/ds of the transition kernel: exp(-1/s) (1 + 1/s) for s > 0.
pub fn transition_kernel_derivative(s: f64) -> f64 {
    if s <= 1e-3 {
        return 0.0;
    }
    let inv = 1.0 / s;
    (-inv).exp() * (1.0 + inv)
}

// Cumulative integral of exp(-theta) on [0, TABLE_UPPER], one GK15 panel
// per step. Beyond the table, exp(-theta(s)) <= exp(-s e^{-1/64}), so the
// discarded tail is below 1.2e-27 -- invisible at double precision next
// to c0 ~ 1.69.
const TABLE_UPPER: f64 = 64.0;
const TABLE_PANELS: usize = 1024;

struct TransitionTable {
    step: f64,
    cum: Vec<f64>,
    total: f64,
}

static TABLE: OnceLock<TransitionTable> = OnceLock::new();

fn table() -> &'static TransitionTable {
    TABLE.get_or_init(|| {
        let step = TABLE_UPPER / TABLE_PANELS as f64;
        let f = |s: f64| (-transition_kernel(s)).exp();
        let mut cum = Vec::with_capacity(TABLE_PANELS + 1);
        cum.push(0.0);
        let mut acc = 0.0;
        for k in 0..TABLE_PANELS {
            let (v, _) = gk15(&f, k as f64 * step, (k + 1) as f64 * step);
            acc += v;
            cum.push(acc);
        }
        TransitionTable { step, cum, total: acc }
    })
}

/// c0 = int_0^inf exp(-theta(s)) ds, computed once and cached.
pub fn normalization_constant() -> f64 {
    table().total
}

/// G(x) = int_0^x exp(-theta(s)) ds; clamps to c0 past the table range.
pub(crate) fn transition_integral(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let t = table();
    if x >= TABLE_UPPER {
        return t.total;
    }
    let k = ((x / t.step) as usize).min(TABLE_PANELS - 1);
    let x0 = k as f64 * t.step;
    let (rest, _) = gk15(&|s: f64| (-transition_kernel(s)).exp(), x0, x);
    t.cum[k] + rest
}

/// Validated construction parameters of a cutoff profile.
#[derive(Debug, Clone, Copy)]
pub struct ProfileParams {
    dimension: u32,
    r0: f64,
    join: f64,
    c0: f64,
    lambda: f64,
    kappa: f64,
}

impl ProfileParams {
    pub fn new(dimension: u32, r0: f64) -> Result<Self> {
        let kappa = kappa(dimension)?;
        if dimension > 9 {
            return Err(Error::InvalidParameter(format!(
                "dimension N = {dimension} rejected: the construction is certified for 3 <= N <= 9"
            )));
        }
        if !r0.is_finite() || !(R0_MIN..=R0_MAX).contains(&r0) {
            return Err(Error::InvalidParameter(format!(
                "r0 = {r0} rejected: must lie in [{R0_MIN}, {R0_MAX}]"
            )));
        }
        let join = r0.powi(dimension as i32);
        let c0 = normalization_constant();
        let lambda = (kappa - 1.0) * join / c0;
        Ok(Self { dimension, r0, join, c0, lambda, kappa })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// r0^N: where the identity branch hands over to the transition.
    pub fn join_point(&self) -> f64 {
        self.join
    }

    /// Transition length scale lambda = (kappa_N - 1) r0^N / c0.
    pub fn transition_scale(&self) -> f64 {
        self.lambda
    }

    pub fn normalization(&self) -> f64 {
        self.c0
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Evaluable cutoff profile with first and second derivatives on (0, 1].
#[derive(Debug, Clone, Copy)]
pub struct Profile {
    params: ProfileParams,
}

impl Profile {
    pub fn new(dimension: u32, r0: f64) -> Result<Self> {
        Ok(Self { params: ProfileParams::new(dimension, r0)? })
    }

    pub fn from_params(params: ProfileParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &ProfileParams {
        &self.params
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        if !(t.is_finite() && t > 0.0 && t <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "profile argument t = {t} outside (0, 1]"
            )));
        }
        Ok(())
    }

    /// Psi(t): identity up to the join, then the saturating transition.
    pub fn psi(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.psi_raw(t))
    }

    pub(crate) fn psi_raw(&self, t: f64) -> f64 {
        let p = &self.params;
        if t <= p.join {
            t
        } else {
            p.join + p.lambda * transition_integral((t - p.join) / p.lambda)
        }
    }

    /// Psi'(t) = exp(-theta((t - r0^N)/lambda)); exactly 1 on the identity branch.
    pub fn psi_prime(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.psi_prime_raw(t))
    }

    pub(crate) fn psi_prime_raw(&self, t: f64) -> f64 {
        let p = &self.params;
        if t <= p.join {
            1.0
        } else {
            (-transition_kernel((t - p.join) / p.lambda)).exp()
        }
    }

    /// Psi''(t) = -Psi'(t) theta'((t - r0^N)/lambda) / lambda <= 0.
    pub fn psi_second(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        Ok(self.psi_second_raw(t))
    }

    pub(crate) fn psi_second_raw(&self, t: f64) -> f64 {
        let p = &self.params;
        if t <= p.join {
            0.0
        } else {
            let s = (t - p.join) / p.lambda;
            -self.psi_prime_raw(t) * transition_kernel_derivative(s) / p.lambda
        }
    }
}
