//! C ABI over the radmorse library.
//!
//! Solutions are opaque handles created by [`rm_solution_new`] and
//! released by [`rm_solution_free`]. Every fallible call returns an
//! [`RmStatus`]; on failure the thread-local message from
//! [`rm_last_error_message`] describes the cause. Numeric results are
//! written through out-pointers only on `RmStatus::Ok`.
//!
//! The generated header lands in `include/radmorse.h` at build time.

use radmorse::{
    critical_family, kappa, lp_norm, normalization_constant, radial_morse_index,
    stability_quotient, Error, Profile, RadialSolution,
};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

/// Status code of every fallible FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RmStatus {
    /// Success.
    Ok = 0,
    /// A parameter was rejected before any computation.
    InvalidArgument = 1,
    /// Quadrature or factorization failed to converge.
    NumericalFailure = 2,
    /// A required pointer was null.
    NullPointer = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> RmStatus {
    match err {
        Error::InvalidParameter(_) | Error::InvalidTestFunction(_) => RmStatus::InvalidArgument,
        _ => RmStatus::NumericalFailure,
    }
}

/// Opaque handle to a constructed radial solution.
pub struct RmSolution {
    inner: RadialSolution,
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn rm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// kappa_N = N / (2 sqrt(N - 1)); rejects N < 3.
#[no_mangle]
pub extern "C" fn rm_kappa(dimension: u32, out: *mut f64) -> RmStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return RmStatus::NullPointer;
    }
    match kappa(dimension) {
        Ok(v) => {
            unsafe { *out = v };
            RmStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// c0 = int_0^inf exp(-theta(s)) ds, the transition-kernel mass.
#[no_mangle]
pub extern "C" fn rm_normalization_constant(out: *mut f64) -> RmStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return RmStatus::NullPointer;
    }
    unsafe { *out = normalization_constant() };
    RmStatus::Ok
}

/// Builds the solution for dimension N in [3, 9] and r0 in [1e-3, 0.99].
///
/// On success `*out` owns the handle; release it with
/// [`rm_solution_free`].
#[no_mangle]
pub extern "C" fn rm_solution_new(dimension: u32, r0: f64, out: *mut *mut RmSolution) -> RmStatus {
    if out.is_null() {
        set_error("out pointer is null");
        return RmStatus::NullPointer;
    }
    let built = Profile::new(dimension, r0).and_then(RadialSolution::build);
    match built {
        Ok(inner) => {
            unsafe { *out = Box::into_raw(Box::new(RmSolution { inner })) };
            RmStatus::Ok
        }
        Err(e) => {
            unsafe { *out = ptr::null_mut() };
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Releases a handle returned by [`rm_solution_new`]. Null is a no-op.
///
/// # Safety
/// `sol` must be a pointer previously returned by [`rm_solution_new`]
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rm_solution_free(sol: *mut RmSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

unsafe fn with_solution<T>(
    sol: *const RmSolution,
    out: *mut T,
    eval: impl FnOnce(&RadialSolution) -> radmorse::Result<T>,
) -> RmStatus {
    if sol.is_null() || out.is_null() {
        set_error("solution or out pointer is null");
        return RmStatus::NullPointer;
    }
    match eval(&(*sol).inner) {
        Ok(v) => {
            *out = v;
            RmStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// u(r) for r in [0, 1].
///
/// # Safety
/// `sol` must be a live handle from [`rm_solution_new`]; `out` must be
/// a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rm_solution_u(sol: *const RmSolution, r: f64, out: *mut f64) -> RmStatus {
    with_solution(sol, out, |s| s.u(r))
}

/// u'(r) in closed form; u'(0) = 0.
///
/// # Safety
/// Same contract as [`rm_solution_u`].
#[no_mangle]
pub unsafe extern "C" fn rm_solution_u_derivative(
    sol: *const RmSolution,
    r: f64,
    out: *mut f64,
) -> RmStatus {
    with_solution(sol, out, |s| s.u_derivative(r))
}

/// f(u(r)) = N Psi'(r^N).
///
/// # Safety
/// Same contract as [`rm_solution_u`].
#[no_mangle]
pub unsafe extern "C" fn rm_solution_f(sol: *const RmSolution, r: f64, out: *mut f64) -> RmStatus {
    with_solution(sol, out, |s| s.f_at_r(r))
}

/// f'(u(r)) = -N^2 r^{2(N-1)} Psi''(r^N)/Psi(r^N).
///
/// # Safety
/// Same contract as [`rm_solution_u`].
#[no_mangle]
pub unsafe extern "C" fn rm_solution_fprime(
    sol: *const RmSolution,
    r: f64,
    out: *mut f64,
) -> RmStatus {
    with_solution(sol, out, |s| s.fprime_at_r(r))
}

/// Sup norm u(0).
///
/// # Safety
/// Same contract as [`rm_solution_u`].
#[no_mangle]
pub unsafe extern "C" fn rm_solution_sup_norm(sol: *const RmSolution, out: *mut f64) -> RmStatus {
    with_solution(sol, out, |s| Ok(s.sup_norm()))
}

/// L^p(B_1) norm; pass INFINITY for the sup norm. `grid_n >= 256`.
///
/// # Safety
/// Same contract as [`rm_solution_u`].
#[no_mangle]
pub unsafe extern "C" fn rm_solution_lp_norm(
    sol: *const RmSolution,
    p: f64,
    grid_n: usize,
    out: *mut f64,
) -> RmStatus {
    with_solution(sol, out, |s| lp_norm(s, p, grid_n))
}

/// Radial Morse index on (a, b) with an n / 2n refinement check.
///
/// Writes the negative-eigenvalue count and whether the two grids
/// agreed (1) or not (0).
///
/// # Safety
/// `sol` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn rm_radial_morse_index(
    sol: *const RmSolution,
    a: f64,
    b: f64,
    grid_n: usize,
    count: *mut usize,
    refinement_consistent: *mut i32,
) -> RmStatus {
    if sol.is_null() || count.is_null() || refinement_consistent.is_null() {
        set_error("solution or out pointer is null");
        return RmStatus::NullPointer;
    }
    match radial_morse_index(&(*sol).inner, a, b, grid_n) {
        Ok(report) => {
            *count = report.negative_count;
            *refinement_consistent = report.refinement_consistent as i32;
            RmStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Minimum of the annulus stability quotient on (r0, 1); values at or
/// above N - 1 certify stability there.
///
/// # Safety
/// Same contract as [`rm_solution_u`].
#[no_mangle]
pub unsafe extern "C" fn rm_stability_quotient(
    sol: *const RmSolution,
    r0: f64,
    grid_n: usize,
    out: *mut f64,
) -> RmStatus {
    with_solution(sol, out, |s| stability_quotient(s, r0, grid_n))
}

/// Bubble-family point: writes sup norm, L^1 norm, their ratio, the
/// boundary value, and the PDE defect for u_lambda.
///
/// # Safety
/// All five out-pointers must be valid writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rm_critical_family(
    dimension: u32,
    lambda: f64,
    grid_n: usize,
    sup_norm: *mut f64,
    l1_norm: *mut f64,
    ratio: *mut f64,
    boundary_value: *mut f64,
    residual: *mut f64,
) -> RmStatus {
    for p in [sup_norm, l1_norm, ratio, boundary_value, residual] {
        if p.is_null() {
            set_error("out pointer is null");
            return RmStatus::NullPointer;
        }
    }
    match critical_family(dimension, lambda, grid_n) {
        Ok(pt) => {
            *sup_norm = pt.sup_norm;
            *l1_norm = pt.l1_norm;
            *ratio = pt.ratio;
            *boundary_value = pt.boundary_value;
            *residual = pt.residual;
            RmStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}
