//! C ABI over the core library.
//!
//! Capacities and functions are opaque handles built from the same
//! descriptors the CLI accepts (`sqrt-lebesgue`, `possibility-bump[4 2]`,
//! `t^2`, `poly[1 0 2]`, ...). Every call returns a [`BdcStatus`]; on
//! failure the message is kept per thread and read with
//! [`bdc_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bdchoquet::capacity::Capacity;
use bdchoquet::choquet::{choquet_integral, IntegralMethod};
use bdchoquet::cli::catalog::{capacity_shorthand, function_1d};
use bdchoquet::function::{ContinuousFunction1D, Func1};
use bdchoquet::operators::{dbar, dn_possibility, dn_single_mu, Discretization};
use bdchoquet::sets::IntervalSet;
use bdchoquet::Error;

/// Opaque capacity handle.
pub struct BdcCapacity(Capacity);

/// Opaque handle to a function on `[0, 1]`.
pub struct BdcFunction(Func1);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Unknown descriptor or malformed arguments.
    InvalidDescriptor = 3,
    /// Parameters outside the domain of the operation.
    InvalidArgument = 4,
    /// The computation itself failed (zero denominator, non-convergence, ...).
    ComputationFailed = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> BdcStatus {
    match e {
        Error::Config(_) => BdcStatus::InvalidDescriptor,
        Error::ReversedInterval { .. }
        | Error::OutOfDomain { .. }
        | Error::NonCanonicalSet(_)
        | Error::InvalidParameter(_)
        | Error::DimensionMismatch(_)
        | Error::Unsupported(_)
        | Error::DominanceViolated { .. } => BdcStatus::InvalidArgument,
        _ => BdcStatus::ComputationFailed,
    }
}

/// Runs `body`, mapping errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), (BdcStatus, String)>) -> BdcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            BdcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside bdchoquet");
            BdcStatus::Panic
        }
    }
}

fn lib<T>(r: bdchoquet::Result<T>) -> Result<T, (BdcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BdcStatus, String) {
    (BdcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BdcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (BdcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (BdcStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (BdcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn operator_disc(cells: usize) -> Discretization {
    if cells == 0 {
        Discretization::default()
    } else {
        Discretization::default().with_cells(cells)
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bdc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn bdc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds a capacity from a descriptor such as `sin-lebesgue`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_capacity_new(descriptor: *const c_char, out: *mut *mut BdcCapacity) -> BdcStatus {
    guard(|| {
        let d = read_str(descriptor, "descriptor")?;
        let c = lib(capacity_shorthand("descriptor", d))?;
        write(out, Box::into_raw(Box::new(BdcCapacity(c))))
    })
}

/// # Safety
/// `c` must be null or a handle from [`bdc_capacity_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bdc_capacity_free(c: *mut BdcCapacity) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `μ([a, b])`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_capacity_measure_interval(
    c: *const BdcCapacity,
    a: f64,
    b: f64,
    out: *mut f64,
) -> BdcStatus {
    guard(|| {
        let c = deref(c, "capacity")?;
        let set = lib(IntervalSet::interval(a, b))?;
        let v = lib(c.0.measure(&set))?;
        write(out, v)
    })
}

/// Builds a function from a descriptor such as `t^2` or `poly[1 0 2]`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_function_new(descriptor: *const c_char, out: *mut *mut BdcFunction) -> BdcStatus {
    guard(|| {
        let d = read_str(descriptor, "descriptor")?;
        let f = lib(function_1d("descriptor", d))?;
        write(out, Box::into_raw(Box::new(BdcFunction(f))))
    })
}

/// # Safety
/// `f` must be null or a handle from [`bdc_function_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bdc_function_free(f: *mut BdcFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_function_eval(f: *const BdcFunction, t: f64, out: *mut f64) -> BdcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        write(out, f.0.eval(t))
    })
}

/// Choquet integral of `f` over `[a, b]` by level-set quadrature.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_choquet_integral(
    f: *const BdcFunction,
    c: *const BdcCapacity,
    a: f64,
    b: f64,
    out: *mut f64,
) -> BdcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let c = deref(c, "capacity")?;
        let set = lib(IntervalSet::interval(a, b))?;
        let g = lib(ContinuousFunction1D::new(f.0.clone()))?;
        let v = lib(choquet_integral(&g, &set, &c.0, IntegralMethod::beta(16)))?;
        write(out, v)
    })
}

/// Possibility operator `D_n(f)(x)`. `cells = 0` selects the default grid.
///
/// # Safety
/// `f` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_possibility_operator(
    f: *const BdcFunction,
    n: u32,
    x: f64,
    cells: usize,
    out: *mut f64,
) -> BdcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let v = lib(dn_possibility(&f.0, n, x, &operator_disc(cells)))?.value;
        write(out, v)
    })
}

/// Operator with the same capacity `μ` in every term.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_single_capacity_operator(
    f: *const BdcFunction,
    mu: *const BdcCapacity,
    n: u32,
    x: f64,
    cells: usize,
    out: *mut f64,
) -> BdcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let mu = deref(mu, "capacity")?;
        let v = lib(dn_single_mu(&f.0, n, x, &mu.0, &operator_disc(cells)))?.value;
        write(out, v)
    })
}

/// Two-measure operator: ordinary `δ` coefficients, Choquet against `μ` in
/// the last term. Requires `μ ≤ δ`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bdc_two_measure_operator(
    f: *const BdcFunction,
    delta: *const BdcCapacity,
    mu: *const BdcCapacity,
    n: u32,
    x: f64,
    cells: usize,
    out: *mut f64,
) -> BdcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let delta = deref(delta, "delta")?;
        let mu = deref(mu, "mu")?;
        let v = lib(dbar(&f.0, n, x, &delta.0, &mu.0, &operator_disc(cells)))?.value;
        write(out, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn last_error() -> String {
        let mut buf = vec![0 as c_char; 256];
        unsafe { bdc_last_error_message(buf.as_mut_ptr(), buf.len()) };
        unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn integral_round_trip() {
        unsafe {
            let mut c = ptr::null_mut();
            let mut f = ptr::null_mut();
            assert_eq!(bdc_capacity_new(c"sqrt-lebesgue".as_ptr(), &mut c), BdcStatus::Ok);
            assert_eq!(bdc_function_new(c"e1".as_ptr(), &mut f), BdcStatus::Ok);
            let mut v = 0.0;
            assert_eq!(bdc_choquet_integral(f, c, 0.0, 1.0, &mut v), BdcStatus::Ok);
            assert!((v - 2.0 / 3.0).abs() < 1e-8);
            assert_eq!(bdc_capacity_measure_interval(c, 0.0, 0.25, &mut v), BdcStatus::Ok);
            assert!((v - 0.5).abs() < 1e-15);
            bdc_function_free(f);
            bdc_capacity_free(c);
        }
    }

    #[test]
    fn errors_are_reported() {
        unsafe {
            let mut c = ptr::null_mut();
            assert_eq!(bdc_capacity_new(c"cubic".as_ptr(), &mut c), BdcStatus::InvalidDescriptor);
            assert!(c.is_null());
            assert!(last_error().contains("cubic"));
            assert_eq!(bdc_capacity_new(ptr::null(), &mut c), BdcStatus::NullPointer);
            let mut v = 0.0;
            assert_eq!(bdc_function_eval(ptr::null(), 0.5, &mut v), BdcStatus::NullPointer);

            let mut f = ptr::null_mut();
            let mut d = ptr::null_mut();
            let mut m = ptr::null_mut();
            bdc_function_new(c"t^2".as_ptr(), &mut f);
            bdc_capacity_new(c"lebesgue".as_ptr(), &mut d);
            bdc_capacity_new(c"sqrt-lebesgue".as_ptr(), &mut m);
            // sqrt(u) > u near 0, so μ ≤ δ fails
            assert_eq!(bdc_two_measure_operator(f, d, m, 4, 0.5, 256, &mut v), BdcStatus::InvalidArgument);
            assert_eq!(bdc_capacity_measure_interval(m, 0.7, 0.2, &mut v), BdcStatus::InvalidArgument);
            bdc_function_free(f);
            bdc_capacity_free(d);
            bdc_capacity_free(m);
        }
    }

    #[test]
    fn operators_fix_constants() {
        unsafe {
            let mut f = ptr::null_mut();
            let mut c = ptr::null_mut();
            bdc_function_new(c"e0".as_ptr(), &mut f);
            bdc_capacity_new(c"sin-lebesgue".as_ptr(), &mut c);
            let mut v = 0.0;
            assert_eq!(bdc_possibility_operator(f, 5, 0.3, 0, &mut v), BdcStatus::Ok);
            assert!((v - 1.0).abs() < 1e-12);
            assert_eq!(bdc_single_capacity_operator(f, c, 5, 0.3, 256, &mut v), BdcStatus::Ok);
            assert!((v - 1.0).abs() < 1e-12);
            bdc_function_free(f);
            bdc_capacity_free(c);
        }
    }

    #[test]
    fn version_is_terminated() {
        let v = unsafe { CStr::from_ptr(bdc_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
