//! C ABI over `translab`.
//!
//! Every function returns a [`TranslabStatus`]; results come back through
//! out-pointers. On failure a message is kept per thread and can be read
//! with [`translab_last_error_message`]. Generators and reduction problems
//! are opaque heap handles released with their `_free` function. Strings
//! returned by the library are released with [`translab_string_free`].
//!
//! Complex arrays are passed as separate real and imaginary arrays; a null
//! imaginary pointer means all imaginary parts are zero.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_complex::Complex64;
use translab::completeness::{annihilator_margin, best_approximation, build_dictionary};
use translab::core_fn::{shift_envelope, Generator, Grid, Interval, PolyGaussianGenerator, TabulatedGenerator};
use translab::lambda_sets::{blaschke_deficit_sums, classify, reciprocal_partial_sums, TranslationSet};
use translab::reduction::{convergence_run, poly_listing, ReductionProblem, RunStatus};
use translab::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Precondition = 3,
    Overflow = 4,
    Numerical = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Outcome of a convergence run, mirroring the CSV status column.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslabRunStatus {
    Converged = 0,
    NoConvergence = 1,
    Inconclusive = 2,
    Overflow = 3,
}

impl From<RunStatus> for TranslabRunStatus {
    fn from(s: RunStatus) -> Self {
        match s {
            RunStatus::Converged => Self::Converged,
            RunStatus::NoConvergence => Self::NoConvergence,
            RunStatus::Inconclusive => Self::Inconclusive,
            RunStatus::Overflow => Self::Overflow,
        }
    }
}

/// Opaque generator handle.
pub struct TranslabGenerator(Generator);

/// Opaque reduction problem handle.
pub struct TranslabProblem(ReductionProblem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(TranslabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidArgument(_) | Error::Empty(_) | Error::MoebiusPole => TranslabStatus::InvalidArgument,
            Error::Precondition(_) => TranslabStatus::Precondition,
            Error::CoefficientOverflow { .. } | Error::TermCap { .. } => TranslabStatus::Overflow,
            Error::ZeroColumn { .. } | Error::InconsistentState(_) => TranslabStatus::Numerical,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(TranslabStatus::NullPointer, format!("{what} is null"))
}

/// Run `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> TranslabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TranslabStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside translab".into());
            TranslabStatus::Panic
        }
    }
}

unsafe fn reals<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn complexes(re: *const f64, im: *const f64, len: usize, what: &str) -> Result<Vec<Complex64>, Fail> {
    let re = reals(re, len, what)?;
    if im.is_null() {
        return Ok(re.iter().map(|&x| Complex64::new(x, 0.0)).collect());
    }
    let im = slice::from_raw_parts(im, len);
    Ok(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

fn grid(lo: f64, hi: f64, points: usize) -> Result<Grid, Fail> {
    Ok(Grid::uniform(Interval::new(lo, hi)?, points)?)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next `translab_*` call on the same thread.
#[no_mangle]
pub extern "C" fn translab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn translab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `q(t) exp(-c t^2)` with `q(t) = sum_j alpha_j t^j`.
#[no_mangle]
pub unsafe extern "C" fn translab_generator_poly_gaussian(
    alpha_re: *const f64,
    alpha_im: *const f64,
    len: usize,
    c: f64,
    out_handle: *mut *mut TranslabGenerator,
) -> TranslabStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let alpha = complexes(alpha_re, alpha_im, len, "alpha_re")?;
        let g = PolyGaussianGenerator::new(alpha, c)?;
        *slot = Box::into_raw(Box::new(TranslabGenerator(g.into())));
        Ok(())
    })
}

/// Piecewise-linear generator through `(xs[i], values[i])`, zero outside.
#[no_mangle]
pub unsafe extern "C" fn translab_generator_tabulated(
    xs: *const f64,
    values_re: *const f64,
    values_im: *const f64,
    len: usize,
    out_handle: *mut *mut TranslabGenerator,
) -> TranslabStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let xs = reals(xs, len, "xs")?.to_vec();
        let values = complexes(values_re, values_im, len, "values_re")?;
        let g = TabulatedGenerator::new(xs, values)?;
        *slot = Box::into_raw(Box::new(TranslabGenerator(g.into())));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn translab_generator_free(handle: *mut TranslabGenerator) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// `f(t - shift)`.
#[no_mangle]
pub unsafe extern "C" fn translab_generator_eval(
    handle: *const TranslabGenerator,
    shift: f64,
    t: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> TranslabStatus {
    guard(|| {
        let g = handle.as_ref().ok_or_else(|| null("handle"))?;
        let (re, im) = (out(out_re, "out_re")?, out(out_im, "out_im")?);
        let v = g.0.eval_shift(shift, t);
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// `E(x) = sup_{t in [lo, hi]} |f(t - a x - b)|` at each of `len` abscissae.
#[no_mangle]
pub unsafe extern "C" fn translab_shift_envelope(
    handle: *const TranslabGenerator,
    lo: f64,
    hi: f64,
    a: f64,
    b: f64,
    xs: *const f64,
    len: usize,
    out_values: *mut f64,
) -> TranslabStatus {
    guard(|| {
        let g = handle.as_ref().ok_or_else(|| null("handle"))?;
        let xs = reals(xs, len, "xs")?;
        if len > 0 && out_values.is_null() {
            return Err(null("out_values"));
        }
        let env = shift_envelope(&g.0, Interval::new(lo, hi)?, a, b, xs)?;
        if len > 0 {
            slice::from_raw_parts_mut(out_values, len).copy_from_slice(&env);
        }
        Ok(())
    })
}

/// Final reciprocal partial sum and final Blaschke deficit sums of a
/// translation set. Any of the out-pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn translab_translation_sums(
    values: *const f64,
    len: usize,
    out_reciprocal: *mut f64,
    out_blaschke_plus: *mut f64,
    out_blaschke_minus: *mut f64,
) -> TranslabStatus {
    guard(|| {
        let lam = TranslationSet::explicit(reals(values, len, "values")?.to_vec())?;
        let last = |v: Vec<f64>| v.last().copied().unwrap_or(0.0);
        let (plus, minus) = blaschke_deficit_sums(&lam);
        if let Some(r) = out_reciprocal.as_mut() {
            *r = last(reciprocal_partial_sums(&lam));
        }
        if let Some(p) = out_blaschke_plus.as_mut() {
            *p = last(plus);
        }
        if let Some(m) = out_blaschke_minus.as_mut() {
            *m = last(minus);
        }
        Ok(())
    })
}

/// Classification report of an explicit translation set as JSON.
#[no_mangle]
pub unsafe extern "C" fn translab_classify_json(
    values: *const f64,
    len: usize,
    out_json: *mut *mut c_char,
) -> TranslabStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let lam = TranslationSet::explicit(reals(values, len, "values")?.to_vec())?;
        let text =
            serde_json::to_string(&classify(&lam)).map_err(|e| Fail(TranslabStatus::Numerical, e.to_string()))?;
        *slot = into_c_string(text);
        Ok(())
    })
}

/// Residual of the truncated-SVD least-squares fit of `target` (sampled on
/// the uniform grid with `points` nodes) by the translates `lambdas`.
#[no_mangle]
pub unsafe extern "C" fn translab_best_approximation(
    handle: *const TranslabGenerator,
    lo: f64,
    hi: f64,
    points: usize,
    lambdas: *const f64,
    k: usize,
    target_re: *const f64,
    target_im: *const f64,
    cutoff: f64,
    out_residual_sup: *mut f64,
    out_effective_rank: *mut usize,
) -> TranslabStatus {
    guard(|| {
        let g = handle.as_ref().ok_or_else(|| null("handle"))?;
        let (res, rank) = (
            out(out_residual_sup, "out_residual_sup")?,
            out(out_effective_rank, "out_effective_rank")?,
        );
        let grid = grid(lo, hi, points)?;
        let lam = TranslationSet::explicit(reals(lambdas, k, "lambdas")?.to_vec())?;
        let target = complexes(target_re, target_im, points, "target_re")?;
        let dict = build_dictionary(&g.0, &grid, &lam)?;
        let fit = best_approximation(&dict, &target, cutoff, &[])?;
        *res = fit.residual_sup;
        *rank = fit.effective_rank;
        Ok(())
    })
}

/// Smallest singular value of the unit-sup scaled translate dictionary.
#[no_mangle]
pub unsafe extern "C" fn translab_annihilator_margin(
    handle: *const TranslabGenerator,
    lo: f64,
    hi: f64,
    points: usize,
    lambdas: *const f64,
    k: usize,
    out_margin: *mut f64,
) -> TranslabStatus {
    guard(|| {
        let g = handle.as_ref().ok_or_else(|| null("handle"))?;
        let margin = out(out_margin, "out_margin")?;
        let grid = grid(lo, hi, points)?;
        let lam = TranslationSet::explicit(reals(lambdas, k, "lambdas")?.to_vec())?;
        let dict = build_dictionary(&g.0, &grid, &lam)?;
        let probes = TranslationSet::explicit(Vec::new())?;
        *margin = annihilator_margin(&dict, &probes)?.margin;
        Ok(())
    })
}

/// Reduction problem for `F = sum_k d_k f(. - a k - b)`, `k = m0, ..., m0 + len - 1`.
/// The generator is copied; the handle can be freed afterwards.
#[no_mangle]
pub unsafe extern "C" fn translab_problem_new(
    generator: *const TranslabGenerator,
    a: f64,
    b: f64,
    m0: i64,
    d_re: *const f64,
    d_im: *const f64,
    len: usize,
    out_handle: *mut *mut TranslabProblem,
) -> TranslabStatus {
    guard(|| {
        let slot = out(out_handle, "out_handle")?;
        let g = generator.as_ref().ok_or_else(|| null("generator"))?;
        let d = complexes(d_re, d_im, len, "d_re")?;
        let p = ReductionProblem::new(g.0.clone(), a, b, m0, d)?;
        *slot = Box::into_raw(Box::new(TranslabProblem(p)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn translab_problem_free(handle: *mut TranslabProblem) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Run the reduction for `ell = 1..=ell_max` on a uniform grid. `out_err`
/// must hold `ell_max` doubles; `*out_rows` receives how many were filled
/// (fewer than `ell_max` after an overflow).
#[no_mangle]
pub unsafe extern "C" fn translab_convergence_run(
    handle: *const TranslabProblem,
    lo: f64,
    hi: f64,
    points: usize,
    ell_max: usize,
    out_err: *mut f64,
    out_rows: *mut usize,
    out_status: *mut TranslabRunStatus,
) -> TranslabStatus {
    guard(|| {
        let p = handle.as_ref().ok_or_else(|| null("handle"))?;
        let (rows, status) = (out(out_rows, "out_rows")?, out(out_status, "out_status")?);
        if ell_max > 0 && out_err.is_null() {
            return Err(null("out_err"));
        }
        let table = convergence_run(&p.0, &grid(lo, hi, points)?, ell_max)?;
        let errs = slice::from_raw_parts_mut(out_err, ell_max);
        for (slot, row) in errs.iter_mut().zip(&table.rows) {
            *slot = row.err_sup;
        }
        *rows = table.rows.len();
        *status = table.status.into();
        Ok(())
    })
}

/// Same run as [`translab_convergence_run`], returned as CSV text.
#[no_mangle]
pub unsafe extern "C" fn translab_convergence_csv(
    handle: *const TranslabProblem,
    lo: f64,
    hi: f64,
    points: usize,
    ell_max: usize,
    out_csv: *mut *mut c_char,
) -> TranslabStatus {
    guard(|| {
        let p = handle.as_ref().ok_or_else(|| null("handle"))?;
        let slot = out(out_csv, "out_csv")?;
        let table = convergence_run(&p.0, &grid(lo, hi, points)?, ell_max)?;
        *slot = into_c_string(table.to_csv());
        Ok(())
    })
}

/// Canonical text of the exact recursion polynomials for levels `1..=ell`,
/// one `p[l,j] = ...` line each.
#[no_mangle]
pub unsafe extern "C" fn translab_polys_text(n: usize, ell: usize, out_text: *mut *mut c_char) -> TranslabStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = into_c_string(poly_listing(n, ell)?);
        Ok(())
    })
}

/// Copy a NUL-terminated string into `buf` of `cap` bytes, including the
/// terminator. `*out_needed` always receives the required size.
#[no_mangle]
pub unsafe extern "C" fn translab_copy_string(
    s: *const c_char,
    buf: *mut c_char,
    cap: usize,
    out_needed: *mut usize,
) -> TranslabStatus {
    guard(|| {
        if s.is_null() {
            return Err(null("s"));
        }
        let bytes = CStr::from_ptr(s).to_bytes_with_nul();
        *out(out_needed, "out_needed")? = bytes.len();
        if cap < bytes.len() {
            return Err(Fail(
                TranslabStatus::BufferTooSmall,
                format!("need {} bytes, have {cap}", bytes.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, bytes.len());
        Ok(())
    })
}
