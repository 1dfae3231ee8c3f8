//! C ABI over `pi-witt`.
//!
//! Every fallible function returns a [`PwStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and
//! can be read with [`pw_last_error`]. Strings handed out by the library
//! must be released with [`pw_string_free`]; handles with their own
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pi_witt::cli::{default_ring, parse_config};
use pi_witt::harness::{run_all, HarnessRing, VerifyReport};
use pi_witt::poly::parse_poly;
use pi_witt::witt::{GhostVec, WittVec};
use pi_witt::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Parse = 4,
    Arithmetic = 5,
    SuiteFailed = 6,
    Panic = 7,
}

/// A ring, algebra and Frobenius lift.
pub struct PwContext {
    ring: HarnessRing,
}

/// A truncated Witt vector over the algebra of the context it came from.
pub struct PwWitt {
    value: WittVec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(PwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => PwStatus::Parse,
            Error::Config(_)
            | Error::InvalidRing(_)
            | Error::NotAFrobeniusLift { .. }
            | Error::UnknownSuite(_)
            | Error::IncompatibleRing { .. } => PwStatus::Config,
            _ => PwStatus::Arithmetic,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<PwStatus, Fail>) -> PwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_last_error("");
            status
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            PwStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(
            PwStatus::NullPointer,
            "string argument is null".into(),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(PwStatus::InvalidUtf8, e.to_string()))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(PwStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(PwStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<PwStatus, Fail> {
    let c = CString::new(s).map_err(|e| Fail(PwStatus::Arithmetic, e.to_string()))?;
    *out = c.into_raw();
    Ok(PwStatus::Ok)
}

unsafe fn give_witt(out: *mut *mut PwWitt, value: WittVec) -> Result<PwStatus, Fail> {
    *out = Box::into_raw(Box::new(PwWitt { value }));
    Ok(PwStatus::Ok)
}

/// Message of the last failed call on this thread, or "" after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn pw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a context from a TOML ring description. A null `config` gives
/// 𝔽_2[t][u] with φ(u) = u².
///
/// # Safety
/// `config` is null or a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pw_context_new(
    config: *const c_char,
    out: *mut *mut PwContext,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let ring = if config.is_null() {
            default_ring()
        } else {
            parse_config(text(config)?, "ffi")?
        };
        *out = Box::into_raw(Box::new(PwContext { ring }));
        Ok(PwStatus::Ok)
    })
}

/// # Safety
/// `ctx` is null or came from [`pw_context_new`] and is freed once.
#[no_mangle]
pub unsafe extern "C" fn pw_context_free(ctx: *mut PwContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Parses "(x0, …, xn)" over the context's algebra.
///
/// # Safety
/// Pointers are valid; `text_in` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_parse(
    ctx: *const PwContext,
    text_in: *const c_char,
    out: *mut *mut PwWitt,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = borrow(ctx, "context")?;
        give_witt(out, WittVec::parse(ctx.ring.alg(), text(text_in)?)?)
    })
}

/// Recovers a Witt vector from ghost components "(w0, …, wn)".
///
/// # Safety
/// Pointers are valid; `text_in` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_unghost(
    ctx: *const PwContext,
    text_in: *const c_char,
    out: *mut *mut PwWitt,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = borrow(ctx, "context")?;
        give_witt(
            out,
            GhostVec::parse(ctx.ring.alg(), text(text_in)?)?.unghost()?,
        )
    })
}

/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_add(
    a: *const PwWitt,
    b: *const PwWitt,
    out: *mut *mut PwWitt,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let (a, b) = (borrow(a, "left operand")?, borrow(b, "right operand")?);
        give_witt(out, a.value.add(&b.value)?)
    })
}

/// # Safety
/// `a` and `b` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_mul(
    a: *const PwWitt,
    b: *const PwWitt,
    out: *mut *mut PwWitt,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let (a, b) = (borrow(a, "left operand")?, borrow(b, "right operand")?);
        give_witt(out, a.value.mul(&b.value)?)
    })
}

/// Writes the vector in the same notation [`pw_witt_parse`] accepts.
///
/// # Safety
/// `w` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_format(w: *const PwWitt, out: *mut *mut c_char) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        give_string(out, borrow(w, "vector")?.value.to_string())
    })
}

/// Writes the ghost components as "(w0, …, wn)".
///
/// # Safety
/// `w` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_ghost(w: *const PwWitt, out: *mut *mut c_char) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        give_string(out, borrow(w, "vector")?.value.ghost().to_string())
    })
}

/// Truncation level n of a vector with n + 1 components.
///
/// # Safety
/// `w` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_level(w: *const PwWitt) -> usize {
    w.as_ref().map_or(0, |w| w.value.level())
}

/// # Safety
/// `w` is null or came from this library and is freed once.
#[no_mangle]
pub unsafe extern "C" fn pw_witt_free(w: *mut PwWitt) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// The arithmetic exponential of a polynomial, truncated at level `n`.
///
/// # Safety
/// Pointers are valid; `poly` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pw_delta_exp(
    ctx: *const PwContext,
    poly: *const c_char,
    n: usize,
    out: *mut *mut PwWitt,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = borrow(ctx, "context")?;
        let x = parse_poly(ctx.ring.alg(), text(poly)?)?;
        give_witt(out, ctx.ring.ctx().exp_delta(&x, n)?)
    })
}

/// The arithmetic Taylor expansion modulo π, as text.
///
/// # Safety
/// Pointers are valid; `poly` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pw_delta_taylor(
    ctx: *const PwContext,
    poly: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = borrow(ctx, "context")?;
        let x = parse_poly(ctx.ring.alg(), text(poly)?)?;
        give_string(out, ctx.ring.ctx().taylor_expand(&x, n)?.to_string())
    })
}

/// Runs every suite on the context's ring and writes the JSON report
/// array. `trials` = 0 keeps the default. Returns
/// [`PwStatus::SuiteFailed`] when some suite fails; the report is written
/// either way.
///
/// # Safety
/// `ctx` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pw_verify_all(
    ctx: *const PwContext,
    seed: u64,
    trials: usize,
    out: *mut *mut c_char,
) -> PwStatus {
    guard(|| {
        out_ptr(out)?;
        let ctx = borrow(ctx, "context")?;
        let trials = (trials > 0).then_some(trials);
        let reports = run_all(std::slice::from_ref(&ctx.ring), seed, trials, None);
        let json: Vec<_> = reports.iter().map(VerifyReport::to_json).collect();
        give_string(out, serde_json::Value::Array(json).to_string())?;
        if reports.iter().all(VerifyReport::passed) {
            Ok(PwStatus::Ok)
        } else {
            Err(Fail(
                PwStatus::SuiteFailed,
                "at least one suite failed".into(),
            ))
        }
    })
}

/// # Safety
/// `s` is null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
