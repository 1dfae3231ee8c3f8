use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use pi_witt_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pw_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn context(config: Option<&str>) -> *mut PwContext {
    let c = config.map(|s| CString::new(s).unwrap());
    let mut ctx = ptr::null_mut();
    let status =
        unsafe { pw_context_new(c.as_ref().map_or(ptr::null(), |c| c.as_ptr()), &mut ctx) };
    assert_eq!(status, PwStatus::Ok, "{}", last_error());
    ctx
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { pw_string_free(s) };
    out
}

fn parse(ctx: *const PwContext, text: &str) -> *mut PwWitt {
    let t = CString::new(text).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { pw_witt_parse(ctx, t.as_ptr(), &mut w) },
        PwStatus::Ok,
        "{}",
        last_error()
    );
    w
}

fn format(w: *const PwWitt) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pw_witt_format(w, &mut s) }, PwStatus::Ok);
    take_string(s)
}

#[test]
fn witt_addition_over_the_integers() {
    let ctx = context(Some("[ring]\nkind = \"mixed-char\"\np = 2\n"));
    let one = parse(ctx, "(1, 0)");
    let mut two = ptr::null_mut();
    assert_eq!(unsafe { pw_witt_add(one, one, &mut two) }, PwStatus::Ok);
    assert_eq!(format(two), "(2, -1)");
    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { pw_witt_mul(two, two, &mut sq) }, PwStatus::Ok);
    assert_eq!(unsafe { pw_witt_level(sq) }, 1);

    let mut ghost = ptr::null_mut();
    assert_eq!(unsafe { pw_witt_ghost(two, &mut ghost) }, PwStatus::Ok);
    let ghost = CString::new(take_string(ghost)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { pw_witt_unghost(ctx, ghost.as_ptr(), &mut back) },
        PwStatus::Ok
    );
    assert_eq!(format(back), "(2, -1)");
    unsafe {
        for w in [one, two, sq, back] {
            pw_witt_free(w);
        }
        pw_context_free(ctx);
    }
}

#[test]
fn exponential_and_taylor_expansion() {
    let ctx = context(Some("[ring]\nkind = \"equal-char\"\np = 2\n"));
    let t = CString::new("t").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { pw_delta_exp(ctx, t.as_ptr(), 2, &mut w) },
        PwStatus::Ok
    );
    assert_eq!(format(w), "(t, 1+t, t+t^2)");
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { pw_delta_taylor(ctx, t.as_ptr(), 2, &mut s) },
        PwStatus::Ok
    );
    assert_eq!(take_string(s), "(0, 1, 0)");
    unsafe {
        pw_witt_free(w);
        pw_context_free(ctx);
    }
}

#[test]
fn errors_are_reported_by_status_and_message() {
    let mut ctx = ptr::null_mut();
    let bad = CString::new("[ring]\nkind = \"adelic\"\n").unwrap();
    assert_eq!(
        unsafe { pw_context_new(bad.as_ptr(), &mut ctx) },
        PwStatus::Config
    );
    assert!(last_error().contains("adelic"));
    assert!(ctx.is_null());

    let ctx = context(None);
    let text = CString::new("(u, v)").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { pw_witt_parse(ctx, text.as_ptr(), &mut w) },
        PwStatus::Parse
    );
    assert!(last_error().contains("position"));
    assert_eq!(
        unsafe { pw_witt_parse(ctx, ptr::null(), &mut w) },
        PwStatus::NullPointer
    );
    assert_eq!(
        unsafe { pw_witt_parse(ptr::null(), text.as_ptr(), &mut w) },
        PwStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { pw_witt_parse(ctx, invalid.as_ptr().cast(), &mut w) },
        PwStatus::InvalidUtf8
    );

    let a = parse(ctx, "(u)");
    let b = parse(ctx, "(u, t)");
    assert_eq!(unsafe { pw_witt_add(a, b, &mut w) }, PwStatus::Arithmetic);

    let ghost = CString::new("(u, u)").unwrap();
    assert_eq!(
        unsafe { pw_witt_unghost(ctx, ghost.as_ptr(), &mut w) },
        PwStatus::Arithmetic
    );
    assert!(last_error().contains("ghost"), "{}", last_error());

    let ok = parse(ctx, "(u)");
    assert_eq!(last_error(), "");
    unsafe {
        for h in [a, b, ok] {
            pw_witt_free(h);
        }
        pw_witt_free(ptr::null_mut());
        pw_string_free(ptr::null_mut());
        pw_context_free(ctx);
    }
}

#[test]
fn verification_report_as_json() {
    let ctx = context(Some(
        "[ring]\nkind = \"mixed-char\"\np = 3\n[algebra]\ngenerators = [\"u\"]\n",
    ));
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { pw_verify_all(ctx, 1, 4, &mut s) },
        PwStatus::Ok,
        "{}",
        last_error()
    );
    let json = take_string(s);
    assert!(json.starts_with('[') && json.contains("\"verdict\":\"PASS\""));
    unsafe { pw_context_free(ctx) };
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/pi_witt.h");
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, header])
            .status()
            .unwrap_or_else(|e| panic!("{compiler}: {e}"));
        assert!(status.success(), "{compiler} rejected the header");
    }
}
