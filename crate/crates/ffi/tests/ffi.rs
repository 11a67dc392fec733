use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use toplat_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = tl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    tl_string_free(p);
    s
}

#[test]
fn structures_and_formulas() {
    let json = c(
        r#"{"universe":["a","b"],"relations":{"le":{"arity":2,"tuples":[["a","a"],["a","b"],["b","b"]]}}}"#,
    );
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(tl_structure_parse(json.as_ptr(), &mut s), TlStatus::Ok);
        let mut v = false;
        assert_eq!(
            tl_eval(
                s,
                c("(exists x (forall y (le x y)))").as_ptr(),
                ptr::null(),
                &mut v
            ),
            TlStatus::Ok
        );
        assert!(v);
        assert_eq!(
            tl_eval(s, c("(le x y)").as_ptr(), c("x=b y=a").as_ptr(), &mut v),
            TlStatus::Ok
        );
        assert!(!v);
        assert_eq!(
            tl_eval(s, c("(le x y)").as_ptr(), ptr::null(), &mut v),
            TlStatus::Invalid
        );
        assert!(last_error().contains('x'));
        assert_eq!(
            tl_eval(s, c("(le x").as_ptr(), ptr::null(), &mut v),
            TlStatus::Parse
        );
        assert_eq!(
            tl_eval(ptr::null(), c("(le x x)").as_ptr(), ptr::null(), &mut v),
            TlStatus::NullPointer
        );
        tl_structure_free(s);
        let mut bad = ptr::null_mut();
        assert_eq!(
            tl_structure_parse(c("{").as_ptr(), &mut bad),
            TlStatus::Parse
        );
        assert!(bad.is_null());
    }
    // Success clears the previous message.
    let mut n = 0usize;
    unsafe { tl_arith(TlOp::Add, 1, 1, 0, &mut n) };
    assert!(tl_last_error().is_null());
}

#[test]
fn intervals() {
    let mut u = ptr::null_mut();
    unsafe {
        assert_eq!(
            tl_interval_parse(c("[0,1] [2,5/2]").as_ptr(), &mut u),
            TlStatus::Ok
        );
        let mut n = 0usize;
        assert_eq!(tl_interval_components(u, &mut n), TlStatus::Ok);
        assert_eq!(n, 2);
        let mut v = true;
        assert_eq!(tl_interval_check_i(u, &mut v), TlStatus::Ok);
        assert!(!v);
        let mut t = ptr::null_mut();
        assert_eq!(tl_interval_to_string(u, &mut t), TlStatus::Ok);
        assert_eq!(take_string(t), "[0,1] [2,5/2]");
        tl_interval_free(u);
        let mut one = ptr::null_mut();
        assert_eq!(
            tl_interval_parse(c("[0,3]").as_ptr(), &mut one),
            TlStatus::Ok
        );
        assert_eq!(tl_interval_check_i(one, &mut v), TlStatus::Ok);
        assert!(v);
        tl_interval_free(one);
        assert_eq!(
            tl_interval_parse(c("[3,0]").as_ptr(), &mut one),
            TlStatus::Parse
        );
    }
}

#[test]
fn polyhedra() {
    let (mut p, mut cl) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(
            tl_polyhedron_parse(c("x + y < 1; x >= 0; y >= 0").as_ptr(), &mut p),
            TlStatus::Ok
        );
        assert_eq!(tl_polyhedron_closure(p, &mut cl), TlStatus::Ok);
        let mut v = false;
        assert_eq!(tl_polyhedron_leq(p, cl, &mut v), TlStatus::Ok);
        assert!(v);
        assert_eq!(tl_polyhedron_leq(cl, p, &mut v), TlStatus::Ok);
        assert!(!v);
        assert_eq!(tl_polyhedron_is_bounded(cl, &mut v), TlStatus::Ok);
        assert!(v);
        let mut t = ptr::null_mut();
        assert_eq!(tl_polyhedron_to_string(cl, &mut t), TlStatus::Ok);
        assert!(take_string(t).contains("<= 1"));
        tl_polyhedron_free(p);
        tl_polyhedron_free(cl);
        assert_eq!(
            tl_polyhedron_parse(c("x + y <<= 1").as_ptr(), &mut p),
            TlStatus::Parse
        );
    }
}

#[test]
fn arithmetic() {
    let mut n = 0usize;
    unsafe {
        assert_eq!(tl_arith(TlOp::Mul, 2, 3, 0, &mut n), TlStatus::Ok);
        assert_eq!(n, 6);
        assert_eq!(tl_arith(TlOp::Add, 0, 5, 0, &mut n), TlStatus::Ok);
        assert_eq!(n, 5);
        assert_eq!(tl_arith(TlOp::Mul, 9, 9, 5, &mut n), TlStatus::TooSmall);
        assert!(last_error().contains("needs at least"));
        assert_eq!(
            tl_arith(TlOp::Mul, 2, 2, 0, ptr::null_mut()),
            TlStatus::NullPointer
        );
    }
}

#[test]
fn antichains() {
    let (mut a, mut b, mut two) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    let coords = [1u32, 1, 3, 1, 1, 3];
    unsafe {
        assert_eq!(
            tl_antichain_parse(c("[[1,1]]").as_ptr(), &mut a),
            TlStatus::Ok
        );
        assert_eq!(
            tl_antichain_parse(c("[[2,2]]").as_ptr(), &mut b),
            TlStatus::Ok
        );
        assert_eq!(
            tl_antichain_parse(c("[[1,2],[2,1]]").as_ptr(), &mut two),
            TlStatus::Ok
        );
        let mut v = false;
        assert_eq!(
            tl_antichain_equal_size(3, a, b, coords.as_ptr(), 3, &mut v),
            TlStatus::Ok
        );
        assert!(v);
        assert_eq!(
            tl_antichain_equal_size(3, two, b, coords.as_ptr(), 3, &mut v),
            TlStatus::Ok
        );
        assert!(!v);
        let bad = [1u32, 1, 3, 1, 2, 1];
        assert_eq!(
            tl_antichain_equal_size(3, a, b, bad.as_ptr(), 3, &mut v),
            TlStatus::Invalid
        );
        assert!(last_error().contains("coordinate system"));
        let mut x = ptr::null_mut();
        assert_eq!(
            tl_antichain_parse(c("[[1,1],[2,2]]").as_ptr(), &mut x),
            TlStatus::Invalid
        );
        assert!(last_error().contains("comparable"));
        for h in [a, b, two] {
            tl_antichain_free(h);
        }
    }
}

#[test]
fn verify_suite() {
    let (mut json, mut passed) = (ptr::null_mut(), false);
    unsafe {
        assert_eq!(
            tl_verify(c("trees").as_ptr(), 1, &mut json, &mut passed),
            TlStatus::Ok
        );
        assert!(passed);
        assert!(take_string(json).contains("\"schema\": \"toplat-verify/1\""));
        assert_eq!(
            tl_verify(c("nope").as_ptr(), 1, &mut json, &mut passed),
            TlStatus::Unknown
        );
    }
}

#[test]
fn header_declares_the_interface_and_compiles() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/toplat.h")).unwrap();
    for name in [
        "tl_last_error",
        "tl_string_free",
        "tl_structure_parse",
        "tl_structure_free",
        "tl_eval",
        "tl_interval_parse",
        "tl_interval_free",
        "tl_polyhedron_parse",
        "tl_polyhedron_closure",
        "tl_polyhedron_free",
        "tl_arith",
        "tl_antichain_parse",
        "tl_antichain_equal_size",
        "tl_antichain_free",
        "tl_verify",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name}");
    }
    let src = std::env::temp_dir().join(format!("toplat-ffi-{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"toplat.h\"\nint main(void) { size_t n; return tl_arith(TL_OP_MUL, 2, 3, 0, &n) == TL_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .output()
    {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("no C compiler; skipped the compile check"),
    }
}
