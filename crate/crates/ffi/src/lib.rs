//! C interface to `toplat`.
//!
//! Objects cross the boundary as opaque handles created by a `*_parse`
//! function (or `tl_polyhedron_closure`) and released by the matching
//! `*_free`. Every fallible
//! function returns a [`TlStatus`]; on failure a message is available from
//! [`tl_last_error`] until the next call on the same thread. Strings handed
//! out by the library are released with [`tl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use toplat::antichain::{Antichain, CoordinateSystem, GridPoint};
use toplat::convex::Polyhedron;
use toplat::formula::{evaluate, parse_formula, Assignment, FiniteStructure};
use toplat::interval::{self, IntervalSet};
use toplat::report::VerifyReport;
use toplat::suites::{self, Options};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    TooSmall = 5,
    Unknown = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlOp {
    Add = 0,
    Mul = 1,
}

pub struct TlStructure(FiniteStructure);
pub struct TlIntervalSet(IntervalSet);
pub struct TlPolyhedron(Polyhedron);
pub struct TlAntichain(Antichain);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: TlStatus, msg: impl ToString) -> TlStatus {
    let text = CString::new(msg.to_string().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

/// Runs `f`, clearing the last error first and turning panics into
/// [`TlStatus::Panic`].
fn guard(f: impl FnOnce() -> TlStatus) -> TlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TlStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, TlStatus> {
    if p.is_null() {
        return Err(fail(TlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(TlStatus::InvalidUtf8, e))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, TlStatus> {
    p.as_mut()
        .ok_or_else(|| fail(TlStatus::NullPointer, "null output pointer"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, TlStatus> {
    p.as_ref()
        .ok_or_else(|| fail(TlStatus::NullPointer, "null handle"))
}

fn status(r: Result<(), TlStatus>) -> TlStatus {
    r.err().unwrap_or(TlStatus::Ok)
}

fn give<T>(slot: &mut *mut T, v: T) {
    *slot = Box::into_raw(Box::new(v));
}

fn give_string(slot: &mut *mut c_char, s: String) {
    *slot = CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw();
}

/// The message of the last failure on this thread, or null. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tl_structure_free(h: *mut TlStructure) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tl_interval_free(h: *mut TlIntervalSet) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tl_polyhedron_free(h: *mut TlPolyhedron) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tl_antichain_free(h: *mut TlAntichain) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses a structure file body.
///
/// # Safety
/// `json` must be a nul-terminated string; `out_structure` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_structure_parse(
    json: *const c_char,
    out_structure: *mut *mut TlStructure,
) -> TlStatus {
    guard(|| {
        status((|| {
            let slot = out(out_structure)?;
            let s =
                FiniteStructure::from_json(text(json)?).map_err(|e| fail(TlStatus::Parse, e))?;
            give(slot, TlStructure(s));
            Ok(())
        })())
    })
}

/// Evaluates a sentence, or a formula whose free variables are bound by
/// `assignment` ("x=a y=b", may be null).
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn tl_eval(
    structure: *const TlStructure,
    formula: *const c_char,
    assignment: *const c_char,
    out_value: *mut bool,
) -> TlStatus {
    guard(|| {
        status((|| {
            let s = &handle(structure)?.0;
            let slot = out(out_value)?;
            let f = parse_formula(text(formula)?).map_err(|e| fail(TlStatus::Parse, e))?;
            let mut asg = Assignment::new();
            if !assignment.is_null() {
                for item in text(assignment)?.split_whitespace() {
                    let (v, e) = item
                        .split_once('=')
                        .ok_or_else(|| fail(TlStatus::Parse, format!("bad binding {item:?}")))?;
                    let pos = s
                        .position(e)
                        .ok_or_else(|| fail(TlStatus::Invalid, format!("unknown element {e:?}")))?;
                    asg.insert(v.to_string(), pos);
                }
            }
            *slot = evaluate(s, &f, &asg).map_err(|e| fail(TlStatus::Invalid, e))?;
            Ok(())
        })())
    })
}

/// Parses "[a,b] [c,d]" with rational endpoints.
///
/// # Safety
/// `text_in` must be nul-terminated; `out_set` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_interval_parse(
    text_in: *const c_char,
    out_set: *mut *mut TlIntervalSet,
) -> TlStatus {
    guard(|| {
        status((|| {
            let slot = out(out_set)?;
            let u: IntervalSet = text(text_in)?
                .parse()
                .map_err(|e| fail(TlStatus::Parse, e))?;
            give(slot, TlIntervalSet(u));
            Ok(())
        })())
    })
}

/// Number of connected components.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_interval_components(
    set: *const TlIntervalSet,
    out_count: *mut usize,
) -> TlStatus {
    guard(|| {
        status((|| {
            *out(out_count)? = handle(set)?.0.len();
            Ok(())
        })())
    })
}

/// The bounded check of the interval predicate `I`.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_interval_check_i(
    set: *const TlIntervalSet,
    out_value: *mut bool,
) -> TlStatus {
    guard(|| {
        status((|| {
            *out(out_value)? = interval::check_i(&handle(set)?.0).verdict;
            Ok(())
        })())
    })
}

/// # Safety
/// `set` must be a live handle; the result is freed with [`tl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tl_interval_to_string(
    set: *const TlIntervalSet,
    out_text: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        status((|| {
            let u = &handle(set)?.0;
            give_string(out(out_text)?, u.to_string());
            Ok(())
        })())
    })
}

/// Parses constraints "a*x + b*y (<|<=|=) c" separated by ';'.
///
/// # Safety
/// `text_in` must be nul-terminated; `out_poly` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_polyhedron_parse(
    text_in: *const c_char,
    out_poly: *mut *mut TlPolyhedron,
) -> TlStatus {
    guard(|| {
        status((|| {
            let slot = out(out_poly)?;
            let p: Polyhedron = text(text_in)?
                .parse()
                .map_err(|e| fail(TlStatus::Parse, e))?;
            give(slot, TlPolyhedron(p));
            Ok(())
        })())
    })
}

/// Inclusion `a ⊆ b`.
///
/// # Safety
/// Handles must be live.
#[no_mangle]
pub unsafe extern "C" fn tl_polyhedron_leq(
    a: *const TlPolyhedron,
    b: *const TlPolyhedron,
    out_value: *mut bool,
) -> TlStatus {
    guard(|| {
        status((|| {
            *out(out_value)? = handle(a)?.0.leq(&handle(b)?.0);
            Ok(())
        })())
    })
}

/// A new handle holding the topological closure.
///
/// # Safety
/// `p` must be live; `out_poly` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_polyhedron_closure(
    p: *const TlPolyhedron,
    out_poly: *mut *mut TlPolyhedron,
) -> TlStatus {
    guard(|| {
        status((|| {
            let c = handle(p)?.0.closure();
            give(out(out_poly)?, TlPolyhedron(c));
            Ok(())
        })())
    })
}

/// # Safety
/// `p` must be live.
#[no_mangle]
pub unsafe extern "C" fn tl_polyhedron_is_bounded(
    p: *const TlPolyhedron,
    out_value: *mut bool,
) -> TlStatus {
    guard(|| {
        status((|| {
            *out(out_value)? = handle(p)?.0.is_bounded();
            Ok(())
        })())
    })
}

/// # Safety
/// `p` must be live; the result is freed with [`tl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tl_polyhedron_to_string(
    p: *const TlPolyhedron,
    out_text: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        status((|| {
            let s = handle(p)?.0.to_string();
            give_string(out(out_text)?, s);
            Ok(())
        })())
    })
}

/// `m + n` or `m · n` through the interval lattice on a grid of `grid`
/// points (0 picks the smallest that works). [`TlStatus::TooSmall`] when
/// the grid cannot hold the computation; the message names the size needed.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_arith(
    op: TlOp,
    m: usize,
    n: usize,
    grid: usize,
    out_value: *mut usize,
) -> TlStatus {
    guard(|| {
        status((|| {
            let slot = out(out_value)?;
            let g = (grid > 0).then_some(grid);
            let r = match op {
                TlOp::Add => interval::lattice_add(m, n, g),
                TlOp::Mul => interval::lattice_mul(m, n, g),
            };
            *slot = r
                .map_err(|e| match e {
                    interval::ArithError::TooSmall { .. } => fail(TlStatus::TooSmall, e),
                    other => fail(TlStatus::Invalid, other),
                })?
                .value;
            Ok(())
        })())
    })
}

/// Parses a JSON array of integer pairs and checks that it is an anti-chain.
///
/// # Safety
/// `json` must be nul-terminated; `out_antichain` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_antichain_parse(
    json: *const c_char,
    out_antichain: *mut *mut TlAntichain,
) -> TlStatus {
    guard(|| {
        status((|| {
            let slot = out(out_antichain)?;
            let a: Antichain =
                serde_json::from_str(text(json)?).map_err(|e| fail(TlStatus::Invalid, e))?;
            give(slot, TlAntichain(a));
            Ok(())
        })())
    })
}

/// Whether witnesses `G, H_A, H_B` with at most `cap` points exist for the
/// coordinate system `o, p, q` on the `grid × grid` chain product.
///
/// # Safety
/// Handles must be live; `coords` must point to six values o.x o.y p.x p.y q.x q.y.
#[no_mangle]
pub unsafe extern "C" fn tl_antichain_equal_size(
    grid: u32,
    a: *const TlAntichain,
    b: *const TlAntichain,
    coords: *const u32,
    cap: usize,
    out_value: *mut bool,
) -> TlStatus {
    guard(|| {
        status((|| {
            let (a, b) = (&handle(a)?.0, &handle(b)?.0);
            if coords.is_null() {
                return Err(fail(TlStatus::NullPointer, "null coordinates"));
            }
            let c = std::slice::from_raw_parts(coords, 6);
            let pt = |i: usize| GridPoint::new(c[2 * i], c[2 * i + 1]);
            let slot = out(out_value)?;
            let cs = CoordinateSystem::new(grid, pt(0), pt(1), pt(2), cap)
                .map_err(|e| fail(TlStatus::Invalid, e))?;
            *slot = cs
                .equal_size(a, b)
                .map_err(|e| fail(TlStatus::Invalid, e))?
                .is_some();
            Ok(())
        })())
    })
}

/// Runs one verification suite with default sizes and the given seed,
/// returning the JSON report and whether it passed.
///
/// # Safety
/// `suite` must be nul-terminated; outputs must be valid pointers. The JSON
/// is freed with [`tl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tl_verify(
    suite: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> TlStatus {
    guard(|| {
        status((|| {
            let name = text(suite)?;
            let (json_slot, passed_slot) = (out(out_json)?, out(out_passed)?);
            let s = suites::find(name)
                .ok_or_else(|| fail(TlStatus::Unknown, format!("unknown suite {name:?}")))?;
            let report = VerifyReport::new(vec![s.run(&Options {
                seed,
                ..Options::default()
            })]);
            *passed_slot = report.passes();
            give_string(json_slot, report.to_json());
            Ok(())
        })())
    })
}
