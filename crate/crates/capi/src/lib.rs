//! C ABI for the hibi-toric library. All functions return a status
//! code; results come back through out-pointers. Lattices are opaque
//! handles freed with `hibi_lattice_free`; every returned string is
//! owned by the caller and freed with `hibi_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use hibi_toric::cone::Cone;
use hibi_toric::dlattice::DistributiveLattice;
use hibi_toric::grassmann::{counterexample_lattice, idn};
use hibi_toric::json::lattice_from_str;
use hibi_toric::multiplicity::{
    fixed_point_mult, hook_mult, lattice_hilbert_crosscheck, sqfree_hilbert,
    stanley_reisner_ideal,
};
use hibi_toric::smoothness::{is_smooth_face, singular_locus_idn, Status};

/// Opaque handle to a finite distributive lattice.
pub struct HibiLattice(DistributiveLattice);

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HibiStatus {
    /// Success.
    HibiOk = 0,
    /// A required pointer argument was null.
    HibiNullPointer = 1,
    /// The input could not be parsed or validated.
    HibiInvalidInput = 2,
    /// A size guard or computation error; see `hibi_last_error`.
    HibiComputeError = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn fail(code: HibiStatus, msg: &str) -> HibiStatus {
    set_error(msg);
    code
}

/// Message for the most recent error on this thread. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn hibi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn out_string(s: String, out: *mut *mut c_char) -> HibiStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            HibiStatus::HibiOk
        }
        Err(_) => fail(HibiStatus::HibiComputeError, "result contained a NUL byte"),
    }
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter
/// of this library, or null.
#[no_mangle]
pub unsafe extern "C" fn hibi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a lattice from a JSON spec: either a poset
/// `{"elements": [...], "covers": [[upper, lower], ...]}` or the
/// shortcut `{"type": "idn", "d": D, "n": N}`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_lattice_from_json(
    spec: *const c_char,
    out: *mut *mut HibiLattice,
) -> HibiStatus {
    if spec.is_null() || out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null argument");
    }
    let Ok(text) = CStr::from_ptr(spec).to_str() else {
        return fail(HibiStatus::HibiInvalidInput, "spec is not valid UTF-8");
    };
    match lattice_from_str(text) {
        Ok(l) => {
            *out = Box::into_raw(Box::new(HibiLattice(l)));
            HibiStatus::HibiOk
        }
        Err(e) => fail(HibiStatus::HibiInvalidInput, &e.to_string()),
    }
}

/// Builds the Grassmann lattice I_{d,n}.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_lattice_idn(d: u32, n: u32, out: *mut *mut HibiLattice) -> HibiStatus {
    if out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null out pointer");
    }
    match idn(d, n) {
        Ok(l) => {
            *out = Box::into_raw(Box::new(HibiLattice(l)));
            HibiStatus::HibiOk
        }
        Err(e) => fail(HibiStatus::HibiInvalidInput, &e.to_string()),
    }
}

/// Builds the 12-element interval of I_{3,6} on which the interval
/// smoothness criterion fails.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_lattice_counterexample(out: *mut *mut HibiLattice) -> HibiStatus {
    if out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null out pointer");
    }
    *out = Box::into_raw(Box::new(HibiLattice(counterexample_lattice())));
    HibiStatus::HibiOk
}

/// Frees a lattice handle.
///
/// # Safety
/// `lat` must come from this library, or be null; not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hibi_lattice_free(lat: *mut HibiLattice) {
    if !lat.is_null() {
        drop(Box::from_raw(lat));
    }
}

/// Number of lattice elements.
///
/// # Safety
/// `lat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_lattice_size(lat: *const HibiLattice, out: *mut usize) -> HibiStatus {
    if lat.is_null() || out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null argument");
    }
    *out = (*lat).0.len();
    HibiStatus::HibiOk
}

/// Krull dimension of the Hibi ring (elements of a maximal chain).
///
/// # Safety
/// `lat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_lattice_dim(lat: *const HibiLattice, out: *mut usize) -> HibiStatus {
    if lat.is_null() || out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null argument");
    }
    *out = (*lat).0.dim();
    HibiStatus::HibiOk
}

/// Multiplicity at the torus fixed point (number of maximal chains),
/// returned as a decimal string.
///
/// # Safety
/// `lat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_fixed_point_mult(
    lat: *const HibiLattice,
    out: *mut *mut c_char,
) -> HibiStatus {
    if lat.is_null() || out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null argument");
    }
    out_string(fixed_point_mult(&(*lat).0).to_string(), out)
}

/// Hook-length multiplicity of I_{d,n} as a decimal string.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_hook_mult(d: u32, n: u32, out: *mut *mut c_char) -> HibiStatus {
    if out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null out pointer");
    }
    match hook_mult(d, n) {
        Ok(m) => out_string(m.to_string(), out),
        Err(e) => fail(HibiStatus::HibiInvalidInput, &e.to_string()),
    }
}

/// Smoothness at the distinguished point of the face spanned by the
/// given lattice elements (indices into the element list, ascending
/// label order). Writes 1 for smooth, 0 for singular.
///
/// # Safety
/// `lat`, `d` (length `d_len`), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_face_is_smooth(
    lat: *const HibiLattice,
    d: *const usize,
    d_len: usize,
    out: *mut i32,
) -> HibiStatus {
    if lat.is_null() || out.is_null() || (d.is_null() && d_len > 0) {
        return fail(HibiStatus::HibiNullPointer, "null argument");
    }
    let l = &(*lat).0;
    let mut dset: Vec<usize> = std::slice::from_raw_parts(d, d_len).to_vec();
    dset.sort_unstable();
    dset.dedup();
    if dset.iter().any(|&x| x >= l.len()) {
        return fail(HibiStatus::HibiInvalidInput, "element index out of range");
    }
    if !l.is_embedded_sublattice(&dset) {
        return fail(
            HibiStatus::HibiInvalidInput,
            "subset is not an embedded sublattice",
        );
    }
    let cone = Cone::new(l);
    match is_smooth_face(&cone, &dset) {
        Ok(v) => {
            *out = i32::from(v.status == Status::Smooth);
            HibiStatus::HibiOk
        }
        Err(e) => fail(HibiStatus::HibiComputeError, &e.to_string()),
    }
}

/// Singular locus of I_{d,n} as a JSON report string.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_singular_locus_json(
    d: u32,
    n: u32,
    out: *mut *mut c_char,
) -> HibiStatus {
    if out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null out pointer");
    }
    let locus = match singular_locus_idn(d, n) {
        Ok(l) => l,
        Err(e) => return fail(HibiStatus::HibiInvalidInput, &e.to_string()),
    };
    let windows: Vec<serde_json::Value> = locus
        .windows
        .iter()
        .map(|w| {
            serde_json::json!({
                "i": w.window.i,
                "j": w.window.j,
                "generators": w.w_labels,
                "matches_diamond": w.matches_diamond,
                "face_dim": w.geometry.face_dim,
                "multiplicity": w.multiplicity.to_string(),
            })
        })
        .collect();
    let report = serde_json::json!({
        "schema": 1,
        "d": d,
        "n": n,
        "windows": windows,
        "pure_codim3": locus.pure_codim3,
    });
    out_string(serde_json::to_string(&report).expect("serializes"), out)
}

/// Hilbert data of the square-free degeneration of the lattice's Hibi
/// ring, as a JSON string; includes a three-way crosscheck for
/// lattices of at most 12 elements.
///
/// # Safety
/// `lat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hibi_hilbert_json(
    lat: *const HibiLattice,
    out: *mut *mut c_char,
) -> HibiStatus {
    if lat.is_null() || out.is_null() {
        return fail(HibiStatus::HibiNullPointer, "null argument");
    }
    let l = &(*lat).0;
    let sr = stanley_reisner_ideal(l);
    let h = match sqfree_hilbert(&sr) {
        Ok(h) => h,
        Err(e) => return fail(HibiStatus::HibiComputeError, &e.to_string()),
    };
    let mut report = serde_json::json!({
        "schema": 1,
        "n_vars": sr.n_vars,
        "krull_dim": h.krull_dim,
        "degree": h.degree.to_string(),
        "numerator": h.numerator.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if l.len() <= 12 {
        match lattice_hilbert_crosscheck(l, 3) {
            Ok(r) => report["crosscheck_all_equal"] = serde_json::json!(r.all_equal),
            Err(e) => return fail(HibiStatus::HibiComputeError, &e.to_string()),
        }
    }
    out_string(serde_json::to_string(&report).expect("serializes"), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn error_message_is_set() {
        let mut out: *mut HibiLattice = ptr::null_mut();
        let code = unsafe { hibi_lattice_idn(0, 0, &mut out) };
        assert_eq!(code, HibiStatus::HibiInvalidInput);
        let msg = unsafe { CStr::from_ptr(hibi_last_error()) };
        assert!(!msg.to_bytes().is_empty());
    }
}
