//! C ABI over `grassmann_lab`.
//!
//! Every fallible function returns a [`GlStatus`] and writes its result
//! through an out pointer. On failure the message is available from
//! [`gl_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`gl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grassmann_lab::config::Bounds;
use grassmann_lab::coreness::{core_test, omega_exact, Verdict};
use grassmann_lab::field::field_of_order;
use grassmann_lab::graph::build_graph;
use grassmann_lab::lemmas::verify_clique_lemmas;
use grassmann_lab::{Error, GrassmannGraph};

/// Status codes. The numbering matches the CLI exit codes for 0 to 3.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    /// A verification ran and found a violation.
    CheckFailed = 1,
    /// A size or search budget was exceeded.
    ResourceBound = 2,
    InvalidInput = 3,
    NullPointer = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlVerdict {
    Core = 0,
    NotCore = 1,
    Undetermined = 2,
}

/// Opaque Grassmann graph handle.
pub struct GlGraph {
    graph: GrassmannGraph,
    bounds: Bounds,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> GlStatus {
    if e.is_resource_bound() {
        GlStatus::ResourceBound
    } else if matches!(e, Error::Invariant(_)) {
        GlStatus::CheckFailed
    } else {
        GlStatus::InvalidInput
    }
}

/// Runs `f`, recording errors and catching panics.
fn guard(f: impl FnOnce() -> Result<(), GlStatus>) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GlStatus::Internal
        }
    }
}

fn lib<T>(r: grassmann_lab::Result<T>) -> Result<T, GlStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn nonnull<T>(p: *const T, what: &str) -> Result<(), GlStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(GlStatus::NullPointer);
    }
    Ok(())
}

unsafe fn graph_ref<'a>(g: *const GlGraph) -> Result<&'a GlGraph, GlStatus> {
    nonnull(g, "graph")?;
    Ok(&*g)
}

fn vertex_in_range(g: &GlGraph, v: usize) -> Result<(), GlStatus> {
    if v >= g.graph.vertex_count() {
        set_error(format!("vertex {v} out of range (graph has {})", g.graph.vertex_count()));
        return Err(GlStatus::InvalidInput);
    }
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, GlStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_error("string contains a NUL byte");
        GlStatus::Internal
    })
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds J_q(n, m) with default bounds.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_build(q: u64, n: usize, m: usize, out: *mut *mut GlGraph) -> GlStatus {
    guard(|| {
        nonnull(out, "out")?;
        *out = ptr::null_mut();
        let bounds = Bounds::default();
        let field = lib(field_of_order(q))?;
        let graph = lib(build_graph(&field, n, m, &bounds))?;
        *out = Box::into_raw(Box::new(GlGraph { graph, bounds }));
        Ok(())
    })
}

/// Frees a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from [`gl_graph_build`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_free(g: *mut GlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_vertex_count(g: *const GlGraph, out: *mut usize) -> GlStatus {
    guard(|| {
        let g = graph_ref(g)?;
        nonnull(out, "out")?;
        *out = g.graph.vertex_count();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_is_adjacent(g: *const GlGraph, x: usize, y: usize, out: *mut bool) -> GlStatus {
    guard(|| {
        let g = graph_ref(g)?;
        nonnull(out, "out")?;
        vertex_in_range(g, x)?;
        vertex_in_range(g, y)?;
        *out = g.graph.adjacent(x, y);
        Ok(())
    })
}

/// Graph distance, m - dim(X ∩ Y).
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_distance(g: *const GlGraph, x: usize, y: usize, out: *mut usize) -> GlStatus {
    guard(|| {
        let g = graph_ref(g)?;
        nonnull(out, "out")?;
        vertex_in_range(g, x)?;
        vertex_in_range(g, y)?;
        *out = lib(g.graph.distance(x, y))?;
        Ok(())
    })
}

/// Clique number by branch and bound.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_omega(g: *const GlGraph, out: *mut usize) -> GlStatus {
    guard(|| {
        let g = graph_ref(g)?;
        nonnull(out, "out")?;
        *out = lib(omega_exact(&g.graph, &g.bounds))?.0;
        Ok(())
    })
}

/// Checks the star/top intersection lemmas. `all_passed` receives the
/// outcome; the status is `CHECK_FAILED` when a counterexample exists.
///
/// # Safety
/// `g` must be a live handle and `all_passed` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_graph_verify_lemmas(g: *const GlGraph, all_passed: *mut bool) -> GlStatus {
    guard(|| {
        let g = graph_ref(g)?;
        nonnull(all_passed, "all_passed")?;
        let r = lib(verify_clique_lemmas(&g.graph, &g.bounds))?;
        *all_passed = r.all_passed();
        if !r.all_passed() {
            set_error("clique lemma counterexample found");
            return Err(GlStatus::CheckFailed);
        }
        Ok(())
    })
}

/// Decides whether J_q(n, m) is a core. `json_out` may be NULL; otherwise
/// it receives the full report.
///
/// # Safety
/// `verdict` must be valid for writes; `json_out` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_core_test(
    n: u32,
    m: u32,
    q: u64,
    verdict: *mut GlVerdict,
    json_out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        nonnull(verdict, "verdict")?;
        if !json_out.is_null() {
            *json_out = ptr::null_mut();
        }
        let r = lib(core_test(n, m, q))?;
        *verdict = match r.verdict {
            Verdict::Core => GlVerdict::Core,
            Verdict::NotCore => GlVerdict::NotCore,
            Verdict::Undetermined => GlVerdict::Undetermined,
        };
        if !json_out.is_null() {
            *json_out = to_c_string(serde_json::to_string(&r).expect("serializes"))?;
        }
        Ok(())
    })
}

/// Gaussian binomial [n, m] as JSON: cyclotomic factorization, polynomial,
/// and the h(q) analysis when 4 <= 2m <= n. `at` = 0 skips evaluation,
/// `q_max` = 0 skips the scan.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gl_qbinom_json(n: u32, m: u32, at: u64, q_max: u64, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        nonnull(out, "out")?;
        *out = ptr::null_mut();
        let nz = |x: u64| (x != 0).then_some(x);
        let v = lib(grassmann_lab::cli::qbinom_value(n, m, nz(at), nz(q_max)))?;
        *out = to_c_string(v.to_string())?;
        Ok(())
    })
}

/// Borrowed view used by the tests to read the last error.
#[doc(hidden)]
pub fn last_error() -> Option<String> {
    let p = gl_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::NotPrimePower(6)), GlStatus::InvalidInput);
        assert_eq!(status_of(&Error::Invariant("x".into())), GlStatus::CheckFailed);
        assert_eq!(status_of(&Error::SearchBudgetExhausted { what: "omega", budget: 1 }), GlStatus::ResourceBound);
    }

    #[test]
    fn panics_become_internal() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, GlStatus::Internal);
        assert!(last_error().unwrap().contains("boom"));
    }
}
