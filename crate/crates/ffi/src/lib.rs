//! C ABI over the chhf library.
//!
//! Graphs and triples are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`ChhfStatus`]; on failure the message is available from
//! [`chhf_last_error_message`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chhf::error::Error;
use chhf::generate;
use chhf::graph::Graph;
use chhf::io::{self, Format};
use chhf::metrics::gromov_delta;
use chhf::pipeline::Triple;
use chhf::qm::{is_quasi_median, Geometry};
use chhf::verify::{full_report, VerifyConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChhfStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Precondition = 3,
    CapExceeded = 4,
    /// A full report ran and at least one check failed.
    AxiomFailed = 5,
    Internal = 6,
    Panic = 7,
}

/// Input format for [`chhf_graph_parse`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChhfFormat {
    EdgeList = 0,
    Json = 1,
}

/// A simple undirected graph.
pub struct ChhfGraph {
    inner: Graph,
}

/// A host graph with its factor system and X-graphs.
pub struct ChhfTriple {
    inner: Triple,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ChhfStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => ChhfStatus::Parse,
        Error::Precondition(_) | Error::NotGated { .. } | Error::InconsistentTuple { .. } => ChhfStatus::Precondition,
        Error::CapExceeded { .. } => ChhfStatus::CapExceeded,
        Error::Io(_) | Error::Internal(_) => ChhfStatus::Internal,
    }
}

struct Fail(ChhfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ChhfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, translating errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ChhfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ChhfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("panic: {msg}"));
            ChhfStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(ChhfStatus::Parse, format!("{what} is not UTF-8: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn graph<'a>(g: *const ChhfGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("graph"))
}

fn boxed_graph(g: Graph) -> *mut ChhfGraph {
    Box::into_raw(Box::new(ChhfGraph { inner: g }))
}

/// Message of the last failed call on this thread, or null if it succeeded.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn chhf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph from NUL-terminated text.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out_graph` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_parse(
    text: *const c_char,
    format: ChhfFormat,
    out_graph: *mut *mut ChhfGraph,
) -> ChhfStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        let slot = out(out_graph, "out_graph")?;
        let format = match format {
            ChhfFormat::EdgeList => Format::EdgeList,
            ChhfFormat::Json => Format::Json,
        };
        *slot = boxed_graph(io::parse(s, format)?);
        Ok(())
    })
}

/// Builds the `dim`-dimensional hypercube.
///
/// # Safety
/// `out_graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_hypercube(dim: usize, out_graph: *mut *mut ChhfGraph) -> ChhfStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        *slot = boxed_graph(generate::hypercube(dim)?);
        Ok(())
    })
}

/// Builds the Hamming graph `H(dim, q)`, the product of `dim` copies of `K_q`.
///
/// # Safety
/// `out_graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_hamming(q: usize, dim: usize, out_graph: *mut *mut ChhfGraph) -> ChhfStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        *slot = boxed_graph(generate::hamming(q, dim)?);
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_free(g: *mut ChhfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_vertex_count(g: *const ChhfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// Number of edges, or 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_edge_count(g: *const ChhfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Writes whether the graph is quasi-median.
///
/// # Safety
/// `g` must be a live graph handle and `out_flag` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_is_quasi_median(g: *const ChhfGraph, out_flag: *mut bool) -> ChhfStatus {
    guard(|| {
        let g = graph(g)?;
        *out(out_flag, "out_flag")? = is_quasi_median(g).is_quasi_median;
        Ok(())
    })
}

/// Writes the number of hyperplanes. The graph must be quasi-median.
///
/// # Safety
/// `g` must be a live graph handle and `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_hyperplane_count(g: *const ChhfGraph, out_count: *mut usize) -> ChhfStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_count, "out_count")?;
        if !is_quasi_median(g).is_quasi_median {
            return Err(Fail(ChhfStatus::Precondition, "input is not quasi-median".into()));
        }
        *slot = Geometry::new(g.clone()).hyperplane_count();
        Ok(())
    })
}

/// Writes twice the four-point Gromov hyperbolicity constant.
///
/// # Safety
/// `g` must be a live graph handle and `out_doubled` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_graph_gromov_delta_doubled(g: *const ChhfGraph, out_doubled: *mut u64) -> ChhfStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_doubled, "out_doubled")?;
        *slot = gromov_delta(g)?.delta.doubled();
        Ok(())
    })
}

/// Builds the triple of a quasi-median graph: its crossing graph, the
/// minimal factor system and the prism X-graphs. `cap` bounds the number of
/// domains (0 selects the library default).
///
/// # Safety
/// `g` must be a live graph handle and `out_triple` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_triple_quasi_median(
    g: *const ChhfGraph,
    cap: usize,
    out_triple: *mut *mut ChhfTriple,
) -> ChhfStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_triple, "out_triple")?;
        let t = Triple::quasi_median(g.clone(), cap_or_default(cap))?;
        *slot = Box::into_raw(Box::new(ChhfTriple { inner: t }));
        Ok(())
    })
}

/// Builds the triple of an arbitrary graph with W given by intersecting
/// maximal cliques. `cap` bounds the number of domains (0 selects the
/// library default).
///
/// # Safety
/// `g` must be a live graph handle and `out_triple` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_triple_generic(
    g: *const ChhfGraph,
    cap: usize,
    out_triple: *mut *mut ChhfTriple,
) -> ChhfStatus {
    guard(|| {
        let g = graph(g)?;
        let slot = out(out_triple, "out_triple")?;
        let t = Triple::generic(g.clone(), None, cap_or_default(cap))?;
        *slot = Box::into_raw(Box::new(ChhfTriple { inner: t }));
        Ok(())
    })
}

fn cap_or_default(cap: usize) -> usize {
    if cap == 0 { chhf::factor::DEFAULT_CLOSURE_CAP } else { cap }
}

/// Releases a triple. Null is ignored.
///
/// # Safety
/// `t` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chhf_triple_free(t: *mut ChhfTriple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of domains in the factor system, or 0 for null.
///
/// # Safety
/// `t` must be null or a live triple handle.
#[no_mangle]
pub unsafe extern "C" fn chhf_triple_domain_count(t: *const ChhfTriple) -> usize {
    t.as_ref().map_or(0, |t| t.inner.fs.len())
}

/// Runs every check on the triple and writes the report as a JSON string,
/// to be released with [`chhf_string_free`]. Returns `AxiomFailed` when the
/// report was produced but some check failed; the string is set either way.
///
/// # Safety
/// `t` must be a live triple handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chhf_full_report_json(
    t: *const ChhfTriple,
    seed: u64,
    out_json: *mut *mut c_char,
) -> ChhfStatus {
    let mut failed = false;
    let status = guard(|| {
        let t = t.as_ref().map(|t| &t.inner).ok_or_else(|| null("triple"))?;
        let slot = out(out_json, "out_json")?;
        let config = VerifyConfig { seed, ..VerifyConfig::default() };
        let report = full_report(t, &config, "ffi")?;
        let json = serde_json::to_string_pretty(&report).map_err(Error::from)?;
        failed = !report.verdict.pass;
        *slot = CString::new(json).map_err(|e| Fail(ChhfStatus::Internal, e.to_string()))?.into_raw();
        Ok(())
    });
    if status == ChhfStatus::Ok && failed {
        set_error("at least one check failed; see the verdict in the report".into());
        return ChhfStatus::AxiomFailed;
    }
    status
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chhf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
