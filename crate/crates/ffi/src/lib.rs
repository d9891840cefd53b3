//! C ABI over `swapnet`.
//!
//! Graphs are opaque `SwapnetGraph` handles owned by the caller and released
//! with `swapnet_graph_free`. Every fallible call returns a `SwapnetStatus`
//! and writes its result through an out-pointer; the message for the most
//! recent failure on the calling thread is available from
//! `swapnet_last_error`. Strings returned through `char **` out-pointers are
//! heap-allocated by the library and must be released with
//! `swapnet_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use swapnet::io::{format_edgelist, parse_edgelist};
use swapnet::local::{is_local_equilibrium, potential, profit, profit_delta};
use swapnet::sse::{check_sse, swap_cost_delta};
use swapnet::structure::analyze;
use swapnet::{CostDelta, Error, Extended, Graph, SwapMove};

/// Opaque graph handle.
pub struct SwapnetGraph(Graph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapnetStatus {
    Ok = 0,
    NullPointer = 1,
    VertexOutOfRange = 2,
    InvalidEdge = 3,
    InvalidSwap = 4,
    Disconnected = 5,
    Parse = 6,
    InvalidArgument = 7,
    Io = 8,
    Panic = 9,
}

/// Sign class of a cost change; `value` is meaningful only for `FINITE`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapnetDeltaKind {
    NegInfinite = -1,
    Finite = 0,
    PosInfinite = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapnetCostDelta {
    pub kind: SwapnetDeltaKind,
    pub value: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SwapnetStatus {
    match e {
        Error::VertexOutOfRange { .. } => SwapnetStatus::VertexOutOfRange,
        Error::InvalidEdge(..) => SwapnetStatus::InvalidEdge,
        Error::InvalidSwap(..) => SwapnetStatus::InvalidSwap,
        Error::Disconnected => SwapnetStatus::Disconnected,
        Error::Parse { .. } => SwapnetStatus::Parse,
        Error::Io(_) => SwapnetStatus::Io,
        Error::MinDegreeTooLow(_) | Error::MixedConfig { .. } | Error::BadSpec(_) => {
            SwapnetStatus::InvalidArgument
        }
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
    Arg(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, records any failure and converts it to a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SwapnetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwapnetStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            SwapnetStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_last_error(msg);
            SwapnetStatus::InvalidArgument
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SwapnetStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SwapnetGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|h| &h.0).ok_or(Fail::Null("graph"))
}

unsafe fn graph_mut<'a>(g: *mut SwapnetGraph) -> Result<&'a mut Graph, Fail> {
    g.as_mut().map(|h| &mut h.0).ok_or(Fail::Null("graph"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("output"));
    }
    out.write(value);
    Ok(())
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), Fail> {
    if v < g.n() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        }
        .into())
    }
}

fn into_handle(g: Graph) -> *mut SwapnetGraph {
    Box::into_raw(Box::new(SwapnetGraph(g)))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn swapnet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Empty graph on `n` vertices. Never NULL.
#[no_mangle]
pub extern "C" fn swapnet_graph_new(n: usize) -> *mut SwapnetGraph {
    into_handle(Graph::new(n))
}

/// Builds a graph from `m` edges stored as `2 * m` vertex ids
/// `u0 v0 u1 v1 ...`. `edges` may be NULL when `m == 0`.
///
/// # Safety
/// `edges` must point to `2 * m` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut SwapnetGraph,
) -> SwapnetStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Fail::Null("edges"));
        } else {
            slice::from_raw_parts(edges, 2 * m)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        write(out, into_handle(g))
    })
}

/// Parses the edge-list text format (`n m` header, then `m` lines `u v`).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_parse(
    text: *const c_char,
    out: *mut *mut SwapnetGraph,
) -> SwapnetStatus {
    guard(|| {
        if text.is_null() {
            return Err(Fail::Null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Fail::Arg(format!("text is not UTF-8: {e}")))?;
        write(out, into_handle(parse_edgelist(s)?))
    })
}

/// Independent copy of `g`, or NULL when `g` is NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_clone(g: *const SwapnetGraph) -> *mut SwapnetGraph {
    match g.as_ref() {
        Some(h) => into_handle(h.0.clone()),
        None => ptr::null_mut(),
    }
}

/// Releases a handle. NULL is a no-op.
///
/// # Safety
/// `g` must be NULL or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_free(g: *mut SwapnetGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_n(g: *const SwapnetGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.n())
}

/// Edge count; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_edge_count(g: *const SwapnetGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_degree(
    g: *const SwapnetGraph,
    v: usize,
    out: *mut usize,
) -> SwapnetStatus {
    guard(|| {
        let g = graph_ref(g)?;
        check_vertex(g, v)?;
        write(out, g.degree(v))
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_has_edge(
    g: *const SwapnetGraph,
    u: usize,
    v: usize,
    out: *mut bool,
) -> SwapnetStatus {
    guard(|| {
        let g = graph_ref(g)?;
        check_vertex(g, u)?;
        check_vertex(g, v)?;
        write(out, g.has_edge(u, v))
    })
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_add_edge(
    g: *mut SwapnetGraph,
    u: usize,
    v: usize,
) -> SwapnetStatus {
    guard(|| Ok(graph_mut(g)?.add_edge(u, v)?))
}

/// Applies the swap in place: `player` drops its edge to `removed` and
/// connects to `added`. The graph is unchanged on failure.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_apply_swap(
    g: *mut SwapnetGraph,
    player: usize,
    removed: usize,
    added: usize,
) -> SwapnetStatus {
    guard(|| Ok(graph_mut(g)?.swap_in_place(&SwapMove::new(player, removed, added))?))
}

/// Edge-list text of `g` with sorted edges.
///
/// # Safety
/// `g` must be a live handle and `out` writable. Free the result with
/// `swapnet_string_free`.
#[no_mangle]
pub unsafe extern "C" fn swapnet_graph_to_edgelist(
    g: *const SwapnetGraph,
    out: *mut *mut c_char,
) -> SwapnetStatus {
    guard(|| write(out, to_c_string(format_edgelist(graph_ref(g)?))))
}

/// Diameter; `SWAPNET_STATUS_DISCONNECTED` when some pair is unreachable.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_diameter(g: *const SwapnetGraph, out: *mut u64) -> SwapnetStatus {
    guard(|| match swapnet::graph::diameter(graph_ref(g)?) {
        Extended::Finite(d) => write(out, d),
        Extended::Infinite => Err(Error::Disconnected.into()),
    })
}

/// Whether no vertex has a strictly cost-lowering swap.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_is_sse(g: *const SwapnetGraph, out: *mut bool) -> SwapnetStatus {
    guard(|| write(out, check_sse(graph_ref(g)?).is_equilibrium))
}

/// Change in `player`'s sum of distances caused by the swap.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_swap_cost_delta(
    g: *const SwapnetGraph,
    player: usize,
    removed: usize,
    added: usize,
    out: *mut SwapnetCostDelta,
) -> SwapnetStatus {
    guard(|| {
        let d = swap_cost_delta(graph_ref(g)?, &SwapMove::new(player, removed, added))?;
        let d = match d {
            CostDelta::NegInfinite => SwapnetCostDelta {
                kind: SwapnetDeltaKind::NegInfinite,
                value: 0,
            },
            CostDelta::Finite(value) => SwapnetCostDelta {
                kind: SwapnetDeltaKind::Finite,
                value,
            },
            CostDelta::PosInfinite => SwapnetCostDelta {
                kind: SwapnetDeltaKind::PosInfinite,
                value: 0,
            },
        };
        write(out, d)
    })
}

/// Whether no vertex has a swap that strictly raises its neighbor-degree sum.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_is_local_equilibrium(
    g: *const SwapnetGraph,
    out: *mut bool,
) -> SwapnetStatus {
    guard(|| write(out, is_local_equilibrium(graph_ref(g)?)))
}

/// Half the sum of squared degrees.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_potential(g: *const SwapnetGraph, out: *mut u64) -> SwapnetStatus {
    guard(|| write(out, potential(graph_ref(g)?)))
}

/// Sum of the degrees of `v`'s neighbors.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_profit(
    g: *const SwapnetGraph,
    v: usize,
    out: *mut u64,
) -> SwapnetStatus {
    guard(|| {
        let g = graph_ref(g)?;
        check_vertex(g, v)?;
        write(out, profit(g, v))
    })
}

/// Change in `player`'s profit caused by the swap.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn swapnet_profit_delta(
    g: *const SwapnetGraph,
    player: usize,
    removed: usize,
    added: usize,
    out: *mut i64,
) -> SwapnetStatus {
    guard(|| {
        let d = profit_delta(graph_ref(g)?, &SwapMove::new(player, removed, added))?;
        write(out, d)
    })
}

/// Equilibrium report as JSON: `is_equilibrium`, `witness`, `costs`.
///
/// # Safety
/// `g` must be a live handle and `out` writable. Free the result with
/// `swapnet_string_free`.
#[no_mangle]
pub unsafe extern "C" fn swapnet_check_sse_json(
    g: *const SwapnetGraph,
    out: *mut *mut c_char,
) -> SwapnetStatus {
    guard(|| {
        let r = check_sse(graph_ref(g)?);
        write(
            out,
            to_c_string(serde_json::to_string(&r).expect("serializes")),
        )
    })
}

/// Structural analysis report as JSON for the vicinity radii `ks[0..k_len]`.
/// `ks` may be NULL when `k_len == 0`.
///
/// # Safety
/// `g` must be a live handle, `ks` must point to `k_len` values and `out`
/// must be writable. Free the result with `swapnet_string_free`.
#[no_mangle]
pub unsafe extern "C" fn swapnet_analyze_json(
    g: *const SwapnetGraph,
    ks: *const u32,
    k_len: usize,
    out: *mut *mut c_char,
) -> SwapnetStatus {
    guard(|| {
        let ks: &[u32] = if k_len == 0 {
            &[]
        } else if ks.is_null() {
            return Err(Fail::Null("ks"));
        } else {
            slice::from_raw_parts(ks, k_len)
        };
        let r = analyze(graph_ref(g)?, ks)?;
        write(
            out,
            to_c_string(serde_json::to_string(&r).expect("serializes")),
        )
    })
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn swapnet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
