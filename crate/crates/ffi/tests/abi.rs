use std::ffi::{CStr, CString};
use std::ptr;

use swapnet_ffi::*;

unsafe fn from_edges(n: usize, edges: &[(usize, usize)]) -> *mut SwapnetGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    let st = swapnet_graph_from_edges(n, flat.as_ptr(), edges.len(), &mut g);
    assert_eq!(st, SwapnetStatus::Ok);
    g
}

unsafe fn last_error() -> String {
    CStr::from_ptr(swapnet_last_error())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn star_is_equilibrium_for_both_games() {
    unsafe {
        let g = from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let (mut sse, mut local) = (false, false);
        assert_eq!(swapnet_is_sse(g, &mut sse), SwapnetStatus::Ok);
        assert_eq!(
            swapnet_is_local_equilibrium(g, &mut local),
            SwapnetStatus::Ok
        );
        assert!(sse && local);
        let mut phi = 0;
        assert_eq!(swapnet_potential(g, &mut phi), SwapnetStatus::Ok);
        assert_eq!(phi, 10);
        let mut d = 0;
        assert_eq!(swapnet_diameter(g, &mut d), SwapnetStatus::Ok);
        assert_eq!(d, 2);
        swapnet_graph_free(g);
    }
}

#[test]
fn path_swaps_and_deltas() {
    unsafe {
        let g = from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let mut sse = true;
        swapnet_is_sse(g, &mut sse);
        assert!(!sse);

        let mut cd = SwapnetCostDelta {
            kind: SwapnetDeltaKind::PosInfinite,
            value: 99,
        };
        assert_eq!(
            swapnet_swap_cost_delta(g, 0, 1, 2, &mut cd),
            SwapnetStatus::Ok
        );
        assert_eq!(cd.kind, SwapnetDeltaKind::Finite);
        assert_eq!(cd.value, -1);
        assert_eq!(
            swapnet_swap_cost_delta(g, 1, 0, 3, &mut cd),
            SwapnetStatus::Ok
        );
        assert_eq!(cd.kind, SwapnetDeltaKind::PosInfinite);

        let mut pd = 0;
        assert_eq!(swapnet_profit_delta(g, 0, 1, 2, &mut pd), SwapnetStatus::Ok);
        assert_eq!(pd, 1);

        assert_eq!(swapnet_graph_apply_swap(g, 0, 1, 2), SwapnetStatus::Ok);
        let mut has = false;
        swapnet_graph_has_edge(g, 0, 2, &mut has);
        assert!(has);
        let mut deg = 0;
        swapnet_graph_degree(g, 2, &mut deg);
        assert_eq!(deg, 3);
        swapnet_graph_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let g = from_edges(3, &[(0, 1)]);
        assert_eq!(
            swapnet_graph_apply_swap(g, 0, 2, 1),
            SwapnetStatus::InvalidSwap
        );
        assert!(last_error().contains("invalid swap"));
        let mut d = 0;
        assert_eq!(swapnet_diameter(g, &mut d), SwapnetStatus::Disconnected);
        let mut deg = 0;
        assert_eq!(
            swapnet_graph_degree(g, 7, &mut deg),
            SwapnetStatus::VertexOutOfRange
        );
        assert_eq!(swapnet_graph_add_edge(g, 1, 1), SwapnetStatus::InvalidEdge);
        assert_eq!(swapnet_graph_add_edge(g, 1, 0), SwapnetStatus::InvalidEdge);
        assert_eq!(
            swapnet_potential(ptr::null(), &mut 0),
            SwapnetStatus::NullPointer
        );
        assert_eq!(
            swapnet_potential(g, ptr::null_mut()),
            SwapnetStatus::NullPointer
        );
        let mut json = ptr::null_mut();
        assert_eq!(
            swapnet_analyze_json(g, ptr::null(), 0, &mut json),
            SwapnetStatus::Disconnected
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            swapnet_graph_from_edges(2, ptr::null(), 1, &mut out),
            SwapnetStatus::NullPointer
        );
        swapnet_graph_free(g);
        swapnet_graph_free(ptr::null_mut());
    }
}

#[test]
fn parse_and_serialize_round_trip() {
    unsafe {
        let text = CString::new("4 3\n2 3\n1 0\n3 0\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(
            swapnet_graph_parse(text.as_ptr(), &mut g),
            SwapnetStatus::Ok
        );
        assert_eq!(swapnet_graph_n(g), 4);
        assert_eq!(swapnet_graph_edge_count(g), 3);
        let mut s = ptr::null_mut();
        assert_eq!(swapnet_graph_to_edgelist(g, &mut s), SwapnetStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "4 3\n0 1\n0 3\n2 3\n");
        swapnet_string_free(s);

        let copy = swapnet_graph_clone(g);
        swapnet_graph_add_edge(copy, 1, 2);
        assert_eq!(swapnet_graph_edge_count(g), 3);
        assert_eq!(swapnet_graph_edge_count(copy), 4);
        swapnet_graph_free(copy);
        swapnet_graph_free(g);

        let bad = CString::new("3 1\n0 x\n").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(
            swapnet_graph_parse(bad.as_ptr(), &mut g),
            SwapnetStatus::Parse
        );
        assert!(last_error().contains("line 2"));
        assert!(g.is_null());
    }
}

#[test]
fn json_reports() {
    unsafe {
        let g = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let mut s = ptr::null_mut();
        assert_eq!(swapnet_check_sse_json(g, &mut s), SwapnetStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(v["is_equilibrium"], true);
        assert_eq!(v["costs"], serde_json::json!([4, 4, 4, 4]));
        swapnet_string_free(s);

        let ks = [1u32, 2];
        assert_eq!(
            swapnet_analyze_json(g, ks.as_ptr(), ks.len(), &mut s),
            SwapnetStatus::Ok
        );
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(v["sse"], true);
        assert_eq!(v["theorem2"].as_array().unwrap().len(), 2);
        swapnet_string_free(s);
        swapnet_graph_free(g);
    }
}
