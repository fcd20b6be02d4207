use std::ffi::{CStr, CString};
use std::ptr;

use aeq_ffi::*;

fn last_error() -> String {
    let p = aeq_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn construct(kind: AeqConstruction, dim: usize) -> *mut AeqPointSet {
    let mut ps = ptr::null_mut();
    assert_eq!(unsafe { aeq_construct(kind, dim, &mut ps) }, AeqStatus::Ok);
    ps
}

#[test]
fn moser_spindle_through_the_abi() {
    unsafe {
        let ps = construct(AeqConstruction::Moser, 0);
        assert_eq!((aeq_point_set_len(ps), aeq_point_set_dim(ps)), (7, 2));

        let mut holds = false;
        let mut witness = [9usize; 3];
        let st = aeq_is_almost_equidistant(ps, ptr::null(), &mut holds, witness.as_mut_ptr());
        assert_eq!(st, AeqStatus::Ok);
        assert!(holds);
        assert_eq!(witness, [0, 0, 0]);

        let mut g = ptr::null_mut();
        assert_eq!(aeq_graph_build(ps, ptr::null(), &mut g), AeqStatus::Ok);
        assert_eq!((aeq_graph_vertex_count(g), aeq_graph_edge_count(g)), (7, 11));
        let mut edges = vec![0usize; 22];
        assert_eq!(aeq_graph_edges(g, edges.as_mut_ptr(), 11), AeqStatus::Ok);
        assert_eq!(&edges[..2], &[0, 1]);
        assert_eq!(aeq_graph_edges(g, edges.as_mut_ptr(), 10), AeqStatus::BufferTooSmall);

        let mut clique = [0usize; 4];
        let mut len = 0;
        assert_eq!(aeq_max_clique(g, 200, clique.as_mut_ptr(), 4, &mut len), AeqStatus::Ok);
        assert_eq!(&clique[..len], &[0, 1, 2]);

        let mut json = ptr::null_mut();
        let mut passed = false;
        let st = aeq_audit_json(ps, ptr::null(), false, &mut json, &mut passed);
        assert_eq!(st, AeqStatus::Ok);
        assert!(passed);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"exact_checks\""));
        aeq_string_free(json);

        aeq_graph_free(g);
        aeq_point_set_free(ps);
    }
}

#[test]
fn point_set_json_roundtrip_and_coords() {
    unsafe {
        let coords = [0.0, 0.0, 1.0, 0.0, 0.5, 0.75f64.sqrt()];
        let mut ps = ptr::null_mut();
        assert_eq!(aeq_point_set_new(2, coords.as_ptr(), 3, &mut ps), AeqStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(aeq_point_set_to_json(ps, &mut json), AeqStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(aeq_point_set_from_json(json, &mut back), AeqStatus::Ok);
        aeq_string_free(json);

        let mut buf = [0.0f64; 6];
        assert_eq!(aeq_point_set_coords(back, buf.as_mut_ptr(), 6), AeqStatus::Ok);
        for (a, b) in buf.iter().zip(coords) {
            assert!((a - b).abs() < 1e-11);
        }
        assert_eq!(
            aeq_point_set_coords(back, buf.as_mut_ptr(), 5),
            AeqStatus::BufferTooSmall
        );
        aeq_point_set_free(back);
        aeq_point_set_free(ps);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut ps = ptr::null_mut();
        assert_eq!(
            aeq_construct(AeqConstruction::Moser, 0, ptr::null_mut()),
            AeqStatus::NullPointer
        );
        assert!(last_error().contains("out"));

        let bad = CString::new("{\"dim\": 2, \"points\": [[0, 0], [1]]}").unwrap();
        assert_eq!(aeq_point_set_from_json(bad.as_ptr(), &mut ps), AeqStatus::Parse);
        assert!(ps.is_null());

        let dup = [0.0, 0.0, 0.0, 0.0];
        assert_eq!(aeq_point_set_new(2, dup.as_ptr(), 2, &mut ps), AeqStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(aeq_graph_build(ps, ptr::null(), &mut g), AeqStatus::CoincidentPoints);
        aeq_point_set_free(ps);

        let mut tol = aeq_tolerance_default();
        assert_eq!(tol.eps_unit, 1e-9);
        tol.eps_unit = -1.0;
        let ps = construct(AeqConstruction::Simplex, 2);
        let mut holds = false;
        let st = aeq_is_almost_equidistant(ps, &tol, &mut holds, ptr::null_mut());
        assert_eq!(st, AeqStatus::InvalidArgument);
        aeq_point_set_free(ps);

        aeq_point_set_free(ptr::null_mut());
        aeq_graph_free(ptr::null_mut());
        aeq_string_free(ptr::null_mut());
    }
}

#[test]
fn non_almost_equidistant_witness() {
    unsafe {
        let coords = [0.0, 0.0, 3.0, 0.0, 0.0, 3.0];
        let mut ps = ptr::null_mut();
        assert_eq!(aeq_point_set_new(2, coords.as_ptr(), 3, &mut ps), AeqStatus::Ok);
        let mut holds = true;
        let mut w = [0usize; 3];
        aeq_is_almost_equidistant(ps, ptr::null(), &mut holds, w.as_mut_ptr());
        assert!(!holds);
        assert_eq!(w, [0, 1, 2]);

        let mut json = ptr::null_mut();
        let mut passed = true;
        let st = aeq_audit_json(ps, ptr::null(), false, &mut json, &mut passed);
        assert_eq!(st, AeqStatus::NotAlmostEquidistant);
        assert!(json.is_null());
        aeq_point_set_free(ps);

        let mut g = ptr::null_mut();
        assert_eq!(aeq_graph_from_edges(3, ptr::null(), 0, &mut g), AeqStatus::Ok);
        aeq_complement_triangle_free(g, &mut holds, w.as_mut_ptr());
        assert!(!holds);
        assert_eq!(w, [0, 1, 2]);
        aeq_graph_free(g);
    }
}

#[test]
fn realize_complete_graphs() {
    unsafe {
        let k4 = [0, 1, 0, 2, 0, 3, 1, 2, 1, 3, 2, 3usize];
        let mut g = ptr::null_mut();
        assert_eq!(aeq_graph_from_edges(4, k4.as_ptr(), 6, &mut g), AeqStatus::Ok);
        let (mut pts, mut stress, mut ok) = (ptr::null_mut(), 0.0, false);
        let st = aeq_realize(g, 3, 20, 0, ptr::null(), &mut pts, &mut stress, &mut ok);
        assert_eq!(st, AeqStatus::Ok);
        assert!(ok && !pts.is_null());
        assert_eq!(aeq_point_set_len(pts), 4);
        aeq_point_set_free(pts);

        let st = aeq_realize(g, 2, 3, 0, ptr::null(), &mut pts, &mut stress, &mut ok);
        assert_eq!(st, AeqStatus::Ok);
        assert!(!ok && pts.is_null());
        assert!(stress > 1e-3);
        aeq_graph_free(g);
    }
}

#[test]
fn bounds_table() {
    let mut b = AeqBounds::default();
    unsafe {
        assert_eq!(aeq_bounds(6, &mut b), AeqStatus::Ok);
        assert_eq!((b.lower, b.has_upper, b.upper), (18, true, 26));
        assert_eq!(aeq_bounds(9, &mut b), AeqStatus::Ok);
        assert!(!b.has_upper);
        assert_eq!(aeq_bounds(0, &mut b), AeqStatus::InvalidArgument);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/aeq.h");
    for name in [
        "aeq_last_error_message",
        "aeq_tolerance_default",
        "aeq_string_free",
        "aeq_point_set_new",
        "aeq_point_set_from_json",
        "aeq_point_set_to_json",
        "aeq_point_set_free",
        "aeq_point_set_len",
        "aeq_point_set_dim",
        "aeq_point_set_coords",
        "aeq_construct",
        "aeq_is_almost_equidistant",
        "aeq_graph_build",
        "aeq_graph_from_edges",
        "aeq_graph_free",
        "aeq_graph_vertex_count",
        "aeq_graph_edge_count",
        "aeq_graph_edges",
        "aeq_complement_triangle_free",
        "aeq_max_clique",
        "aeq_audit_json",
        "aeq_realize",
        "aeq_bounds",
        "typedef struct AeqPointSet AeqPointSet",
        "AEQ_STATUS_CLIQUE_LIMIT = 6",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
