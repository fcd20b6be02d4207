//! C ABI over `aeq-core`.
//!
//! Objects cross the boundary as opaque handles (`AeqPointSet`, `AeqGraph`)
//! that the caller releases with the matching `*_free` function. Every fallible
//! call returns an [`AeqStatus`]; on failure the message is available from
//! [`aeq_last_error_message`] on the same thread. Strings handed out by the
//! library are released with [`aeq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use aeq_core::audit::{audit, AuditOptions};
use aeq_core::bounds::{bounds_for_dimension, BoundsTable};
use aeq_core::clique::{find_clique, CliqueMode};
use aeq_core::constructions::{double_simplex, generalized_spindle, moser_spindle, unit_simplex_points};
use aeq_core::error::AeqError;
use aeq_core::geometry::{
    build_unit_distance_graph, complement_triangle_free, is_almost_equidistant, PointSet, TolerancePolicy,
    UnitDistanceGraph, Verdict,
};
use aeq_core::io::{parse_point_set, point_set_json, to_stable_json};
use aeq_core::realize::{realize_graph, RealizeConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AeqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    CoincidentPoints = 4,
    NotAlmostEquidistant = 5,
    CliqueLimit = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AeqConstruction {
    /// `dim + 1` points pairwise at unit distance.
    Simplex = 0,
    DoubleSimplex = 1,
    Spindle = 2,
    /// Ignores `dim`.
    Moser = 3,
}

/// Mirrors the core tolerance policy. Pass NULL wherever a tolerance is taken
/// to use the defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AeqTolerance {
    pub eps_unit: f64,
    pub eps_coincide: f64,
    pub eps_rank: f64,
    pub eps_residual: f64,
}

impl From<TolerancePolicy> for AeqTolerance {
    fn from(t: TolerancePolicy) -> Self {
        AeqTolerance {
            eps_unit: t.eps_unit,
            eps_coincide: t.eps_coincide,
            eps_rank: t.eps_rank,
            eps_residual: t.eps_residual,
        }
    }
}

impl From<AeqTolerance> for TolerancePolicy {
    fn from(t: AeqTolerance) -> Self {
        TolerancePolicy {
            eps_unit: t.eps_unit,
            eps_coincide: t.eps_coincide,
            eps_rank: t.eps_rank,
            eps_residual: t.eps_residual,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AeqBounds {
    pub d: usize,
    pub lower: usize,
    pub has_upper: bool,
    pub upper: usize,
    pub has_ramsey_upper: bool,
    pub ramsey_upper: usize,
}

/// Opaque point set handle.
pub struct AeqPointSet(PointSet);

/// Opaque graph handle.
pub struct AeqGraph(UnitDistanceGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &AeqError) -> AeqStatus {
    match e {
        AeqError::Json(_) | AeqError::Format(_) => AeqStatus::Parse,
        AeqError::CoincidentPoints(..) => AeqStatus::CoincidentPoints,
        AeqError::NotAlmostEquidistant(..) => AeqStatus::NotAlmostEquidistant,
        AeqError::CliqueLimit { .. } => AeqStatus::CliqueLimit,
        AeqError::Io(_) | AeqError::Construction(_) => AeqStatus::Internal,
        _ => AeqStatus::InvalidArgument,
    }
}

fn fail(status: AeqStatus, msg: impl Into<String>) -> AeqStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), AeqStatus>) -> AeqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AeqStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(AeqStatus::Internal, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, AeqStatus>;
}

impl<T> OrStatus<T> for aeq_core::Result<T> {
    fn or_status(self) -> Result<T, AeqStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), AeqStatus> {
    if p.is_null() {
        Err(fail(AeqStatus::NullPointer, format!("{name} is NULL")))
    } else {
        Ok(())
    }
}

unsafe fn tolerance(tol: *const AeqTolerance) -> TolerancePolicy {
    if tol.is_null() {
        TolerancePolicy::default()
    } else {
        (*tol).into()
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, AeqStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(AeqStatus::Internal, "string contains a nul byte"))
}

unsafe fn write_verdict(v: Verdict, out_holds: *mut bool, out_witness: *mut usize) {
    *out_holds = v.holds();
    if !out_witness.is_null() {
        let w = v.witness().unwrap_or([0; 3]);
        ptr::copy_nonoverlapping(w.as_ptr(), out_witness, 3);
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn aeq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn aeq_tolerance_default() -> AeqTolerance {
    TolerancePolicy::default().into()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn aeq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a point set from `n_points * dim` row-major coordinates.
///
/// # Safety
/// `coords` must point to `n_points * dim` readable doubles (may be NULL when
/// `n_points` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_new(
    dim: usize,
    coords: *const f64,
    n_points: usize,
    out: *mut *mut AeqPointSet,
) -> AeqStatus {
    guard(|| {
        non_null(out, "out")?;
        if n_points > 0 {
            non_null(coords, "coords")?;
        }
        let flat = if n_points == 0 || dim == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(coords, n_points * dim)
        };
        let pts = if dim == 0 {
            vec![]
        } else {
            flat.chunks(dim).map(<[f64]>::to_vec).collect()
        };
        let ps = PointSet::new(dim, pts).or_status()?;
        *out = Box::into_raw(Box::new(AeqPointSet(ps)));
        Ok(())
    })
}

/// Parses a `{"dim": .., "points": [[..], ..]}` document.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_from_json(json: *const c_char, out: *mut *mut AeqPointSet) -> AeqStatus {
    guard(|| {
        non_null(json, "json")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| fail(AeqStatus::Parse, "json is not UTF-8"))?;
        let ps = parse_point_set(text).or_status()?;
        *out = Box::into_raw(Box::new(AeqPointSet(ps)));
        Ok(())
    })
}

/// # Safety
/// `ps` must be a live handle; `out` must be writable. Free the result with
/// [`aeq_string_free`].
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_to_json(ps: *const AeqPointSet, out: *mut *mut c_char) -> AeqStatus {
    guard(|| {
        non_null(ps, "ps")?;
        non_null(out, "out")?;
        *out = into_c_string(point_set_json(&(*ps).0).or_status()?)?;
        Ok(())
    })
}

/// # Safety
/// `ps` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_free(ps: *mut AeqPointSet) {
    if !ps.is_null() {
        drop(Box::from_raw(ps));
    }
}

/// # Safety
/// `ps` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_len(ps: *const AeqPointSet) -> usize {
    ps.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `ps` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_dim(ps: *const AeqPointSet) -> usize {
    ps.as_ref().map_or(0, |p| p.0.dim())
}

/// Copies coordinates row-major into `buf` (capacity `cap` doubles).
///
/// # Safety
/// `ps` must be a live handle; `buf` must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn aeq_point_set_coords(ps: *const AeqPointSet, buf: *mut f64, cap: usize) -> AeqStatus {
    guard(|| {
        non_null(ps, "ps")?;
        let p = &(*ps).0;
        let need = p.len() * p.dim();
        if cap < need {
            return Err(fail(
                AeqStatus::BufferTooSmall,
                format!("need {need} doubles, buffer holds {cap}"),
            ));
        }
        if need > 0 {
            non_null(buf, "buf")?;
        }
        for (i, pt) in p.points().iter().enumerate() {
            ptr::copy_nonoverlapping(pt.as_ptr(), buf.add(i * p.dim()), p.dim());
        }
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_construct(kind: AeqConstruction, dim: usize, out: *mut *mut AeqPointSet) -> AeqStatus {
    guard(|| {
        non_null(out, "out")?;
        let ps = match kind {
            AeqConstruction::Simplex => unit_simplex_points(dim + 1, dim),
            AeqConstruction::DoubleSimplex => double_simplex(dim),
            AeqConstruction::Spindle => generalized_spindle(dim),
            AeqConstruction::Moser => Ok(moser_spindle()),
        }
        .or_status()?;
        *out = Box::into_raw(Box::new(AeqPointSet(ps)));
        Ok(())
    })
}

/// Writes whether every three points contain a unit pair; when not, the
/// smallest offending triple goes to `out_witness` (3 entries, may be NULL).
///
/// # Safety
/// `ps` must be a live handle; `tol` NULL or valid; `out_holds` writable;
/// `out_witness` NULL or writable for 3 entries.
#[no_mangle]
pub unsafe extern "C" fn aeq_is_almost_equidistant(
    ps: *const AeqPointSet,
    tol: *const AeqTolerance,
    out_holds: *mut bool,
    out_witness: *mut usize,
) -> AeqStatus {
    guard(|| {
        non_null(ps, "ps")?;
        non_null(out_holds, "out_holds")?;
        let tol = tolerance(tol);
        tol.validate().or_status()?;
        write_verdict(is_almost_equidistant(&(*ps).0, &tol), out_holds, out_witness);
        Ok(())
    })
}

/// # Safety
/// `ps` must be a live handle; `tol` NULL or valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_graph_build(
    ps: *const AeqPointSet,
    tol: *const AeqTolerance,
    out: *mut *mut AeqGraph,
) -> AeqStatus {
    guard(|| {
        non_null(ps, "ps")?;
        non_null(out, "out")?;
        let g = build_unit_distance_graph(&(*ps).0, &tolerance(tol)).or_status()?;
        *out = Box::into_raw(Box::new(AeqGraph(g)));
        Ok(())
    })
}

/// Graph on `n` vertices from `n_edges` index pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must hold `2 * n_edges` entries (may be NULL when `n_edges` is 0);
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_graph_from_edges(
    n: usize,
    edges: *const usize,
    n_edges: usize,
    out: *mut *mut AeqGraph,
) -> AeqStatus {
    guard(|| {
        non_null(out, "out")?;
        let flat = if n_edges == 0 {
            &[][..]
        } else {
            non_null(edges, "edges")?;
            std::slice::from_raw_parts(edges, 2 * n_edges)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|e| (e[0], e[1])).collect();
        let g = UnitDistanceGraph::from_edges(n, &pairs).or_status()?;
        *out = Box::into_raw(Box::new(AeqGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn aeq_graph_free(g: *mut AeqGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aeq_graph_vertex_count(g: *const AeqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aeq_graph_edge_count(g: *const AeqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Copies sorted edges as flat `(i, j)` pairs, `i < j`, into `buf`
/// (capacity `cap_pairs` pairs).
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `2 * cap_pairs` entries.
#[no_mangle]
pub unsafe extern "C" fn aeq_graph_edges(g: *const AeqGraph, buf: *mut usize, cap_pairs: usize) -> AeqStatus {
    guard(|| {
        non_null(g, "g")?;
        let edges = (*g).0.edges();
        if cap_pairs < edges.len() {
            return Err(fail(
                AeqStatus::BufferTooSmall,
                format!("need {} pairs, buffer holds {cap_pairs}", edges.len()),
            ));
        }
        if !edges.is_empty() {
            non_null(buf, "buf")?;
        }
        for (k, &(a, b)) in edges.iter().enumerate() {
            *buf.add(2 * k) = a;
            *buf.add(2 * k + 1) = b;
        }
        Ok(())
    })
}

/// # Safety
/// Same contract as [`aeq_is_almost_equidistant`], with a graph handle.
#[no_mangle]
pub unsafe extern "C" fn aeq_complement_triangle_free(
    g: *const AeqGraph,
    out_holds: *mut bool,
    out_witness: *mut usize,
) -> AeqStatus {
    guard(|| {
        non_null(g, "g")?;
        non_null(out_holds, "out_holds")?;
        write_verdict(complement_triangle_free(&(*g).0), out_holds, out_witness);
        Ok(())
    })
}

/// Lexicographically smallest maximum clique (exact search up to `limit`
/// vertices). Writes its size to `out_len` and, when it fits, the vertices to
/// `buf`; returns `AEQ_STATUS_BUFFER_TOO_SMALL` otherwise.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `cap` entries; `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_max_clique(
    g: *const AeqGraph,
    limit: usize,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> AeqStatus {
    guard(|| {
        non_null(g, "g")?;
        non_null(out_len, "out_len")?;
        let c = find_clique(&(*g).0, CliqueMode::Exact { limit }).or_status()?.vertices;
        *out_len = c.len();
        if cap < c.len() {
            return Err(fail(
                AeqStatus::BufferTooSmall,
                format!("clique has {} vertices", c.len()),
            ));
        }
        if !c.is_empty() {
            non_null(buf, "buf")?;
            ptr::copy_nonoverlapping(c.as_ptr(), buf, c.len());
        }
        Ok(())
    })
}

/// Runs the bound audit and returns the report as JSON in `out_json`.
/// `out_all_passed` receives whether every unconditional exact check passed.
///
/// # Safety
/// `ps` must be a live handle; `tol` NULL or valid; outputs writable. Free
/// `*out_json` with [`aeq_string_free`].
#[no_mangle]
pub unsafe extern "C" fn aeq_audit_json(
    ps: *const AeqPointSet,
    tol: *const AeqTolerance,
    heuristic_clique: bool,
    out_json: *mut *mut c_char,
    out_all_passed: *mut bool,
) -> AeqStatus {
    guard(|| {
        non_null(ps, "ps")?;
        non_null(out_json, "out_json")?;
        non_null(out_all_passed, "out_all_passed")?;
        let opts = AuditOptions {
            clique_mode: if heuristic_clique {
                CliqueMode::Heuristic
            } else {
                CliqueMode::default()
            },
        };
        let report = audit(&(*ps).0, &tolerance(tol), &opts).or_status()?;
        *out_all_passed = report.all_passed();
        *out_json = into_c_string(to_stable_json(&report).or_status()?)?;
        Ok(())
    })
}

/// Realizes `g` in `R^dim`. On success `*out_points` receives a new handle;
/// on failure it is set to NULL and `out_stress` holds the best stress found.
///
/// # Safety
/// `g` must be a live handle; `tol` NULL or valid; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_realize(
    g: *const AeqGraph,
    dim: usize,
    restarts: usize,
    seed: u64,
    tol: *const AeqTolerance,
    out_points: *mut *mut AeqPointSet,
    out_stress: *mut f64,
    out_success: *mut bool,
) -> AeqStatus {
    guard(|| {
        non_null(g, "g")?;
        non_null(out_points, "out_points")?;
        non_null(out_stress, "out_stress")?;
        non_null(out_success, "out_success")?;
        let r = realize_graph(&(*g).0, &RealizeConfig::new(dim, restarts, seed), &tolerance(tol)).or_status()?;
        *out_success = r.success;
        *out_stress = r.best_stress;
        *out_points = match (r.success, r.points) {
            (true, Some(ps)) => Box::into_raw(Box::new(AeqPointSet(ps))),
            _ => ptr::null_mut(),
        };
        Ok(())
    })
}

/// Known bounds for dimension `d` from the shipped table.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aeq_bounds(d: usize, out: *mut AeqBounds) -> AeqStatus {
    guard(|| {
        non_null(out, "out")?;
        let b = bounds_for_dimension(d, &BoundsTable::default()).or_status()?;
        *out = AeqBounds {
            d,
            lower: b.lower,
            has_upper: b.upper.is_some(),
            upper: b.upper.unwrap_or(0),
            has_ramsey_upper: b.ramsey_upper.is_some(),
            ramsey_upper: b.ramsey_upper.unwrap_or(0),
        };
        Ok(())
    })
}
