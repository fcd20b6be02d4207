//! Point sets, the tolerance policy, unit-distance graphs and the
//! almost-equidistant predicate.
//!
//! A point set is almost-equidistant when every three of its points contain a
//! pair at distance one. Two independent routes decide this: a direct scan of
//! coordinate triples ([`is_almost_equidistant`]) and a triangle search in the
//! complement of the unit-distance graph ([`complement_triangle_free`]).

use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{AeqError, Result};

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Every numeric threshold used by the library.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TolerancePolicy {
    /// Absolute slack for the unit-distance test `|dist - 1| <= eps_unit`.
    pub eps_unit: f64,
    /// Two points closer than this are the same point.
    pub eps_coincide: f64,
    /// Relative singular-value cutoff for numerical rank.
    pub eps_rank: f64,
    /// Stress below which a graph realization counts as found.
    pub eps_residual: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            eps_unit: 1e-9,
            eps_coincide: 1e-9,
            eps_rank: 1e-8,
            eps_residual: 1e-8,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eps_unit", self.eps_unit),
            ("eps_coincide", self.eps_coincide),
            ("eps_rank", self.eps_rank),
            ("eps_residual", self.eps_residual),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(AeqError::InvalidTolerance(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        if self.eps_coincide >= 1.0 - self.eps_unit {
            return Err(AeqError::InvalidTolerance(format!(
                "eps_coincide ({}) must be below 1 - eps_unit ({})",
                self.eps_coincide,
                1.0 - self.eps_unit
            )));
        }
        Ok(())
    }

    pub fn with_eps_unit(mut self, eps_unit: f64) -> Self {
        self.eps_unit = eps_unit;
        self
    }

    /// Slack for derived identities, which accumulate several rounding terms.
    pub fn identity_slack(&self) -> f64 {
        10.0 * self.eps_unit
    }

    #[inline]
    pub fn is_unit(&self, d: f64) -> bool {
        (d - 1.0).abs() <= self.eps_unit
    }
}

/// A finite ordered set of points in `R^dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawPointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = AeqError;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.dim, raw.points)
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(AeqError::ZeroDimension);
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(AeqError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(AeqError::NonFinite { index });
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        dist(&self.points[i], &self.points[j])
    }

    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(AeqError::InvalidArgument(format!(
                "offset has {} coordinates, expected {}",
                offset.len(),
                self.dim
            )));
        }
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(offset).map(|(x, o)| x + o).collect())
            .collect();
        PointSet::new(self.dim, points)
    }

    /// Point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() {
            return Err(AeqError::InvalidArgument("permutation length".into()));
        }
        for &p in perm {
            if p >= self.len() || std::mem::replace(&mut seen[p], true) {
                return Err(AeqError::InvalidArgument("not a permutation".into()));
            }
        }
        Ok(PointSet {
            dim: self.dim,
            points: perm.iter().map(|&p| self.points[p].clone()).collect(),
        })
    }

    /// Lexicographically smallest pair of points closer than `eps_coincide`.
    pub fn find_coincident(&self, tol: &TolerancePolicy) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).into_par_iter().find_map_first(|i| {
            ((i + 1)..n)
                .find(|&j| self.distance(i, j) <= tol.eps_coincide)
                .map(|j| (i, j))
        })
    }
}

/// Where a graph's edges came from.
#[derive(Clone, Debug)]
pub struct GraphSource {
    pub points: Arc<PointSet>,
    pub tol: TolerancePolicy,
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug)]
pub struct UnitDistanceGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    rows: Vec<Bitset>,
    source: Option<GraphSource>,
}

impl PartialEq for UnitDistanceGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl UnitDistanceGraph {
    /// Builds a graph from an edge list; pairs are normalized to `(min, max)`
    /// and duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(AeqError::InvalidEdge(a, b, n));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Self::from_sorted(n, norm, None))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>, source: Option<GraphSource>) -> Self {
        let mut rows = vec![Bitset::new(n); n];
        for &(a, b) in &edges {
            rows[a].insert(b);
            rows[b].insert(a);
        }
        UnitDistanceGraph { n, edges, rows, source }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        Self::from_sorted(n, edges, None)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(i, j)` pairs with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn source(&self) -> Option<&GraphSource> {
        self.source.as_ref()
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn neighbours(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Vertices other than `v` that are not adjacent to `v`.
    pub fn non_neighbours(&self, v: usize) -> Bitset {
        let mut s = Bitset::full(self.n);
        s.difference_with(&self.rows[v]);
        s.remove(v);
        s
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &i)| vertices[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }
}

/// Unit-distance graph of `ps`: `ij` is an edge iff `|‖v_i − v_j‖ − 1| ≤ eps_unit`.
pub fn build_unit_distance_graph(ps: &PointSet, tol: &TolerancePolicy) -> Result<UnitDistanceGraph> {
    tol.validate()?;
    let n = ps.len();
    let rows: Vec<(Vec<usize>, Option<usize>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let p = ps.point(i);
            let mut adj = Vec::new();
            let mut clash = None;
            for j in (i + 1)..n {
                let d = dist(p, ps.point(j));
                if d <= tol.eps_coincide {
                    clash.get_or_insert(j);
                } else if tol.is_unit(d) {
                    adj.push(j);
                }
            }
            (adj, clash)
        })
        .collect();
    if let Some((i, j)) = rows.iter().enumerate().find_map(|(i, (_, c))| c.map(|j| (i, j))) {
        return Err(AeqError::CoincidentPoints(i, j));
    }
    let edges = rows
        .into_iter()
        .enumerate()
        .flat_map(|(i, (adj, _))| adj.into_iter().map(move |j| (i, j)))
        .collect();
    Ok(UnitDistanceGraph::from_sorted(
        n,
        edges,
        Some(GraphSource {
            points: Arc::new(ps.clone()),
            tol: *tol,
        }),
    ))
}

/// Outcome of a three-point property check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// Lexicographically smallest offending triple.
    Violated([usize; 3]),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<[usize; 3]> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(*w),
        }
    }
}

/// Scans every coordinate triple for a unit pair. Fewer than three points are
/// vacuously almost-equidistant.
pub fn is_almost_equidistant(ps: &PointSet, tol: &TolerancePolicy) -> Verdict {
    let n = ps.len();
    let unit = |i: usize, j: usize| tol.is_unit(ps.distance(i, j));
    let found = (0..n).into_par_iter().find_map_first(|i| {
        for j in (i + 1)..n {
            if unit(i, j) {
                continue;
            }
            for k in (j + 1)..n {
                if !unit(i, k) && !unit(j, k) {
                    return Some([i, j, k]);
                }
            }
        }
        None
    });
    found.map_or(Verdict::Holds, Verdict::Violated)
}

/// True iff no three vertices are pairwise non-adjacent.
pub fn complement_triangle_free(g: &UnitDistanceGraph) -> Verdict {
    let n = g.vertex_count();
    let comp: Vec<Bitset> = (0..n).map(|v| g.non_neighbours(v)).collect();
    let found = (0..n).into_par_iter().find_map_first(|i| {
        let mut j = comp[i].next_after(i);
        while let Some(jj) = j {
            let common = comp[i].intersection(&comp[jj]);
            if let Some(k) = common.next_after(jj) {
                return Some([i, jj, k]);
            }
            j = comp[i].next_after(jj);
        }
        None
    });
    found.map_or(Verdict::Holds, Verdict::Violated)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonNeighbourCheck {
    pub vertex: usize,
    pub non_neighbours: Vec<usize>,
    /// First non-adjacent pair inside the non-neighbour set, if any.
    pub missing_edge: Option<(usize, usize)>,
}

impl NonNeighbourCheck {
    pub fn passes(&self) -> bool {
        self.missing_edge.is_none()
    }
}

/// For each vertex `v`, checks that `V ∖ (N(v) ∪ {v})` is a clique.
pub fn non_neighbour_cliques(g: &UnitDistanceGraph) -> Vec<NonNeighbourCheck> {
    (0..g.vertex_count())
        .map(|v| {
            let non: Vec<usize> = g.non_neighbours(v).iter().collect();
            let missing_edge = non
                .iter()
                .enumerate()
                .find_map(|(a, &i)| non[a + 1..].iter().find(|&&j| !g.has_edge(i, j)).map(|&j| (i, j)));
            NonNeighbourCheck {
                vertex: v,
                non_neighbours: non,
                missing_edge,
            }
        })
        .collect()
}

/// Matrix of inner products `⟨v_i, v_j⟩`.
pub fn gram_matrix(ps: &PointSet) -> DMatrix<f64> {
    gram_of(ps.points().iter().map(|p| p.as_slice()))
}

pub(crate) fn gram_of<'a>(points: impl Iterator<Item = &'a [f64]>) -> DMatrix<f64> {
    let pts: Vec<&[f64]> = points.collect();
    let n = pts.len();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = dot(pts[i], pts[j]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn two_points_at_unit_distance() {
        let ps = PointSet::new(2, vec![vec![0.0, 0.0], vec![0.6, 0.8]]).unwrap();
        let g = build_unit_distance_graph(&ps, &tol()).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(g.source().is_some());
    }

    #[test]
    fn coincident_points_are_an_error() {
        let ps = PointSet::new(1, vec![vec![0.0], vec![1.0], vec![0.0]]).unwrap();
        match build_unit_distance_graph(&ps, &tol()) {
            Err(AeqError::CoincidentPoints(0, 2)) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(ps.find_coincident(&tol()), Some((0, 2)));
    }

    #[test]
    fn point_set_validation() {
        assert!(matches!(
            PointSet::new(2, vec![vec![0.0, 0.0], vec![1.0]]),
            Err(AeqError::DimensionMismatch { index: 1, .. })
        ));
        assert!(matches!(
            PointSet::new(1, vec![vec![f64::NAN]]),
            Err(AeqError::NonFinite { index: 0 })
        ));
        assert!(matches!(PointSet::new(0, vec![]), Err(AeqError::ZeroDimension)));
    }

    #[test]
    fn tolerance_validation() {
        assert!(tol().validate().is_ok());
        assert!(tol().with_eps_unit(0.0).validate().is_err());
        let bad = TolerancePolicy {
            eps_coincide: 0.6,
            eps_unit: 0.5,
            ..tol()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn collinear_points_violate() {
        let ps = PointSet::new(1, vec![vec![0.0], vec![2.0], vec![4.0]]).unwrap();
        assert_eq!(is_almost_equidistant(&ps, &tol()), Verdict::Violated([0, 1, 2]));
        let g = build_unit_distance_graph(&ps, &tol()).unwrap();
        assert_eq!(complement_triangle_free(&g), Verdict::Violated([0, 1, 2]));
    }

    #[test]
    fn small_sets_are_vacuous() {
        let ps = PointSet::new(1, vec![vec![0.0], vec![5.0]]).unwrap();
        assert!(is_almost_equidistant(&ps, &tol()).holds());
        let empty = PointSet::new(3, vec![]).unwrap();
        assert!(is_almost_equidistant(&empty, &tol()).holds());
    }

    #[test]
    fn complement_triangle_cases() {
        assert!(complement_triangle_free(&UnitDistanceGraph::complete(5)).holds());
        let empty = UnitDistanceGraph::from_edges(3, &[]).unwrap();
        assert_eq!(complement_triangle_free(&empty), Verdict::Violated([0, 1, 2]));
    }

    #[test]
    fn non_neighbour_cliques_on_small_graphs() {
        let k4 = UnitDistanceGraph::complete(4);
        let r = non_neighbour_cliques(&k4);
        assert!(r.iter().all(|c| c.passes() && c.non_neighbours.is_empty()));

        let p3 = UnitDistanceGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = non_neighbour_cliques(&p3);
        assert!(r.iter().all(NonNeighbourCheck::passes));
        assert_eq!(r[0].non_neighbours, vec![2]);
        assert_eq!(r[1].non_neighbours, Vec::<usize>::new());
        assert_eq!(r[2].non_neighbours, vec![0]);

        let empty = UnitDistanceGraph::from_edges(3, &[]).unwrap();
        assert_eq!(non_neighbour_cliques(&empty)[0].missing_edge, Some((1, 2)));
    }

    #[test]
    fn invalid_edges_rejected() {
        assert!(UnitDistanceGraph::from_edges(3, &[(1, 1)]).is_err());
        assert!(UnitDistanceGraph::from_edges(3, &[(0, 3)]).is_err());
        let g = UnitDistanceGraph::from_edges(3, &[(1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn gram_small_cases() {
        let origin = PointSet::new(3, vec![vec![0.0; 3]]).unwrap();
        assert_eq!(gram_matrix(&origin), DMatrix::zeros(1, 1));
        let ortho = PointSet::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(gram_matrix(&ortho), DMatrix::identity(2, 2));
    }

    #[test]
    fn point_set_json_rejects_bad_rows() {
        let err = serde_json::from_str::<PointSet>(r#"{"dim": 2, "points": [[0, 0], [1]]}"#);
        assert!(err.is_err());
        let ok: PointSet = serde_json::from_str(r#"{"dim": 2, "points": [[0, 0], [1, 0]]}"#).unwrap();
        assert_eq!(ok.len(), 2);
    }
}
