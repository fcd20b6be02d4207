//! Unit simplices and their centroid identities.
//!
//! For a unit simplex `C` of `k` points with centroid `c`, every vertex sits at
//! squared distance `(1 - 1/k)/2` from `c` and distinct vertices have inner
//! product `-1/(2k)` about `c`. The centroid `f` of an `l`-subset satisfies
//! `‖c - f‖² = (1/l - 1/k)/2`.

use serde::{Deserialize, Serialize};

use crate::error::{AeqError, Result};
use crate::geometry::{dist, dot, norm_sq, sub, PointSet, TolerancePolicy};

/// Componentwise mean of a nonempty list of equal-length points.
pub fn centroid<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<f64>> {
    let first = points.first().ok_or(AeqError::EmptyInput)?.as_ref();
    let mut c = vec![0.0; first.len()];
    for p in points {
        let p = p.as_ref();
        if p.len() != c.len() {
            return Err(AeqError::InvalidArgument("points of different dimension".into()));
        }
        for (ci, x) in c.iter_mut().zip(p) {
            *ci += x;
        }
    }
    let inv = 1.0 / points.len() as f64;
    c.iter_mut().for_each(|x| *x *= inv);
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Expected {
    pub norm_sq: f64,
    pub inner: f64,
    /// `k = 1` has no vertex pairs, so `inner` is returned but never applies.
    pub inner_vacuous: bool,
}

/// `((1 - 1/k)/2, -1/(2k))`.
pub fn lemma1_expected(k: usize) -> Result<Lemma1Expected> {
    if k == 0 {
        return Err(AeqError::InvalidArgument("simplex size must be at least 1".into()));
    }
    let kf = k as f64;
    Ok(Lemma1Expected {
        norm_sq: 0.5 * (1.0 - 1.0 / kf),
        inner: -1.0 / (2.0 * kf),
        inner_vacuous: k == 1,
    })
}

/// `(1/l - 1/k)/2` for `1 <= l <= k`.
pub fn lemma2_expected(k: usize, l: usize) -> Result<f64> {
    if l == 0 || l > k {
        return Err(AeqError::InvalidArgument(format!(
            "subset size {l} must lie in 1..={k}"
        )));
    }
    Ok(0.5 * (1.0 / l as f64 - 1.0 / k as f64))
}

/// A set of points pairwise at unit distance.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitSimplex {
    ambient_dim: usize,
    vertices: Vec<Vec<f64>>,
}

impl UnitSimplex {
    pub fn new(ambient_dim: usize, vertices: Vec<Vec<f64>>, tol: &TolerancePolicy) -> Result<Self> {
        if vertices.is_empty() {
            return Err(AeqError::EmptyInput);
        }
        if vertices.len() > ambient_dim + 1 {
            return Err(AeqError::SimplexTooLarge {
                k: vertices.len(),
                dim: ambient_dim,
            });
        }
        for (index, v) in vertices.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(AeqError::DimensionMismatch {
                    index,
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                let d = dist(&vertices[i], &vertices[j]);
                if !tol.is_unit(d) {
                    return Err(AeqError::NotUnitSimplex(i, j, d));
                }
            }
        }
        Ok(UnitSimplex { ambient_dim, vertices })
    }

    /// The sub-selection `indices` of `ps`; errors report positions within `indices`.
    pub fn from_indices(ps: &PointSet, indices: &[usize], tol: &TolerancePolicy) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= ps.len()) {
            return Err(AeqError::InvalidArgument(format!("point index {bad} out of range")));
        }
        let verts = indices.iter().map(|&i| ps.point(i).to_vec()).collect();
        Self::new(ps.dim(), verts, tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cardinality(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn centroid(&self) -> Vec<f64> {
        centroid(&self.vertices).expect("simplex is nonempty")
    }
}

pub fn is_unit_simplex(ps: &PointSet, tol: &TolerancePolicy) -> bool {
    UnitSimplex::new(ps.dim(), ps.points().to_vec(), tol).is_ok()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentroidReport {
    pub centroid: Vec<f64>,
    pub vertex_norms_sq: Vec<f64>,
    /// Pairs in lexicographic order.
    pub pair_inners: Vec<f64>,
    pub max_deviation: f64,
    pub passes: bool,
}

impl CentroidReport {
    /// Mean of `vertex_norms_sq`: the common squared circumradius.
    pub fn alpha(&self) -> f64 {
        self.vertex_norms_sq.iter().sum::<f64>() / self.vertex_norms_sq.len() as f64
    }

    /// Mean of `pair_inners`, or `None` for a single vertex.
    pub fn beta(&self) -> Option<f64> {
        (!self.pair_inners.is_empty()).then(|| self.pair_inners.iter().sum::<f64>() / self.pair_inners.len() as f64)
    }
}

/// Measures vertex norms and pair inner products about the centroid and
/// compares them with [`lemma1_expected`].
pub fn check_lemma1(s: &UnitSimplex, tol: &TolerancePolicy) -> CentroidReport {
    let k = s.cardinality();
    let expected = lemma1_expected(k).expect("k >= 1");
    let c = s.centroid();
    let rel: Vec<Vec<f64>> = s.vertices().iter().map(|v| sub(v, &c)).collect();
    let vertex_norms_sq: Vec<f64> = rel.iter().map(|r| norm_sq(r)).collect();
    let mut pair_inners = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in (i + 1)..k {
            pair_inners.push(dot(&rel[i], &rel[j]));
        }
    }
    let max_deviation = vertex_norms_sq
        .iter()
        .map(|x| (x - expected.norm_sq).abs())
        .chain(pair_inners.iter().map(|x| (x - expected.inner).abs()))
        .fold(0.0, f64::max);
    CentroidReport {
        centroid: c,
        vertex_norms_sq,
        pair_inners,
        max_deviation,
        passes: max_deviation <= tol.identity_slack(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Check {
    pub k: usize,
    pub l: usize,
    pub measured: f64,
    pub expected: f64,
    pub passes: bool,
}

/// Squared distance between the simplex centroid and the centroid of the
/// vertices at `subset`.
pub fn check_lemma2(s: &UnitSimplex, subset: &[usize], tol: &TolerancePolicy) -> Result<Lemma2Check> {
    let k = s.cardinality();
    if subset.is_empty() {
        return Err(AeqError::InvalidArgument("empty subset".into()));
    }
    let mut seen = vec![false; k];
    for &i in subset {
        if i >= k || std::mem::replace(&mut seen[i], true) {
            return Err(AeqError::InvalidArgument(format!(
                "subset index {i} is out of range or repeated"
            )));
        }
    }
    let l = subset.len();
    let f = centroid(&subset.iter().map(|&i| &s.vertices()[i]).collect::<Vec<_>>())?;
    let c = s.centroid();
    let measured = norm_sq(&sub(&c, &f));
    let expected = lemma2_expected(k, l)?;
    Ok(Lemma2Check {
        k,
        l,
        measured,
        expected,
        passes: (measured - expected).abs() <= tol.identity_slack(),
    })
}

/// Point `p = c + u / sqrt(2k)` with `u` a unit normal to the affine hull of
/// the simplex. The vectors `p → v_j` are then orthogonal with norm `1/√2`.
///
/// `u` is the normalized residual of the standard basis vector farthest from
/// the span of `{v_j - c}`, signed so its first nonzero coordinate is positive.
pub fn orthogonalization_point(s: &UnitSimplex, tol: &TolerancePolicy) -> Result<Vec<f64>> {
    let k = s.cardinality();
    let d = s.ambient_dim();
    if k > d {
        return Err(AeqError::NoNormalDirection { k, dim: d });
    }
    let c = s.centroid();
    let basis = orthonormal_basis(s.vertices().iter().map(|v| sub(v, &c)));

    let mut best: Option<(f64, Vec<f64>)> = None;
    for m in 0..d {
        let mut r = vec![0.0; d];
        r[m] = 1.0;
        project_out(&mut r, &basis);
        project_out(&mut r, &basis);
        let nr = norm_sq(&r);
        if best.as_ref().is_none_or(|(b, _)| nr > *b) {
            best = Some((nr, r));
        }
    }
    let (nr, mut u) = best.expect("d >= 1");
    let scale = nr.sqrt();
    u.iter_mut().for_each(|x| *x /= scale);
    if let Some(first) = u.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
    }

    let h = 1.0 / (2.0 * k as f64).sqrt();
    let p: Vec<f64> = c.iter().zip(&u).map(|(ci, ui)| ci + h * ui).collect();

    let slack = tol.identity_slack();
    let fail = |what: String| Err(AeqError::Construction(what));
    let height = dist(&p, &c);
    if (height - h).abs() > slack {
        return fail(format!("‖p - c‖ = {height}, expected {h}"));
    }
    let legs: Vec<Vec<f64>> = s.vertices().iter().map(|v| sub(v, &p)).collect();
    for (j, leg) in legs.iter().enumerate() {
        let len = norm_sq(leg).sqrt();
        if (len - std::f64::consts::FRAC_1_SQRT_2).abs() > slack {
            return fail(format!("‖v_{j} - p‖ = {len}, expected 1/√2"));
        }
        for (j2, leg2) in legs.iter().enumerate().skip(j + 1) {
            let ip = dot(leg, leg2);
            if ip.abs() > slack {
                return fail(format!("⟨v_{j} - p, v_{j2} - p⟩ = {ip}, expected 0"));
            }
        }
    }
    Ok(p)
}

fn project_out(r: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let a = dot(r, b);
        r.iter_mut().zip(b).for_each(|(x, y)| *x -= a * y);
    }
}

/// Modified Gram-Schmidt with one reorthogonalization pass; near-dependent
/// vectors are dropped.
pub(crate) fn orthonormal_basis(vectors: impl Iterator<Item = Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in vectors {
        let before = norm_sq(&v).sqrt();
        project_out(&mut v, &basis);
        project_out(&mut v, &basis);
        let after = norm_sq(&v).sqrt();
        if after > 1e-9 * before.max(1.0) {
            v.iter_mut().for_each(|x| *x /= after);
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::unit_simplex_points;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn simplex(m: usize, d: usize) -> UnitSimplex {
        let ps = unit_simplex_points(m, d).unwrap();
        UnitSimplex::new(d, ps.points().to_vec(), &tol()).unwrap()
    }

    #[test]
    fn centroid_small_cases() {
        assert_eq!(centroid(&[vec![0.0], vec![1.0]]).unwrap(), vec![0.5]);
        assert_eq!(centroid(&[vec![3.0, -2.0]]).unwrap(), vec![3.0, -2.0]);
        assert!(centroid::<Vec<f64>>(&[]).is_err());
    }

    #[test]
    fn centroid_of_unit_triangle_is_circumcenter() {
        let s = simplex(3, 2);
        let v = s.vertices();
        // Intersect the perpendicular bisectors of v0v1 and v0v2.
        let (a1, b1) = (v[1][0] - v[0][0], v[1][1] - v[0][1]);
        let (a2, b2) = (v[2][0] - v[0][0], v[2][1] - v[0][1]);
        let r1 = 0.5 * (norm_sq(&v[1]) - norm_sq(&v[0]));
        let r2 = 0.5 * (norm_sq(&v[2]) - norm_sq(&v[0]));
        let det = a1 * b2 - a2 * b1;
        let cc = [(r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det];
        let c = s.centroid();
        assert!((c[0] - cc[0]).abs() < 1e-12 && (c[1] - cc[1]).abs() < 1e-12);
    }

    #[test]
    fn lemma1_closed_forms() {
        let e1 = lemma1_expected(1).unwrap();
        assert_eq!((e1.norm_sq, e1.inner, e1.inner_vacuous), (0.0, -0.5, true));
        let e2 = lemma1_expected(2).unwrap();
        assert_eq!((e2.norm_sq, e2.inner), (0.25, -0.25));
        let e3 = lemma1_expected(3).unwrap();
        assert!((e3.norm_sq - 1.0 / 3.0).abs() < 1e-15 && (e3.inner + 1.0 / 6.0).abs() < 1e-15);
        assert!(lemma1_expected(0).is_err());
    }

    #[test]
    fn lemma2_closed_forms() {
        assert_eq!(lemma2_expected(5, 5).unwrap(), 0.0);
        assert_eq!(lemma2_expected(2, 1).unwrap(), 0.25);
        assert_eq!(lemma2_expected(4, 2).unwrap(), 0.125);
        assert!(lemma2_expected(3, 0).is_err());
        assert!(lemma2_expected(3, 4).is_err());
    }

    #[test]
    fn check_lemma1_on_segment_and_simplex() {
        let seg = UnitSimplex::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]], &tol()).unwrap();
        let r = check_lemma1(&seg, &tol());
        assert_eq!(r.vertex_norms_sq, vec![0.25, 0.25]);
        assert!(r.passes);

        let r = check_lemma1(&simplex(6, 5), &tol());
        assert!(r.max_deviation < 1e-10, "{}", r.max_deviation);
        assert!(r.passes);
        // The two linear relations the symmetric values satisfy.
        let (a, b, k) = (r.alpha(), r.beta().unwrap(), 6.0);
        assert!((k * a + k * (k - 1.0) * b).abs() < 1e-12);
        assert!((2.0 * a - 2.0 * b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn check_lemma1_detects_perturbation() {
        let mut verts = simplex(4, 3).vertices().to_vec();
        verts[0][0] += 1e-3;
        // Bypass the unit check by using a loose policy for construction only.
        let loose = TolerancePolicy {
            eps_unit: 1e-2,
            ..tol()
        };
        let s = UnitSimplex::new(3, verts, &loose).unwrap();
        let r = check_lemma1(&s, &tol());
        assert!(!r.passes);
        assert!(r.max_deviation > 1e-5 && r.max_deviation < 1e-2);
    }

    #[test]
    fn check_lemma2_cases() {
        let tri = simplex(3, 2);
        assert!(check_lemma2(&tri, &[0, 1, 2], &tol()).unwrap().measured.abs() < 1e-15);
        let one = check_lemma2(&tri, &[1], &tol()).unwrap();
        assert!((one.measured - 1.0 / 3.0).abs() < 1e-12 && one.passes);

        let s6 = simplex(6, 6);
        let r = check_lemma2(&s6, &[4, 0, 2], &tol()).unwrap();
        assert!((r.measured - 1.0 / 12.0).abs() < 1e-10 && r.passes);

        assert!(check_lemma2(&tri, &[], &tol()).is_err());
        assert!(check_lemma2(&tri, &[0, 0], &tol()).is_err());
        assert!(check_lemma2(&tri, &[3], &tol()).is_err());
    }

    #[test]
    fn too_large_simplex_rejected() {
        let mut verts = simplex(3, 2).vertices().to_vec();
        verts.push(vec![0.0, 0.0]);
        assert!(matches!(
            UnitSimplex::new(2, verts, &tol()),
            Err(AeqError::SimplexTooLarge { k: 4, dim: 2 })
        ));
    }

    #[test]
    fn orthogonalization_single_vertex() {
        let s = UnitSimplex::new(2, vec![vec![0.3, -0.2]], &tol()).unwrap();
        let p = orthogonalization_point(&s, &tol()).unwrap();
        assert!((dist(&p, &[0.3, -0.2]) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn orthogonalization_segment_gives_right_isoceles_apex() {
        let s = UnitSimplex::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]], &tol()).unwrap();
        let p = orthogonalization_point(&s, &tol()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn orthogonalization_full_facet_and_errors() {
        for d in 2..=8 {
            let s = simplex(d, d);
            let p = orthogonalization_point(&s, &tol()).unwrap();
            let c = s.centroid();
            assert!((dist(&p, &c) - 1.0 / (2.0 * d as f64).sqrt()).abs() < 1e-10);
        }
        assert!(matches!(
            orthogonalization_point(&simplex(4, 3), &tol()),
            Err(AeqError::NoNormalDirection { k: 4, dim: 3 })
        ));
    }
}
