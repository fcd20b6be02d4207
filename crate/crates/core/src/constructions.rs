//! Deterministic almost-equidistant configurations.
//!
//! The generalized spindle in `R^d` is two double simplices sharing an apex
//! `a`; the second copy is the first rotated about `a` until the far apexes are
//! at unit distance. Point order is `[a, F1.., b1, F2.., b2]`.

use serde::{Deserialize, Serialize};

use crate::error::{AeqError, Result};
use crate::geometry::{dot, sub, PointSet, TolerancePolicy};
use crate::simplex::centroid;

/// `m` points pairwise at distance one in `R^d`: scaled basis vectors
/// `e_i/√2`, plus the point `t·(1,…,1)` with `t = (1 + √(d+1))/(√2·d)` when
/// `m = d + 1`.
pub fn unit_simplex_points(m: usize, d: usize) -> Result<PointSet> {
    if d == 0 {
        return Err(AeqError::ZeroDimension);
    }
    if m == 0 || m > d + 1 {
        return Err(AeqError::InvalidArgument(format!(
            "a unit simplex in R^{d} has 1..={} points, requested {m}",
            d + 1
        )));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut points: Vec<Vec<f64>> = (0..m.min(d))
        .map(|i| {
            let mut p = vec![0.0; d];
            p[i] = s;
            p
        })
        .collect();
    if m == d + 1 {
        let df = d as f64;
        let t = (1.0 + (df + 1.0).sqrt()) / (std::f64::consts::SQRT_2 * df);
        points.push(vec![t; d]);
    }
    PointSet::new(d, points)
}

/// Apex half-separation of the double simplex: `√((d+1)/(2d))`.
pub fn apex_height(d: usize) -> f64 {
    let df = d as f64;
    (0.5 * (1.0 + 1.0 / df)).sqrt()
}

/// A unit facet of `d` points in the hyperplane `x_d = 0` plus two mirror
/// apexes at unit distance from every facet vertex, ordered `[a, F.., b]`.
pub fn double_simplex(d: usize) -> Result<PointSet> {
    if d < 2 {
        return Err(AeqError::InvalidArgument(format!(
            "double simplex needs dimension >= 2, got {d}"
        )));
    }
    let facet: Vec<Vec<f64>> = unit_simplex_points(d, d - 1)?
        .points()
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q.push(0.0);
            q
        })
        .collect();
    let f = centroid(&facet)?;
    let h = apex_height(d);
    let mut a = f.clone();
    a[d - 1] -= h;
    let mut b = f;
    b[d - 1] += h;
    let mut points = Vec::with_capacity(d + 2);
    points.push(a);
    points.extend(facet);
    points.push(b);
    PointSet::new(d, points)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpindleSpec {
    pub dim: usize,
    /// Unit vector along the apex axis `b - a`.
    pub u1: Vec<f64>,
    /// Unit vector from the facet centroid to the first facet vertex.
    pub u2: Vec<f64>,
    /// Apex separation `δ = √(2(d+1)/d)`.
    pub delta: f64,
    /// Rotation angle with `sin(θ/2) = 1/(2δ)`.
    pub angle: f64,
}

impl SpindleSpec {
    pub fn new(d: usize) -> Result<Self> {
        let ds = double_simplex(d)?;
        let a = ds.point(0);
        let b = ds.point(d + 1);
        let delta = 2.0 * apex_height(d);
        let u1: Vec<f64> = sub(b, a).iter().map(|x| x / delta).collect();
        let facet: Vec<&[f64]> = (1..=d).map(|i| ds.point(i)).collect();
        let f = centroid(&facet)?;
        let r = sub(facet[0], &f);
        let rn = dot(&r, &r).sqrt();
        let u2 = r.iter().map(|x| x / rn).collect();
        let angle = 2.0 * (1.0 / (2.0 * delta)).asin();
        Ok(SpindleSpec {
            dim: d,
            u1,
            u2,
            delta,
            angle,
        })
    }

    /// Rotates `x` about `center` by `angle` in the `(u1, u2)` plane.
    pub fn rotate(&self, x: &[f64], center: &[f64]) -> Vec<f64> {
        let rel = sub(x, center);
        let p1 = dot(&rel, &self.u1);
        let p2 = dot(&rel, &self.u2);
        let (s, c) = self.angle.sin_cos();
        let (q1, q2) = (c * p1 - s * p2, s * p1 + c * p2);
        rel.iter()
            .zip(center)
            .zip(self.u1.iter().zip(&self.u2))
            .map(|((r, o), (e1, e2))| o + r + (q1 - p1) * e1 + (q2 - p2) * e2)
            .collect()
    }
}

/// The `2d + 3`-point generalized spindle in `R^d`.
pub fn generalized_spindle(d: usize) -> Result<PointSet> {
    let spec = SpindleSpec::new(d)?;
    let ds = double_simplex(d)?;
    let a = ds.point(0).to_vec();
    let mut points: Vec<Vec<f64>> = ds.points().to_vec();
    for i in 1..ds.len() {
        points.push(spec.rotate(ds.point(i), &a));
    }
    let ps = PointSet::new(d, points)?;
    if let Some((i, j)) = ps.find_coincident(&TolerancePolicy::default()) {
        return Err(AeqError::Construction(format!(
            "points {i} and {j} coincide after rotation"
        )));
    }
    Ok(ps)
}

/// The Moser spindle: `generalized_spindle(2)`.
pub fn moser_spindle() -> PointSet {
    generalized_spindle(2).expect("planar spindle is well defined")
}
