//! SVG drawing of planar point sets with their unit edges.

use std::fmt::Write;

use crate::error::{AeqError, Result};
use crate::geometry::{build_unit_distance_graph, PointSet, TolerancePolicy};

const SCALE: f64 = 100.0;
const MARGIN: f64 = 20.0;
const RADIUS: f64 = 4.0;

/// One `<circle>` per point and one `<line>` per unit edge. Coordinates are
/// scaled by a fixed factor with the y axis pointing up.
pub fn render_svg(ps: &PointSet, tol: &TolerancePolicy) -> Result<String> {
    if ps.dim() != 2 {
        return Err(AeqError::InvalidArgument(format!(
            "rendering needs a planar point set, got dimension {}",
            ps.dim()
        )));
    }
    let g = build_unit_distance_graph(ps, tol)?;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if !ps.is_empty() {
        min_x = f64::INFINITY;
        max_x = f64::NEG_INFINITY;
        min_y = f64::INFINITY;
        max_y = f64::NEG_INFINITY;
        for p in ps.points() {
            min_x = min_x.min(p[0]);
            max_x = max_x.max(p[0]);
            min_y = min_y.min(p[1]);
            max_y = max_y.max(p[1]);
        }
    }
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = (max_y - min_y) * SCALE + 2.0 * MARGIN;
    let sx = |x: f64| (x - min_x) * SCALE + MARGIN;
    let sy = |y: f64| (max_y - y) * SCALE + MARGIN;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    )
    .unwrap();
    for &(i, j) in g.edges() {
        let (a, b) = (ps.point(i), ps.point(j));
        writeln!(
            out,
            r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="1"/>"#,
            sx(a[0]),
            sy(a[1]),
            sx(b[0]),
            sy(b[1])
        )
        .unwrap();
    }
    for p in ps.points() {
        writeln!(
            out,
            r#"  <circle cx="{:.3}" cy="{:.3}" r="{RADIUS}" fill="black"/>"#,
            sx(p[0]),
            sy(p[1])
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::moser_spindle;

    fn count(s: &str, tag: &str) -> usize {
        s.matches(tag).count()
    }

    #[test]
    fn moser_element_counts() {
        let svg = render_svg(&moser_spindle(), &TolerancePolicy::default()).unwrap();
        assert_eq!(count(&svg, "<circle"), 7);
        assert_eq!(count(&svg, "<line"), 11);
    }

    #[test]
    fn single_point_and_wrong_dimension() {
        let one = PointSet::new(2, vec![vec![0.5, 0.5]]).unwrap();
        let svg = render_svg(&one, &TolerancePolicy::default()).unwrap();
        assert_eq!((count(&svg, "<circle"), count(&svg, "<line")), (1, 0));
        let three = PointSet::new(3, vec![vec![0.0; 3]]).unwrap();
        assert!(render_svg(&three, &TolerancePolicy::default()).is_err());
    }
}
