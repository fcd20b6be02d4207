//! Known bounds on the largest almost-equidistant set in `R^d`, and the
//! Ramsey gate `f(d) <= R(d+2, 3) - 1`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{AeqError, Result};

const DEFAULT_TABLE: &str = include_str!("../data/bounds.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRecord {
    pub d: usize,
    pub lower: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsTable {
    f_bounds: Vec<DimensionRecord>,
    /// `R(k, 3)` keyed by `k` (string keys in the file).
    ramsey_r3: BTreeMap<String, usize>,
}

impl Default for BoundsTable {
    fn default() -> Self {
        Self::from_json(DEFAULT_TABLE).expect("shipped bounds table is valid")
    }
}

impl BoundsTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let table: BoundsTable = serde_json::from_str(text)?;
        table.validate()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        for r in &self.f_bounds {
            if let Some(u) = r.upper {
                if r.lower > u {
                    return Err(AeqError::Format(format!(
                        "bounds table: lower {} exceeds upper {u} for d = {}",
                        r.lower, r.d
                    )));
                }
            }
        }
        for key in self.ramsey_r3.keys() {
            key.parse::<usize>()
                .map_err(|_| AeqError::Format(format!("bounds table: ramsey_r3 key {key:?} is not an integer")))?;
        }
        Ok(())
    }

    pub fn record(&self, d: usize) -> Option<&DimensionRecord> {
        self.f_bounds.iter().find(|r| r.d == d)
    }

    pub fn records(&self) -> &[DimensionRecord] {
        &self.f_bounds
    }

    pub fn ramsey_r3(&self, k: usize) -> Option<usize> {
        self.ramsey_r3.get(&k.to_string()).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBounds {
    pub d: usize,
    pub lower: usize,
    pub lower_source: String,
    pub upper: Option<usize>,
    pub upper_source: Option<String>,
    /// `R(d+2, 3) - 1` when the table knows `R(d+2, 3)`.
    pub ramsey_upper: Option<usize>,
    pub summary: String,
}

pub fn bounds_for_dimension(d: usize, table: &BoundsTable) -> Result<DimensionBounds> {
    if d < 2 {
        return Err(AeqError::InvalidArgument(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    let mut lower = 2 * d + 3;
    let mut lower_source = "2d+3 spindle".to_string();
    if d >= 3 {
        lower = 2 * d + 4;
        lower_source = "2d+4 construction".to_string();
    }
    let rec = table.record(d);
    if let Some(r) = rec {
        if r.lower >= lower {
            lower = r.lower;
            lower_source = r.source.clone();
        }
    }
    let upper = rec.and_then(|r| r.upper);
    let upper_source = rec.filter(|r| r.upper.is_some()).map(|r| r.source.clone());
    let ramsey_upper = table.ramsey_r3(d + 2).map(|r| r - 1);
    let summary = match upper {
        Some(u) if u == lower => format!("f({d}) = {u}"),
        Some(u) => format!("{lower} ≤ f({d}) ≤ {u}"),
        None => format!("f({d}) ≥ {lower}"),
    };
    Ok(DimensionBounds {
        d,
        lower,
        lower_source,
        upper,
        upper_source,
        ramsey_upper,
        summary,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyGateRow {
    pub d: usize,
    pub lower: usize,
    pub upper: Option<usize>,
    pub ramsey_upper: usize,
    pub holds: bool,
}

/// Every dimension whose `R(d+2, 3)` is tabulated: the known bounds must sit
/// below `R(d+2, 3) - 1`.
pub fn ramsey_gate(table: &BoundsTable) -> Vec<RamseyGateRow> {
    (2..)
        .map_while(|d| {
            let b = bounds_for_dimension(d, table).ok()?;
            let ru = b.ramsey_upper?;
            Some(RamseyGateRow {
                d,
                lower: b.lower,
                upper: b.upper,
                ramsey_upper: ru,
                holds: b.lower <= ru && b.upper.is_none_or(|u| u <= ru),
            })
        })
        .collect()
}

fn edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Whether the 2-coloring of `K_n` given by bit `edge_index(i, j)` of
/// `coloring` has a monochromatic triangle.
pub fn has_monochromatic_triangle(n: usize, coloring: u64) -> bool {
    let color = |i, j| coloring >> edge_index(n, i, j) & 1;
    (0..n).any(|i| {
        ((i + 1)..n).any(|j| {
            let c = color(i, j);
            ((j + 1)..n).any(|k| color(i, k) == c && color(j, k) == c)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyCheck {
    pub pentagon_coloring_triangle_free: bool,
    pub k6_colorings_checked: u64,
    pub k6_all_forced: bool,
    pub passes: bool,
}

/// Exhaustive check of `R(3, 3) = 6`.
pub fn verify_ramsey_33() -> RamseyCheck {
    // Pentagon edges in one color, pentagram edges in the other.
    let mut pentagon = 0u64;
    for i in 0..5 {
        pentagon |= 1 << edge_index(5, i, (i + 1) % 5);
    }
    let pentagon_coloring_triangle_free = !has_monochromatic_triangle(5, pentagon);
    let total = 1u64 << 15;
    let k6_all_forced = (0..total).all(|c| has_monochromatic_triangle(6, c));
    RamseyCheck {
        pentagon_coloring_triangle_free,
        k6_colorings_checked: total,
        k6_all_forced,
        passes: pentagon_coloring_triangle_free && k6_all_forced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_is_a_bijection() {
        for n in 2..8 {
            let mut seen = vec![false; n * (n - 1) / 2];
            for i in 0..n {
                for j in (i + 1)..n {
                    assert!(!std::mem::replace(&mut seen[edge_index(n, i, j)], true));
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }

    #[test]
    fn monochromatic_k6_detected() {
        assert!(has_monochromatic_triangle(6, 0));
        assert!(has_monochromatic_triangle(6, (1 << 15) - 1));
    }

    #[test]
    fn ramsey_33() {
        let r = verify_ramsey_33();
        assert!(r.passes);
        assert_eq!(r.k6_colorings_checked, 32768);
    }

    #[test]
    fn dimension_examples() {
        let t = BoundsTable::default();
        let b2 = bounds_for_dimension(2, &t).unwrap();
        assert_eq!((b2.lower, b2.upper, b2.ramsey_upper), (7, Some(7), Some(8)));
        let b5 = bounds_for_dimension(5, &t).unwrap();
        assert_eq!((b5.lower, b5.upper), (16, Some(20)));
        let b7 = bounds_for_dimension(7, &t).unwrap();
        assert_eq!((b7.lower, b7.upper, b7.ramsey_upper), (20, Some(34), Some(35)));
        let b100 = bounds_for_dimension(100, &t).unwrap();
        assert_eq!((b100.lower, b100.upper, b100.ramsey_upper), (204, None, None));
        assert!(bounds_for_dimension(1, &t).is_err());
    }

    #[test]
    fn table_rejects_inverted_bounds() {
        let bad = r#"{"f_bounds":[{"d":2,"lower":9,"upper":7,"source":"x"}],"ramsey_r3":{}}"#;
        assert!(BoundsTable::from_json(bad).is_err());
        let bad_key = r#"{"f_bounds":[],"ramsey_r3":{"three":6}}"#;
        assert!(BoundsTable::from_json(bad_key).is_err());
    }

    #[test]
    fn gate_holds_on_shipped_table() {
        let rows = ramsey_gate(&BoundsTable::default());
        assert_eq!(
            rows.iter().map(|r| r.d).collect::<Vec<_>>(),
            (2..=7).collect::<Vec<_>>()
        );
        assert!(rows.iter().all(|r| r.holds));
    }
}
