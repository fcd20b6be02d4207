//! JSON file formats: point sets `{dim, points}`, graphs `{n, edges}`,
//! tolerance policies, and the stable report encoding.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{AeqError, Result};
use crate::geometry::{PointSet, TolerancePolicy, UnitDistanceGraph};

/// Significant digits kept for every float in machine-readable output.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&UnitDistanceGraph> for GraphFile {
    fn from(g: &UnitDistanceGraph) -> Self {
        GraphFile {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for UnitDistanceGraph {
    type Error = AeqError;

    fn try_from(f: GraphFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
        UnitDistanceGraph::from_edges(f.n, &edges)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| AeqError::Format(format!("cannot read {}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| AeqError::Format(format!("malformed {what}: {e}")))
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    parse(text, "point-set file")
}

pub fn parse_graph(text: &str) -> Result<UnitDistanceGraph> {
    parse::<GraphFile>(text, "graph file")?
        .try_into()
        .map_err(|e: AeqError| AeqError::Format(format!("malformed graph file: {e}")))
}

pub fn parse_tolerance(text: &str) -> Result<TolerancePolicy> {
    let tol: TolerancePolicy = parse(text, "tolerance file")?;
    tol.validate()?;
    Ok(tol)
}

pub fn load_point_set(path: &Path) -> Result<PointSet> {
    parse_point_set(&read(path)?)
}

pub fn load_graph(path: &Path) -> Result<UnitDistanceGraph> {
    parse_graph(&read(path)?)
}

pub fn load_tolerance(path: &Path) -> Result<TolerancePolicy> {
    parse_tolerance(&read(path)?)
}

pub fn point_set_json(ps: &PointSet) -> Result<String> {
    to_stable_json(ps)
}

pub fn graph_json(g: &UnitDistanceGraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GraphFile::from(g))?)
}

pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_significant).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to [`SIGNIFICANT_DIGITS`]. Field order
/// follows the type's declaration order.
pub fn to_stable_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}
