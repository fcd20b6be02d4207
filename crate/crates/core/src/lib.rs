//! Almost-equidistant point sets: sets in `R^d` where among any three points
//! some two are at distance one.
//!
//! The crate constructs such sets, verifies the defining property along two
//! independent routes, realizes unit-distance graphs numerically, and audits
//! the exact steps of the `O(d^{4/3})` cardinality bound on concrete inputs.

pub mod audit;
pub mod bitset;
pub mod bounds;
pub mod clique;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod io;
pub mod rank;
pub mod realize;
pub mod render;
pub mod simplex;

pub use audit::{audit, AuditOptions, AuditReport, CheckStatus, ExactCheck};
pub use bounds::{bounds_for_dimension, verify_ramsey_33, BoundsTable, DimensionBounds};
pub use clique::{find_clique, max_clique, CliqueMode};
pub use constructions::{double_simplex, generalized_spindle, moser_spindle, unit_simplex_points};
pub use error::{AeqError, Result};
pub use geometry::{
    build_unit_distance_graph, complement_triangle_free, gram_matrix, is_almost_equidistant, non_neighbour_cliques,
    PointSet, TolerancePolicy, UnitDistanceGraph, Verdict,
};
pub use rank::{certify, lemma0_bound, numerical_rank, RankCertificate};
pub use realize::{realize_graph, RealizeConfig, RealizeOutcome};
pub use simplex::{
    centroid, check_lemma1, check_lemma2, lemma1_expected, lemma2_expected, orthogonalization_point, UnitSimplex,
};
