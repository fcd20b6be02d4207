//! Maximum clique search.
//!
//! Branch and bound over vertices in increasing index order, pruned with a
//! greedy-coloring upper bound. Because candidates are expanded in ascending
//! order and the incumbent only changes on strict improvement, the result is
//! the lexicographically smallest maximum clique.

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{AeqError, Result};
use crate::geometry::UnitDistanceGraph;

pub const DEFAULT_CLIQUE_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueMode {
    /// Exact search, refused above `limit` vertices.
    Exact { limit: usize },
    /// Greedy maximal clique; never refused, never certified maximum.
    Heuristic,
}

impl Default for CliqueMode {
    fn default() -> Self {
        CliqueMode::Exact {
            limit: DEFAULT_CLIQUE_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub vertices: Vec<usize>,
    pub optimal: bool,
}

pub fn max_clique(g: &UnitDistanceGraph) -> Result<Vec<usize>> {
    find_clique(g, CliqueMode::default()).map(|r| r.vertices)
}

pub fn find_clique(g: &UnitDistanceGraph, mode: CliqueMode) -> Result<CliqueResult> {
    match mode {
        CliqueMode::Exact { limit } => {
            let n = g.vertex_count();
            if n > limit {
                return Err(AeqError::CliqueLimit { n, limit });
            }
            let mut search = Search {
                g,
                current: Vec::new(),
                best: Vec::new(),
            };
            search.expand(Bitset::full(n));
            Ok(CliqueResult {
                vertices: search.best,
                optimal: true,
            })
        }
        CliqueMode::Heuristic => Ok(CliqueResult {
            vertices: greedy_clique(g),
            optimal: false,
        }),
    }
}

struct Search<'a> {
    g: &'a UnitDistanceGraph,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, mut cand: Bitset) {
        while let Some(v) = cand.first() {
            let have = self.current.len();
            if have + cand.count() <= self.best.len() || have + color_bound(self.g, &cand) <= self.best.len() {
                return;
            }
            let mut next = cand.intersection(self.g.neighbours(v));
            // Only vertices after v: earlier ones were already expanded.
            for u in next.clone().iter().take_while(|&u| u < v) {
                next.remove(u);
            }
            self.current.push(v);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.remove(v);
        }
    }
}

/// Number of classes in a greedy coloring of the subgraph induced on `set`.
fn color_bound(g: &UnitDistanceGraph, set: &Bitset) -> usize {
    let mut uncolored = set.clone();
    let mut colors = 0;
    while !uncolored.is_empty() {
        colors += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            uncolored.remove(v);
            avail.remove(v);
            avail.difference_with(g.neighbours(v));
        }
    }
    colors
}

/// Adds vertices in order of decreasing degree (ties by index) whenever they
/// extend the current clique.
fn greedy_clique(g: &UnitDistanceGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Lexicographically smallest maximum clique by subset enumeration.
    fn brute_force(g: &UnitDistanceGraph) -> Vec<usize> {
        let n = g.vertex_count();
        let mut best: Vec<usize> = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.len() >= best.len() && g.is_clique(&set) && (set.len() > best.len() || set < best) {
                best = set;
            }
        }
        best
    }

    #[test]
    fn complete_graph() {
        assert_eq!(
            max_clique(&UnitDistanceGraph::complete(5)).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn empty_graph_has_singleton_cliques() {
        let g = UnitDistanceGraph::from_edges(4, &[]).unwrap();
        assert_eq!(max_clique(&g).unwrap(), vec![0]);
        let g = UnitDistanceGraph::from_edges(0, &[]).unwrap();
        assert!(max_clique(&g).unwrap().is_empty());
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // Two triangles: {1,2,3} and {0,4,5}.
        let g = UnitDistanceGraph::from_edges(6, &[(1, 2), (2, 3), (1, 3), (0, 4), (4, 5), (0, 5)]).unwrap();
        assert_eq!(max_clique(&g).unwrap(), vec![0, 4, 5]);
    }

    #[test]
    fn limit_and_heuristic() {
        let g = UnitDistanceGraph::complete(5);
        assert!(matches!(
            find_clique(&g, CliqueMode::Exact { limit: 4 }),
            Err(AeqError::CliqueLimit { n: 5, limit: 4 })
        ));
        let r = find_clique(&g, CliqueMode::Heuristic).unwrap();
        assert!(!r.optimal);
        assert_eq!(r.vertices.len(), 5);
    }

    proptest! {
        #[test]
        fn matches_enumeration(n in 1usize..=11, bits in proptest::collection::vec(any::<bool>(), 55), dense in any::<bool>()) {
            let mut edges = Vec::new();
            let mut b = bits.iter().cycle();
            for i in 0..n {
                for j in (i + 1)..n {
                    let keep = *b.next().unwrap() || (dense && *b.next().unwrap());
                    if keep {
                        edges.push((i, j));
                    }
                }
            }
            let g = UnitDistanceGraph::from_edges(n, &edges).unwrap();
            let got = max_clique(&g).unwrap();
            prop_assert!(g.is_clique(&got));
            prop_assert_eq!(got, brute_force(&g));
            let heur = find_clique(&g, CliqueMode::Heuristic).unwrap().vertices;
            prop_assert!(g.is_clique(&heur));
        }
    }
}
