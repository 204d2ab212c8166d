//! Binding graphs and τ-stability.
//!
//! Two routes compute the minimum cut: exhaustive enumeration of every
//! bipartition (used up to [`EXHAUSTIVE_LIMIT`] tiles) and repeated
//! Edmonds–Karp max-flow from a fixed source. Both are public so each can be
//! checked against the other.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::assembly::Assembly;
use crate::direction::Direction;
use crate::tile::{StrengthAssignment, TileType};

/// Largest assembly for which [`is_tau_stable`] enumerates cuts directly.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingGraph {
    pub vertices: usize,
    /// `(u, v, strength)` with `u < v`; only interacting pairs appear.
    pub edges: Vec<(usize, usize, BigUint)>,
}

impl BindingGraph {
    /// Vertices are numbered in ascending position order. Unknown glues are
    /// treated as strength 0.
    pub fn new(alpha: &Assembly, tiles: &[TileType], a: &StrengthAssignment) -> BindingGraph {
        let positions: Vec<_> = alpha.positions().collect();
        let index = |p| positions.binary_search(&p).ok();
        let mut edges = Vec::new();
        for (i, (p, t)) in alpha.iter().enumerate() {
            for d in [Direction::E, Direction::N] {
                let q = p.step(d);
                let (Some(j), Some(u)) = (index(q), alpha.get(q)) else {
                    continue;
                };
                let g = tiles[t].glue(d);
                if g.is_null() || g != tiles[u].glue(d.opposite()) {
                    continue;
                }
                let w = a.strength(g).cloned().unwrap_or_default();
                if !w.is_zero() {
                    edges.push((i.min(j), i.max(j), w));
                }
            }
        }
        BindingGraph {
            vertices: positions.len(),
            edges,
        }
    }

    /// Minimum weight over all nontrivial cuts, by enumerating the
    /// `2^(n-1) - 1` bipartitions with vertex 0 fixed on one side. `None` for
    /// graphs with fewer than two vertices.
    pub fn min_cut_exhaustive(&self) -> Option<BigUint> {
        let n = self.vertices;
        if n < 2 {
            return None;
        }
        assert!(n <= 24, "exhaustive cut enumeration is limited to 24 vertices");
        let mut best: Option<BigUint> = None;
        for side in 0u32..(1 << (n - 1)) - 1 {
            // vertex 0 is on side A; bit i-1 set means vertex i is on side A
            let in_a = |v: usize| v == 0 || side & (1 << (v - 1)) != 0;
            let w: BigUint = self
                .edges
                .iter()
                .filter(|(u, v, _)| in_a(*u) != in_a(*v))
                .map(|(_, _, w)| w)
                .sum();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
        best
    }

    /// Global minimum cut as `min_t maxflow(0, t)`.
    pub fn min_cut_flow(&self) -> Option<BigUint> {
        if self.vertices < 2 {
            return None;
        }
        (1..self.vertices).map(|t| self.max_flow(0, t)).min()
    }

    /// Edmonds–Karp on the undirected graph.
    pub fn max_flow(&self, source: usize, sink: usize) -> BigUint {
        let n = self.vertices;
        let mut residual = vec![vec![BigUint::zero(); n]; n];
        let mut adj = vec![Vec::new(); n];
        for (u, v, w) in &self.edges {
            if residual[*u][*v].is_zero() {
                adj[*u].push(*v);
                adj[*v].push(*u);
            }
            residual[*u][*v] += w;
            residual[*v][*u] += w;
        }
        let mut total = BigUint::zero();
        loop {
            let mut parent = vec![usize::MAX; n];
            parent[source] = source;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if parent[v] == usize::MAX && !residual[u][v].is_zero() {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink] == usize::MAX {
                return total;
            }
            let mut bottleneck: Option<BigUint> = None;
            let mut v = sink;
            while v != source {
                let u = parent[v];
                if bottleneck.as_ref().is_none_or(|b| residual[u][v] < *b) {
                    bottleneck = Some(residual[u][v].clone());
                }
                v = u;
            }
            let f = bottleneck.expect("path has at least one edge");
            let mut v = sink;
            while v != source {
                let u = parent[v];
                residual[u][v] -= &f;
                residual[v][u] += &f;
                v = u;
            }
            total += f;
        }
    }
}

/// Whether every cut of the binding graph has weight at least the
/// temperature. Single-tile assemblies are always stable.
pub fn is_tau_stable(alpha: &Assembly, tiles: &[TileType], a: &StrengthAssignment) -> bool {
    if alpha.len() <= EXHAUSTIVE_LIMIT {
        is_tau_stable_exhaustive(alpha, tiles, a)
    } else {
        is_tau_stable_flow(alpha, tiles, a)
    }
}

pub fn is_tau_stable_exhaustive(alpha: &Assembly, tiles: &[TileType], a: &StrengthAssignment) -> bool {
    BindingGraph::new(alpha, tiles, a)
        .min_cut_exhaustive()
        .is_none_or(|c| c >= *a.temperature())
}

pub fn is_tau_stable_flow(alpha: &Assembly, tiles: &[TileType], a: &StrengthAssignment) -> bool {
    BindingGraph::new(alpha, tiles, a)
        .min_cut_flow()
        .is_none_or(|c| c >= *a.temperature())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::Pos;
    use crate::tile::TileSet;

    #[test]
    fn single_tile_is_stable() {
        let ts = TileSet::from_labels(&[("t", ["a", "b", "c", "d"])]).unwrap();
        let a = StrengthAssignment::from_u64(&[0, 0, 0, 0], 5).unwrap();
        let alpha = Assembly::single(Pos::ORIGIN, 0);
        assert!(is_tau_stable(&alpha, ts.tiles(), &a));
        assert!(is_tau_stable_flow(&alpha, ts.tiles(), &a));
    }

    #[test]
    fn domino_joined_at_temperature() {
        let ts = TileSet::from_labels(&[("l", ["-", "x", "-", "-"]), ("r", ["-", "-", "-", "x"])]).unwrap();
        let alpha = Assembly::from_tiles([(Pos::new(0, 0), 0), (Pos::new(1, 0), 1)]);
        let at = StrengthAssignment::from_u64(&[3], 3).unwrap();
        let below = StrengthAssignment::from_u64(&[2], 3).unwrap();
        assert!(is_tau_stable(&alpha, ts.tiles(), &at));
        assert!(!is_tau_stable(&alpha, ts.tiles(), &below));
        assert!(!is_tau_stable_flow(&alpha, ts.tiles(), &below));
    }

    #[test]
    fn ring_of_four_unit_bonds_is_two_stable() {
        // (0,1) B --h-- C (1,1)
        //       |v      |w
        // (0,0) A --g-- D (1,0)
        let ts = TileSet::from_labels(&[
            ("A", ["v", "g", "-", "-"]),
            ("B", ["-", "h", "v", "-"]),
            ("C", ["-", "-", "w", "h"]),
            ("D", ["w", "-", "-", "g"]),
        ])
        .unwrap();
        let alpha = Assembly::from_tiles([
            (Pos::new(0, 0), 0),
            (Pos::new(0, 1), 1),
            (Pos::new(1, 1), 2),
            (Pos::new(1, 0), 3),
        ]);
        let a = StrengthAssignment::from_u64(&[1, 1, 1, 1], 2).unwrap();
        let g = BindingGraph::new(&alpha, ts.tiles(), &a);
        assert_eq!(g.edges.len(), 4);
        // 7 nontrivial cuts of a 4-cycle, each crossing at least two edges
        assert_eq!(g.min_cut_exhaustive(), Some(BigUint::from(2u32)));
        assert_eq!(g.min_cut_flow(), Some(BigUint::from(2u32)));
        assert!(is_tau_stable(&alpha, ts.tiles(), &a));
        let hot = StrengthAssignment::from_u64(&[1, 1, 1, 1], 3).unwrap();
        assert!(!is_tau_stable(&alpha, ts.tiles(), &hot));
    }
}
