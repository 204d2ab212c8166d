//! Seeded assembly dynamics and the unique-assembly decision procedure.
//!
//! All dynamics run on a [`SimBehavior`]: per-tile glues plus cooperation
//! families. A standard system is simulated through its derived families,
//! which is exact because attachment of a single tile to a stable assembly is
//! stable iff the matched strengths reach the temperature.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::assembly::{Assembly, Pos, Shape};
use crate::direction::{DirSet, Direction};
use crate::family::CoopFamily;
use crate::glue::GlueId;
use crate::stability::is_tau_stable;
use crate::tile::{SfTas, Tas};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttachEvent {
    pub position: Pos,
    pub tile: usize,
    /// Sides whose glue matches the abutting glue of an existing neighbour.
    pub matched: DirSet,
}

/// The per-tile view of a system that its dynamics depend on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimBehavior {
    pub glues: Vec<[GlueId; 4]>,
    pub coop: Vec<CoopFamily>,
    pub seed: usize,
}

impl From<&SfTas> for SimBehavior {
    fn from(sf: &SfTas) -> Self {
        SimBehavior {
            glues: sf.tileset.tiles().iter().map(|t| t.glues).collect(),
            coop: sf.coop.clone(),
            seed: sf.seed,
        }
    }
}

impl From<&Tas> for SimBehavior {
    fn from(t: &Tas) -> Self {
        SimBehavior {
            glues: t.tileset.tiles().iter().map(|t| t.glues).collect(),
            coop: t.coop_families(),
            seed: t.seed,
        }
    }
}

impl SimBehavior {
    pub fn tile_count(&self) -> usize {
        self.glues.len()
    }

    pub fn seed_assembly(&self) -> Assembly {
        Assembly::single(Pos::ORIGIN, self.seed)
    }

    /// Sides of `tile` that would bind to existing neighbours if it were
    /// placed at `p`. Null glues never match.
    pub fn matched(&self, alpha: &Assembly, p: Pos, tile: usize) -> DirSet {
        let g = &self.glues[tile];
        Direction::ALL
            .into_iter()
            .filter(|d| {
                let own = g[d.index()];
                !own.is_null()
                    && alpha
                        .get(p.step(*d))
                        .is_some_and(|u| self.glues[u][d.opposite().index()] == own)
            })
            .collect()
    }

    fn event_at(&self, alpha: &Assembly, p: Pos, tile: usize) -> Option<AttachEvent> {
        let matched = self.matched(alpha, p, tile);
        (!matched.is_empty() && self.coop[tile].contains(matched)).then_some(AttachEvent {
            position: p,
            tile,
            matched,
        })
    }
}

/// Every stable single-tile attachment, ordered by position then tile index.
pub fn frontier(alpha: &Assembly, b: &SimBehavior) -> Vec<AttachEvent> {
    alpha
        .perimeter()
        .into_iter()
        .flat_map(|p| (0..b.tile_count()).filter_map(move |t| b.event_at(alpha, p, t)))
        .collect()
}

/// Frontier of a standard system computed from first principles: `(p, t)`
/// is an event iff placing `t` at `p` leaves a τ-stable assembly. `alpha`
/// must itself be τ-stable.
pub fn frontier_by_stability(alpha: &Assembly, tas: &Tas) -> Vec<AttachEvent> {
    let b = SimBehavior::from(tas);
    let tiles = tas.tileset.tiles();
    let mut out = Vec::new();
    for p in alpha.perimeter() {
        for t in 0..tiles.len() {
            let matched = b.matched(alpha, p, t);
            let mut beta = alpha.clone();
            beta.place(p, t);
            // a tile with no interacting side is a disconnected binding graph
            if !matched.is_empty() && is_tau_stable(&beta, tiles, &tas.assignment) {
                out.push(AttachEvent {
                    position: p,
                    tile: t,
                    matched,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halt {
    /// No tile can attach.
    Terminal,
    /// The cell budget was reached while attachments were still possible.
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Growth {
    pub assembly: Assembly,
    pub halt: Halt,
    /// Attachments in the order they were applied.
    pub events: Vec<AttachEvent>,
}

/// Grows from the seed by always applying the first frontier event.
pub fn grow_greedy(b: &SimBehavior, max_cells: usize) -> Growth {
    assert!(max_cells >= 1, "max_cells must be positive");
    let mut alpha = b.seed_assembly();
    let mut events = Vec::new();
    loop {
        let next = alpha
            .perimeter()
            .into_iter()
            .find_map(|p| (0..b.tile_count()).find_map(|t| b.event_at(&alpha, p, t)));
        let Some(e) = next else {
            return Growth {
                assembly: alpha,
                halt: Halt::Terminal,
                events,
            };
        };
        if alpha.len() >= max_cells {
            return Growth {
                assembly: alpha,
                halt: Halt::Overflow,
                events,
            };
        }
        alpha.place(e.position, e.tile);
        events.push(e);
    }
}

/// Why a system fails to uniquely assemble a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divergence {
    /// The seed (at the origin) is not a cell of the shape.
    SeedOutside,
    /// A producible assembly admits an attachment outside the shape.
    Escape { assembly: Assembly, event: AttachEvent },
    /// Growth stopped on an assembly whose domain differs from the shape.
    WrongDomain { assembly: Assembly },
    /// A tile other than the one in the candidate terminal assembly can
    /// attach at `event.position` in a producible assembly.
    Competing {
        assembly: Assembly,
        expected: usize,
        event: AttachEvent,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniqueVerdict {
    /// Directed, and the unique terminal assembly has the shape's domain.
    Unique(Assembly),
    NotUnique(Divergence),
}

impl UniqueVerdict {
    pub fn is_unique(&self) -> bool {
        matches!(self, UniqueVerdict::Unique(_))
    }
}

/// Decides whether the system (seed at the origin) uniquely self-assembles
/// `s`.
pub fn unique_shape(b: &SimBehavior, s: &Shape) -> bool {
    check_unique(b, s).is_unique()
}

/// [`unique_shape`] with a certificate.
///
/// 1. Grow a candidate greedily, failing as soon as any producible
///    assembly on the way has an attachment outside `s`.
/// 2. The candidate must be terminal with domain exactly `s`.
/// 3. For each non-seed cell `p`, grow the candidate's own tiles everywhere
///    except `p` as far as possible; no other tile type may be attachable at
///    `p` against that assembly.
///
/// Attachment is monotone in the neighbourhood, so the first wrong
/// attachment in any assembly sequence would be enabled against the
/// assembly of step 3, and conversely every assembly built in step 3 is
/// producible.
pub fn check_unique(b: &SimBehavior, s: &Shape) -> UniqueVerdict {
    use UniqueVerdict::NotUnique;
    if !s.contains(Pos::ORIGIN) {
        return NotUnique(Divergence::SeedOutside);
    }
    let mut alpha = b.seed_assembly();
    loop {
        let events = frontier(&alpha, b);
        if let Some(e) = events.iter().find(|e| !s.contains(e.position)) {
            return NotUnique(Divergence::Escape {
                assembly: alpha,
                event: e.clone(),
            });
        }
        let Some(e) = events.into_iter().next() else {
            break;
        };
        alpha.place(e.position, e.tile);
    }
    if alpha.len() != s.len() {
        return NotUnique(Divergence::WrongDomain { assembly: alpha });
    }
    for p in s.cells().filter(|p| *p != Pos::ORIGIN) {
        let expected = alpha.get(p).expect("domain equals shape");
        let partial = regrow_avoiding(b, &alpha, p);
        for t in (0..b.tile_count()).filter(|t| *t != expected) {
            if let Some(event) = b.event_at(&partial, p, t) {
                return NotUnique(Divergence::Competing {
                    assembly: partial,
                    expected,
                    event,
                });
            }
        }
    }
    debug_assert!(alpha
        .iter()
        .all(|(p, t)| p == Pos::ORIGIN || b.coop[t].contains(b.matched(&alpha, p, t))));
    UniqueVerdict::Unique(alpha)
}

/// Largest assembly producible from the seed using only `target`'s tiles in
/// their `target` positions, never occupying `hole`.
fn regrow_avoiding(b: &SimBehavior, target: &Assembly, hole: Pos) -> Assembly {
    let mut alpha = b.seed_assembly();
    let mut queue: VecDeque<Pos> = Pos::ORIGIN.neighbors().map(|(_, q)| q).collect();
    let mut pending: BTreeSet<Pos> = queue.iter().copied().collect();
    while let Some(q) = queue.pop_front() {
        pending.remove(&q);
        if q == hole || alpha.contains(q) {
            continue;
        }
        let Some(t) = target.get(q) else { continue };
        let m = b.matched(&alpha, q, t);
        if m.is_empty() || !b.coop[t].contains(m) {
            continue;
        }
        alpha.place(q, t);
        for (_, r) in q.neighbors() {
            if !alpha.contains(r) && pending.insert(r) {
                queue.push_back(r);
            }
        }
    }
    alpha
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    pub terminals: BTreeSet<Assembly>,
    /// Set when some producible assembly reached the budget with attachments
    /// still available.
    pub truncated: bool,
    /// Number of distinct producible assemblies visited.
    pub visited: usize,
}

/// Breadth-first closure of the single-attachment relation from the seed.
/// Exponential; intended as an oracle for small systems.
pub fn explore_all(b: &SimBehavior, cell_budget: usize) -> Exploration {
    assert!(cell_budget >= 1, "cell budget must be positive");
    let seed = b.seed_assembly();
    let mut seen: HashSet<Assembly> = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    let mut terminals = BTreeSet::new();
    let mut truncated = false;
    while let Some(alpha) = queue.pop_front() {
        let events = frontier(&alpha, b);
        if events.is_empty() {
            terminals.insert(alpha);
            continue;
        }
        if alpha.len() >= cell_budget {
            truncated = true;
            continue;
        }
        for e in events {
            let mut beta = alpha.clone();
            beta.place(e.position, e.tile);
            if seen.insert(beta.clone()) {
                queue.push_back(beta);
            }
        }
    }
    Exploration {
        terminals,
        truncated,
        visited: seen.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::upward_closure;
    use crate::tile::{StrengthAssignment, TileSet};
    use Direction::*;

    fn sf(specs: &[(&str, [&str; 4], &[&[Direction]])]) -> SimBehavior {
        let labels: Vec<(&str, [&str; 4])> = specs.iter().map(|(n, g, _)| (*n, *g)).collect();
        let ts = TileSet::from_labels(&labels).unwrap();
        let coop = specs
            .iter()
            .map(|(_, _, sets)| {
                let sets: Vec<DirSet> = sets.iter().map(|s| s.iter().copied().collect()).collect();
                upward_closure(&sets)
            })
            .collect();
        SimBehavior::from(&SfTas::new(ts, 0, coop).unwrap())
    }

    fn east_line() -> SimBehavior {
        sf(&[("t", ["-", "x", "-", "x"], &[&[W]])])
    }

    #[test]
    fn no_glue_seed_is_terminal() {
        let b = sf(&[("t", ["-", "-", "-", "-"], &[&[N]])]);
        assert!(frontier(&b.seed_assembly(), &b).is_empty());
        let g = grow_greedy(&b, 10);
        assert_eq!(g.halt, Halt::Terminal);
        assert_eq!(g.assembly.len(), 1);
        assert!(unique_shape(&b, &Shape::square(1).unwrap()));
        let ex = explore_all(&b, 5);
        assert_eq!(ex.terminals.len(), 1);
        assert!(!ex.truncated);
    }

    #[test]
    fn single_match_gives_one_event() {
        let b = sf(&[
            ("seed", ["-", "x", "-", "-"], &[]),
            ("r", ["-", "-", "-", "x"], &[&[W]]),
        ]);
        let f = frontier(&b.seed_assembly(), &b);
        assert_eq!(
            f,
            vec![AttachEvent {
                position: Pos::new(1, 0),
                tile: 1,
                matched: DirSet::EMPTY.with(W)
            }]
        );
    }

    #[test]
    fn competing_tiles_share_a_cell() {
        let b = sf(&[
            ("seed", ["-", "x", "-", "-"], &[]),
            ("r1", ["-", "-", "-", "x"], &[&[W]]),
            ("r2", ["a", "-", "-", "x"], &[&[W]]),
        ]);
        let f = frontier(&b.seed_assembly(), &b);
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|e| e.position == Pos::new(1, 0)));
        let domino = Shape::rectangle(2, 1).unwrap();
        assert!(!unique_shape(&b, &domino));
        let ex = explore_all(&b, 3);
        assert_eq!(ex.terminals.len(), 2);
    }

    #[test]
    fn infinite_line_overflows() {
        let b = east_line();
        let g = grow_greedy(&b, 5);
        assert_eq!(g.halt, Halt::Overflow);
        assert_eq!(g.assembly.len(), 5);
        assert!((0..5).all(|x| g.assembly.contains(Pos::new(x, 0))));
        assert!(!unique_shape(&b, &Shape::rectangle(4, 1).unwrap()));
        assert!(explore_all(&b, 5).truncated);
    }

    #[test]
    fn position_unique_square_is_directed() {
        // seed at (0,0); A east of it, B north of it, C cooperates on top right
        let b = sf(&[
            ("seed", ["n", "e", "-", "-"], &[]),
            ("A", ["p", "-", "-", "e"], &[&[W]]),
            ("B", ["-", "q", "n", "-"], &[&[S]]),
            ("C", ["-", "-", "p", "q"], &[&[S, W]]),
        ]);
        let g = grow_greedy(&b, 10);
        assert_eq!(g.halt, Halt::Terminal);
        let sq = Shape::square(2).unwrap();
        assert_eq!(g.assembly.domain(), sq);
        let ex = explore_all(&b, 5);
        assert_eq!(ex.terminals.len(), 1);
        assert_eq!(ex.terminals.iter().next(), Some(&g.assembly));
        assert!(unique_shape(&b, &sq));
    }

    #[test]
    fn wrong_tile_only_attachable_against_unreachable_neighbourhood() {
        // seed -x- A -y- B in a row; T could bind to B's west glue, but only at
        // A's cell, which is always filled before B exists.
        let b = sf(&[
            ("seed", ["-", "x", "-", "-"], &[]),
            ("A", ["-", "y", "-", "x"], &[&[W]]),
            ("B", ["-", "-", "-", "y"], &[&[W]]),
            ("T", ["-", "y", "-", "-"], &[&[E]]),
        ]);
        let line = Shape::rectangle(3, 1).unwrap();
        let ex = explore_all(&b, 4);
        assert_eq!(ex.terminals.len(), 1);
        assert!(!ex.truncated);
        assert!(unique_shape(&b, &line));
    }

    #[test]
    fn seed_outside_shape() {
        let b = east_line();
        let s = Shape::new([Pos::new(5, 5)]).unwrap();
        assert_eq!(
            check_unique(&b, &s),
            UniqueVerdict::NotUnique(Divergence::SeedOutside)
        );
    }

    #[test]
    fn strength_frontier_matches_family_frontier() {
        let ts = TileSet::from_labels(&[
            ("seed", ["n", "e", "-", "-"]),
            ("A", ["p", "-", "-", "e"]),
            ("B", ["-", "q", "n", "-"]),
            ("C", ["-", "-", "p", "q"]),
        ])
        .unwrap();
        let a = StrengthAssignment::from_u64(&[2, 2, 1, 1], 2).unwrap();
        let tas = Tas::new(ts, 0, a).unwrap();
        let b = SimBehavior::from(&tas);
        let g = grow_greedy(&b, 10);
        assert_eq!(g.assembly.len(), 4);
        let mut alpha = b.seed_assembly();
        for e in &g.events {
            assert_eq!(frontier(&alpha, &b), frontier_by_stability(&alpha, &tas));
            alpha.place(e.position, e.tile);
        }
        assert!(frontier_by_stability(&alpha, &tas).is_empty());
    }
}
