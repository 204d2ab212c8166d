//! Systems whose behaviour forces an exponentially large temperature.
//!
//! Stage `i` has four tiles over glues `Aᵢ, A′ᵢ, A″ᵢ` (east–west) and
//! `B′ᵢ, B″ᵢ` (north–south). The two light tiles bind through all of their
//! labelled sides; the two dark tiles must not:
//!
//! ```text
//! stage 1        A′₁ + B′₁ ≥ τ > A₁ + B′₁        A″₁ + B″₁ ≥ τ > A′₁ + B″₁
//! stage i ≥ 2    A′ᵢ + Aᵢ₋₁ + B′ᵢ ≥ τ > A″ᵢ₋₁ + Aᵢ + B′ᵢ
//!                A″ᵢ + Aᵢ₋₁ + B″ᵢ ≥ τ > A″ᵢ₋₁ + A′ᵢ + B″ᵢ
//! ```
//!
//! Together these force `A″ᵢ ≥ Aᵢ + 2ⁱ`, and since no single side of a
//! light tile binds on its own, `τ > A″ₙ ≥ 2ⁿ`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::direction::{DirSet, Direction};
use crate::error::{Error, Result};
use crate::family::CoopFamily;
use crate::glue::{Axis, GlueId, GlueTable};
use crate::synth::{self, IneqSystem, SynthResult};
use crate::tile::{SfTas, StrengthAssignment, Tas, TileSet, TileType};

/// How dark tiles treat their north side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NorthMode {
    /// North is null; dark tiles never bind.
    #[default]
    Null,
    /// Dark tiles share a north glue that binds on its own, so every side set
    /// containing north cooperates.
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    TopLight,
    TopDark,
    BottomLight,
    BottomDark,
}

impl Role {
    pub const ALL: [Role; 4] = [Role::TopLight, Role::TopDark, Role::BottomLight, Role::BottomDark];

    pub fn is_light(self) -> bool {
        matches!(self, Role::TopLight | Role::BottomLight)
    }

    fn tag(self) -> &'static str {
        match self {
            Role::TopLight => "top-light",
            Role::TopDark => "top-dark",
            Role::BottomLight => "bottom-light",
            Role::BottomDark => "bottom-dark",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageGlues {
    pub a: GlueId,
    pub a1: GlueId,
    pub a2: GlueId,
    pub b1: GlueId,
    pub b2: GlueId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConstraint {
    pub stage: usize,
    pub role: Role,
    pub glues: Vec<GlueId>,
    /// `Σ ≥ τ` when binding, `Σ < τ` otherwise.
    pub binding: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSystem {
    pub n: usize,
    pub mode: NorthMode,
    pub sf: SfTas,
    /// `stages[i - 1]` holds the labels of stage `i`.
    pub stages: Vec<StageGlues>,
    pub north: Option<GlueId>,
}

pub fn gen_witness(n: usize) -> WitnessSystem {
    gen_witness_with(n, NorthMode::Null)
}

pub fn gen_witness_with(n: usize, mode: NorthMode) -> WitnessSystem {
    assert!(n >= 1, "at least one stage");
    let mut g = GlueTable::new();
    let ew = |g: &mut GlueTable, s: String| g.intern(&s, Axis::EW).expect("fresh label");
    let stages: Vec<StageGlues> = (1..=n)
        .map(|i| StageGlues {
            a: ew(&mut g, format!("A{i}")),
            a1: ew(&mut g, format!("A'{i}")),
            a2: ew(&mut g, format!("A''{i}")),
            b1: g.intern(&format!("B'{i}"), Axis::NS).expect("fresh label"),
            b2: g.intern(&format!("B''{i}"), Axis::NS).expect("fresh label"),
        })
        .collect();
    let north = match mode {
        NorthMode::Null => None,
        NorthMode::Strong => Some(g.intern("north", Axis::NS).expect("fresh label")),
    };
    let mut tiles = Vec::with_capacity(4 * n);
    let mut coop = Vec::with_capacity(4 * n);
    for (k, st) in stages.iter().enumerate() {
        let prev = k.checked_sub(1).map(|p| stages[p]);
        for role in Role::ALL {
            let (w, s, e) = match role {
                Role::TopLight => (prev.map(|p| p.a), st.b1, st.a1),
                Role::BottomLight => (prev.map(|p| p.a), st.b2, st.a2),
                Role::TopDark => (prev.map(|p| p.a2), st.b1, st.a),
                Role::BottomDark => (prev.map(|p| p.a2), st.b2, st.a1),
            };
            let w = w.unwrap_or(GlueId::NULL);
            let nth = if role.is_light() { GlueId::NULL } else { north.unwrap_or(GlueId::NULL) };
            tiles.push(TileType::new(format!("{}-{}", role.tag(), k + 1), [nth, e, s, w]));
            let sides: DirSet = [Direction::E, Direction::S, Direction::W]
                .into_iter()
                .filter(|d| !(*d == Direction::W && w.is_null()))
                .collect();
            coop.push(if role.is_light() {
                CoopFamily::generated_by(&[sides])
            } else if north.is_some() {
                CoopFamily::generated_by(&[DirSet::from_iter([Direction::N])])
            } else {
                CoopFamily::EMPTY
            });
        }
    }
    let tileset = TileSet::new(g, tiles).expect("well-formed witness tiles");
    let sf = SfTas::new(tileset, 0, coop).expect("one family per tile");
    WitnessSystem {
        n,
        mode,
        sf,
        stages,
        north,
    }
}

impl WitnessSystem {
    pub fn tile_count(&self) -> usize {
        self.sf.tileset.len()
    }

    /// The defining inequalities, one per tile, read off the tiles' east,
    /// south and west sides.
    pub fn constraints(&self) -> Vec<WitnessConstraint> {
        self.sf
            .tileset
            .tiles()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let role = Role::ALL[i % 4];
                WitnessConstraint {
                    stage: i / 4 + 1,
                    role,
                    glues: [Direction::W, Direction::S, Direction::E]
                        .iter()
                        .map(|d| t.glue(*d))
                        .filter(|g| !g.is_null())
                        .collect(),
                    binding: role.is_light(),
                }
            })
            .collect()
    }

    pub fn constraints_hold(&self, a: &StrengthAssignment) -> bool {
        self.constraints().iter().all(|c| {
            let sum: BigUint = c.glues.iter().map(|g| a.strength(*g).cloned().unwrap_or_default()).sum();
            (sum >= *a.temperature()) == c.binding
        })
    }

    /// `A″ᵢ ≥ Aᵢ + 2ⁱ` for every stage.
    pub fn gap_invariant(&self, a: &StrengthAssignment) -> bool {
        self.stages.iter().enumerate().all(|(k, st)| {
            let v = |g: GlueId| a.strength(g).cloned().unwrap_or_default();
            v(st.a2) >= v(st.a) + (BigUint::one() << (k + 1))
        })
    }

    pub fn system(&self) -> IneqSystem {
        synth::build_system(&self.sf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// Every temperature in `1..below` was tried.
    pub below: u64,
    pub max_strength: u64,
    pub nodes: u64,
    pub counterexample: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub n: usize,
    pub tas: Tas,
    pub tau: BigUint,
    pub tau_at_least: bool,
    pub invariant: bool,
    pub constraints: bool,
    pub refutation: Option<Refutation>,
}

impl LowerBoundReport {
    pub fn passed(&self) -> bool {
        self.tau_at_least
            && self.invariant
            && self.constraints
            && self.refutation.as_ref().is_none_or(|r| r.counterexample.is_none())
    }
}

/// Largest stage count whose smaller temperatures are refuted exhaustively.
pub const REFUTE_UP_TO: usize = 2;

pub fn verify_lower_bound(n: usize) -> Result<LowerBoundReport> {
    let w = gen_witness(n);
    let tas = match synth::synthesize(&w.sf)? {
        SynthResult::Feasible(s) => s.tas,
        SynthResult::Infeasible(why) => {
            return Err(Error::Internal(format!("witness system infeasible: {why:?}")));
        }
    };
    let a = &tas.assignment;
    let tau = a.temperature().clone();
    let refutation = (n <= REFUTE_UP_TO).then(|| {
        let below = 1u64 << n;
        refute_below(&w.system(), below, 4u64.pow(n as u32))
    });
    Ok(LowerBoundReport {
        n,
        tau_at_least: tau >= BigUint::one() << n,
        invariant: w.gap_invariant(a),
        constraints: w.constraints_hold(a),
        tau,
        refutation,
        tas,
    })
}

/// Searches every integer assignment with `1 ≤ τ < below` and strengths
/// `≤ max_strength` for one satisfying every row of `sys`.
pub fn refute_below(sys: &IneqSystem, below: u64, max_strength: u64) -> Refutation {
    let mut nodes = 0;
    let mut counterexample = None;
    for tau in 1..below {
        let mut found = None;
        nodes += for_each_solution(sys, tau, max_strength, &mut |v| {
            found = Some(v.to_vec());
            false
        });
        if found.is_some() {
            counterexample = found;
            break;
        }
    }
    Refutation {
        below,
        max_strength,
        nodes,
        counterexample,
    }
}

/// Depth-first enumeration of integer solutions at a fixed temperature;
/// `visit` receives `(s₁ … s_u, τ)` and returns whether to continue. Returns
/// the number of search nodes.
pub fn for_each_solution(
    sys: &IneqSystem,
    tau: u64,
    max_strength: u64,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> u64 {
    let u = sys.num_glues;
    // rows become decidable once their highest glue variable is assigned
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); u + 1];
    for (i, (_, r)) in sys.normalized().iter().enumerate() {
        let last = r.coeffs[..u].iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
        by_last[last].push(i);
    }
    let rows: Vec<_> = sys.normalized().into_iter().map(|(_, r)| r.clone()).collect();
    let holds = |vals: &[u64], i: usize| {
        let r = &rows[i];
        let sum: i128 = r.coeffs[..u]
            .iter()
            .zip(vals)
            .map(|(&c, &v)| i128::from(c) * i128::from(v))
            .sum::<i128>()
            - i128::from(tau);
        match r.sense {
            synth::Sense::AtLeastZero => sum >= 0,
            synth::Sense::AtMostMinusOne => sum <= -1,
        }
    };
    let mut vals = vec![0u64; u + 1];
    vals[u] = tau;
    if !by_last[0].iter().all(|&i| holds(&vals, i)) {
        return 1;
    }
    let mut nodes = 0;
    fn go(
        k: usize,
        u: usize,
        max: u64,
        vals: &mut Vec<u64>,
        nodes: &mut u64,
        by_last: &[Vec<usize>],
        holds: &dyn Fn(&[u64], usize) -> bool,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        if k == u {
            return visit(vals);
        }
        for v in 0..=max {
            *nodes += 1;
            vals[k] = v;
            if by_last[k + 1].iter().all(|&i| holds(vals, i))
                && !go(k + 1, u, max, vals, nodes, by_last, holds, visit)
            {
                return false;
            }
        }
        true
    }
    go(0, u, max_strength, &mut vals, &mut nodes, &by_last, &holds, visit);
    nodes
}

/// A concrete assignment with `Aᵢ = 3^{i−1}`, `A′ᵢ = 2Aᵢ`, `A″ᵢ = 3Aᵢ`; the
/// `B` labels and τ come from minimising τ over the remaining system.
pub fn reference_assignment(n: usize) -> Result<StrengthAssignment> {
    reference_assignment_with(n, NorthMode::Null)
}

pub fn reference_assignment_with(n: usize, mode: NorthMode) -> Result<StrengthAssignment> {
    let w = gen_witness_with(n, mode);
    let sys = w.system();
    let var = |g: GlueId| g.index() - 1;
    let mut fixed = Vec::new();
    let mut pow = BigInt::one();
    for st in &w.stages {
        fixed.push((var(st.a), pow.clone()));
        fixed.push((var(st.a1), &pow * 2));
        fixed.push((var(st.a2), &pow * 3));
        pow *= 3;
    }
    let (_, x) = synth::minimize_tau_with(&sys, &fixed)
        .ok_or_else(|| Error::Internal("reference pattern admits no completion".into()))?;
    let mut ints: Vec<BigUint> = x
        .iter()
        .map(|q| {
            // difference constraints with integral data have integral vertices
            if q.is_integer() {
                q.to_integer().to_biguint().ok_or_else(|| Error::Internal("negative value".into()))
            } else {
                Err(Error::Internal(format!("fractional vertex {q}")))
            }
        })
        .collect::<Result<_>>()?;
    let tau = ints.pop().expect("temperature variable");
    if let Some(nv) = w.north {
        ints[var(nv)] = tau.clone();
    }
    let strengths = std::iter::once(BigUint::zero()).chain(ints).collect();
    let a = StrengthAssignment::new(strengths, tau)?;
    let tas = Tas::new(w.sf.tileset.clone(), 0, a.clone())?;
    if !tas.is_locally_equivalent_to(&w.sf) || !w.constraints_hold(&a) {
        return Err(Error::Internal("reference assignment violates the witness".into()));
    }
    Ok(a)
}

/// Temperature as `u64`, when it fits.
pub fn tau_u64(a: &StrengthAssignment) -> Option<u64> {
    a.temperature().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_tiles_per_stage() {
        for n in [1, 2, 5] {
            assert_eq!(gen_witness(n).tile_count(), 4 * n);
        }
    }

    #[test]
    fn stage_one_constraints_are_pairs() {
        let w = gen_witness(1);
        let names = |c: &WitnessConstraint| -> Vec<String> {
            let mut v: Vec<String> = c.glues.iter().map(|g| w.sf.tileset.glues().name(*g).to_string()).collect();
            v.sort();
            v
        };
        let cs = w.constraints();
        assert_eq!(names(&cs[0]), ["A'1", "B'1"]);
        assert!(cs[0].binding);
        assert_eq!(names(&cs[1]), ["A1", "B'1"]);
        assert!(!cs[1].binding);
        assert_eq!(names(&cs[2]), ["A''1", "B''1"]);
        assert_eq!(names(&cs[3]), ["A'1", "B''1"]);
    }

    #[test]
    fn later_stages_are_three_cooperative() {
        let w = gen_witness(3);
        for (i, f) in w.sf.coop.iter().enumerate().skip(4) {
            if Role::ALL[i % 4].is_light() {
                let mins = crate::family::minimal_elements(*f).unwrap();
                assert_eq!(mins.len(), 1);
                assert_eq!(mins[0].len(), 3);
            } else {
                assert!(f.is_empty());
            }
        }
        let cs = w.constraints();
        let name = |g: GlueId| w.sf.tileset.glues().name(g).to_string();
        let top_dark_2: Vec<String> = cs[5].glues.iter().map(|g| name(*g)).collect();
        assert_eq!(top_dark_2, ["A''1", "B'2", "A2"]);
    }

    #[test]
    fn small_lower_bounds() {
        for n in 1..=2 {
            let r = verify_lower_bound(n).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.refutation.unwrap().counterexample.is_none());
        }
    }

    #[test]
    fn every_small_solution_keeps_the_gap() {
        for n in 1..=2 {
            let w = gen_witness(n);
            let sys = w.system();
            let mut count = 0;
            for tau in 1..=(1u64 << n) + 8 {
                for_each_solution(&sys, tau, tau, &mut |v| {
                    let (tau, s) = v.split_last().unwrap();
                    let a = StrengthAssignment::from_u64(s, *tau).unwrap();
                    assert!(w.gap_invariant(&a) && w.constraints_hold(&a));
                    count += 1;
                    true
                });
            }
            assert!(count > 0);
        }
    }

    #[test]
    fn reference_values_follow_the_pattern() {
        for n in 1..=4 {
            let a = reference_assignment(n).unwrap();
            let w = gen_witness(n);
            assert!(w.gap_invariant(&a));
            let st = w.stages[n - 1];
            let a_n = BigUint::from(3u32).pow(n as u32 - 1);
            assert_eq!(a.strength(st.a).unwrap(), &a_n);
            assert_eq!(a.strength(st.a2).unwrap(), &(a_n * 3u32));
        }
        let strong = reference_assignment_with(3, NorthMode::Strong).unwrap();
        assert!(gen_witness_with(3, NorthMode::Strong).constraints_hold(&strong));
    }

    #[test]
    fn strong_north_is_still_feasible() {
        let w = gen_witness_with(2, NorthMode::Strong);
        let out = synth::synthesize(&w.sf).unwrap();
        let tas = out.tas().unwrap();
        assert!(tas.assignment.temperature() >= &BigUint::from(4u32));
    }
}
