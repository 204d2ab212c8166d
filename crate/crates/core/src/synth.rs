//! Deciding whether a strength-free system is implementable, and producing
//! integer strengths and a temperature when it is.
//!
//! Each tile contributes one inequality per side subset `D`:
//! `Σ_{d∈D} s(glue(d)) − τ ≥ 0` when `D` is cooperative, `≤ −1` otherwise.
//! A rational vertex of that polytope is found with the exact simplex in
//! [`crate::lp`] and scaled to integers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::direction::DirSet;
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpOutcome};
use crate::tile::{SfTas, StrengthAssignment, Tas, TileSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sense {
    /// `Σ − τ ≥ 0`
    AtLeastZero,
    /// `Σ − τ ≤ −1`
    AtMostMinusOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqRow {
    pub tile: usize,
    pub dirs: DirSet,
    /// One coefficient per variable; glue id `g` is variable `g − 1` and the
    /// temperature is the last variable (coefficient always −1).
    pub coeffs: Vec<i8>,
    pub sense: Sense,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqSystem {
    /// Number of glue variables; the temperature is variable `num_glues`.
    pub num_glues: usize,
    pub rows: Vec<IneqRow>,
}

impl IneqSystem {
    pub fn num_vars(&self) -> usize {
        self.num_glues + 1
    }

    pub fn tau_var(&self) -> usize {
        self.num_glues
    }

    /// `Σ coeffs · values` for one row (the temperature term included).
    pub fn evaluate<T>(&self, row: &IneqRow, values: &[T]) -> T
    where
        T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + From<i8>,
    {
        row.coeffs
            .iter()
            .zip(values)
            .filter(|(c, _)| **c != 0)
            .fold(T::zero(), |acc, (c, v)| acc + T::from(*c) * v.clone())
    }

    pub fn row_holds(&self, row: &IneqRow, values: &[BigInt]) -> bool {
        let v = self.evaluate(row, values);
        match row.sense {
            Sense::AtLeastZero => !v.is_negative(),
            Sense::AtMostMinusOne => v <= -BigInt::one(),
        }
    }

    pub fn is_satisfied_by(&self, values: &[BigInt]) -> bool {
        values.len() == self.num_vars()
            && values.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| self.row_holds(r, values))
    }

    /// Distinct `(coeffs, sense)` pairs, each with the first raw row index
    /// producing it.
    pub fn normalized(&self) -> Vec<(usize, &IneqRow)> {
        let mut seen: BTreeMap<(&[i8], Sense), usize> = BTreeMap::new();
        for (i, r) in self.rows.iter().enumerate() {
            seen.entry((&r.coeffs, r.sense)).or_insert(i);
        }
        let mut out: Vec<_> = seen.into_values().map(|i| (i, &self.rows[i])).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureViolation {
    pub tile: usize,
    pub member: DirSet,
    pub superset: DirSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// Nonnegative strengths make every cooperation family upward closed.
    NotClosed(Vec<ClosureViolation>),
    /// Tiles whose family contains the empty side set, which would need a
    /// nonpositive temperature.
    EmptySetCooperates(Vec<usize>),
    /// Two raw rows with identical left-hand sides but opposite senses.
    Contradiction { at_least: usize, at_most: usize },
    /// Raw row indices with positive integer multipliers whose combination
    /// is contradictory (a Farkas certificate).
    Certificate(Vec<(usize, BigInt)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    /// Least common multiple of the denominators.
    pub lcm: BigInt,
    /// The rational solution times `lcm`.
    pub scaled: Vec<BigInt>,
    pub gcd: BigInt,
    /// `scaled / gcd`.
    pub reduced: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesis {
    pub tas: Tas,
    pub rational: Vec<BigRational>,
    pub integer: IntegerSolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthResult {
    Feasible(Box<Synthesis>),
    Infeasible(Infeasibility),
}

impl SynthResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SynthResult::Feasible(_))
    }

    pub fn tas(&self) -> Option<&Tas> {
        match self {
            SynthResult::Feasible(s) => Some(&s.tas),
            SynthResult::Infeasible(_) => None,
        }
    }
}

pub fn validate_closure(sf: &SfTas) -> Vec<ClosureViolation> {
    sf.coop
        .iter()
        .enumerate()
        .flat_map(|(tile, f)| {
            f.closure_violations()
                .map(move |(member, superset)| ClosureViolation { tile, member, superset })
        })
        .collect()
}

pub fn build_system(sf: &SfTas) -> IneqSystem {
    let u = sf.tileset.glues().non_null_count();
    let mut rows = Vec::with_capacity(16 * sf.tileset.len());
    for (tile, (t, fam)) in sf.tileset.tiles().iter().zip(&sf.coop).enumerate() {
        for dirs in DirSet::all() {
            let mut coeffs = vec![0i8; u + 1];
            for d in dirs.iter() {
                let g = t.glue(d);
                if !g.is_null() {
                    coeffs[g.index() - 1] += 1;
                }
            }
            coeffs[u] = -1;
            let sense = if fam.contains(dirs) {
                Sense::AtLeastZero
            } else {
                Sense::AtMostMinusOne
            };
            rows.push(IneqRow { tile, dirs, coeffs, sense });
        }
    }
    IneqSystem { num_glues: u, rows }
}

/// Rewrites the distinct rows as `A x ≤ b` over `x = (s, τ) ≥ 0`; returns
/// the program and the raw row index behind each constraint.
fn as_program(sys: &IneqSystem, objective: Vec<BigInt>) -> (LinearProgram, Vec<usize>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut origin = Vec::new();
    for (i, r) in sys.normalized() {
        let (sign, rhs) = match r.sense {
            Sense::AtLeastZero => (-1, 0),
            Sense::AtMostMinusOne => (1, -1),
        };
        a.push(r.coeffs.iter().map(|&c| BigInt::from(sign * i32::from(c))).collect());
        b.push(BigInt::from(rhs));
        origin.push(i);
    }
    // τ ≥ 1; redundant whenever some family omits the empty set
    let mut tau = vec![BigInt::zero(); sys.num_vars()];
    tau[sys.tau_var()] = -BigInt::one();
    a.push(tau);
    b.push(-BigInt::one());
    origin.push(usize::MAX);
    (LinearProgram { a, b, c: objective }, origin)
}

fn explain(sys: &IneqSystem, farkas: &[BigInt], origin: &[usize]) -> Infeasibility {
    for (i, r) in sys.rows.iter().enumerate() {
        if r.sense != Sense::AtLeastZero {
            continue;
        }
        if let Some(j) = sys
            .rows
            .iter()
            .position(|o| o.sense == Sense::AtMostMinusOne && o.coeffs == r.coeffs)
        {
            return Infeasibility::Contradiction { at_least: i, at_most: j };
        }
    }
    Infeasibility::Certificate(
        farkas
            .iter()
            .zip(origin)
            .filter(|(y, &i)| y.is_positive() && i != usize::MAX)
            .map(|(y, &i)| (i, y.clone()))
            .collect(),
    )
}

/// A basic feasible solution `(s₁ … s_u, τ)` of the relaxed system.
///
/// Among the vertices, one minimising `Σ s + τ` is returned, which keeps
/// outputs small and unused glues at zero.
pub fn solve_feasible(sys: &IneqSystem) -> std::result::Result<Vec<BigRational>, Infeasibility> {
    let (prog, origin) = as_program(sys, vec![-BigInt::one(); sys.num_vars()]);
    match lp::solve(&prog) {
        LpOutcome::Optimal { x, .. } => Ok(x),
        LpOutcome::Infeasible { farkas } => Err(explain(sys, &farkas, &origin)),
        LpOutcome::Unbounded => unreachable!("objective is bounded below by zero"),
    }
}

/// The least temperature of the rational relaxation, with a vertex
/// attaining it. Informational only: the integer minimum can be larger.
pub fn minimize_tau_relaxation(sys: &IneqSystem) -> Option<(BigRational, Vec<BigRational>)> {
    minimize_tau_with(sys, &[])
}

/// As [`minimize_tau_relaxation`], with some variables pinned to given
/// values.
pub fn minimize_tau_with(sys: &IneqSystem, fixed: &[(usize, BigInt)]) -> Option<(BigRational, Vec<BigRational>)> {
    let mut c = vec![BigInt::zero(); sys.num_vars()];
    c[sys.tau_var()] = -BigInt::one();
    let (mut prog, _) = as_program(sys, c);
    for (v, val) in fixed {
        let mut row = vec![BigInt::zero(); sys.num_vars()];
        row[*v] = BigInt::one();
        prog.a.push(row.clone());
        prog.b.push(val.clone());
        row[*v] = -BigInt::one();
        prog.a.push(row);
        prog.b.push(-val.clone());
    }
    match lp::solve(&prog) {
        LpOutcome::Optimal { x, value, .. } => Some((-value, x)),
        _ => None,
    }
}

/// Scales a rational solution to integers.
///
/// Dividing by the common gcd afterwards keeps every row: each row value is
/// a multiple of the gcd, so a negative value stays `≤ −1`. The reduction is
/// nonetheless re-verified.
pub fn integerize(v: &[BigRational], sys: &IneqSystem) -> IntegerSolution {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let reduced = if gcd > BigInt::one() {
        let r: Vec<BigInt> = scaled.iter().map(|x| x / &gcd).collect();
        if sys.is_satisfied_by(&r) {
            r
        } else {
            scaled.clone()
        }
    } else {
        scaled.clone()
    };
    let gcd = if reduced == scaled { BigInt::one() } else { gcd };
    IntegerSolution { lcm, scaled, gcd, reduced }
}

/// `⌈2ⁿ · 6^{n/2}⌉ = ⌈√(24ⁿ)⌉`, a bound on the numerators and denominators of
/// any vertex of an `n`-variable system of this kind.
pub fn hadamard_bound(n: usize) -> BigUint {
    let sq = BigUint::from(24u32).pow(n as u32);
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1u32
    }
}

/// `(2^{3u+3})²`, the ceiling on every synthesized value for `u` glues.
pub fn magnitude_bound(u: usize) -> BigUint {
    BigUint::one() << (2 * (3 * u + 3))
}

fn to_assignment(values: &[BigInt]) -> Result<StrengthAssignment> {
    let (tau, glues) = values.split_last().expect("temperature variable");
    let big = |x: &BigInt| x.to_biguint().ok_or_else(|| Error::Internal("negative value".into()));
    let strengths = std::iter::once(Ok(BigUint::zero()))
        .chain(glues.iter().map(big))
        .collect::<Result<Vec<_>>>()?;
    StrengthAssignment::new(strengths, big(tau)?)
}

/// Strengths and a temperature under which tile `t` cooperates on each side
/// set marked `true` in `spec[t]` and on none marked `false`; side sets not
/// listed are left free. `None` when no such assignment exists.
pub fn realize_partial(tileset: &TileSet, spec: &[Vec<(DirSet, bool)>]) -> Option<StrengthAssignment> {
    let u = tileset.glues().non_null_count();
    let mut rows = Vec::new();
    for (tile, (t, sets)) in tileset.tiles().iter().zip(spec).enumerate() {
        for &(dirs, cooperates) in sets {
            let mut coeffs = vec![0i8; u + 1];
            for d in dirs.iter() {
                let g = t.glue(d);
                if !g.is_null() {
                    coeffs[g.index() - 1] += 1;
                }
            }
            coeffs[u] = -1;
            let sense = if cooperates { Sense::AtLeastZero } else { Sense::AtMostMinusOne };
            rows.push(IneqRow { tile, dirs, coeffs, sense });
        }
    }
    let sys = IneqSystem { num_glues: u, rows };
    let v = solve_feasible(&sys).ok()?;
    to_assignment(&integerize(&v, &sys).reduced).ok()
}

pub fn synthesize(sf: &SfTas) -> Result<SynthResult> {
    let violations = validate_closure(sf);
    if !violations.is_empty() {
        return Ok(SynthResult::Infeasible(Infeasibility::NotClosed(violations)));
    }
    let empty: Vec<usize> = (0..sf.coop.len()).filter(|&t| sf.coop[t].contains(DirSet::EMPTY)).collect();
    if !empty.is_empty() {
        return Ok(SynthResult::Infeasible(Infeasibility::EmptySetCooperates(empty)));
    }
    let sys = build_system(sf);
    let rational = match solve_feasible(&sys) {
        Ok(v) => v,
        Err(why) => return Ok(SynthResult::Infeasible(why)),
    };
    let integer = integerize(&rational, &sys);
    if !sys.is_satisfied_by(&integer.reduced) {
        return Err(Error::Internal("integer solution violates a row".into()));
    }
    let cap = hadamard_bound(sys.num_vars()).pow(2).min(magnitude_bound(sys.num_glues));
    if integer.reduced.iter().any(|x| x.magnitude() > &cap) {
        return Err(Error::Internal("synthesized value exceeds the vertex bound".into()));
    }
    let tas = Tas::new(sf.tileset.clone(), sf.seed, to_assignment(&integer.reduced)?)?;
    if !tas.is_locally_equivalent_to(sf) {
        return Err(Error::Internal("synthesized system is not locally equivalent".into()));
    }
    Ok(SynthResult::Feasible(Box::new(Synthesis { tas, rational, integer })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::Direction;
    use crate::family::{enumerate_coop_families, CoopFamily};

    fn one_tile(labels: [&str; 4], fam: CoopFamily) -> SfTas {
        let ts = TileSet::from_labels(&[("t", labels)]).unwrap();
        SfTas::new(ts, 0, vec![fam]).unwrap()
    }

    #[test]
    fn sixteen_rows_per_tile() {
        let sf = one_tile(["a", "b", "c", "d"], CoopFamily::ALL_NONEMPTY);
        let sys = build_system(&sf);
        assert_eq!(sys.rows.len(), 16);
        let ge = sys.rows.iter().filter(|r| r.sense == Sense::AtLeastZero).count();
        assert_eq!(ge, 15);
        assert!(sys.rows.iter().all(|r| r.coeffs[sys.tau_var()] == -1));
    }

    #[test]
    fn repeated_glue_gets_coefficient_two() {
        let sf = one_tile(["x", "-", "x", "-"], CoopFamily::EMPTY);
        let sys = build_system(&sf);
        let ns = DirSet::from_iter([Direction::N, Direction::S]);
        let row = sys.rows.iter().find(|r| r.dirs == ns).unwrap();
        assert_eq!(row.coeffs, vec![2, -1]);
    }

    #[test]
    fn contradictory_pair_is_reported() {
        let ts = TileSet::from_labels(&[("p", ["x", "-", "-", "-"]), ("q", ["x", "-", "-", "-"])]).unwrap();
        let n = CoopFamily::generated_by(&[DirSet::from_iter([Direction::N])]);
        let sf = SfTas::new(ts, 0, vec![n, CoopFamily::EMPTY]).unwrap();
        match synthesize(&sf).unwrap() {
            SynthResult::Infeasible(Infeasibility::Contradiction { at_least, at_most }) => {
                let sys = build_system(&sf);
                assert_eq!(sys.rows[at_least].coeffs, sys.rows[at_most].coeffs);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_closed_family_is_rejected() {
        let f = CoopFamily::from_mask_unchecked(1 << DirSet::from_iter([Direction::N]).mask());
        let sf = one_tile(["a", "b", "c", "d"], f);
        let v = validate_closure(&sf);
        assert_eq!(v.len(), 7);
        assert!(!synthesize(&sf).unwrap().is_feasible());
    }

    #[test]
    fn integerize_scales_by_lcm() {
        let sf = one_tile(["a", "-", "-", "-"], CoopFamily::generated_by(&[DirSet::from_iter([Direction::N])]));
        let sys = build_system(&sf);
        let half = BigRational::new(3.into(), 2.into());
        let out = integerize(&[half.clone(), half], &sys);
        assert_eq!(out.lcm, BigInt::from(2));
        assert_eq!(out.scaled, vec![BigInt::from(3), BigInt::from(3)]);
        assert_eq!(out.reduced, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(sys.is_satisfied_by(&out.scaled));
    }

    #[test]
    fn hadamard_values() {
        assert_eq!(hadamard_bound(1), BigUint::from(5u32));
        assert_eq!(hadamard_bound(2), BigUint::from(24u32));
        assert_eq!(hadamard_bound(4), BigUint::from(576u32));
    }

    #[test]
    fn single_tile_feasibility_matches_small_search() {
        // glues on all four sides distinct; brute force strengths ≤ 8, τ ≤ 8
        let mut realizable = std::collections::BTreeSet::new();
        for tau in 1..=8u64 {
            for code in 0..9u64.pow(4) {
                let s: Vec<u64> = (0..4).map(|i| code / 9u64.pow(i) % 9).collect();
                let a = StrengthAssignment::from_u64(&s, tau).unwrap();
                let ts = TileSet::from_labels(&[("t", ["a", "b", "c", "d"])]).unwrap();
                realizable.insert(crate::tile::cooperation_set(&ts.tiles()[0], &a).unwrap());
            }
        }
        for f in enumerate_coop_families() {
            let sf = one_tile(["a", "b", "c", "d"], f);
            let out = synthesize(&sf).unwrap();
            assert_eq!(out.is_feasible(), realizable.contains(&f), "{f}");
        }
    }
}
