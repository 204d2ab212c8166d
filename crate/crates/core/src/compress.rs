//! Temperature compression for attachments that use at most two sides.
//!
//! Strengths strictly between 0 and τ are split into a low part
//! `L = {g : 2g < τ}` and a high part. Low strengths are ranked `1..=n`;
//! each high strength is ranked by the weakest low strength it can pair
//! with. The new temperature is `2n + 2`. Cooperation via one or two sides
//! is preserved; three- and four-side cooperation is not.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::family::CoopFamily;
use crate::glue::GlueId;
use crate::tile::{StrengthAssignment, Tas};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluePartition {
    pub tau: BigUint,
    /// `ℓ₁ < … < ℓₙ`, all below τ/2.
    pub low: Vec<BigUint>,
    /// `h₁ < … < h_m` in `[τ/2, τ)`.
    pub high: Vec<BigUint>,
    /// Class `j ∈ 1..=n+1` of each high strength: the least `j` with
    /// `h + ℓⱼ ≥ τ`, taking `ℓ_{n+1} = τ/2`.
    pub class_of: BTreeMap<BigUint, usize>,
}

impl GluePartition {
    pub fn from_values<'a>(values: impl IntoIterator<Item = &'a BigUint>, tau: &BigUint) -> GluePartition {
        let g: BTreeSet<&BigUint> = values.into_iter().filter(|v| !v.is_zero() && *v < tau).collect();
        let (low, high): (Vec<&BigUint>, Vec<&BigUint>) = g.into_iter().partition(|v| (*v << 1u32) < *tau);
        let low: Vec<BigUint> = low.into_iter().cloned().collect();
        let high: Vec<BigUint> = high.into_iter().cloned().collect();
        let class_of = high
            .iter()
            .map(|h| {
                // no low strength suffices: h only pairs with τ/2 or more
                let j = low
                    .iter()
                    .position(|l| h + l >= *tau)
                    .map_or(low.len() + 1, |i| i + 1);
                debug_assert!((h << 1u32) >= *tau);
                (h.clone(), j)
            })
            .collect();
        GluePartition {
            tau: tau.clone(),
            low,
            high,
            class_of,
        }
    }

    pub fn n(&self) -> usize {
        self.low.len()
    }

    pub fn new_temperature(&self) -> u64 {
        2 * self.n() as u64 + 2
    }

    /// The compressed strength of a glue with original strength `g`.
    pub fn map(&self, g: &BigUint) -> u64 {
        let top = self.new_temperature();
        if g.is_zero() {
            0
        } else if g >= &self.tau {
            top
        } else if let Ok(i) = self.low.binary_search(g) {
            i as u64 + 1
        } else {
            let j = self.class_of[g];
            top - j as u64
        }
    }
}

/// Partition of the strengths of glues that actually occur on tiles.
pub fn partition_glues(t: &Tas) -> GluePartition {
    let a = &t.assignment;
    let used = t.tileset.used_glues();
    GluePartition::from_values(
        used.iter().map(|g| a.strength(*g).expect("validated system")),
        a.temperature(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compression {
    pub tas: Tas,
    pub partition: GluePartition,
    pub tau_prime: u64,
    /// `2|T| + 2`; the construction can exceed it when one tile carries
    /// several distinct low strengths.
    pub tile_bound: u64,
}

impl Compression {
    pub fn exceeds_tile_bound(&self) -> bool {
        self.tau_prime > self.tile_bound
    }
}

pub fn compress(t: &Tas) -> Compression {
    let partition = partition_glues(t);
    let used: BTreeSet<GlueId> = t.tileset.used_glues().into_iter().collect();
    let strengths: Vec<u64> = std::iter::once(0)
        .chain(t.tileset.glues().ids().map(|g| {
            if used.contains(&g) {
                partition.map(t.assignment.strength(g).expect("validated system"))
            } else {
                0
            }
        }))
        .collect();
    let tau_prime = partition.new_temperature();
    let assignment = StrengthAssignment::new(strengths.into_iter().map(BigUint::from).collect(), tau_prime.into())
        .expect("null glue maps to zero and τ′ ≥ 2");
    let tas = Tas::new(t.tileset.clone(), t.seed, assignment).expect("same glue table");
    Compression {
        tas,
        partition,
        tau_prime,
        tile_bound: 2 * t.tileset.len() as u64 + 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionFailure {
    Single(GlueId),
    Pair(GlueId, GlueId),
}

/// Checks, over every used label and every pair of used labels (a label
/// paired with itself included), that reaching the temperature is
/// preserved.
pub fn check_conditions(original: &Tas, compressed: &Tas) -> Vec<ConditionFailure> {
    let used = original.tileset.used_glues();
    let g = |t: &Tas, x: GlueId| t.assignment.strength(x).cloned().unwrap_or_default();
    let (tau, tau2) = (original.assignment.temperature(), compressed.assignment.temperature());
    let mut out = Vec::new();
    for (i, &x) in used.iter().enumerate() {
        if (&g(original, x) >= tau) != (&g(compressed, x) >= tau2) {
            out.push(ConditionFailure::Single(x));
        }
        for &y in &used[i..] {
            let before = g(original, x) + g(original, y) >= *tau;
            let after = g(compressed, x) + g(compressed, y) >= *tau2;
            if before != after {
                out.push(ConditionFailure::Pair(x, y));
            }
        }
    }
    out
}

/// Whether the two systems agree on every cooperation set of one or two
/// sides, tile by tile.
pub fn verify_coop2_equiv(t1: &Tas, t2: &Tas) -> Result<bool> {
    if t1.tileset != t2.tileset || t1.seed != t2.seed {
        return Err(Error::StructureMismatch);
    }
    let slice = |t: &Tas| -> Vec<CoopFamily> { t.coop_families().into_iter().map(CoopFamily::pairs_slice).collect() };
    Ok(slice(t1) == slice(t2))
}
