//! Independent brute-force oracles shared by the integration suites. Nothing
//! here calls the solver, the search or the compressor.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use rand::Rng;
use tilesmith_core::sim::{explore_all, SimBehavior};
use tilesmith_core::{Assembly, CoopFamily, DirSet, Direction, GlueId, Pos, Shape, StrengthAssignment, Tas, TileSet};

/// Family mask of a tile whose sides carry `side` strengths at temperature `tau`.
pub fn family_of(side: [u64; 4], tau: u64) -> u16 {
    let mut m = 0u16;
    for s in 0..16u8 {
        let total: u64 = DirSet::from_mask(s).iter().map(|d| side[d.index()]).sum();
        if total >= tau {
            m |= 1 << s;
        }
    }
    m
}

/// All upward-closed families over the 16 side sets, by filtering every mask.
pub fn brute_force_families() -> Vec<u16> {
    (0..=u16::MAX)
        .filter(|&m| {
            (0..16u16).all(|a| {
                m & (1 << a) == 0 || (0..16u16).filter(|b| b & a == a).all(|b| m & (1 << b) != 0)
            })
        })
        .collect()
}

/// Restricted-growth labellings of `slots` sides with labels `1..=max` (0 is null).
pub fn label_sequences(slots: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(slots: usize, max: usize, top: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == slots {
            out.push(cur.clone());
            return;
        }
        for v in 0..=(top + 1).min(max) {
            cur.push(v);
            go(slots, max, top.max(v), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(slots, max, 0, &mut Vec::new(), &mut out);
    out
}

fn normalize(cells: impl Iterator<Item = Pos>) -> BTreeSet<(i32, i32)> {
    let v: Vec<Pos> = cells.collect();
    let mx = v.iter().map(|p| p.x).min().unwrap_or(0);
    let my = v.iter().map(|p| p.y).min().unwrap_or(0);
    v.iter().map(|p| (p.x - mx, p.y - my)).collect()
}

fn sole_terminal(b: &SimBehavior, budget: usize) -> Option<Assembly> {
    let ex = explore_all(b, budget);
    if ex.truncated || ex.terminals.len() != 1 {
        return None;
    }
    ex.terminals.into_iter().next()
}

/// Exhaustive check: exactly one terminal assembly, with domain `shape`
/// (seed at the origin).
pub fn assembles_exactly(b: &SimBehavior, shape: &Shape) -> bool {
    sole_terminal(b, shape.len()).is_some_and(|t| t.positions().collect::<BTreeSet<_>>() == shape.cells().collect())
}

/// As [`assembles_exactly`] but the seed may sit in any cell of `shape`.
pub fn assembles_translate(b: &SimBehavior, shape: &Shape) -> bool {
    sole_terminal(b, shape.len()).is_some_and(|t| normalize(t.positions()) == normalize(shape.cells()))
}

/// Whether some `k`-tile standard system with at most `alphabet` labels per
/// axis, strengths `≤ max_s` and `1 ≤ τ ≤ max_tau` uniquely assembles `shape`.
/// Tile 0 is the seed (tiles are interchangeable). Labellings with fewer
/// labels are tried first.
pub fn standard_system_exists(shape: &Shape, k: usize, alphabet: usize, max_s: u64, max_tau: u64) -> bool {
    let seqs = label_sequences(2 * k, alphabet);
    let top = |v: &Vec<usize>| v.iter().copied().max().unwrap_or(0);
    let mut pairs: Vec<(&Vec<usize>, &Vec<usize>)> =
        seqs.iter().flat_map(|a| seqs.iter().map(move |b| (a, b))).collect();
    pairs.sort_by_key(|(a, b)| top(a) + top(b));
    let side = (max_s + 1) as usize;
    // family of every side-strength quadruple at every temperature
    let mut table = vec![0u16; side.pow(4) * max_tau as usize];
    for (i, f) in table.iter_mut().enumerate() {
        let mut r = i;
        let sides: [u64; 4] = std::array::from_fn(|_| {
            let v = r % side;
            r /= side;
            v as u64
        });
        *f = family_of(sides, r as u64 + 1);
    }
    for (nl, el) in pairs {
        let un = top(nl);
        let labels = un + top(el);
        // side order N,E,S,W; NS slots are (N,S) per tile, EW slots (E,W)
        let glue = |t: usize, d: usize| -> usize {
            match d {
                0 => nl[2 * t],
                2 => nl[2 * t + 1],
                1 => el[2 * t].map_ew(un),
                _ => el[2 * t + 1].map_ew(un),
            }
        };
        let glues: Vec<[GlueId; 4]> = (0..k)
            .map(|t| std::array::from_fn(|d| GlueId(glue(t, d) as u32)))
            .collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut s = vec![0u64; labels + 1];
        loop {
            for tau in 1..=max_tau {
                let fams: Vec<u16> = (0..k)
                    .map(|t| {
                        let idx = (0..4).rev().fold(tau as usize - 1, |acc, d| acc * side + s[glue(t, d)] as usize);
                        table[idx]
                    })
                    .collect();
                if seen.insert(fams.clone()) {
                    let b = SimBehavior {
                        glues: glues.clone(),
                        coop: fams.iter().map(|&m| CoopFamily::from_mask_unchecked(m)).collect(),
                        seed: 0,
                    };
                    if assembles_translate(&b, shape) {
                        return true;
                    }
                }
            }
            // odometer over label strengths; s[0] is the null glue
            let mut i = 1;
            while i <= labels && s[i] == max_s {
                s[i] = 0;
                i += 1;
            }
            if i > labels {
                break;
            }
            s[i] += 1;
        }
    }
    false
}

trait MapEw {
    fn map_ew(self, offset: usize) -> usize;
}

impl MapEw for usize {
    fn map_ew(self, offset: usize) -> usize {
        if self == 0 {
            0
        } else {
            self + offset
        }
    }
}

/// Smallest tile count (up to `k_max`) of a bounded-strength standard system
/// uniquely assembling `shape`.
pub fn oracle_min_tiles(shape: &Shape, k_max: usize, alphabet: usize, max_s: u64, max_tau: u64) -> Option<usize> {
    (1..=k_max).find(|&k| standard_system_exists(shape, k, alphabet, max_s, max_tau))
}

/// A random standard system: up to `max_tiles` tiles over a few labels per
/// axis, strengths `≤ max_s`, temperature in `1..=max_tau`.
pub fn random_tas(rng: &mut impl Rng, max_tiles: usize, max_s: u64, max_tau: u64) -> Tas {
    let k = rng.gen_range(1..=max_tiles);
    let labels_per_axis = rng.gen_range(1..=4);
    let specs: Vec<(String, [String; 4])> = (0..k)
        .map(|i| {
            let g = std::array::from_fn(|d| {
                let l = rng.gen_range(0..=labels_per_axis);
                match (l, d % 2) {
                    (0, _) => "-".to_string(),
                    (l, 0) => format!("n{l}"),
                    (l, _) => format!("e{l}"),
                }
            });
            (format!("t{i}"), g)
        })
        .collect();
    let ts = TileSet::from_labels(&specs).expect("random tiles are well formed");
    let strengths: Vec<BigUint> = std::iter::once(BigUint::from(0u8))
        .chain((1..ts.glues().len()).map(|_| BigUint::from(rng.gen_range(0..=max_s))))
        .collect();
    let tau = BigUint::from(rng.gen_range(1..=max_tau));
    let a = StrengthAssignment::new(strengths, tau).expect("valid strengths");
    let seed = rng.gen_range(0..k);
    Tas::new(ts, seed, a).expect("valid system")
}

/// A random connected assembly of up to `max_tiles` cells grown from the
/// origin, over `tiles.len()` tile types.
pub fn random_assembly(rng: &mut impl Rng, max_tiles: usize, tile_types: usize) -> Assembly {
    let n = rng.gen_range(1..=max_tiles);
    let mut a = Assembly::single(Pos::ORIGIN, rng.gen_range(0..tile_types));
    while a.len() < n {
        let cells: Vec<Pos> = a.positions().collect();
        let p = cells[rng.gen_range(0..cells.len())];
        let d = Direction::from_index(rng.gen_range(0..4));
        let q = p.step(d);
        if !a.contains(q) {
            a.place(q, rng.gen_range(0..tile_types));
        }
    }
    a
}
