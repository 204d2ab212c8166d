//! Enumerating strength-free systems and searching for the fewest tile types
//! that uniquely assemble a shape.
//!
//! Two routes are provided. [`enumerate_sf`] lists systems directly (every
//! tile drawn from a per-axis glue alphabet and a cooperation family),
//! optionally up to glue renaming and reordering of non-seed tiles; it is
//! practical for one or two tiles. [`min_tileset`] instead enumerates the
//! terminal assembly itself: which tile type sits in each cell, which
//! adjacent pairs bind, and a family per tile. A minimal system can always
//! be normalised so that
//!
//! * every tile type occurs in the terminal assembly (an unused one could be
//!   dropped),
//! * each glue label is exactly one connected class of binding sides (a
//!   label that never binds inside the shape can be nulled, and splitting
//!   labels only removes interactions outside the terminal assembly),
//!
//! so scanning these choices is exhaustive.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::assembly::{Assembly, Pos, Shape};
use crate::direction::{DirSet, Direction};
use crate::family::{enumerate_coop_families, CoopFamily};
use crate::glue::{Axis, GlueId, GlueTable};
use crate::sim::{unique_shape, SimBehavior};
use crate::synth::{synthesize, SynthResult};
use crate::tile::{SfTas, Tas, TileSet, TileType};

/// A tile as `(N, E, S, W)` labels, `0` for null, plus its family. North
/// and south labels are drawn from one alphabet, east and west from another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileOption {
    pub glues: [u8; 4],
    pub family: CoopFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FamilyPolicy {
    /// All 168 antichain-generated families.
    #[default]
    All,
    /// Only families a lone tile with these glues can realise. Any
    /// implementable system uses such families, so this loses nothing when
    /// searching for implementable systems.
    Realizable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub families: FamilyPolicy,
    /// Skip systems equivalent to an earlier one under per-axis glue
    /// renaming or reordering of non-seed tiles.
    pub canonical: bool,
    /// Require every label to occur on both sides of its axis; a label on
    /// one side only can never bind.
    pub nontrivial: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            families: FamilyPolicy::All,
            canonical: true,
            nontrivial: false,
        }
    }
}

/// Glue equality pattern of a tile: null mask, `N = S`, `E = W`.
fn pattern(glues: [u8; 4]) -> usize {
    let mut p = 0;
    for (i, g) in glues.iter().enumerate() {
        if *g != 0 {
            p |= 1 << i;
        }
    }
    if glues[0] != 0 && glues[0] == glues[2] {
        p |= 1 << 4;
    }
    if glues[1] != 0 && glues[1] == glues[3] {
        p |= 1 << 5;
    }
    p
}

fn pattern_representative(p: usize) -> Option<[&'static str; 4]> {
    let on = |i: usize| p & (1 << i) != 0;
    if (on(4) && !(on(0) && on(2))) || (on(5) && !(on(1) && on(3))) {
        return None;
    }
    let pick = |i: usize, name: &'static str| if on(i) { name } else { "-" };
    Some([
        pick(0, "x"),
        pick(1, "y"),
        pick(2, if on(4) { "x" } else { "u" }),
        pick(3, if on(5) { "y" } else { "v" }),
    ])
}

/// For each glue pattern, the families a single tile can realise.
fn realizable_table() -> &'static Vec<Vec<CoopFamily>> {
    static TABLE: OnceLock<Vec<Vec<CoopFamily>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let fams = enumerate_coop_families();
        (0..64)
            .map(|p| {
                let Some(labels) = pattern_representative(p) else {
                    return Vec::new();
                };
                let ts = TileSet::from_labels(&[("t", labels)]).expect("valid single tile");
                fams.iter()
                    .copied()
                    .filter(|f| {
                        let sf = SfTas::new(ts.clone(), 0, vec![*f]).expect("one family");
                        synthesize(&sf).expect("synthesis succeeds").is_feasible()
                    })
                    .collect()
            })
            .collect()
    })
}

pub fn single_tile_realizable(glues: [u8; 4], family: CoopFamily) -> bool {
    realizable_table()[pattern(glues)].contains(&family)
}

/// Every tile option over an alphabet of `a` labels per axis, sorted.
pub fn tile_options(a: usize, policy: FamilyPolicy) -> Vec<TileOption> {
    assert!(a < 255, "alphabet too large");
    let fams = enumerate_coop_families();
    let a = a as u8;
    let mut out = Vec::new();
    for n in 0..=a {
        for e in 0..=a {
            for s in 0..=a {
                for w in 0..=a {
                    let glues = [n, e, s, w];
                    match policy {
                        FamilyPolicy::All => out.extend(fams.iter().map(|&family| TileOption { glues, family })),
                        FamilyPolicy::Realizable => out.extend(
                            realizable_table()[pattern(glues)]
                                .iter()
                                .map(|&family| TileOption { glues, family }),
                        ),
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A system produced by [`enumerate_sf`]; tile `seed` is the seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub alphabet: usize,
    pub tiles: Vec<TileOption>,
    pub seed: usize,
}

impl Candidate {
    fn glue_id(&self, d: usize, label: u8) -> GlueId {
        match label {
            0 => GlueId::NULL,
            l if d % 2 == 0 => GlueId(u32::from(l)),
            l => GlueId(self.alphabet as u32 + u32::from(l)),
        }
    }

    pub fn behavior(&self) -> SimBehavior {
        SimBehavior {
            glues: self
                .tiles
                .iter()
                .map(|t| std::array::from_fn(|d| self.glue_id(d, t.glues[d])))
                .collect(),
            coop: self.tiles.iter().map(|t| t.family).collect(),
            seed: self.seed,
        }
    }

    pub fn to_sf(&self) -> SfTas {
        let name = |d: usize, l: u8| match l {
            0 => "-".to_string(),
            l if d % 2 == 0 => format!("n{l}"),
            l => format!("e{l}"),
        };
        let specs: Vec<(String, [String; 4])> = self
            .tiles
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("t{i}"), std::array::from_fn(|d| name(d, t.glues[d]))))
            .collect();
        let ts = TileSet::from_labels(&specs).expect("axis-consistent labels");
        SfTas::new(ts, self.seed, self.tiles.iter().map(|t| t.family).collect()).expect("seed in range")
    }

    fn is_nontrivial(&self) -> bool {
        let mut seen = [[0u64; 2]; 4];
        for t in &self.tiles {
            for (d, &l) in t.glues.iter().enumerate() {
                if l != 0 {
                    seen[d][usize::from(l) / 64] |= 1 << (l % 64);
                }
            }
        }
        seen[0] == seen[2] && seen[1] == seen[3]
    }
}

fn permutations(a: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=a as u8).collect();
    fn heap(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k % 2 == 0 { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(a, &mut cur, &mut out);
    out
}

/// Lazy enumeration of strength-free systems with exactly `k` tiles.
pub struct SfEnumeration {
    k: usize,
    alphabet: usize,
    opts: EnumOptions,
    options: Vec<TileOption>,
    perms: Vec<Vec<u8>>,
    idx: Vec<usize>,
    seed: usize,
    fresh: bool,
    done: bool,
}

pub fn enumerate_sf(k: usize, alphabet: usize, opts: EnumOptions) -> SfEnumeration {
    assert!(k >= 1, "at least one tile");
    let options = tile_options(alphabet, opts.families);
    let mut idx: Vec<usize> = vec![0; k];
    if opts.canonical {
        for (i, v) in idx.iter_mut().enumerate().skip(1) {
            *v = i - 1;
        }
    }
    let done = options.len() < k;
    SfEnumeration {
        k,
        alphabet,
        opts,
        perms: if opts.canonical { permutations(alphabet) } else { Vec::new() },
        options,
        idx,
        seed: 0,
        fresh: true,
        done,
    }
}

impl SfEnumeration {
    pub fn option_count(&self) -> usize {
        self.options.len()
    }

    fn step(&mut self) {
        let m = self.options.len();
        let k = self.k;
        if self.opts.canonical {
            // positions 1.. form an increasing combination; position 0 is free
            let mut i = k - 1;
            loop {
                if i == 0 {
                    self.idx[0] += 1;
                    if self.idx[0] == m {
                        self.done = true;
                        return;
                    }
                    for j in 1..k {
                        self.idx[j] = j - 1;
                    }
                    return;
                }
                if self.idx[i] + (k - i) < m {
                    self.idx[i] += 1;
                    for j in i + 1..k {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    return;
                }
                i -= 1;
            }
        } else {
            self.seed += 1;
            if self.seed < k {
                return;
            }
            self.seed = 0;
            for i in (0..k).rev() {
                self.idx[i] += 1;
                if self.idx[i] < m {
                    return;
                }
                self.idx[i] = 0;
            }
            self.done = true;
        }
    }

    fn admissible(&self) -> bool {
        let idx = &self.idx;
        if self.opts.canonical {
            if idx[1..].contains(&idx[0]) {
                return false;
            }
        } else {
            for i in 0..idx.len() {
                if idx[..i].contains(&idx[i]) {
                    return false;
                }
            }
        }
        true
    }

    fn is_canonical(&self, c: &Candidate) -> bool {
        let own: Vec<TileOption> = c.tiles.clone();
        for p in &self.perms {
            for q in &self.perms {
                let map = |t: &TileOption| TileOption {
                    glues: std::array::from_fn(|d| match t.glues[d] {
                        0 => 0,
                        l if d % 2 == 0 => p[usize::from(l) - 1],
                        l => q[usize::from(l) - 1],
                    }),
                    family: t.family,
                };
                let mut other: Vec<TileOption> = c.tiles.iter().map(map).collect();
                other[1..].sort();
                if other < own {
                    return false;
                }
            }
        }
        true
    }
}

impl Iterator for SfEnumeration {
    type Item = Candidate;

    fn next(&mut self) -> Option<Candidate> {
        loop {
            if self.done {
                return None;
            }
            if self.fresh {
                self.fresh = false;
            } else {
                self.step();
                if self.done {
                    return None;
                }
            }
            if !self.admissible() {
                continue;
            }
            let c = Candidate {
                alphabet: self.alphabet,
                tiles: self.idx.iter().map(|&i| self.options[i]).collect(),
                seed: if self.opts.canonical { 0 } else { self.seed },
            };
            if self.opts.nontrivial && !c.is_nontrivial() {
                continue;
            }
            if self.opts.canonical && !self.is_canonical(&c) {
                continue;
            }
            return Some(c);
        }
    }
}

/// `k · m!/(m−k)!` with `m` tile options: ordered lists of distinct tiles
/// times the choice of seed.
pub fn raw_count(k: usize, option_count: usize) -> BigUint {
    let mut c = BigUint::from(k);
    for i in 0..k {
        c *= BigUint::from(option_count.saturating_sub(i));
    }
    c
}

/// `168^k · k^{4k+1}`, the count of implementable systems with exactly `k`
/// tile types allowed by the antichain-and-labels argument.
pub fn enumeration_bound(k: usize) -> BigUint {
    BigUint::from(168u32).pow(k as u32) * BigUint::from(k).pow(4 * k as u32 + 1)
}

#[derive(Debug, Default)]
struct Counters {
    assemblies: AtomicU64,
    pruned: AtomicU64,
    candidates: AtomicU64,
    unique_calls: AtomicU64,
    synth_calls: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Terminal-assembly skeletons (tile placement plus binding pattern)
    /// considered.
    pub assemblies: u64,
    /// Skeletons rejected before any family was chosen.
    pub pruned: u64,
    /// Complete systems built.
    pub candidates: u64,
    pub unique_calls: u64,
    pub synth_calls: u64,
    /// Largest tile count fully scanned without success.
    pub exhausted_k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub k: usize,
    pub sf: SfTas,
    pub tas: Tas,
    /// The shape cell holding the seed.
    pub seed_cell: Pos,
    /// Terminal assembly, seed at the origin.
    pub terminal: Assembly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub found: Option<SearchResult>,
    pub stats: SearchStats,
}

/// Tile assignments to the non-origin cells: the seed type `0` may appear
/// anywhere; types `1..k` appear, first occurrences in increasing order.
fn labelings(cells: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(cells: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if cells - i < k - 1 - max {
            return;
        }
        if i == cells {
            out.push(cur.clone());
            return;
        }
        for v in 0..=(max + 1).min(k - 1) {
            cur.push(v);
            go(cells, k, max.max(v), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(cells, k, 0, &mut Vec::new(), &mut out);
    out
}

struct Unit<'a> {
    shape: &'a Shape,
    seed_cell: Pos,
    cells: &'a [Pos],
    edges: &'a [(usize, usize, Direction)],
    /// `types[i]` is the tile type in `cells[i]`; `cells[0]` is the origin.
    types: Vec<usize>,
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let n = uf[y];
        uf[y] = r;
        y = n;
    }
    r
}

fn search_unit(u: &Unit, k: usize, c: &Counters) -> Option<SearchResult> {
    let ne = u.edges.len();
    assert!(ne < 40, "shape too large for exhaustive search");
    let nodes = 4 * k;
    for mask in 0u64..(1u64 << ne) {
        c.assemblies.fetch_add(1, Ordering::Relaxed);
        let mut uf: Vec<usize> = (0..nodes).collect();
        let mut live = vec![false; nodes];
        let side = |cell: usize, d: Direction| u.types[cell] * 4 + d.index();
        for (e, &(p, q, d)) in u.edges.iter().enumerate() {
            if mask & (1 << e) != 0 {
                let (a, b) = (side(p, d), side(q, d.opposite()));
                live[a] = true;
                live[b] = true;
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                uf[ra] = rb;
            }
        }
        let consistent = u.edges.iter().enumerate().all(|(e, &(p, q, d))| {
            let (a, b) = (side(p, d), side(q, d.opposite()));
            mask & (1 << e) != 0 || !(live[a] && live[b] && find(&mut uf, a) == find(&mut uf, b))
        });
        if !consistent || !bonds_connect(u, mask) {
            c.pruned.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        // compact glue ids per class
        let mut ids: BTreeMap<usize, u32> = BTreeMap::new();
        let mut glues = vec![[GlueId::NULL; 4]; k];
        for t in 0..k {
            for d in Direction::ALL {
                let s = t * 4 + d.index();
                if live[s] {
                    let r = find(&mut uf, s);
                    let next = ids.len() as u32 + 1;
                    glues[t][d.index()] = GlueId(*ids.entry(r).or_insert(next));
                }
            }
        }
        let alpha: HashMap<Pos, usize> = u.cells.iter().copied().zip(u.types.iter().copied()).collect();
        let (relevant, required) = relevant_sets(u, &alpha, &glues, k);
        let choices: Vec<Vec<CoopFamily>> = (0..k).map(|t| up_sets(&relevant[t], &required[t])).collect();
        if choices.iter().any(Vec::is_empty) {
            c.pruned.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        let mut pick = vec![0usize; k];
        loop {
            c.candidates.fetch_add(1, Ordering::Relaxed);
            let b = SimBehavior {
                glues: glues.clone(),
                coop: (0..k).map(|t| choices[t][pick[t]]).collect(),
                seed: 0,
            };
            c.unique_calls.fetch_add(1, Ordering::Relaxed);
            if unique_shape(&b, u.shape) {
                c.synth_calls.fetch_add(1, Ordering::Relaxed);
                if let Some(found) = realize(u, &b, &relevant, k) {
                    return Some(found);
                }
            }
            if !advance(&mut pick, &choices) {
                break;
            }
        }
    }
    None
}

/// For each tile type, every nonempty side set that can be its matched set
/// at some open position of a subassembly of `alpha` (the only assemblies
/// that matter once growth stays inside the shape), and the matched sets it
/// has where `alpha` places it.
fn relevant_sets(
    u: &Unit,
    alpha: &HashMap<Pos, usize>,
    glues: &[[GlueId; 4]],
    k: usize,
) -> (Vec<Vec<DirSet>>, Vec<Vec<DirSet>>) {
    let mut spots: Vec<Pos> = u.cells[1..].to_vec();
    for p in u.cells {
        for (_, q) in p.neighbors() {
            if !alpha.contains_key(&q) && !spots.contains(&q) {
                spots.push(q);
            }
        }
    }
    let mut relevant = vec![0u16; k];
    for &q in &spots {
        for (t, g) in glues.iter().enumerate() {
            let full: DirSet = Direction::ALL
                .into_iter()
                .filter(|d| {
                    let own = g[d.index()];
                    !own.is_null()
                        && alpha
                            .get(&q.step(*d))
                            .is_some_and(|&v| glues[v][d.opposite().index()] == own)
                })
                .collect();
            for sub in DirSet::all().filter(|x| !x.is_empty() && x.is_subset(full)) {
                relevant[t] |= 1 << sub.mask();
            }
        }
    }
    let mut required = vec![Vec::new(); k];
    for (i, p) in u.cells.iter().enumerate().skip(1) {
        let t = u.types[i];
        let m: DirSet = Direction::ALL
            .into_iter()
            .filter(|d| {
                let own = glues[t][d.index()];
                !own.is_null()
                    && alpha
                        .get(&p.step(*d))
                        .is_some_and(|&v| glues[v][d.opposite().index()] == own)
            })
            .collect();
        required[t].push(m);
    }
    let relevant = relevant
        .into_iter()
        .map(|bits| DirSet::all().filter(|d| bits & (1 << d.mask()) != 0).collect())
        .collect();
    (relevant, required)
}

/// Every subfamily of `sets` closed upward within `sets` and containing
/// `required`, each returned as the family it generates. Two families that
/// agree on `sets` drive identical dynamics.
fn up_sets(sets: &[DirSet], required: &[DirSet]) -> Vec<CoopFamily> {
    if required.iter().any(|r| r.is_empty() || !sets.contains(r)) {
        return Vec::new();
    }
    let mut order: Vec<DirSet> = sets.to_vec();
    order.sort_by_key(|d| std::cmp::Reverse(d.len()));
    let mut out = Vec::new();
    fn go(i: usize, order: &[DirSet], required: &[DirSet], chosen: &mut Vec<DirSet>, out: &mut Vec<CoopFamily>) {
        if i == order.len() {
            out.push(CoopFamily::generated_by(chosen));
            return;
        }
        let d = order[i];
        // larger sets were decided first
        let supersets_in = order[..i]
            .iter()
            .filter(|s| d.is_subset(**s))
            .all(|s| chosen.contains(s));
        if !required.contains(&d) {
            go(i + 1, order, required, chosen, out);
        }
        if supersets_in {
            chosen.push(d);
            go(i + 1, order, required, chosen, out);
            chosen.pop();
        }
    }
    go(0, &order, required, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Turns a uniquely assembling behaviour into a standard system: solve for
/// strengths over the relevant side sets only, then take the families those
/// strengths induce.
fn realize(u: &Unit, b: &SimBehavior, relevant: &[Vec<DirSet>], k: usize) -> Option<SearchResult> {
    let skeleton = behavior_to_sf(b);
    let spec: Vec<Vec<(DirSet, bool)>> = (0..k)
        .map(|t| relevant[t].iter().map(|d| (*d, b.coop[t].contains(*d))).collect())
        .collect();
    let a = crate::synth::realize_partial(&skeleton.tileset, &spec)?;
    let concrete = Tas::new(skeleton.tileset.clone(), 0, a).ok()?;
    let sf = concrete.strength_free();
    debug_assert!(unique_shape(&SimBehavior::from(&sf), u.shape));
    match synthesize(&sf).expect("synthesis succeeds") {
        SynthResult::Feasible(s) => Some(SearchResult {
            k,
            sf,
            tas: s.tas,
            seed_cell: u.seed_cell,
            terminal: Assembly::from_tiles(u.cells.iter().copied().zip(u.types.iter().copied())),
        }),
        SynthResult::Infeasible(_) => None,
    }
}

/// Mixed-radix increment; false once every combination has been visited.
fn advance(pick: &mut [usize], choices: &[Vec<CoopFamily>]) -> bool {
    for i in (0..pick.len()).rev() {
        pick[i] += 1;
        if pick[i] < choices[i].len() {
            return true;
        }
        pick[i] = 0;
    }
    false
}

fn bonds_connect(u: &Unit, mask: u64) -> bool {
    let n = u.cells.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for (e, &(p, q, _)) in u.edges.iter().enumerate() {
            if mask & (1 << e) == 0 {
                continue;
            }
            let y = if p == x {
                q
            } else if q == x {
                p
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Names glue classes `n1, n2, …` (north–south) and `e1, …` (east–west) and
/// tiles `t0, t1, …` with `t0` the seed.
pub fn behavior_to_sf(b: &SimBehavior) -> SfTas {
    let mut table = GlueTable::new();
    let mut names: HashMap<GlueId, GlueId> = HashMap::new();
    let (mut ns, mut ew) = (0, 0);
    let mut tiles = Vec::new();
    for (i, g) in b.glues.iter().enumerate() {
        let mapped: [GlueId; 4] = std::array::from_fn(|d| {
            let id = g[d];
            if id.is_null() {
                return GlueId::NULL;
            }
            *names.entry(id).or_insert_with(|| {
                let axis = Axis::of(Direction::from_index(d));
                let name = match axis {
                    Axis::NS => {
                        ns += 1;
                        format!("n{ns}")
                    }
                    Axis::EW => {
                        ew += 1;
                        format!("e{ew}")
                    }
                };
                table.intern(&name, axis).expect("fresh name")
            })
        });
        tiles.push(TileType::new(format!("t{i}"), mapped));
    }
    let ts = TileSet::new(table, tiles).expect("axis-consistent glues");
    SfTas::new(ts, b.seed, b.coop.clone()).expect("seed in range")
}

/// The least `k ≤ k_max` for which some `k`-tile system uniquely assembles
/// `s`, with the first such system in a fixed scan order.
pub fn min_tileset(s: &Shape, k_max: usize) -> SearchOutcome {
    let c = Counters::default();
    let mut exhausted = 0;
    let sorted: Vec<Pos> = s.cells().collect();
    for k in 1..=k_max.min(s.len()) {
        let mut units_data = Vec::new();
        for &sc in &sorted {
            let shape = s.translate(-sc.x, -sc.y);
            let mut cells: Vec<Pos> = shape.cells().collect();
            let o = cells.iter().position(|p| *p == Pos::ORIGIN).expect("seed cell");
            cells.remove(o);
            cells.insert(0, Pos::ORIGIN);
            let index: HashMap<Pos, usize> = cells.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let mut edges = Vec::new();
            for (i, p) in cells.iter().enumerate() {
                for d in [Direction::E, Direction::N] {
                    if let Some(&j) = index.get(&p.step(d)) {
                        edges.push((i, j, d));
                    }
                }
            }
            units_data.push((sc, shape, cells, edges));
        }
        let mut units = Vec::new();
        for (sc, shape, cells, edges) in &units_data {
            for lab in labelings(cells.len() - 1, k) {
                let mut types = vec![0];
                types.extend(lab);
                units.push(Unit {
                    shape,
                    seed_cell: *sc,
                    cells,
                    edges,
                    types,
                });
            }
        }
        let hit = units.par_iter().find_map_first(|u| search_unit(u, k, &c));
        if let Some(found) = hit {
            return SearchOutcome {
                found: Some(found),
                stats: c.snapshot(exhausted),
            };
        }
        exhausted = k;
    }
    SearchOutcome {
        found: None,
        stats: c.snapshot(exhausted),
    }
}

impl Counters {
    fn snapshot(&self, exhausted_k: usize) -> SearchStats {
        SearchStats {
            assemblies: self.assemblies.load(Ordering::Relaxed),
            pruned: self.pruned.load(Ordering::Relaxed),
            candidates: self.candidates.load(Ordering::Relaxed),
            unique_calls: self.unique_calls.load(Ordering::Relaxed),
            synth_calls: self.synth_calls.load(Ordering::Relaxed),
            exhausted_k,
        }
    }
}

/// Scans [`enumerate_sf`] for the least `k ≤ k_max` with a system uniquely
/// assembling `s`; the alphabet for `k` tiles is `k + 1` labels per axis
/// unless `alphabet` is given. Only practical for tiny `k`.
pub fn min_tileset_enumerative(
    s: &Shape,
    k_max: usize,
    alphabet: Option<usize>,
    opts: EnumOptions,
) -> Option<(usize, Candidate)> {
    for k in 1..=k_max {
        let a = alphabet.unwrap_or(k + 1);
        for sc in s.cells() {
            let shape = s.translate(-sc.x, -sc.y);
            let hit = enumerate_sf(k, a, opts)
                .par_bridge()
                .filter(|c| unique_shape(&c.behavior(), &shape))
                .filter(|c| synthesize(&c.to_sf()).expect("synthesis succeeds").is_feasible())
                .min_by(|x, y| (&x.tiles, x.seed).cmp(&(&y.tiles, y.seed)));
            if let Some(c) = hit {
                return Some((k, c));
            }
        }
    }
    None
}

/// `⌈c · log₂ n / log₂ log₂ n⌉`, or 1 when `n ≤ 4`.
pub fn square_cap(n: u64, c: u64) -> usize {
    if n <= 4 {
        return 1;
    }
    let l = (n as f64).log2();
    (c as f64 * l / l.log2() - 1e-9).ceil().max(1.0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_single_tile_count() {
        let opts = EnumOptions {
            canonical: false,
            ..EnumOptions::default()
        };
        assert_eq!(enumerate_sf(1, 1, opts).count(), 168 * 16);
        assert_eq!(raw_count(1, tile_options(1, FamilyPolicy::All).len()), BigUint::from(2688u32));
    }

    #[test]
    fn empty_single_tile_is_listed() {
        let first = enumerate_sf(1, 1, EnumOptions::default()).next().unwrap();
        assert_eq!(first.tiles[0].glues, [0; 4]);
        assert_eq!(first.tiles[0].family, CoopFamily::EMPTY);
    }

    #[test]
    fn canonical_single_tiles_match_dedup() {
        // with one tile the only symmetry is renaming labels within an axis
        let opts = EnumOptions {
            canonical: false,
            ..EnumOptions::default()
        };
        let mut classes = std::collections::BTreeSet::new();
        let perms = permutations(2);
        for c in enumerate_sf(1, 2, opts) {
            let t = c.tiles[0];
            let best = perms
                .iter()
                .flat_map(|p| perms.iter().map(move |q| (p, q)))
                .map(|(p, q)| {
                    let g: [u8; 4] = std::array::from_fn(|d| match t.glues[d] {
                        0 => 0,
                        l if d % 2 == 0 => p[usize::from(l) - 1],
                        l => q[usize::from(l) - 1],
                    });
                    (g, t.family)
                })
                .min()
                .unwrap();
            classes.insert(best);
        }
        assert_eq!(enumerate_sf(1, 2, EnumOptions::default()).count(), classes.len());
    }

    #[test]
    fn square_caps() {
        assert_eq!(square_cap(2, 1), 1);
        assert_eq!(square_cap(256, 1), 3);
        assert_eq!(square_cap(1 << 16, 2), 8);
    }

    #[test]
    fn labelings_cover_all_types() {
        let l = labelings(3, 3);
        assert!(l.iter().all(|v| v.contains(&1) && v.contains(&2)));
        assert!(l.iter().all(|v| v.iter().position(|x| *x == 1) < v.iter().position(|x| *x == 2)));
        assert_eq!(labelings(0, 1), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn tiny_shapes() {
        let one = min_tileset(&Shape::square(1).unwrap(), 3);
        assert_eq!(one.found.unwrap().k, 1);
        let domino = min_tileset(&Shape::rectangle(2, 1).unwrap(), 3);
        assert_eq!(domino.found.unwrap().k, 2);
    }
}
