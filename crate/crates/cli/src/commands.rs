use std::collections::BTreeSet;
use std::fmt::Write as _;

use tilesmith_core::compress::{check_conditions, compress, verify_coop2_equiv};
use tilesmith_core::search::{enumeration_bound, min_tileset, square_cap};
use tilesmith_core::sim::{check_unique, grow_greedy, Divergence, Halt, SimBehavior, UniqueVerdict};
use tilesmith_core::synth::{build_system, minimize_tau_relaxation, synthesize, Infeasibility, IneqRow, Sense, SynthResult};
use tilesmith_core::witness::{gen_witness, verify_lower_bound};
use tilesmith_core::{Assembly, Pos, SfTas, Shape, TileSet};

use crate::format::{parse_shape, parse_system, render_assembly, render_grid, render_sf, render_tas, ParseError, SystemDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Parse = 1,
    Overflow = 2,
    Infeasible = 3,
    NotFound = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: ExitCode,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: ExitCode::Success,
        }
    }

    fn with(code: ExitCode, stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    pub fn parse_error(source: &str, e: &ParseError) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("{source}:{e}\n"),
            code: ExitCode::Parse,
        }
    }
}

/// Loads a system; `source` only labels error messages.
pub fn load_system(source: &str, text: &str) -> Result<SystemDoc, Outcome> {
    parse_system(text).map_err(|e| Outcome::parse_error(source, &e))
}

pub fn load_shape(source: &str, text: &str) -> Result<Shape, Outcome> {
    parse_shape(text).map_err(|e| Outcome::parse_error(source, &e))
}

fn behavior(doc: &SystemDoc) -> (SimBehavior, &TileSet) {
    match doc {
        SystemDoc::Standard(t) => (SimBehavior::from(t), &t.tileset),
        SystemDoc::StrengthFree(sf) => (SimBehavior::from(sf), &sf.tileset),
    }
}

pub fn cmd_simulate(doc: &SystemDoc, max_cells: usize, trace: bool) -> Outcome {
    let (b, ts) = behavior(doc);
    let g = grow_greedy(&b, max_cells.max(1));
    let mut out = String::new();
    if trace {
        for e in &g.events {
            let _ = writeln!(out, "attach {} at {} via {}", ts.tile(e.tile).name, e.position, e.matched);
        }
    }
    let halt = match g.halt {
        Halt::Terminal => "terminal",
        Halt::Overflow => "overflow",
    };
    let _ = writeln!(out, "halt: {halt}");
    let _ = writeln!(out, "cells: {}", g.assembly.len());
    out.push_str(&render_assembly(&g.assembly, ts));
    match g.halt {
        Halt::Terminal => Outcome::ok(out),
        Halt::Overflow => Outcome::with(ExitCode::Overflow, out),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SynthEmit {
    /// Print the inequality system.
    pub rows: bool,
    /// Print the least temperature of the rational relaxation.
    pub relaxation: bool,
}

fn render_row(row: &IneqRow, ts: &TileSet) -> String {
    let mut lhs = Vec::new();
    for (v, c) in row.coeffs.iter().enumerate().take(row.coeffs.len() - 1) {
        let name = ts.glues().name(tilesmith_core::GlueId(v as u32 + 1));
        match c {
            0 => {}
            1 => lhs.push(name.to_string()),
            c => lhs.push(format!("{c}·{name}")),
        }
    }
    let lhs = if lhs.is_empty() { "0".to_string() } else { lhs.join(" + ") };
    let rel = match row.sense {
        Sense::AtLeastZero => "≥ τ",
        Sense::AtMostMinusOne => "≤ τ − 1",
    };
    format!("{} {}: {lhs} {rel}", ts.tile(row.tile).name, row.dirs)
}

pub fn render_infeasibility(sf: &SfTas, why: &Infeasibility) -> String {
    let ts = &sf.tileset;
    let mut out = String::from("infeasible\n");
    match why {
        Infeasibility::NotClosed(vs) => {
            out.push_str("cooperation sets are not closed under supersets:\n");
            for v in vs {
                let _ = writeln!(
                    out,
                    "  {}: {} binds but {} does not",
                    ts.tile(v.tile).name,
                    v.member,
                    v.superset
                );
            }
        }
        Infeasibility::EmptySetCooperates(tiles) => {
            out.push_str("tiles binding with no matched side need τ ≤ 0:\n");
            for t in tiles {
                let _ = writeln!(out, "  {}", ts.tile(*t).name);
            }
        }
        Infeasibility::Contradiction { at_least, at_most } => {
            let sys = build_system(sf);
            out.push_str("contradictory pair of rows:\n");
            let _ = writeln!(out, "  {}", render_row(&sys.rows[*at_least], ts));
            let _ = writeln!(out, "  {}", render_row(&sys.rows[*at_most], ts));
        }
        Infeasibility::Certificate(mult) => {
            let sys = build_system(sf);
            out.push_str("rows whose positive combination is contradictory (multiplier: row):\n");
            for (r, m) in mult {
                let row = if *r == usize::MAX {
                    "τ ≥ 1".to_string()
                } else {
                    render_row(&sys.rows[*r], ts)
                };
                let _ = writeln!(out, "  {m}: {row}");
            }
        }
    }
    out
}

pub fn cmd_synth(doc: &SystemDoc, emit: SynthEmit) -> Outcome {
    let sf = doc.strength_free();
    let mut notes = String::new();
    if emit.rows {
        let sys = build_system(&sf);
        for (_, row) in sys.normalized() {
            let _ = writeln!(notes, "# {}", render_row(row, &sf.tileset));
        }
    }
    match synthesize(&sf) {
        Ok(SynthResult::Feasible(s)) => {
            if emit.relaxation {
                if let Some((tau, _)) = minimize_tau_relaxation(&build_system(&sf)) {
                    let _ = writeln!(notes, "# least temperature of the rational relaxation: {tau}");
                }
            }
            let mut out = render_tas(&s.tas);
            out.push_str(&notes);
            Outcome::ok(out)
        }
        Ok(SynthResult::Infeasible(why)) => {
            let mut out = notes;
            out.push_str(&render_infeasibility(&sf, &why));
            Outcome::with(ExitCode::Infeasible, out)
        }
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("synthesis failed: {e}\n"),
            code: ExitCode::Overflow,
        },
    }
}

pub fn cmd_compress(doc: &SystemDoc) -> Outcome {
    let SystemDoc::Standard(t) = doc else {
        return Outcome {
            stdout: String::new(),
            stderr: "compress needs strengths and a temperature\n".into(),
            code: ExitCode::Parse,
        };
    };
    let c = compress(t);
    let failures = check_conditions(t, &c.tas);
    let equiv = verify_coop2_equiv(t, &c.tas).unwrap_or(false);
    let mut out = render_tas(&c.tas);
    let _ = writeln!(out, "# n = {}", c.partition.n());
    let _ = writeln!(out, "# τ′ = {}", c.tau_prime);
    if c.exceeds_tile_bound() {
        let _ = writeln!(out, "# τ′ exceeds 2|T| + 2 = {}", c.tile_bound);
    }
    let _ = writeln!(out, "# single and pair binding preserved: {}", if failures.is_empty() { "yes" } else { "no" });
    let _ = writeln!(out, "# 2-cooperative equivalence: {}", if equiv { "yes" } else { "no" });
    Outcome::ok(out)
}

fn describe_divergence(d: &Divergence, ts: &TileSet) -> String {
    match d {
        Divergence::SeedOutside => "the seed cell (0, 0) is not in the shape\n".into(),
        Divergence::Escape { assembly, event } => format!(
            "{} can attach at {} outside the shape, against\n{}",
            ts.tile(event.tile).name,
            event.position,
            render_assembly(assembly, ts)
        ),
        Divergence::WrongDomain { assembly } => {
            format!("growth stops with a different domain:\n{}", render_assembly(assembly, ts))
        }
        Divergence::Competing {
            assembly,
            expected,
            event,
        } => format!(
            "{} can attach at {} where the terminal assembly has {}, against\n{}",
            ts.tile(event.tile).name,
            event.position,
            ts.tile(*expected).name,
            render_assembly(assembly, ts)
        ),
    }
}

/// `seed_at` is the shape cell holding the seed.
pub fn cmd_check_unique(doc: &SystemDoc, shape: &Shape, seed_at: Pos) -> Outcome {
    let (b, ts) = behavior(doc);
    let s = shape.translate(-seed_at.x, -seed_at.y);
    match check_unique(&b, &s) {
        UniqueVerdict::Unique(a) => Outcome::ok(format!("yes\n{}", render_assembly(&a, ts))),
        UniqueVerdict::NotUnique(d) => Outcome::ok(format!("no\n{}", describe_divergence(&d, ts))),
    }
}

pub const CONSTANT_WARNING: &str =
    "warning: the constant c in the c·log n / log log n tile bound for squares is not known; the cap is a guess\n";

pub fn cmd_min_square(n: u32, c: u64, k_max_override: Option<usize>) -> Outcome {
    let Ok(shape) = Shape::square(n) else {
        return Outcome {
            stdout: String::new(),
            stderr: "n must be positive\n".into(),
            code: ExitCode::Parse,
        };
    };
    let k_max = k_max_override.unwrap_or_else(|| square_cap(u64::from(n), c));
    let res = min_tileset(&shape, k_max);
    let st = &res.stats;
    let mut stats = String::new();
    let _ = writeln!(stats, "# n = {n}, k_max = {k_max}");
    let _ = writeln!(stats, "# skeletons considered: {}", st.assemblies);
    let _ = writeln!(stats, "# skeletons pruned: {}", st.pruned);
    let _ = writeln!(stats, "# candidate systems: {}", st.candidates);
    let _ = writeln!(stats, "# unique-shape checks: {}", st.unique_calls);
    let _ = writeln!(stats, "# synthesis calls: {}", st.synth_calls);
    let top = res.found.as_ref().map_or(k_max, |f| f.k);
    let bound: num_bigint::BigUint = (1..=top.max(1)).map(enumeration_bound).sum();
    let _ = writeln!(stats, "# strength-free systems with ≤ {} tiles, upper bound: {bound}", top.max(1));
    let mut stderr = String::new();
    if k_max_override.is_none() {
        stderr.push_str(CONSTANT_WARNING);
    }
    match res.found {
        Some(f) => {
            let mut out = stats;
            let _ = writeln!(out, "# minimal tile count: {}", f.k);
            let _ = writeln!(out, "# seed cell: {}", f.seed_cell);
            let cells: BTreeSet<Pos> = f.terminal.positions().collect();
            for line in render_grid(&cells, Some(Pos::ORIGIN)).lines() {
                let _ = writeln!(out, "# {line}");
            }
            out.push_str(&render_sf(&f.sf));
            out.push_str("---\n");
            out.push_str(&render_tas(&f.tas));
            Outcome {
                stdout: out,
                stderr,
                code: ExitCode::Success,
            }
        }
        None => {
            let mut out = stats;
            let _ = writeln!(out, "# no system with at most {k_max} tile types");
            Outcome {
                stdout: out,
                stderr,
                code: ExitCode::NotFound,
            }
        }
    }
}

pub fn cmd_witness(n: usize, verify: bool) -> Outcome {
    if n == 0 {
        return Outcome {
            stdout: String::new(),
            stderr: "n must be positive\n".into(),
            code: ExitCode::Parse,
        };
    }
    let w = gen_witness(n);
    let mut out = render_sf(&w.sf);
    if !verify {
        return Outcome::ok(out);
    }
    let report = match verify_lower_bound(n) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                stdout: out,
                stderr: format!("verification failed: {e}\n"),
                code: ExitCode::Infeasible,
            }
        }
    };
    let floor = num_bigint::BigUint::from(1u8) << n;
    out.push_str("---\n");
    out.push_str(&render_tas(&report.tas));
    if report.tau_at_least {
        let _ = writeln!(out, "# synthesized τ ≥ {floor} (τ = {})", report.tau);
    } else {
        let _ = writeln!(out, "# synthesized τ = {} is below {floor}", report.tau);
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "# stage constraints hold: {}", yn(report.constraints));
    let _ = writeln!(out, "# gap invariant holds: {}", yn(report.invariant));
    if let Some(r) = &report.refutation {
        match &r.counterexample {
            None => {
                let _ = writeln!(
                    out,
                    "# τ ≥ {floor} confirmed: no assignment with τ < {floor} and strengths ≤ {} ({} search nodes)",
                    r.max_strength, r.nodes
                );
            }
            Some(v) => {
                let _ = writeln!(out, "# counterexample with τ < {floor}: {v:?}");
            }
        }
    }
    let code = if report.passed() { ExitCode::Success } else { ExitCode::Infeasible };
    Outcome::with(code, out)
}

/// The terminal assembly, for tests comparing against other engines.
pub fn final_assembly(doc: &SystemDoc, max_cells: usize) -> Assembly {
    let (b, _) = behavior(doc);
    grow_greedy(&b, max_cells).assembly
}
