//! Inputs shared by the benchmarks.

use tilesmith_core::{StrengthAssignment, Tas, TileSet};

/// An `n × n` square assembled row by row at temperature 2: the first column
/// grows north on strength-2 glues and every other cell needs its west and
/// south neighbours. Tile `(x, y)` is unique, so the system is directed.
pub fn square_system(n: usize) -> Tas {
    let mut specs = Vec::new();
    let mut strengths = Vec::new();
    let ns = |x: usize, y: usize| format!("v{x}_{y}");
    let ew = |x: usize, y: usize| format!("h{x}_{y}");
    for y in 0..n {
        for x in 0..n {
            let north = if y + 1 < n { ns(x, y) } else { "-".into() };
            let east = if x + 1 < n { ew(x, y) } else { "-".into() };
            let south = if y > 0 { ns(x, y - 1) } else { "-".into() };
            let west = if x > 0 { ew(x - 1, y) } else { "-".into() };
            specs.push((format!("t{x}_{y}"), [north, east, south, west]));
        }
    }
    let ts = TileSet::from_labels(&specs).expect("square tiles");
    for g in ts.glues().ids() {
        let name = ts.glues().name(g);
        // column 0 and row 0 grow on strong glues
        let strong = name.starts_with("v0_") || name.ends_with("_0") && name.starts_with('h');
        strengths.push(if strong { 2 } else { 1 });
    }
    let a = StrengthAssignment::from_u64(&strengths, 2).expect("valid strengths");
    Tas::new(ts, 0, a).expect("valid system")
}
