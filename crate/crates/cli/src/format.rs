//! Sectioned plain-text documents for systems and shapes.
//!
//! ```text
//! # standard system
//! [tiles]
//! seed a b - -
//! grow - - a c
//! [strengths]
//! a = 2
//! b = 1
//! c = 1
//! [temperature]
//! 2
//! [seed]
//! seed
//! ```
//!
//! Tile lines list the N, E, S, W labels; `-` is the null glue. A
//! strength-free document replaces `[strengths]` and `[temperature]` with
//!
//! ```text
//! [cooperation]
//! seed: {N} {E,S}
//! grow: none
//! ```
//!
//! giving the antichain of minimal binding side sets per tile (`none` for a
//! tile that never binds). `#` starts a comment that runs to the end of the line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use tilesmith_core::{
    Assembly, Axis, CoopFamily, DirSet, Direction, GlueTable, Pos, SfTas, Shape, StrengthAssignment, Tas, TileSet,
    TileType,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemDoc {
    Standard(Tas),
    StrengthFree(SfTas),
}

impl SystemDoc {
    /// The strength-free view (a standard system's derived families).
    pub fn strength_free(&self) -> SfTas {
        match self {
            SystemDoc::Standard(t) => t.strength_free(),
            SystemDoc::StrengthFree(sf) => sf.clone(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            SystemDoc::Standard(t) => render_tas(t),
            SystemDoc::StrengthFree(sf) => render_sf(sf),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Tiles,
    Strengths,
    Temperature,
    Seed,
    Cooperation,
}

impl Section {
    fn parse(name: &str) -> Option<Section> {
        Some(match name {
            "tiles" => Section::Tiles,
            "strengths" => Section::Strengths,
            "temperature" => Section::Temperature,
            "seed" => Section::Seed,
            "cooperation" => Section::Cooperation,
            _ => return None,
        })
    }
}

/// A token with its 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

struct Body<'a> {
    header: usize,
    lines: Vec<(usize, &'a str)>,
}

pub fn parse_system(text: &str) -> Result<SystemDoc, ParseError> {
    let mut sections: BTreeMap<Section, Body> = BTreeMap::new();
    let mut current: Option<Section> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let raw = raw.split('#').next().unwrap_or("");
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let col = raw.find('[').unwrap_or(0) + 1;
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| ParseError::at(ln, col, "unterminated section header"))?;
            let s = Section::parse(name.trim())
                .ok_or_else(|| ParseError::at(ln, col, format!("unknown section `{}`", name.trim())))?;
            if sections.contains_key(&s) {
                return Err(ParseError::at(ln, col, format!("duplicate section `{}`", name.trim())));
            }
            sections.insert(s, Body { header: ln, lines: Vec::new() });
            current = Some(s);
            continue;
        }
        let Some(s) = current else {
            return Err(ParseError::at(ln, 1, "content before the first section header"));
        };
        sections.get_mut(&s).expect("section opened").lines.push((ln, raw));
    }

    let tiles = sections
        .get(&Section::Tiles)
        .ok_or_else(|| ParseError::at(0, 0, "missing [tiles] section"))?;
    let tileset = parse_tiles(tiles)?;
    let seed = parse_seed(sections.get(&Section::Seed), &tileset)?;

    let coop = sections.get(&Section::Cooperation);
    let strengths = sections.get(&Section::Strengths);
    let temperature = sections.get(&Section::Temperature);
    match (coop, strengths, temperature) {
        (Some(c), None, None) => {
            let fams = parse_cooperation(c, &tileset)?;
            let sf = SfTas::new(tileset, seed, fams).map_err(|e| ParseError::at(c.header, 1, e.to_string()))?;
            Ok(SystemDoc::StrengthFree(sf))
        }
        (None, Some(s), Some(t)) => {
            let a = parse_strengths(s, t, &tileset)?;
            let tas = Tas::new(tileset, seed, a).map_err(|e| ParseError::at(s.header, 1, e.to_string()))?;
            Ok(SystemDoc::Standard(tas))
        }
        (Some(c), _, _) => Err(ParseError::at(
            c.header,
            1,
            "[cooperation] cannot be combined with [strengths] or [temperature]",
        )),
        (None, Some(s), None) => Err(ParseError::at(s.header, 1, "[strengths] needs a [temperature] section")),
        (None, None, Some(t)) => Err(ParseError::at(t.header, 1, "[temperature] needs a [strengths] section")),
        (None, None, None) => Err(ParseError::at(
            0,
            0,
            "need either [strengths] and [temperature], or [cooperation]",
        )),
    }
}

fn parse_tiles(body: &Body) -> Result<TileSet, ParseError> {
    let mut glues = GlueTable::new();
    let mut tiles = Vec::new();
    let mut names = BTreeSet::new();
    for &(ln, raw) in &body.lines {
        let toks = tokens(raw);
        if toks.len() != 5 {
            let col = toks.get(5).map_or(1, |t| t.0);
            return Err(ParseError::at(
                ln,
                col,
                format!("expected a tile name and 4 glue labels, found {} fields", toks.len()),
            ));
        }
        let (ncol, name) = toks[0];
        if !names.insert(name) {
            return Err(ParseError::at(ln, ncol, format!("duplicate tile name `{name}`")));
        }
        let mut ids = [tilesmith_core::GlueId::NULL; 4];
        for d in Direction::ALL {
            let (col, label) = toks[1 + d.index()];
            ids[d.index()] = glues
                .intern(label, Axis::of(d))
                .map_err(|e| ParseError::at(ln, col, e.to_string()))?;
        }
        tiles.push(TileType::new(name, ids));
    }
    if tiles.is_empty() {
        return Err(ParseError::at(body.header, 1, "no tiles listed"));
    }
    TileSet::new(glues, tiles).map_err(|e| ParseError::at(body.header, 1, e.to_string()))
}

fn single_value<'a>(body: &'a Body, what: &str) -> Result<(usize, usize, &'a str), ParseError> {
    let mut found = None;
    for &(ln, raw) in &body.lines {
        for (col, tok) in tokens(raw) {
            if found.is_some() {
                return Err(ParseError::at(ln, col, format!("[{what}] takes a single value")));
            }
            found = Some((ln, col, tok));
        }
    }
    found.ok_or_else(|| ParseError::at(body.header, 1, format!("[{what}] is empty")))
}

fn parse_seed(body: Option<&Body>, tileset: &TileSet) -> Result<usize, ParseError> {
    let body = body.ok_or_else(|| ParseError::at(0, 0, "missing [seed] section"))?;
    let (ln, col, name) = single_value(body, "seed")?;
    tileset
        .index_of(name)
        .ok_or_else(|| ParseError::at(ln, col, format!("unknown tile `{name}`")))
}

fn parse_number(ln: usize, col: usize, tok: &str) -> Result<BigUint, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::at(ln, col, format!("expected a nonnegative integer, found `{tok}`")));
    }
    BigUint::from_str(tok).map_err(|e| ParseError::at(ln, col, e.to_string()))
}

fn parse_strengths(body: &Body, temp: &Body, tileset: &TileSet) -> Result<StrengthAssignment, ParseError> {
    let glues = tileset.glues();
    let mut values: Vec<Option<BigUint>> = vec![None; glues.len()];
    values[0] = Some(BigUint::ZERO);
    for &(ln, raw) in &body.lines {
        let toks = tokens(raw);
        let ok = toks.len() == 3 && toks[1].1 == "=";
        if !ok {
            return Err(ParseError::at(ln, toks.first().map_or(1, |t| t.0), "expected `label = strength`"));
        }
        let (lcol, label) = toks[0];
        let id = glues
            .lookup(label)
            .filter(|id| !id.is_null())
            .ok_or_else(|| ParseError::at(ln, lcol, format!("unknown glue label `{label}`")))?;
        if values[id.index()].is_some() {
            return Err(ParseError::at(ln, lcol, format!("duplicate strength for `{label}`")));
        }
        values[id.index()] = Some(parse_number(ln, toks[2].0, toks[2].1)?);
    }
    let mut strengths = Vec::with_capacity(values.len());
    for (i, v) in values.into_iter().enumerate() {
        let name = glues.name(tilesmith_core::GlueId(i as u32));
        strengths.push(v.ok_or_else(|| ParseError::at(body.header, 1, format!("no strength given for `{name}`")))?);
    }
    let (ln, col, tok) = single_value(temp, "temperature")?;
    let tau = parse_number(ln, col, tok)?;
    StrengthAssignment::new(strengths, tau).map_err(|e| ParseError::at(ln, col, e.to_string()))
}

fn parse_dirset(ln: usize, col: usize, tok: &str) -> Result<DirSet, ParseError> {
    let inner = tok
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| ParseError::at(ln, col, format!("expected a side set like {{N,E}}, found `{tok}`")))?;
    let mut set = DirSet::EMPTY;
    for part in inner.split(',').filter(|p| !p.is_empty()) {
        let mut chars = part.chars();
        let d = match (chars.next(), chars.next()) {
            (Some(c), None) => Direction::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| ParseError::at(ln, col, format!("unknown side `{part}`")))?;
        if set.contains(d) {
            return Err(ParseError::at(ln, col, format!("side `{part}` repeated")));
        }
        set = set.with(d);
    }
    Ok(set)
}

fn parse_cooperation(body: &Body, tileset: &TileSet) -> Result<Vec<CoopFamily>, ParseError> {
    let mut fams: Vec<Option<CoopFamily>> = vec![None; tileset.len()];
    for &(ln, raw) in &body.lines {
        let toks = tokens(raw);
        let (ncol, head) = toks[0];
        let name = head
            .strip_suffix(':')
            .ok_or_else(|| ParseError::at(ln, ncol, "expected `tile: sets…`"))?;
        let t = tileset
            .index_of(name)
            .ok_or_else(|| ParseError::at(ln, ncol, format!("unknown tile `{name}`")))?;
        if fams[t].is_some() {
            return Err(ParseError::at(ln, ncol, format!("duplicate entry for `{name}`")));
        }
        let rest = &toks[1..];
        let fam = match rest {
            [] => return Err(ParseError::at(ln, ncol, "missing side sets (use `none` for a tile that never binds)")),
            [(_, "none")] => CoopFamily::EMPTY,
            _ => {
                let sets = rest
                    .iter()
                    .map(|&(c, tok)| parse_dirset(ln, c, tok))
                    .collect::<Result<Vec<_>, _>>()?;
                CoopFamily::generated_by(&sets)
            }
        };
        fams[t] = Some(fam);
    }
    fams.into_iter()
        .enumerate()
        .map(|(t, f)| {
            f.ok_or_else(|| {
                ParseError::at(body.header, 1, format!("no cooperation entry for `{}`", tileset.tile(t).name))
            })
        })
        .collect()
}

fn render_tiles(out: &mut String, ts: &TileSet) {
    out.push_str("[tiles]\n");
    for t in ts.tiles() {
        out.push_str(&t.name);
        for g in t.glues {
            out.push(' ');
            out.push_str(ts.glues().name(g));
        }
        out.push('\n');
    }
}

pub fn render_tas(t: &Tas) -> String {
    let mut out = String::new();
    render_tiles(&mut out, &t.tileset);
    out.push_str("[strengths]\n");
    // first-appearance order, which is the order a parse interns them in
    let mut order = Vec::new();
    for tile in t.tileset.tiles() {
        for g in tile.glues {
            if !g.is_null() && !order.contains(&g) {
                order.push(g);
            }
        }
    }
    for g in order {
        let s = t.assignment.strength(g).expect("validated system");
        out.push_str(&format!("{} = {s}\n", t.tileset.glues().name(g)));
    }
    out.push_str(&format!("[temperature]\n{}\n", t.assignment.temperature()));
    out.push_str(&format!("[seed]\n{}\n", t.tileset.tile(t.seed).name));
    out
}

pub fn render_sf(sf: &SfTas) -> String {
    let mut out = String::new();
    render_tiles(&mut out, &sf.tileset);
    out.push_str("[cooperation]\n");
    for (t, f) in sf.tileset.tiles().iter().zip(&sf.coop) {
        out.push_str(&format!("{}: {f}\n", t.name));
    }
    out.push_str(&format!("[seed]\n{}\n", sf.tileset.tile(sf.seed).name));
    out
}

/// Splits a stream holding several documents separated by `---` lines.
pub fn split_documents(text: &str) -> Vec<String> {
    let mut docs = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "---" {
            docs.push(String::new());
        } else {
            let d = docs.last_mut().expect("nonempty");
            d.push_str(line);
            d.push('\n');
        }
    }
    docs
}

/// Either one `x y` pair per line, or an ASCII grid of `#` (filled) and `.`
/// (empty) whose first line is the top row and whose bottom-left character
/// is `(0, 0)`.
pub fn parse_shape(text: &str) -> Result<Shape, ParseError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(ParseError::at(0, 0, "shape is empty"));
    }
    let is_grid = lines.iter().all(|(_, l)| l.trim().chars().all(|c| c == '#' || c == '.'));
    let mut cells = Vec::new();
    if is_grid {
        let rows = lines.len() as i32;
        for (r, (_, l)) in lines.iter().enumerate() {
            for (x, c) in l.trim().chars().enumerate() {
                if c == '#' {
                    cells.push(Pos::new(x as i32, rows - 1 - r as i32));
                }
            }
        }
    } else {
        let mut seen = BTreeSet::new();
        for &(ln, l) in &lines {
            let toks = tokens(l);
            if toks.len() != 2 {
                return Err(ParseError::at(ln, 1, "expected `x y`"));
            }
            let coord = |(col, tok): (usize, &str)| {
                tok.parse::<i32>()
                    .map_err(|_| ParseError::at(ln, col, format!("expected an integer, found `{tok}`")))
            };
            let p = Pos::new(coord(toks[0])?, coord(toks[1])?);
            if !seen.insert(p) {
                return Err(ParseError::at(ln, 1, format!("cell {p} listed twice")));
            }
            cells.push(p);
        }
    }
    Shape::new(cells).map_err(|e| ParseError::at(lines[0].0, 1, e.to_string()))
}

/// Coordinate-list form, sorted; parses back to the same shape.
pub fn render_shape(s: &Shape) -> String {
    let mut cells: Vec<Pos> = s.cells().collect();
    cells.sort_by_key(|p| (p.y, p.x));
    cells.iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
}

/// `#`/`.` picture of a set of cells, top row first; `mark` (if inside) is
/// drawn as `S`.
pub fn render_grid(cells: &BTreeSet<Pos>, mark: Option<Pos>) -> String {
    let Some(first) = cells.iter().next() else {
        return String::new();
    };
    let (mut lo, mut hi) = (*first, *first);
    for p in cells {
        lo = Pos::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Pos::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mut out = String::new();
    for y in (lo.y..=hi.y).rev() {
        for x in lo.x..=hi.x {
            let p = Pos::new(x, y);
            out.push(if Some(p) == mark {
                'S'
            } else if cells.contains(&p) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

/// Picture plus one `x y tile` line per cell, top row first.
pub fn render_assembly(a: &Assembly, ts: &TileSet) -> String {
    let cells: BTreeSet<Pos> = a.positions().collect();
    let mut out = render_grid(&cells, Some(Pos::ORIGIN));
    let mut tiles: Vec<(Pos, usize)> = a.iter().collect();
    tiles.sort_by_key(|(p, _)| (-p.y, p.x));
    for (p, t) in tiles {
        out.push_str(&format!("{} {} {}\n", p.x, p.y, ts.tile(t).name));
    }
    out
}
