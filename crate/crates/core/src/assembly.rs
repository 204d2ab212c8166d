use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::direction::Direction;
use crate::error::{Error, Result};

/// Lattice position. Ordering is lexicographic on `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const ORIGIN: Pos = Pos { x: 0, y: 0 };

    pub fn new(x: i32, y: i32) -> Pos {
        Pos { x, y }
    }

    pub fn step(self, d: Direction) -> Pos {
        let (dx, dy) = d.offset();
        Pos::new(self.x + dx, self.y + dy)
    }

    pub fn neighbors(self) -> impl Iterator<Item = (Direction, Pos)> {
        Direction::ALL.into_iter().map(move |d| (d, self.step(d)))
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite placement of tile-type indices on the lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Assembly {
    tiles: BTreeMap<Pos, usize>,
}

impl Assembly {
    pub fn single(pos: Pos, tile: usize) -> Assembly {
        let mut tiles = BTreeMap::new();
        tiles.insert(pos, tile);
        Assembly { tiles }
    }

    pub fn from_tiles(tiles: impl IntoIterator<Item = (Pos, usize)>) -> Assembly {
        Assembly {
            tiles: tiles.into_iter().collect(),
        }
    }

    pub fn get(&self, p: Pos) -> Option<usize> {
        self.tiles.get(&p).copied()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.tiles.contains_key(&p)
    }

    /// Returns the previous occupant, if any.
    pub fn place(&mut self, p: Pos, tile: usize) -> Option<usize> {
        self.tiles.insert(p, tile)
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pos, usize)> + '_ {
        self.tiles.iter().map(|(p, t)| (*p, *t))
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.keys().copied()
    }

    pub fn domain(&self) -> Shape {
        Shape {
            cells: self.tiles.keys().copied().collect(),
        }
    }

    /// Empty positions adjacent to the assembly, ascending.
    pub fn perimeter(&self) -> BTreeSet<Pos> {
        self.tiles
            .keys()
            .flat_map(|p| p.neighbors().map(|(_, q)| q))
            .filter(|q| !self.tiles.contains_key(q))
            .collect()
    }

    /// Whether the full grid graph of the domain is connected.
    pub fn is_connected(&self) -> bool {
        is_connected(self.tiles.keys().copied().collect())
    }

    /// Bounding box `(min, max)`, or `None` when empty.
    pub fn bounds(&self) -> Option<(Pos, Pos)> {
        bounds(self.tiles.keys())
    }
}

/// A nonempty, 4-connected set of lattice cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    cells: BTreeSet<Pos>,
}

impl Shape {
    pub fn new(cells: impl IntoIterator<Item = Pos>) -> Result<Shape> {
        let cells: BTreeSet<Pos> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::EmptyShape);
        }
        if !is_connected(cells.clone()) {
            return Err(Error::DisconnectedShape);
        }
        Ok(Shape { cells })
    }

    /// The `n × n` square `{0..n-1}²`.
    pub fn square(n: u32) -> Result<Shape> {
        let n = n as i32;
        Shape::new((0..n).flat_map(|x| (0..n).map(move |y| Pos::new(x, y))))
    }

    pub fn rectangle(w: u32, h: u32) -> Result<Shape> {
        let (w, h) = (w as i32, h as i32);
        Shape::new((0..w).flat_map(|x| (0..h).map(move |y| Pos::new(x, y))))
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.cells.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = Pos> + '_ {
        self.cells.iter().copied()
    }

    pub fn translate(&self, dx: i32, dy: i32) -> Shape {
        Shape {
            cells: self.cells.iter().map(|p| Pos::new(p.x + dx, p.y + dy)).collect(),
        }
    }

    pub fn bounds(&self) -> (Pos, Pos) {
        bounds(self.cells.iter()).expect("shapes are nonempty")
    }
}

fn bounds<'a>(mut it: impl Iterator<Item = &'a Pos>) -> Option<(Pos, Pos)> {
    let first = *it.next()?;
    Some(it.fold((first, first), |(lo, hi), p| {
        (
            Pos::new(lo.x.min(p.x), lo.y.min(p.y)),
            Pos::new(hi.x.max(p.x), hi.y.max(p.y)),
        )
    }))
}

fn is_connected(cells: BTreeSet<Pos>) -> bool {
    let Some(&start) = cells.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for (_, q) in p.neighbors() {
            if cells.contains(&q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == cells.len()
}
