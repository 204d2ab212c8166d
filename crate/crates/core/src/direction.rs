use std::fmt;

/// One of the four sides of a tile. The declaration order N, E, S, W is the
/// canonical order used everywhere (bit layout, rendering, glue arrays).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Direction {
        Self::ALL[i & 3]
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::N => Direction::S,
            Direction::S => Direction::N,
            Direction::E => Direction::W,
            Direction::W => Direction::E,
        }
    }

    /// Unit vector pointing from a tile to its neighbour on this side.
    pub fn offset(self) -> (i32, i32) {
        match self {
            Direction::N => (0, 1),
            Direction::S => (0, -1),
            Direction::E => (1, 0),
            Direction::W => (-1, 0),
        }
    }

    pub fn bit(self) -> u8 {
        1 << self.index()
    }

    pub fn letter(self) -> char {
        match self {
            Direction::N => 'N',
            Direction::E => 'E',
            Direction::S => 'S',
            Direction::W => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Direction> {
        match c {
            'N' | 'n' => Some(Direction::N),
            'E' | 'e' => Some(Direction::E),
            'S' | 's' => Some(Direction::S),
            'W' | 'w' => Some(Direction::W),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A subset of the four sides, stored as a 4-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DirSet(u8);

impl DirSet {
    pub const EMPTY: DirSet = DirSet(0);
    pub const FULL: DirSet = DirSet(0b1111);

    /// Panics if `mask > 15`.
    pub fn from_mask(mask: u8) -> DirSet {
        assert!(mask < 16, "direction mask out of range: {mask}");
        DirSet(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = DirSet> {
        (0u8..16).map(DirSet)
    }

    pub fn contains(self, d: Direction) -> bool {
        self.0 & d.bit() != 0
    }

    pub fn with(self, d: Direction) -> DirSet {
        DirSet(self.0 | d.bit())
    }

    pub fn without(self, d: Direction) -> DirSet {
        DirSet(self.0 & !d.bit())
    }

    pub fn union(self, other: DirSet) -> DirSet {
        DirSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: DirSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Direction> {
        Direction::ALL.into_iter().filter(move |d| self.contains(*d))
    }
}

impl FromIterator<Direction> for DirSet {
    fn from_iter<I: IntoIterator<Item = Direction>>(iter: I) -> Self {
        iter.into_iter().fold(DirSet::EMPTY, DirSet::with)
    }
}

impl fmt::Display for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_is_an_involution() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_ne!(d.opposite(), d);
            let (dx, dy) = d.offset();
            let (ox, oy) = d.opposite().offset();
            assert_eq!((dx + ox, dy + oy), (0, 0));
        }
    }

    #[test]
    fn dirset_display_uses_canonical_order() {
        let d: DirSet = [Direction::W, Direction::N, Direction::S].into_iter().collect();
        assert_eq!(d.to_string(), "{N,S,W}");
        assert_eq!(DirSet::EMPTY.to_string(), "{}");
        assert_eq!(d.len(), 3);
    }
}
