//! Upward-closed families of direction sets ("cooperation families") and the
//! antichains that generate them.

use std::fmt;

use crate::direction::DirSet;
use crate::error::{Error, Result};

/// `SUPERSETS[d]` has bit `d'` set for every `d' ⊇ d`.
const SUPERSETS: [u16; 16] = {
    let mut table = [0u16; 16];
    let mut d = 0;
    while d < 16 {
        let mut e = 0;
        while e < 16 {
            if d & !e == 0 {
                table[d] |= 1 << e;
            }
            e += 1;
        }
        d += 1;
    }
    table
};

/// The family of side subsets with which a tile type can bind, as a 16-bit
/// characteristic vector indexed by [`DirSet::mask`].
///
/// A family realized by strengths and a temperature `τ ≥ 1` is upward closed
/// and never contains the empty set; [`CoopFamily::validate`] checks both.
/// The one upward-closed family containing the empty set ([`CoopFamily::TOP`])
/// is representable so that all 168 antichains can be enumerated, and
/// [`CoopFamily::from_mask_unchecked`] allows arbitrary masks so that
/// malformed inputs can be diagnosed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoopFamily(u16);

impl CoopFamily {
    pub const EMPTY: CoopFamily = CoopFamily(0);
    /// Every nonempty direction set.
    pub const ALL_NONEMPTY: CoopFamily = CoopFamily(0xFFFE);
    /// Every direction set including the empty one. Upward closed, but no
    /// temperature `τ ≥ 1` realizes it.
    pub const TOP: CoopFamily = CoopFamily(0xFFFF);

    pub fn new(mask: u16) -> Result<CoopFamily> {
        let f = CoopFamily(mask);
        f.validate()?;
        Ok(f)
    }

    pub fn from_mask_unchecked(mask: u16) -> CoopFamily {
        CoopFamily(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// Upward closure of `generators`, keeping the empty set if given.
    pub fn generated_by(generators: &[DirSet]) -> CoopFamily {
        CoopFamily(
            generators
                .iter()
                .fold(0u16, |m, d| m | SUPERSETS[d.mask() as usize]),
        )
    }

    /// Whether some strengths and temperature `τ ≥ 1` could produce this
    /// family as far as its own shape is concerned: upward closed and
    /// without the empty set.
    pub fn is_realizable_shape(self) -> bool {
        self.validate().is_ok()
    }

    pub fn contains(self, d: DirSet) -> bool {
        self.0 & (1 << d.mask()) != 0
    }

    pub fn insert(&mut self, d: DirSet) {
        self.0 |= 1 << d.mask();
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = DirSet> {
        DirSet::all().filter(move |d| self.contains(*d))
    }

    /// Restriction to direction sets of cardinality 1 or 2.
    pub fn pairs_slice(self) -> CoopFamily {
        CoopFamily(self.0 & DirSet::all().filter(|d| matches!(d.len(), 1 | 2)).fold(0, |m, d| m | 1 << d.mask()))
    }

    pub fn is_upward_closed(self) -> bool {
        self.first_closure_violation().is_none()
    }

    /// First `(member, superset)` pair witnessing that the family is not
    /// upward closed.
    pub fn first_closure_violation(self) -> Option<(DirSet, DirSet)> {
        self.closure_violations().next()
    }

    /// Every `(D, D')` with `D` a member, `D ⊂ D'` and `D'` missing.
    pub fn closure_violations(self) -> impl Iterator<Item = (DirSet, DirSet)> {
        self.members().flat_map(move |d| {
            let missing = SUPERSETS[d.mask() as usize] & !self.0;
            DirSet::all()
                .filter(move |e| missing & (1 << e.mask()) != 0)
                .map(move |e| (d, e))
        })
    }

    pub fn validate(self) -> Result<()> {
        if self.contains(DirSet::EMPTY) {
            return Err(Error::EmptySetMember);
        }
        match self.first_closure_violation() {
            Some((member, superset)) => Err(Error::NotUpwardClosed { member, superset }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for CoopFamily {
    /// Renders the generating antichain, e.g. `{N} {E,S}`; the empty family
    /// renders as `none`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mins = minimal_members(*self);
        if mins.is_empty() {
            return f.write_str("none");
        }
        for (i, d) in mins.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Smallest upward-closed family containing every seed set, with the empty
/// set removed.
pub fn upward_closure(seed_sets: &[DirSet]) -> CoopFamily {
    CoopFamily(CoopFamily::generated_by(seed_sets).0 & !1)
}

/// The antichain of ⊆-minimal members, in ascending mask order.
pub fn minimal_elements(f: CoopFamily) -> Result<Vec<DirSet>> {
    f.validate()?;
    Ok(minimal_members(f))
}

/// Like [`minimal_elements`] but only requires upward closure, so
/// [`CoopFamily::TOP`] yields `[{}]`.
pub fn antichain(f: CoopFamily) -> Result<Vec<DirSet>> {
    if let Some((member, superset)) = f.first_closure_violation() {
        return Err(Error::NotUpwardClosed { member, superset });
    }
    Ok(minimal_members(f))
}

pub(crate) fn minimal_members(f: CoopFamily) -> Vec<DirSet> {
    f.members()
        .filter(|d| {
            // minimal iff no member is a proper subset
            !f.members().any(|e| e != *d && e.is_subset(*d))
        })
        .collect()
}

/// All 168 upward-closed families of side subsets (one per antichain), in
/// ascending mask order. The empty family comes first and [`CoopFamily::TOP`]
/// last; the remaining 167 are exactly the families with
/// [`CoopFamily::is_realizable_shape`]. Built by enumerating antichains.
pub fn enumerate_coop_families() -> Vec<CoopFamily> {
    fn extend(start: u8, chosen: &mut Vec<DirSet>, out: &mut Vec<CoopFamily>) {
        out.push(CoopFamily::generated_by(chosen));
        for m in start..16 {
            let d = DirSet::from_mask(m);
            if chosen.iter().all(|c| !c.is_subset(d) && !d.is_subset(*c)) {
                chosen.push(d);
                extend(m + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::with_capacity(168);
    extend(0, &mut Vec::new(), &mut out);
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direction::Direction::*;

    fn set(ds: &[crate::direction::Direction]) -> DirSet {
        ds.iter().copied().collect()
    }

    #[test]
    fn closure_of_a_singleton_has_eight_members() {
        let f = upward_closure(&[set(&[N])]);
        assert_eq!(f.len(), 8);
        assert!(f.members().all(|d| d.contains(N)));
    }

    #[test]
    fn closure_of_nothing_is_empty() {
        assert_eq!(upward_closure(&[]), CoopFamily::EMPTY);
    }

    #[test]
    fn closure_of_ne_and_s() {
        // brute force over all 16 subsets
        let expected = DirSet::all()
            .filter(|d| set(&[N, E]).is_subset(*d) || d.contains(S))
            .count();
        assert_eq!(expected, 10);
        assert_eq!(upward_closure(&[set(&[N, E]), set(&[S])]).len(), 10);
    }

    #[test]
    fn closure_drops_the_empty_set() {
        let f = upward_closure(&[DirSet::EMPTY]);
        assert_eq!(f, CoopFamily::ALL_NONEMPTY);
    }

    #[test]
    fn minimal_elements_examples() {
        assert_eq!(
            minimal_elements(CoopFamily::ALL_NONEMPTY).unwrap(),
            vec![set(&[N]), set(&[E]), set(&[S]), set(&[W])]
        );
        assert!(minimal_elements(CoopFamily::EMPTY).unwrap().is_empty());
        let at_least_two = CoopFamily::new(
            DirSet::all().filter(|d| d.len() >= 2).fold(0, |m, d| m | 1 << d.mask()),
        )
        .unwrap();
        assert_eq!(at_least_two.len(), 11);
        let mins = minimal_elements(at_least_two).unwrap();
        assert_eq!(mins.len(), 6);
        assert!(mins.iter().all(|d| d.len() == 2));
    }

    #[test]
    fn minimal_elements_rejects_non_closed_input() {
        let mut f = CoopFamily::EMPTY;
        f.insert(set(&[N]));
        assert!(matches!(
            minimal_elements(f),
            Err(Error::NotUpwardClosed { .. })
        ));
        let mut g = CoopFamily::ALL_NONEMPTY;
        g.insert(DirSet::EMPTY);
        assert_eq!(minimal_elements(g), Err(Error::EmptySetMember));
    }

    #[test]
    fn there_are_168_families() {
        let fams = enumerate_coop_families();
        assert_eq!(fams.len(), 168);
        assert_eq!(fams[0], CoopFamily::EMPTY);
        assert_eq!(fams[167], CoopFamily::TOP);
        assert!(fams.windows(2).all(|w| w[0] < w[1]));
        assert!(fams.iter().all(|f| f.is_upward_closed()));
        assert_eq!(fams.iter().filter(|f| f.validate().is_ok()).count(), 167);
    }

    #[test]
    fn display_renders_antichain() {
        let f = upward_closure(&[set(&[S]), set(&[N, E])]);
        assert_eq!(f.to_string(), "{N,E} {S}");
        assert_eq!(CoopFamily::EMPTY.to_string(), "none");
        assert_eq!(CoopFamily::TOP.to_string(), "{}");
    }
}
