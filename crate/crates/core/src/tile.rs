use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::direction::{DirSet, Direction};
use crate::error::{Error, Result};
use crate::family::CoopFamily;
use crate::glue::{Axis, GlueId, GlueTable};

/// A unit square with one glue label per side, indexed by [`Direction::index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileType {
    pub name: String,
    pub glues: [GlueId; 4],
}

impl TileType {
    pub fn new(name: impl Into<String>, glues: [GlueId; 4]) -> TileType {
        TileType {
            name: name.into(),
            glues,
        }
    }

    pub fn glue(&self, d: Direction) -> GlueId {
        self.glues[d.index()]
    }
}

/// An ordered list of tile types together with the glue table they draw from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    glues: GlueTable,
    tiles: Vec<TileType>,
}

impl TileSet {
    pub fn new(glues: GlueTable, tiles: Vec<TileType>) -> Result<TileSet> {
        let mut names = HashSet::new();
        for t in &tiles {
            if !names.insert(t.name.as_str()) {
                return Err(Error::DuplicateTile(t.name.clone()));
            }
            for d in Direction::ALL {
                let g = t.glue(d);
                if g.is_null() {
                    continue;
                }
                if g.index() >= glues.len() || glues.axis(g) != Some(Axis::of(d)) {
                    return Err(Error::WrongAxis {
                        tile: t.name.clone(),
                        glue: g.0,
                    });
                }
            }
        }
        Ok(TileSet { glues, tiles })
    }

    /// Builds a tile set from `(name, [N, E, S, W])` label tuples, interning
    /// labels in order of first appearance. `"-"` is the null glue.
    pub fn from_labels<S: AsRef<str>>(specs: &[(S, [S; 4])]) -> Result<TileSet> {
        let mut glues = GlueTable::new();
        let mut tiles = Vec::with_capacity(specs.len());
        for (name, labels) in specs {
            let mut ids = [GlueId::NULL; 4];
            for d in Direction::ALL {
                ids[d.index()] = glues.intern(labels[d.index()].as_ref(), Axis::of(d))?;
            }
            tiles.push(TileType::new(name.as_ref(), ids));
        }
        TileSet::new(glues, tiles)
    }

    pub fn glues(&self) -> &GlueTable {
        &self.glues
    }

    pub fn tiles(&self) -> &[TileType] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, i: usize) -> &TileType {
        &self.tiles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.tiles.iter().position(|t| t.name == name)
    }

    /// Non-null glue ids that appear on at least one tile side.
    pub fn used_glues(&self) -> Vec<GlueId> {
        let mut used: Vec<GlueId> = self
            .tiles
            .iter()
            .flat_map(|t| t.glues)
            .filter(|g| !g.is_null())
            .collect();
        used.sort_unstable();
        used.dedup();
        used
    }
}

/// Glue strengths, indexed by glue id, plus a temperature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthAssignment {
    strengths: Vec<BigUint>,
    temperature: BigUint,
}

impl StrengthAssignment {
    /// `strengths[0]` is the null glue and must be zero.
    pub fn new(strengths: Vec<BigUint>, temperature: BigUint) -> Result<StrengthAssignment> {
        if temperature.is_zero() {
            return Err(Error::ZeroTemperature);
        }
        match strengths.first() {
            Some(s) if !s.is_zero() => return Err(Error::NonZeroNullStrength),
            _ => {}
        }
        let mut strengths = strengths;
        if strengths.is_empty() {
            strengths.push(BigUint::zero());
        }
        Ok(StrengthAssignment {
            strengths,
            temperature,
        })
    }

    /// Convenience constructor; `strengths` excludes the null glue, so
    /// `strengths[i]` is the strength of glue id `i + 1`.
    pub fn from_u64(strengths: &[u64], temperature: u64) -> Result<StrengthAssignment> {
        let all = std::iter::once(0)
            .chain(strengths.iter().copied())
            .map(BigUint::from)
            .collect();
        StrengthAssignment::new(all, BigUint::from(temperature))
    }

    pub fn strength(&self, g: GlueId) -> Result<&BigUint> {
        self.strengths.get(g.index()).ok_or_else(|| Error::missing(g))
    }

    pub fn temperature(&self) -> &BigUint {
        &self.temperature
    }

    /// Strengths indexed by glue id, the null glue included.
    pub fn strengths(&self) -> &[BigUint] {
        &self.strengths
    }

    /// Number of glue ids covered, the null glue included.
    pub fn len(&self) -> usize {
        self.strengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strengths.len() <= 1
    }

    pub fn max_value(&self) -> BigUint {
        self.strengths
            .iter()
            .chain(std::iter::once(&self.temperature))
            .max()
            .cloned()
            .unwrap_or_else(BigUint::one)
    }
}

/// The family of side subsets of `tile` whose strengths sum to at least the
/// temperature.
pub fn cooperation_set(tile: &TileType, a: &StrengthAssignment) -> Result<CoopFamily> {
    let s: Vec<&BigUint> = Direction::ALL
        .iter()
        .map(|d| a.strength(tile.glue(*d)))
        .collect::<Result<_>>()?;
    let mut fam = CoopFamily::EMPTY;
    for d in DirSet::all().skip(1) {
        let sum: BigUint = d.iter().map(|x| s[x.index()]).sum();
        if sum >= a.temperature {
            fam.insert(d);
        }
    }
    Ok(fam)
}

/// A tile assembly system with a single-tile seed at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tas {
    pub tileset: TileSet,
    pub seed: usize,
    pub assignment: StrengthAssignment,
}

impl Tas {
    pub fn new(tileset: TileSet, seed: usize, assignment: StrengthAssignment) -> Result<Tas> {
        check_seed(seed, tileset.len())?;
        if let Some(g) = tileset.glues().ids().find(|g| assignment.strength(*g).is_err()) {
            return Err(Error::missing(g));
        }
        Ok(Tas {
            tileset,
            seed,
            assignment,
        })
    }

    pub fn coop_families(&self) -> Vec<CoopFamily> {
        self.tileset
            .tiles()
            .iter()
            .map(|t| cooperation_set(t, &self.assignment).expect("validated on construction"))
            .collect()
    }

    /// The locally equivalent strength-free system.
    pub fn strength_free(&self) -> SfTas {
        SfTas {
            tileset: self.tileset.clone(),
            seed: self.seed,
            coop: self.coop_families(),
        }
    }

    pub fn is_locally_equivalent_to(&self, sf: &SfTas) -> bool {
        self.tileset == sf.tileset && self.coop_families() == sf.coop
    }
}

/// A tile assembly system specified by per-tile cooperation families instead
/// of strengths and a temperature.
///
/// Families are not required to be upward closed here; use
/// `synth::validate_closure` to check.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SfTas {
    pub tileset: TileSet,
    pub seed: usize,
    pub coop: Vec<CoopFamily>,
}

impl std::hash::Hash for TileSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tiles.hash(state);
    }
}

impl SfTas {
    pub fn new(tileset: TileSet, seed: usize, coop: Vec<CoopFamily>) -> Result<SfTas> {
        check_seed(seed, tileset.len())?;
        if coop.len() != tileset.len() {
            return Err(Error::FamilyCountMismatch {
                expected: tileset.len(),
                got: coop.len(),
            });
        }
        Ok(SfTas {
            tileset,
            seed,
            coop,
        })
    }
}

fn check_seed(seed: usize, tiles: usize) -> Result<()> {
    if seed >= tiles {
        Err(Error::SeedOutOfRange { seed, tiles })
    } else {
        Ok(())
    }
}
