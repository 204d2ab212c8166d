use std::collections::HashMap;

use crate::direction::Direction;
use crate::error::{Error, Result};

/// Rendering of the null glue in documents and debug output.
pub const NULL_GLUE_NAME: &str = "-";

/// Interned glue label. Id 0 is the null glue, whose strength is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GlueId(pub u32);

impl GlueId {
    pub const NULL: GlueId = GlueId(0);

    pub fn is_null(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Glues on north and south sides.
    NS,
    /// Glues on east and west sides.
    EW,
}

impl Axis {
    pub fn of(d: Direction) -> Axis {
        match d {
            Direction::N | Direction::S => Axis::NS,
            Direction::E | Direction::W => Axis::EW,
        }
    }
}

/// Interning table for glue labels. North/south labels and east/west labels
/// never share an id; the null glue is common to both axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueTable {
    names: Vec<String>,
    axes: Vec<Option<Axis>>,
    index: HashMap<String, GlueId>,
}

impl Default for GlueTable {
    fn default() -> Self {
        Self::new()
    }
}

impl GlueTable {
    pub fn new() -> GlueTable {
        GlueTable {
            names: vec![NULL_GLUE_NAME.to_string()],
            axes: vec![None],
            index: HashMap::new(),
        }
    }

    /// Returns the id of `name`, interning it on `axis` if unseen. The null
    /// name maps to [`GlueId::NULL`] on either axis.
    pub fn intern(&mut self, name: &str, axis: Axis) -> Result<GlueId> {
        if name == NULL_GLUE_NAME {
            return Ok(GlueId::NULL);
        }
        if let Some(&id) = self.index.get(name) {
            return if self.axes[id.index()] == Some(axis) {
                Ok(id)
            } else {
                Err(Error::AxisConflict {
                    name: name.to_string(),
                })
            };
        }
        let id = GlueId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.axes.push(Some(axis));
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<GlueId> {
        if name == NULL_GLUE_NAME {
            Some(GlueId::NULL)
        } else {
            self.index.get(name).copied()
        }
    }

    pub fn name(&self, id: GlueId) -> &str {
        &self.names[id.index()]
    }

    pub fn axis(&self, id: GlueId) -> Option<Axis> {
        self.axes.get(id.index()).copied().flatten()
    }

    /// Number of ids including the null glue.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Number of non-null glues.
    pub fn non_null_count(&self) -> usize {
        self.names.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.non_null_count() == 0
    }

    /// Non-null ids in interning order.
    pub fn ids(&self) -> impl Iterator<Item = GlueId> {
        (1..self.names.len() as u32).map(GlueId)
    }
}
