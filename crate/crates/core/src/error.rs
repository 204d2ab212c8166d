use thiserror::Error;

use crate::direction::DirSet;
use crate::glue::GlueId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("glue #{0} has no entry in the strength map")]
    MissingGlue(u32),
    #[error("the null glue must have strength 0")]
    NonZeroNullStrength,
    #[error("temperature must be at least 1")]
    ZeroTemperature,
    #[error("glue `{name}` is used on both the north/south and east/west axes")]
    AxisConflict { name: String },
    #[error("tile `{tile}` carries glue #{glue} on the wrong axis")]
    WrongAxis { tile: String, glue: u32 },
    #[error("duplicate tile name `{0}`")]
    DuplicateTile(String),
    #[error("seed index {seed} out of range for {tiles} tile types")]
    SeedOutOfRange { seed: usize, tiles: usize },
    #[error("expected {expected} cooperation families, got {got}")]
    FamilyCountMismatch { expected: usize, got: usize },
    #[error("family is not upward closed: {member} is a member but {superset} is not")]
    NotUpwardClosed { member: DirSet, superset: DirSet },
    #[error("family contains the empty direction set")]
    EmptySetMember,
    #[error("systems do not share the same tile list and seed")]
    StructureMismatch,
    #[error("shape is empty")]
    EmptyShape,
    #[error("shape is not 4-connected")]
    DisconnectedShape,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn missing(glue: GlueId) -> Self {
        Error::MissingGlue(glue.0)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
