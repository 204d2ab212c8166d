//! Engineering toolkit for the abstract Tile Assembly Model.
//!
//! - [`sim`]: seeded assembly dynamics and unique-assembly checks
//! - [`synth`]: integer glue strengths and a temperature realizing a given
//!   per-tile binding behaviour, or a proof that none exist
//! - [`compress`]: linear-temperature rewrite preserving 1- and 2-sided binding
//! - [`witness`]: systems whose behaviour forces exponential temperature
//! - [`search`]: minimal tile systems uniquely assembling a shape

pub mod assembly;
pub mod compress;
pub mod direction;
pub mod error;
pub mod family;
pub mod glue;
pub mod lp;
pub mod search;
pub mod sim;
pub mod stability;
pub mod synth;
pub mod tile;
pub mod witness;

pub use assembly::{Assembly, Pos, Shape};
pub use direction::{DirSet, Direction};
pub use error::{Error, Result};
pub use family::{enumerate_coop_families, minimal_elements, upward_closure, CoopFamily};
pub use glue::{Axis, GlueId, GlueTable};
pub use tile::{cooperation_set, SfTas, StrengthAssignment, Tas, TileSet, TileType};
