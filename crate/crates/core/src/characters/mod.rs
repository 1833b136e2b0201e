//! Characters built on a generic finite abelian group engine.

pub mod dirichlet;
pub mod group;
pub mod hayes;
pub mod short_interval;
pub mod unit;

pub use dirichlet::{dirichlet_characters, DirichletCharacter, DirichletGroup};
pub use group::{decompose_abelian_group, AbelianGroup, MAX_GROUP_SIZE};
pub use hayes::{DegreeTwist, HayesCharacter};
pub use short_interval::{
    short_interval_characters, top_coefficient_key, ShortIntervalCharacter, ShortIntervalGroup,
};
pub use unit::UnitCharacter;
