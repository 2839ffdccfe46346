//! Concrete nominal values, set descriptors, orbits and sampled checks.

pub mod check;
pub mod orbit;
pub mod sample;
pub mod set;
pub mod value;

pub use check::{is_equivariant, is_sb_equivariant, supports, supports_under, transfers_support, Monoid};
pub use orbit::{dimension, orbit_shape, representative, Dimension, OrbitShape, ShapeDescription};
pub use sample::Sampler;
pub use set::{act, NominalSetDesc};
pub use value::NomValue;
