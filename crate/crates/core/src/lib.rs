//! Orbit-finite nominal sets over the equality symmetry, the free extension
//! of permutation-nominal sets to nominal renaming sets, and nominal Moore
//! automata together with their separated restrictions.

pub mod atoms;
pub mod automata;
pub mod error;
pub mod examples;
pub mod free;
pub mod nominal;
pub mod registry;
pub mod report;
pub mod syntax;
pub mod verify;

pub use atoms::{fresh, kernel_partition, Atom, Perm, Subst};
pub use error::{NominalError, Result};
pub use nominal::{NomValue, NominalSetDesc, OrbitShape};
pub use report::CheckReport;
pub use automata::{Kind, MooreAutomaton, Word};
pub use registry::{default_automata, AutomatonFamily, Named, Registry};
