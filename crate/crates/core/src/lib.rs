//! Relative rank of endomorphism monoids of finite G-sets.

pub mod bitset;
pub mod boxes;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod gset;
pub mod lattice;
pub mod layout;
pub mod notation;
pub mod perm;
pub mod rank;
pub mod shift;
pub mod verify;
pub mod wreath;

pub use boxes::{Analysis, BoxDecomposition, ClassBox, SubBox};
pub use equivariant::{EquivariantMap, MonoidClosure};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use gset::GSet;
pub use lattice::{Subgroup, SubgroupLattice};
