//! Strict-availability parity-check matrices.

mod functional;
mod mols;
mod partition;
mod product;

pub use functional::{functional_code, projective_functionals, FieldMatrix};
pub use mols::{generate_mols, LatinSquare, MolsSet};
pub use partition::{
    build_partition_family, partition_code, FamilyCheck, PartitionFamily, MAX_GROUND_SET,
};
pub use product::product_code;
