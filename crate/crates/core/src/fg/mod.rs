//! Finitely generated abelian groups in invariant-factor form, their
//! endomorphisms, surjective cores and string numbers.

mod core;
mod group;
mod hom;
pub mod random;
mod subgroup;
mod verdict;
mod witness;

pub use self::core::{
    finite_order, injective_on, is_periodic_in_core, matrix_order, surjective_core,
};
pub use group::{parse_presentation, FgGroup, GroupElement, Normalization};
pub use hom::{
    block_endo, check_endo, direct_sum, map_subgroup, DirectSum, Endomorphism, Homomorphism,
};
pub use subgroup::Subgroup;
pub use verdict::{endo_string_numbers, EndoVerdict};
pub use witness::{core_string, endo_witness, CoreString};
