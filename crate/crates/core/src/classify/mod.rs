//! Forward-chaining classifier for string numbers of groups given by
//! descriptors in a small language of atoms and multiplicities.

pub mod cardinal;
pub mod consistency;
pub mod descriptor;
pub mod engine;
pub mod invariants;
pub mod parse;
pub mod random;
pub mod rules;

pub use cardinal::Cardinal;
pub use consistency::consistency_check;
pub use descriptor::{Atom, GroupDescriptor, Height, PrimeSpec, TypeVector};
pub use engine::{classify, Classification, Hopf, Measure, TraceStep, Verdicts};
pub use invariants::{derive_invariants, DerivedInvariants, PrimeMap};
pub use parse::parse_descriptor;
pub use random::random_descriptor;
pub use rules::{rule, Rule, RULES};
