//! String numbers of abelian group endomorphisms.
//!
//! * [`linalg`]: exact integer matrices, normal forms, lattices, polynomials.
//! * [`fg`]: finitely generated abelian groups, endomorphisms, surjective cores
//!   and per-endomorphism verdicts with witnesses.
//! * [`witness`]: string constructions on infinite groups and their verification.
//! * [`classify`]: rule engine deciding string numbers of described groups.
//! * [`tables`]: expected tables and their reproduction.
//! * [`report`]: versioned JSON reports.

pub mod classify;
pub mod error;
pub mod fg;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod tables;
pub mod value;
pub mod witness;

pub use value::{StringValue, Verdict};
