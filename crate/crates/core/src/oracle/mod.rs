//! Brute-force ground truth on finite abelian groups.

mod graph;
mod sweep;

pub use graph::{build_graph, FunctionalGraph, StringSearch};
pub use sweep::{
    all_endomorphisms, cross_check, endomorphism_count, finite_abelian_groups, oracle_cross_check,
    sweep, CrossCheck, GroupSweep, SweepMode, SweepReport, DEFAULT_SEED, ENUMERATION_LIMIT,
    SAMPLES,
};
