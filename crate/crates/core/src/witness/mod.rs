//! Explicit strings on exactly represented infinite groups, and their verification.

mod bernoulli;
pub mod carriers;
mod constructions;
mod registry;
mod verify;

use std::fmt;
use std::sync::Arc;

pub use bernoulli::{
    bernoulli_left_witness, bernoulli_table, bernoulli_two_sided_witness,
    left_shift_quasi_periodic_certificate, right_shift_certificate,
    two_sided_injectivity_certificate, BernoulliRow, Certificate, Shift,
};
pub use constructions::{
    basic_small_endo_witness, basic_small_smallness, corner_contains, corner_membership_checks,
    corner_null_witness, corner_shift_image, first_primes, least_primitive_root,
    localization_witness, p_basic_nonsingular_witness, product_diag_witness, product_orbit_length,
    prufer_null_witness, rank_one_backward_depth, z2_unipotent_witness, CornerMembershipReport,
    CornerPrimes, LocalizationTarget, SmallnessRow, CORNER_DEPTH_CAP, FACTORIAL_DEPTH_CAP,
};
pub use registry::{lookup, shipped, verify_id, Entry, EntryKind, IdOutcome, DEFAULT_DEPTH};
pub use verify::{
    verify, CheckOutcome, Dynamics, ErasedDynamics, Failure, StringKind, VerificationReport,
};

use crate::error::WitnessError;

/// A map, a sequence `x₀, x₁, …` and the kind of string it is claimed to be.
#[derive(Clone)]
pub struct StringWitness {
    pub id: String,
    pub carrier: String,
    pub map: String,
    pub generator: String,
    pub kind: StringKind,
    /// Largest depth the construction can represent, if bounded.
    pub depth_cap: Option<usize>,
    dynamics: Arc<dyn ErasedDynamics>,
}

impl StringWitness {
    pub fn new<D: Dynamics + 'static>(
        id: impl Into<String>,
        carrier: impl Into<String>,
        map: impl Into<String>,
        generator: impl Into<String>,
        kind: StringKind,
        dynamics: D,
    ) -> Self {
        StringWitness {
            id: id.into(),
            carrier: carrier.into(),
            map: map.into(),
            generator: generator.into(),
            kind,
            depth_cap: None,
            dynamics: Arc::new(dynamics),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.depth_cap = Some(cap);
        self
    }

    /// Verifies at exactly `depth`; fails if the construction cannot reach it.
    pub fn verify(&self, depth: usize) -> Result<VerificationReport, WitnessError> {
        if let Some(cap) = self.depth_cap {
            if depth > cap {
                return Err(WitnessError::DepthExceeded {
                    requested: depth,
                    available: cap,
                });
            }
        }
        self.dynamics.verify(self.kind, depth)
    }

    /// Verifies the same sequence against a different claimed kind.
    pub fn verify_as(
        &self,
        kind: StringKind,
        depth: usize,
    ) -> Result<VerificationReport, WitnessError> {
        self.dynamics.verify(kind, depth)
    }

    /// Verifies at `min(depth, cap)`.
    pub fn verify_capped(&self, depth: usize) -> Result<VerificationReport, WitnessError> {
        self.verify(self.depth_cap.map_or(depth, |c| c.min(depth)))
    }

    pub fn first_members(&self, count: usize) -> Result<Vec<String>, WitnessError> {
        self.dynamics.render_members(count)
    }
}

impl fmt::Debug for StringWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StringWitness")
            .field("id", &self.id)
            .field("carrier", &self.carrier)
            .field("map", &self.map)
            .field("generator", &self.generator)
            .field("kind", &self.kind)
            .field("depth_cap", &self.depth_cap)
            .finish()
    }
}
