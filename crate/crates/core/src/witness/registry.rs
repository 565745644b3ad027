//! Witness and certificate ids.

use serde::Serialize;

use super::bernoulli::{
    bernoulli_left_witness, bernoulli_two_sided_witness, left_shift_quasi_periodic_certificate,
    right_shift_certificate, two_sided_injectivity_certificate, Certificate,
};
use super::constructions::{
    basic_small_endo_witness, corner_null_witness, first_primes, localization_witness,
    p_basic_nonsingular_witness, product_diag_witness, prufer_null_witness, z2_unipotent_witness,
    LocalizationTarget,
};
use super::{StringWitness, VerificationReport};
use crate::error::WitnessError;

pub const DEFAULT_DEPTH: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Witness,
    Certificate,
}

/// One shipped id with what it backs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub id: String,
    pub kind: EntryKind,
    pub backs: String,
}

const SHIPPED: &[(&str, EntryKind, &str)] = &[
    ("z2-unipotent", EntryKind::Witness, "ns(Z^2) = ∞"),
    ("prufer-null-2", EntryKind::Witness, "s0(Z(2^∞)) = ∞"),
    (
        "basic-small-endo-2",
        EntryKind::Witness,
        "s0 = ∞ for an infinite p-group via a small endomorphism",
    ),
    ("p-basic-nonsingular-2", EntryKind::Witness, "ns(B_2) = ∞"),
    ("localization-jp-5-q2", EntryKind::Witness, "ns(J_5) = ∞"),
    (
        "localization-rank1-2",
        EntryKind::Witness,
        "ns = ∞ for rank one with type ∞ at 2",
    ),
    (
        "product-diag-10",
        EntryKind::Witness,
        "ns = ∞ for the product of Z(p) (truncated to 10 primes)",
    ),
    (
        "corner-null-2",
        EntryKind::Witness,
        "s0 = ∞ for a Hopfian torsion-free group",
    ),
    (
        "bernoulli-left-2",
        EntryKind::Witness,
        "s = s0 = ∞ for the left shift on Z(2)^(N)",
    ),
    (
        "bernoulli-two-sided-2",
        EntryKind::Witness,
        "s = ns = ∞ for the two-sided shift on Z(2)^(Z)",
    ),
    (
        "bernoulli-right-2",
        EntryKind::Certificate,
        "s = ns = s0 = 0 for the right shift on Z(2)^(N)",
    ),
    (
        "bernoulli-left-qper-2",
        EntryKind::Certificate,
        "ns = 0 for the left shift on Z(2)^(N)",
    ),
    (
        "bernoulli-two-sided-injective-2",
        EntryKind::Certificate,
        "s0 = 0 for the two-sided shift on Z(2)^(Z)",
    ),
];

pub fn shipped() -> Vec<Entry> {
    SHIPPED
        .iter()
        .map(|&(id, kind, backs)| Entry {
            id: id.into(),
            kind,
            backs: backs.into(),
        })
        .collect()
}

fn parse_u64(s: &str, id: &str) -> Result<u64, WitnessError> {
    s.parse().map_err(|_| WitnessError::UnknownId(id.into()))
}

/// Resolves a parametric witness id such as `prufer-null-3` or `localization-jp-7-q3`.
pub fn lookup(id: &str) -> Result<StringWitness, WitnessError> {
    if id == "z2-unipotent" {
        return Ok(z2_unipotent_witness());
    }
    let prefixed = |prefix: &str| id.strip_prefix(prefix);
    if let Some(p) = prefixed("prufer-null-") {
        return prufer_null_witness(parse_u64(p, id)?);
    }
    if let Some(p) = prefixed("basic-small-endo-") {
        return basic_small_endo_witness(parse_u64(p, id)?, 1);
    }
    if let Some(p) = prefixed("p-basic-nonsingular-") {
        return p_basic_nonsingular_witness(parse_u64(p, id)?);
    }
    if let Some(rest) = prefixed("localization-jp-") {
        let (p, q) = rest
            .split_once("-q")
            .ok_or_else(|| WitnessError::UnknownId(id.into()))?;
        return localization_witness(LocalizationTarget::PAdicIntegers {
            p: parse_u64(p, id)?,
            q: parse_u64(q, id)?,
        });
    }
    if let Some(rest) = prefixed("localization-rank1-") {
        let (p, q) = match rest.split_once("-q") {
            Some((p, q)) => (parse_u64(p, id)?, parse_u64(q, id)?),
            None => {
                let p = parse_u64(rest, id)?;
                (p, p)
            }
        };
        return localization_witness(LocalizationTarget::RankOne { p, q });
    }
    if let Some(n) = prefixed("product-diag-") {
        return product_diag_witness(&first_primes(parse_u64(n, id)? as usize));
    }
    if let Some(p) = prefixed("corner-null-") {
        return corner_null_witness(parse_u64(p, id)?);
    }
    if let Some(m) = prefixed("bernoulli-left-") {
        return bernoulli_left_witness(parse_u64(m, id)?);
    }
    if let Some(m) = prefixed("bernoulli-two-sided-") {
        return bernoulli_two_sided_witness(parse_u64(m, id)?);
    }
    Err(WitnessError::UnknownId(id.into()))
}

fn certificate(id: &str, bound: usize) -> Option<Result<Certificate, WitnessError>> {
    let run = |m: &str, f: fn(u64, usize) -> Result<Certificate, WitnessError>| {
        parse_u64(m, id).and_then(|m| f(m, bound))
    };
    if let Some(m) = id.strip_prefix("bernoulli-right-") {
        return Some(run(m, right_shift_certificate));
    }
    if let Some(m) = id.strip_prefix("bernoulli-left-qper-") {
        return Some(run(m, left_shift_quasi_periodic_certificate));
    }
    if let Some(m) = id.strip_prefix("bernoulli-two-sided-injective-") {
        return Some(run(m, two_sided_injectivity_certificate));
    }
    None
}

/// Outcome of verifying one id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdOutcome {
    pub id: String,
    pub kind: EntryKind,
    pub requested_depth: usize,
    /// Depth actually verified: the request, lowered to the construction's cap.
    pub depth: usize,
    pub depth_cap: Option<usize>,
    pub passed: bool,
    pub description: Option<WitnessDescription>,
    pub report: Option<VerificationReport>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDescription {
    pub carrier: String,
    pub map: String,
    pub generator: String,
}

/// Verifies a witness at `min(depth, cap)` or computes a certificate to `depth`.
pub fn verify_id(id: &str, depth: usize) -> Result<IdOutcome, WitnessError> {
    if let Some(cert) = certificate(id, depth) {
        let cert = cert?;
        return Ok(IdOutcome {
            id: id.into(),
            kind: EntryKind::Certificate,
            requested_depth: depth,
            depth,
            depth_cap: None,
            passed: cert.passed,
            description: None,
            report: None,
            certificate: Some(cert),
        });
    }
    let w = lookup(id)?;
    let report = w.verify_capped(depth)?;
    Ok(IdOutcome {
        id: w.id.clone(),
        kind: EntryKind::Witness,
        requested_depth: depth,
        depth: report.depth,
        depth_cap: w.depth_cap,
        passed: report.passed,
        description: Some(WitnessDescription {
            carrier: w.carrier.clone(),
            map: w.map.clone(),
            generator: w.generator.clone(),
        }),
        report: Some(report),
        certificate: None,
    })
}
