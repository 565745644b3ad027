//! Shifts on `K^(ℕ)` and `K^(ℤ)` for a finite cyclic `K = ℤ(m)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::carriers::SupportedSeq;
use super::{Dynamics, StringKind, StringWitness};
use crate::error::WitnessError;
use crate::value::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shift {
    /// `(x₀, x₁, …) ↦ (0, x₀, x₁, …)`.
    Right,
    /// `(x₀, x₁, …) ↦ (x₁, x₂, …)`.
    Left,
    /// `(xₙ) ↦ (xₙ₋₁)` on `K^(ℤ)`.
    TwoSided,
}

impl Shift {
    pub fn name(self) -> &'static str {
        match self {
            Shift::Right => "right",
            Shift::Left => "left",
            Shift::TwoSided => "two-sided",
        }
    }
}

#[derive(Clone, Debug)]
struct BernoulliShift {
    m: u64,
    shift: Shift,
}

impl BernoulliShift {
    fn reduce(&self, c: BigInt) -> BigInt {
        c.mod_floor(&BigInt::from(self.m))
    }
}

impl Dynamics for BernoulliShift {
    type Elem = SupportedSeq<i64>;

    fn apply(&self, x: &SupportedSeq<i64>) -> SupportedSeq<i64> {
        let mut out = SupportedSeq::zero();
        for (&i, c) in x.entries() {
            let j = match self.shift {
                Shift::Right | Shift::TwoSided => i + 1,
                Shift::Left if i == 0 => continue,
                Shift::Left => i - 1,
            };
            out.add_at(j, c, |v| self.reduce(v));
        }
        out
    }

    fn members(&self, depth: usize) -> Result<Vec<SupportedSeq<i64>>, WitnessError> {
        let sign = match self.shift {
            Shift::Left => 1,
            Shift::TwoSided => -1,
            Shift::Right => {
                return Err(WitnessError::NoWitness(
                    "the right shift has trivial surjective core".into(),
                ))
            }
        };
        Ok((0..=depth as i64)
            .map(|n| SupportedSeq::unit(sign * n, 1))
            .collect())
    }

    fn is_zero(&self, x: &SupportedSeq<i64>) -> bool {
        x.is_zero()
    }

    fn in_carrier(&self, x: &SupportedSeq<i64>) -> bool {
        x.entries().all(|(&i, c)| {
            (self.shift == Shift::TwoSided || i >= 0) && self.reduce(c.clone()) == *c
        })
    }

    fn render(&self, x: &SupportedSeq<i64>) -> String {
        x.to_string()
    }
}

fn check_modulus(m: u64) -> Result<(), WitnessError> {
    if m < 2 {
        Err(WitnessError::InvalidParameters(
            "the coefficient group must be nontrivial".into(),
        ))
    } else {
        Ok(())
    }
}

/// `xₙ = e_n`, null with `k = 1`.
pub fn bernoulli_left_witness(m: u64) -> Result<StringWitness, WitnessError> {
    check_modulus(m)?;
    Ok(StringWitness::new(
        format!("bernoulli-left-{}", m),
        format!("Z({})^(N)", m),
        "(x_0, x_1, …) ↦ (x_1, x_2, …)",
        "x_n = e_n",
        StringKind::Null { k: 1 },
        BernoulliShift {
            m,
            shift: Shift::Left,
        },
    ))
}

/// `xₙ = e_{−n}`, non-singular.
pub fn bernoulli_two_sided_witness(m: u64) -> Result<StringWitness, WitnessError> {
    check_modulus(m)?;
    Ok(StringWitness::new(
        format!("bernoulli-two-sided-{}", m),
        format!("Z({})^(Z)", m),
        "(x_n) ↦ (x_(n-1))",
        "x_n = e_(-n)",
        StringKind::NonSingular,
        BernoulliShift {
            m,
            shift: Shift::TwoSided,
        },
    ))
}

/// A bounded, exactly computed fact backing a zero entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub id: String,
    pub claim: String,
    pub bound: usize,
    pub passed: bool,
    pub detail: String,
}

fn window_units(shift: &BernoulliShift, range: std::ops::Range<i64>) -> Vec<SupportedSeq<i64>> {
    range
        .flat_map(|i| (1..shift.m).map(move |c| SupportedSeq::unit(i, c)))
        .collect()
}

/// For every `B ≤ bound`: `βⁿ` maps each unit vector `c·e_i` to a vector
/// supported at or above `n`, so `⋂_{n≤B} βⁿ(K^(ℕ))` meets the window
/// `[0, B)` only in `0`. A pseudostring of length `B` therefore starts above
/// `B − 1`, no nonzero `x₀` survives every `B`, the surjective core is `0` and
/// all three string numbers vanish.
pub fn right_shift_certificate(m: u64, bound: usize) -> Result<Certificate, WitnessError> {
    check_modulus(m)?;
    let shift = BernoulliShift {
        m,
        shift: Shift::Right,
    };
    let mut passed = true;
    let mut failures = Vec::new();
    for b in 1..=bound as i64 {
        let mut surviving: BTreeSet<i64> = (0..b).collect();
        let mut images = window_units(&shift, 0..b);
        for n in 0..=b {
            let mut hit = BTreeSet::new();
            for y in &images {
                let low = y.support().next().copied();
                if low.is_none_or(|l| l < n) {
                    passed = false;
                    failures.push(format!(
                        "B={} n={}: β^n of a unit vector reaches below n",
                        b, n
                    ));
                }
                hit.extend(y.support().copied().filter(|&j| j < b));
            }
            surviving = surviving.intersection(&hit).copied().collect();
            images = images.iter().map(|y| shift.apply(y)).collect();
        }
        if !surviving.is_empty() {
            passed = false;
            failures.push(format!("B={}: window indices {:?} survive", b, surviving));
        }
    }
    Ok(Certificate {
        id: format!("bernoulli-right-{}", m),
        claim: "sc(β) = 0, hence s = ns = s0 = 0".into(),
        bound,
        passed,
        detail: if passed {
            format!(
                "for every B ≤ {bound}, the images β^n(K^(N)), n ≤ B, intersect to 0 on supports in [0, B)"
            )
        } else {
            failures.join("; ")
        },
    })
}

/// Every `c·e_i` with `i < bound` is killed by `φ^{i+1}`. Each element lies
/// in such a window, so every element is quasi-periodic and `ns = 0`.
pub fn left_shift_quasi_periodic_certificate(
    m: u64,
    bound: usize,
) -> Result<Certificate, WitnessError> {
    check_modulus(m)?;
    let shift = BernoulliShift {
        m,
        shift: Shift::Left,
    };
    let mut failures = Vec::new();
    for x in window_units(&shift, 0..bound as i64) {
        let i = *x.support().next().expect("unit");
        let mut y = x.clone();
        for _ in 0..=i {
            y = shift.apply(&y);
        }
        if !y.is_zero() {
            failures.push(format!("φ^{}({}) = {}", i + 1, x, y));
        }
    }
    Ok(Certificate {
        id: format!("bernoulli-left-qper-{}", m),
        claim: "every element is quasi-periodic, hence ns = 0".into(),
        bound,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("φ^(i+1)(c·e_i) = 0 for all i < {bound}, c ≠ 0")
        } else {
            failures.join("; ")
        },
    })
}

/// Unit vectors `c·e_i` with `|i| ≤ bound` go to nonzero unit vectors with
/// pairwise distinct supports, so the shift is injective and `s0 = 0`.
pub fn two_sided_injectivity_certificate(
    m: u64,
    bound: usize,
) -> Result<Certificate, WitnessError> {
    check_modulus(m)?;
    let shift = BernoulliShift {
        m,
        shift: Shift::TwoSided,
    };
    let b = bound as i64;
    let mut failures = Vec::new();
    let mut targets = BTreeSet::new();
    for i in -b..=b {
        let y = shift.apply(&SupportedSeq::unit(i, 1));
        let support: Vec<i64> = y.support().copied().collect();
        if support.len() != 1 || !targets.insert(support[0]) {
            failures.push(format!("e_{} ↦ {}", i, y));
        }
        for c in 1..m {
            if shift.apply(&SupportedSeq::unit(i, c)).is_zero() {
                failures.push(format!("{}·e_{} ↦ 0", c, i));
            }
        }
    }
    Ok(Certificate {
        id: format!("bernoulli-two-sided-injective-{}", m),
        claim: "ker = 0, hence s0 = 0".into(),
        bound,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("unit vectors at |i| ≤ {bound} map to nonzero unit vectors at distinct indices")
        } else {
            failures.join("; ")
        },
    })
}

/// One shift's string numbers, each backed by a verified witness or certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernoulliRow {
    pub shift: Shift,
    pub s: Verdict,
    pub ns: Verdict,
    pub s0: Verdict,
    pub evidence: Vec<String>,
}

impl BernoulliRow {
    pub fn triple(&self) -> (Verdict, Verdict, Verdict) {
        (self.s, self.ns, self.s0)
    }
}

fn backed(ok: bool, value: Verdict) -> Verdict {
    if ok {
        value
    } else {
        Verdict::Unknown
    }
}

/// The three shifts on `ℤ(m)`, with witnesses verified at `depth` and
/// certificates computed to `depth`.
pub fn bernoulli_table(m: u64, depth: usize) -> Result<Vec<BernoulliRow>, WitnessError> {
    let right = right_shift_certificate(m, depth)?;
    let left = bernoulli_left_witness(m)?;
    let left_report = left.verify(depth)?;
    let left_cert = left_shift_quasi_periodic_certificate(m, depth)?;
    let two = bernoulli_two_sided_witness(m)?;
    let two_report = two.verify(depth)?;
    let two_cert = two_sided_injectivity_certificate(m, depth)?;
    let note =
        |id: &str, passed: bool| format!("{} {}", id, if passed { "passed" } else { "FAILED" });
    Ok(vec![
        BernoulliRow {
            shift: Shift::Right,
            s: backed(right.passed, Verdict::Zero),
            ns: backed(right.passed, Verdict::Zero),
            s0: backed(right.passed, Verdict::Zero),
            evidence: vec![note(&right.id, right.passed)],
        },
        BernoulliRow {
            shift: Shift::Left,
            s: backed(left_report.passed, Verdict::Infinite),
            ns: backed(left_cert.passed, Verdict::Zero),
            s0: backed(left_report.passed, Verdict::Infinite),
            evidence: vec![
                note(&left.id, left_report.passed),
                note(&left_cert.id, left_cert.passed),
            ],
        },
        BernoulliRow {
            shift: Shift::TwoSided,
            s: backed(two_report.passed, Verdict::Infinite),
            ns: backed(two_report.passed, Verdict::Infinite),
            s0: backed(two_cert.passed, Verdict::Zero),
            evidence: vec![
                note(&two.id, two_report.passed),
                note(&two_cert.id, two_cert.passed),
            ],
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_move_supports() {
        let e = |i: i64| SupportedSeq::unit(i, 1);
        let right = BernoulliShift {
            m: 2,
            shift: Shift::Right,
        };
        let left = BernoulliShift {
            m: 2,
            shift: Shift::Left,
        };
        assert_eq!(right.apply(&e(0)), e(1));
        assert_eq!(left.apply(&e(3)), e(2));
        assert!(left.apply(&e(0)).is_zero());
        assert!(right.members(3).is_err());
    }

    #[test]
    fn witnesses_verify() {
        let left = bernoulli_left_witness(2).unwrap().verify(100).unwrap();
        assert!(left.passed);
        let two = bernoulli_two_sided_witness(2).unwrap().verify(100).unwrap();
        assert!(two.passed);
        // the left-shift string is singular
        let w = bernoulli_left_witness(2).unwrap();
        assert!(!w.verify_as(StringKind::NonSingular, 10).unwrap().passed);
        assert!(bernoulli_left_witness(1).is_err());
    }

    #[test]
    fn certificates() {
        assert!(right_shift_certificate(3, 50).unwrap().passed);
        assert!(left_shift_quasi_periodic_certificate(2, 50).unwrap().passed);
        assert!(two_sided_injectivity_certificate(4, 50).unwrap().passed);
    }

    #[test]
    fn table_for_z2() {
        use Verdict::{Infinite as I, Zero as Z};
        let rows = bernoulli_table(2, 50).unwrap();
        let triples: Vec<_> = rows.iter().map(BernoulliRow::triple).collect();
        assert_eq!(triples, vec![(Z, Z, Z), (I, Z, I), (I, I, Z)]);
    }
}
