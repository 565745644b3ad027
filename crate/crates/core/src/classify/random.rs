//! Seeded random descriptors for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use super::cardinal::Cardinal;
use super::descriptor::{Atom, GroupDescriptor, Height, PrimeSpec, TypeVector};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn prime<R: Rng>(rng: &mut R) -> u64 {
    *PRIMES.choose(rng).expect("nonempty")
}

fn prime_or_every<R: Rng>(rng: &mut R) -> PrimeSpec {
    if rng.gen_bool(0.15) {
        PrimeSpec::Every
    } else {
        PrimeSpec::Specific(prime(rng))
    }
}

fn cardinal<R: Rng>(rng: &mut R, max_finite: u64) -> Cardinal {
    match rng.gen_range(0..10) {
        0 => Cardinal::Aleph0,
        1 => Cardinal::Continuum,
        2 => Cardinal::AboveContinuum,
        _ => Cardinal::finite(rng.gen_range(1..=max_finite)),
    }
}

fn type_vector<R: Rng>(rng: &mut R) -> TypeVector {
    let n = rng.gen_range(0..=3);
    TypeVector::new((0..n).map(|_| {
        let h = if rng.gen_bool(0.4) {
            Height::Infinite
        } else {
            Height::Finite(rng.gen_range(0..=3))
        };
        (prime(rng), h)
    }))
}

pub fn random_atom<R: Rng>(rng: &mut R) -> Atom {
    match rng.gen_range(0..13) {
        0 => Atom::FreeZ,
        1 => Atom::Cyclic {
            p: prime_or_every(rng),
            k: rng.gen_range(1..=3),
        },
        2 => Atom::Prufer(prime_or_every(rng)),
        3 => Atom::Rationals,
        4 => Atom::PAdic(prime(rng)),
        5 => Atom::RankOne(type_vector(rng)),
        6 => Atom::StandardBasic(prime(rng)),
        7 => Atom::TorsionComplete {
            p: prime(rng),
            bounded: rng.gen_bool(0.5),
        },
        8 => Atom::EndorigidTF {
            rank: cardinal(rng, 5),
            pomega_all_zero: rng.gen_bool(0.5),
        },
        9 => Atom::TotallyProjective(prime(rng)),
        10 => Atom::POmegaPlus1Projective(prime(rng)),
        11 => Atom::PierceHopfian(prime(rng)),
        _ => Atom::ProductZp,
    }
}

/// One to four terms; multiplicities are mostly small and finite.
pub fn random_descriptor<R: Rng>(rng: &mut R) -> GroupDescriptor {
    let n = rng.gen_range(1..=4);
    GroupDescriptor::new((0..n).map(|_| {
        let m = if rng.gen_bool(0.6) {
            Cardinal::one()
        } else {
            cardinal(rng, 3)
        };
        (random_atom(rng), m)
    }))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::classify::{classify, consistency_check, Measure, RULES};
    use crate::value::Verdict;

    #[test]
    fn random_descriptors_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut bad = Vec::new();
        for _ in 0..1000 {
            let d = random_descriptor(&mut rng);
            let c = classify(&d);
            let v = consistency_check(&c);
            if !v.is_empty() {
                bad.push(format!("{}: {:?}", d, v));
            }
            for m in Measure::ALL {
                if c.verdicts.get(m) != Verdict::Unknown && c.steps_for(m).next().is_none() {
                    bad.push(format!("{}: {} has no trace", d, m.key()));
                }
            }
            assert!(c
                .trace
                .iter()
                .all(|t| RULES.iter().any(|r| r.anchor == t.anchor)));
            let her = c.invariants.t_p_size.all_finite() && c.invariants.r0.is_finite();
            if (c.verdicts.s0_t == Verdict::Zero) != her {
                bad.push(format!(
                    "{}: s0_t = {} disagrees with invariants",
                    d, c.verdicts.s0_t
                ));
            }
        }
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
}
