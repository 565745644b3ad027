use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::cardinal::Cardinal;
use super::descriptor::{Atom, GroupDescriptor, Height, PrimeSpec};

/// A cardinal for each prime: explicit values at finitely many primes and a
/// shared value at every other prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimeMap {
    listed: BTreeMap<u64, Cardinal>,
    others: Cardinal,
}

impl PrimeMap {
    fn new(base: Cardinal, primes: &[u64]) -> Self {
        PrimeMap {
            listed: primes.iter().map(|&p| (p, base.clone())).collect(),
            others: base,
        }
    }

    /// Combines `value(p)` into the entry of each prime covered by `at`;
    /// `value(None)` stands for a prime that is not listed.
    fn combine(
        &mut self,
        at: PrimeSpec,
        value: impl Fn(Option<u64>) -> Cardinal,
        op: fn(&Cardinal, &Cardinal) -> Cardinal,
    ) {
        match at {
            PrimeSpec::Specific(p) => {
                let old = self.get(p);
                self.listed.insert(p, op(&old, &value(Some(p))));
            }
            PrimeSpec::Every => {
                for (&p, v) in self.listed.iter_mut() {
                    *v = op(v, &value(Some(p)));
                }
                self.others = op(&self.others, &value(None));
            }
        }
    }

    pub fn get(&self, p: u64) -> Cardinal {
        self.listed
            .get(&p)
            .cloned()
            .unwrap_or_else(|| self.others.clone())
    }

    /// Value shared by all primes not listed.
    pub fn others(&self) -> &Cardinal {
        &self.others
    }

    pub fn listed(&self) -> impl Iterator<Item = (u64, &Cardinal)> {
        self.listed.iter().map(|(&p, c)| (p, c))
    }

    pub fn all_finite(&self) -> bool {
        self.others.is_finite() && self.listed.values().all(Cardinal::is_finite)
    }

    /// A prime where the value is infinite, `Every` when the shared value is.
    pub fn first_infinite(&self) -> Option<PrimeSpec> {
        self.listed
            .iter()
            .find(|(_, c)| !c.is_finite())
            .map(|(&p, _)| PrimeSpec::Specific(p))
            .or_else(|| (!self.others.is_finite()).then_some(PrimeSpec::Every))
    }
}

impl Serialize for PrimeMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map: BTreeMap<String, String> = self
            .listed
            .iter()
            .map(|(p, c)| (p.to_string(), c.token()))
            .collect();
        // the shared value may vary with the prime; only its finiteness is kept
        let others = match &self.others {
            c if c.is_finite() && c.as_u64().is_none_or(|n| n > 1) => "finite".into(),
            c => c.token(),
        };
        map.insert("*".into(), others);
        map.serialize(serializer)
    }
}

/// Summary of the maximal divisible subgroup `d(G)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DivisiblePart {
    pub torsion_free_rank: Cardinal,
    pub p_ranks: PrimeMap,
}

/// Structural invariants read off the descriptor atom by atom. For flag atoms
/// the recorded sizes and ranks are lower bounds; finiteness is exact.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DerivedInvariants {
    pub r0: Cardinal,
    pub r_p: PrimeMap,
    pub t_p_size: PrimeMap,
    pub cardinality: Cardinal,
    pub is_trivial: bool,
    pub is_finite: bool,
    pub is_finitely_generated: bool,
    pub is_free: bool,
    pub is_torsion: bool,
    pub is_torsion_free: bool,
    pub is_divisible: bool,
    pub is_reduced: bool,
    pub is_reduced_torsion_part: bool,
    /// Primes whose `p`-component is infinite and bounded.
    pub bounded_infinite_p_parts: Vec<PrimeSpec>,
    /// Primes whose `p`-component is an unbounded direct sum of cyclic groups.
    pub unbounded_basic_p_parts: Vec<u64>,
    /// Primes where some finite Ulm–Kaplansky invariant is infinite.
    pub infinite_uk_invariant: Vec<PrimeSpec>,
    /// Some torsion-free atom has `p^ω ≠ 0` for some prime `p`.
    pub torsion_free_pomega_nonzero: bool,
    /// Such a prime, when one is known explicitly.
    pub pomega_prime: Option<u64>,
    /// For `r₀ = 1`: whether `∞` occurs in the type of `G/t(G)`.
    pub quotient_type_has_infinity: Option<bool>,
    pub divisible_part: DivisiblePart,
    pub sizes_are_lower_bounds: bool,
}

struct Contribution {
    r0: Cardinal,
    prime: Option<PrimeSpec>,
    r_p: Cardinal,
    /// Order of the `p`-component at a representative prime.
    t_p: Cardinal,
    size: Cardinal,
    divisible: bool,
    finite: bool,
    fg: bool,
    free: bool,
    bounded: bool,
    basic: bool,
    pomega: Option<Option<u64>>,
}

fn contribution(atom: &Atom) -> Contribution {
    let base = Contribution {
        r0: Cardinal::zero(),
        prime: atom.torsion_prime(),
        r_p: Cardinal::zero(),
        t_p: Cardinal::one(),
        size: Cardinal::Aleph0,
        divisible: false,
        finite: false,
        fg: false,
        free: false,
        bounded: false,
        basic: false,
        pomega: None,
    };
    let torsion_free = |r0: Cardinal, size: Cardinal, pomega| Contribution {
        r0,
        size,
        pomega,
        ..base
    };
    let p_group = |r_p: Cardinal, t_p: Cardinal, size: Cardinal| Contribution {
        r_p,
        t_p,
        size,
        ..base
    };
    match atom {
        Atom::FreeZ => Contribution {
            fg: true,
            free: true,
            ..torsion_free(Cardinal::one(), Cardinal::Aleph0, None)
        },
        Atom::Cyclic { p, k } => {
            let order = match p {
                PrimeSpec::Specific(p) => Cardinal::Finite(BigUint::from(*p).pow(*k)),
                PrimeSpec::Every => Cardinal::Aleph0,
            };
            let fg = matches!(p, PrimeSpec::Specific(_));
            let t_p = component_order(atom, None);
            Contribution {
                finite: fg,
                fg,
                bounded: true,
                basic: true,
                ..p_group(Cardinal::one(), t_p, order)
            }
        }
        Atom::Prufer(_) => Contribution {
            divisible: true,
            ..p_group(Cardinal::one(), Cardinal::Aleph0, Cardinal::Aleph0)
        },
        Atom::Rationals => Contribution {
            divisible: true,
            ..torsion_free(Cardinal::one(), Cardinal::Aleph0, Some(Some(2)))
        },
        Atom::PAdic(p) => torsion_free(
            Cardinal::Continuum,
            Cardinal::Continuum,
            Some(Some(if *p == 2 { 3 } else { 2 })),
        ),
        Atom::RankOne(t) => {
            let inf = t.infinite_primes();
            let pomega = inf.first().map(|&p| Some(p));
            let fg = inf.is_empty();
            Contribution {
                fg,
                free: fg,
                ..torsion_free(Cardinal::one(), Cardinal::Aleph0, pomega)
            }
        }
        Atom::StandardBasic(_) => Contribution {
            basic: true,
            ..p_group(Cardinal::Aleph0, Cardinal::Aleph0, Cardinal::Aleph0)
        },
        Atom::TorsionComplete { bounded: true, .. } => Contribution {
            bounded: true,
            ..p_group(Cardinal::Aleph0, Cardinal::Aleph0, Cardinal::Aleph0)
        },
        Atom::TorsionComplete { bounded: false, .. } => p_group(
            Cardinal::Continuum,
            Cardinal::Continuum,
            Cardinal::Continuum,
        ),
        Atom::EndorigidTF {
            rank,
            pomega_all_zero,
        } => torsion_free(
            rank.clone(),
            rank.clone().max(Cardinal::Aleph0),
            (!pomega_all_zero).then_some(None),
        ),
        Atom::TotallyProjective(_) | Atom::POmegaPlus1Projective(_) => {
            p_group(Cardinal::Aleph0, Cardinal::Aleph0, Cardinal::Aleph0)
        }
        Atom::PierceHopfian(_) => {
            p_group(Cardinal::Aleph0, Cardinal::Continuum, Cardinal::Continuum)
        }
        Atom::ProductZp => Contribution {
            r0: Cardinal::Continuum,
            bounded: true,
            basic: true,
            ..p_group(
                Cardinal::one(),
                component_order(atom, None),
                Cardinal::Continuum,
            )
        },
    }
}

/// Order of the `p`-component of a bounded atom at `p`, or at a representative
/// unlisted prime when `p` is `None`.
fn component_order(atom: &Atom, p: Option<u64>) -> Cardinal {
    let at = |q: u64, k: u32| Cardinal::Finite(BigUint::from(p.unwrap_or(q)).pow(k));
    match atom {
        Atom::Cyclic {
            p: PrimeSpec::Specific(q),
            k,
        } => at(*q, *k),
        Atom::Cyclic { k, .. } => at(2, *k),
        Atom::ProductZp => at(2, 1),
        _ => contribution(atom).t_p,
    }
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

pub fn derive_invariants(d: &GroupDescriptor) -> DerivedInvariants {
    let primes = d.named_primes();
    let mut inv = DerivedInvariants {
        r0: Cardinal::zero(),
        r_p: PrimeMap::new(Cardinal::zero(), &primes),
        t_p_size: PrimeMap::new(Cardinal::one(), &primes),
        cardinality: Cardinal::one(),
        is_trivial: d.is_trivial(),
        is_finite: true,
        is_finitely_generated: true,
        is_free: true,
        is_torsion: true,
        is_torsion_free: true,
        is_divisible: true,
        is_reduced: true,
        is_reduced_torsion_part: true,
        bounded_infinite_p_parts: Vec::new(),
        unbounded_basic_p_parts: Vec::new(),
        infinite_uk_invariant: Vec::new(),
        torsion_free_pomega_nonzero: false,
        pomega_prime: None,
        quotient_type_has_infinity: None,
        divisible_part: DivisiblePart {
            torsion_free_rank: Cardinal::zero(),
            p_ranks: PrimeMap::new(Cardinal::zero(), &primes),
        },
        sizes_are_lower_bounds: d.atoms().any(Atom::is_flag),
    };
    for (atom, mult) in d.summands() {
        let c = contribution(atom);
        let finite_mult = mult.is_finite();
        inv.r0 = inv.r0.add(&c.r0.mul(mult));
        if let Some(p) = c.prime {
            let rank = c.r_p.mul(mult);
            inv.r_p.combine(p, |_| rank.clone(), Cardinal::add);
            inv.t_p_size.combine(
                p,
                |q| component_order(atom, q).power_sum(mult),
                Cardinal::mul,
            );
            if c.divisible {
                inv.divisible_part
                    .p_ranks
                    .combine(p, |_| rank.clone(), Cardinal::add);
            }
            if !finite_mult && c.bounded
                || matches!(atom, Atom::TorsionComplete { bounded: true, .. })
            {
                push_unique(&mut inv.infinite_uk_invariant, p);
            }
        }
        inv.cardinality = inv.cardinality.mul(&c.size.power_sum(mult));
        inv.is_finite &= c.finite && finite_mult;
        inv.is_finitely_generated &= c.fg && finite_mult;
        inv.is_free &= c.free;
        inv.is_divisible &= c.divisible;
        match atom.torsion_split() {
            (Some(_), None) => inv.is_torsion_free = false,
            (None, Some(_)) => inv.is_torsion = false,
            _ => {
                inv.is_torsion = false;
                inv.is_torsion_free = false;
            }
        }
        if c.divisible {
            inv.is_reduced = false;
            if atom.nature() == super::descriptor::Nature::Torsion {
                inv.is_reduced_torsion_part = false;
            } else {
                inv.divisible_part.torsion_free_rank =
                    inv.divisible_part.torsion_free_rank.add(mult);
            }
        }
        if let Some(hint) = c.pomega {
            inv.torsion_free_pomega_nonzero = true;
            inv.pomega_prime = inv.pomega_prime.or(hint);
        }
    }
    for &p in &primes {
        let comp = d.p_component(p);
        let atoms: Vec<Atom> = comp.atoms().cloned().collect();
        let bounded = atoms.iter().all(|a| contribution(a).bounded);
        let basic = atoms.iter().all(|a| contribution(a).basic);
        if bounded && !inv.t_p_size.get(p).is_finite() {
            push_unique(&mut inv.bounded_infinite_p_parts, PrimeSpec::Specific(p));
        }
        if basic && !bounded {
            inv.unbounded_basic_p_parts.push(p);
        }
    }
    if inv.t_p_size.others() != &Cardinal::one() {
        let mut generic = d
            .atoms()
            .filter(|a| a.torsion_prime() == Some(PrimeSpec::Every));
        if generic.all(|a| contribution(a).bounded) && !inv.t_p_size.others().is_finite() {
            push_unique(&mut inv.bounded_infinite_p_parts, PrimeSpec::Every);
        }
    }
    if inv.r0 == Cardinal::one() {
        let quotient = d.torsion_free_quotient();
        inv.quotient_type_has_infinity = quotient.sole_atom().map(|a| match a {
            Atom::FreeZ => false,
            Atom::Rationals => true,
            Atom::RankOne(t) => t.has_infinity(),
            Atom::EndorigidTF {
                pomega_all_zero, ..
            } => !pomega_all_zero,
            _ => unreachable!("rank-one torsion-free atoms only"),
        });
    }
    inv
}

/// The `p`-heights that make a rank-one atom's type, for display.
pub fn type_heights(atom: &Atom) -> Vec<(u64, Height)> {
    match atom {
        Atom::RankOne(t) => t.exceptions().collect(),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::parse::parse_descriptor;

    fn inv(s: &str) -> DerivedInvariants {
        derive_invariants(&parse_descriptor(s).unwrap())
    }

    #[test]
    fn prufer_group() {
        let i = inv("Prufer(3)");
        assert_eq!(i.r_p.get(3), Cardinal::one());
        assert!(!i.t_p_size.get(3).is_finite());
        assert!(i.is_torsion && i.is_divisible && !i.is_reduced_torsion_part);
        assert_eq!(i.r_p.get(2), Cardinal::zero());
    }

    #[test]
    fn p_adic_integers() {
        let i = inv("Jp(5)");
        assert!(i.is_torsion_free && i.is_reduced);
        assert_eq!(i.r0, Cardinal::Continuum);
        assert!(i.torsion_free_pomega_nonzero);
        assert_eq!(i.pomega_prime, Some(2));
    }

    #[test]
    fn standard_basic() {
        let i = inv("Bp(2)");
        assert!(i.is_reduced && i.infinite_uk_invariant.is_empty());
        assert_eq!(i.r_p.get(2), Cardinal::Aleph0);
        assert_eq!(i.unbounded_basic_p_parts, vec![2]);
        assert!(i.bounded_infinite_p_parts.is_empty());
    }

    #[test]
    fn sums_and_every_prime() {
        let i = inv("C(2,3)^aleph0 + Prufer(3)");
        assert_eq!(i.bounded_infinite_p_parts, vec![PrimeSpec::Specific(2)]);
        assert_eq!(i.infinite_uk_invariant, vec![PrimeSpec::Specific(2)]);
        let q = inv("Prufer(*)");
        assert_eq!(q.r_p.get(101), Cardinal::one());
        assert!(!q.t_p_size.all_finite());
        let c = inv("C(*,1) + C(2,1)");
        assert_eq!(c.r_p.get(2), Cardinal::finite(2));
        assert!(c.t_p_size.all_finite() && !c.is_finite);
        assert_eq!(
            inv("C(2,3)^2 + C(3,1)").t_p_size.get(2),
            Cardinal::finite(64)
        );
    }

    #[test]
    fn mixed_product() {
        let i = inv("ProdZp");
        assert!(!i.is_torsion && !i.is_torsion_free && i.is_reduced);
        assert_eq!(i.r0, Cardinal::Continuum);
        assert!(i.r_p.all_finite() && i.t_p_size.all_finite());
        assert_eq!(i.cardinality, Cardinal::Continuum);
    }

    #[test]
    fn rank_one_quotient_type() {
        assert_eq!(inv("Z + Prufer(3)").quotient_type_has_infinity, Some(false));
        assert_eq!(
            inv("T[2:inf] + C(3,1)").quotient_type_has_infinity,
            Some(true)
        );
        assert_eq!(inv("Z^2").quotient_type_has_infinity, None);
        assert!(inv("T[3:2,5:1]").is_finitely_generated);
    }
}
