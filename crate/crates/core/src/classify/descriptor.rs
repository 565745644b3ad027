use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::cardinal::Cardinal;

/// A prime, or `*`: one copy of the atom for every prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum PrimeSpec {
    Specific(u64),
    Every,
}

impl fmt::Display for PrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSpec::Specific(p) => write!(f, "{}", p),
            PrimeSpec::Every => f.write_str("*"),
        }
    }
}

impl Serialize for PrimeSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A `p`-height in a type: a natural number or `∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

/// Type of a rank-one torsion-free group: finitely many exceptional heights,
/// zero at every other prime.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct TypeVector {
    exceptions: BTreeMap<u64, Height>,
}

impl TypeVector {
    /// Zero heights are dropped; a repeated prime keeps its last height.
    pub fn new(entries: impl IntoIterator<Item = (u64, Height)>) -> Self {
        let exceptions = entries
            .into_iter()
            .filter(|&(_, h)| h != Height::Finite(0))
            .collect();
        TypeVector { exceptions }
    }

    pub fn height(&self, p: u64) -> Height {
        self.exceptions
            .get(&p)
            .copied()
            .unwrap_or(Height::Finite(0))
    }

    pub fn exceptions(&self) -> impl Iterator<Item = (u64, Height)> + '_ {
        self.exceptions.iter().map(|(&p, &h)| (p, h))
    }

    pub fn is_trivial(&self) -> bool {
        self.exceptions.is_empty()
    }

    /// Primes of infinite height.
    pub fn infinite_primes(&self) -> Vec<u64> {
        self.exceptions()
            .filter(|&(_, h)| h == Height::Infinite)
            .map(|(p, _)| p)
            .collect()
    }

    pub fn has_infinity(&self) -> bool {
        !self.infinite_primes().is_empty()
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .exceptions()
            .map(|(p, h)| match h {
                Height::Finite(k) => format!("{}:{}", p, k),
                Height::Infinite => format!("{}:inf", p),
            })
            .collect();
        write!(f, "T[{}]", entries.join(","))
    }
}

/// An indecomposable building block, or a group asserted to have a named
/// structure (the flag atoms) that the engine trusts without constructing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Atom {
    FreeZ,
    Cyclic {
        p: PrimeSpec,
        k: u32,
    },
    Prufer(PrimeSpec),
    Rationals,
    PAdic(u64),
    RankOne(TypeVector),
    StandardBasic(u64),
    TorsionComplete {
        p: u64,
        bounded: bool,
    },
    EndorigidTF {
        rank: Cardinal,
        pomega_all_zero: bool,
    },
    TotallyProjective(u64),
    POmegaPlus1Projective(u64),
    PierceHopfian(u64),
    ProductZp,
}

/// Whether an atom is torsion, torsion-free or neither.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Nature {
    Torsion,
    TorsionFree,
    Mixed,
}

impl Atom {
    pub fn nature(&self) -> Nature {
        match self {
            Atom::FreeZ
            | Atom::Rationals
            | Atom::PAdic(_)
            | Atom::RankOne(_)
            | Atom::EndorigidTF { .. } => Nature::TorsionFree,
            Atom::ProductZp => Nature::Mixed,
            _ => Nature::Torsion,
        }
    }

    /// The prime of a torsion atom; `Every` for `*` atoms and the product.
    pub fn torsion_prime(&self) -> Option<PrimeSpec> {
        match self {
            Atom::Cyclic { p, .. } | Atom::Prufer(p) => Some(*p),
            Atom::StandardBasic(p)
            | Atom::TorsionComplete { p, .. }
            | Atom::TotallyProjective(p)
            | Atom::POmegaPlus1Projective(p)
            | Atom::PierceHopfian(p) => Some(PrimeSpec::Specific(*p)),
            Atom::ProductZp => Some(PrimeSpec::Every),
            _ => None,
        }
    }

    /// Structure asserted by the input rather than built from smaller pieces.
    pub fn is_flag(&self) -> bool {
        matches!(
            self,
            Atom::TorsionComplete { .. }
                | Atom::EndorigidTF { .. }
                | Atom::TotallyProjective(_)
                | Atom::POmegaPlus1Projective(_)
                | Atom::PierceHopfian(_)
        )
    }

    /// The `p`-primary part of the atom as an atom, if nonzero.
    pub fn p_part(&self, p: u64) -> Option<Atom> {
        match self {
            Atom::Cyclic {
                p: PrimeSpec::Every,
                k,
            } => Some(Atom::Cyclic {
                p: PrimeSpec::Specific(p),
                k: *k,
            }),
            Atom::Prufer(PrimeSpec::Every) => Some(Atom::Prufer(PrimeSpec::Specific(p))),
            Atom::ProductZp => Some(Atom::Cyclic {
                p: PrimeSpec::Specific(p),
                k: 1,
            }),
            a => match a.torsion_prime() {
                Some(PrimeSpec::Specific(q)) if q == p => Some(a.clone()),
                _ => None,
            },
        }
    }

    /// The torsion subgroup and the torsion-free quotient of the atom.
    pub fn torsion_split(&self) -> (Option<Atom>, Option<(Atom, Cardinal)>) {
        match self.nature() {
            Nature::Torsion => (Some(self.clone()), None),
            Nature::TorsionFree => (None, Some((self.clone(), Cardinal::one()))),
            Nature::Mixed => (
                Some(Atom::Cyclic {
                    p: PrimeSpec::Every,
                    k: 1,
                }),
                Some((Atom::Rationals, Cardinal::Continuum)),
            ),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::FreeZ => f.write_str("Z"),
            Atom::Cyclic { p, k } => write!(f, "C({},{})", p, k),
            Atom::Prufer(p) => write!(f, "Prufer({})", p),
            Atom::Rationals => f.write_str("Q"),
            Atom::PAdic(p) => write!(f, "Jp({})", p),
            Atom::RankOne(t) => write!(f, "{}", t),
            Atom::StandardBasic(p) => write!(f, "Bp({})", p),
            Atom::TorsionComplete { p, bounded } => write!(
                f,
                "TorsComplete({},{})",
                p,
                if *bounded { "bounded" } else { "unbounded" }
            ),
            Atom::EndorigidTF {
                rank,
                pomega_all_zero,
            } => write!(
                f,
                "Endorigid({},{})",
                rank,
                if *pomega_all_zero { "pw0" } else { "pwpos" }
            ),
            Atom::TotallyProjective(p) => write!(f, "TotProj({})", p),
            Atom::POmegaPlus1Projective(p) => write!(f, "Pw1Proj({})", p),
            Atom::PierceHopfian(p) => write!(f, "Pierce({})", p),
            Atom::ProductZp => f.write_str("ProdZp"),
        }
    }
}

/// `⊕ atom^(multiplicity)`, kept normalized: sorted, merged, no zero terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct GroupDescriptor {
    summands: Vec<(Atom, Cardinal)>,
}

impl GroupDescriptor {
    pub fn new(terms: impl IntoIterator<Item = (Atom, Cardinal)>) -> Self {
        let mut merged: BTreeMap<Atom, Cardinal> = BTreeMap::new();
        for (atom, mult) in terms {
            let atom = match atom {
                Atom::RankOne(t) if t.is_trivial() => Atom::FreeZ,
                a => a,
            };
            let entry = merged.entry(atom).or_insert_with(Cardinal::zero);
            *entry = entry.add(&mult);
        }
        GroupDescriptor {
            summands: merged.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    pub fn single(atom: Atom) -> Self {
        Self::new([(atom, Cardinal::one())])
    }

    pub fn summands(&self) -> &[(Atom, Cardinal)] {
        &self.summands
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.summands.iter().map(|(a, _)| a)
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    /// The only atom, when the group is one copy of it.
    pub fn sole_atom(&self) -> Option<&Atom> {
        match self.summands.as_slice() {
            [(a, m)] if *m == Cardinal::one() => Some(a),
            _ => None,
        }
    }

    /// Number of summands counted with multiplicity.
    pub fn summand_count(&self) -> Cardinal {
        self.summands
            .iter()
            .fold(Cardinal::zero(), |acc, (_, m)| acc.add(m))
    }

    /// Specific primes named by torsion atoms, in increasing order.
    pub fn named_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .atoms()
            .filter_map(|a| match a.torsion_prime() {
                Some(PrimeSpec::Specific(p)) => Some(p),
                _ => None,
            })
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Whether some atom contributes to every primary component.
    pub fn has_every_prime(&self) -> bool {
        self.atoms()
            .any(|a| a.torsion_prime() == Some(PrimeSpec::Every))
    }

    /// `t_p(G)`.
    pub fn p_component(&self, p: u64) -> GroupDescriptor {
        GroupDescriptor::new(
            self.summands
                .iter()
                .filter_map(|(a, m)| a.p_part(p).map(|b| (b, m.clone()))),
        )
    }

    /// `t(G)`.
    pub fn torsion_part(&self) -> GroupDescriptor {
        GroupDescriptor::new(
            self.summands
                .iter()
                .filter_map(|(a, m)| a.torsion_split().0.map(|b| (b, m.clone()))),
        )
    }

    /// `G/t(G)`.
    pub fn torsion_free_quotient(&self) -> GroupDescriptor {
        GroupDescriptor::new(
            self.summands
                .iter()
                .filter_map(|(a, m)| a.torsion_split().1.map(|(b, copies)| (b, copies.mul(m)))),
        )
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .summands
            .iter()
            .map(|(a, m)| {
                if *m == Cardinal::one() {
                    a.to_string()
                } else {
                    format!("{}^{}", a, m)
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_and_drops() {
        let d = GroupDescriptor::new([
            (Atom::FreeZ, Cardinal::one()),
            (Atom::Rationals, Cardinal::zero()),
            (Atom::FreeZ, Cardinal::finite(2)),
            (
                Atom::RankOne(TypeVector::new([(3, Height::Finite(0))])),
                Cardinal::one(),
            ),
        ]);
        assert_eq!(d.to_string(), "Z^4");
    }

    #[test]
    fn components() {
        let d = GroupDescriptor::new([
            (Atom::Prufer(PrimeSpec::Every), Cardinal::one()),
            (Atom::StandardBasic(2), Cardinal::one()),
            (Atom::ProductZp, Cardinal::one()),
            (Atom::FreeZ, Cardinal::one()),
        ]);
        assert_eq!(d.p_component(2).to_string(), "C(2,1) + Prufer(2) + Bp(2)");
        assert_eq!(d.p_component(5).to_string(), "C(5,1) + Prufer(5)");
        assert_eq!(d.torsion_part().to_string(), "C(*,1) + Prufer(*) + Bp(2)");
        assert_eq!(d.torsion_free_quotient().to_string(), "Z + Q^continuum");
        assert_eq!(d.named_primes(), vec![2]);
        assert!(d.has_every_prime());
    }
}
