use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{FgGroup, GroupElement};
use crate::error::GroupError;
use crate::linalg::{IntMatrix, Lattice};

/// A subgroup, stored as its preimage in `ℤ^{k+r}`: a lattice containing the
/// relation lattice. The Hermite basis of that lattice makes equality structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    group: FgGroup,
    lattice: Lattice,
}

impl Subgroup {
    pub fn whole(group: &FgGroup) -> Self {
        Subgroup {
            group: group.clone(),
            lattice: Lattice::full(group.dim()),
        }
    }

    pub fn trivial(group: &FgGroup) -> Self {
        Subgroup {
            group: group.clone(),
            lattice: group.relations(),
        }
    }

    pub fn generated_by(group: &FgGroup, gens: &[GroupElement]) -> Result<Self, GroupError> {
        let vecs: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        Self::from_vectors(group, vecs)
    }

    pub(crate) fn from_vectors(
        group: &FgGroup,
        mut vecs: Vec<Vec<BigInt>>,
    ) -> Result<Self, GroupError> {
        vecs.extend(group.relations().basis_vectors());
        Ok(Subgroup {
            group: group.clone(),
            lattice: Lattice::from_generators(group.dim(), &vecs)?,
        })
    }

    /// Wraps a lattice that already contains the relation lattice.
    pub(crate) fn from_lattice(group: &FgGroup, lattice: Lattice) -> Self {
        debug_assert!(lattice
            .contains_lattice(&group.relations())
            .unwrap_or(false));
        Subgroup {
            group: group.clone(),
            lattice,
        }
    }

    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    /// The preimage lattice in `ℤ^{k+r}`.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.lattice.contains(x.coords()).unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice == self.group.relations()
    }

    pub fn is_whole(&self) -> bool {
        self.lattice == Lattice::full(self.group.dim())
    }

    fn check_group(&self, other: &Subgroup) -> Result<(), GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.check_group(other)?;
        Ok(Subgroup::from_lattice(
            &self.group,
            self.lattice.sum(&other.lattice)?,
        ))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.check_group(other)?;
        Ok(Subgroup::from_lattice(
            &self.group,
            self.lattice.intersect(&other.lattice)?,
        ))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool, GroupError> {
        self.check_group(other)?;
        Ok(other.lattice.contains_lattice(&self.lattice)?)
    }

    /// Reduced Hermite basis vectors, skipping those already generated by earlier ones.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = Vec::new();
        let mut span = Subgroup::trivial(&self.group);
        for v in self.lattice.basis_vectors() {
            let e = self.group.element(v).expect("dimension matches");
            if span.contains(&e) {
                continue;
            }
            out.push(e);
            span = Subgroup::generated_by(&self.group, &out).expect("same group");
        }
        out
    }

    /// Elements of a subgroup of a finite group.
    pub fn elements(&self) -> Result<Vec<GroupElement>, GroupError> {
        Ok(self
            .group
            .elements()?
            .into_iter()
            .filter(|e| self.contains(e))
            .collect())
    }

    /// `|H|` when the ambient group is finite.
    pub fn order(&self) -> Option<BigInt> {
        let whole = self.group.order()?;
        let index = self.lattice.index()?;
        Some(whole / index)
    }

    /// Projection of the preimage lattice onto the free coordinates.
    pub(crate) fn free_projection(&self) -> Lattice {
        let k = self.group.torsion_rank();
        let gens: Vec<Vec<BigInt>> = self
            .lattice
            .basis_vectors()
            .into_iter()
            .map(|v| v[k..].to_vec())
            .collect();
        Lattice::from_generators(self.group.free_rank(), &gens).expect("dimensions agree")
    }

    /// The torsion coordinates together with a sublattice of the free coordinates.
    pub(crate) fn torsion_plus_free(group: &FgGroup, free: &Lattice) -> Subgroup {
        let k = group.torsion_rank();
        let n = group.dim();
        let mut gens: Vec<Vec<BigInt>> = (0..k)
            .map(|i| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = 1.into();
                v
            })
            .collect();
        for f in free.basis_vectors() {
            let mut v = vec![BigInt::zero(); k];
            v.extend(f);
            gens.push(v);
        }
        Subgroup::from_lattice(
            group,
            Lattice::from_generators(n, &gens).expect("dimensions agree"),
        )
    }

    /// Basis of the preimage lattice as matrix columns.
    pub(crate) fn basis(&self) -> &IntMatrix {
        self.lattice.basis()
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        if gens.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}
