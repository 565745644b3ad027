use super::core::{injective_on, is_periodic_in_core, surjective_core};
use super::group::GroupElement;
use super::hom::Endomorphism;
use super::subgroup::Subgroup;
use crate::error::{GroupError, WitnessError};
use crate::witness::{Dynamics, StringKind, StringWitness};

/// `xₙ = (φ↾sc)^{-n}(x₀)` for a non-periodic `x₀` in the surjective core.
#[derive(Clone, Debug)]
pub struct CoreString {
    phi: Endomorphism,
    core: Subgroup,
    x0: GroupElement,
}

impl CoreString {
    pub fn x0(&self) -> &GroupElement {
        &self.x0
    }
}

impl Dynamics for CoreString {
    type Elem = GroupElement;

    fn apply(&self, x: &GroupElement) -> GroupElement {
        self.phi.apply(x)
    }

    fn members(&self, depth: usize) -> Result<Vec<GroupElement>, WitnessError> {
        let mut out = Vec::with_capacity(depth + 1);
        out.push(self.x0.clone());
        for _ in 0..depth {
            let prev = out.last().expect("nonempty");
            let next = self.phi.solve_in(&self.core, prev)?.ok_or_else(|| {
                GroupError::NoWitness("the core is not mapped onto itself".into())
            })?;
            out.push(next);
        }
        Ok(out)
    }

    fn is_zero(&self, x: &GroupElement) -> bool {
        x.is_zero()
    }

    fn in_carrier(&self, x: &GroupElement) -> bool {
        self.core.contains(x)
    }

    fn render(&self, x: &GroupElement) -> String {
        x.to_string()
    }
}

/// The string through the first non-periodic Hermite generator of `sc φ`.
pub fn core_string(phi: &Endomorphism) -> Result<CoreString, GroupError> {
    let core = surjective_core(phi);
    if !injective_on(phi, &core) {
        return Err(GroupError::NoWitness(
            "φ is not injective on its surjective core".into(),
        ));
    }
    let x0 = core
        .generators()
        .into_iter()
        .find(|g| !is_periodic_in_core(phi, g))
        .ok_or_else(|| {
            GroupError::NoWitness("every point of the surjective core is periodic".into())
        })?;
    Ok(CoreString {
        phi: phi.clone(),
        core,
        x0,
    })
}

/// A non-singular string witness for `φ`, or `NoWitness` when `s(φ) = 0`.
pub fn endo_witness(phi: &Endomorphism) -> Result<StringWitness, GroupError> {
    let cs = core_string(phi)?;
    let description = format!("x_n = (φ restricted to sc φ)^(-n)(x_0), x_0 = {}", cs.x0);
    Ok(StringWitness::new(
        "endo",
        format!("{}", phi.group()),
        format!("matrix {}", phi.matrix()),
        description,
        StringKind::NonSingular,
        cs,
    ))
}
