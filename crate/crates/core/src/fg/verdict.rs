use num_bigint::BigInt;

use super::core::{finite_order, injective_on, surjective_core};
use super::hom::Endomorphism;
use super::subgroup::Subgroup;
use super::witness::endo_witness;
use crate::value::StringValue;
use crate::witness::StringWitness;

/// `s(φ)`, `ns(φ)`, `s₀(φ)` for an endomorphism of a finitely generated group.
#[derive(Clone, Debug)]
pub struct EndoVerdict {
    pub s: StringValue,
    pub ns: StringValue,
    pub s0: StringValue,
    /// Order of `φ` on its surjective core, when finite.
    pub order_of_restriction: Option<BigInt>,
    pub surjective_core: Subgroup,
    pub witness: Option<StringWitness>,
}

impl EndoVerdict {
    pub fn triple(&self) -> (StringValue, StringValue, StringValue) {
        (self.s, self.ns, self.s0)
    }
}

/// Decides the three string numbers of `φ` on its surjective core:
///
/// * `s = 0` iff every point of `sc φ` is periodic, i.e. `φ↾sc` has finite order;
/// * `ns = 0` iff every point of `sc φ` is quasi-periodic; a point of the core
///   has a finite orbit exactly when its free coordinates do, and `φ↾sc` acts
///   bijectively on those, so this coincides with the test for `s`;
/// * `s₀ = 0` iff `ker φ ∩ sc φ = 0`.
pub fn endo_string_numbers(phi: &Endomorphism) -> EndoVerdict {
    let core = surjective_core(phi);
    let order = finite_order(phi, &core).expect("the surjective core is mapped onto itself");
    let ns = StringValue::from_zero(order.is_some());
    let s0 = StringValue::from_zero(injective_on(phi, &core));
    let s = ns.plus(s0);
    let witness = if s.is_zero() {
        None
    } else {
        endo_witness(phi).ok()
    };
    EndoVerdict {
        s,
        ns,
        s0,
        order_of_restriction: order,
        surjective_core: core,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fg::group::FgGroup;
    use StringValue::*;

    #[test]
    fn examples() {
        let z1 = FgGroup::free(1);
        let z2 = FgGroup::free(2);
        let v = endo_string_numbers(&Endomorphism::scalar(&z1, 2));
        assert_eq!(v.triple(), (Zero, Zero, Zero));
        assert!(v.surjective_core.is_trivial());

        let v = endo_string_numbers(&Endomorphism::from_rows(&z2, &[[1, 1], [0, 1]]).unwrap());
        assert_eq!(v.triple(), (Infinite, Infinite, Zero));
        assert!(v.witness.as_ref().unwrap().verify(100).unwrap().passed);

        let v = endo_string_numbers(&Endomorphism::from_rows(&z2, &[[0, -1], [1, 0]]).unwrap());
        assert_eq!(v.triple(), (Zero, Zero, Zero));
        assert_eq!(v.order_of_restriction, Some(BigInt::from(4)));
        assert!(v.witness.is_none());

        let v = endo_string_numbers(&Endomorphism::zero(&z2));
        assert_eq!(v.triple(), (Zero, Zero, Zero));
        let v = endo_string_numbers(&Endomorphism::identity(&FgGroup::zero()));
        assert_eq!(v.triple(), (Zero, Zero, Zero));
    }
}
