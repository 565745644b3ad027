//! The largest sublattice of `ℤ^r` mapped onto itself by a square matrix.
//!
//! If `A(H) = H` then `A` restricts to an automorphism of `H`, so the
//! characteristic polynomial of the restriction has unit constant term and
//! divides the unit-constant-term part `f` of `char_poly(A)`; by
//! Cayley–Hamilton `H ⊆ ker f(A)`. Conversely `A` acts on the saturated
//! lattice `ker f(A) ∩ ℤ^r` with characteristic polynomial `f`, whose constant
//! term is `±1`, so the action is unimodular and onto.

use num_traits::{One, Signed};

use super::factor::factor_over_z;
use super::hermite::{integer_kernel, Lattice};
use super::matrix::IntMatrix;
use super::poly::{char_poly, IntPolynomial};
use crate::error::LinalgError;

/// Product, with multiplicity, of the irreducible factors of `char_poly(a)`
/// whose constant term is `±1`.
pub fn unit_factor(a: &IntMatrix) -> Result<IntPolynomial, LinalgError> {
    let fac = factor_over_z(&char_poly(a)?)?;
    Ok(fac
        .factors
        .iter()
        .filter(|(g, _)| g.constant_term().abs().is_one())
        .fold(IntPolynomial::one(), |acc, (g, m)| acc.mul(&g.pow(*m))))
}

pub fn unit_part_lattice(a: &IntMatrix) -> Result<Lattice, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Lattice::zero(0));
    }
    let f = unit_factor(a)?;
    let kernel = integer_kernel(&f.eval_matrix(a)?);
    Lattice::from_generators(n, &kernel)
}

/// Outcome of iterating `L ↦ A(L)` from `ℤ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageChain {
    /// The last lattice computed, `A^steps(ℤ^r)`.
    pub lattice: Lattice,
    pub steps: usize,
    /// True when `A(L) = L` was observed, so `lattice` is the intersection of the chain.
    pub certified: bool,
}

/// Bounded image chain `ℤ^r ⊇ A(ℤ^r) ⊇ A²(ℤ^r) ⊇ …`, stopped at the first repeat or after `max_steps`.
pub fn image_chain(a: &IntMatrix, max_steps: usize) -> Result<ImageChain, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let mut current = Lattice::full(a.rows());
    for step in 0..max_steps {
        let next = current.image(a)?;
        if next == current {
            return Ok(ImageChain {
                lattice: current,
                steps: step,
                certified: true,
            });
        }
        current = next;
    }
    Ok(ImageChain {
        lattice: current,
        steps: max_steps,
        certified: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::vec_big;

    fn lat(ambient: usize, gens: &[&[i64]]) -> Lattice {
        let g: Vec<_> = gens.iter().map(|v| vec_big(v)).collect();
        Lattice::from_generators(ambient, &g).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            unit_part_lattice(&IntMatrix::identity(3)).unwrap(),
            Lattice::full(3)
        );
        let a = IntMatrix::from_rows(&[[2, 1], [0, 1]]);
        let l = unit_part_lattice(&a).unwrap();
        assert_eq!(l, lat(2, &[&[1, -1]]));
        // the chain never certifies here, but every step contains the fixed line
        let chain = image_chain(&a, 20).unwrap();
        assert!(!chain.certified);
        assert!(chain.lattice.contains_lattice(&l).unwrap());
        assert_eq!(
            unit_part_lattice(&IntMatrix::from_rows(&[[2]])).unwrap(),
            Lattice::zero(1)
        );
    }

    #[test]
    fn agrees_with_certified_chain() {
        // nilpotent block next to a unimodular one: the chain stabilizes after two steps
        let a = IntMatrix::from_rows(&[[0, 1, 0], [0, 0, 0], [0, 0, -1]]);
        let chain = image_chain(&a, 10).unwrap();
        assert!(chain.certified);
        assert_eq!(unit_part_lattice(&a).unwrap(), chain.lattice);
        assert_eq!(chain.lattice, lat(3, &[&[0, 0, 1]]));
    }

    #[test]
    fn contains_known_invariant_lattices() {
        // A swaps e1, e2 and doubles e3; ⟨e1, e2⟩ is mapped onto itself
        let a = IntMatrix::from_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 2]]);
        let h = lat(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(h.image(&a).unwrap(), h);
        let l = unit_part_lattice(&a).unwrap();
        assert!(l.contains_lattice(&h).unwrap());
        assert_eq!(l.image(&a).unwrap(), l);
    }

    proptest::proptest! {
        #[test]
        fn is_mapped_onto_itself(entries in proptest::collection::vec(-3i64..=3, 9)) {
            let rows: Vec<&[i64]> = entries.chunks(3).collect();
            let a = IntMatrix::from_rows(&rows);
            let l = unit_part_lattice(&a).unwrap();
            proptest::prop_assert_eq!(l.image(&a).unwrap(), l.clone());
            let chain = image_chain(&a, 12).unwrap();
            proptest::prop_assert!(chain.lattice.contains_lattice(&l).unwrap());
            if chain.certified {
                proptest::prop_assert_eq!(chain.lattice, l);
            }
        }
    }
}
