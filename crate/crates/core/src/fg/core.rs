//! Surjective cores and orders of restrictions.
//!
//! The surjective core is found by starting from `t(G) ⊕ L`, where `L` is the
//! largest sublattice of the free coordinates mapped onto itself by the free
//! block of the matrix, and applying `φ` until the subgroup stops shrinking.
//! The start is `φ`-invariant and contains every `H` with `φ(H) = H`, and all
//! its images project onto `L`, so the chain only moves inside the finite
//! torsion part and must stop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::GroupElement;
use super::hom::Endomorphism;
use super::subgroup::Subgroup;
use crate::error::GroupError;
use crate::linalg::{
    char_poly, cyclotomic_index, factor_over_z, solve_integer, unit_part_lattice, IntMatrix,
    IntPolynomial, Lattice,
};

/// The largest subgroup `H` with `φ(H) = H`.
pub fn surjective_core(phi: &Endomorphism) -> Subgroup {
    let g = phi.group();
    let free_core = if g.free_rank() == 0 {
        Lattice::zero(0)
    } else {
        unit_part_lattice(&phi.free_block()).expect("free block is square")
    };
    let mut h = Subgroup::torsion_plus_free(g, &free_core);
    loop {
        let next = phi.image_of(&h).expect("same group");
        if next == h {
            return h;
        }
        h = next;
    }
}

/// Matrix of the free block of `φ` on the free projection of `h`, in the
/// Hermite basis of that projection.
fn induced_free_matrix(phi: &Endomorphism, h: &Subgroup) -> IntMatrix {
    let l = h.free_projection();
    let b = l.basis();
    let a = phi.free_block();
    let cols: Vec<Vec<BigInt>> = b
        .columns()
        .iter()
        .map(|v| {
            let w = a.mul_vec(v).expect("dimension agrees");
            solve_integer(b, &w)
                .expect("dimension agrees")
                .expect("the projection is mapped into itself")
        })
        .collect();
    IntMatrix::from_columns(l.rank(), &cols)
}

/// Order of a square integer matrix if finite: every irreducible factor of
/// the characteristic polynomial is cyclotomic and their squarefree product
/// annihilates the matrix. The order is then the lcm of the cyclotomic indices.
pub fn matrix_order(c: &IntMatrix) -> Option<u64> {
    if c.rows() == 0 {
        return Some(1);
    }
    let fac = factor_over_z(&char_poly(c).ok()?).ok()?;
    let mut order = 1u64;
    let mut squarefree = IntPolynomial::one();
    for (f, _) in &fac.factors {
        let m = cyclotomic_index(f)?;
        order = order.lcm(&m);
        squarefree = squarefree.mul(f);
    }
    squarefree.eval_matrix(c).ok()?.is_zero().then_some(order)
}

/// Least `N ≥ 1` with `φ^N = id` on `h`, or `None` when the order is infinite.
/// Requires `φ(h) = h`.
pub fn finite_order(phi: &Endomorphism, h: &Subgroup) -> Result<Option<BigInt>, GroupError> {
    if phi.image_of(h)? != *h {
        return Err(GroupError::NotInvariant(format!("φ(H) ≠ H for H = {}", h)));
    }
    let Some(n1) = matrix_order(&induced_free_matrix(phi, h)) else {
        return Ok(None);
    };
    // ψ = φ^{n1} moves each point of h inside its coset of the torsion part;
    // ψ is injective on h, so every orbit closes up.
    let psi = phi.power(n1);
    let bound = phi.group().torsion_order();
    let mut periods = BigInt::one();
    for g in h.generators() {
        let mut y = psi.apply(&g);
        let mut steps = BigInt::one();
        while y != g {
            if steps > bound {
                return Err(GroupError::NotInvariant(
                    "restriction is not injective".into(),
                ));
            }
            y = psi.apply(&y);
            steps += 1;
        }
        periods = periods.lcm(&steps);
    }
    Ok(Some(periods * BigInt::from(n1)))
}

/// Minimal polynomial of `v` under `a` (monic with integer coefficients).
fn krylov_min_poly(a: &IntMatrix, v: &[BigInt]) -> IntPolynomial {
    let n = a.rows();
    let mut krylov: Vec<Vec<BigInt>> = vec![v.to_vec()];
    for d in 1..=n + 1 {
        let next = a.mul_vec(&krylov[d - 1]).expect("square");
        let basis = IntMatrix::from_columns(n, &krylov);
        if let Some(c) = solve_integer(&basis, &next).expect("dimension agrees") {
            let mut coeffs: Vec<BigInt> = c.into_iter().map(|x| -x).collect();
            coeffs.push(BigInt::one());
            return IntPolynomial::new(coeffs);
        }
        krylov.push(next);
    }
    unreachable!("the characteristic polynomial annihilates v")
}

/// True when `x` is a periodic point. Only valid for `x` in a subgroup that
/// `φ` maps onto itself, where periodicity is decided by the free coordinates.
pub fn is_periodic_in_core(phi: &Endomorphism, x: &GroupElement) -> bool {
    let k = phi.group().torsion_rank();
    let v = &x.coords()[k..];
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mu = krylov_min_poly(&phi.free_block(), v);
    let Ok(fac) = factor_over_z(&mu) else {
        return false;
    };
    fac.factors
        .iter()
        .all(|(f, m)| *m == 1 && cyclotomic_index(f).is_some())
}

/// Whether `φ` restricted to `h` is injective.
pub fn injective_on(phi: &Endomorphism, h: &Subgroup) -> bool {
    phi.kernel().intersect(h).expect("same group").is_trivial()
}
