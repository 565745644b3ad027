//! Seeded random groups, endomorphisms and automorphisms for property tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::group::FgGroup;
use super::hom::Endomorphism;
use crate::linalg::IntMatrix;

/// Up to three cyclic factors of order in `[2, max_order]` and free rank in `[0, max_free]`.
pub fn random_group<R: Rng>(rng: &mut R, max_free: usize, max_order: u64) -> FgGroup {
    let count = rng.gen_range(0..=3);
    let orders: Vec<u64> = (0..count).map(|_| rng.gen_range(2..=max_order)).collect();
    FgGroup::from_orders(&orders, rng.gen_range(0..=max_free)).expect("orders are at least 2")
}

fn order_u64(g: &FgGroup, i: usize) -> Option<u64> {
    g.coordinate_order(i)
        .map(|d| d.to_u64().expect("small orders"))
}

/// A uniformly chosen well-defined matrix entry for row `i`, column `j`, with
/// free-to-free entries in `[-bound, bound]`.
fn random_entry<R: Rng>(rng: &mut R, g: &FgGroup, i: usize, j: usize, bound: i64) -> i64 {
    match (order_u64(g, i), order_u64(g, j)) {
        (None, Some(_)) => 0,
        (None, None) => rng.gen_range(-bound..=bound),
        (Some(e), None) => rng.gen_range(0..e) as i64,
        (Some(e), Some(d)) => {
            let gcd = e.gcd(&d);
            ((e / gcd) * rng.gen_range(0..gcd)) as i64
        }
    }
}

pub fn random_endo<R: Rng>(rng: &mut R, g: &FgGroup, bound: i64) -> Endomorphism {
    let n = g.dim();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| random_entry(rng, g, i, j, bound)).collect())
        .collect();
    Endomorphism::from_rows(g, &rows).expect("entries respect well-definedness")
}

/// A product of `steps` elementary automorphisms (transvections and unit scalings).
pub fn random_automorphism<R: Rng>(rng: &mut R, g: &FgGroup, steps: usize) -> Endomorphism {
    let n = g.dim();
    let mut acc = Endomorphism::identity(g);
    if n == 0 {
        return acc;
    }
    for _ in 0..steps {
        let mut m = IntMatrix::identity(n);
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            match order_u64(g, i) {
                Some(e) => {
                    let units: Vec<u64> = (1..e).filter(|u| u.gcd(&e) == 1).collect();
                    m[(i, i)] = BigInt::from(units[rng.gen_range(0..units.len())]);
                }
                None => m[(i, i)] = -BigInt::one(),
            }
        } else {
            let c = random_entry(rng, g, i, j, 2);
            m[(i, j)] = BigInt::from(c);
        }
        let step = Endomorphism::new(g, &m).expect("elementary automorphisms are well defined");
        acc = acc.compose(&step).expect("same group");
    }
    acc
}
