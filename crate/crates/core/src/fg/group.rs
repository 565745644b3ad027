use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::GroupError;
use crate::linalg::{smith_normal_form, IntMatrix, Lattice};

/// `ℤ(d₁) ⊕ … ⊕ ℤ(d_k) ⊕ ℤ^r` with `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FgGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

/// An element, torsion coordinates reduced into `[0, dᵢ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

/// A group in normal form together with coordinate changes from the
/// presentation it was built from.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub group: FgGroup,
    /// Maps input coordinates to normal coordinates.
    pub to_normal: IntMatrix,
    /// Maps normal coordinates back to input coordinates.
    pub from_normal: IntMatrix,
}

impl FgGroup {
    /// Builds the normal form of `ℤ(o₁) ⊕ … ⊕ ℤ(o_m) ⊕ ℤ^r`.
    pub fn new(torsion_orders: &[BigInt], free_rank: usize) -> Result<Self, GroupError> {
        Ok(Self::normalize(torsion_orders, free_rank)?.group)
    }

    pub fn from_orders(torsion_orders: &[u64], free_rank: usize) -> Result<Self, GroupError> {
        let orders: Vec<BigInt> = torsion_orders.iter().map(|&o| BigInt::from(o)).collect();
        Self::new(&orders, free_rank)
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn normalize(
        torsion_orders: &[BigInt],
        free_rank: usize,
    ) -> Result<Normalization, GroupError> {
        if let Some(bad) = torsion_orders.iter().find(|o| *o < &BigInt::from(2)) {
            return Err(GroupError::InvalidOrder(bad.to_string()));
        }
        let m = torsion_orders.len();
        let snf = smith_normal_form(&IntMatrix::diagonal(m, m, torsion_orders));
        let diag = snf.diagonal();
        let kept: Vec<usize> = (0..m).filter(|&i| !diag[i].is_one()).collect();
        let u_inv = invert_unimodular(&snf.u);
        let k = kept.len();
        let n_in = m + free_rank;
        let n_out = k + free_rank;
        let mut to_normal = IntMatrix::zeros(n_out, n_in);
        let mut from_normal = IntMatrix::zeros(n_in, n_out);
        for (row, &i) in kept.iter().enumerate() {
            for j in 0..m {
                to_normal[(row, j)] = snf.u[(i, j)].mod_floor(&diag[i]);
                from_normal[(j, row)] = u_inv[(j, i)].clone();
            }
        }
        for f in 0..free_rank {
            to_normal[(k + f, m + f)] = BigInt::one();
            from_normal[(m + f, k + f)] = BigInt::one();
        }
        let group = FgGroup {
            invariant_factors: kept.iter().map(|&i| diag[i].clone()).collect(),
            free_rank,
        };
        Ok(Normalization {
            group,
            to_normal,
            from_normal,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of coordinates `k + r`.
    pub fn dim(&self) -> usize {
        self.torsion_rank() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    /// Order of coordinate `i`, `None` for free coordinates.
    pub fn coordinate_order(&self, i: usize) -> Option<&BigInt> {
        self.invariant_factors.get(i)
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// `|G|` for finite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.dim() {
            return Err(GroupError::Linalg(
                crate::error::LinalgError::AmbientMismatch(self.dim(), coords.len()),
            ));
        }
        Ok(GroupElement {
            coords: self.reduce(coords),
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.dim()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect()),
        }
    }

    pub(crate) fn reduce(&self, mut coords: Vec<BigInt>) -> Vec<BigInt> {
        for (c, d) in coords.iter_mut().zip(&self.invariant_factors) {
            *c = c.mod_floor(d);
        }
        coords
    }

    /// The relation lattice `d₁ℤ ⊕ … ⊕ d_kℤ ⊕ 0` whose quotient is the group.
    pub fn relations(&self) -> Lattice {
        let n = self.dim();
        let gens: Vec<Vec<BigInt>> = self
            .invariant_factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut v = vec![BigInt::zero(); n];
                v[i] = d.clone();
                v
            })
            .collect();
        Lattice::from_generators(n, &gens).expect("dimensions agree")
    }

    /// Generators `d₁e₁, …, d_ke_k` of the relation lattice as matrix columns.
    pub(crate) fn relation_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let k = self.torsion_rank();
        let mut m = IntMatrix::zeros(n, k);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<GroupElement>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::InfiniteGroup(self.free_rank));
        }
        let mut out = vec![GroupElement { coords: Vec::new() }];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for e in &out {
                let mut c = BigInt::zero();
                while &c < d {
                    let mut coords = e.coords.clone();
                    coords.push(c.clone());
                    next.push(GroupElement { coords });
                    c += 1;
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Inverse of a unimodular matrix by exact solving.
pub(crate) fn invert_unimodular(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            crate::linalg::solve_integer(u, &e)
                .expect("square system")
                .expect("unimodular matrices are invertible over the integers")
        })
        .collect();
    IntMatrix::from_columns(n, &cols)
}

/// `[2,4]+Z^1`, `Z^2`, `[6]`, or `0`.
impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !self.invariant_factors.is_empty() {
            let orders: Vec<String> = self
                .invariant_factors
                .iter()
                .map(|d| d.to_string())
                .collect();
            parts.push(format!("[{}]", orders.join(",")));
        }
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        f.write_str(&parts.join("+"))
    }
}

/// Parses `[o₁,…,o_m]+Z^r` (either part optional, `Z` alone means rank 1).
/// The orders are normalized, so the coordinates of the result may differ
/// from the listed cyclic factors; see [`FgGroup::normalize`].
impl FromStr for FgGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (orders, rank) = parse_presentation(s)?;
        FgGroup::new(&orders, rank)
    }
}

/// Cyclic orders and free rank of a group literal, before normalization.
pub fn parse_presentation(s: &str) -> Result<(Vec<BigInt>, usize), GroupError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix("group:").unwrap_or(&s);
    if s.is_empty() || s == "0" {
        return Ok((Vec::new(), 0));
    }
    let mut orders = Vec::new();
    let mut rank = 0usize;
    for part in s.split('+') {
        if let Some(inner) = part.strip_prefix('[').and_then(|p| p.strip_suffix(']')) {
            for o in inner.split(',').filter(|o| !o.is_empty()) {
                let v: BigInt = o
                    .parse()
                    .map_err(|_| GroupError::Parse(format!("bad cyclic order {:?}", o)))?;
                orders.push(v);
            }
        } else if part == "Z" {
            rank += 1;
        } else if let Some(exp) = part.strip_prefix("Z^") {
            rank += exp
                .parse::<usize>()
                .map_err(|_| GroupError::Parse(format!("bad free rank {:?}", exp)))?;
        } else {
            return Err(GroupError::Parse(format!("unexpected term {:?}", part)));
        }
    }
    Ok((orders, rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(g: &FgGroup) -> Vec<i64> {
        g.invariant_factors()
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    #[test]
    fn normal_forms() {
        let g = FgGroup::from_orders(&[2, 4], 0).unwrap();
        assert_eq!(orders(&g), vec![2, 4]);
        let g = FgGroup::from_orders(&[2, 3], 1).unwrap();
        assert_eq!(orders(&g), vec![6]);
        assert_eq!(g.free_rank(), 1);
        let g = FgGroup::from_orders(&[], 2).unwrap();
        assert_eq!(g, FgGroup::free(2));
        let g = FgGroup::from_orders(&[4, 6, 9], 0).unwrap();
        assert_eq!(orders(&g), vec![6, 36]);
        assert!(FgGroup::from_orders(&[1, 2], 0).is_err());
        assert!(FgGroup::from_orders(&[0], 0).is_err());
    }

    #[test]
    fn normalization_is_an_isomorphism() {
        let src: Vec<BigInt> = [6, 4, 10].iter().map(|&x| BigInt::from(x)).collect();
        let n = FgGroup::normalize(&src, 1).unwrap();
        assert_eq!(orders(&n.group), vec![2, 2, 60]);
        let src_group_order: i64 = 6 * 4 * 10;
        // every normal element comes back to itself through the input coordinates
        for e in n.group.elements_bounded(3) {
            let back = n.from_normal.mul_vec(e.coords()).unwrap();
            let there = n
                .group
                .element(n.to_normal.mul_vec(&back).unwrap())
                .unwrap();
            assert_eq!(there, e);
        }
        assert_eq!(n.group.torsion_order(), BigInt::from(src_group_order));
    }

    #[test]
    fn literals() {
        let g: FgGroup = "[2,4]+Z^1".parse().unwrap();
        assert_eq!(g.to_string(), "[2,4]+Z^1");
        assert_eq!("Z^2".parse::<FgGroup>().unwrap(), FgGroup::free(2));
        assert_eq!(
            "group: [3, 2]".parse::<FgGroup>().unwrap().to_string(),
            "[6]"
        );
        assert!("[2,x]".parse::<FgGroup>().is_err());
        assert!("Q".parse::<FgGroup>().is_err());
    }

    #[test]
    fn element_enumeration() {
        let g = FgGroup::from_orders(&[2, 4], 0).unwrap();
        let els = g.elements().unwrap();
        assert_eq!(els.len(), 8);
        assert!(FgGroup::free(1).elements().is_err());
        let x = g.element_i64(&[3, -1]).unwrap();
        assert_eq!(x.to_string(), "(1, 3)");
    }

    impl FgGroup {
        /// Elements with free coordinates in `[-b, b]`.
        fn elements_bounded(&self, b: i64) -> Vec<GroupElement> {
            let mut out = FgGroup {
                invariant_factors: self.invariant_factors.clone(),
                free_rank: 0,
            }
            .elements()
            .unwrap();
            for _ in 0..self.free_rank {
                out = out
                    .into_iter()
                    .flat_map(|e| {
                        (-b..=b).map(move |v| {
                            let mut coords = e.coords.clone();
                            coords.push(BigInt::from(v));
                            GroupElement { coords }
                        })
                    })
                    .collect();
            }
            out
        }
    }
}
