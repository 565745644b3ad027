use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{FgGroup, GroupElement};
use super::subgroup::Subgroup;
use crate::error::GroupError;
use crate::linalg::{solve_integer, IntMatrix, Lattice};

/// A homomorphism between groups in normal form, acting on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Homomorphism {
    src: FgGroup,
    dst: FgGroup,
    matrix: IntMatrix,
}

/// An endomorphism `φ: G → G`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endomorphism {
    group: FgGroup,
    matrix: IntMatrix,
}

/// Validates `m` as a map `src → dst` and reduces its torsion rows.
fn check_matrix(src: &FgGroup, dst: &FgGroup, m: &IntMatrix) -> Result<IntMatrix, GroupError> {
    if m.rows() != dst.dim() || m.cols() != src.dim() {
        return Err(GroupError::Linalg(crate::error::LinalgError::Shape(
            format!(
                "expected a {}x{} matrix, got {}x{}",
                dst.dim(),
                src.dim(),
                m.rows(),
                m.cols()
            ),
        )));
    }
    for j in 0..src.torsion_rank() {
        let dj = src.coordinate_order(j).expect("torsion column");
        for i in 0..dst.dim() {
            let entry = &m[(i, j)];
            match dst.coordinate_order(i) {
                None if !entry.is_zero() => {
                    return Err(GroupError::WellDefinedness {
                        column: j,
                        detail: format!(
                            "torsion generator of order {} sent to free coordinate {} with coefficient {}",
                            dj, i, entry
                        ),
                    })
                }
                Some(di) if !(dj * entry).is_multiple_of(di) => {
                    return Err(GroupError::WellDefinedness {
                        column: j,
                        detail: format!("row {}: {} does not divide {}·{}", i, di, dj, entry),
                    })
                }
                _ => {}
            }
        }
    }
    let mut out = m.clone();
    for i in 0..dst.torsion_rank() {
        out.reduce_row_mod(i, dst.coordinate_order(i).expect("torsion row"));
    }
    Ok(out)
}

impl Homomorphism {
    pub fn new(src: &FgGroup, dst: &FgGroup, m: &IntMatrix) -> Result<Self, GroupError> {
        Ok(Homomorphism {
            src: src.clone(),
            dst: dst.clone(),
            matrix: check_matrix(src, dst, m)?,
        })
    }

    pub fn src(&self) -> &FgGroup {
        &self.src
    }

    pub fn dst(&self) -> &FgGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let v = self.matrix.mul_vec(x.coords()).expect("dimension checked");
        self.dst.element(v).expect("dimension checked")
    }
}

/// Rejects a matrix that does not define an endomorphism of `g`.
pub fn check_endo(g: &FgGroup, m: &IntMatrix) -> Result<Endomorphism, GroupError> {
    Endomorphism::new(g, m)
}

impl Endomorphism {
    pub fn new(g: &FgGroup, m: &IntMatrix) -> Result<Self, GroupError> {
        Ok(Endomorphism {
            group: g.clone(),
            matrix: check_matrix(g, g, m)?,
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(g: &FgGroup, rows: &[R]) -> Result<Self, GroupError> {
        Self::new(g, &IntMatrix::from_rows(rows))
    }

    pub fn identity(g: &FgGroup) -> Self {
        Endomorphism {
            group: g.clone(),
            matrix: check_matrix(g, g, &IntMatrix::identity(g.dim()))
                .expect("identity is well defined"),
        }
    }

    pub fn zero(g: &FgGroup) -> Self {
        Endomorphism {
            group: g.clone(),
            matrix: IntMatrix::zeros(g.dim(), g.dim()),
        }
    }

    /// Multiplication by `n`.
    pub fn scalar(g: &FgGroup, n: i64) -> Self {
        let m = IntMatrix::identity(g.dim()).scale(&BigInt::from(n));
        Endomorphism::new(g, &m).expect("scalars are well defined")
    }

    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let v = self.matrix.mul_vec(x.coords()).expect("dimension checked");
        self.group.element(v).expect("dimension checked")
    }

    fn check_same(&self, other: &Endomorphism) -> Result<(), GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism, GroupError> {
        self.check_same(other)?;
        let m = self.matrix.mul(&other.matrix)?;
        Endomorphism::new(&self.group, &m)
    }

    pub fn power(&self, k: u64) -> Endomorphism {
        let mut result = Endomorphism::identity(&self.group);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base).expect("same group");
            }
            base = base.compose(&base).expect("same group");
            e >>= 1;
        }
        result
    }

    pub fn kernel(&self) -> Subgroup {
        self.preimage(&Subgroup::trivial(&self.group))
            .expect("same group")
    }

    pub fn image(&self) -> Subgroup {
        self.image_of(&Subgroup::whole(&self.group))
            .expect("same group")
    }

    /// `φ(H)`.
    pub fn image_of(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        if h.group() != &self.group {
            return Err(GroupError::GroupMismatch);
        }
        let mapped = h.lattice().image(&self.matrix)?;
        let with_relations = mapped.sum(&self.group.relations())?;
        Ok(Subgroup::from_lattice(&self.group, with_relations))
    }

    /// `φ⁻¹(H)`.
    pub fn preimage(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        if h.group() != &self.group {
            return Err(GroupError::GroupMismatch);
        }
        Ok(Subgroup::from_lattice(
            &self.group,
            Lattice::preimage(&self.matrix, h.lattice())?,
        ))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    /// Some `y ∈ H` with `φ(y) = x`, if one exists.
    pub fn solve_in(
        &self,
        h: &Subgroup,
        x: &GroupElement,
    ) -> Result<Option<GroupElement>, GroupError> {
        let basis = h.basis();
        let relations = self.group.relation_matrix();
        let mapped = self.matrix.mul(basis)?;
        let neg_rel = relations.scale(&BigInt::from(-1));
        let system = mapped.hstack(&neg_rel)?;
        let Some(sol) = solve_integer(&system, x.coords())? else {
            return Ok(None);
        };
        let y = basis.mul_vec(&sol[..basis.cols()])?;
        Ok(Some(self.group.element(y)?))
    }

    /// Inverse of an automorphism; surjectivity suffices since finitely
    /// generated groups are Hopfian.
    pub fn inverse(&self) -> Result<Endomorphism, GroupError> {
        let whole = Subgroup::whole(&self.group);
        let n = self.group.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let target = self.group.element(e)?;
            match self.solve_in(&whole, &target)? {
                Some(y) => cols.push(y.coords().to_vec()),
                None => {
                    return Err(GroupError::NotAutomorphism(format!(
                        "generator {} is not in the image",
                        j
                    )))
                }
            }
        }
        Endomorphism::new(&self.group, &IntMatrix::from_columns(n, &cols))
    }

    /// `u⁻¹ ∘ φ ∘ u` for an automorphism `u`.
    pub fn conjugate(&self, u: &Endomorphism) -> Result<Endomorphism, GroupError> {
        self.check_same(u)?;
        u.inverse()?.compose(self)?.compose(u)
    }

    /// Restriction of the matrix to the free coordinates (the induced map on `G / t(G)`).
    pub fn free_block(&self) -> IntMatrix {
        let k = self.group.torsion_rank();
        let idx: Vec<usize> = (k..self.group.dim()).collect();
        self.matrix.select(&idx, &idx)
    }
}

/// `G₁ ⊕ G₂` in normal form, with embeddings and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgGroup,
    pub inclusions: [Homomorphism; 2],
    pub projections: [Homomorphism; 2],
}

/// Coordinates of `G₁ ⊕ G₂` listed as torsion₁, torsion₂, free₁, free₂.
fn concatenated(g1: &FgGroup, g2: &FgGroup) -> (Vec<BigInt>, usize, Vec<usize>, Vec<usize>) {
    let mut orders = g1.invariant_factors().to_vec();
    orders.extend(g2.invariant_factors().iter().cloned());
    let (k1, k2) = (g1.torsion_rank(), g2.torsion_rank());
    let (r1, r2) = (g1.free_rank(), g2.free_rank());
    let pos1: Vec<usize> = (0..k1).chain((0..r1).map(|f| k1 + k2 + f)).collect();
    let pos2: Vec<usize> = (0..k2)
        .map(|t| k1 + t)
        .chain((0..r2).map(|f| k1 + k2 + r1 + f))
        .collect();
    (orders, r1 + r2, pos1, pos2)
}

pub fn direct_sum(g1: &FgGroup, g2: &FgGroup) -> Result<DirectSum, GroupError> {
    let (orders, rank, pos1, pos2) = concatenated(g1, g2);
    let norm = FgGroup::normalize(&orders, rank)?;
    let n_raw = orders.len() + rank;
    let embed = |g: &FgGroup, pos: &[usize]| -> Result<(Homomorphism, Homomorphism), GroupError> {
        let mut inc_raw = IntMatrix::zeros(n_raw, g.dim());
        let mut proj_raw = IntMatrix::zeros(g.dim(), n_raw);
        for (j, &p) in pos.iter().enumerate() {
            inc_raw[(p, j)] = BigInt::one();
            proj_raw[(j, p)] = BigInt::one();
        }
        let inc = norm.to_normal.mul(&inc_raw)?;
        let proj = proj_raw.mul(&norm.from_normal)?;
        Ok((
            Homomorphism::new(g, &norm.group, &inc)?,
            Homomorphism::new(&norm.group, g, &proj)?,
        ))
    };
    let (i1, p1) = embed(g1, &pos1)?;
    let (i2, p2) = embed(g2, &pos2)?;
    Ok(DirectSum {
        group: norm.group.clone(),
        inclusions: [i1, i2],
        projections: [p1, p2],
    })
}

/// `φ₁ ⊕ φ₂` on the normalized direct sum.
pub fn block_endo(
    phi1: &Endomorphism,
    phi2: &Endomorphism,
) -> Result<(DirectSum, Endomorphism), GroupError> {
    let sum = direct_sum(phi1.group(), phi2.group())?;
    let [i1, i2] = &sum.inclusions;
    let [p1, p2] = &sum.projections;
    let part1 = i1.matrix().mul(phi1.matrix())?.mul(p1.matrix())?;
    let part2 = i2.matrix().mul(phi2.matrix())?.mul(p2.matrix())?;
    let endo = Endomorphism::new(&sum.group, &part1.add(&part2)?)?;
    Ok((sum, endo))
}

/// Image of a subgroup under a homomorphism.
pub fn map_subgroup(h: &Homomorphism, s: &Subgroup) -> Result<Subgroup, GroupError> {
    if s.group() != h.src() {
        return Err(GroupError::GroupMismatch);
    }
    let gens: Vec<GroupElement> = s.generators().iter().map(|g| h.apply(g)).collect();
    Subgroup::generated_by(h.dst(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64], r: usize) -> FgGroup {
        FgGroup::from_orders(orders, r).unwrap()
    }

    #[test]
    fn well_definedness() {
        assert!(Endomorphism::from_rows(&FgGroup::free(2), &[[1, 1], [0, 1]]).is_ok());
        let mixed = g(&[2], 1);
        assert!(Endomorphism::from_rows(&mixed, &[[0, 1], [0, 0]]).is_ok());
        let err = Endomorphism::from_rows(&mixed, &[[0, 0], [1, 0]]).unwrap_err();
        assert!(matches!(err, GroupError::WellDefinedness { column: 0, .. }));
        let t = g(&[2, 4], 0);
        assert!(Endomorphism::from_rows(&t, &[[0, 1], [0, 0]]).is_ok());
        let err = Endomorphism::from_rows(&t, &[[0, 0], [1, 0]]).unwrap_err();
        assert!(matches!(err, GroupError::WellDefinedness { column: 0, .. }));
    }

    #[test]
    fn kernels_images_powers() {
        let z4 = g(&[4], 0);
        assert!(Endomorphism::zero(&z4).kernel().is_whole());
        let mu2 = Endomorphism::scalar(&z4, 2);
        let ker = mu2.kernel();
        let els: Vec<String> = ker
            .elements()
            .unwrap()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(els, vec!["(0)", "(2)"]);
        assert_eq!(mu2.image(), ker);
        let u = Endomorphism::from_rows(&FgGroup::free(2), &[[1, 1], [0, 1]]).unwrap();
        assert_eq!(
            u.power(3).matrix(),
            &IntMatrix::from_rows(&[[1, 3], [0, 1]])
        );
        assert_eq!(u.power(0), Endomorphism::identity(&FgGroup::free(2)));
        assert!(u.compose(&Endomorphism::identity(&z4)).is_err());
    }

    #[test]
    fn inverses_and_conjugation() {
        let z2 = FgGroup::free(2);
        let u = Endomorphism::from_rows(&z2, &[[1, 0], [1, 1]]).unwrap();
        let phi = Endomorphism::from_rows(&z2, &[[1, 1], [0, 1]]).unwrap();
        let c = phi.conjugate(&u).unwrap();
        assert_eq!(u.compose(&c).unwrap(), phi.compose(&u).unwrap());
        assert!(phi.conjugate(&Endomorphism::scalar(&z2, 2)).is_err());
        let t = g(&[3, 9], 1);
        let aut = Endomorphism::from_rows(&t, &[[2, 0, 1], [3, 1, 0], [0, 0, -1]]).unwrap();
        let inv = aut.inverse().unwrap();
        assert_eq!(aut.compose(&inv).unwrap(), Endomorphism::identity(&t));
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&g(&[2], 1), &g(&[3], 0)).unwrap();
        assert_eq!(s.group.to_string(), "[6]+Z^1");
        let x = g(&[2], 1).element_i64(&[1, 5]).unwrap();
        let back = s.projections[0].apply(&s.inclusions[0].apply(&x));
        assert_eq!(back, x);
        let y = g(&[3], 0).element_i64(&[2]).unwrap();
        assert!(s.projections[0].apply(&s.inclusions[1].apply(&y)).is_zero());

        let id1 = Endomorphism::identity(&FgGroup::free(1));
        let (_, b) = block_endo(&id1, &id1).unwrap();
        assert_eq!(b, Endomorphism::identity(&FgGroup::free(2)));
    }
}
