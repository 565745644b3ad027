//! Hermite normal form and sublattices of `ℤ^r`.
//!
//! A [`Lattice`] stores its basis as the columns of a matrix in column Hermite
//! form: lower-triangular echelon shape, strictly increasing pivot rows,
//! positive pivots, and every entry in a pivot row to the left of the pivot
//! reduced into `[0, pivot)`. This form is unique per lattice, so lattice
//! equality is structural equality of the bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::LinalgError;

/// Output of integer row reduction: `transform · input = echelon`.
pub(crate) struct RowEchelon {
    /// Rows of the echelon form; rows `rank..` are zero.
    pub rows: Vec<Vec<BigInt>>,
    /// Unimodular transform (only when requested).
    pub transform: Option<Vec<Vec<BigInt>>>,
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Row Hermite normal form over ℤ, optionally tracking the unimodular transform.
pub(crate) fn row_echelon(mut a: Vec<Vec<BigInt>>, width: usize, track: bool) -> RowEchelon {
    let m = a.len();
    let mut u: Option<Vec<Vec<BigInt>>> = track.then(|| {
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    });
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..width {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            if let Some(u) = u.as_mut() {
                u.swap(r, best);
            }
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (head, tail) = a.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[r], &q);
                if let Some(u) = u.as_mut() {
                    let (uh, ut) = u.split_at_mut(i);
                    sub_scaled(&mut ut[0], &uh[r], &q);
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut() {
                *v = -&*v;
            }
            if let Some(u) = u.as_mut() {
                for v in u[r].iter_mut() {
                    *v = -&*v;
                }
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(r);
            sub_scaled(&mut head[i], &tail[0], &q);
            if let Some(u) = u.as_mut() {
                let (uh, ut) = u.split_at_mut(r);
                sub_scaled(&mut uh[i], &ut[0], &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowEchelon {
        rows: a,
        transform: u,
        rank: r,
        pivots,
    }
}

/// Basis of the integer kernel `{x ∈ ℤ^n : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let ech = row_echelon(a.transpose().to_rows(), a.rows(), true);
    let u = ech.transform.expect("transform requested");
    u.into_iter().skip(ech.rank).collect()
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let ech = row_echelon(a.transpose().to_rows(), a.rows(), true);
    let u = ech.transform.expect("transform requested");
    let e = &ech.rows;
    let mut y: Vec<BigInt> = Vec::with_capacity(ech.rank);
    for (i, &p) in ech.pivots.iter().enumerate() {
        let mut rhs = b[p].clone();
        for (l, yl) in y.iter().enumerate() {
            rhs -= &e[l][p] * yl;
        }
        let (q, rem) = rhs.div_rem(&e[i][p]);
        if !rem.is_zero() {
            return Ok(None);
        }
        y.push(q);
    }
    // Remaining equations must hold with the determined coordinates.
    for (j, bj) in b.iter().enumerate() {
        let mut s = BigInt::zero();
        for (l, yl) in y.iter().enumerate() {
            s += &e[l][j] * yl;
        }
        if &s != bj {
            return Ok(None);
        }
    }
    let mut x = vec![BigInt::zero(); n];
    for (l, yl) in y.iter().enumerate() {
        sub_scaled(&mut x, &u[l], &(-yl));
    }
    Ok(Some(x))
}

impl IntMatrix {
    /// The rows of this matrix as vectors.
    pub(crate) fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

/// A sublattice of `ℤ^r` with a canonical Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    /// The ℤ-span of the given vectors.
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        for g in gens {
            if g.len() != ambient {
                return Err(LinalgError::AmbientMismatch(ambient, g.len()));
            }
        }
        let ech = row_echelon(gens.to_vec(), ambient, false);
        let cols: Vec<Vec<BigInt>> = ech.rows.into_iter().take(ech.rank).collect();
        Ok(Lattice {
            ambient,
            basis: IntMatrix::from_columns(ambient, &cols),
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as the columns of a matrix in column Hermite form.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, v.len()));
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut row = 0;
        for j in 0..self.rank() {
            let col = self.basis.column(j);
            let pivot = col
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis column is nonzero");
            while row < pivot {
                if !rest[row].is_zero() {
                    return Ok(None);
                }
                row += 1;
            }
            let (q, r) = rest[pivot].div_rem(&col[pivot]);
            if !r.is_zero() {
                return Ok(None);
            }
            sub_scaled(&mut rest, &col, &q);
            coords.push(q);
            row = pivot + 1;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool, LinalgError> {
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, other: &Lattice) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice, LinalgError> {
        self.check_ambient(other)?;
        let mut gens = self.basis_vectors();
        gens.extend(other.basis_vectors());
        Lattice::from_generators(self.ambient, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Lattice::zero(self.ambient));
        }
        let neg_other = other.basis.scale(&BigInt::from(-1));
        let stacked = self.basis.hstack(&neg_other)?;
        let k = self.rank();
        let gens = integer_kernel(&stacked)
            .into_iter()
            .map(|z| self.basis.mul_vec(&z[..k]))
            .collect::<Result<Vec<_>, _>>()?;
        Lattice::from_generators(self.ambient, &gens)
    }

    /// The image `A(L)`, a sublattice of `ℤ^{rows(A)}`.
    pub fn image(&self, a: &IntMatrix) -> Result<Lattice, LinalgError> {
        if a.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch(a.cols(), self.ambient));
        }
        let gens = self
            .basis_vectors()
            .iter()
            .map(|b| a.mul_vec(b))
            .collect::<Result<Vec<_>, _>>()?;
        Lattice::from_generators(a.rows(), &gens)
    }

    /// The preimage `{x ∈ ℤ^{cols(A)} : A x ∈ target}`.
    pub fn preimage(a: &IntMatrix, target: &Lattice) -> Result<Lattice, LinalgError> {
        if a.rows() != target.ambient {
            return Err(LinalgError::AmbientMismatch(a.rows(), target.ambient));
        }
        let n = a.cols();
        let neg = target.basis.scale(&BigInt::from(-1));
        let stacked = a.hstack(&neg)?;
        let gens: Vec<Vec<BigInt>> = integer_kernel(&stacked)
            .into_iter()
            .map(|z| z[..n].to_vec())
            .collect();
        Lattice::from_generators(n, &gens)
    }

    /// Index `[ℤ^r : L]` for a full-rank lattice; `None` if the rank is deficient.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient {
            return None;
        }
        Some(
            (0..self.ambient)
                .map(|i| self.basis[(i, i)].clone())
                .product(),
        )
    }
}

/// Lattice spanned by the columns of `generators`.
pub fn hermite_basis(generators: &IntMatrix, ambient_rank: usize) -> Result<Lattice, LinalgError> {
    if generators.rows() != ambient_rank {
        return Err(LinalgError::AmbientMismatch(
            ambient_rank,
            generators.rows(),
        ));
    }
    Lattice::from_generators(ambient_rank, &generators.columns())
}

pub fn lattice_intersect(a: &Lattice, b: &Lattice) -> Result<Lattice, LinalgError> {
    a.intersect(b)
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Result<Lattice, LinalgError> {
    a.sum(b)
}

pub fn lattice_contains(a: &Lattice, v: &[BigInt]) -> Result<bool, LinalgError> {
    a.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::vec_big;

    fn lat(ambient: usize, gens: &[&[i64]]) -> Lattice {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|v| vec_big(v)).collect();
        Lattice::from_generators(ambient, &g).unwrap()
    }

    /// Index of a full-rank sublattice of ℤ² by counting its points in a box of
    /// residues mod `m`, where `mℤ² ⊆ L`.
    fn index_by_cosets(l: &Lattice, m: i64) -> i64 {
        let mut inside = 0;
        for a in 0..m {
            for b in 0..m {
                if l.contains(&vec_big(&[a, b])).unwrap() {
                    inside += 1;
                }
            }
        }
        m * m / inside
    }

    #[test]
    fn diagonal_generators_have_index_six() {
        let l = hermite_basis(&IntMatrix::from_rows(&[[2, 0], [0, 3]]), 2).unwrap();
        assert_eq!(index_by_cosets(&l, 6), 6);
        assert_eq!(l.index(), Some(BigInt::from(6)));
    }

    #[test]
    fn identity_generators_span_everything() {
        let l = hermite_basis(&IntMatrix::identity(2), 2).unwrap();
        assert_eq!(l, Lattice::full(2));
    }

    #[test]
    fn dependent_generators_collapse_to_rank_one() {
        let l = hermite_basis(&IntMatrix::from_rows(&[[2, 4], [2, 4]]), 2).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.basis_vectors(), vec![vec_big(&[2, 2])]);
        assert!(l.contains(&vec_big(&[-6, -6])).unwrap());
        assert!(!l.contains(&vec_big(&[1, 1])).unwrap());
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = lat(2, &[&[1, 2], &[0, 3]]);
        let b = lat(2, &[&[1, 5], &[1, -1], &[0, 3]]);
        assert_eq!(a, b);
        let pivot_row = &a.basis().row(1);
        // entry left of the second pivot is reduced into [0, pivot)
        assert!(!pivot_row[0].is_negative() && pivot_row[0] < pivot_row[1]);
    }

    #[test]
    fn intersections() {
        let two = lat(1, &[&[2]]);
        let three = lat(1, &[&[3]]);
        assert_eq!(lattice_intersect(&two, &three).unwrap(), lat(1, &[&[6]]));

        let a = lat(2, &[&[2, 0], &[0, 1]]);
        let b = lat(2, &[&[1, 0], &[0, 3]]);
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet, lat(2, &[&[2, 0], &[0, 3]]));
        for x in 0..6 {
            for y in 0..6 {
                let v = vec_big(&[x, y]);
                let both = a.contains(&v).unwrap() && b.contains(&v).unwrap();
                assert_eq!(meet.contains(&v).unwrap(), both);
            }
        }
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.intersect(&Lattice::zero(3)).is_err());
    }

    #[test]
    fn sums_and_preimages() {
        let two = lat(1, &[&[4]]);
        let six = lat(1, &[&[6]]);
        assert_eq!(lattice_sum(&two, &six).unwrap(), lat(1, &[&[2]]));
        let doubling = IntMatrix::from_rows(&[[2]]);
        assert_eq!(Lattice::preimage(&doubling, &six).unwrap(), lat(1, &[&[3]]));
        assert_eq!(Lattice::full(1).image(&doubling).unwrap(), lat(1, &[&[2]]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let b = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(
            solve_integer(&b, &vec_big(&[4, 9])).unwrap(),
            Some(vec_big(&[2, 3]))
        );
        assert_eq!(solve_integer(&b, &vec_big(&[1, 0])).unwrap(), None);
        let wide = IntMatrix::from_rows(&[[6, 10]]);
        let x = solve_integer(&wide, &vec_big(&[2])).unwrap().unwrap();
        assert_eq!(wide.mul_vec(&x).unwrap(), vec_big(&[2]));
    }
}
