use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁ | d₂ | …` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    // stored as rows of v^T so column operations become row operations
    vt: Vec<Vec<BigInt>>,
}

fn axpy(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() || target == source {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

impl Work {
    fn row_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        axpy(&mut self.a, target, source, q);
        axpy(&mut self.u, target, source, q);
    }

    fn col_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let s = row[source].clone();
            if !s.is_zero() {
                row[target] -= q * s;
            }
        }
        axpy(&mut self.vt, target, source, q);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        self.vt.swap(i, j);
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    IntMatrix::identity(n).to_rows()
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_rows(),
        u: identity_rows(rows),
        vt: identity_rows(cols),
    };
    'diag: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'diag };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_sub(i, t, &q);
                clean &= w.a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_sub(j, t, &q);
                clean &= w.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_sub(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            for x in w.a[t].iter_mut().chain(w.u[t].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    let to_matrix = |r: usize, c: usize, data: Vec<Vec<BigInt>>| {
        IntMatrix::from_entries(r, c, data.into_iter().flatten().collect())
            .expect("shape is consistent")
    };
    SmithForm {
        u: to_matrix(rows, rows, w.u),
        d: to_matrix(rows, cols, w.a),
        v: to_matrix(cols, cols, w.vt).transpose(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::big;
    use num_traits::One;

    fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for r in subsets(m.rows(), k) {
            for c in subsets(m.cols(), k) {
                g = g.gcd(&m.select(&r, &c).det().unwrap());
            }
        }
        g
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.det().unwrap().abs().is_one());
        assert!(s.v.det().unwrap().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        let mut prod = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prod *= d;
            assert_eq!(prod, minors_gcd(m, k + 1));
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn small_examples() {
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), vec![big(2), big(4)]);
        let z = check(&IntMatrix::zeros(2, 2));
        assert_eq!(z.diagonal(), vec![big(0), big(0)]);
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![big(1), big(6)]);
        check(&IntMatrix::from_rows(&[[0, 4, 6], [8, 0, 2]]));
        check(&IntMatrix::from_rows(&[[3], [5], [7]]));
    }

    proptest::proptest! {
        #[test]
        fn recomposes_and_matches_minors(entries in proptest::collection::vec(-9i64..=9, 9), r in 1usize..=3, c in 1usize..=3) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| entries[i * 3..i * 3 + c].to_vec()).collect();
            check(&IntMatrix::from_rows(&rows));
        }
    }
}
