//! Polynomials over a small prime field, and Berlekamp's factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Coefficients low degree first, reduced into `[0, p)`, no trailing zeros.
pub(crate) type Poly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!((2..(1 << 31)).contains(&p));
        Field { p }
    }

    pub fn reduce_big(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits")
    }

    pub fn from_big(&self, coeffs: &[BigInt]) -> Poly {
        trim(coeffs.iter().map(|c| self.reduce_big(c)).collect())
    }

    fn mul_s(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        let mut result = 1;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_s(result, base);
            }
            base = self.mul_s(base, base);
            e >>= 1;
        }
        result
    }

    #[cfg(test)]
    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (get(a, i) + get(b, i)) % self.p).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (get(a, i) + self.p - get(b, i)) % self.p)
                .collect(),
        )
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        trim(a.iter().map(|&x| self.mul_s(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mul_s(x, y)) % self.p;
            }
        }
        trim(out)
    }

    pub fn div_rem(&self, a: &Poly, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_empty(), "division by the zero polynomial");
        let dd = d.len() - 1;
        if a.len() <= dd {
            return (Vec::new(), a.clone());
        }
        let inv_lc = self.inv(d[dd]);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - dd];
        for i in (dd..a.len()).rev() {
            let c = self.mul_s(r[i], inv_lc);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.iter().enumerate() {
                let k = i - dd + j;
                r[k] = (r[k] + self.p - self.mul_s(c, dc)) % self.p;
            }
        }
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &Poly, d: &Poly) -> Poly {
        self.div_rem(a, d).1
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)` monic.
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("inputs are not both zero"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_s(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn is_squarefree(&self, a: &Poly) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    fn powmod(&self, base: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut result: Poly = vec![1];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.mul(&result, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        result
    }

    /// Basis of the Berlekamp subalgebra `{g : g^p ≡ g mod f}` for monic squarefree `f`.
    fn berlekamp_basis(&self, f: &Poly) -> Vec<Poly> {
        let n = f.len() - 1;
        let xp = self.powmod(&vec![0, 1], self.p, f);
        // rows[i] = x^{ip} mod f, then subtract the identity
        let mut q = vec![vec![0u64; n]; n];
        let mut cur: Poly = vec![1];
        for (i, row) in q.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = get(&cur, j);
            }
            row[i] = (row[i] + self.p - 1) % self.p;
            cur = self.rem(&self.mul(&cur, &xp), f);
        }
        // null space of v·Q: transpose to columns-as-equations
        let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| q[i][j]).collect()).collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul_s(*x, inv);
            }
            for i in 0..n {
                if i != r && m[i][c] != 0 {
                    let factor = m[i][c];
                    for j in 0..n {
                        let sub = self.mul_s(factor, m[r][j]);
                        m[i][j] = (m[i][j] + self.p - sub) % self.p;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; n];
                v[fc] = 1;
                for (row, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = (self.p - m[row][fc]) % self.p;
                }
                trim(v)
            })
            .collect()
    }

    /// Number of irreducible factors of a monic squarefree polynomial.
    pub fn factor_count(&self, f: &Poly) -> usize {
        self.berlekamp_basis(f).len()
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn berlekamp(&self, f: &Poly) -> Vec<Poly> {
        if f.len() <= 2 {
            return vec![f.clone()];
        }
        let basis = self.berlekamp_basis(f);
        let k = basis.len();
        let mut factors = vec![f.clone()];
        for v in basis.iter().filter(|v| v.len() > 1) {
            if factors.len() == k {
                break;
            }
            let mut next = Vec::new();
            for h in factors {
                let mut pending = vec![h];
                for s in 0..self.p {
                    let shifted = self.sub(v, &vec![s]);
                    let mut still = Vec::new();
                    for h in pending {
                        if h.len() <= 2 {
                            next.push(h);
                            continue;
                        }
                        let g = self.gcd(&h, &shifted);
                        if g.len() > 1 && g.len() < h.len() {
                            let other = self.div_rem(&h, &g).0;
                            still.push(g);
                            still.push(self.monic(&other));
                        } else {
                            still.push(h);
                        }
                    }
                    pending = still;
                }
                next.extend(pending);
            }
            factors = next;
        }
        factors.sort();
        factors
    }
}

fn get(a: &Poly, i: usize) -> u64 {
    a.get(i).copied().unwrap_or(0)
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_mod_small_primes() {
        let f5 = Field::new(5);
        // t^2 + 1 = (t + 2)(t + 3) mod 5
        let fs = f5.berlekamp(&vec![1, 0, 1]);
        assert_eq!(fs, vec![vec![2, 1], vec![3, 1]]);
        let f3 = Field::new(3);
        assert_eq!(f3.berlekamp(&vec![1, 0, 1]), vec![vec![1, 0, 1]]);
        // t^4 - 1 over F_5 splits completely
        let fs = f5.berlekamp(&vec![4, 0, 0, 0, 1]);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1], |acc, g| f5.mul(&acc, g));
        assert_eq!(prod, vec![4, 0, 0, 0, 1]);
    }

    #[test]
    fn extended_gcd_is_bezout() {
        let f = Field::new(7);
        let a = vec![1, 1];
        let b = vec![3, 0, 1];
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(f.add(&f.mul(&s, &a), &f.mul(&t, &b)), vec![1]);
    }
}
