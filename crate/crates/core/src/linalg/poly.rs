//! Dense univariate polynomials over ℤ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::LinalgError;

/// Coefficients low degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t - a`
    pub fn linear_root(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder when the division is exact over ℤ, i.e. when
    /// every step divides by the leading coefficient of `d` without remainder.
    pub fn div_rem_exact(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); n - dd];
        for i in (dd..n).rev() {
            if r[i].is_zero() {
                continue;
            }
            let (c, rem) = r[i].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            q[i - dd] = c;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient if `d` divides `self` in ℤ[t].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem_exact(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder `lc(d)^{deg f - deg d + 1} · f mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let (Some(df), Some(dd)) = (self.degree(), d.degree()) else {
            return self.clone();
        };
        if df < dd {
            return self.clone();
        }
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading();
            let mut shifted = vec![BigInt::zero(); dr - dd];
            shifted.extend(d.coeffs.iter().map(|x| x * &c));
            r = r.scale(&lc).sub(&Self::new(shifted));
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// `A ↦ f(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if !a.is_square() {
            return Err(LinalgError::NotSquare(a.rows(), a.cols()));
        }
        let n = a.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&IntMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{}", i)?,
            }
        }
        Ok(())
    }
}

/// `det(tI − A)` by the Faddeev–LeVerrier recurrence in exact integers.
pub fn char_poly(a: &IntMatrix) -> Result<IntPolynomial, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let id = IntMatrix::identity(n);
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&id.scale(&c[n + 1 - k]))?;
        let tr = a.mul(&m)?.trace();
        c[n - k] = -tr / BigInt::from(k);
    }
    Ok(IntPolynomial::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), p(&[1, -2, 1]));
        assert_eq!(
            char_poly(&IntMatrix::from_rows(&[[2, 1], [0, 1]])).unwrap(),
            p(&[2, -3, 1])
        );
        assert_eq!(
            char_poly(&IntMatrix::from_rows(&[[0, -1], [1, 0]])).unwrap(),
            p(&[1, 0, 1])
        );
        assert!(char_poly(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn cayley_hamilton() {
        let a = IntMatrix::from_rows(&[[1, 2, -1], [0, 3, 4], [5, -2, 2]]);
        let f = char_poly(&a).unwrap();
        assert_eq!(f.leading(), BigInt::one());
        assert_eq!(f.constant_term(), -a.det().unwrap());
        assert!(f.eval_matrix(&a).unwrap().is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]);
        let b = p(&[-2, 1]);
        assert_eq!(a.mul(&b), p(&[2, -3, 1]));
        assert_eq!(p(&[2, -3, 1]).div_exact(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(a.pow(3).derivative(), a.pow(2).scale(&BigInt::from(3)));
        assert_eq!(p(&[2, -3, 1]).gcd(&p(&[-1, 0, 1])), a);
        assert_eq!(p(&[4, 6]).primitive_part(), p(&[2, 3]));
        assert_eq!(p(&[-4, -6]).primitive_part(), p(&[2, 3]));
        assert_eq!(p(&[2, -3, 1]).to_string(), "t^2 - 3t + 2");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }
}
