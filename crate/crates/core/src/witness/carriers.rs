//! Exact elements of the infinite groups the constructions live on.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Finitely supported sequence `index ↦ coefficient` with nonzero entries only.
/// The coefficient group at each index is fixed by the surrounding construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SupportedSeq<I: Ord> {
    entries: BTreeMap<I, BigInt>,
}

impl<I: Ord + Clone + fmt::Display> SupportedSeq<I> {
    pub fn zero() -> Self {
        SupportedSeq {
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(index: I, coefficient: impl Into<BigInt>) -> Self {
        let mut s = Self::zero();
        s.add_at(index, &coefficient.into(), |v| v);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&I, &BigInt)> {
        self.entries.iter()
    }

    pub fn get(&self, index: &I) -> BigInt {
        self.entries.get(index).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &I> {
        self.entries.keys()
    }

    /// Adds `c` at `index`, then applies `reduce` to the new coefficient.
    pub fn add_at(&mut self, index: I, c: &BigInt, reduce: impl FnOnce(BigInt) -> BigInt) {
        let value = reduce(self.entries.remove(&index).unwrap_or_default() + c);
        if !value.is_zero() {
            self.entries.insert(index, value);
        }
    }
}

impl<I: Ord + fmt::Display> fmt::Display for SupportedSeq<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(i, c)| {
                if c.is_one() {
                    format!("e[{}]", i)
                } else {
                    format!("{}·e[{}]", c, i)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `c mod p^k` for a possibly enormous exponent; `p^k` is only formed when
/// `c` could be out of range, as `0 ≤ c < 2^k ≤ p^k` needs no reduction.
pub fn reduce_mod_prime_power(c: BigInt, p: u64, k: &BigInt) -> BigInt {
    const DIRECT: u64 = 1 << 16;
    if !c.is_negative() && BigInt::from(c.bits()) < *k {
        return c;
    }
    assert!(k <= &BigInt::from(DIRECT), "p^{} is too large to form", k);
    let k: usize = k.try_into().expect("bounded above");
    c.mod_floor(&num_traits::pow(BigInt::from(p), k))
}

/// `a/b mod 1` with `0 ≤ a < b`, `gcd(a, b) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMod1 {
    value: BigRational,
}

impl RationalMod1 {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let value = &q - q.floor();
        RationalMod1 { value }
    }

    pub fn zero() -> Self {
        RationalMod1 {
            value: BigRational::zero(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &RationalMod1) -> RationalMod1 {
        Self::from_rational(&self.value + &other.value)
    }

    pub fn scale(&self, n: &BigInt) -> RationalMod1 {
        Self::from_rational(&self.value * BigRational::from_integer(n.clone()))
    }
}

impl fmt::Display for RationalMod1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

/// `true` iff every prime factor of `n` lies in `primes`.
pub fn supported_on(n: &BigInt, primes: &[u64]) -> bool {
    let mut n = n.abs();
    if n.is_zero() {
        return false;
    }
    for &p in primes {
        let p = BigInt::from(p);
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}

/// `true` iff `n` has no prime factor in `primes`.
pub fn coprime_to(n: &BigInt, primes: &[u64]) -> bool {
    primes.iter().all(|&p| !(n % BigInt::from(p)).is_zero())
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// An exact rational inside a subring of ℚ described by its admissible
/// denominators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LocalizedRational(pub BigRational);

impl LocalizedRational {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        LocalizedRational(BigRational::from_integer(n.into()))
    }

    pub fn inverse_power(q: u64, n: usize) -> Self {
        LocalizedRational(BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(q), n),
        ))
    }

    pub fn scale(&self, q: u64) -> Self {
        LocalizedRational(&self.0 * BigRational::from_integer(BigInt::from(q)))
    }

    /// Denominator uses only the listed primes (`ℤ[1/p₁, …]`).
    pub fn denominator_supported_on(&self, primes: &[u64]) -> bool {
        supported_on(self.0.denom(), primes)
    }

    /// Denominator avoids the listed primes (rationals inside the `p`-adic integers).
    pub fn denominator_coprime_to(&self, primes: &[u64]) -> bool {
        coprime_to(self.0.denom(), primes)
    }
}

impl fmt::Display for LocalizedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `Σ_k α_k a_k + β_k b_k` in the rational span of `{a_k, b_k}_{k∈ℤ}`; zero
/// pairs are not stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CornerElement {
    coords: BTreeMap<i64, (BigRational, BigRational)>,
}

impl CornerElement {
    pub fn zero() -> Self {
        CornerElement::default()
    }

    pub fn a(k: i64, alpha: BigRational) -> Self {
        Self::pair(k, alpha, BigRational::zero())
    }

    pub fn b(k: i64, beta: BigRational) -> Self {
        Self::pair(k, BigRational::zero(), beta)
    }

    pub fn pair(k: i64, alpha: BigRational, beta: BigRational) -> Self {
        let mut e = CornerElement::zero();
        e.add_pair(k, &alpha, &beta);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&i64, &(BigRational, BigRational))> {
        self.coords.iter()
    }

    pub fn add_pair(&mut self, k: i64, alpha: &BigRational, beta: &BigRational) {
        let (a, b) = self
            .coords
            .remove(&k)
            .unwrap_or_else(|| (BigRational::zero(), BigRational::zero()));
        let (a, b) = (a + alpha, b + beta);
        if !(a.is_zero() && b.is_zero()) {
            self.coords.insert(k, (a, b));
        }
    }

    pub fn add(&self, other: &CornerElement) -> CornerElement {
        let mut out = self.clone();
        for (&k, (a, b)) in &other.coords {
            out.add_pair(k, a, b);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> CornerElement {
        let c = BigRational::from_integer(c.clone());
        let mut out = CornerElement::zero();
        for (&k, (a, b)) in &self.coords {
            out.add_pair(k, &(a * &c), &(b * &c));
        }
        out
    }
}

impl fmt::Display for CornerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, (a, b)) in &self.coords {
            if !a.is_zero() {
                terms.push(if a.is_one() {
                    format!("a[{}]", k)
                } else {
                    format!("({})a[{}]", a, k)
                });
            }
            if !b.is_zero() {
                terms.push(if b.is_one() {
                    format!("b[{}]", k)
                } else {
                    format!("({})b[{}]", b, k)
                });
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Primes in increasing order, by trial division.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_sequences_reduce() {
        let m = |v: BigInt| v.mod_floor(&BigInt::from(4));
        let mut s = SupportedSeq::unit(3i64, 3);
        s.add_at(3, &BigInt::from(1), m);
        assert!(s.is_zero());
        s.add_at(-2, &BigInt::from(6), m);
        assert_eq!(s.to_string(), "2·e[-2]");
    }

    #[test]
    fn fractions_mod_one() {
        let x = RationalMod1::new(5, 4);
        assert_eq!(x.to_string(), "1/4");
        assert_eq!(x.scale(&BigInt::from(2)).to_string(), "1/2");
        assert!(x.scale(&BigInt::from(4)).is_zero());
        assert_eq!(RationalMod1::new(-1, 3).to_string(), "2/3");
    }

    #[test]
    fn denominators() {
        assert!(supported_on(&BigInt::from(24), &[2, 3]));
        assert!(!supported_on(&BigInt::from(10), &[2]));
        assert!(coprime_to(&BigInt::from(9), &[5]));
        assert_eq!(valuation(&BigInt::from(250), 5), 3);
        assert_eq!(
            primes().take(6).collect::<Vec<_>>(),
            vec![2, 3, 5, 7, 11, 13]
        );
    }

    #[test]
    fn huge_exponents_skip_reduction() {
        let k = BigInt::from(10u64).pow(30);
        assert_eq!(
            reduce_mod_prime_power(BigInt::from(1), 3, &k),
            BigInt::from(1)
        );
        assert_eq!(
            reduce_mod_prime_power(BigInt::from(10), 3, &BigInt::from(2)),
            BigInt::from(1)
        );
        assert_eq!(
            reduce_mod_prime_power(BigInt::from(-1), 3, &BigInt::from(2)),
            BigInt::from(8)
        );
    }
}
