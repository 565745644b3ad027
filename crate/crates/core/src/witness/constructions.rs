//! Closed-form strings on ℤ², Prüfer groups, direct sums of cyclic `p`-groups,
//! localizations of ℤ, finite products of prime fields and a Hopfian
//! torsion-free group of rank `ℵ₀`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::carriers::{
    is_prime, primes, reduce_mod_prime_power, supported_on, valuation, CornerElement,
    LocalizedRational, RationalMod1, SupportedSeq,
};
use super::{Dynamics, StringKind, StringWitness};
use crate::error::WitnessError;

fn require_prime(p: u64) -> Result<(), WitnessError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(WitnessError::InvalidParameters(format!(
            "{} is not prime",
            p
        )))
    }
}

/// `(a, b) ↦ (a + b, b)` on ℤ².
struct Unipotent;

impl Dynamics for Unipotent {
    type Elem = (BigInt, BigInt);

    fn apply(&self, (a, b): &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (a + b, b.clone())
    }

    fn members(&self, depth: usize) -> Result<Vec<(BigInt, BigInt)>, WitnessError> {
        Ok((0..=depth)
            .map(|n| (-BigInt::from(n), BigInt::one()))
            .collect())
    }

    fn is_zero(&self, (a, b): &(BigInt, BigInt)) -> bool {
        a.is_zero() && b.is_zero()
    }

    fn render(&self, (a, b): &(BigInt, BigInt)) -> String {
        format!("({}, {})", a, b)
    }
}

pub fn z2_unipotent_witness() -> StringWitness {
    StringWitness::new(
        "z2-unipotent",
        "Z^2",
        "[[1,1],[0,1]]",
        "x_n = (-n, 1)",
        StringKind::NonSingular,
        Unipotent,
    )
}

/// Multiplication by `p` on `ℤ(p^∞)`.
struct PruferMultiplication {
    p: u64,
}

impl Dynamics for PruferMultiplication {
    type Elem = RationalMod1;

    fn apply(&self, x: &RationalMod1) -> RationalMod1 {
        x.scale(&BigInt::from(self.p))
    }

    fn members(&self, depth: usize) -> Result<Vec<RationalMod1>, WitnessError> {
        let p = BigInt::from(self.p);
        let mut denom = p.clone();
        let mut out = Vec::with_capacity(depth + 1);
        for _ in 0..=depth {
            out.push(RationalMod1::new(1, denom.clone()));
            denom *= &p;
        }
        Ok(out)
    }

    fn is_zero(&self, x: &RationalMod1) -> bool {
        x.is_zero()
    }

    fn in_carrier(&self, x: &RationalMod1) -> bool {
        supported_on(x.denom(), &[self.p])
    }

    fn render(&self, x: &RationalMod1) -> String {
        x.to_string()
    }
}

pub fn prufer_null_witness(p: u64) -> Result<StringWitness, WitnessError> {
    require_prime(p)?;
    Ok(StringWitness::new(
        format!("prufer-null-{}", p),
        format!("Z({}^inf) as fractions mod 1", p),
        format!("x ↦ {}x", p),
        format!("x_n = 1/{}^(n+1)", p),
        StringKind::Null { k: 1 },
        PruferMultiplication { p },
    ))
}

/// `m` with `i = m!` and `m ≥ 2`.
fn factorial_root(i: &BigInt) -> Option<u64> {
    if i < &BigInt::from(2) {
        return None;
    }
    let mut r = i.clone();
    let mut d = 2u64;
    while r > BigInt::one() {
        let (q, rem) = r.div_rem(&BigInt::from(d));
        if !rem.is_zero() {
            return None;
        }
        r = q;
        d += 1;
    }
    Some(d - 1)
}

/// `⊕_{n≥1} ℤ(p^{n+offset})` with `e_1 ↦ 0`, `e_{m!} ↦ e_{(m-1)!}` for `m ≥ 2`
/// and every other generator sent to `0`. Indices are unbounded integers.
struct FactorialChain {
    p: u64,
    offset: u64,
}

impl FactorialChain {
    fn exponent(&self, i: &BigInt) -> BigInt {
        i + self.offset
    }

    fn target(&self, i: &BigInt) -> Option<BigInt> {
        factorial_root(i).map(|m| i / m)
    }

    fn reduce_at(&self, i: &BigInt, c: BigInt) -> BigInt {
        reduce_mod_prime_power(c, self.p, &self.exponent(i))
    }
}

impl Dynamics for FactorialChain {
    type Elem = SupportedSeq<BigInt>;

    fn apply(&self, x: &SupportedSeq<BigInt>) -> SupportedSeq<BigInt> {
        let mut out = SupportedSeq::zero();
        for (i, c) in x.entries() {
            if let Some(j) = self.target(i) {
                out.add_at(j.clone(), c, |v| self.reduce_at(&j, v));
            }
        }
        out
    }

    fn members(&self, depth: usize) -> Result<Vec<SupportedSeq<BigInt>>, WitnessError> {
        let mut factorial = BigInt::one();
        let mut out = Vec::with_capacity(depth + 1);
        for n in 0..=depth {
            factorial *= n + 1;
            out.push(SupportedSeq::unit(factorial.clone(), 1));
        }
        Ok(out)
    }

    fn is_zero(&self, x: &SupportedSeq<BigInt>) -> bool {
        x.is_zero()
    }

    fn in_carrier(&self, x: &SupportedSeq<BigInt>) -> bool {
        x.entries()
            .all(|(i, c)| i >= &BigInt::one() && self.reduce_at(i, c.clone()) == *c)
    }

    fn render(&self, x: &SupportedSeq<BigInt>) -> String {
        x.to_string()
    }
}

/// Factorial indices are materialized exactly; this bounds the work, not the representation.
pub const FACTORIAL_DEPTH_CAP: usize = 2000;

/// Exponents `k_n = n + offset` (`offset ≥ 1`), strictly increasing.
pub fn basic_small_endo_witness(p: u64, offset: u64) -> Result<StringWitness, WitnessError> {
    require_prime(p)?;
    if offset == 0 {
        return Err(WitnessError::InvalidParameters(
            "exponents must be positive".into(),
        ));
    }
    Ok(StringWitness::new(
        format!("basic-small-endo-{}", p),
        format!("direct sum of Z({}^(n+{})) over n ≥ 1", p, offset),
        "e_1 ↦ 0, e_(m!) ↦ e_((m-1)!) for m ≥ 2, other generators ↦ 0",
        "x_n = e_((n+1)!)",
        StringKind::Null { k: 1 },
        FactorialChain { p, offset },
    )
    .with_cap(FACTORIAL_DEPTH_CAP))
}

/// For one `k`: the `n` with `φ((pⁿG)[p^k]) = 0` and its check on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallnessRow {
    pub k: u64,
    pub n: u64,
    pub generators_checked: u64,
    pub passed: bool,
}

/// `(pⁿG)[p^k]` is generated by `p^{max(n, k_i − k)} e_i`, and `φ` kills such an
/// element at `i = m!` iff the exponent reaches `k_{(m−1)!}`. For large `m`
/// `k_i − k ≥ k_{(m−1)!}` already, so `n` only has to cover the finitely many
/// small `m`. Each `n` is then confirmed by applying `φ` to every generator
/// up to `index_bound`.
pub fn basic_small_smallness(
    p: u64,
    offset: u64,
    k_max: u64,
    index_bound: u64,
) -> Vec<SmallnessRow> {
    let chain = FactorialChain { p, offset };
    (1..=k_max)
        .map(|k| {
            let mut n = 0u64;
            let mut m = 2u64;
            let mut prev = 1u64;
            loop {
                let fact = prev * m;
                if fact - prev >= k {
                    break;
                }
                n = n.max(prev + offset);
                prev = fact;
                m += 1;
            }
            let passed = (1..=index_bound).all(|i| {
                let ki = i + offset;
                let e = n.max(ki.saturating_sub(k));
                if e >= ki {
                    return true;
                }
                let coefficient = num_traits::pow(BigInt::from(p), e as usize);
                let y = SupportedSeq::unit(BigInt::from(i), coefficient);
                chain.apply(&y).is_zero()
            });
            SmallnessRow {
                k,
                n,
                generators_checked: index_bound,
                passed,
            }
        })
        .collect()
}

/// `⊕_{n≥1} ℤ(pⁿ)` with `e_{2(n+1)} ↦ e_{2n}`, `e_2 ↦ e_1`, `e_{2n−1} ↦ p²e_{2n+1}`.
struct PBasicShift {
    p: u64,
}

impl PBasicShift {
    fn reduce_at(&self, i: u64, c: BigInt) -> BigInt {
        reduce_mod_prime_power(c, self.p, &BigInt::from(i))
    }
}

impl Dynamics for PBasicShift {
    type Elem = SupportedSeq<u64>;

    fn apply(&self, x: &SupportedSeq<u64>) -> SupportedSeq<u64> {
        let p2 = BigInt::from(self.p * self.p);
        let mut out = SupportedSeq::zero();
        for (&i, c) in x.entries() {
            let (j, c) = if i % 2 == 0 {
                (i - 1 - (i > 2) as u64, c.clone())
            } else {
                (i + 2, c * &p2)
            };
            out.add_at(j, &c, |v| self.reduce_at(j, v));
        }
        out
    }

    fn members(&self, depth: usize) -> Result<Vec<SupportedSeq<u64>>, WitnessError> {
        Ok((0..=depth as u64)
            .map(|n| SupportedSeq::unit(2 * (n + 1), 1))
            .collect())
    }

    fn is_zero(&self, x: &SupportedSeq<u64>) -> bool {
        x.is_zero()
    }

    fn in_carrier(&self, x: &SupportedSeq<u64>) -> bool {
        x.entries()
            .all(|(&i, c)| i >= 1 && self.reduce_at(i, c.clone()) == *c)
    }

    fn render(&self, x: &SupportedSeq<u64>) -> String {
        x.to_string()
    }
}

pub fn p_basic_nonsingular_witness(p: u64) -> Result<StringWitness, WitnessError> {
    require_prime(p)?;
    Ok(StringWitness::new(
        format!("p-basic-nonsingular-{}", p),
        format!("direct sum of Z({}^n) over n ≥ 1", p),
        format!(
            "e_(2(n+1)) ↦ e_(2n), e_2 ↦ e_1, e_(2n-1) ↦ {}·e_(2n+1)",
            p * p
        ),
        "x_n = e_(2(n+1))",
        StringKind::NonSingular,
        PBasicShift { p },
    ))
}

/// The subring of ℚ a localization witness lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Subring {
    /// Denominators prime to `p`: the rational points of the `p`-adic integers.
    PAdic(u64),
    /// Denominators powers of `p`: `ℤ[1/p]`.
    Inverted(u64),
}

struct Multiplication {
    q: u64,
    ring: Subring,
}

impl Dynamics for Multiplication {
    type Elem = LocalizedRational;

    fn apply(&self, x: &LocalizedRational) -> LocalizedRational {
        x.scale(self.q)
    }

    fn members(&self, depth: usize) -> Result<Vec<LocalizedRational>, WitnessError> {
        Ok((0..=depth)
            .map(|n| LocalizedRational::inverse_power(self.q, n))
            .collect())
    }

    fn is_zero(&self, x: &LocalizedRational) -> bool {
        x.0.is_zero()
    }

    fn in_carrier(&self, x: &LocalizedRational) -> bool {
        match self.ring {
            Subring::PAdic(p) => x.denominator_coprime_to(&[p]),
            Subring::Inverted(p) => x.denominator_supported_on(&[p]),
        }
    }

    fn render(&self, x: &LocalizedRational) -> String {
        x.to_string()
    }
}

/// Where a multiplication string is sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizationTarget {
    /// `μ_q` on the `p`-adic integers, `q ≠ p`.
    PAdicIntegers { p: u64, q: u64 },
    /// `μ_q` on `ℤ[1/p]`, the rank-one group whose type is `∞` exactly at `p`.
    RankOne { p: u64, q: u64 },
}

/// Largest `n` with `x ∈ qⁿ·ℤ[1/p]`: a pseudostring of `μ_q` through `x`
/// has at most this many members beyond `x`.
pub fn rank_one_backward_depth(x: &LocalizedRational, p: u64, q: u64) -> Option<u32> {
    if x.0.is_zero() || p == q {
        None
    } else {
        Some(valuation(x.0.numer(), q))
    }
}

pub fn localization_witness(target: LocalizationTarget) -> Result<StringWitness, WitnessError> {
    match target {
        LocalizationTarget::PAdicIntegers { p, q } => {
            require_prime(p)?;
            require_prime(q)?;
            if p == q {
                return Err(WitnessError::InvalidParameters(format!(
                    "multiplication by {} is not surjective on the {}-adic integers",
                    q, p
                )));
            }
            Ok(StringWitness::new(
                format!("localization-jp-{}-q{}", p, q),
                format!("J_{} (rationals with denominator prime to {})", p, p),
                format!("x ↦ {}x", q),
                format!("x_n = {}^(-n)", q),
                StringKind::NonSingular,
                Multiplication {
                    q,
                    ring: Subring::PAdic(p),
                },
            ))
        }
        LocalizationTarget::RankOne { p, q } => {
            require_prime(p)?;
            require_prime(q)?;
            if p != q {
                return Err(WitnessError::NoWitness(format!(
                    "on Z[1/{p}] a pseudostring of x ↦ {q}x through x ≠ 0 has at most v_{q}(numerator of x) \
                     members beyond x, so the surjective core ⋂ {q}^n Z[1/{p}] is 0",
                )));
            }
            Ok(StringWitness::new(
                format!("localization-rank1-{}", p),
                format!("Z[1/{}]", p),
                format!("x ↦ {}x", p),
                format!("x_n = {}^(-n)", p),
                StringKind::NonSingular,
                Multiplication {
                    q,
                    ring: Subring::Inverted(p),
                },
            ))
        }
    }
}

/// Smallest generator of `(ℤ/p)^×`.
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `lcm(pᵢ − 1)`, the length of every orbit of the product automorphism
/// through a point with all coordinates nonzero.
pub fn product_orbit_length(primes: &[u64]) -> BigInt {
    primes
        .iter()
        .fold(BigInt::one(), |acc, &p| acc.lcm(&BigInt::from(p - 1)))
}

/// Diagonal multiplication by least primitive roots on `∏ ℤ(pᵢ)`.
struct DiagonalRoots {
    primes: Vec<u64>,
    roots: Vec<u64>,
}

impl Dynamics for DiagonalRoots {
    type Elem = Vec<u64>;

    fn apply(&self, x: &Vec<u64>) -> Vec<u64> {
        x.iter()
            .zip(self.primes.iter().zip(&self.roots))
            .map(|(&c, (&p, &z))| c * z % p)
            .collect()
    }

    fn members(&self, depth: usize) -> Result<Vec<Vec<u64>>, WitnessError> {
        let inverses: Vec<u64> = self
            .primes
            .iter()
            .zip(&self.roots)
            .map(|(&p, &z)| pow_mod(z, p - 2, p))
            .collect();
        let mut x = vec![1u64; self.primes.len()];
        let mut out = Vec::with_capacity(depth + 1);
        for _ in 0..=depth {
            out.push(x.clone());
            x = x
                .iter()
                .zip(self.primes.iter().zip(&inverses))
                .map(|(&c, (&p, &zi))| c * zi % p)
                .collect();
        }
        Ok(out)
    }

    fn is_zero(&self, x: &Vec<u64>) -> bool {
        x.iter().all(|&c| c == 0)
    }

    fn in_carrier(&self, x: &Vec<u64>) -> bool {
        x.len() == self.primes.len() && x.iter().zip(&self.primes).all(|(&c, &p)| c < p)
    }

    fn render(&self, x: &Vec<u64>) -> String {
        format!(
            "({})",
            x.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
        )
    }
}

/// `xₙ = φ^{-n}(1, …, 1)`; the truncation has finite orbits, so verification
/// stops one short of the orbit length.
pub fn product_diag_witness(primes: &[u64]) -> Result<StringWitness, WitnessError> {
    if primes.len() < 2 {
        return Err(WitnessError::InvalidParameters(
            "at least two primes are required".into(),
        ));
    }
    for &p in primes {
        require_prime(p)?;
    }
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(WitnessError::InvalidParameters(
            "primes must be strictly increasing".into(),
        ));
    }
    let cap = (product_orbit_length(primes) - 1u32)
        .to_usize()
        .unwrap_or(usize::MAX);
    let roots: Vec<u64> = primes.iter().map(|&p| least_primitive_root(p)).collect();
    let listed = primes
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    Ok(StringWitness::new(
        format!("product-diag-{}", primes.len()),
        format!("product of Z(p) over p in {{{}}}", listed),
        format!(
            "diagonal multiplication by ({})",
            roots
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
        "x_n = φ^(-n)(1, …, 1)",
        StringKind::NonSingular,
        DiagonalRoots {
            primes: primes.to_vec(),
            roots,
        },
    )
    .with_cap(cap))
}

pub fn first_primes(n: usize) -> Vec<u64> {
    primes().take(n).collect()
}

/// Position of `k ∈ ℤ` in the enumeration `0, -1, 1, -2, 2, …`.
fn zigzag(k: i64) -> usize {
    if k >= 0 {
        2 * k as usize
    } else {
        (-2 * k - 1) as usize
    }
}

/// Primes `q_k`, the `zigzag(k)`-th prime other than `p`, materialized for `|k| ≤ bound`.
#[derive(Clone, Debug)]
pub struct CornerPrimes {
    p: u64,
    table: Vec<u64>,
}

impl CornerPrimes {
    pub fn new(p: u64, bound: i64) -> Self {
        let count = 2 * bound as usize + 2;
        CornerPrimes {
            p,
            table: primes().filter(|&q| q != p).take(count).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self, k: i64) -> Option<u64> {
        self.table.get(zigzag(k)).copied()
    }
}

/// `G = ⊕_k ⟨p^{-∞}a_k, q_k^{-∞}b_k, (a_k + b_k)/p⟩`. Writing `m(a_k + b_k)/p`
/// with `m ∈ ℤ` against the other two generators gives the normal form
/// `α_k ∈ ℤ[1/p]`, `β_k ∈ ℤ[1/q_k] + (1/p)ℤ`; since `p` and `q_k` are coprime
/// the second condition says the denominator of `β_k` divides `p·q_k^j`.
pub fn corner_contains(primes: &CornerPrimes, x: &CornerElement) -> bool {
    x.coords().all(|(&k, (alpha, beta))| {
        let Some(q) = primes.q(k) else { return false };
        let p = primes.p;
        supported_on(alpha.denom(), &[p])
            && supported_on(beta.denom(), &[p, q])
            && valuation(beta.denom(), p) <= 1
    })
}

/// `a_k ↦ a_{k+1}` for `k < 0`, `a_k ↦ 0` for `k ≥ 0`, `b_k ↦ 0`.
struct CornerShift {
    primes: CornerPrimes,
}

impl Dynamics for CornerShift {
    type Elem = CornerElement;

    fn apply(&self, x: &CornerElement) -> CornerElement {
        let mut out = CornerElement::zero();
        let zero = BigRational::zero();
        for (&k, (alpha, _)) in x.coords() {
            if k < 0 {
                out.add_pair(k + 1, alpha, &zero);
            }
        }
        out
    }

    fn members(&self, depth: usize) -> Result<Vec<CornerElement>, WitnessError> {
        Ok((0..=depth as i64)
            .map(|n| CornerElement::a(-(n + 1), BigRational::one()))
            .collect())
    }

    fn is_zero(&self, x: &CornerElement) -> bool {
        x.is_zero()
    }

    fn in_carrier(&self, x: &CornerElement) -> bool {
        corner_contains(&self.primes, x)
    }

    fn render(&self, x: &CornerElement) -> String {
        x.to_string()
    }
}

pub const CORNER_DEPTH_CAP: usize = 1000;

pub fn corner_null_witness(p: u64) -> Result<StringWitness, WitnessError> {
    require_prime(p)?;
    let primes = CornerPrimes::new(p, CORNER_DEPTH_CAP as i64 + 2);
    Ok(StringWitness::new(
        format!("corner-null-{}", p),
        format!("sum over k of <{p}^-inf a_k, q_k^-inf b_k, (a_k + b_k)/{p}>, q_k the primes other than {p}"),
        "a_k ↦ a_(k+1) for k < 0, a_k ↦ 0 for k ≥ 0, b_k ↦ 0",
        "x_n = a_(-(n+1))",
        StringKind::Null { k: 2 },
        CornerShift { primes },
    )
    .with_cap(CORNER_DEPTH_CAP))
}

/// Outcome of the randomized membership regression for the corner group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerMembershipReport {
    pub samples: usize,
    /// Generator combinations accepted by the normal form.
    pub combinations_accepted: usize,
    /// Their images under the shift accepted as well.
    pub images_accepted: usize,
    /// Known non-members (`a_k/q_k`, `b_k/p²`) rejected.
    pub non_members_rejected: usize,
    pub non_members: usize,
}

impl CornerMembershipReport {
    pub fn passed(&self) -> bool {
        self.combinations_accepted == self.samples
            && self.images_accepted == self.samples
            && self.non_members_rejected == self.non_members
    }
}

/// Builds random integer combinations of the listed generators and checks the
/// normal form accepts them and their images.
pub fn corner_membership_checks(
    p: u64,
    bound: i64,
    samples: usize,
    seed: u64,
) -> CornerMembershipReport {
    let primes = CornerPrimes::new(p, bound + 1);
    let shift = CornerShift {
        primes: primes.clone(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pow = |b: u64, e: u32| BigInt::from(b).pow(e);
    let mut accepted = 0;
    let mut images = 0;
    for _ in 0..samples {
        let mut x = CornerElement::zero();
        for _ in 0..rng.gen_range(1..6) {
            let k = rng.gen_range(-bound..=bound);
            let q = primes.q(k).expect("materialized");
            let c = BigInt::from(rng.gen_range(-9i64..=9));
            let e = rng.gen_range(0..4u32);
            let generator = match rng.gen_range(0..3) {
                0 => CornerElement::a(k, BigRational::new(BigInt::one(), pow(p, e))),
                1 => CornerElement::b(k, BigRational::new(BigInt::one(), pow(q, e))),
                _ => {
                    let half = BigRational::new(BigInt::one(), BigInt::from(p));
                    CornerElement::pair(k, half.clone(), half)
                }
            };
            x = x.add(&generator.scale(&c));
        }
        accepted += corner_contains(&primes, &x) as usize;
        images += corner_contains(&primes, &shift.apply(&x)) as usize;
    }
    let mut non_members = Vec::new();
    for k in [-bound, -1, 0, bound] {
        let q = primes.q(k).expect("materialized");
        non_members.push(CornerElement::a(
            k,
            BigRational::new(BigInt::one(), BigInt::from(q)),
        ));
        non_members.push(CornerElement::b(
            k,
            BigRational::new(BigInt::one(), pow(p, 2)),
        ));
    }
    CornerMembershipReport {
        samples,
        combinations_accepted: accepted,
        images_accepted: images,
        non_members_rejected: non_members
            .iter()
            .filter(|x| !corner_contains(&primes, x))
            .count(),
        non_members: non_members.len(),
    }
}

/// `ψ` on the listed generators, for the well-definedness spot checks.
pub fn corner_shift_image(p: u64, x: &CornerElement) -> CornerElement {
    CornerShift {
        primes: CornerPrimes::new(p, 1),
    }
    .apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn passes(w: &StringWitness, depth: usize) {
        let r = w.verify(depth).unwrap();
        assert!(r.passed, "{} at depth {}: {:?}", w.id, depth, r.failure);
    }

    #[test]
    fn unipotent() {
        let w = z2_unipotent_witness();
        passes(&w, 100);
        assert_eq!(
            Unipotent.apply(&(BigInt::from(-5), BigInt::one())),
            (BigInt::from(-4), BigInt::one())
        );
        let mut x = (BigInt::zero(), BigInt::one());
        for m in 0..20 {
            assert_eq!(x, (BigInt::from(m), BigInt::one()));
            x = Unipotent.apply(&x);
        }
    }

    #[test]
    fn prufer() {
        let w = prufer_null_witness(2).unwrap();
        passes(&w, 100);
        let d = PruferMultiplication { p: 2 };
        assert_eq!(d.apply(&RationalMod1::new(1, 4)).to_string(), "1/2");
        assert!(d.apply(&RationalMod1::new(1, 2)).is_zero());
        assert_eq!(w.first_members(2).unwrap(), vec!["1/2", "1/4"]);
        assert!(prufer_null_witness(4).is_err());
    }

    #[test]
    fn factorial_indices() {
        assert_eq!(factorial_root(&BigInt::from(24)), Some(4));
        assert_eq!(factorial_root(&BigInt::from(2)), Some(2));
        assert_eq!(factorial_root(&BigInt::from(12)), None);
        assert_eq!(factorial_root(&BigInt::from(1)), None);
        let w = basic_small_endo_witness(2, 1).unwrap();
        assert_eq!(
            w.first_members(4).unwrap(),
            vec!["e[1]", "e[2]", "e[6]", "e[24]"]
        );
        passes(&w, 4);
        passes(&w, 100);
        assert!(w.verify(FACTORIAL_DEPTH_CAP + 1).is_err());
    }

    #[test]
    fn factorial_chain_is_small() {
        for row in basic_small_smallness(2, 1, 30, 800) {
            assert!(row.passed, "{:?}", row);
        }
        // k = 2: p·e_2 lies in G[p^2] and maps to p·e_1 ≠ 0 in Z(4), so n = 2 is needed
        let rows = basic_small_smallness(2, 1, 2, 10);
        assert_eq!((rows[0].n, rows[1].n), (0, 2));
    }

    #[test]
    fn single_step_map_has_short_backward_chains() {
        // e_2 ↦ e_1 and every other generator ↦ 0: the image is <e_1>, so e_2 has no preimage
        let single = |x: &SupportedSeq<u64>| {
            let mut out = SupportedSeq::zero();
            for (&i, c) in x.entries() {
                if i == 2 {
                    out.add_at(1u64, c, |v| v.mod_floor(&BigInt::from(4)));
                }
            }
            out
        };
        for i in 1..50u64 {
            for c in 1..4 {
                let y = single(&SupportedSeq::unit(i, c));
                assert!(y.support().all(|&j| j == 1));
            }
        }
    }

    #[test]
    fn p_basic() {
        let w = p_basic_nonsingular_witness(2).unwrap();
        passes(&w, 50);
        passes(&w, 100);
        let d = PBasicShift { p: 2 };
        let e = |i: u64| SupportedSeq::unit(i, 1);
        assert_eq!(d.apply(&e(2)), e(1));
        assert_eq!(d.apply(&e(1)), SupportedSeq::unit(3u64, 4));
        assert_eq!(d.apply(&e(6)), e(4));
        let mut x = e(2);
        for _ in 0..4 {
            x = d.apply(&x);
        }
        // φ⁴(e_2) = p⁶e_7, nonzero since e_7 has order p⁷
        assert_eq!(x, SupportedSeq::unit(7u64, 64));
        let w3 = p_basic_nonsingular_witness(3).unwrap();
        passes(&w3, 100);
    }

    #[test]
    fn localizations() {
        let jp = localization_witness(LocalizationTarget::PAdicIntegers { p: 5, q: 2 }).unwrap();
        passes(&jp, 100);
        assert_eq!(jp.id, "localization-jp-5-q2");
        let r1 = localization_witness(LocalizationTarget::RankOne { p: 2, q: 2 }).unwrap();
        passes(&r1, 100);
        assert!(matches!(
            localization_witness(LocalizationTarget::RankOne { p: 2, q: 5 }),
            Err(WitnessError::NoWitness(_))
        ));
        assert!(localization_witness(LocalizationTarget::PAdicIntegers { p: 5, q: 5 }).is_err());
        let x = LocalizedRational(BigRational::new(BigInt::from(75), BigInt::from(8)));
        assert_eq!(rank_one_backward_depth(&x, 2, 5), Some(2));
        // 1/5 is not in Z[1/2]: the carrier check catches a wrong ring
        let bad = Multiplication {
            q: 5,
            ring: Subring::Inverted(2),
        };
        assert!(!bad.in_carrier(&LocalizedRational::inverse_power(5, 1)));
    }

    #[test]
    fn primitive_roots() {
        let roots: Vec<u64> = first_primes(10)
            .iter()
            .map(|&p| least_primitive_root(p))
            .collect();
        assert_eq!(roots, vec![1, 2, 2, 3, 2, 2, 3, 2, 5, 2]);
    }

    #[test]
    fn product_truncations() {
        assert_eq!(product_orbit_length(&[2, 3]), BigInt::from(2));
        let w = product_diag_witness(&[2, 3]).unwrap();
        assert_eq!(w.depth_cap, Some(1));
        passes(&w, 1);
        assert!(w.verify(2).is_err());
        let w = product_diag_witness(&[3, 5, 7]).unwrap();
        assert_eq!(w.depth_cap, Some(11));
        passes(&w, 11);
        let ten = first_primes(10);
        assert_eq!(product_orbit_length(&ten), BigInt::from(55440));
        let w = product_diag_witness(&ten).unwrap();
        passes(&w, 100);
        assert!(product_diag_witness(&[5]).is_err());
    }

    #[test]
    fn corner() {
        let w = corner_null_witness(2).unwrap();
        passes(&w, 20);
        passes(&w, 100);
        let primes = CornerPrimes::new(2, 10);
        assert_eq!(
            (primes.q(0), primes.q(-1), primes.q(1)),
            (Some(3), Some(5), Some(7))
        );
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let g = CornerElement::pair(-3, half.clone(), half.clone());
        assert!(corner_contains(&primes, &g));
        let image = corner_shift_image(2, &g);
        assert_eq!(image, CornerElement::a(-2, half));
        assert!(corner_contains(&primes, &image));
        let x0 = CornerElement::a(-1, BigRational::one());
        let d = CornerShift { primes };
        assert!(!x0.is_zero());
        assert!(d.apply(&d.apply(&x0)).is_zero());
        // b_k/p = (a_k + b_k)/p − a_k/p is a member
        assert!(corner_contains(
            &CornerPrimes::new(2, 5),
            &CornerElement::b(3, BigRational::new(BigInt::one(), BigInt::from(2)))
        ));
        let report = corner_membership_checks(2, 20, 300, 7);
        assert!(report.passed(), "{:?}", report);
    }
}
