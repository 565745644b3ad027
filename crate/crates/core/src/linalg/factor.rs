//! Factorization in ℤ[t]: square-free decomposition, Berlekamp modulo a small
//! prime, Hensel lifting and exhaustive recombination of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{Field, Poly};
use super::poly::IntPolynomial;
use crate::error::LinalgError;

/// `content · ∏ factorᵢ^multiplicityᵢ`, each factor primitive, irreducible and
/// with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        self.factors.iter().fold(
            IntPolynomial::constant(self.content.clone()),
            |acc, (f, m)| acc.mul(&f.pow(*m)),
        )
    }
}

pub fn factor_over_z(p: &IntPolynomial) -> Result<Factorization, LinalgError> {
    if p.is_zero() {
        return Err(LinalgError::ZeroPolynomial);
    }
    let mut content = p.content();
    if p.leading().is_negative() {
        content = -content;
    }
    let prim = p.div_scalar_exact(&content);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&prim) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    Ok(Factorization { content, factors })
}

/// Square-free parts `(aᵢ, i)` with `f = ∏ aᵢ^i` for primitive `f` with positive leading coefficient.
fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut g = f.gcd(&f.derivative());
    let mut w = f.div_exact(&g).expect("gcd divides").primitive_part();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&g);
        let z = w.div_exact(&y).expect("gcd divides").primitive_part();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        g = g.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible factors of a primitive square-free polynomial with positive leading coefficient.
fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();
    // monic transform: lc^{n-1} f(t / lc)
    let mut scale = BigInt::one();
    let mut monic_coeffs = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        monic_coeffs[i] = f.coeff(i) * &scale;
        scale *= &lc;
    }
    // the loop above built lc^{n-i} · aᵢ; divide by lc to get lc^{n-1-i} · aᵢ
    let monic = IntPolynomial::new(monic_coeffs.iter().map(|c| c / &lc).collect::<Vec<_>>());
    debug_assert!(monic.leading().is_one());

    let mut best: Option<(Field, usize)> = None;
    let mut good = 0;
    for p in small_primes().take(200) {
        let field = Field::new(p);
        let fp = field.from_big(monic.coeffs());
        if fp.len() != n + 1 || !field.is_squarefree(&fp) {
            continue;
        }
        let count = field.factor_count(&fp);
        if best.as_ref().is_none_or(|b| count < b.1) {
            best = Some((field, count));
        }
        good += 1;
        if count == 1 || good == 5 {
            break;
        }
    }
    let (field, count) =
        best.expect("a square-free polynomial stays square-free modulo most primes");
    if count == 1 {
        return vec![f.clone()];
    }
    let modular = field.berlekamp(&field.from_big(monic.coeffs()));

    // coefficient bound for monic factors, doubled for the symmetric range
    let norm_sq: BigInt = monic.coeffs().iter().map(|c| c * c).sum();
    let bound = (norm_sq.sqrt() + BigInt::one()) * (BigInt::one() << (n + 1));
    let p_big = BigInt::from(field.p);
    let mut modulus = p_big.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &p_big;
        k += 1;
    }
    let lifted = hensel_lift(&monic, &modular, field, k);
    recombine(&monic, lifted, &modulus)
        .into_iter()
        .map(|g| undo_monic(&g, &lc))
        .collect()
}

fn undo_monic(g: &IntPolynomial, lc: &BigInt) -> IntPolynomial {
    let mut pw = BigInt::one();
    let mut coeffs = Vec::with_capacity(g.coeffs().len());
    for c in g.coeffs() {
        coeffs.push(c * &pw);
        pw *= lc;
    }
    IntPolynomial::new(coeffs).primitive_part()
}

fn to_big(a: &Poly) -> IntPolynomial {
    IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce_mod(a: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Lifts `f ≡ ∏ factors (mod p)` to a factorization modulo `p^k`.
fn hensel_lift(f: &IntPolynomial, factors: &[Poly], field: Field, k: u32) -> Vec<IntPolynomial> {
    if factors.len() == 1 {
        let m = BigInt::from(field.p).pow(k);
        return vec![reduce_mod(f, &m)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[Poly]| fs.iter().fold(vec![1u64], |acc, g| field.mul(&acc, g));
    let (g0, h0) = (prod(&factors[..mid]), prod(&factors[mid..]));
    let (one, _, t) = field.ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let p_big = BigInt::from(field.p);
    let mut g = to_big(&g0);
    let mut h = to_big(&h0);
    let mut q = p_big.clone();
    for _ in 1..k {
        let diff = f.sub(&g.mul(&h));
        let e = field.from_big(&diff.coeffs().iter().map(|c| c / &q).collect::<Vec<_>>());
        let a = field.rem(&field.mul(&e, &t), &g0);
        let b = field.div_rem(&field.sub(&e, &field.mul(&a, &h0)), &g0).0;
        g = g.add(&to_big(&a).scale(&q));
        h = h.add(&to_big(&b).scale(&q));
        q *= &p_big;
    }
    let mut out = hensel_lift(&g, &factors[..mid], field, k);
    out.extend(hensel_lift(&h, &factors[mid..], field, k));
    out
}

fn symmetric(a: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half: BigInt = m / 2;
    IntPolynomial::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Finds the true monic factors among products of lifted modular factors.
fn recombine(
    f: &IntPolynomial,
    mut lifted: Vec<IntPolynomial>,
    modulus: &BigInt,
) -> Vec<IntPolynomial> {
    let mut remaining = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let prod = subset.iter().fold(IntPolynomial::one(), |acc, &i| {
                reduce_mod(&acc.mul(&lifted[i]), modulus)
            });
            let candidate = symmetric(&prod, modulus);
            if let Some(q) = remaining.div_exact(&candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                remaining = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    found.push(remaining);
    found
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u64) -> IntPolynomial {
    assert!(m >= 1);
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[m as usize] = BigInt::one();
    let mut f = IntPolynomial::new(coeffs);
    for d in 1..m {
        if m.is_multiple_of(d) {
            f = f
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic factors divide t^m - 1");
        }
    }
    f
}

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Some(m)` if `f` (primitive, positive leading coefficient) equals `Φ_m`.
pub fn cyclotomic_index(f: &IntPolynomial) -> Option<u64> {
    let d = f.degree()? as u64;
    if d == 0 || !f.leading().is_one() || !f.constant_term().abs().is_one() {
        return None;
    }
    // φ(m) ≥ sqrt(m / 2), so φ(m) = d forces m ≤ 2d²
    (1..=2 * d * d + 2)
        .filter(|&m| euler_phi(m) == d)
        .find(|&m| &cyclotomic(m) == f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn check(f: &IntPolynomial) -> Factorization {
        let fac = factor_over_z(f).unwrap();
        assert_eq!(&fac.expand(), f);
        for (g, _) in &fac.factors {
            assert!(g.leading().is_positive());
            assert!(g.content().is_one());
            let deg = g.degree().unwrap();
            if (2..=3).contains(&deg) {
                // no rational root a/b with b | lc and a | constant term
                let lc = g.leading();
                let c0 = g.constant_term();
                for a in 1..=c0.abs().to_string().parse::<i64>().unwrap_or(0).min(200) {
                    for b in 1..=lc.to_string().parse::<i64>().unwrap_or(1).min(200) {
                        for sign in [-1, 1] {
                            // b·g(a/b)·b^{deg-1} scaled to integers
                            let val: BigInt = g
                                .coeffs()
                                .iter()
                                .enumerate()
                                .map(|(i, c)| {
                                    c * BigInt::from(sign * a).pow(i as u32)
                                        * BigInt::from(b).pow((deg - i) as u32)
                                })
                                .sum();
                            assert!(!val.is_zero(), "{} has root {}/{}", g, sign * a, b);
                        }
                    }
                }
            }
        }
        fac
    }

    #[test]
    fn small_examples() {
        let fac = check(&p(&[2, -3, 1]));
        assert_eq!(fac.factors, vec![(p(&[-2, 1]), 1), (p(&[-1, 1]), 1)]);
        let fac = check(&p(&[1, 0, 1]));
        assert_eq!(fac.factors, vec![(p(&[1, 0, 1]), 1)]);
        let fac = check(&p(&[-1, 3, -3, 1]));
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 3)]);
        assert!(factor_over_z(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn content_and_non_monic() {
        let f = p(&[-3, 1])
            .mul(&p(&[1, 2]))
            .mul(&p(&[1, 0, 3]))
            .scale(&BigInt::from(-6));
        let fac = check(&f);
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // t^4 - 10t^2 + 1 is irreducible but splits modulo every prime
        let fac = check(&p(&[1, 0, -10, 0, 1]));
        assert_eq!(fac.factors.len(), 1);
        // t^8 - 1 = Φ1 Φ2 Φ4 Φ8
        let fac = check(&p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(fac.factors.len(), 4);
        let f = p(&[-1, -1, 0, 1]).pow(2).mul(&p(&[1, 1, 1]));
        let fac = check(&f);
        assert_eq!(
            fac.factors,
            vec![(p(&[1, 1, 1]), 1), (p(&[-1, -1, 0, 1]), 2)]
        );
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        for m in 1..=30 {
            assert_eq!(cyclotomic_index(&cyclotomic(m)), Some(m));
        }
        assert_eq!(cyclotomic_index(&p(&[-1, -1, 1])), None);
    }

    proptest::proptest! {
        #[test]
        fn products_round_trip(
            a in proptest::collection::vec(-5i64..=5, 1..4),
            b in proptest::collection::vec(-5i64..=5, 1..4),
            c in proptest::collection::vec(-3i64..=3, 1..3),
        ) {
            let f = p(&a).mul(&p(&b)).mul(&p(&c));
            proptest::prop_assume!(!f.is_zero());
            check(&f);
        }
    }
}
