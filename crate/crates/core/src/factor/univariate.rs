//! Factorization in `Z[t]`: square-free reduction, factorization modulo a small
//! prime, multifactor Hensel lifting and Zassenhaus subset recombination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, FpPoly};
use crate::{Error, Result};

/// Dense integer polynomial, coefficients low to high, no trailing zeros.
pub type IntPoly = Vec<BigInt>;

/// How many admissible primes are factored before the one with the fewest
/// modular factors is kept.
const PRIME_CANDIDATES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFactorization {
    /// Signed integer content.
    pub content: BigInt,
    /// Primitive irreducible factors with positive leading coefficient.
    pub factors: Vec<(IntPoly, u32)>,
}

impl UnivariateFactorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc: IntPoly = vec![self.content.clone()];
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = mul(&acc, f);
            }
        }
        trim(acc)
    }
}

pub fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub fn degree(a: &[BigInt]) -> usize {
    a.len().saturating_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> IntPoly {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn derivative(a: &[BigInt]) -> IntPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// Exact quotient in `Z[t]`, `None` unless `b` divides `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let db = degree(b);
    let lc = b.last()?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rr) = r[i].div_rem(lc);
        if !rr.is_zero() {
            return None;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = degree(b);
    let lc = b.last().expect("non-zero divisor").clone();
    let mut r = a.to_vec();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= &lc;
        }
        for j in 0..=db {
            r[dr - db + j] -= &c * &b[j];
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd with positive leading coefficient (primitive remainder sequence).
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(&prem(&x, &y));
        x = y;
        y = r;
    }
    x
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Coefficients in the symmetric range `(-m/2, m/2]`.
fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    trim(
        a.iter()
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

fn mod_poly(a: &[BigInt], m: &BigInt) -> IntPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn from_fp(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `target ≡ g0 * h0 (mod p)` (all monic) to a factorization modulo `m = p^k`.
fn hensel_pair(target: &[BigInt], g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (_, s, t) = modp::xgcd(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut q = pb.clone();
    for _ in 1..k {
        let diff = sub(target, &mul(&g, &h));
        let e: IntPoly = diff.iter().map(|c| c / &q).collect();
        let e = modp::reduce(&e, p);
        let te = modp::mul(&t, &e, p);
        let (quo, r) = modp::divrem(&te, g0, p);
        let dh = modp::add(&modp::mul(&s, &e, p), &modp::mul(&quo, h0, p), p);
        let next = &q * &pb;
        g = mod_poly(&add_scaled(&g, &from_fp(&r), &q), &next);
        h = mod_poly(&add_scaled(&h, &from_fp(&dh), &q), &next);
        q = next;
    }
    (g, h)
}

fn add_scaled(a: &[BigInt], b: &[BigInt], s: &BigInt) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z) * s).collect())
}

fn product_fp(fs: &[FpPoly], p: u64) -> FpPoly {
    fs.iter().fold(vec![1], |acc, f| modp::mul(&acc, f, p))
}

/// Lift every modular factor of monic `target` to modulus `p^k`.
fn hensel_multi(target: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let (g, h) = hensel_pair(target, &product_fp(left, p), &product_fp(right, p), p, k);
    let mut out = hensel_multi(&g, left, p, k);
    out.extend(hensel_multi(&h, right, p, k));
    out
}

/// `2^n * ceil(||f||_2)`: bounds every coefficient of every factor of `f`.
fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + BigInt::one();
    root << degree(f)
}

struct PrimeChoice {
    p: u64,
    factors: Vec<FpPoly>,
}

fn choose_prime(f: &[BigInt]) -> PrimeChoice {
    let lc = f.last().expect("non-zero");
    let mut best: Option<PrimeChoice> = None;
    let mut seen = 0;
    for p in small_primes() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::reduce(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let factors = modp::factor_squarefree(&modp::monic(&fp, p), p, &mut rng);
        if best.as_ref().is_none_or(|b| factors.len() < b.factors.len()) {
            best = Some(PrimeChoice { p, factors });
        }
        seen += 1;
        if seen == PRIME_CANDIDATES || best.as_ref().is_some_and(|b| b.factors.len() == 1) {
            break;
        }
    }
    best.expect("a square-free integer polynomial has admissible primes")
}

/// Irreducible factors of a primitive, square-free polynomial of positive degree
/// with positive leading coefficient.
fn zassenhaus(f: &[BigInt]) -> Vec<IntPoly> {
    if degree(f) <= 1 {
        return vec![f.to_vec()];
    }
    let PrimeChoice { p, factors } = choose_prime(f);
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let bound = (mignotte_bound(f) * &lc) << 1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lc_inv = lc.modinv(&modulus).expect("lc is a unit modulo p^k");
    let target = mod_poly(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus);
    let mut lifted = hensel_multi(&target, &factors, p, k);

    let mut rest = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let n = lifted.len();
        let rest_lc = rest.last().unwrap().clone();
        let rest_const = &rest[0] * &rest_lc;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            // cheap filter on constant terms before the full product
            let c0 = idx.iter().fold(rest_lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(&modulus));
            let c0 = symmetric(&[c0], &modulus).first().cloned().unwrap_or_else(BigInt::zero);
            let plausible = if c0.is_zero() { rest_const.is_zero() } else { (&rest_const % &c0).is_zero() };
            if plausible {
                let mut cand: IntPoly = vec![rest_lc.clone()];
                for &i in &idx {
                    cand = mod_poly(&mul(&cand, &lifted[i]), &modulus);
                }
                let cand = primitive(&symmetric(&cand, &modulus));
                if let Some(q) = div_exact(&rest, &cand) {
                    found.push(cand);
                    rest = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination of `size` indices out of `n`
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] != i + n - size {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if degree(&rest) > 0 {
        found.push(primitive(&rest));
    }
    found
}

/// Full factorization over the integers.
pub fn factor_univariate(coeffs: &[BigInt]) -> Result<UnivariateFactorization> {
    let f = trim(coeffs.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroInput);
    }
    let mut c = content(&f);
    if f.last().unwrap().sign() == Sign::Minus {
        c = -c;
    }
    let mut f: IntPoly = f.iter().map(|x| x / &c).collect();
    let mut factors = Vec::new();
    let vx = f.iter().take_while(|x| x.is_zero()).count();
    if vx > 0 {
        factors.push((vec![BigInt::zero(), BigInt::one()], vx as u32));
        f.drain(..vx);
    }
    if degree(&f) > 0 {
        let g = gcd(&f, &derivative(&f));
        let sqf = primitive(&div_exact(&f, &g).expect("gcd divides"));
        for q in zassenhaus(&sqf) {
            let mut m = 0;
            while let Some(next) = div_exact(&f, &q) {
                f = next;
                m += 1;
            }
            debug_assert!(m > 0);
            factors.push((q, m));
        }
    }
    debug_assert!(f.len() == 1 && f[0].is_one());
    factors.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(UnivariateFactorization { content: c, factors })
}

/// Convenience for small coefficient lists.
pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}
