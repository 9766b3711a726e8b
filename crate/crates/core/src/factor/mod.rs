//! Irreducible factorization of bivariate integer polynomials.
//!
//! After removing the integer content and the largest monomial factor, the
//! polynomial is mapped to one variable by the Kronecker substitution
//! `y -> t^K`, `x -> t` with `K = deg_x + 1`. Any factor of the input has
//! `x`-degree below `K`, so its image has exactly the same coefficients and its
//! exponents decode uniquely as base-`K` digits. The univariate image is
//! factored completely; sub-multisets of its irreducible factors are decoded
//! and trial-divided against the input in order of increasing size, so the
//! first divisor found for a given quotient is irreducible.
//!
//! Irreducibility is decided over `Z[x, y]`. For Tutte polynomials of even
//! delta-matroids this coincides with irreducibility over `C[x, y]`; no complex
//! factorization is attempted.

mod modp;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{BiPoly, Monomial};
use crate::{Error, Result};

pub use univariate::{factor_univariate, IntPoly, UnivariateFactorization};

/// `content * prod(factor^multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    /// Primitive, irreducible, pairwise non-associate factors whose graded-lex
    /// leading coefficient is positive, sorted by degree then term order.
    pub factors: Vec<(BiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> BiPoly {
        let mut acc = BiPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = acc * f.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.content.abs().is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.content.is_one() || self.factors.is_empty() {
            parts.push(self.content.to_string());
        }
        for (p, m) in &self.factors {
            let base = if p.len() == 1 { p.to_string() } else { format!("({p})") };
            parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
        }
        write!(f, "{}", parts.join(" * "))
    }
}

fn kronecker_image(p: &BiPoly, k: u32) -> IntPoly {
    let deg = (p.deg_x() + k * p.deg_y()) as usize;
    let mut out = vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[(m.x + k * m.y) as usize] += c;
    }
    univariate::trim(out)
}

fn kronecker_decode(u: &[BigInt], k: u32) -> BiPoly {
    BiPoly::from_terms(
        u.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial::new(e as u32 % k, e as u32 / k), c.clone())),
    )
}

/// Visit every count vector `c` with `0 <= c[i] <= avail[i]` and `sum c = total`.
fn for_each_submultiset(avail: &[u32], total: u32, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    fn rec(avail: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if i == avail.len() {
            return left == 0 && visit(cur);
        }
        let rest: u32 = avail[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for c in lo..=avail[i].min(left) {
            cur.push(c);
            let stop = rec(avail, i + 1, left - c, cur, visit);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(avail, 0, total, &mut Vec::with_capacity(avail.len()), visit)
}

/// Irreducible factors (with multiplicity) of a primitive polynomial with no
/// monomial factor and `deg_x <= deg_y`.
fn factor_kronecker(q: &BiPoly) -> (Vec<(BiPoly, u32)>, BigInt) {
    let k = q.deg_x() + 1;
    let image = kronecker_image(q, k);
    let uni = factor_univariate(&image).expect("non-zero image");
    let mut pieces: Vec<IntPoly> = Vec::new();
    let mut avail: Vec<u32> = Vec::new();
    for (f, m) in uni.factors {
        pieces.push(f);
        avail.push(m);
    }

    let mut rest = q.clone();
    let mut out: BTreeMap<BiPoly, u32> = BTreeMap::new();
    let mut size = 1u32;
    while 2 * size <= avail.iter().sum::<u32>() {
        let (dx, dy) = (rest.deg_x(), rest.deg_y());
        let mut hit: Option<(Vec<u32>, BiPoly, BiPoly)> = None;
        for_each_submultiset(&avail, size, &mut |counts| {
            let mut prod: IntPoly = vec![BigInt::one()];
            for (piece, &c) in pieces.iter().zip(counts) {
                for _ in 0..c {
                    prod = univariate::mul(&prod, piece);
                }
            }
            let cand = kronecker_decode(&prod, k);
            if cand.deg_x() > dx || cand.deg_y() > dy || cand.is_constant() {
                return false;
            }
            let cand = cand.normalize_sign();
            match rest.div_exact(&cand) {
                Some(quo) => {
                    hit = Some((counts.to_vec(), cand, quo));
                    true
                }
                None => false,
            }
        });
        match hit {
            Some((counts, f, quo)) => {
                for (a, c) in avail.iter_mut().zip(&counts) {
                    *a -= c;
                }
                *out.entry(f).or_insert(0) += 1;
                rest = quo;
            }
            None => size += 1,
        }
    }
    let mut unit = BigInt::one();
    if rest.is_constant() {
        unit = rest.coeff(0, 0);
    } else {
        let n = rest.normalize_sign();
        if n != rest {
            unit = -unit;
        }
        *out.entry(n).or_insert(0) += 1;
    }
    (out.into_iter().collect(), unit)
}

/// Complete factorization over `Z[x, y]`.
pub fn factor_bivariate(p: &BiPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut content = p.content();
    if p.leading().is_some_and(|(_, c)| c.is_negative()) {
        content = -content;
    }
    let q = p.div_scalar(&content).expect("content divides");
    let mono = q.monomial_gcd();
    let q = q.unshift(mono);
    let mut factors: BTreeMap<BiPoly, u32> = BTreeMap::new();
    if mono.x > 0 {
        factors.insert(BiPoly::x(), mono.x);
    }
    if mono.y > 0 {
        factors.insert(BiPoly::y(), mono.y);
    }
    if !q.is_constant() {
        let swapped = q.deg_y() < q.deg_x();
        let work = if swapped { q.swap_vars() } else { q.clone() };
        let (fs, unit) = factor_kronecker(&work);
        content *= unit;
        for (f, m) in fs {
            let f = if swapped {
                let back = f.swap_vars();
                let normal = back.normalize_sign();
                if normal != back && m % 2 == 1 {
                    content = -content;
                }
                normal
            } else {
                f
            };
            *factors.entry(f).or_insert(0) += m;
        }
    } else {
        content *= q.coeff(0, 0);
    }
    let mut factors: Vec<(BiPoly, u32)> = factors.into_iter().collect();
    factors.sort_by(|(a, _), (b, _)| {
        (a.total_degree(), a.leading().map(|(m, _)| *m), a.to_string()).cmp(&(
            b.total_degree(),
            b.leading().map(|(m, _)| *m),
            b.to_string(),
        ))
    });
    let out = Factorization { content, factors };
    debug_assert_eq!(&out.expand(), p);
    Ok(out)
}

/// True iff `p` has exactly one irreducible factor, of multiplicity one, and unit content.
pub fn is_irreducible(p: &BiPoly) -> Result<bool> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(factor_bivariate(p)?.is_irreducible())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn sign_survives_variable_swap() {
        let f = p("6*x^2 - 4*x*y - 5*x + 6*y - 6");
        assert_eq!(factor_bivariate(&f).unwrap().expand(), f);
        let g = p("(x - 2*y + 1) * (3*x - y^2)");
        let fac = factor_bivariate(&g).unwrap();
        assert_eq!(fac.expand(), g);
        assert_eq!(fac.factor_count(), 2);
    }

    #[test]
    fn perfect_square() {
        let f = factor_bivariate(&p("x^2+2*x*y+y^2")).unwrap();
        assert_eq!(f.factors, vec![(p("x+y"), 2)]);
        assert_eq!(f.to_string(), "(x + y)^2");
        assert!(!is_irreducible(&p("x^2+2*x*y+y^2")).unwrap());
    }

    #[test]
    fn tutte_of_np_is_irreducible() {
        let f = factor_bivariate(&p("y^2+3*x*y-2*x-2*y")).unwrap();
        assert!(f.is_irreducible());
        assert!(is_irreducible(&p("x+y")).unwrap());
        assert!(is_irreducible(&p("x^2+2*x+2*y+y^2")).unwrap());
    }

    #[test]
    fn product_of_two_connected_polynomials() {
        let f = factor_bivariate(&(p("x+y") * p("2*x*y-x-y"))).unwrap();
        assert_eq!(f.content, BigInt::one());
        assert_eq!(f.factors, vec![(p("x+y"), 1), (p("2*x*y-x-y"), 1)]);
    }

    #[test]
    fn content_monomials_and_sign() {
        let input = p("-6*x^2*y*(x+1)*(y^2-x)");
        let f = factor_bivariate(&input).unwrap();
        assert_eq!(f.expand(), input);
        assert_eq!(f.content.abs(), BigInt::from(6));
        assert_eq!(f.factor_count(), 5);
        for (g, _) in &f.factors {
            assert!(g.leading().unwrap().1.is_positive());
            assert!(g.content().is_one());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(factor_bivariate(&BiPoly::zero()), Err(Error::ZeroInput));
        assert_eq!(is_irreducible(&p("7")), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn display_reparses() {
        let input = p("3*(x+y)^2*(x*y-1)*x");
        let f = factor_bivariate(&input).unwrap();
        assert_eq!(f.to_string().parse::<BiPoly>().unwrap(), input);
    }
}
