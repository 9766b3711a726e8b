//! Sparse polynomials with arbitrary-precision integer coefficients.
//!
//! One generic container, [`SparsePoly`], keyed by an exponent type. Three key
//! types are used in this crate:
//!
//! * [`Monomial`] gives [`BiPoly`], polynomials in `x, y` ordered graded
//!   lexicographically with `x > y`;
//! * [`HalfMonomial`] gives [`LaurentPoly`], Laurent polynomials in `u, v` whose
//!   exponents live on the half-integer lattice, stored doubled (a stored
//!   exponent of 2 is a true exponent of 1);
//! * [`TriMonomial`] gives [`TriPoly`], polynomials in `x, y, z`.
//!
//! No stored coefficient is ever zero, so structural equality is polynomial
//! equality.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use parse::parse_bipoly;

pub trait Exponents: Copy + Ord + Hash + fmt::Debug + Send + Sync {
    fn unit() -> Self;
    fn combine(self, other: Self) -> Self;
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SparsePoly<K: Exponents> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Exponents> Default for SparsePoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Exponents> SparsePoly<K> {
    pub fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::term(K::unit(), BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(K::unit(), c.into())
    }

    pub fn term(k: K, c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (K, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&K::unit()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&K, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, BigInt)> {
        self.terms.into_iter()
    }

    pub fn get(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Highest term in the exponent order.
    pub fn leading(&self) -> Option<(&K, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &BigInt) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(*k, c * scale);
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    /// Multiply by the monomial `k`.
    pub fn shift(&self, k: K) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(e, c)| (e.combine(k), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Exact division of every coefficient; `None` if some coefficient is not divisible.
    pub fn div_scalar(&self, d: &BigInt) -> Option<Self> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.insert(*k, q);
        }
        Some(SparsePoly { terms: out })
    }
}

macro_rules! impl_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<K: Exponents> $tr<SparsePoly<K>> for SparsePoly<K> {
            type Output = SparsePoly<K>;
            fn $m(self, rhs: SparsePoly<K>) -> SparsePoly<K> { (&self).$m(&rhs) }
        }
        impl<K: Exponents> $tr<&SparsePoly<K>> for SparsePoly<K> {
            type Output = SparsePoly<K>;
            fn $m(self, rhs: &SparsePoly<K>) -> SparsePoly<K> { (&self).$m(rhs) }
        }
        impl<K: Exponents> $tr<SparsePoly<K>> for &SparsePoly<K> {
            type Output = SparsePoly<K>;
            fn $m(self, rhs: SparsePoly<K>) -> SparsePoly<K> { self.$m(&rhs) }
        }
    )*};
}

impl<K: Exponents> Add<&SparsePoly<K>> for &SparsePoly<K> {
    type Output = SparsePoly<K>;
    fn add(self, rhs: &SparsePoly<K>) -> SparsePoly<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<K: Exponents> Sub<&SparsePoly<K>> for &SparsePoly<K> {
    type Output = SparsePoly<K>;
    fn sub(self, rhs: &SparsePoly<K>) -> SparsePoly<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<K: Exponents> Mul<&SparsePoly<K>> for &SparsePoly<K> {
    type Output = SparsePoly<K>;
    fn mul(self, rhs: &SparsePoly<K>) -> SparsePoly<K> {
        let mut out = SparsePoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.combine(*kb), ca * cb);
            }
        }
        out
    }
}

impl_ops!(Add add, Sub sub, Mul mul);

impl<K: Exponents> Neg for &SparsePoly<K> {
    type Output = SparsePoly<K>;
    fn neg(self) -> SparsePoly<K> {
        SparsePoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl<K: Exponents> Neg for SparsePoly<K> {
    type Output = SparsePoly<K>;
    fn neg(self) -> SparsePoly<K> {
        -&self
    }
}

// ---------------------------------------------------------------------------
// x, y

/// Exponent pair of `x^x * y^y`, ordered by total degree, then by the power of `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.x).cmp(&(other.degree(), other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Exponents for Monomial {
    fn unit() -> Self {
        Monomial::new(0, 0)
    }
    fn combine(self, o: Self) -> Self {
        Monomial::new(self.x + o.x, self.y + o.y)
    }
}

pub type BiPoly = SparsePoly<Monomial>;

impl SparsePoly<Monomial> {
    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        Self::term(Monomial::new(i, j), c.into())
    }

    /// Coefficient of `x^i y^j`, zero if absent.
    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.get(&Monomial::new(i, j))
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.x == 0 && m.y == 0)
    }

    pub fn eval(&self, x0: &BigInt, y0: &BigInt) -> BigInt {
        let mut xp: Vec<BigInt> = vec![BigInt::one()];
        let mut yp: Vec<BigInt> = vec![BigInt::one()];
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            while xp.len() <= m.x as usize {
                let next = xp.last().unwrap() * x0;
                xp.push(next);
            }
            while yp.len() <= m.y as usize {
                let next = yp.last().unwrap() * y0;
                yp.push(next);
            }
            acc += c * &xp[m.x as usize] * &yp[m.y as usize];
        }
        acc
    }

    pub fn eval_i64(&self, x0: i64, y0: i64) -> BigInt {
        self.eval(&BigInt::from(x0), &BigInt::from(y0))
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(m.y, m.x), c.clone())))
    }

    /// `p(x + dx, y + dy)`.
    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        let xs = &Self::x() + &Self::constant(dx);
        let ys = &Self::y() + &Self::constant(dy);
        self.substitute(&xs, &ys)
    }

    /// `p(a(x, y), b(x, y))`.
    pub fn substitute(&self, a: &BiPoly, b: &BiPoly) -> Self {
        let mut apow = vec![Self::one()];
        let mut bpow = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            while apow.len() <= m.x as usize {
                let next = apow.last().unwrap() * a;
                apow.push(next);
            }
            while bpow.len() <= m.y as usize {
                let next = bpow.last().unwrap() * b;
                bpow.push(next);
            }
            out.add_scaled(&(&apow[m.x as usize] * &bpow[m.y as usize]), c);
        }
        out
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c).expect("content divides every coefficient")
        }
    }

    /// Scale by -1 if needed so that the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d` when `d` divides `self` in `Z[x, y]`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quo = BiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(*rm) {
                return None;
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = Monomial::new(rm.x - dm.x, rm.y - dm.y);
            rem.add_scaled(&d.shift(qm), &-&q);
            quo.add_term(qm, q);
        }
        Some(quo)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_gcd(&self) -> Monomial {
        let x = self.terms.keys().map(|m| m.x).min().unwrap_or(0);
        let y = self.terms.keys().map(|m| m.y).min().unwrap_or(0);
        Monomial::new(x, y)
    }

    /// Divide by a monomial that divides every term.
    pub fn unshift(&self, m: Monomial) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    assert!(m.divides(*e), "monomial does not divide term");
                    (Monomial::new(e.x - m.x, e.y - m.y), c.clone())
                })
                .collect(),
        }
    }
}

impl std::str::FromStr for BiPoly {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        parse_bipoly(s)
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: &str, e2: i64, doubled: bool) -> fmt::Result {
    let (num, den) = if doubled { if e2 % 2 == 0 { (e2 / 2, 1) } else { (e2, 2) } } else { (e2, 1) };
    match (num, den) {
        (1, 1) => write!(f, "{var}"),
        (n, 1) if n >= 0 => write!(f, "{var}^{n}"),
        (n, 1) => write!(f, "{var}^({n})"),
        (n, d) => write!(f, "{var}^({n}/{d})"),
    }
}

/// Shared rendering: descending order, `c*x^i*y^j` monomials, ` + ` / ` - ` separators.
fn write_terms<K: Exponents>(
    f: &mut fmt::Formatter<'_>,
    p: &SparsePoly<K>,
    powers: impl Fn(&K) -> Vec<(&'static str, i64)>,
    doubled: bool,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (k, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        let vars: Vec<_> = powers(k).into_iter().filter(|(_, e)| *e != 0).collect();
        if vars.is_empty() {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        for (j, (v, e)) in vars.iter().enumerate() {
            if j > 0 {
                write!(f, "*")?;
            }
            write_power(f, v, *e, doubled)?;
        }
    }
    Ok(())
}

impl fmt::Display for SparsePoly<Monomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |m| vec![("x", m.x as i64), ("y", m.y as i64)], false)
    }
}

/// Render `p` with `names[0]`, `names[1]` in place of `x`, `y`.
pub fn display_as(p: &BiPoly, names: [&'static str; 2]) -> String {
    struct Named<'a>(&'a BiPoly, [&'static str; 2]);
    impl fmt::Display for Named<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_terms(f, self.0, |m| vec![(self.1[0], m.x as i64), (self.1[1], m.y as i64)], false)
        }
    }
    Named(p, names).to_string()
}

// ---------------------------------------------------------------------------
// u, v on the half-integer lattice

/// Doubled exponents of `u^(u2/2) * v^(v2/2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct HalfMonomial {
    pub u2: i64,
    pub v2: i64,
}

impl HalfMonomial {
    pub const fn new(u2: i64, v2: i64) -> Self {
        HalfMonomial { u2, v2 }
    }
}

impl Exponents for HalfMonomial {
    fn unit() -> Self {
        HalfMonomial::new(0, 0)
    }
    fn combine(self, o: Self) -> Self {
        HalfMonomial::new(self.u2 + o.u2, self.v2 + o.v2)
    }
}

pub type LaurentPoly = SparsePoly<HalfMonomial>;

impl SparsePoly<HalfMonomial> {
    /// Coefficient of `u^(u2/2) v^(v2/2)`.
    pub fn coeff2(&self, u2: i64, v2: i64) -> BigInt {
        self.get(&HalfMonomial::new(u2, v2))
    }

    pub fn min_u2(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.u2).min()
    }

    pub fn min_v2(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.v2).min()
    }

    pub fn max_v2(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.v2).max()
    }
}

impl fmt::Display for SparsePoly<HalfMonomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |m| vec![("u", m.u2), ("v", m.v2)], true)
    }
}

/// `v^σ u^(-w/2) p(u/v + 1, uv + 1)` expanded exactly, where `sigma2 = 2σ`.
pub fn specialize_uv(p: &BiPoly, sigma2: i64, w: i64) -> LaurentPoly {
    let xs = LaurentPoly::from_terms([
        (HalfMonomial::new(2, -2), BigInt::one()),
        (HalfMonomial::new(0, 0), BigInt::one()),
    ]);
    let ys = LaurentPoly::from_terms([
        (HalfMonomial::new(2, 2), BigInt::one()),
        (HalfMonomial::new(0, 0), BigInt::one()),
    ]);
    let mut xp = vec![LaurentPoly::one()];
    let mut yp = vec![LaurentPoly::one()];
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        while xp.len() <= m.x as usize {
            let next = xp.last().unwrap() * &xs;
            xp.push(next);
        }
        while yp.len() <= m.y as usize {
            let next = yp.last().unwrap() * &ys;
            yp.push(next);
        }
        out.add_scaled(&(&xp[m.x as usize] * &yp[m.y as usize]), c);
    }
    out.shift(HalfMonomial::new(-w, sigma2))
}

// ---------------------------------------------------------------------------
// x, y, z

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct TriMonomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl TriMonomial {
    pub const fn new(x: u32, y: u32, z: u32) -> Self {
        TriMonomial { x, y, z }
    }
}

impl Ord for TriMonomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.x + self.y + self.z, self.x, self.y).cmp(&(o.x + o.y + o.z, o.x, o.y))
    }
}

impl PartialOrd for TriMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Exponents for TriMonomial {
    fn unit() -> Self {
        TriMonomial::new(0, 0, 0)
    }
    fn combine(self, o: Self) -> Self {
        TriMonomial::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

pub type TriPoly = SparsePoly<TriMonomial>;

impl SparsePoly<TriMonomial> {
    pub fn coeff3(&self, i: u32, j: u32, k: u32) -> BigInt {
        self.get(&TriMonomial::new(i, j, k))
    }

    /// Embed a polynomial in `x, y` with `z` absent.
    pub fn from_bipoly(p: &BiPoly) -> Self {
        Self::from_terms(p.terms().map(|(m, c)| (TriMonomial::new(m.x, m.y, 0), c.clone())))
    }
}

impl fmt::Display for SparsePoly<TriMonomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |m| vec![("x", m.x as i64), ("y", m.y as i64), ("z", m.z as i64)], false)
    }
}

/// `(x - 1)^a` as a polynomial in `x, y`; `(y - 1)^b` via [`y_minus_one_pow`].
pub fn x_minus_one_pow(a: u32) -> BiPoly {
    (BiPoly::x() - BiPoly::one()).pow(a)
}

pub fn y_minus_one_pow(b: u32) -> BiPoly {
    (BiPoly::y() - BiPoly::one()).pow(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("x+y") + p("x-y"), p("2*x"));
        assert_eq!(p("x^2 - 3*y") + BiPoly::zero(), p("x^2 - 3*y"));
        let x1 = p("x-1");
        let y1 = p("y-1");
        let assembled = &x1 + &(&x1 * &y1).scale(&BigInt::from(3)) + y1.scale(&BigInt::from(3)) + y1.pow(2);
        assert_eq!(assembled, p("y^2+3*x*y-2*x-2*y"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x+y") * p("x+y"), p("x^2+2*x*y+y^2"));
        assert_eq!(p("3*x*y - 7") * BiPoly::one(), p("3*x*y - 7"));
        assert_eq!(p("x+y") * p("2*x*y-x-y"), p("2*x^2*y+2*x*y^2-x^2-2*x*y-y^2"));
    }

    #[test]
    fn eval_and_coeff_examples() {
        assert_eq!(p("x+y").eval_i64(1, 1), BigInt::from(2));
        assert_eq!(p("y^2+3*x*y-2*x-2*y").eval_i64(1, 1), BigInt::from(0));
        assert_eq!(p("x^2+2*x+2*y+y^2").eval_i64(1, 1), BigInt::from(6));
        assert_eq!(p("x+y").coeff(1, 0), BigInt::from(1));
        assert_eq!(p("y^2+3*x*y-2*x-2*y").coeff(1, 0), BigInt::from(-2));
        assert_eq!(p("2*x*y-x-y").coeff(1, 1), BigInt::from(2));
        assert_eq!(p("2*x*y-x-y").coeff(5, 5), BigInt::from(0));
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(specialize_uv(&BiPoly::one(), 0, 0), LaurentPoly::one());
        // x with sigma = 1: v (u/v + 1) = u + v
        let expect = LaurentPoly::from_terms([
            (HalfMonomial::new(2, 0), BigInt::one()),
            (HalfMonomial::new(0, 2), BigInt::one()),
        ]);
        assert_eq!(specialize_uv(&p("x"), 2, 0), expect);
        // x + y with sigma = 1: u + 2v + u v^2
        let expect = LaurentPoly::from_terms([
            (HalfMonomial::new(2, 0), BigInt::one()),
            (HalfMonomial::new(0, 2), BigInt::from(2)),
            (HalfMonomial::new(2, 4), BigInt::one()),
        ]);
        assert_eq!(specialize_uv(&p("x+y"), 2, 0), expect);
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(p("y^2+3*x*y-2*x-2*y").to_string(), "3*x*y + y^2 - 2*x - 2*y");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(p("-7").to_string(), "-7");
        let l = specialize_uv(&p("x"), 1, 1);
        assert_eq!(l.to_string(), "u^(1/2)*v^(-1/2) + u^(-1/2)*v^(1/2)");
    }

    #[test]
    fn exact_division() {
        let a = p("x+y");
        let b = p("2*x*y-x-y");
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(p("x^2+1").div_exact(&p("x+1")), None);
        assert_eq!(p("2*x+2").div_exact(&p("4")), None);
    }

    #[test]
    fn translate_and_swap() {
        assert_eq!(p("x*y").translate(-1, 1), p("x*y + x - y - 1"));
        assert_eq!(p("x^2*y + 3").swap_vars(), p("x*y^2 + 3"));
    }
}
