//! Polynomial invariants of delta-matroids and ribbon graphs.
//!
//! The subset expansion `T(D) = Σ_A (x-1)^(σ(E)-σ(A)) (y-1)^(|A|-σ(A))` is
//! evaluated by first histogramming the doubled exponent pairs over all `2^n`
//! subsets, then expanding each distinct pair once.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::deltamatroid::{popcount, size_range, DeltaMatroid, ElementKind, Mask};
use crate::exec::Execution;
use crate::poly::{display_as, specialize_uv, x_minus_one_pow, y_minus_one_pow, HalfMonomial, Monomial, TriMonomial};
use crate::ribbon::RibbonGraph;
use crate::{BiPoly, Error, LaurentPoly, Result, TriPoly};

/// Histogram of doubled exponent pairs `(2σ(E) - 2σ(A), 2|A| - 2σ(A))`.
pub type ExponentHistogram = BTreeMap<(u32, u32), u64>;

/// A Tutte-type polynomial. When some doubled exponent is odd the sum lives on
/// the half-integer lattice and is stored as a polynomial in
/// `s = √(x-1)`, `t = √(y-1)`, where monomial `x^i y^j` of the stored
/// [`BiPoly`] stands for `s^i t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuttePoly {
    Integral(BiPoly),
    HalfIntegral(BiPoly),
}

impl TuttePoly {
    pub fn from_histogram(hist: &ExponentHistogram) -> TuttePoly {
        if hist.keys().all(|&(a, b)| a % 2 == 0 && b % 2 == 0) {
            let mut xs: HashMap<u32, BiPoly> = HashMap::new();
            let mut ys: HashMap<u32, BiPoly> = HashMap::new();
            let mut out = BiPoly::zero();
            for (&(a, b), &count) in hist {
                let xp = xs.entry(a / 2).or_insert_with(|| x_minus_one_pow(a / 2)).clone();
                let yp = ys.entry(b / 2).or_insert_with(|| y_minus_one_pow(b / 2));
                out.add_scaled(&(&xp * &*yp), &BigInt::from(count));
            }
            TuttePoly::Integral(out)
        } else {
            TuttePoly::HalfIntegral(BiPoly::from_terms(
                hist.iter().map(|(&(a, b), &c)| (Monomial::new(a, b), BigInt::from(c))),
            ))
        }
    }

    /// The polynomial in `x, y`; half-integral forms are refused.
    pub fn integral(&self) -> Result<&BiPoly> {
        match self {
            TuttePoly::Integral(p) => Ok(p),
            TuttePoly::HalfIntegral(_) => Err(Error::NotEven),
        }
    }

    pub fn into_integral(self) -> Result<BiPoly> {
        match self {
            TuttePoly::Integral(p) => Ok(p),
            TuttePoly::HalfIntegral(_) => Err(Error::NotEven),
        }
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, TuttePoly::Integral(_))
    }

    /// `v^σ u^(-w/2) T(u/v + 1, uv + 1)` on the doubled-exponent lattice.
    pub fn specialize_uv(&self, sigma2: i64, w: i64) -> LaurentPoly {
        match self {
            TuttePoly::Integral(p) => specialize_uv(p, sigma2, w),
            // s^a t^b = (u/v)^(a/2) (uv)^(b/2)
            TuttePoly::HalfIntegral(p) => LaurentPoly::from_terms(p.terms().map(|(m, c)| {
                let (a, b) = (m.x as i64, m.y as i64);
                (HalfMonomial::new(a + b - w, b - a + sigma2), c.clone())
            })),
        }
    }
}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TuttePoly::Integral(p) => write!(f, "{p}"),
            TuttePoly::HalfIntegral(p) => {
                write!(f, "{} where s = (x - 1)^(1/2), t = (y - 1)^(1/2)", display_as(p, ["s", "t"]))
            }
        }
    }
}

fn merge_hist(mut a: ExponentHistogram, b: ExponentHistogram) -> ExponentHistogram {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn histogram<F>(n: usize, exec: Execution, exponents: F) -> ExponentHistogram
where
    F: Fn(Mask) -> (u32, u32) + Sync + Send,
{
    exec.fold_range(
        0..1u64 << n,
        ExponentHistogram::new,
        |mut h, a| {
            *h.entry(exponents(a as Mask)).or_insert(0) += 1;
            h
        },
        merge_hist,
    )
}

pub fn tutte_histogram(d: &DeltaMatroid, exec: Execution) -> ExponentHistogram {
    let top = d.sigma2(d.full());
    d.fold_restrictions(
        exec,
        ExponentHistogram::new,
        |mut h, a, sets| {
            let (lo, hi) = size_range(sets);
            *h.entry((top - lo - hi, 2 * popcount(a) - lo - hi)).or_insert(0) += 1;
            h
        },
        merge_hist,
    )
}

/// `T(D)` by summing over all subsets.
pub fn tutte_subset_sum(d: &DeltaMatroid) -> TuttePoly {
    tutte_subset_sum_with(d, Execution::default())
}

pub fn tutte_subset_sum_with(d: &DeltaMatroid, exec: Execution) -> TuttePoly {
    TuttePoly::from_histogram(&tutte_histogram(d, exec))
}

/// `T(D)` for even `D`, as a polynomial.
pub fn tutte(d: &DeltaMatroid) -> Result<BiPoly> {
    if !d.is_even() {
        return Err(Error::NotEven);
    }
    tutte_subset_sum(d).into_integral()
}

/// Which element the deletion–contraction recursion splits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PivotRule {
    /// First element that is neither a loop nor a coloop.
    First,
    Last,
    /// A candidate chosen by hashing the current feasible family with `seed`.
    Hashed(u64),
}

/// `T(D)` by deletion–contraction, memoized on the sorted feasible family.
pub fn tutte_delcon(d: &DeltaMatroid) -> Result<BiPoly> {
    tutte_delcon_with(d, PivotRule::First)
}

pub fn tutte_delcon_with(d: &DeltaMatroid, rule: PivotRule) -> Result<BiPoly> {
    if !d.is_even() {
        return Err(Error::NotEven);
    }
    let mut memo = HashMap::new();
    Ok(delcon(d, rule, &mut memo))
}

fn delcon(d: &DeltaMatroid, rule: PivotRule, memo: &mut HashMap<(usize, Vec<Mask>), BiPoly>) -> BiPoly {
    if d.is_empty() {
        return BiPoly::one();
    }
    let key = d.key();
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let loops = d.loops();
    let coloops = d.coloops();
    let candidates: Vec<usize> =
        (0..d.len()).filter(|e| !loops.contains(e) && !coloops.contains(e)).collect();
    let result = if candidates.is_empty() {
        BiPoly::monomial(1, coloops.len() as u32, loops.len() as u32)
    } else if !loops.is_empty() || !coloops.is_empty() {
        let peel = loops.iter().chain(&coloops).fold(0, |m, &e| m | 1 << e);
        // deleting a loop and contracting a coloop both leave the other sets intact
        let rest = d.minor(peel, 0);
        BiPoly::monomial(1, coloops.len() as u32, loops.len() as u32) * delcon(&rest, rule, memo)
    } else {
        let e = match rule {
            PivotRule::First => candidates[0],
            PivotRule::Last => *candidates.last().unwrap(),
            PivotRule::Hashed(seed) => {
                let mut h = std::collections::hash_map::DefaultHasher::new();
                (seed, &key).hash(&mut h);
                candidates[(h.finish() % candidates.len() as u64) as usize]
            }
        };
        let in_d = d.classify(e).kind;
        let in_dual = d.dual().classify(e).kind;
        let del = delcon(&d.delete(e), rule, memo);
        let con = delcon(&d.contract(e), rule, memo);
        let xm1 = BiPoly::x() - BiPoly::one();
        let ym1 = BiPoly::y() - BiPoly::one();
        match (in_d, in_dual) {
            (ElementKind::Ordinary, ElementKind::Ordinary) => del + con,
            (ElementKind::Ordinary, _) => xm1 * del + con,
            (_, ElementKind::Ordinary) => del + ym1 * con,
            _ => xm1 * del + ym1 * con,
        }
    };
    memo.insert(key, result.clone());
    result
}

/// `R(G)` from boundary counts of the spanning subgraphs.
pub fn ribbon_polynomial(g: &RibbonGraph) -> TuttePoly {
    ribbon_polynomial_with(g, Execution::default())
}

pub fn ribbon_polynomial_with(g: &RibbonGraph, exec: Execution) -> TuttePoly {
    let top = g.metrics(g.full()).sigma2;
    let hist = histogram(g.edge_count(), exec, |a| {
        let s = g.metrics(a).sigma2;
        (top - s, 2 * popcount(a) - s)
    });
    TuttePoly::from_histogram(&hist)
}

/// `BR(D; x, y, z) = Σ_A (x-1)^(r(E)-r(A)) y^(|A|-r(A)) z^(w(D|A))`, `r` the rank of `D_min`.
pub fn br_polynomial(d: &DeltaMatroid) -> TriPoly {
    br_polynomial_with(d, Execution::default())
}

pub fn br_polynomial_with(d: &DeltaMatroid, exec: Execution) -> TriPoly {
    let top = d.min_matroid_rank(d.full());
    let hist: BTreeMap<(u32, u32, u32), u64> = d.fold_restrictions(
        exec,
        BTreeMap::new,
        |mut h, a, sets| {
            let r = d.min_matroid_rank(a);
            let (lo, hi) = size_range(sets);
            *h.entry((top - r, popcount(a) - r, hi - lo)).or_insert(0) += 1;
            h
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let mut out = TriPoly::zero();
    for ((i, j, k), count) in hist {
        let part = TriPoly::from_bipoly(&x_minus_one_pow(i)).shift(TriMonomial::new(0, j, k));
        out.add_scaled(&part, &BigInt::from(count));
    }
    out
}

/// Compare `T(D)` with `(x-1)^(w/2) BR(D; x, y-1, ((x-1)(y-1))^(-1/2))` after
/// multiplying both sides by `((x-1)(y-1))^M`, `2M` the largest `z`-degree.
pub fn check_br_relation(d: &DeltaMatroid) -> Result<bool> {
    let br = br_polynomial(d);
    let w = d.width();
    if w % 2 == 1 || br.terms().any(|(m, _)| m.z % 2 == 1) {
        return Err(Error::OddWidth);
    }
    let t = tutte_subset_sum(d).into_integral()?;
    let big_m = br.terms().map(|(m, _)| m.z / 2).max().unwrap_or(0);
    let p = (BiPoly::x() - BiPoly::one()) * (BiPoly::y() - BiPoly::one());
    let mut p_pows = vec![BiPoly::one()];
    for _ in 0..big_m {
        let next = p_pows.last().unwrap() * &p;
        p_pows.push(next);
    }
    let half_w = x_minus_one_pow(w / 2);
    let mut lhs = BiPoly::zero();
    for (m, c) in br.terms() {
        let term = BiPoly::monomial(1, m.x, 0) * y_minus_one_pow(m.y) * &p_pows[(big_m - m.z / 2) as usize];
        lhs.add_scaled(&term, c);
    }
    Ok(lhs * half_w == t * &p_pows[big_m as usize])
}

/// `β` read from an integral histogram: the coefficient of `x` in
/// `(x-1)^a (y-1)^b` is `a (-1)^(a-1+b)`.
pub fn beta_from_histogram(hist: &ExponentHistogram) -> Option<BigInt> {
    let mut out = BigInt::zero();
    for (&(a2, b2), &count) in hist {
        if a2 % 2 == 1 || b2 % 2 == 1 {
            return None;
        }
        let (a, b) = (a2 / 2, b2 / 2);
        if a == 0 {
            continue;
        }
        let term = BigInt::from(count) * a;
        if (a - 1 + b) % 2 == 0 {
            out += term;
        } else {
            out -= term;
        }
    }
    Some(out)
}

/// `β(D)`: the coefficient of `x` in `T(D)`.
pub fn beta(d: &DeltaMatroid) -> Result<BigInt> {
    Ok(tutte_subset_sum(d).integral()?.coeff(1, 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrylawskiRow {
    pub k: u32,
    pub lhs: BigInt,
    pub expected: BigInt,
    pub pass: bool,
}

/// `Σ_{i≤k} Σ_{j≤k-i} (-1)^j C(k-i, j) b_ij` for `k = 0..=n`.
pub fn brylawski_sums(t: &BiPoly, n: u32) -> Vec<BigInt> {
    (0..=n)
        .map(|k| {
            let mut s = BigInt::zero();
            for i in 0..=k {
                for j in 0..=k - i {
                    let term = binomial(BigInt::from(k - i), BigInt::from(j)) * t.coeff(i, j);
                    if j % 2 == 0 {
                        s += term;
                    } else {
                        s -= term;
                    }
                }
            }
            s
        })
        .collect()
}

/// Brylawski's affine relations, one row per `k` in `0..=n`.
pub fn check_brylawski(d: &DeltaMatroid) -> Result<Vec<BrylawskiRow>> {
    let t = tutte(d)?;
    let n = d.len() as u32;
    let sigma = d.sigma2(d.full()) / 2;
    let sign = if (n - sigma).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Ok(brylawski_sums(&t, n)
        .into_iter()
        .enumerate()
        .map(|(k, lhs)| {
            let expected = if k as u32 == n { sign.clone() } else { BigInt::zero() };
            BrylawskiRow { k: k as u32, pass: lhs == expected, lhs, expected }
        })
        .collect())
}

/// `b_ij` vanishes outside `i ≤ σ(E)`, `j ≤ |E| - σ(E)`, and the extreme row
/// and column each sum to one.
pub fn check_top_coefficients(d: &DeltaMatroid) -> Result<bool> {
    let t = tutte(d)?;
    let n = d.len() as u32;
    let sigma = d.sigma2(d.full()) / 2;
    let vanish = t.terms().all(|(m, _)| m.x <= sigma && m.y <= n - sigma);
    let row: BigInt = (0..=n - sigma).map(|j| t.coeff(sigma, j)).sum();
    let col: BigInt = (0..=sigma).map(|i| t.coeff(i, n - sigma)).sum();
    Ok(vanish && row.is_one() && col.is_one())
}

/// `Σ_A v^|A| u^(|E| - ρ(A))` on the doubled-exponent lattice.
pub fn spanning_sum(d: &DeltaMatroid) -> LaurentPoly {
    let n = d.len() as u32;
    let hist = histogram(d.len(), Execution::default(), |a| (popcount(a), n - d.rho(a)));
    LaurentPoly::from_terms(
        hist.into_iter().map(|((s, u), c)| (HalfMonomial::new(2 * u as i64, 2 * s as i64), BigInt::from(c))),
    )
}

/// Parameters of `D` that `T(D)` determines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteProfile {
    pub n_elements: u32,
    pub sigma2: u32,
    pub width: u32,
    pub feasible_size_counts: BTreeMap<u32, u64>,
    pub is_even: bool,
    pub is_matroid: bool,
}

impl TutteProfile {
    /// The profile read directly off `D`.
    pub fn of(d: &DeltaMatroid) -> TutteProfile {
        let counts = d
            .size_profile()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(s, c)| (s as u32, c))
            .collect();
        TutteProfile {
            n_elements: d.len() as u32,
            sigma2: d.sigma2(d.full()),
            width: d.width(),
            feasible_size_counts: counts,
            is_even: d.is_even(),
            is_matroid: d.is_matroid(),
        }
    }
}

/// Recover the profile from `T` via `L = T(u/v + 1, uv + 1)`: the least `v`
/// degree is `-σ`, the greatest is `|E| - σ`, the least `u` degree is `w/2`,
/// and the terms of least `u` degree count feasible sets by size.
pub fn profile_from_polynomial(t: &BiPoly) -> Result<TutteProfile> {
    profile_from_specialization(&specialize_uv(t, 0, 0))
}

pub fn profile_from_tutte(t: &TuttePoly) -> Result<TutteProfile> {
    profile_from_specialization(&t.specialize_uv(0, 0))
}

fn profile_from_specialization(l: &LaurentPoly) -> Result<TutteProfile> {
    let bad = |why: &str| Error::NotTuttePolynomial(why.to_string());
    let (Some(min_v2), Some(max_v2), Some(min_u2)) = (l.min_v2(), l.max_v2(), l.min_u2()) else {
        return Err(bad("zero polynomial"));
    };
    let sigma2 = -min_v2;
    let n2 = max_v2 + sigma2;
    if sigma2 < 0 || min_u2 < 0 || n2 < 0 || n2 % 2 != 0 || n2 > 2 * crate::deltamatroid::MAX_ELEMENTS as i64 {
        return Err(bad("degree extremes out of range"));
    }
    let n = n2 / 2;
    // v^σ u^(-w/2) L must be a polynomial with positive coefficients summing to 2^n
    let mut total = BigInt::zero();
    for (m, c) in l.terms() {
        let (u2, v2) = (m.u2 - min_u2, m.v2 + sigma2);
        if !c.is_positive() || u2 % 2 != 0 || v2 % 2 != 0 || v2 > n2 {
            return Err(bad("specialization is not a subset generating function"));
        }
        total += c;
    }
    if total != BigInt::one() << n as usize {
        return Err(bad("subset count differs from 2^|E|"));
    }
    let mut counts = BTreeMap::new();
    for (m, c) in l.terms().filter(|(m, _)| m.u2 == min_u2) {
        let size = (m.v2 + sigma2) / 2;
        let c: u64 = c.try_into().map_err(|_| bad("feasible count overflow"))?;
        counts.insert(size as u32, c);
    }
    let lo = *counts.keys().next().unwrap();
    let hi = *counts.keys().next_back().unwrap();
    if (lo + hi) as i64 != sigma2 || (hi - lo) as i64 != min_u2 {
        return Err(bad("feasible sizes disagree with σ or width"));
    }
    let parity = lo % 2;
    Ok(TutteProfile {
        n_elements: n as u32,
        sigma2: sigma2 as u32,
        width: hi - lo,
        is_even: counts.keys().all(|s| s % 2 == parity),
        is_matroid: hi == lo,
        feasible_size_counts: counts,
    })
}

/// `β(D) = (-1)^(w/2)`, the series-parallel criterion for even `D` on at least two elements.
pub fn is_series_parallel(d: &DeltaMatroid) -> Result<bool> {
    if d.len() < 2 {
        return Err(Error::CriterionUndefined("fewer than two elements".into()));
    }
    if !d.is_even() {
        return Err(Error::CriterionUndefined("delta-matroid is not even".into()));
    }
    let b = beta(d)?;
    let expected = if (d.width() / 2).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Ok(b == expected)
}
