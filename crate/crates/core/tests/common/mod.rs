//! Independent oracles. Nothing here calls the library's algorithms for the
//! quantity being checked; library types are used only as containers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use deltarig::deltamatroid::Mask;
use deltarig::factor::Factorization;
use deltarig::invariants::TutteProfile;
use deltarig::poly::Monomial;
use deltarig::{BiPoly, DeltaMatroid};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

type Family = BTreeSet<BTreeSet<usize>>;

fn family(d: &DeltaMatroid) -> Family {
    d.feasible()
        .iter()
        .map(|&f| (0..d.len()).filter(|i| f >> i & 1 == 1).collect())
        .collect()
}

/// Symmetric exchange checked literally on sets.
pub fn is_delta_matroid(sets: &Family) -> bool {
    if sets.is_empty() {
        return false;
    }
    for f1 in sets {
        for f2 in sets {
            let diff: BTreeSet<usize> = f1.symmetric_difference(f2).copied().collect();
            for &e in &diff {
                let ok = diff.iter().any(|&f| {
                    let swap: BTreeSet<usize> = [e, f].into_iter().collect();
                    sets.contains(&f1.symmetric_difference(&swap).copied().collect())
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of even delta-matroids on `n` labelled elements.
pub fn count_even_delta_matroids(n: usize) -> usize {
    let subsets: Vec<BTreeSet<usize>> =
        (0..1usize << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    let mut count = 0;
    for fam in 1usize..1 << subsets.len() {
        let sets: Family = (0..subsets.len()).filter(|s| fam >> s & 1 == 1).map(|s| subsets[s].clone()).collect();
        let parities: BTreeSet<usize> = sets.iter().map(|s| s.len() % 2).collect();
        if parities.len() == 1 && is_delta_matroid(&sets) {
            count += 1;
        }
    }
    count
}

fn delete(sets: &Family, e: usize) -> Family {
    let avoiding: Family = sets.iter().filter(|s| !s.contains(&e)).cloned().collect();
    if avoiding.is_empty() {
        sets.iter().map(|s| s.iter().copied().filter(|&x| x != e).collect()).collect()
    } else {
        avoiding
    }
}

/// Feasible sets of `D|A`, deleting the complement from the largest element down.
fn restriction(sets: &Family, n: usize, a: &BTreeSet<usize>) -> Family {
    let mut out = sets.clone();
    for e in (0..n).rev().filter(|e| !a.contains(e)) {
        out = delete(&out, e);
    }
    out
}

/// Doubled σ of every subset, by mask.
pub fn sigma2_all(d: &DeltaMatroid) -> Vec<i64> {
    let n = d.len();
    let sets = family(d);
    (0..1usize << n)
        .map(|m| {
            let a: BTreeSet<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
            let r = restriction(&sets, n, &a);
            let lo = r.iter().map(|s| s.len()).min().unwrap();
            let hi = r.iter().map(|s| s.len()).max().unwrap();
            (lo + hi) as i64
        })
        .collect()
}

fn binom(n: i64, k: i64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `T(D)` expanded densely from its subset definition; `None` off the integer lattice.
pub fn tutte(d: &DeltaMatroid) -> Option<BiPoly> {
    let n = d.len();
    let s2 = sigma2_all(d);
    let top = s2[(1usize << n) - 1];
    let mut dense = vec![vec![0i128; n + 1]; n + 1];
    for (m, &s) in s2.iter().enumerate() {
        let (a2, b2) = (top - s, 2 * (m.count_ones() as i64) - s);
        if a2 % 2 != 0 || b2 % 2 != 0 {
            return None;
        }
        let (a, b) = (a2 / 2, b2 / 2);
        for i in 0..=a {
            for j in 0..=b {
                let sign = if (a - i + b - j) % 2 == 0 { 1 } else { -1 };
                dense[i as usize][j as usize] += sign * binom(a, i) * binom(b, j);
            }
        }
    }
    Some(from_dense(&dense))
}

/// No proper non-empty `A` makes `F` the product of its projections to `A` and `E - A`.
pub fn connected(d: &DeltaMatroid) -> bool {
    let n = d.len();
    let sets: BTreeSet<Mask> = d.feasible().iter().copied().collect();
    let full: Mask = ((1u64 << n) - 1) as Mask;
    for a in 1..full {
        let left: BTreeSet<Mask> = sets.iter().map(|f| f & a).collect();
        let right: BTreeSet<Mask> = sets.iter().map(|f| f & !a).collect();
        if left.len() * right.len() == sets.len() && left.iter().all(|l| right.iter().all(|r| sets.contains(&(l | r)))) {
            return false;
        }
    }
    true
}

pub fn profile(d: &DeltaMatroid) -> TutteProfile {
    let sizes: Vec<u32> = d.feasible().iter().map(|f| f.count_ones()).collect();
    let lo = *sizes.iter().min().unwrap();
    let hi = *sizes.iter().max().unwrap();
    let mut counts = BTreeMap::new();
    for &s in &sizes {
        *counts.entry(s).or_insert(0u64) += 1;
    }
    let s2 = sigma2_all(d);
    TutteProfile {
        n_elements: d.len() as u32,
        sigma2: s2[s2.len() - 1] as u32,
        width: hi - lo,
        feasible_size_counts: counts,
        is_even: sizes.iter().all(|s| s % 2 == lo % 2),
        is_matroid: hi == lo,
    }
}

// ---------------------------------------------------------------------------
// dense bivariate polynomials over i128, index [i][j] for x^i y^j

pub type Dense = Vec<Vec<i128>>;

pub fn to_dense(p: &BiPoly) -> Dense {
    let mut d = vec![vec![0i128; p.deg_y() as usize + 1]; p.deg_x() as usize + 1];
    for (m, c) in p.terms() {
        d[m.x as usize][m.y as usize] = c.to_i128().expect("small coefficients");
    }
    d
}

pub fn from_dense(d: &Dense) -> BiPoly {
    BiPoly::from_terms(d.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(j, &c)| (Monomial::new(i as u32, j as u32), BigInt::from(c)))
    }))
}

fn lead_lex(d: &Dense) -> Option<(usize, usize)> {
    for i in (0..d.len()).rev() {
        for j in (0..d[i].len()).rev() {
            if d[i][j] != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// `f / g` in `Z[x, y]` by cancelling lexicographic leading terms.
pub fn div_exact(f: &Dense, g: &Dense) -> Option<Dense> {
    let (gi, gj) = lead_lex(g)?;
    let gc = g[gi][gj];
    let mut r = f.clone();
    let mut q = vec![vec![0i128; r.iter().map(|row| row.len()).max().unwrap_or(0)]; r.len()];
    while let Some((fi, fj)) = lead_lex(&r) {
        let c = r[fi][fj];
        if fi < gi || fj < gj || c % gc != 0 {
            return None;
        }
        let (di, dj, k) = (fi - gi, fj - gj, c / gc);
        q[di][dj] += k;
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    if r[i + di].len() <= j + dj {
                        return None;
                    }
                    r[i + di][j + dj] -= k * v;
                }
            }
        }
    }
    Some(q)
}

fn div_exact_uni(f: &[i128], g: &[i128]) -> bool {
    let gd = match g.iter().rposition(|&c| c != 0) {
        Some(d) => d,
        None => return false,
    };
    let mut r = f.to_vec();
    while let Some(fd) = r.iter().rposition(|&c| c != 0) {
        if fd < gd || r[fd] % g[gd] != 0 {
            return false;
        }
        let k = r[fd] / g[gd];
        for i in 0..=gd {
            r[fd - gd + i] -= k * g[i];
        }
    }
    true
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A divisor of `f` of total degree exactly `deg` with coefficients in
/// `[-bound, bound]`. Coefficients are chosen slot by slot: first those of
/// `g(x, 0)`, which must divide `f(x, 0)`, then those of `g(0, y)`, which must
/// divide `f(0, y)`, then the mixed ones. `f` must be divisible by neither
/// `x` nor `y`, so both restrictions are non-zero.
fn search_divisor(f: &Dense, deg: usize, bound: i128) -> Option<Dense> {
    let fx0: Vec<i128> = f.iter().map(|row| row[0]).collect();
    let f0y: Vec<i128> = f[0].clone();
    let mut slots: Vec<(usize, usize)> = (0..=deg).map(|i| (i, 0)).collect();
    let x_done = slots.len();
    slots.extend((1..=deg).map(|j| (0, j)));
    let y_done = slots.len();
    slots.extend((1..deg).flat_map(|i| (1..=deg - i).map(move |j| (i, j))));
    let mut g = vec![vec![0i128; deg + 1]; deg + 1];

    struct Ctx<'a> {
        f: &'a Dense,
        fx0: Vec<i128>,
        f0y: Vec<i128>,
        slots: Vec<(usize, usize)>,
        x_done: usize,
        y_done: usize,
        deg: usize,
        bound: i128,
    }

    fn rec(c: &Ctx, k: usize, g: &mut Dense) -> bool {
        if k == c.x_done {
            let gx: Vec<i128> = g.iter().map(|row| row[0]).collect();
            // g and -g are both divisors; keep the one whose first non-zero term of g(x, 0) is positive
            match gx.iter().find(|&&v| v != 0) {
                Some(&first) if first > 0 && div_exact_uni(&c.fx0, &gx) => {}
                _ => return false,
            }
        }
        if k == c.y_done && !div_exact_uni(&c.f0y, &g[0]) {
            return false;
        }
        if k == c.slots.len() {
            let total = (0..=c.deg)
                .flat_map(|i| (0..=c.deg - i).map(move |j| (i, j)))
                .filter(|&(i, j)| g[i][j] != 0)
                .map(|(i, j)| i + j)
                .max()
                .unwrap_or(0);
            return total == c.deg && div_exact(c.f, g).is_some();
        }
        let (i, j) = c.slots[k];
        for v in -c.bound..=c.bound {
            if (i, j) == (0, 0) && v != 0 && c.f[0][0] % v != 0 {
                continue;
            }
            g[i][j] = v;
            if rec(c, k + 1, g) {
                return true;
            }
        }
        g[i][j] = 0;
        false
    }

    let ctx = Ctx { f, fx0, f0y, slots, x_done, y_done, deg, bound };
    rec(&ctx, 0, &mut g).then_some(g)
}

/// Irreducible factors of `f` (with multiplicity, sign-normalized, sorted) by
/// exhaustive search over divisors with coefficients bounded by twice the
/// height of `f`. Intended for total degree at most 4.
pub fn brute_force_factors(f: &BiPoly) -> Vec<BiPoly> {
    let mut out = Vec::new();
    let mut cur = to_dense(f);
    // monomial factors first
    loop {
        if cur.len() > 1 && cur[0].iter().all(|&c| c == 0) {
            cur.remove(0);
            out.push(BiPoly::x());
        } else {
            break;
        }
    }
    loop {
        if cur.iter().all(|row| row.len() > 1 && row[0] == 0) {
            for row in cur.iter_mut() {
                row.remove(0);
            }
            out.push(BiPoly::y());
        } else {
            break;
        }
    }
    let content = cur.iter().flatten().fold(0i128, |g, &c| gcd(g, c));
    for row in cur.iter_mut() {
        for c in row.iter_mut() {
            *c /= content;
        }
    }
    let bound = 2 * cur.iter().flatten().map(|c| c.abs()).max().unwrap_or(1);
    'outer: loop {
        let p = from_dense(&cur);
        let deg = p.total_degree() as usize;
        if deg == 0 {
            break;
        }
        for d in 1..=deg / 2 {
            if let Some(g) = search_divisor(&to_dense(&p), d, bound) {
                out.push(from_dense(&g).normalize_sign());
                cur = div_exact(&to_dense(&p), &g).unwrap();
                continue 'outer;
            }
        }
        out.push(p.normalize_sign());
        break;
    }
    out.sort();
    out
}

/// Factors of a library factorization, expanded by multiplicity and sorted.
pub fn factor_multiset(f: &Factorization) -> Vec<BiPoly> {
    let mut out: Vec<BiPoly> =
        f.factors.iter().flat_map(|(p, m)| std::iter::repeat_n(p.normalize_sign(), *m as usize)).collect();
    out.sort();
    out
}

fn resultant_nonzero(a: &[i128], b: &[i128]) -> bool {
    // Sylvester matrix determinant by fraction-free elimination
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 || n == 0 {
        return true;
    }
    let size = m + n;
    let mut mat = vec![vec![0i128; size]; size];
    for r in 0..n {
        for (k, &c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c;
        }
    }
    for r in 0..m {
        for (k, &c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c;
        }
    }
    let mut prev = 1i128;
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| mat[r][k] != 0) else { return false };
        mat.swap(k, p);
        for i in k + 1..size {
            for j in k + 1..size {
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    prev != 0
}

/// `a(x) y + b(x)` (or the same with `x` and `y` exchanged) with `a`, `b`
/// coprime and jointly primitive: primitive of degree one in `y` with no
/// factor in `x` alone, hence irreducible. Total degree exactly `deg`.
pub fn random_irreducible(rng: &mut impl Rng, deg: u32) -> BiPoly {
    loop {
        let da = rng.gen_range(0..deg) as usize;
        let db = if da + 1 == deg as usize { rng.gen_range(0..=deg) as usize } else { deg as usize };
        let mut a: Vec<i128> = (0..=da).map(|_| rng.gen_range(-3..=3)).collect();
        let mut b: Vec<i128> = (0..=db).map(|_| rng.gen_range(-3..=3)).collect();
        if a[da] == 0 {
            a[da] = 1;
        }
        if b[db] == 0 && db == deg as usize {
            b[db] = -2;
        }
        while b.len() > 1 && *b.last().unwrap() == 0 {
            b.pop();
        }
        if b.iter().all(|&c| c == 0) && da > 0 {
            continue;
        }
        let content = a.iter().chain(&b).fold(0i128, |g, &c| gcd(g, c));
        if content != 1 || !resultant_nonzero(&a, &b) {
            continue;
        }
        if b.iter().all(|&c| c == 0) {
            // a is a unit here; a(x) y with constant a is just ±y
            continue;
        }
        let p = BiPoly::from_terms(
            a.iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::new(i as u32, 1), BigInt::from(c)))
                .chain(b.iter().enumerate().map(|(i, &c)| (Monomial::new(i as u32, 0), BigInt::from(c)))),
        );
        if p.total_degree() != deg {
            continue;
        }
        return if rng.gen_bool(0.5) { p.swap_vars() } else { p };
    }
}
