//! Instance generators and the verification harness.
//!
//! Exhaustive generators cover every even delta-matroid on at most four
//! elements and every rotation system on a handful of edges. Samplers are
//! driven by fixed seeds that are recorded in each [`VerificationReport`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::deltamatroid::{bits, popcount, DeltaMatroid, ElementKind, Mask, MinorIndex, MinorWitness};
use crate::exec::Execution;
use crate::invariants::{
    beta_from_histogram, check_br_relation, check_brylawski, check_top_coefficients, is_series_parallel,
    profile_from_polynomial, ribbon_polynomial, spanning_sum, tutte_delcon_with, tutte_histogram,
    tutte_subset_sum, PivotRule, TuttePoly, TutteProfile,
};
use crate::ribbon::{EdgeJson, RibbonGraph, RibbonJson};
use crate::{factor, BiPoly, Error, Result};

pub const MAX_EXHAUSTIVE_ELEMENTS: usize = 4;
pub const MAX_ENUMERATED_EDGES: usize = 5;

pub const SEED_TWISTS: u64 = 0x7457_0001;
pub const SEED_SUMS: u64 = 0x7457_0002;
pub const SEED_RANDOM: u64 = 0x7457_0003;
pub const SEED_PIVOT: u64 = 0x7457_0004;

/// Small named delta-matroids, built from their definitions.
pub mod named {
    use super::*;

    /// `({1,2,3}, {∅, {1,2}, {1,3}, {2,3}})`.
    pub fn np() -> DeltaMatroid {
        DeltaMatroid::with_numbered_ground(3, (0..8u32).filter(|m| m.count_ones() % 2 == 0).collect())
            .expect("valid")
    }

    pub fn uniform(r: u32, n: usize) -> DeltaMatroid {
        DeltaMatroid::with_numbered_ground(n, (0..1u32 << n).filter(|m| m.count_ones() == r).collect())
            .expect("uniform matroids are delta-matroids")
    }

    /// Cycle matroid of a graph: bases are the maximal spanning forests.
    pub fn cycle_matroid(vertices: usize, edges: &[(usize, usize)]) -> DeltaMatroid {
        let acyclic = |m: Mask| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            for i in bits(m) {
                let (a, b) = (find(&mut parent, edges[i].0), find(&mut parent, edges[i].1));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
            true
        };
        let all = (1u64 << edges.len()) as Mask - 1;
        let forests: Vec<Mask> = (0..=all).filter(|&m| acyclic(m)).collect();
        let rank = forests.iter().map(|&m| popcount(m)).max().unwrap_or(0);
        DeltaMatroid::with_numbered_ground(edges.len(), forests.into_iter().filter(|&m| popcount(m) == rank).collect())
            .expect("cycle matroids are delta-matroids")
    }

    pub fn complete_graph_edges(k: usize) -> Vec<(usize, usize)> {
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
    }

    /// `M(K_4)`.
    pub fn mk4() -> DeltaMatroid {
        cycle_matroid(4, &complete_graph_edges(4))
    }

    /// The three targets of the series-parallel excluded-minor scan.
    pub fn excluded_minors() -> Vec<DeltaMatroid> {
        vec![np(), uniform(2, 4), mk4()]
    }

    /// Names of [`excluded_minors`], index for index.
    pub const EXCLUDED_MINOR_NAMES: [&str; 3] = ["NP", "U_{2,4}", "M(K_4)"];
}

fn excluded_index() -> &'static MinorIndex {
    static INDEX: OnceLock<MinorIndex> = OnceLock::new();
    INDEX.get_or_init(|| MinorIndex::new(&named::excluded_minors(), true))
}

/// A minor that is a twist of `NP`, `U_{2,4}` or `M(K_4)`, if one exists.
pub fn excluded_minor_witness(d: &DeltaMatroid) -> Option<MinorWitness> {
    d.find_minor(excluded_index(), Execution::default())
}

pub fn excluded_minor_scan(d: &DeltaMatroid) -> bool {
    excluded_minor_witness(d).is_some()
}

/// Every even delta-matroid on ground set `{1..n}`, each exactly once.
pub fn enumerate_even_delta_matroids(n: usize) -> Result<Vec<DeltaMatroid>> {
    enumerate_even_delta_matroids_with(n, Execution::default())
}

pub fn enumerate_even_delta_matroids_with(n: usize, exec: Execution) -> Result<Vec<DeltaMatroid>> {
    if n > MAX_EXHAUSTIVE_ELEMENTS {
        return Err(Error::BoundExceeded);
    }
    let subsets = 1u64 << n;
    let found = exec.map_range(1..1u64 << subsets, |family| {
        let sets: Vec<Mask> = (0..subsets).filter(|&s| family >> s & 1 == 1).map(|s| s as Mask).collect();
        let parity = popcount(sets[0]) & 1;
        if sets.iter().any(|&s| popcount(s) & 1 != parity) {
            return None;
        }
        DeltaMatroid::with_numbered_ground(n, sets).ok()
    });
    Ok(found.into_iter().flatten().collect())
}

/// Rotation systems on `m` edges: dart `2i` and `2i + 1` form edge `i`, and a
/// permutation of the darts gives the rotations (its cycles are the vertices).
/// Maps are kept up to isomorphism of rotation systems; with
/// `orientable_only = false` every sign vector is tried as well.
pub fn enumerate_ribbon_graphs(max_edges: usize, orientable_only: bool) -> Result<Vec<RibbonGraph>> {
    if max_edges > MAX_ENUMERATED_EDGES {
        return Err(Error::BoundExceeded);
    }
    let mut out = vec![crate::ribbon::bare_vertex()];
    for m in 1..=max_edges {
        let mut seen = HashSet::new();
        let mut perm: Vec<usize> = (0..2 * m).collect();
        loop {
            let signs_range = if orientable_only { 0..1 } else { 0..1u32 << m };
            for twist in signs_range {
                let code = map_code(&perm, twist);
                if seen.insert(code) {
                    out.push(map_from_permutation(&perm, twist));
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Isomorphism code: per connected component, the least breadth-first
/// labelling over all start darts; components sorted.
fn map_code(sigma: &[usize], twist: u32) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut comp = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = comps.len();
        let mut i = 0;
        while i < members.len() {
            let d = members[i];
            for nb in [sigma[d], d ^ 1] {
                if comp[nb] == usize::MAX {
                    comp[nb] = comps.len();
                    members.push(nb);
                }
            }
            i += 1;
        }
        comps.push(members);
    }
    let mut codes: Vec<Vec<usize>> = comps
        .iter()
        .map(|members| {
            members
                .iter()
                .map(|&start| {
                    let mut label = HashMap::new();
                    let mut order = vec![start];
                    label.insert(start, 0);
                    let mut code = Vec::with_capacity(3 * members.len());
                    let mut i = 0;
                    while i < order.len() {
                        let d = order[i];
                        for nb in [sigma[d], d ^ 1] {
                            if let std::collections::hash_map::Entry::Vacant(e) = label.entry(nb) {
                                e.insert(order.len());
                                order.push(nb);
                            }
                        }
                        code.extend([label[&sigma[d]], label[&(d ^ 1)], (twist >> (d / 2) & 1) as usize]);
                        i += 1;
                    }
                    code
                })
                .min()
                .unwrap()
        })
        .collect();
    codes.sort();
    codes
}

fn map_from_permutation(sigma: &[usize], twist: u32) -> RibbonGraph {
    let mut seen = vec![false; sigma.len()];
    let mut vertices = Vec::new();
    for s in 0..sigma.len() {
        if seen[s] {
            continue;
        }
        let mut rot = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            rot.push(d as u32 + 1);
            d = sigma[d];
        }
        vertices.push(rot);
    }
    let edges: Vec<(u32, u32, i8)> = (0..sigma.len() / 2)
        .map(|i| (2 * i as u32 + 1, 2 * i as u32 + 2, if twist >> i & 1 == 1 { -1 } else { 1 }))
        .collect();
    RibbonGraph::from_parts(vertices, &edges).expect("permutation maps are valid")
}

/// A uniformly random rotation system on `m` edges.
pub fn random_ribbon_graph(rng: &mut impl Rng, m: usize, orientable: bool) -> RibbonGraph {
    let mut sigma: Vec<usize> = (0..2 * m).collect();
    sigma.shuffle(rng);
    let twist = if orientable { 0 } else { rng.gen::<u32>() & ((1u64 << m) - 1) as u32 };
    map_from_permutation(&sigma, twist)
}

/// A random twist of `D(G)` for a random orientable map on `n` edges.
pub fn random_ribbon_twist(rng: &mut impl Rng, n: usize) -> DeltaMatroid {
    let g = random_ribbon_graph(rng, n, true);
    let d = g.delta_matroid().expect("ribbon-graphic");
    let a = rng.gen::<u32>() & d.full();
    d.twist(a)
}

/// A random even delta-matroid on `1..=max_n` elements: a twisted ribbon-graphic
/// one, or a direct sum of two smaller random instances.
pub fn random_even_instance(rng: &mut impl Rng, max_n: usize) -> DeltaMatroid {
    let n = rng.gen_range(1..=max_n);
    if n >= 2 && rng.gen_bool(0.3) {
        let k = rng.gen_range(1..n);
        let a = random_even_instance(rng, k);
        let b = random_even_instance(rng, n - k);
        a.direct_sum_relabel(&b).expect("sizes within bounds")
    } else {
        random_ribbon_twist(rng, n)
    }
}

/// One step of a series-parallel construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpOp {
    Series(String),
    Parallel(String),
}

/// Start from the plane 2-cycle; `Series(e)` subdivides `e` by a new vertex and
/// `Parallel(e)` adds a new edge beside `e`, bounding a digon face with it.
/// New edges are labelled `e<k>` for the next free `k`.
pub fn build_series_parallel(ops: &[SpOp]) -> Result<RibbonGraph> {
    let mut vertices: Vec<Vec<u32>> = vec![vec![1, 3], vec![4, 2]];
    let mut edges: Vec<(u32, u32, String)> = vec![(1, 2, "e1".into()), (3, 4, "e2".into())];
    let mut next_dart = 5;
    for op in ops {
        let label = match op {
            SpOp::Series(l) | SpOp::Parallel(l) => l,
        };
        let idx = edges.iter().position(|e| &e.2 == label).ok_or_else(|| Error::UnknownEdge(label.clone()))?;
        let (a, b) = (edges[idx].0, edges[idx].1);
        let (c, d) = (next_dart, next_dart + 1);
        next_dart += 2;
        let fresh = format!("e{}", edges.len() + 1);
        match op {
            SpOp::Series(_) => {
                edges[idx].1 = c;
                edges.push((d, b, fresh));
                vertices.push(vec![c, d]);
            }
            SpOp::Parallel(_) => {
                let place = |vertices: &mut Vec<Vec<u32>>, at: u32, new: u32, after: bool| {
                    let rot = vertices.iter_mut().find(|r| r.contains(&at)).unwrap();
                    let pos = rot.iter().position(|&x| x == at).unwrap();
                    rot.insert(if after { pos + 1 } else { pos }, new);
                };
                place(&mut vertices, a, c, true);
                place(&mut vertices, b, d, false);
                edges.push((c, d, fresh));
            }
        }
    }
    let edges = edges
        .into_iter()
        .map(|(a, b, l)| EdgeJson { darts: [a, b], sign: 1, label: Some(l) })
        .collect();
    RibbonGraph::validate_map(&RibbonJson { vertices, edges })
}

/// A series-parallel network together with the operations that built it.
#[derive(Clone, Debug)]
pub struct SpNetwork {
    pub ops: Vec<SpOp>,
    pub graph: RibbonGraph,
    pub delta_matroid: DeltaMatroid,
}

/// All networks reachable with at most `max_ops` extensions, one per
/// isomorphism class of their delta-matroid. Extensions of isomorphic cycle
/// matroids are isomorphic, so each class is expanded from one representative.
pub fn series_parallel_classes(max_ops: usize) -> Vec<SpNetwork> {
    let base = build_series_parallel(&[]).expect("base network");
    let base_dm = base.delta_matroid().expect("ribbon-graphic");
    let mut seen = HashSet::new();
    seen.insert(base_dm.canonical_form());
    let mut level = vec![SpNetwork { ops: Vec::new(), graph: base, delta_matroid: base_dm }];
    let mut out = level.clone();
    for _ in 0..max_ops {
        let children: Vec<SpNetwork> = level
            .iter()
            .flat_map(|net| {
                net.graph.labels().iter().flat_map(move |l| {
                    [SpOp::Series(l.clone()), SpOp::Parallel(l.clone())].into_iter().map(move |op| {
                        let mut ops = net.ops.clone();
                        ops.push(op);
                        ops
                    })
                })
            })
            .map(|ops| {
                let graph = build_series_parallel(&ops).expect("labels exist");
                let delta_matroid = graph.delta_matroid().expect("ribbon-graphic");
                SpNetwork { ops, graph, delta_matroid }
            })
            .collect();
        let forms = Execution::default().map(&children, |c| c.delta_matroid.canonical_form());
        level = children
            .into_iter()
            .zip(forms)
            .filter_map(|(c, f)| seen.insert(f).then_some(c))
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Shared memo of irreducibility verdicts keyed by polynomial.
#[derive(Debug, Default)]
pub struct IrreducibilityCache {
    map: Mutex<HashMap<BiPoly, bool>>,
}

impl IrreducibilityCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_irreducible(&self, p: &BiPoly) -> Result<bool> {
        if let Some(&v) = self.map.lock().unwrap().get(p) {
            return Ok(v);
        }
        let v = factor::is_irreducible(p)?;
        self.map.lock().unwrap().insert(p.clone(), v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub property: String,
    /// The serialized instance and the observed discrepancy.
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance_count: u64,
    pub failures: Vec<Failure>,
    /// Seconds per phase.
    pub timing: BTreeMap<String, f64>,
    /// Instances per phase.
    pub phases: BTreeMap<String, u64>,
    pub seeds: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn run_phase<I, F>(&mut self, name: &str, items: &[I], check: F)
    where
        I: Sync,
        F: Fn(&I) -> Vec<(String, String, String)> + Sync + Send,
    {
        let start = Instant::now();
        let results = Execution::default().map(items, check);
        for (i, fails) in results.into_iter().enumerate() {
            for (property, detail, instance) in fails {
                self.failures.push(Failure {
                    instance: format!("{name}#{i}"),
                    property,
                    witness: format!("{detail}; instance {instance}"),
                });
            }
        }
        self.instance_count += items.len() as u64;
        *self.phases.entry(name.to_string()).or_insert(0) += items.len() as u64;
        *self.timing.entry(name.to_string()).or_insert(0.0) += start.elapsed().as_secs_f64();
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.instance_count += other.instance_count;
        self.failures.extend(other.failures);
        for (k, v) in other.timing {
            *self.timing.entry(k).or_insert(0.0) += v;
        }
        for (k, v) in other.phases {
            *self.phases.entry(k).or_insert(0) += v;
        }
        self.seeds.extend(other.seeds);
    }
}

/// Which properties [`check_delta_matroid`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub identities: bool,
    pub theorem: bool,
    pub minor_scan: bool,
    pub profile: bool,
}

impl CheckOptions {
    pub const ALL: CheckOptions = CheckOptions { identities: true, theorem: true, minor_scan: true, profile: true };
}

fn sign_of_half_width(w: u32) -> BigInt {
    if (w / 2).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Failed property names with details, for an even `D`.
pub fn check_delta_matroid(d: &DeltaMatroid, opts: CheckOptions, cache: &IrreducibilityCache) -> Vec<(String, String)> {
    let mut fails: Vec<(String, String)> = Vec::new();
    let mut fail = |p: &str, detail: String| fails.push((p.to_string(), detail));
    if !d.is_even() {
        fail("even", "instance is not even".into());
        return fails;
    }
    let n = d.len() as u32;
    let w = d.width();
    let sigma2 = d.sigma2(d.full());
    let t = match tutte_subset_sum(d) {
        TuttePoly::Integral(t) => t,
        other => {
            fail("integral", format!("even instance gave {other}"));
            return fails;
        }
    };
    let connected = d.is_connected();

    if opts.theorem && n >= 1 {
        match cache.is_irreducible(&t) {
            Ok(irr) if irr == connected => {}
            Ok(irr) => fail("irreducible-iff-connected", format!("T = {t}, irreducible {irr}, connected {connected}")),
            Err(e) => fail("irreducible-iff-connected", e.to_string()),
        }
    }
    if opts.profile {
        match profile_from_polynomial(&t) {
            Ok(p) if p == TutteProfile::of(d) => {}
            other => fail("profile", format!("{other:?} vs {:?}", TutteProfile::of(d))),
        }
    }
    if opts.minor_scan && n >= 2 && connected {
        let sp = is_series_parallel(d).unwrap_or(false);
        let minor = excluded_minor_witness(d);
        if sp == minor.is_some() {
            fail("series-parallel-complement", format!("series-parallel {sp}, minor {minor:?}"));
        }
    }
    if !opts.identities {
        return fails;
    }

    for rule in [PivotRule::First, PivotRule::Last, PivotRule::Hashed(SEED_PIVOT)] {
        match tutte_delcon_with(d, rule) {
            Ok(tc) if tc == t => {}
            other => fail("delcon-agrees", format!("{rule:?}: {other:?} vs {t}")),
        }
    }
    match tutte_subset_sum(&d.dual()) {
        TuttePoly::Integral(td) if td == t.swap_vars() => {}
        other => fail("duality", format!("T(D*) = {other}")),
    }
    let at_one = t.eval_i64(1, 1);
    let bases = if d.is_matroid() { BigInt::from(d.feasible().len()) } else { BigInt::zero() };
    if at_one != bases {
        fail("basis-count", format!("T(1,1) = {at_one}, expected {bases}"));
    }
    if n >= 2 && t.coeff(1, 0) != t.coeff(0, 1) {
        fail("linear-symmetry", format!("b10 = {}, b01 = {}", t.coeff(1, 0), t.coeff(0, 1)));
    }
    if n >= 1 && !t.coeff(0, 0).is_zero() {
        fail("constant-term", format!("b00 = {}", t.coeff(0, 0)));
    }
    match check_brylawski(d) {
        Ok(rows) if rows.iter().all(|r| r.pass) => {}
        other => fail("brylawski", format!("{other:?}")),
    }
    if check_top_coefficients(d) != Ok(true) {
        fail("top-coefficients", format!("T = {t}"));
    }
    if check_br_relation(d) != Ok(true) {
        fail("br-relation", format!("T = {t}"));
    }
    let specialized = crate::poly::specialize_uv(&t, sigma2 as i64, w as i64);
    if specialized != spanning_sum(d) {
        fail("spanning-identity", format!("{specialized} vs {}", spanning_sum(d)));
    }
    if n >= 2 {
        let b = t.coeff(1, 0);
        if b.is_zero() == connected {
            fail("beta-nonzero-iff-connected", format!("beta {b}, connected {connected}"));
        }
        if connected && b.signum() != sign_of_half_width(w) {
            fail("beta-sign", format!("beta {b}, width {w}"));
        }
    }
    let coloops = d.coloops().len() as u32;
    let loops = d.loops().len() as u32;
    let divides = |i, j| t.div_exact(&BiPoly::monomial(1, i, j)).is_some();
    if !divides(coloops, 0) || divides(coloops + 1, 0) || !divides(0, loops) || divides(0, loops + 1) {
        fail("divisibility", format!("T = {t}, {coloops} coloops, {loops} loops"));
    }
    let dual = d.dual();
    for e in 0..d.len() {
        let (wd, wc) = (d.delete(e).width() as i64, d.contract(e).width() as i64);
        let w = w as i64;
        let expected = if d.is_loop(e) || d.is_coloop(e) {
            (w, w)
        } else {
            match (d.classify(e).kind, dual.classify(e).kind) {
                (ElementKind::Ordinary, ElementKind::Ordinary) => (w, w),
                (ElementKind::Ordinary, _) => (w - 2, w),
                (_, ElementKind::Ordinary) => (w, w - 2),
                _ => (w - 2, w - 2),
            }
        };
        if (wd, wc) != expected {
            fail("width-cases", format!("element {}: got {:?}, expected {expected:?}", d.ground()[e], (wd, wc)));
        }
        if connected && !d.delete(e).is_connected() && !d.contract(e).is_connected() {
            fail("chain", format!("both minors at {} are disconnected", d.ground()[e]));
        }
    }
    fails
}

/// Failed properties of a ribbon graph and its delta-matroid.
pub fn check_ribbon_graph(g: &RibbonGraph, cache: &IrreducibilityCache) -> Vec<(String, String)> {
    let mut fails: Vec<(String, String)> = Vec::new();
    let mut fail = |p: &str, detail: String| fails.push((p.to_string(), detail));
    let d = match g.delta_matroid() {
        Ok(d) => d,
        Err(e) => {
            fail("quasi-trees", e.to_string());
            return fails;
        }
    };
    let r = ribbon_polynomial(g);
    let t = tutte_subset_sum(&d);
    if r != t {
        fail("ribbon-equals-tutte", format!("R = {r}, T = {t}"));
    }
    let full = g.metrics(g.full());
    if d.width() != full.euler_genus {
        fail("width-is-genus", format!("w = {}, genus {}", d.width(), full.euler_genus));
    }
    if g.is_orientable() {
        if let TuttePoly::Integral(p) = &r {
            if let Ok(dc) = crate::invariants::tutte_delcon(&d) {
                if &dc != p {
                    fail("ribbon-equals-delcon", format!("R = {p}, delcon {dc}"));
                }
            }
            if g.edge_count() >= 1 {
                match cache.is_irreducible(p) {
                    Ok(irr) if irr == d.is_connected() => {}
                    other => fail("irreducible-iff-connected", format!("R = {p}, {other:?}")),
                }
            }
        } else {
            fail("ribbon-equals-tutte", format!("orientable map gave {r}"));
        }
        for a in 0..=g.full() {
            let m = g.metrics(a);
            if !m.euler_genus.is_multiple_of(2) {
                fail("genus-even", format!("A = {a:b}"));
            }
            if m.sigma2 != d.sigma2(a) {
                fail("sigma-compatible", format!("A = {a:b}: ribbon {}, delta-matroid {}", m.sigma2, d.sigma2(a)));
            }
            // D(G)|A is the delta-matroid of the spanning subgraph (V, A)
            let target = g.components(a);
            let sub: Vec<Mask> = (0..=g.full())
                .filter(|&b| b & !a == 0 && g.boundary_components(b) == target)
                .collect();
            if d.restrict_sets(a) != sub {
                fail("restriction-compatible", format!("A = {a:b}"));
            }
        }
    }
    fails
}

fn tag(fails: Vec<(String, String)>, instance: String) -> Vec<(String, String, String)> {
    fails.into_iter().map(|(p, d)| (p, d, instance.clone())).collect()
}

/// Sizes for [`verify_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremConfig {
    pub max_n: usize,
    pub twist_map_edges: usize,
    pub random_sums: usize,
    pub random_instances: usize,
    pub random_max_n: usize,
    pub opts: CheckOptions,
}

impl TheoremConfig {
    pub fn new(max_n: usize) -> Self {
        TheoremConfig {
            max_n,
            twist_map_edges: 4,
            random_sums: 1000,
            random_instances: 500,
            random_max_n: 8,
            opts: CheckOptions::ALL,
        }
    }
}

/// The irreducibility theorem and the identity suite on every even
/// delta-matroid with at most `min(max_n, 4)` elements, on a random twist of
/// `D(G)` for each orientable map with at most four edges, on seeded random
/// instances, and reducibility of seeded random direct sums.
pub fn verify_theorem(max_n: usize) -> Result<VerificationReport> {
    verify_theorem_with(TheoremConfig::new(max_n))
}

pub fn verify_theorem_with(cfg: TheoremConfig) -> Result<VerificationReport> {
    let cache = IrreducibilityCache::new();
    let mut report = VerificationReport::default();
    report.seeds.insert("twists".into(), SEED_TWISTS);
    report.seeds.insert("sums".into(), SEED_SUMS);
    report.seeds.insert("random".into(), SEED_RANDOM);

    let mut exhaustive = Vec::new();
    for n in 0..=cfg.max_n.min(MAX_EXHAUSTIVE_ELEMENTS) {
        exhaustive.extend(enumerate_even_delta_matroids(n)?);
    }
    report.run_phase("exhaustive", &exhaustive, |d| tag(check_delta_matroid(d, cfg.opts, &cache), d.to_json()));

    let maps = enumerate_ribbon_graphs(cfg.twist_map_edges, true)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_TWISTS);
    let twisted: Vec<DeltaMatroid> = maps
        .iter()
        .map(|g| {
            let d = g.delta_matroid().expect("ribbon-graphic");
            d.twist(rng.gen::<u32>() & d.full())
        })
        .collect();
    report.run_phase("ribbon-twists", &twisted, |d| tag(check_delta_matroid(d, cfg.opts, &cache), d.to_json()));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED_RANDOM);
    let random: Vec<DeltaMatroid> =
        (0..cfg.random_instances).map(|_| random_even_instance(&mut rng, cfg.random_max_n)).collect();
    report.run_phase("random", &random, |d| tag(check_delta_matroid(d, cfg.opts, &cache), d.to_json()));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED_SUMS);
    let sums: Vec<(DeltaMatroid, DeltaMatroid)> = (0..cfg.random_sums)
        .map(|_| {
            let n1 = rng.gen_range(1..cfg.random_max_n);
            let n2 = rng.gen_range(1..=cfg.random_max_n - n1);
            (random_even_instance(&mut rng, n1), random_even_instance(&mut rng, n2))
        })
        .collect();
    report.run_phase("direct-sums", &sums, |(a, b)| {
        let s = a.direct_sum_relabel(b).expect("sizes within bounds");
        let mut fails = Vec::new();
        let (ta, tb, ts) = (tutte_subset_sum(a), tutte_subset_sum(b), tutte_subset_sum(&s));
        match (ta, tb, ts) {
            (TuttePoly::Integral(ta), TuttePoly::Integral(tb), TuttePoly::Integral(ts)) => {
                if ta * tb != ts {
                    fails.push(("multiplicativity".to_string(), format!("T(D1 + D2) = {ts}")));
                }
                if cache.is_irreducible(&ts) != Ok(false) {
                    fails.push(("sum-reducible".to_string(), format!("T = {ts}")));
                }
                if s.is_connected() {
                    fails.push(("sum-disconnected".to_string(), String::new()));
                }
            }
            _ => fails.push(("integral".to_string(), String::new())),
        }
        tag(fails, s.to_json())
    });
    Ok(report)
}

/// Ribbon-graph properties on every map with at most `max_edges` edges
/// (orientable ones, plus all sign patterns up to three edges), and
/// reducibility of constructed joins and disjoint unions.
pub fn verify_ribbon(max_edges: usize) -> Result<VerificationReport> {
    let cache = IrreducibilityCache::new();
    let mut report = VerificationReport::default();
    let maps = enumerate_ribbon_graphs(max_edges, true)?;
    report.run_phase("orientable-maps", &maps, |g| tag(check_ribbon_graph(g, &cache), g.to_json()));
    let signed: Vec<RibbonGraph> = enumerate_ribbon_graphs(max_edges.min(3), false)?
        .into_iter()
        .filter(|g| !g.is_orientable())
        .collect();
    report.run_phase("non-orientable-maps", &signed, |g| tag(check_ribbon_graph(g, &cache), g.to_json()));

    // connected pieces with one or two edges, glued in every possible way
    let pieces: Vec<&RibbonGraph> = maps
        .iter()
        .filter(|g| (1..=2).contains(&g.edge_count()) && g.components(g.full()) == 1)
        .collect();
    let mut glued: Vec<(RibbonGraph, RibbonGraph, RibbonGraph)> = Vec::new();
    for a in &pieces {
        for b in &pieces {
            glued.push(((*a).clone(), (*b).clone(), a.disjoint_union(b)));
            for v1 in 0..a.vertex_count() {
                for pos1 in 0..a.rotations()[v1].len() {
                    for v2 in 0..b.vertex_count() {
                        for pos2 in 0..b.rotations()[v2].len() {
                            let j = a.join(v1, pos1, b, v2, pos2)?;
                            glued.push(((*a).clone(), (*b).clone(), j));
                        }
                    }
                }
            }
        }
    }
    report.run_phase("joins-and-unions", &glued, |(a, b, g)| {
        let mut fails = Vec::new();
        let (ra, rb, rg) = (ribbon_polynomial(a), ribbon_polynomial(b), ribbon_polynomial(g));
        if let (TuttePoly::Integral(ra), TuttePoly::Integral(rb), TuttePoly::Integral(rg)) = (ra, rb, rg) {
            if ra * rb != rg {
                fails.push(("glue-multiplicative".to_string(), format!("R = {rg}")));
            }
            if cache.is_irreducible(&rg) != Ok(false) {
                fails.push(("glue-reducible".to_string(), format!("R = {rg}")));
            }
        } else {
            fails.push(("integral".to_string(), String::new()));
        }
        if g.delta_matroid().map(|d| d.is_connected()) != Ok(false) {
            fails.push(("glue-disconnected".to_string(), String::new()));
        }
        tag(fails, g.to_json())
    });
    Ok(report)
}

/// For each network and every twist `A` of its delta-matroid `D`:
/// `β(D * A) = (-1)^(w(D * A)/2)`; and no excluded minor in `D`.
pub fn verify_series_parallel(networks: &[SpNetwork]) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.run_phase("series-parallel", networks, |net| {
        let mut fails = Vec::new();
        let d = &net.delta_matroid;
        if net.graph.metrics(net.graph.full()).euler_genus != 0 {
            fails.push(("plane".to_string(), String::new()));
        }
        if !d.is_connected() {
            fails.push(("two-connected".to_string(), String::new()));
        }
        if let Some(w) = excluded_minor_witness(d) {
            fails.push(("no-excluded-minor".to_string(), format!("{w:?}")));
        }
        for a in 0..=d.full() {
            let tw = d.twist(a);
            let beta = beta_from_histogram(&tutte_histogram(&tw, Execution::Sequential));
            let expected = sign_of_half_width(tw.width());
            if beta.as_ref() != Some(&expected) {
                fails.push(("beta-criterion".to_string(), format!("twist {a:b}: beta {beta:?}, width {}", tw.width())));
            }
        }
        let ops = serde_json::to_string(&net.ops).expect("plain data");
        tag(fails, format!("ops {ops}"))
    });
    report
}

/// Operation sequences as stored in an ops file: a JSON list of sequences,
/// or a single sequence.
pub fn parse_ops(s: &str) -> Result<Vec<Vec<SpOp>>> {
    if let Ok(many) = serde_json::from_str::<Vec<Vec<SpOp>>>(s) {
        return Ok(many);
    }
    Ok(vec![serde_json::from_str::<Vec<SpOp>>(s)?])
}

pub fn networks_from_ops(seqs: &[Vec<SpOp>]) -> Result<Vec<SpNetwork>> {
    seqs.iter()
        .map(|ops| {
            let graph = build_series_parallel(ops)?;
            let delta_matroid = graph.delta_matroid()?;
            Ok(SpNetwork { ops: ops.clone(), graph, delta_matroid })
        })
        .collect()
}
