//! Delta-matroids `D = (E, F)` over at most 30 elements.
//!
//! Subsets of the ground set are `u32` bitmasks over ground positions; the
//! feasible family is kept sorted and deduplicated, which doubles as the
//! canonical cache key for the deletion–contraction engine.
//!
//! Deletion and contraction follow the usual identification for the undefined
//! case: deleting a coloop contracts it and contracting a loop deletes it. The
//! result of a sequence of such operations does not depend on their order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::{Error, Result};

pub type Mask = u32;

pub const MAX_ELEMENTS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaMatroid {
    ground: Vec<String>,
    feasible: Vec<Mask>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    Ordinary,
    OrientableRibbonLoop,
    NonOrientableRibbonLoop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementClass {
    pub kind: ElementKind,
    /// In no feasible set.
    pub is_loop: bool,
    /// In every feasible set.
    pub is_coloop: bool,
}

/// On-disk form: `{"ground": ["1","2"], "feasible": [[], ["1","2"]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaMatroidJson {
    pub ground: Vec<String>,
    pub feasible: Vec<Vec<String>>,
}

#[inline]
pub fn popcount(m: Mask) -> u32 {
    m.count_ones()
}

/// Elements of `m` in increasing position order.
pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn normalize(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_unstable();
    sets.dedup();
    sets
}

/// Feasible sets of `D \ e` in the original coordinates (`e` absent from all).
fn delete_bit(sets: &[Mask], e: Mask) -> Vec<Mask> {
    let avoiding: Vec<Mask> = sets.iter().copied().filter(|f| f & e == 0).collect();
    if avoiding.is_empty() {
        normalize(sets.iter().map(|f| f & !e).collect())
    } else {
        avoiding
    }
}

/// Feasible sets of `D / e` in the original coordinates.
fn contract_bit(sets: &[Mask], e: Mask) -> Vec<Mask> {
    let containing: Vec<Mask> = sets.iter().copied().filter(|f| f & e != 0).map(|f| f & !e).collect();
    if containing.is_empty() {
        sets.to_vec()
    } else {
        normalize(containing)
    }
}

/// Renumber the bits of `m` that lie in `keep` to consecutive positions.
fn compress(m: Mask, keep: Mask) -> Mask {
    let mut out = 0;
    for (j, i) in bits(keep).enumerate() {
        if m >> i & 1 == 1 {
            out |= 1 << j;
        }
    }
    out
}

impl DeltaMatroid {
    /// Validate labels, the feasible family and the symmetric exchange axiom.
    pub fn new(ground: Vec<String>, feasible: Vec<Mask>) -> Result<Self> {
        let d = Self::unchecked(ground, feasible)?;
        if let Some((f1, f2, e)) = d.exchange_violation() {
            return Err(Error::ExchangeFails {
                f1: d.format_set(f1),
                f2: d.format_set(f2),
                e: d.ground[e].clone(),
            });
        }
        Ok(d)
    }

    /// Structural checks only; the exchange axiom is not verified.
    pub fn unchecked(ground: Vec<String>, feasible: Vec<Mask>) -> Result<Self> {
        if ground.len() > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(ground.len()));
        }
        let mut seen = HashSet::new();
        for g in &ground {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateLabel(g.clone()));
            }
        }
        if feasible.is_empty() {
            return Err(Error::NoFeasibleSets);
        }
        let full = full_mask(ground.len());
        if let Some(bad) = feasible.iter().find(|&&f| f & !full != 0) {
            return Err(Error::UnknownElement(format!("bit {}", (bad & !full).trailing_zeros())));
        }
        Ok(DeltaMatroid { ground, feasible: normalize(feasible) })
    }

    /// Ground set labelled `"1"`, `"2"`, ...
    pub fn with_numbered_ground(n: usize, feasible: Vec<Mask>) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), feasible)
    }

    pub fn from_sets<S: AsRef<str>>(ground: &[S], feasible: &[Vec<S>]) -> Result<Self> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        let probe = DeltaMatroid { ground: ground.clone(), feasible: vec![0] };
        let masks = feasible
            .iter()
            .map(|set| probe.mask_of(set))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, masks)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DeltaMatroidJson = serde_json::from_str(s)?;
        Self::from_sets(&raw.ground, &raw.feasible)
    }

    pub fn to_json_value(&self) -> DeltaMatroidJson {
        DeltaMatroidJson {
            ground: self.ground.clone(),
            feasible: self
                .feasible
                .iter()
                .map(|&f| bits(f).map(|i| self.ground[i].clone()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data serializes")
    }

    /// The delta-matroid on no elements, `F = {∅}`.
    pub fn empty() -> Self {
        DeltaMatroid { ground: Vec::new(), feasible: vec![0] }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn feasible(&self) -> &[Mask] {
        &self.feasible
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn is_feasible(&self, m: Mask) -> bool {
        self.feasible.binary_search(&m).is_ok()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.ground
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        labels.iter().try_fold(0, |m, l| Ok(m | 1 << self.index_of(l.as_ref())?))
    }

    /// Reject masks mentioning positions outside the ground set.
    pub fn check_mask(&self, m: Mask) -> Result<Mask> {
        if m & !self.full() != 0 {
            Err(Error::UnknownElement(format!("bit {}", (m & !self.full()).trailing_zeros())))
        } else {
            Ok(m)
        }
    }

    pub fn format_set(&self, m: Mask) -> String {
        let inner: Vec<&str> = bits(m).map(|i| self.ground[i].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Cache key independent of labels.
    pub fn key(&self) -> (usize, Vec<Mask>) {
        (self.len(), self.feasible.clone())
    }

    /// First `(F1, F2, e)` for which no `f` in `F1 △ F2` makes `F1 △ {e, f}` feasible.
    pub fn exchange_violation(&self) -> Option<(Mask, Mask, usize)> {
        exchange_violation_in(&self.feasible, Execution::default())
    }

    pub fn min_size(&self) -> u32 {
        self.feasible.iter().map(|&f| popcount(f)).min().unwrap_or(0)
    }

    pub fn max_size(&self) -> u32 {
        self.feasible.iter().map(|&f| popcount(f)).max().unwrap_or(0)
    }

    pub fn width(&self) -> u32 {
        self.max_size() - self.min_size()
    }

    /// All feasible sets have sizes of one parity.
    pub fn is_even(&self) -> bool {
        let p = popcount(self.feasible[0]) & 1;
        self.feasible.iter().all(|&f| popcount(f) & 1 == p)
    }

    pub fn is_matroid(&self) -> bool {
        self.width() == 0
    }

    /// Number of feasible sets of each size `0..=n`.
    pub fn size_profile(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.len() + 1];
        for &f in &self.feasible {
            out[popcount(f) as usize] += 1;
        }
        out
    }

    /// Rank of `a` in the minimum matroid `D_min`.
    pub fn min_matroid_rank(&self, a: Mask) -> u32 {
        let k = self.min_size();
        self.feasible.iter().filter(|&&f| popcount(f) == k).map(|&f| popcount(f & a)).max().unwrap_or(0)
    }

    /// Rank of `a` in the maximum matroid `D_max`.
    pub fn max_matroid_rank(&self, a: Mask) -> u32 {
        let k = self.max_size();
        self.feasible.iter().filter(|&&f| popcount(f) == k).map(|&f| popcount(f & a)).max().unwrap_or(0)
    }

    /// `ρ(A) = |E| - min |A △ F|`.
    pub fn rho(&self, a: Mask) -> u32 {
        let d = self.feasible.iter().map(|&f| popcount(f ^ a)).min().unwrap_or(0);
        self.len() as u32 - d
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.feasible.iter().all(|&f| f >> e & 1 == 0)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.feasible.iter().all(|&f| f >> e & 1 == 1)
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.is_loop(e)).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.is_coloop(e)).collect()
    }

    fn drop_position(&self, e: usize, sets: Vec<Mask>) -> DeltaMatroid {
        let keep = self.full() & !(1 << e);
        let mut ground = self.ground.clone();
        ground.remove(e);
        DeltaMatroid { ground, feasible: normalize(sets.into_iter().map(|f| compress(f, keep)).collect()) }
    }

    /// `D \ e`; a coloop is contracted instead.
    pub fn delete(&self, e: usize) -> DeltaMatroid {
        self.drop_position(e, delete_bit(&self.feasible, 1 << e))
    }

    /// `D / e`; a loop is deleted instead.
    pub fn contract(&self, e: usize) -> DeltaMatroid {
        self.drop_position(e, contract_bit(&self.feasible, 1 << e))
    }

    pub fn delete_label(&self, label: &str) -> Result<DeltaMatroid> {
        Ok(self.delete(self.index_of(label)?))
    }

    pub fn contract_label(&self, label: &str) -> Result<DeltaMatroid> {
        Ok(self.contract(self.index_of(label)?))
    }

    /// Feasible sets of `D \ X / Y` without renumbering positions.
    pub fn minor_sets(&self, delete: Mask, contract: Mask) -> Vec<Mask> {
        let mut sets = self.feasible.clone();
        for e in bits(contract) {
            sets = contract_bit(&sets, 1 << e);
        }
        for e in bits(delete) {
            sets = delete_bit(&sets, 1 << e);
        }
        sets
    }

    /// `D \ X / Y` for disjoint `X`, `Y`.
    pub fn minor(&self, delete: Mask, contract: Mask) -> DeltaMatroid {
        assert_eq!(delete & contract, 0, "delete and contract sets must be disjoint");
        let keep = self.full() & !delete & !contract;
        let sets = self.minor_sets(delete, contract);
        DeltaMatroid {
            ground: bits(keep).map(|i| self.ground[i].clone()).collect(),
            feasible: normalize(sets.into_iter().map(|f| compress(f, keep)).collect()),
        }
    }

    /// Feasible sets of `D|A` (sequential deletion of the complement), in the
    /// original coordinates.
    pub fn restrict_sets(&self, a: Mask) -> Vec<Mask> {
        let mut sets = self.feasible.clone();
        for e in bits(self.full() & !a) {
            sets = delete_bit(&sets, 1 << e);
        }
        sets
    }

    /// `D|A = D \ (E - A)`.
    pub fn restrict(&self, a: Mask) -> DeltaMatroid {
        self.minor(self.full() & !a, 0)
    }

    /// `2σ(A) = r((D|A)_max) + r((D|A)_min)`.
    pub fn sigma2(&self, a: Mask) -> u32 {
        let (lo, hi) = size_range(&self.restrict_sets(a));
        lo + hi
    }

    /// `w(D|A)`.
    pub fn restricted_width(&self, a: Mask) -> u32 {
        let (lo, hi) = size_range(&self.restrict_sets(a));
        hi - lo
    }

    /// `D * A`: `F` is feasible iff `F △ A` was.
    pub fn twist(&self, a: Mask) -> DeltaMatroid {
        DeltaMatroid { ground: self.ground.clone(), feasible: normalize(self.feasible.iter().map(|&f| f ^ a).collect()) }
    }

    pub fn dual(&self) -> DeltaMatroid {
        self.twist(self.full())
    }

    pub fn direct_sum(&self, other: &DeltaMatroid) -> Result<DeltaMatroid> {
        if self.ground.iter().any(|g| other.ground.contains(g)) {
            return Err(Error::NotDisjoint);
        }
        if self.len() + other.len() > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(self.len() + other.len()));
        }
        let shift = self.len();
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().cloned());
        let mut sets = Vec::with_capacity(self.feasible.len() * other.feasible.len());
        for &a in &self.feasible {
            for &b in &other.feasible {
                sets.push(a | b << shift);
            }
        }
        Ok(DeltaMatroid { ground, feasible: normalize(sets) })
    }

    /// Direct sum after relabelling `other`'s elements with fresh labels.
    pub fn direct_sum_relabel(&self, other: &DeltaMatroid) -> Result<DeltaMatroid> {
        let used: HashSet<&String> = self.ground.iter().collect();
        let mut next = self.len() + 1;
        let mut labels = Vec::with_capacity(other.len());
        for g in &other.ground {
            if used.contains(g) || labels.contains(g) {
                while used.contains(&next.to_string()) || other.ground.contains(&next.to_string()) {
                    next += 1;
                }
                labels.push(next.to_string());
                next += 1;
            } else {
                labels.push(g.clone());
            }
        }
        let relabelled = DeltaMatroid { ground: labels, feasible: other.feasible.clone() };
        self.direct_sum(&relabelled)
    }

    pub fn with_labels(&self, ground: Vec<String>) -> Result<DeltaMatroid> {
        assert_eq!(ground.len(), self.len());
        DeltaMatroid::unchecked(ground, self.feasible.clone())
    }

    /// True iff `F = {F1 ∪ F2}` for `F1`, `F2` feasible in `D|A` and `D|(E-A)`.
    pub fn splits_along(&self, a: Mask) -> bool {
        let left = self.restrict_sets(a);
        let right = self.restrict_sets(self.full() & !a);
        if left.len() * right.len() != self.feasible.len() {
            return false;
        }
        left.iter().all(|&l| right.iter().all(|&r| self.is_feasible(l | r)))
    }

    /// A separating bipartition `(E1, E2)`, or `None` when connected.
    pub fn separation(&self) -> Option<(Mask, Mask)> {
        self.separation_with(Execution::default())
    }

    pub fn separation_with(&self, exec: Execution) -> Option<(Mask, Mask)> {
        let n = self.len();
        if n < 2 {
            return None;
        }
        // E1 always contains position 0; E2 is non-empty.
        let halves = 1u64 << (n - 1);
        exec.find_first(0..halves - 1, |i| self.splits_along(1 | (i as Mask) << 1))
            .map(|i| {
                let a = 1 | (i as Mask) << 1;
                (a, self.full() & !a)
            })
    }

    pub fn is_connected(&self) -> bool {
        self.separation().is_none()
    }

    /// Connected components as masks, in order of their least element.
    pub fn components(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut rest = self.full();
        while rest != 0 {
            let sub = self.restrict(rest);
            let comp_local = match sub.separation() {
                None => sub.full(),
                Some((a, _)) => smallest_component(&sub, a),
            };
            let comp = expand(comp_local, rest);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn classify(&self, e: usize) -> ElementClass {
        let loop_in_min = |d: &DeltaMatroid| {
            let k = d.min_size();
            d.feasible.iter().all(|&f| popcount(f) != k || f >> e & 1 == 0)
        };
        let kind = if !loop_in_min(self) {
            ElementKind::Ordinary
        } else if loop_in_min(&self.twist(1 << e)) {
            ElementKind::NonOrientableRibbonLoop
        } else {
            ElementKind::OrientableRibbonLoop
        };
        ElementClass { kind, is_loop: self.is_loop(e), is_coloop: self.is_coloop(e) }
    }

    pub fn classify_label(&self, label: &str) -> Result<ElementClass> {
        Ok(self.classify(self.index_of(label)?))
    }

    /// Per-element invariant: how many feasible sets of each size contain it.
    fn element_signature(&self, e: usize) -> Vec<u32> {
        let mut sig = vec![0u32; self.len() + 1];
        for &f in &self.feasible {
            if f >> e & 1 == 1 {
                sig[popcount(f) as usize] += 1;
            }
        }
        sig
    }

    /// Elements grouped into classes of equal signature, classes sorted by signature.
    fn signature_classes(&self) -> Vec<(Vec<u32>, Vec<usize>)> {
        let mut sigs: Vec<(Vec<u32>, usize)> = (0..self.len()).map(|e| (self.element_signature(e), e)).collect();
        sigs.sort();
        let mut classes: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
        for (s, e) in sigs {
            match classes.last_mut() {
                Some((t, v)) if *t == s => v.push(e),
                _ => classes.push((s, vec![e])),
            }
        }
        classes
    }

    /// True iff some bijection of ground sets maps `F(self)` onto `F(other)`.
    pub fn is_isomorphic(&self, other: &DeltaMatroid) -> bool {
        if self.len() != other.len() || self.feasible.len() != other.feasible.len() {
            return false;
        }
        if self.size_profile() != other.size_profile() {
            return false;
        }
        let a = self.signature_classes();
        let b = other.signature_classes();
        if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.0 != y.0 || x.1.len() != y.1.len()) {
            return false;
        }
        let target: HashSet<Mask> = other.feasible.iter().copied().collect();
        let slots: Vec<(usize, Vec<usize>)> =
            a.iter().zip(&b).flat_map(|(x, y)| x.1.iter().map(move |&e| (e, y.1.clone()))).collect();
        let mut perm = vec![usize::MAX; self.len()];
        let mut used = vec![false; self.len()];
        fn search(
            d: &DeltaMatroid,
            slots: &[(usize, Vec<usize>)],
            i: usize,
            perm: &mut [usize],
            used: &mut [bool],
            target: &HashSet<Mask>,
        ) -> bool {
            if i == slots.len() {
                return d.feasible.iter().all(|&f| target.contains(&apply_perm(f, perm)));
            }
            let (e, choices) = &slots[i];
            for &c in choices {
                if used[c] {
                    continue;
                }
                used[c] = true;
                perm[*e] = c;
                if search(d, slots, i + 1, perm, used, target) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        search(self, &slots, 0, &mut perm, &mut used, &target)
    }

    /// Isomorphism-invariant normal form: the lexicographically least sorted
    /// feasible list over all relabellings that respect element signatures.
    pub fn canonical_form(&self) -> (usize, Vec<Mask>) {
        let classes = self.signature_classes();
        // positions are handed out class by class, so any two isomorphic inputs
        // search the same space of images
        let mut best: Option<Vec<Mask>> = None;
        let mut perm = vec![0usize; self.len()];
        fn rec(
            d: &DeltaMatroid,
            classes: &[(Vec<u32>, Vec<usize>)],
            ci: usize,
            offset: usize,
            perm: &mut Vec<usize>,
            best: &mut Option<Vec<Mask>>,
        ) {
            if ci == classes.len() {
                let image = normalize(d.feasible.iter().map(|&f| apply_perm(f, perm)).collect());
                if best.as_ref().is_none_or(|b| image < *b) {
                    *best = Some(image);
                }
                return;
            }
            let members = &classes[ci].1;
            let mut order: Vec<usize> = (0..members.len()).collect();
            loop {
                for (k, &o) in order.iter().enumerate() {
                    perm[members[k]] = offset + o;
                }
                rec(d, classes, ci + 1, offset + members.len(), perm, best);
                if !next_permutation(&mut order) {
                    break;
                }
            }
        }
        rec(self, &classes, 0, 0, &mut perm, &mut best);
        (self.len(), best.unwrap_or_default())
    }

    /// Search for a minor isomorphic to one of `targets` (or to a twist of one).
    pub fn has_minor_in(&self, targets: &[DeltaMatroid], up_to_twist: bool) -> Option<MinorWitness> {
        self.find_minor(&MinorIndex::new(targets, up_to_twist), Execution::default())
    }

    pub fn find_minor(&self, index: &MinorIndex, exec: Execution) -> Option<MinorWitness> {
        for &k in &index.sizes {
            if k > self.len() {
                break;
            }
            let keeps: Vec<Mask> = (0..=self.full()).filter(|&m| popcount(m) as usize == k).collect();
            let hit = exec.find_first(0..keeps.len() as u64, |i| index.scan(self, keeps[i as usize]).is_some());
            if let Some(i) = hit {
                return index.scan(self, keeps[i as usize]);
            }
        }
        None
    }

    /// Call `fold` with the feasible sets of `D|A` (original coordinates) for
    /// every `A ⊆ E`. Each restriction is reached from a parent by a single
    /// deletion, so the sweep costs one pass over a family per subset.
    pub fn fold_restrictions<T, ID, F, R>(&self, exec: Execution, identity: ID, fold: F, reduce: R) -> T
    where
        T: Send,
        ID: Fn() -> T + Sync + Send,
        F: Fn(T, Mask, &[Mask]) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let n = self.len();
        let high = n.min(6);
        let low = n - high;
        // removed elements split into a high prefix (one task each) and a low part walked depth first
        exec.fold_range(
            0..1u64 << high,
            &identity,
            |acc, prefix| {
                let removed_high = (prefix as Mask) << low;
                let mut sets = self.feasible.clone();
                for e in bits(removed_high) {
                    sets = delete_bit(&sets, 1 << e);
                }
                let a = self.full() & !removed_high;
                let acc = fold(acc, a, &sets);
                descend(acc, a, &sets, 0, low, &fold)
            },
            &reduce,
        )
    }

    /// `2σ(A)` for every `A`, indexed by mask.
    pub fn sigma2_table(&self, exec: Execution) -> Vec<u32> {
        let parts = self.fold_restrictions(
            exec,
            Vec::new,
            |mut v: Vec<(Mask, u32)>, a, sets| {
                let (lo, hi) = size_range(sets);
                v.push((a, lo + hi));
                v
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        let mut out = vec![0u32; 1usize << self.len()];
        for (a, s) in parts {
            out[a as usize] = s;
        }
        out
    }
}

fn descend<T, F>(mut acc: T, a: Mask, sets: &[Mask], from: usize, to: usize, fold: &F) -> T
where
    F: Fn(T, Mask, &[Mask]) -> T,
{
    for j in from..to {
        if a >> j & 1 == 1 {
            let child = delete_bit(sets, 1 << j);
            let b = a & !(1 << j);
            acc = fold(acc, b, &child);
            acc = descend(acc, b, &child, j + 1, to, fold);
        }
    }
    acc
}

/// Least and greatest size in a non-empty family.
pub fn size_range(sets: &[Mask]) -> (u32, u32) {
    sets.iter().fold((u32::MAX, 0), |(lo, hi), &f| (lo.min(popcount(f)), hi.max(popcount(f))))
}

/// Canonical forms of a list of target delta-matroids, optionally closed under twists.
#[derive(Clone, Debug)]
pub struct MinorIndex {
    forms: std::collections::HashMap<(usize, Vec<Mask>), usize>,
    profiles: HashSet<Vec<u64>>,
    sizes: Vec<usize>,
}

impl MinorIndex {
    pub fn new(targets: &[DeltaMatroid], up_to_twist: bool) -> Self {
        let mut forms = std::collections::HashMap::new();
        let mut profiles = HashSet::new();
        for (ti, t) in targets.iter().enumerate() {
            let twists: Vec<Mask> = if up_to_twist { (0..=t.full()).collect() } else { vec![0] };
            for a in twists {
                let tw = t.twist(a);
                profiles.insert(tw.size_profile());
                forms.entry(tw.canonical_form()).or_insert(ti);
            }
        }
        let sizes: BTreeSet<usize> = targets.iter().map(|t| t.len()).collect();
        MinorIndex { forms, profiles, sizes: sizes.into_iter().collect() }
    }

    /// Try every split of `E - keep` into deleted and contracted elements.
    fn scan(&self, d: &DeltaMatroid, keep: Mask) -> Option<MinorWitness> {
        let rest = d.full() & !keep;
        for split in 0..(1u64 << popcount(rest)) {
            let contract = expand(split as Mask, rest);
            let delete = rest & !contract;
            let m = d.minor(delete, contract);
            if !self.profiles.contains(&m.size_profile()) {
                continue;
            }
            if let Some(&target) = self.forms.get(&m.canonical_form()) {
                return Some(MinorWitness { delete, contract, target });
            }
        }
        None
    }
}

/// `D \ delete / contract` is isomorphic to (a twist of) `targets[target]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub delete: Mask,
    pub contract: Mask,
    pub target: usize,
}

pub fn full_mask(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

fn apply_perm(f: Mask, perm: &[usize]) -> Mask {
    bits(f).fold(0, |m, i| m | 1 << perm[i])
}

/// Spread the low bits of `m` over the set positions of `onto`.
fn expand(m: Mask, onto: Mask) -> Mask {
    bits(onto).enumerate().filter(|(j, _)| m >> j & 1 == 1).fold(0, |acc, (_, i)| acc | 1 << i)
}

fn smallest_component(d: &DeltaMatroid, side: Mask) -> Mask {
    // `side` contains position 0; refine until connected
    let sub = d.restrict(side);
    match sub.separation() {
        None => side,
        Some((a, _)) => expand(smallest_component(&sub, a), side),
    }
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

fn exchange_violation_in(sets: &[Mask], exec: Execution) -> Option<(Mask, Mask, usize)> {
    let lookup = |m: Mask| sets.binary_search(&m).is_ok();
    let check = |f1: Mask| -> Option<(Mask, Mask, usize)> {
        for &f2 in sets {
            let diff = f1 ^ f2;
            for e in bits(diff) {
                let ok = bits(diff).any(|f| lookup(f1 ^ ((1 << e) | (1 << f))));
                if !ok {
                    return Some((f1, f2, e));
                }
            }
        }
        None
    };
    let hits = exec.map(sets, |&f1| check(f1));
    hits.into_iter().flatten().next()
}

impl fmt::Display for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.feasible.iter().map(|&m| self.format_set(m)).collect();
        write!(f, "({}; {{{}}})", self.format_set(self.full()), sets.join(", "))
    }
}
