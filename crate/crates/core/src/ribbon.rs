//! Ribbon graphs as signed combinatorial maps.
//!
//! Darts are renumbered internally so that edge `i` owns darts `2i` and `2i+1`.
//! Every dart `d` has two corners, `d.L = 2d` and `d.R = 2d + 1`, which are the
//! two sides of the ribbon where it meets the vertex disc. Boundary walks are
//! traced with these rules:
//!
//! * along a vertex, `d.R` continues to `next(d).L` where `next` is the
//!   rotation successor among darts of the current subgraph;
//! * across an untwisted edge `{d, d'}`, `d.L` continues to `d'.R` and `d.R`
//!   to `d'.L`; a twisted edge connects `d.L` with `d'.L` and `d.R` with `d'.R`.
//!
//! Each class of corners is one boundary component. A vertex with no darts in
//! the subgraph is a bare disc and contributes one component of its own.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::deltamatroid::{bits, popcount, DeltaMatroid, Mask};
use crate::exec::Execution;
use crate::{Error, Result};

pub const MAX_EDGES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeJson {
    pub darts: [u32; 2],
    pub sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// On-disk form: `{"vertices": [[1,3,2,4]], "edges": [{"darts": [1,2], "sign": 1, "label": "e1"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RibbonJson {
    pub vertices: Vec<Vec<u32>>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    /// Rotations in internal dart numbering.
    rotations: Vec<Vec<usize>>,
    twisted: Vec<bool>,
    labels: Vec<String>,
    /// Original dart ids, indexed by internal dart.
    dart_ids: Vec<u32>,
    vertex_of: Vec<usize>,
    orientable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgraphMetrics {
    pub components: u32,
    pub rank: u32,
    pub boundary: u32,
    pub euler_genus: u32,
    pub sigma2: u32,
}

struct UnionFind {
    parent: Vec<usize>,
    classes: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), classes: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.classes -= 1;
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMap(msg.into())
}

impl RibbonGraph {
    /// Check that rotations partition the darts and edges perfectly match them.
    pub fn validate_map(raw: &RibbonJson) -> Result<Self> {
        let mut internal: HashMap<u32, usize> = HashMap::new();
        let mut twisted = Vec::with_capacity(raw.edges.len());
        let mut labels = Vec::with_capacity(raw.edges.len());
        let mut dart_ids = Vec::with_capacity(2 * raw.edges.len());
        for (i, e) in raw.edges.iter().enumerate() {
            if e.darts[0] == e.darts[1] {
                return Err(invalid(format!("edge {} pairs dart {} with itself", i + 1, e.darts[0])));
            }
            for &d in &e.darts {
                if internal.insert(d, dart_ids.len()).is_some() {
                    return Err(invalid(format!("dart {d} lies on two edges")));
                }
                dart_ids.push(d);
            }
            twisted.push(match e.sign {
                1 => false,
                -1 => true,
                s => return Err(invalid(format!("edge sign must be 1 or -1, got {s}"))),
            });
            labels.push(e.label.clone().unwrap_or_else(|| format!("e{}", i + 1)));
        }
        if raw.edges.len() > MAX_EDGES {
            return Err(invalid(format!("at most {MAX_EDGES} edges are supported, got {}", raw.edges.len())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut vertex_of = vec![usize::MAX; dart_ids.len()];
        let mut rotations = Vec::with_capacity(raw.vertices.len());
        for (v, rot) in raw.vertices.iter().enumerate() {
            let mut r = Vec::with_capacity(rot.len());
            for &d in rot {
                let &i = internal.get(&d).ok_or_else(|| invalid(format!("dart {d} is not on any edge")))?;
                if vertex_of[i] != usize::MAX {
                    return Err(invalid(format!("dart {d} appears in two rotations")));
                }
                vertex_of[i] = v;
                r.push(i);
            }
            rotations.push(r);
        }
        if let Some(i) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(invalid(format!("dart {} is missing from the rotations", dart_ids[i])));
        }
        let mut g = RibbonGraph { rotations, twisted, labels, dart_ids, vertex_of, orientable: true };
        g.orientable = g.compute_orientable();
        Ok(g)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RibbonJson = serde_json::from_str(s)?;
        Self::validate_map(&raw)
    }

    /// Build from rotations over dart ids and `(dart, dart, sign)` edges labelled `e1, e2, ...`.
    pub fn from_parts(vertices: Vec<Vec<u32>>, edges: &[(u32, u32, i8)]) -> Result<Self> {
        let edges = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b, s))| EdgeJson { darts: [a, b], sign: s, label: Some(format!("e{}", i + 1)) })
            .collect();
        Self::validate_map(&RibbonJson { vertices, edges })
    }

    pub fn to_json_value(&self) -> RibbonJson {
        RibbonJson {
            vertices: self.rotations.iter().map(|r| r.iter().map(|&d| self.dart_ids[d]).collect()).collect(),
            edges: (0..self.edge_count())
                .map(|i| EdgeJson {
                    darts: [self.dart_ids[2 * i], self.dart_ids[2 * i + 1]],
                    sign: if self.twisted[i] { -1 } else { 1 },
                    label: Some(self.labels[i].clone()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn is_twisted(&self, edge: usize) -> bool {
        self.twisted[edge]
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.edge_count()) - 1) as Mask
    }

    /// Endpoints of edge `i` as vertex indices.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        (self.vertex_of[2 * i], self.vertex_of[2 * i + 1])
    }

    pub fn edge_index(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownEdge(label.to_string()))
    }

    pub fn edge_mask<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        labels.iter().try_fold(0, |m, l| Ok(m | 1 << self.edge_index(l.as_ref())?))
    }

    pub fn check_mask(&self, a: Mask) -> Result<Mask> {
        if a & !self.full() != 0 {
            Err(Error::UnknownEdge(format!("e#{}", (a & !self.full()).trailing_zeros() + 1)))
        } else {
            Ok(a)
        }
    }

    pub fn format_edges(&self, a: Mask) -> Vec<String> {
        bits(a).map(|i| self.labels[i].clone()).collect()
    }

    /// Some switching of vertex signs makes every edge untwisted.
    fn compute_orientable(&self) -> bool {
        let n = self.vertex_count();
        let mut sign: Vec<Option<bool>> = vec![None; n];
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for i in 0..self.edge_count() {
            let (u, v) = self.ends(i);
            adj[u].push((v, self.twisted[i]));
            adj[v].push((u, self.twisted[i]));
        }
        for start in 0..n {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let su = sign[u].unwrap();
                for &(v, t) in &adj[u] {
                    match sign[v] {
                        None => {
                            sign[v] = Some(su ^ t);
                            stack.push(v);
                        }
                        Some(sv) if sv != su ^ t => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Connected components of `(V, A)`, isolated vertices included.
    pub fn components(&self, a: Mask) -> u32 {
        let mut uf = UnionFind::new(self.vertex_count());
        for i in bits(a) {
            let (u, v) = self.ends(i);
            uf.union(u, v);
        }
        uf.classes as u32
    }

    /// Boundary components of the ribbon subgraph `(V, A)`.
    pub fn boundary_components(&self, a: Mask) -> u32 {
        let mut uf = UnionFind::new(4 * self.edge_count());
        let l = |d: usize| 2 * d;
        let r = |d: usize| 2 * d + 1;
        let mut bare = 0;
        let mut induced = Vec::new();
        for rot in &self.rotations {
            induced.clear();
            induced.extend(rot.iter().copied().filter(|&d| a >> (d / 2) & 1 == 1));
            if induced.is_empty() {
                bare += 1;
                continue;
            }
            for k in 0..induced.len() {
                let next = induced[(k + 1) % induced.len()];
                uf.union(r(induced[k]), l(next));
            }
        }
        for i in bits(a) {
            let (d, e) = (2 * i, 2 * i + 1);
            if self.twisted[i] {
                uf.union(l(d), l(e));
                uf.union(r(d), r(e));
            } else {
                uf.union(l(d), r(e));
                uf.union(r(d), l(e));
            }
        }
        // corners of darts outside A are singleton classes
        let unused = 4 * (self.edge_count() - popcount(a) as usize);
        (uf.classes - unused) as u32 + bare
    }

    pub fn metrics(&self, a: Mask) -> SubgraphMetrics {
        let v = self.vertex_count() as u32;
        let c = self.components(a);
        let b = self.boundary_components(a);
        let rank = v - c;
        let euler_genus = 2 * c + popcount(a) - v - b;
        SubgraphMetrics { components: c, rank, boundary: b, euler_genus, sigma2: 2 * rank + euler_genus }
    }

    /// Spanning quasi-trees: one boundary component per component of `G`.
    pub fn quasi_tree_sets(&self) -> Vec<Mask> {
        self.quasi_tree_sets_with(Execution::default())
    }

    pub fn quasi_tree_sets_with(&self, exec: Execution) -> Vec<Mask> {
        let target = self.components(self.full());
        let hits = exec.map_range(0..1u64 << self.edge_count(), |a| {
            let a = a as Mask;
            (self.boundary_components(a) == target).then_some(a)
        });
        hits.into_iter().flatten().collect()
    }

    /// `D(G)`: ground set the edge labels, feasible sets the spanning quasi-trees.
    pub fn delta_matroid(&self) -> Result<DeltaMatroid> {
        self.delta_matroid_with(Execution::default())
    }

    pub fn delta_matroid_with(&self, exec: Execution) -> Result<DeltaMatroid> {
        DeltaMatroid::new(self.labels.clone(), self.quasi_tree_sets_with(exec))
            .map_err(|e| Error::Internal(format!("quasi-trees failed validation: {e}")))
    }

    fn max_dart_id(&self) -> u32 {
        self.dart_ids.iter().copied().max().unwrap_or(0)
    }

    /// Labels of `other` that clash with ours are replaced by fresh `e<k>` labels.
    fn merged_parts(&self, other: &RibbonGraph) -> (Vec<EdgeJson>, u32) {
        let offset = self.max_dart_id();
        let mut raw = self.to_json_value().edges;
        let mut used: HashSet<String> = self.labels.iter().cloned().collect();
        used.extend(other.labels.iter().cloned());
        let mut fresh = self.edge_count();
        for e in other.to_json_value().edges {
            let mut label = e.label.unwrap();
            if self.labels.contains(&label) {
                loop {
                    fresh += 1;
                    let cand = format!("e{fresh}");
                    if used.insert(cand.clone()) {
                        label = cand;
                        break;
                    }
                }
            }
            raw.push(EdgeJson { darts: [e.darts[0] + offset, e.darts[1] + offset], sign: e.sign, label: Some(label) });
        }
        (raw, offset)
    }

    /// `G1 ⊔ G2`; darts of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &RibbonGraph) -> RibbonGraph {
        let (edges, offset) = self.merged_parts(other);
        let mut vertices = self.to_json_value().vertices;
        vertices.extend(other.to_json_value().vertices.into_iter().map(|r| r.into_iter().map(|d| d + offset).collect()));
        RibbonGraph::validate_map(&RibbonJson { vertices, edges }).expect("union of valid maps is valid")
    }

    /// Merge vertex `v1` of `self` with vertex `v2` of `other`. The rotation of
    /// `v2`, read from position `pos2`, is spliced into the rotation of `v1`
    /// just before position `pos1` (so `pos1 = len` appends).
    pub fn join(&self, v1: usize, pos1: usize, other: &RibbonGraph, v2: usize, pos2: usize) -> Result<RibbonGraph> {
        let r1 = self.rotations.get(v1).ok_or_else(|| invalid(format!("no vertex {v1}")))?;
        let r2 = other.rotations.get(v2).ok_or_else(|| invalid(format!("no vertex {v2}")))?;
        if r1.is_empty() || r2.is_empty() {
            return Err(Error::IsolatedJoinVertex);
        }
        if pos1 > r1.len() || pos2 >= r2.len() {
            return Err(invalid("join position outside the rotation"));
        }
        let (edges, offset) = self.merged_parts(other);
        let mut vertices = self.to_json_value().vertices;
        let mut theirs: Vec<Vec<u32>> =
            other.to_json_value().vertices.into_iter().map(|r| r.into_iter().map(|d| d + offset).collect()).collect();
        let mut spliced = theirs.remove(v2);
        spliced.rotate_left(pos2);
        let merged = &mut vertices[v1];
        let tail = merged.split_off(pos1);
        merged.extend(spliced);
        merged.extend(tail);
        vertices.extend(theirs);
        RibbonGraph::validate_map(&RibbonJson { vertices, edges })
    }
}

/// One vertex, one untwisted loop.
pub fn plane_loop() -> RibbonGraph {
    RibbonGraph::from_parts(vec![vec![1, 2]], &[(1, 2, 1)]).unwrap()
}

/// One vertex, two interlaced untwisted loops: the genus-one map.
pub fn torus_map() -> RibbonGraph {
    RibbonGraph::from_parts(vec![vec![1, 3, 2, 4]], &[(1, 2, 1), (3, 4, 1)]).unwrap()
}

/// Two vertices joined by two parallel untwisted edges, embedded in the plane.
pub fn plane_two_cycle() -> RibbonGraph {
    RibbonGraph::from_parts(vec![vec![1, 3], vec![4, 2]], &[(1, 2, 1), (3, 4, 1)]).unwrap()
}

/// One vertex, one twisted loop.
pub fn mobius_loop() -> RibbonGraph {
    RibbonGraph::from_parts(vec![vec![1, 2]], &[(1, 2, -1)]).unwrap()
}

/// A single vertex without edges.
pub fn bare_vertex() -> RibbonGraph {
    RibbonGraph::from_parts(vec![vec![]], &[]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_errors() {
        assert!(torus_map().is_orientable());
        assert!(!mobius_loop().is_orientable());
        let missing = RibbonGraph::from_parts(vec![vec![1]], &[(1, 2, 1)]);
        assert!(matches!(missing, Err(Error::InvalidMap(m)) if m.contains("dart 2")));
        let twice = RibbonGraph::from_parts(vec![vec![1, 2], vec![2]], &[(1, 2, 1)]);
        assert!(matches!(twice, Err(Error::InvalidMap(m)) if m.contains("two rotations")));
        let stray = RibbonGraph::from_parts(vec![vec![1, 2, 3]], &[(1, 2, 1)]);
        assert!(matches!(stray, Err(Error::InvalidMap(_))));
        let json = r#"{"vertices": [[1,3,2,4]], "edges": [{"darts":[1,2],"sign":1,"label":"e1"}, {"darts":[3,4],"sign":1,"label":"e2"}]}"#;
        let g = RibbonGraph::from_json(json).unwrap();
        assert_eq!(g, torus_map());
        assert_eq!(RibbonGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn boundaries() {
        assert_eq!(plane_loop().boundary_components(1), 2);
        assert_eq!(mobius_loop().boundary_components(1), 1);
        assert_eq!(torus_map().boundary_components(0b11), 1);
        assert_eq!(torus_map().boundary_components(0b01), 2);
        assert_eq!(plane_two_cycle().boundary_components(0b11), 2);
        assert_eq!(plane_two_cycle().boundary_components(0), 2);
        assert_eq!(bare_vertex().boundary_components(0), 1);
    }

    #[test]
    fn metric_examples() {
        let m = torus_map().metrics(0b11);
        assert_eq!((m.components, m.rank, m.boundary, m.euler_genus, m.sigma2), (1, 0, 1, 2, 2));
        let m = plane_two_cycle().metrics(0b01);
        assert_eq!((m.components, m.rank, m.boundary, m.euler_genus, m.sigma2), (1, 1, 1, 0, 2));
        let m = plane_two_cycle().metrics(0);
        assert_eq!((m.euler_genus, m.sigma2), (0, 0));
        assert_eq!(mobius_loop().metrics(1).euler_genus, 1);
    }

    #[test]
    fn quasi_trees() {
        assert_eq!(plane_two_cycle().quasi_tree_sets(), vec![0b01, 0b10]);
        assert_eq!(torus_map().quasi_tree_sets(), vec![0, 0b11]);
        assert_eq!(bare_vertex().quasi_tree_sets(), vec![0]);
        let d = torus_map().delta_matroid().unwrap();
        assert_eq!(d.width(), 2);
        assert_eq!(bare_vertex().delta_matroid().unwrap(), DeltaMatroid::empty());
        assert_eq!(mobius_loop().quasi_tree_sets(), vec![0, 1]);
    }

    #[test]
    fn unions_and_joins() {
        let u = plane_loop().disjoint_union(&plane_loop());
        assert_eq!((u.vertex_count(), u.edge_count()), (2, 2));
        assert_eq!(u.metrics(u.full()).euler_genus, 0);
        assert_eq!(u.labels(), &["e1".to_string(), "e2".to_string()]);
        let u = torus_map().disjoint_union(&bare_vertex());
        assert_eq!(u.vertex_count(), 2);
        let j = plane_loop().join(0, 2, &plane_loop(), 0, 0).unwrap();
        assert_eq!(j.to_json_value().vertices, vec![vec![1, 2, 3, 4]]);
        assert_eq!(j.metrics(j.full()).euler_genus, 0);
        assert!(!j.delta_matroid().unwrap().is_connected());
        assert_eq!(plane_loop().join(0, 0, &bare_vertex(), 0, 0), Err(Error::IsolatedJoinVertex));
        let s = plane_two_cycle().disjoint_union(&torus_map());
        let d = s.delta_matroid().unwrap();
        let expect = plane_two_cycle().delta_matroid().unwrap().direct_sum_relabel(&torus_map().delta_matroid().unwrap()).unwrap();
        assert_eq!(d.feasible(), expect.feasible());
    }
}
