//! Planarity, outer-planarity and Hasse-planarity with certificates.
//!
//! A planar verdict carries a clockwise rotation system; a non-planar one carries a
//! subdivision of K5 or K3,3 (or K4 / K2,3 for outer-planarity) found inside the graph.

mod lr;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::SimpleGraph;
use crate::lattice::SubgroupLattice;

/// Clockwise neighbor order around every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Number of faces traced by the rotation system, per connected component
    /// (in the order of `SimpleGraph::components`). Edgeless components have no faces.
    pub fn faces_per_component(&self, g: &SimpleGraph) -> Vec<usize> {
        let comps = g.components();
        let mut comp_of = vec![0; g.vertex_count()];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let pos: Vec<HashMap<usize, usize>> = self
            .rotation
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &w)| (w, i)).collect())
            .collect();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = vec![0; comps.len()];
        for v in 0..self.rotation.len() {
            for &w in &self.rotation[v] {
                if seen.contains(&(v, w)) {
                    continue;
                }
                faces[comp_of[v]] += 1;
                let (mut a, mut b) = (v, w);
                while seen.insert((a, b)) {
                    // next half-edge: around b, the neighbor preceding a
                    let rot = &self.rotation[b];
                    let i = pos[b][&a];
                    let next = rot[(i + rot.len() - 1) % rot.len()];
                    a = b;
                    b = next;
                }
            }
        }
        faces
    }

    /// The rotation lists exactly the neighbors of each vertex, and every component
    /// with at least one edge satisfies `V - E + F = 2`.
    pub fn is_valid_for(&self, g: &SimpleGraph) -> bool {
        if self.rotation.len() != g.vertex_count() {
            return false;
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return false;
            }
        }
        let faces = self.faces_per_component(g);
        g.components().iter().zip(faces).all(|(members, f)| {
            let edges: usize = members.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            edges == 0 || members.len() as i64 - edges as i64 + f as i64 == 2
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    K5,
    K33,
    K4,
    K23,
}

impl WitnessKind {
    fn branch_count(self) -> usize {
        match self {
            WitnessKind::K5 | WitnessKind::K23 => 5,
            WitnessKind::K33 => 6,
            WitnessKind::K4 => 4,
        }
    }

    /// Branch-vertex index pairs joined by a path, in the order `paths` lists them.
    /// Complete kinds use all pairs `i < j`; bipartite kinds pair side A (the first
    /// 3 for K3,3, the first 2 for K2,3) with side B.
    pub fn pairs(self) -> Vec<(usize, usize)> {
        match self {
            WitnessKind::K5 | WitnessKind::K4 => {
                let k = self.branch_count();
                (0..k)
                    .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                    .collect()
            }
            WitnessKind::K33 => (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect(),
            WitnessKind::K23 => (0..2).flat_map(|i| (2..5).map(move |j| (i, j))).collect(),
        }
    }
}

/// A subdivision of a forbidden graph. `paths[k]` runs from the first to the second
/// branch vertex of `kind.pairs()[k]`.
///
/// For K2,3 the two degree-3 vertices come first; the other three branch vertices are
/// interior points chosen on the three connecting paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenWitness {
    pub kind: WitnessKind,
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Embedding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ForbiddenWitness>,
}

pub fn is_planar(g: &SimpleGraph) -> PlanarityVerdict {
    match lr::lr_planarity(g.vertex_count(), g.edges(), true) {
        Some(rotation) => PlanarityVerdict {
            planar: true,
            embedding: Some(Embedding { rotation }),
            witness: None,
        },
        None => PlanarityVerdict {
            planar: false,
            embedding: None,
            witness: Some(kuratowski_witness(g).expect("non-planar graph contains a subdivision")),
        },
    }
}

/// Planarity decision without building certificates.
pub fn planar(g: &SimpleGraph) -> bool {
    planar_edges(g.vertex_count(), g.edges())
}

fn planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    lr::lr_planarity(n, edges, false).is_some()
}

fn apex_edges(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges
        .iter()
        .copied()
        .chain((0..n).map(|v| (v, n)))
        .collect()
}

fn outerplanar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    planar_edges(n + 1, &apex_edges(n, edges))
}

/// Outer-planarity decision without building certificates.
pub fn outerplanar(g: &SimpleGraph) -> bool {
    outerplanar_edges(g.vertex_count(), g.edges())
}

/// Decided by adding an apex adjacent to every vertex: `g` is outer-planar exactly when
/// the apex graph is planar. The returned embedding has every vertex on one face.
pub fn is_outerplanar(g: &SimpleGraph) -> PlanarityVerdict {
    let n = g.vertex_count();
    match lr::lr_planarity(n + 1, &apex_edges(n, g.edges()), true) {
        Some(mut rotation) => {
            rotation.pop();
            for r in &mut rotation {
                r.retain(|&w| w != n);
            }
            PlanarityVerdict {
                planar: true,
                embedding: Some(Embedding { rotation }),
                witness: None,
            }
        }
        None => PlanarityVerdict {
            planar: false,
            embedding: None,
            witness: Some(
                outerplanar_witness(g).expect("non-outer-planar graph contains a subdivision"),
            ),
        },
    }
}

/// Planarity of the subgroup graph with a bottom-top edge added.
pub fn is_hasse_planar(lattice: &SubgroupLattice) -> PlanarityVerdict {
    is_planar(&lattice.bounded_graph().0)
}

/// A K5 or K3,3 subdivision inside `g`, or `None` when `g` is planar.
pub fn kuratowski_witness(g: &SimpleGraph) -> Option<ForbiddenWitness> {
    let n = g.vertex_count();
    let edges = minimal_failing_subset(g.edges(), |e| !planar_edges(n, e))?;
    let w = subdivision_witness(n, &edges, &[WitnessKind::K5, WitnessKind::K33]);
    debug_assert!(w.as_ref().is_some_and(|w| validate_witness(g, w)));
    w
}

/// A K4 or K2,3 subdivision inside `g`, or `None` when `g` is outer-planar.
pub fn outerplanar_witness(g: &SimpleGraph) -> Option<ForbiddenWitness> {
    let n = g.vertex_count();
    let edges = minimal_failing_subset(g.edges(), |e| !outerplanar_edges(n, e))?;
    let w = subdivision_witness(n, &edges, &[WitnessKind::K4, WitnessKind::K23]);
    debug_assert!(w.as_ref().is_some_and(|w| validate_witness(g, w)));
    w
}

/// Smallest-by-inclusion subset of `edges` on which `fails` holds, given that `fails`
/// is monotone (supersets of failing sets fail). Each round binary-searches the
/// shortest failing prefix of the candidates; its last edge is then forced.
fn minimal_failing_subset<F>(edges: &[(usize, usize)], fails: F) -> Option<Vec<(usize, usize)>>
where
    F: Fn(&[(usize, usize)]) -> bool,
{
    if !fails(edges) {
        return None;
    }
    let mut required: Vec<(usize, usize)> = Vec::new();
    let mut candidates: Vec<(usize, usize)> = edges.to_vec();
    let mut buf = Vec::with_capacity(edges.len());
    let mut with_prefix = |required: &[(usize, usize)], cands: &[(usize, usize)], k: usize| {
        buf.clear();
        buf.extend_from_slice(required);
        buf.extend_from_slice(&cands[..k]);
        fails(&buf)
    };
    loop {
        if with_prefix(&required, &candidates, 0) {
            return Some(required);
        }
        // fails with all candidates, not with none
        let (mut lo, mut hi) = (0, candidates.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if with_prefix(&required, &candidates, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        required.push(candidates[hi - 1]);
        candidates.truncate(hi - 1);
    }
}

/// Reads the branch structure off an edge-minimal forbidden subgraph.
fn subdivision_witness(
    n: usize,
    edges: &[(usize, usize)],
    kinds: &[WitnessKind],
) -> Option<ForbiddenWitness> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let is_branch = |v: usize| adj[v].len() >= 3;
    // paths between branch vertices, keyed by endpoints (smaller first)
    let mut paths: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while !is_branch(cur) {
                let next = *adj[cur].iter().find(|&&x| x != prev)?;
                path.push(next);
                prev = cur;
                cur = next;
            }
            if b < cur {
                paths.insert((b, cur), path);
            }
        }
    }
    let path_between = |a: usize, b: usize| -> Option<Vec<usize>> {
        if a < b {
            paths.get(&(a, b)).cloned()
        } else {
            paths
                .get(&(b, a))
                .map(|p| p.iter().rev().copied().collect())
        }
    };
    let kind = match branch.len() {
        5 if kinds.contains(&WitnessKind::K5) => WitnessKind::K5,
        6 if kinds.contains(&WitnessKind::K33) => WitnessKind::K33,
        4 if kinds.contains(&WitnessKind::K4) => WitnessKind::K4,
        2 if kinds.contains(&WitnessKind::K23) => WitnessKind::K23,
        _ => return None,
    };
    let branch_vertices = match kind {
        WitnessKind::K5 | WitnessKind::K4 => branch,
        WitnessKind::K33 => {
            let a0 = branch[0];
            let (mut side_a, mut side_b): (Vec<usize>, Vec<usize>) = (vec![a0], Vec::new());
            for &b in &branch[1..] {
                if paths.contains_key(&(a0, b)) {
                    side_b.push(b);
                } else {
                    side_a.push(b);
                }
            }
            side_a.extend(side_b);
            side_a
        }
        WitnessKind::K23 => {
            let (a, b) = (branch[0], branch[1]);
            let mut bv = vec![a, b];
            // the three a-b paths, each entered through a different neighbor of a
            for &first in &adj[a] {
                let mut path = vec![a, first];
                let (mut prev, mut cur) = (a, first);
                while cur != b {
                    let next = *adj[cur].iter().find(|&&x| x != prev)?;
                    path.push(next);
                    prev = cur;
                    cur = next;
                }
                if path.len() < 3 {
                    return None;
                }
                bv.push(path[1]);
            }
            let witness_paths = kind
                .pairs()
                .into_iter()
                .map(|(i, j)| trace_to(&adj, bv[i], bv[j], a, b))
                .collect::<Option<Vec<_>>>()?;
            return Some(ForbiddenWitness {
                kind,
                branch_vertices: bv,
                paths: witness_paths,
            });
        }
    };
    let witness_paths = kind
        .pairs()
        .into_iter()
        .map(|(i, j)| path_between(branch_vertices[i], branch_vertices[j]))
        .collect::<Option<Vec<_>>>()?;
    Some(ForbiddenWitness {
        kind,
        branch_vertices,
        paths: witness_paths,
    })
}

/// In a theta graph with poles `a`, `b`: the path from pole `from` to the interior
/// vertex `to` that avoids the other pole.
fn trace_to(adj: &[Vec<usize>], from: usize, to: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let other = if from == a { b } else { a };
    for &first in &adj[from] {
        let mut path = vec![from, first];
        let (mut prev, mut cur) = (from, first);
        while cur != to && cur != other {
            let next = *adj[cur].iter().find(|&&x| x != prev)?;
            path.push(next);
            prev = cur;
            cur = next;
        }
        if cur == to {
            return Some(path);
        }
    }
    None
}

/// Checks that `w` is a subdivision of its kind inside `g`: distinct branch vertices,
/// one path per branch pair with the right endpoints, every step an edge of `g`, and
/// no vertex interior to a path reused anywhere else.
pub fn validate_witness(g: &SimpleGraph, w: &ForbiddenWitness) -> bool {
    let n = g.vertex_count();
    let bv = &w.branch_vertices;
    if bv.len() != w.kind.branch_count() || bv.iter().any(|&v| v >= n) {
        return false;
    }
    let mut used = vec![false; n];
    for &v in bv {
        if used[v] {
            return false;
        }
        used[v] = true;
    }
    let pairs = w.kind.pairs();
    if w.paths.len() != pairs.len() {
        return false;
    }
    for (path, &(i, j)) in w.paths.iter().zip(&pairs) {
        if path.len() < 2 || path[0] != bv[i] || path[path.len() - 1] != bv[j] {
            return false;
        }
        if path.iter().any(|&v| v >= n) || path.windows(2).any(|e| !g.has_edge(e[0], e[1])) {
            return false;
        }
        for &v in &path[1..path.len() - 1] {
            if used[v] {
                return false;
            }
            used[v] = true;
        }
    }
    true
}
