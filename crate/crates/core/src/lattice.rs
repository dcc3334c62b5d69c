//! Subgroup lattices: enumeration, covering relation, subgroup graph.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::{cyclic_subgroups, FiniteGroup, Subgroup, LATTICE_CAP};

/// All subgroups of a group with their covering relation.
///
/// Subgroups are sorted by order, then by their member lists; this numbering is used
/// for every graph, witness and report derived from the lattice.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: FiniteGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<BitSet, usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    /// lattice index of <x> per element
    cyclic_of: Vec<usize>,
    /// column per element: position of <x> among the cyclic subgroups
    column_of: Vec<usize>,
    /// `cyclic_join[h][c]` = lattice index of the join of subgroup h with cyclic column c
    cyclic_join: Vec<Vec<u32>>,
}

struct Node {
    subgroup: Subgroup,
    gens: Vec<usize>,
}

/// Enumerates the subgroup lattice under the default order cap.
pub fn all_subgroups(g: &FiniteGroup) -> Result<SubgroupLattice> {
    all_subgroups_capped(g, LATTICE_CAP)
}

/// Enumeration starts from the cyclic subgroups and joins every subgroup found with
/// every cyclic subgroup until nothing new appears. Every subgroup is a join of cyclic
/// subgroups, so this reaches all of them; the upper covers of `H` are the minimal
/// members of `{<H, x>}`.
pub fn all_subgroups_capped(g: &FiniteGroup, cap: usize) -> Result<SubgroupLattice> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap,
        });
    }
    let cyclics = cyclic_subgroups(g);
    let mut column_of = vec![usize::MAX; g.order()];
    for (c, (_, sub)) in cyclics.iter().enumerate() {
        for x in sub.members().iter() {
            // x lies in many cyclic subgroups; keep the one it generates
            if g.element_order(x) == sub.order() {
                column_of[x] = c;
            }
        }
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut found: HashMap<BitSet, usize> = HashMap::new();
    let trivial = g.trivial_subgroup();
    found.insert(trivial.members().clone(), 0);
    nodes.push(Node {
        subgroup: trivial,
        gens: Vec::new(),
    });
    let mut joins: Vec<Vec<u32>> = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        let mut row = Vec::with_capacity(cyclics.len());
        for (x, c) in &cyclics {
            let h = &nodes[head];
            if c.is_subset(&h.subgroup) {
                row.push(head as u32);
                continue;
            }
            let k = g.extend(&h.subgroup, &h.gens, &[*x]);
            let id = match found.get(k.members()) {
                Some(&id) => id,
                None => {
                    let mut gens = h.gens.clone();
                    gens.push(*x);
                    let id = nodes.len();
                    found.insert(k.members().clone(), id);
                    nodes.push(Node { subgroup: k, gens });
                    id
                }
            };
            row.push(id as u32);
        }
        joins.push(row);
        head += 1;
    }

    // canonical numbering
    let mut perm: Vec<usize> = (0..nodes.len()).collect();
    perm.sort_by(|&a, &b| {
        let (x, y) = (&nodes[a].subgroup, &nodes[b].subgroup);
        x.order()
            .cmp(&y.order())
            .then_with(|| x.members().cmp_members(y.members()))
    });
    let mut rank = vec![0usize; nodes.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let subgroups: Vec<Subgroup> = perm
        .iter()
        .map(|&old| nodes[old].subgroup.clone())
        .collect();
    let cyclic_join: Vec<Vec<u32>> = perm
        .iter()
        .map(|&old| {
            joins[old]
                .iter()
                .map(|&j| rank[j as usize] as u32)
                .collect()
        })
        .collect();
    let index: HashMap<BitSet, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members().clone(), i))
        .collect();
    let bottom = 0;
    let cyclic_of: Vec<usize> = (0..g.order())
        .map(|x| cyclic_join[bottom][column_of[x]] as usize)
        .collect();

    let n = subgroups.len();
    let mut upper = vec![Vec::new(); n];
    let mut lower = vec![Vec::new(); n];
    let mut covers = Vec::new();
    for h in 0..n {
        let mut cands: Vec<usize> = cyclic_join[h]
            .iter()
            .map(|&j| j as usize)
            .filter(|&j| j != h)
            .collect();
        cands.sort_unstable();
        cands.dedup();
        for &k in &cands {
            let minimal = cands
                .iter()
                .all(|&m| m == k || !subgroups[m].is_subset(&subgroups[k]));
            if minimal {
                upper[h].push(k);
                lower[k].push(h);
                covers.push((h, k));
            }
        }
    }
    covers.sort_unstable();
    for l in &mut lower {
        l.sort_unstable();
    }

    Ok(SubgroupLattice {
        group: g.clone(),
        subgroups,
        index,
        covers,
        upper,
        lower,
        cyclic_of,
        column_of,
        cyclic_join,
    })
}

impl SubgroupLattice {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Pairs `(i, j)` with subgroup `i` maximal in subgroup `j`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.members()).copied()
    }

    /// Lattice index of `<x>`.
    pub fn cyclic_index(&self, x: usize) -> usize {
        self.cyclic_of[x]
    }

    /// Lattice index of the subgroup generated by subgroup `h` and element `x`.
    pub fn join_element(&self, h: usize, x: usize) -> usize {
        self.cyclic_join[h][self.column_of[x]] as usize
    }

    /// Lattice index of `<gens>`.
    pub fn generated(&self, gens: &[usize]) -> usize {
        gens.iter()
            .fold(self.bottom(), |h, &x| self.join_element(h, x))
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.subgroups[i], &self.subgroups[j]);
        (i.max(j)..self.len())
            .find(|&k| a.is_subset(&self.subgroups[k]) && b.is_subset(&self.subgroups[k]))
            .expect("the whole group bounds every pair")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.subgroups[i]
            .members()
            .intersection(self.subgroups[j].members());
        self.index[&m]
    }

    /// Intersection of the maximal subgroups; the whole group when there are none.
    pub fn frattini(&self) -> Subgroup {
        let top = self.top();
        let mut maximal = self.lower[top].iter();
        match maximal.next() {
            None => self.subgroups[top].clone(),
            Some(&first) => {
                let m = maximal.fold(self.subgroups[first].members().clone(), |acc, &k| {
                    acc.intersection(self.subgroups[k].members())
                });
                Subgroup::from_members(m)
            }
        }
    }

    /// The Hasse diagram of the lattice as an undirected graph, labelled by subgroup order.
    pub fn subgroup_graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.len(), self.covers.iter().copied())
            .expect("covers are valid edges")
            .with_labels(
                self.subgroups
                    .iter()
                    .map(|s| s.order().to_string())
                    .collect(),
            )
    }

    /// The subgroup graph plus a bottom-top edge. The flag reports that the edge was
    /// already present (groups of prime order) and so nothing was added.
    pub fn bounded_graph(&self) -> (SimpleGraph, bool) {
        let base = self.subgroup_graph();
        let (b, t) = (self.bottom(), self.top());
        if b == t || base.has_edge(b, t) {
            return (base, b != t);
        }
        let labels = base.labels().map(<[String]>::to_vec).unwrap_or_default();
        let g = SimpleGraph::new(self.len(), self.covers.iter().copied().chain([(b, t)]))
            .expect("valid edges")
            .with_labels(labels);
        (g, false)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            subgroups: self.subgroups.iter().map(Subgroup::elements).collect(),
            covers: self.covers.iter().map(|&(i, j)| [i, j]).collect(),
            bottom: self.bottom(),
            top: self.top(),
        }
    }

    /// DOT rendering of the subgroup graph with subgroup orders as labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph subgroups {\n");
        for (i, h) in self.subgroups.iter().enumerate() {
            writeln!(s, "  {i} [label=\"{}\"];", h.order()).unwrap();
        }
        for &(i, j) in &self.covers {
            writeln!(s, "  {i} -- {j};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Serialized lattice: member lists, cover pairs, and the bottom and top indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub subgroups: Vec<Vec<usize>>,
    pub covers: Vec<[usize; 2]>,
    pub bottom: usize,
    pub top: usize,
}
