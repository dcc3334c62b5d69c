//! Left-right planarity test with combinatorial embedding.
//!
//! Every phase (orientation, testing, embedding, sign resolution) runs on explicit
//! stacks, so deep DFS trees do not touch the call stack.

use std::collections::HashMap;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State {
    n: usize,
    /// (neighbor, edge id) per vertex
    inc: Vec<Vec<(usize, usize)>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    /// outgoing edges in orientation order
    out: Vec<Vec<usize>>,
    ordered: Vec<Vec<usize>>,
    roots: Vec<usize>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
}

/// Half-edge rotation under construction: per vertex, neighbor -> (cw, ccw).
struct HalfEdges {
    links: Vec<HashMap<usize, (usize, usize)>>,
    first: Vec<Option<usize>>,
}

impl HalfEdges {
    fn new(n: usize) -> Self {
        HalfEdges {
            links: vec![HashMap::new(); n],
            first: vec![None; n],
        }
    }

    fn add_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let Some(r) = reference else {
            self.links[start].insert(end, (end, end));
            self.first[start] = Some(end);
            return;
        };
        let links = &mut self.links[start];
        let cw_ref = links[&r].0;
        links.get_mut(&r).unwrap().0 = end;
        links.insert(end, (cw_ref, r));
        links.get_mut(&cw_ref).unwrap().1 = end;
    }

    fn add_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(start, end, None),
            Some(r) => {
                let ccw_ref = self.links[start][&r].1;
                self.add_cw(start, end, Some(ccw_ref));
                if self.first[start] == Some(r) {
                    self.first[start] = Some(end);
                }
            }
        }
    }

    fn add_first(&mut self, start: usize, end: usize) {
        let reference = self.first[start];
        self.add_ccw(start, end, reference);
    }

    fn rotation(&self) -> Vec<Vec<usize>> {
        (0..self.links.len())
            .map(|v| {
                let mut cyc = Vec::new();
                if let Some(f) = self.first[v] {
                    let mut w = f;
                    loop {
                        cyc.push(w);
                        w = self.links[v][&w].0;
                        if w == f {
                            break;
                        }
                    }
                }
                cyc
            })
            .collect()
    }
}

/// Runs the test on a simple graph given by vertex count and edge list. Returns the
/// clockwise rotation system when the graph is planar and `want_embedding` is set,
/// `Some(vec![])` when planar without an embedding requested, and `None` otherwise.
pub(crate) fn lr_planarity(
    n: usize,
    edges: &[(usize, usize)],
    want_embedding: bool,
) -> Option<Vec<Vec<usize>>> {
    let m = edges.len();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut inc = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        inc[u].push((v, id));
        inc[v].push((u, id));
    }
    for list in &mut inc {
        list.sort_unstable();
    }
    let mut s = State {
        n,
        inc,
        src: vec![NONE; m],
        dst: vec![NONE; m],
        oriented: vec![false; m],
        height: vec![NONE; n],
        parent_edge: vec![None; n],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting: vec![0; m],
        out: vec![Vec::new(); n],
        ordered: Vec::new(),
        roots: Vec::new(),
        reference: vec![None; m],
        side: vec![1; m],
        stack: Vec::new(),
        stack_bottom: vec![0; m],
        lowpt_edge: vec![None; m],
    };
    s.orient_all();
    s.ordered = s.sorted_out();
    if !s.test_all() {
        return None;
    }
    if !want_embedding {
        return Some(Vec::new());
    }
    for e in 0..m {
        s.nesting[e] *= s.sign(e);
    }
    s.ordered = s.sorted_out();
    Some(s.embed())
}

impl State {
    fn sorted_out(&self) -> Vec<Vec<usize>> {
        self.out
            .iter()
            .map(|list| {
                let mut l = list.clone();
                l.sort_by_key(|&e| self.nesting[e]);
                l
            })
            .collect()
    }

    fn orient_all(&mut self) {
        let mut ind = vec![0usize; self.n];
        let mut skip_init = vec![false; self.src.len()];
        for root in 0..self.n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            self.roots.push(root);
            let mut dfs = vec![root];
            while let Some(v) = dfs.pop() {
                let e = self.parent_edge[v];
                while ind[v] < self.inc[v].len() {
                    let (w, ei) = self.inc[v][ind[v]];
                    if !skip_init[ei] {
                        if self.oriented[ei] {
                            ind[v] += 1;
                            continue;
                        }
                        self.oriented[ei] = true;
                        self.src[ei] = v;
                        self.dst[ei] = w;
                        self.out[v].push(ei);
                        self.lowpt[ei] = self.height[v];
                        self.lowpt2[ei] = self.height[v];
                        if self.height[w] == NONE {
                            // tree edge: descend, come back to v afterwards
                            self.parent_edge[w] = Some(ei);
                            self.height[w] = self.height[v] + 1;
                            dfs.push(v);
                            dfs.push(w);
                            skip_init[ei] = true;
                            break;
                        }
                        self.lowpt[ei] = self.height[w];
                    }
                    self.nesting[ei] = 2 * self.lowpt[ei] as i64;
                    if self.lowpt2[ei] < self.height[v] {
                        self.nesting[ei] += 1;
                    }
                    if let Some(e) = e {
                        if self.lowpt[ei] < self.lowpt[e] {
                            self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[ei]);
                            self.lowpt[e] = self.lowpt[ei];
                        } else if self.lowpt[ei] > self.lowpt[e] {
                            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[ei]);
                        } else {
                            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[ei]);
                        }
                    }
                    ind[v] += 1;
                }
            }
        }
    }

    fn test_all(&mut self) -> bool {
        let mut ind = vec![0usize; self.n];
        let mut skip_init = vec![false; self.src.len()];
        let roots = self.roots.clone();
        for root in roots {
            let mut dfs = vec![root];
            while let Some(v) = dfs.pop() {
                let e = self.parent_edge[v];
                let mut descended = false;
                while ind[v] < self.ordered[v].len() {
                    let ei = self.ordered[v][ind[v]];
                    let w = self.dst[ei];
                    if !skip_init[ei] {
                        self.stack_bottom[ei] = self.stack.len();
                        if self.parent_edge[w] == Some(ei) {
                            dfs.push(v);
                            dfs.push(w);
                            skip_init[ei] = true;
                            descended = true;
                            break;
                        }
                        self.lowpt_edge[ei] = Some(ei);
                        self.stack.push(ConflictPair {
                            left: Interval::default(),
                            right: Interval {
                                low: Some(ei),
                                high: Some(ei),
                            },
                        });
                    }
                    if self.lowpt[ei] < self.height[v] {
                        let e = e.expect("edges returning below a root do not exist");
                        if ind[v] == 0 {
                            self.lowpt_edge[e] = self.lowpt_edge[ei];
                        } else if !self.add_constraints(ei, e) {
                            return false;
                        }
                    }
                    ind[v] += 1;
                }
                if !descended {
                    if let Some(e) = e {
                        self.remove_back_edges(e);
                    }
                }
            }
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && matches!(i.high, Some(h) if self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => unreachable!("empty conflict pair on the stack"),
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("ei has a return edge");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.reference[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("e has a return edge");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut stack = vec![e];
        let mut old_ref: HashMap<usize, usize> = HashMap::new();
        while let Some(f) = stack.pop() {
            match self.reference[f] {
                Some(r) => {
                    stack.push(f);
                    stack.push(r);
                    old_ref.insert(f, r);
                    self.reference[f] = None;
                }
                None => {
                    if let Some(&r) = old_ref.get(&f) {
                        self.side[f] *= self.side[r];
                    }
                }
            }
        }
        self.side[e]
    }

    fn embed(&self) -> Vec<Vec<usize>> {
        let mut half = HalfEdges::new(self.n);
        for v in 0..self.n {
            let mut previous = None;
            for &ei in &self.ordered[v] {
                let w = self.dst[ei];
                half.add_cw(v, w, previous);
                previous = Some(w);
            }
        }
        let mut left_ref = vec![NONE; self.n];
        let mut right_ref = vec![NONE; self.n];
        let mut ind = vec![0usize; self.n];
        for &root in &self.roots {
            let mut dfs = vec![root];
            while let Some(v) = dfs.pop() {
                while ind[v] < self.ordered[v].len() {
                    let ei = self.ordered[v][ind[v]];
                    ind[v] += 1;
                    let w = self.dst[ei];
                    if self.parent_edge[w] == Some(ei) {
                        half.add_first(w, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    }
                    if self.side[ei] == 1 {
                        half.add_cw(w, v, Some(right_ref[w]));
                    } else {
                        half.add_ccw(w, v, Some(left_ref[w]));
                        left_ref[w] = v;
                    }
                }
            }
        }
        half.rotation()
    }
}
