//! Test-side oracles that share no code with the library algorithms.
#![allow(dead_code)]

use latplan::graph::SimpleGraph;

/// Adjacency matrix view used by the brute-force searches.
struct Dense {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Dense {
    fn of(g: &SimpleGraph) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Dense { n, adj }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    /// Can every pair be joined by paths that are internally disjoint from each other
    /// and from the branch vertices?
    fn route(&self, pairs: &[(usize, usize)], blocked: &mut Vec<bool>) -> bool {
        let Some((&(a, b), rest)) = pairs.split_first() else {
            return true;
        };
        self.extend_path(a, b, rest, blocked)
    }

    fn extend_path(
        &self,
        cur: usize,
        target: usize,
        rest: &[(usize, usize)],
        blocked: &mut Vec<bool>,
    ) -> bool {
        if self.adj[cur][target] && self.route(rest, blocked) {
            return true;
        }
        for next in 0..self.n {
            if self.adj[cur][next] && !blocked[next] {
                blocked[next] = true;
                if self.extend_path(next, target, rest, blocked) {
                    return true;
                }
                blocked[next] = false;
            }
        }
        false
    }

    fn has_subdivision(&self, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
        let mut blocked = vec![false; self.n];
        for &b in branch {
            blocked[b] = true;
        }
        let real: Vec<(usize, usize)> =
            pairs.iter().map(|&(i, j)| (branch[i], branch[j])).collect();
        self.route(&real, &mut blocked)
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in &mut out {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

fn complete_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect()
}

fn bipartite_pairs(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .collect()
}

/// Does `g` contain a subdivision of `K_k` (all branch vertices of degree >= k-1)?
fn has_complete_subdivision(d: &Dense, k: usize) -> bool {
    let cand: Vec<usize> = (0..d.n).filter(|&v| d.degree(v) >= k - 1).collect();
    let pairs = complete_pairs(k);
    subsets(&cand, k)
        .iter()
        .any(|b| d.has_subdivision(b, &pairs))
}

/// Does `g` contain a subdivision of `K_{a,b}`? Side A has degree >= b, side B >= a.
fn has_bipartite_subdivision(d: &Dense, a: usize, b: usize) -> bool {
    let pairs = bipartite_pairs(a, b);
    let side_a: Vec<usize> = (0..d.n).filter(|&v| d.degree(v) >= b).collect();
    let side_b: Vec<usize> = (0..d.n).filter(|&v| d.degree(v) >= a).collect();
    for sa in subsets(&side_a, a) {
        let rest: Vec<usize> = side_b.iter().copied().filter(|v| !sa.contains(v)).collect();
        for sb in subsets(&rest, b) {
            if a == b && sb[0] < sa[0] {
                continue;
            }
            let branch: Vec<usize> = sa.iter().chain(&sb).copied().collect();
            if d.has_subdivision(&branch, &pairs) {
                return true;
            }
        }
    }
    false
}

/// Kuratowski: planar iff no subdivision of K5 or K3,3.
pub fn brute_planar(g: &SimpleGraph) -> bool {
    let d = Dense::of(g);
    !has_complete_subdivision(&d, 5) && !has_bipartite_subdivision(&d, 3, 3)
}

/// Chartrand-Harary: outer-planar iff no subdivision of K4 or K2,3.
pub fn brute_outerplanar(g: &SimpleGraph) -> bool {
    let d = Dense::of(g);
    !has_complete_subdivision(&d, 4) && !has_bipartite_subdivision(&d, 2, 3)
}

/// Graph from a bit mask over the pairs `(i, j)`, `i < j`, in row order.
pub fn graph_from_mask(n: usize, mask: &[bool]) -> SimpleGraph {
    let pairs = complete_pairs(n);
    SimpleGraph::new(
        n,
        pairs
            .into_iter()
            .zip(mask)
            .filter(|(_, &b)| b)
            .map(|(p, _)| p),
    )
    .unwrap()
}

/// Number of subgroups of the elementary abelian group of order p^n, by counting
/// subspaces of each dimension (Gaussian binomials).
pub fn elementary_abelian_subgroup_count(p: usize, n: u32) -> usize {
    let pw = |e: u32| p.pow(e);
    (0..=n)
        .map(|k| {
            let mut num = 1usize;
            let mut den = 1usize;
            for i in 0..k {
                num *= pw(n - i) - 1;
                den *= pw(i + 1) - 1;
            }
            num / den
        })
        .sum()
}

/// Subgroup membership lists by brute force: closure of every subset of generators of
/// size <= 3 (enough for the small groups it is used on).
pub fn subgroups_by_closure(
    order: usize,
    mul: impl Fn(usize, usize) -> usize,
    identity: usize,
) -> Vec<Vec<usize>> {
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut set = vec![identity];
        let mut i = 0;
        while i < set.len() {
            for &s in gens {
                let p = mul(set[i], s);
                if !set.contains(&p) {
                    set.push(p);
                }
            }
            i += 1;
        }
        set.sort_unstable();
        set
    };
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..order {
        for b in a..order {
            for c in b..order {
                let s = close(&[a, b, c]);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}
