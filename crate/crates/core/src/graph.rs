//! Simple undirected graphs, products, metrics and DOT I/O.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Undirected graph without loops or parallel edges on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl SimpleGraph {
    /// Builds a graph; duplicate edges are merged, loops and out-of-range endpoints rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges,
            adj,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        self.labels
            .as_ref()
            .map_or_else(|| v.to_string(), |l| l[v].clone())
    }

    /// Same vertex set, only the given edges (which must belong to `self`).
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> SimpleGraph {
        SimpleGraph::new(self.n, edges.iter().copied()).expect("subset of a valid edge set")
    }

    pub fn path(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3);
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// `K_{a,b}` with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        SimpleGraph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.n {
            match &self.labels {
                Some(l) => writeln!(s, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\"")).unwrap(),
                None => writeln!(s, "  {v};").unwrap(),
            }
        }
        for &(u, v) in &self.edges {
            writeln!(s, "  {u} -- {v};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Parses an undirected DOT graph. Node identifiers may be arbitrary tokens; they are
    /// numbered in order of first appearance. `label` attributes become vertex labels.
    pub fn from_dot(text: &str) -> Result<SimpleGraph> {
        let body_start = text
            .find('{')
            .ok_or_else(|| Error::Parse("DOT input has no `{`".into()))?;
        let body_end = text
            .rfind('}')
            .ok_or_else(|| Error::Parse("DOT input has no `}`".into()))?;
        let header = text[..body_start].trim();
        if header.split_whitespace().any(|w| w == "digraph") {
            return Err(Error::Parse("directed graphs are not supported".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut labels: Vec<Option<String>> = Vec::new();
        let mut edges = Vec::new();
        let id = |name: &str, names: &mut Vec<String>, labels: &mut Vec<Option<String>>| -> usize {
            let name = name.trim().trim_matches('"').to_string();
            match names.iter().position(|n| *n == name) {
                Some(i) => i,
                None => {
                    names.push(name);
                    labels.push(None);
                    names.len() - 1
                }
            }
        };
        for stmt in text[body_start + 1..body_end].split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() || stmt.starts_with("//") || stmt.starts_with('#') {
                continue;
            }
            let (core, attrs) = match stmt.find('[') {
                Some(i) => (stmt[..i].trim(), Some(&stmt[i..])),
                None => (stmt, None),
            };
            let lower = core.to_ascii_lowercase();
            if lower.starts_with("graph")
                || lower.starts_with("node")
                || lower.starts_with("edge")
                || core.contains('=')
            {
                continue;
            }
            if core.contains("->") {
                return Err(Error::Parse("directed edge in undirected graph".into()));
            }
            let parts: Vec<&str> = core.split("--").collect();
            let ids: Vec<usize> = parts
                .iter()
                .map(|p| id(p, &mut names, &mut labels))
                .collect();
            if ids.len() == 1 {
                if let Some(label) = attrs.and_then(parse_label) {
                    labels[ids[0]] = Some(label);
                }
            }
            for w in ids.windows(2) {
                edges.push((w[0], w[1]));
            }
        }
        let g = SimpleGraph::new(names.len(), edges)?;
        let labels: Vec<String> = labels
            .into_iter()
            .zip(&names)
            .map(|(l, n)| l.unwrap_or_else(|| n.clone()))
            .collect();
        Ok(g.with_labels(labels))
    }
}

fn parse_label(attrs: &str) -> Option<String> {
    let i = attrs.find("label")?;
    let rest = attrs[i + 5..].trim_start().strip_prefix('=')?.trim_start();
    if let Some(q) = rest.strip_prefix('"') {
        let end = q.find('"')?;
        Some(q[..end].to_string())
    } else {
        Some(rest.split([',', ']', ' ']).next()?.to_string())
    }
}

/// Cartesian product: `(u,v) ~ (u',v)` when `u ~ u'`, and `(u,v) ~ (u,v')` when `v ~ v'`.
/// Vertex `(u, v)` is numbered `u * h.vertex_count() + v`.
pub fn cartesian_product(g: &SimpleGraph, h: &SimpleGraph) -> SimpleGraph {
    let m = h.vertex_count();
    let mut edges = Vec::new();
    for &(a, b) in g.edges() {
        for v in 0..m {
            edges.push((a * m + v, b * m + v));
        }
    }
    for u in 0..g.vertex_count() {
        for &(a, b) in h.edges() {
            edges.push((u * m + a, u * m + b));
        }
    }
    SimpleGraph::new(g.vertex_count() * m, edges).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub connected: bool,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub bipartite: bool,
}

pub fn graph_metrics(g: &SimpleGraph) -> GraphMetrics {
    let n = g.vertex_count();
    let connected = g.components().len() <= 1;
    let mut girth: Option<usize> = None;
    // shortest cycle through each root: BFS and look at non-tree edges
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    girth = Some(girth.map_or(len, |c| c.min(len)));
                }
            }
        }
    }
    let mut color = vec![u8::MAX; n];
    let mut bipartite = true;
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    q.push_back(w);
                } else if color[w] == color[u] {
                    bipartite = false;
                }
            }
        }
    }
    GraphMetrics {
        connected,
        girth,
        bipartite,
    }
}
