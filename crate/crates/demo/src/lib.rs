//! Browser bindings for drawing subgroup lattices and checking their planarity.
//!
//! Each export takes a short text spec and returns a JSON document; errors come back
//! as a thrown string. The `*_json` functions hold the logic and run natively.

use latplan::classify::{truncate_infinite_family, InfiniteFamilySpec, Truncation, TRUNCATION_CAP};
use latplan::graph::{cartesian_product, SimpleGraph};
use latplan::planarity::{is_outerplanar, is_planar, ForbiddenWitness};
use latplan::suite::{GroupAnalysis, GroupSpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Node {
    id: usize,
    label: String,
    /// Subgroup order, or the layer of a lattice shape.
    rank: usize,
}

#[derive(Serialize)]
struct Drawing {
    name: String,
    nodes: Vec<Node>,
    edges: Vec<[usize; 2]>,
    planar: bool,
    outerplanar: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    hasse_planar: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ForbiddenWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outerplanar_witness: Option<ForbiddenWitness>,
}

fn to_json(d: &Drawing) -> String {
    serde_json::to_string(d).expect("drawing serializes")
}

fn edges_of(g: &SimpleGraph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(a, b)| [a, b]).collect()
}

fn group_drawing(a: &GroupAnalysis) -> Drawing {
    let graph = a.lattice.subgroup_graph();
    let nodes = a
        .lattice
        .subgroups()
        .iter()
        .enumerate()
        .map(|(id, s)| Node {
            id,
            label: s.order().to_string(),
            rank: s.order(),
        })
        .collect();
    Drawing {
        name: a.label.clone(),
        nodes,
        edges: edges_of(&graph),
        planar: a.planarity.planar,
        outerplanar: a.outerplanarity.planar,
        hasse_planar: Some(a.hasse.planar),
        order: Some(a.group().order()),
        family: Some(a.tag.to_string()),
        witness: a.planarity.witness.clone(),
        outerplanar_witness: a.outerplanarity.witness.clone(),
    }
}

fn graph_drawing(name: String, g: &SimpleGraph, ranks: Vec<usize>) -> Drawing {
    let p = is_planar(g);
    let o = is_outerplanar(g);
    Drawing {
        name,
        nodes: (0..g.vertex_count())
            .map(|id| Node {
                id,
                label: g.label(id),
                rank: ranks[id],
            })
            .collect(),
        edges: edges_of(g),
        planar: p.planar,
        outerplanar: o.planar,
        hasse_planar: None,
        order: None,
        family: None,
        witness: p.witness,
        outerplanar_witness: o.witness,
    }
}

/// Lattice and verdicts for a group spec such as `qd16`, `cyclic:n=30`,
/// `abelian:4,2` or `dihedral:n=8 x cyclic:n=3`.
pub fn analyze_group_json(spec: &str) -> Result<String, String> {
    let g = GroupSpec::parse(spec.trim())
        .and_then(|s| s.build())
        .map_err(|e| e.to_string())?;
    let a = GroupAnalysis::new(&g).map_err(|e| e.to_string())?;
    Ok(to_json(&group_drawing(&a)))
}

/// Parses `P<n>` (path), `C<n>` (cycle), `K<n>` (complete) or `K<a>,<b>`.
pub fn small_graph(text: &str) -> Result<SimpleGraph, String> {
    let t = text.trim();
    let bad = || format!("unknown graph '{t}', expected P<n>, C<n>, K<n> or K<a>,<b>");
    let (kind, rest) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let rest = rest.trim_matches(|c| c == '(' || c == ')');
    let g = match kind.to_ascii_uppercase().as_str() {
        "P" => SimpleGraph::path(num(rest)?),
        "C" if num(rest)? >= 3 => SimpleGraph::cycle(num(rest)?),
        "K" => match rest.split_once(',') {
            Some((a, b)) => SimpleGraph::complete_bipartite(num(a)?, num(b)?),
            None => SimpleGraph::complete(num(rest)?),
        },
        _ => return Err(bad()),
    };
    if g.vertex_count() > 40 {
        return Err(format!(
            "graph '{t}' is too large for the demo (at most 40 vertices)"
        ));
    }
    Ok(g)
}

/// Cartesian product of two small graphs and its planarity.
pub fn cartesian_json(left: &str, right: &str) -> Result<String, String> {
    let (g, h) = (small_graph(left)?, small_graph(right)?);
    let product = cartesian_product(&g, &h);
    let ranks = (0..product.vertex_count())
        .map(|v| v / h.vertex_count())
        .collect();
    let name = format!("{} x {}", left.trim(), right.trim());
    Ok(to_json(&graph_drawing(name, &product, ranks)))
}

/// A finite level of an infinite family, e.g. `prufer:p=2,level=4` or `tarski:level=5`.
pub fn truncation_json(spec: &str) -> Result<String, String> {
    let spec = InfiniteFamilySpec::parse(spec.trim()).map_err(|e| e.to_string())?;
    match truncate_infinite_family(&spec).map_err(|e| e.to_string())? {
        Truncation::Group(g) => {
            let a = GroupAnalysis::with_cap(&g, TRUNCATION_CAP).map_err(|e| e.to_string())?;
            Ok(to_json(&group_drawing(&a)))
        }
        Truncation::Graph(g) => {
            let top = g.vertex_count() - 1;
            let ranks = (0..=top)
                .map(|v| {
                    if v == 0 {
                        0
                    } else if v == top {
                        2
                    } else {
                        1
                    }
                })
                .collect();
            Ok(to_json(&graph_drawing(spec.to_string(), &g, ranks)))
        }
    }
}

#[wasm_bindgen(js_name = analyzeGroup)]
pub fn analyze_group(spec: &str) -> Result<String, JsValue> {
    analyze_group_json(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = cartesianProduct)]
pub fn cartesian(left: &str, right: &str) -> Result<String, JsValue> {
    cartesian_json(left, right).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = truncateFamily)]
pub fn truncate(spec: &str) -> Result<String, JsValue> {
    truncation_json(spec).map_err(|e| JsValue::from_str(&e))
}
