//! Acceptance gate: one line per criterion, non-zero exit if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use common::{brute_outerplanar, brute_planar};
use latplan::classify::{
    classify_capped, predicted_planar, truncate_infinite_family, InfiniteFamily, Truncation,
};
use latplan::graph::{cartesian_product, SimpleGraph};
use latplan::group::{is_nilpotent, FamilySpec, FiniteGroup, Subgroup};
use latplan::planarity::{
    is_outerplanar, is_planar, ForbiddenWitness, PlanarityVerdict, WitnessKind,
};
use latplan::suite::{
    default_truncations, product_predicted_planar, Corpus, CorpusEntry, GroupAnalysis, GroupSpec,
};

const RUNTIME_LIMIT: Duration = Duration::from_secs(120);

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        summary: summary.into(),
    }
}

fn prime_factors(mut n: usize) -> BTreeMap<usize, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

fn phi(n: usize) -> usize {
    prime_factors(n).keys().fold(n, |acc, &p| acc / p * (p - 1))
}

fn cyclic_order(spec: &GroupSpec) -> Option<usize> {
    match spec {
        GroupSpec::Family(FamilySpec::Cyclic { n }) => Some(*n),
        _ => None,
    }
}

fn commute(g: &FiniteGroup, x: usize, y: usize) -> bool {
    g.mul(x, y) == g.mul(y, x)
}

fn is_abelian_set(g: &FiniteGroup, s: &[usize]) -> bool {
    s.iter().all(|&x| s.iter().all(|&y| commute(g, x, y)))
}

fn center_of(g: &FiniteGroup, s: &[usize]) -> BTreeSet<usize> {
    s.iter()
        .copied()
        .filter(|&x| s.iter().all(|&y| commute(g, x, y)))
        .collect()
}

/// Names a non-abelian group of order 8 or 16 from its element-order statistics.
fn name_by_orders(g: &FiniteGroup, s: &[usize]) -> String {
    let mut hist = BTreeMap::new();
    for &x in s {
        *hist.entry(g.element_order(x)).or_insert(0usize) += 1;
    }
    let involutions = hist.get(&2).copied().unwrap_or(0);
    let of_order_8 = hist.get(&8).copied().unwrap_or(0);
    match (s.len(), involutions, of_order_8) {
        (8, 1, _) => "Q8".into(),
        (8, 5, _) => "D8".into(),
        (16, 1, 4) => "Q16".into(),
        (16, 5, 4) => "QD16".into(),
        (16, 9, 4) => "D16".into(),
        _ => format!("order {} with {involutions} involutions", s.len()),
    }
}

fn witness_pairs(kind: WitnessKind) -> Vec<(usize, usize)> {
    let complete = |k: usize| {
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect()
    };
    let bipartite = |a: usize, b: usize| {
        (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect()
    };
    match kind {
        WitnessKind::K5 => complete(5),
        WitnessKind::K4 => complete(4),
        WitnessKind::K33 => bipartite(3, 3),
        WitnessKind::K23 => bipartite(2, 3),
    }
}

/// Paths join the right branch vertices, use real edges, and meet only at branch vertices.
fn witness_is_sound(g: &SimpleGraph, w: &ForbiddenWitness) -> bool {
    let pairs = witness_pairs(w.kind);
    let b = &w.branch_vertices;
    let branch: BTreeSet<usize> = b.iter().copied().collect();
    if branch.len() != b.len()
        || w.paths.len() != pairs.len()
        || b.iter().any(|&v| v >= g.vertex_count())
    {
        return false;
    }
    let mut interior_seen = BTreeSet::new();
    for (path, &(i, j)) in w.paths.iter().zip(&pairs) {
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            return false;
        };
        if !((first == b[i] && last == b[j]) || (first == b[j] && last == b[i])) {
            return false;
        }
        if path.windows(2).any(|e| !g.has_edge(e[0], e[1])) {
            return false;
        }
        for &v in &path[1..path.len() - 1] {
            if branch.contains(&v) || !interior_seen.insert(v) {
                return false;
            }
        }
    }
    true
}

fn verdict_sound(g: &SimpleGraph, v: &PlanarityVerdict) -> bool {
    match (&v.embedding, &v.witness) {
        (Some(e), None) => v.planar && e.is_valid_for(g),
        (None, Some(w)) => !v.planar && witness_is_sound(g, w),
        _ => false,
    }
}

struct Analysed {
    spec: GroupSpec,
    a: GroupAnalysis,
}

fn main() {
    let corpus = Corpus::default();
    let mut group_specs = Vec::new();
    let mut product_specs = Vec::new();
    for e in &corpus.entries {
        match e {
            CorpusEntry::Group(s) => group_specs.push(s.clone()),
            CorpusEntry::Product(h, k) => product_specs.push((h.clone(), k.clone())),
            _ => {}
        }
    }

    let start = Instant::now();
    let mut errors = Vec::new();
    let mut groups = Vec::new();
    for spec in &group_specs {
        match spec.build().and_then(|g| GroupAnalysis::new(&g)) {
            Ok(a) => groups.push(Analysed {
                spec: spec.clone(),
                a,
            }),
            Err(e) => errors.push(format!("{spec}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let planar: Vec<&Analysed> = groups.iter().filter(|x| x.a.planarity.planar).collect();

    let mut products = Vec::new();
    for (h, k) in &product_specs {
        let spec = GroupSpec::Product(Box::new(h.clone()), Box::new(k.clone()));
        match spec.build().and_then(|g| GroupAnalysis::new(&g)) {
            Ok(a) => products.push(Analysed { spec, a }),
            Err(e) => errors.push(format!("{spec}: {e}")),
        }
    }

    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();

    // 1
    let disagreements: Vec<String> = groups
        .iter()
        .filter(|x| x.a.planarity.planar != predicted_planar(&x.a.tag))
        .map(|x| format!("{} ({})", x.spec, x.a.tag))
        .collect();
    let negatives = [
        "abelian:2,2,2",
        "abelian:3,3,3",
        "abelian:4,4",
        "symmetric:n=4",
        "dihedral:n=16",
        "abelian:2,4,2",
    ];
    let all_negatives_present = negatives.iter().all(|n| {
        groups
            .iter()
            .any(|x| x.spec.to_string() == *n && !x.a.planarity.planar)
    });
    results.push((
        1,
        "classification agreement",
        outcome(
            disagreements.is_empty() && errors.is_empty() && all_negatives_present && elapsed < RUNTIME_LIMIT,
            format!(
                "{} groups ({} planar), {} disagreements {:?}, {} construction errors, {:.2?} (limit {:?})",
                groups.len(),
                planar.len(),
                disagreements.len(),
                disagreements,
                errors.len(),
                elapsed,
                RUNTIME_LIMIT
            ),
        ),
    ));

    // 2
    let expected_exception = |spec: &GroupSpec| {
        matches!(spec, GroupSpec::Family(FamilySpec::Semidihedral16))
            || cyclic_order(spec).is_some_and(|n| prime_factors(n).len() == 3)
    };
    let mismatched: Vec<String> = planar
        .iter()
        .filter(|x| x.a.hasse.planar == expected_exception(&x.spec))
        .map(|x| x.spec.to_string())
        .collect();
    let exceptions = planar.iter().filter(|x| !x.a.hasse.planar).count();
    results.push((
        2,
        "Hasse-planar exceptions",
        outcome(
            mismatched.is_empty(),
            format!("{exceptions} planar groups fail the bounded test, mismatches {mismatched:?}"),
        ),
    ));

    // 3
    let expected_outer = |spec: &GroupSpec| {
        cyclic_order(spec).is_some_and(|n| {
            let f = prime_factors(n);
            f.len() <= 1 || (f.len() == 2 && f.values().any(|&e| e == 1))
        })
    };
    let outer_mismatch: Vec<String> = groups
        .iter()
        .filter(|x| x.a.outerplanarity.planar != expected_outer(&x.spec))
        .map(|x| x.spec.to_string())
        .collect();
    let k23_for = |label: &str| {
        groups
            .iter()
            .find(|x| x.spec.to_string() == label)
            .is_some_and(|x| {
                let graph = x.a.lattice.subgroup_graph();
                x.a.outerplanarity
                    .witness
                    .as_ref()
                    .is_some_and(|w| w.kind == WitnessKind::K23 && witness_is_sound(&graph, w))
            })
    };
    let special = k23_for("abelian:4,2") && k23_for("cyclic:n=36");
    let outer_count = groups.iter().filter(|x| x.a.outerplanarity.planar).count();
    results.push((
        3,
        "outer-planar list",
        outcome(
            outer_mismatch.is_empty() && special,
            format!(
                "{outer_count} outer-planar groups, mismatches {outer_mismatch:?}, Z4xZ2 and Z36 K(2,3) witnesses valid: {special}"
            ),
        ),
    ));

    // 4
    let mut seen_pairs = BTreeSet::new();
    for x in &planar {
        let g = x.a.group();
        let subs: Vec<Vec<usize>> =
            x.a.lattice
                .subgroups()
                .iter()
                .map(Subgroup::elements)
                .collect();
        let nonabelian: Vec<&Vec<usize>> = subs.iter().filter(|s| !is_abelian_set(g, s)).collect();
        for h in &nonabelian {
            for k in &nonabelian {
                if h.len() < k.len() && h.iter().all(|e| k.contains(e)) {
                    seen_pairs.insert((name_by_orders(g, h), name_by_orders(g, k)));
                }
            }
        }
    }
    let allowed: BTreeSet<(String, String)> = [("D8", "QD16"), ("Q8", "QD16"), ("Q8", "Q16")]
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
    results.push((
        4,
        "nested non-abelian subgroups",
        outcome(seen_pairs == allowed, format!("pairs found {seen_pairs:?}")),
    ));

    // 5
    let mut chain_failures = Vec::new();
    for x in &planar {
        let g = x.a.group();
        let lat = &x.a.lattice;
        let n = g.order();
        let everything: Vec<usize> = (0..n).collect();
        let two_generated =
            n == 1 || (0..n).any(|a| (0..n).any(|b| lat.generated(&[a, b]) == lat.top()));
        let subs: Vec<Vec<usize>> = lat.subgroups().iter().map(Subgroup::elements).collect();
        let proper: Vec<&Vec<usize>> = subs.iter().filter(|s| s.len() < n).collect();
        let maximal: Vec<&&Vec<usize>> = proper
            .iter()
            .filter(|m| {
                !proper
                    .iter()
                    .any(|k| k.len() > m.len() && m.iter().all(|e| k.contains(e)))
            })
            .collect();
        let frattini: BTreeSet<usize> = everything
            .iter()
            .copied()
            .filter(|e| maximal.iter().all(|m| m.contains(e)))
            .collect();
        let z = center_of(g, &everything);
        let nonabelian = !is_abelian_set(g, &everything);
        let center_in_frattini = !nonabelian || z.is_subset(&frattini);
        let mut centralizers_ok = true;
        let mut meet: Option<BTreeSet<usize>> = None;
        for h in subs.iter().filter(|s| !is_abelian_set(g, s)) {
            let c: BTreeSet<usize> = everything
                .iter()
                .copied()
                .filter(|&e| h.iter().all(|&y| commute(g, e, y)))
                .collect();
            let zh = center_of(g, h);
            centralizers_ok &= c == zh;
            meet = Some(match meet {
                None => zh,
                Some(m) => m.intersection(&zh).copied().collect(),
            });
        }
        let meet_ok = meet.is_none_or(|m| m == z);
        if !(two_generated && center_in_frattini && centralizers_ok && meet_ok) {
            chain_failures.push(format!(
                "{}: 2-gen {two_generated}, Z<=Phi {center_in_frattini}, C=Z {centralizers_ok}, meet {meet_ok}",
                x.spec
            ));
        }
    }
    results.push((
        5,
        "chain corollaries",
        outcome(
            chain_failures.is_empty(),
            format!(
                "{} planar groups, failures {chain_failures:?}",
                planar.len()
            ),
        ),
    ));

    // 6
    let mut engel_failures = Vec::new();
    let mut nilpotent_count = 0;
    for x in planar.iter().filter(|x| is_nilpotent(x.a.group())) {
        nilpotent_count += 1;
        let g = x.a.group();
        let n = g.order();
        for e in 0..n {
            let class: BTreeSet<usize> = (0..n).map(|y| g.mul(g.mul(y, e), g.inv(y))).collect();
            let order = g.element_order(e);
            let powers: BTreeSet<usize> = (0..order as u64).map(|k| g.pow(e, k)).collect();
            let normal = class.iter().all(|c| powers.contains(c))
                && (0..n).all(|y| {
                    powers
                        .iter()
                        .all(|&p| powers.contains(&g.mul(g.mul(y, p), g.inv(y))))
                });
            let primes = prime_factors(order);
            let bound = if normal {
                Some(phi(order))
            } else if order == 2 {
                Some(5)
            } else if order == 4 {
                Some(6)
            } else if primes.len() == 1 {
                let (&p, &k) = primes.iter().next().unwrap();
                Some(if k == 1 { p * p - 1 } else { order * (p - 1) })
            } else {
                None
            };
            if bound.is_none_or(|b| class.len() > b) {
                engel_failures.push(format!(
                    "{}: {} order {order} class {} bound {bound:?}",
                    x.spec,
                    g.label(e),
                    class.len()
                ));
            }
        }
    }
    results.push((
        6,
        "conjugacy class bounds",
        outcome(
            engel_failures.is_empty(),
            format!("{nilpotent_count} nilpotent planar groups, failures {engel_failures:?}"),
        ),
    ));

    // 7
    let mut truncation_failures = Vec::new();
    let mut truncation_count = 0;
    let mut tarski_count = 0;
    let mut truncation_graphs: Vec<(SimpleGraph, PlanarityVerdict, PlanarityVerdict)> = Vec::new();
    let mut families = HashSet::new();
    for spec in default_truncations() {
        match truncate_infinite_family(&spec) {
            Ok(Truncation::Group(g)) => {
                truncation_count += 1;
                families.insert(std::mem::discriminant(&spec.family));
                match GroupAnalysis::with_cap(&g, g.order()) {
                    Ok(a) if a.planarity.planar => {
                        let graph = a.lattice.subgroup_graph();
                        truncation_graphs.push((graph, a.planarity, a.outerplanarity));
                    }
                    Ok(_) => truncation_failures.push(format!("{spec} non-planar")),
                    Err(e) => truncation_failures.push(format!("{spec}: {e}")),
                }
            }
            Ok(Truncation::Graph(graph)) => {
                tarski_count += 1;
                let n = graph.vertex_count() - 2;
                let is_k2n = graph.edge_count() == 2 * n
                    && (1..=n).all(|a| graph.has_edge(0, a) && graph.has_edge(a, n + 1));
                let p = is_planar(&graph);
                let o = is_outerplanar(&graph);
                if !(is_k2n && p.planar && o.planar == (n < 3)) {
                    truncation_failures.push(format!(
                        "{spec}: planar {}, outer-planar {}",
                        p.planar, o.planar
                    ));
                }
                truncation_graphs.push((graph, p, o));
            }
            Err(e) => truncation_failures.push(format!("{spec}: {e}")),
        }
    }
    let truncation_levels_ok = families.len() == 5
        && (1..=16).all(|n| {
            default_truncations()
                .iter()
                .any(|s| s.family == InfiniteFamily::Tarski && s.level == n)
        });
    for p in [2usize, 3] {
        let g = FiniteGroup::abelian(&[p, p, p], 64).unwrap();
        let a = GroupAnalysis::new(&g).unwrap();
        if a.planarity.planar {
            truncation_failures.push(format!("Z{p}^3 planar"));
        }
        truncation_graphs.push((a.lattice.subgroup_graph(), a.planarity, a.outerplanarity));
    }
    results.push((
        7,
        "truncations",
        outcome(
            truncation_failures.is_empty() && truncation_levels_ok,
            format!(
                "{truncation_count} group truncations over {} families, {tarski_count} Tarski shapes, 2 controls, failures {truncation_failures:?}",
                families.len()
            ),
        ),
    ));

    // 8
    let mut checked: Vec<(SimpleGraph, PlanarityVerdict, PlanarityVerdict)> = truncation_graphs;
    for x in groups.iter().chain(&products) {
        let graph = x.a.lattice.subgroup_graph();
        checked.push((graph, x.a.planarity.clone(), x.a.outerplanarity.clone()));
        let bounded = x.a.lattice.bounded_graph().0;
        let o = is_outerplanar(&bounded);
        checked.push((bounded, x.a.hasse.clone(), o));
    }
    for (g, h) in [
        (SimpleGraph::path(2), SimpleGraph::path(2)),
        (SimpleGraph::path(3), SimpleGraph::path(4)),
        (SimpleGraph::path(3), SimpleGraph::cycle(5)),
        (SimpleGraph::complete_bipartite(2, 3), SimpleGraph::path(2)),
    ] {
        let prod = cartesian_product(&g, &h);
        let (p, o) = (is_planar(&prod), is_outerplanar(&prod));
        checked.push((prod, p, o));
    }
    let mut witnesses = 0;
    let mut unsound = 0;
    let mut oracle_graphs = 0;
    let mut oracle_disagreements = Vec::new();
    for (graph, p, o) in &checked {
        for v in [p, o] {
            witnesses += usize::from(v.witness.is_some());
            unsound += usize::from(!verdict_sound(graph, v));
        }
        if graph.vertex_count() <= 10 {
            oracle_graphs += 1;
            if p.planar != brute_planar(graph) || o.planar != brute_outerplanar(graph) {
                oracle_disagreements.push(format!("{:?}", graph.edges()));
            }
        }
    }
    results.push((
        8,
        "witness soundness",
        outcome(
            unsound == 0 && oracle_disagreements.is_empty(),
            format!(
                "{witnesses} witnesses, {unsound} unsound certificates; {oracle_graphs} graphs with at most 10 vertices, oracle disagreements {oracle_disagreements:?}"
            ),
        ),
    ));

    // 9
    let mut product_mismatches = Vec::new();
    for x in &products {
        let tag = classify_capped(x.a.group(), 200).unwrap_or(x.a.tag);
        if x.a.planarity.planar != product_predicted_planar(&tag) {
            product_mismatches.push(format!(
                "{} is {} but tagged {tag}",
                x.spec,
                if x.a.planarity.planar {
                    "planar"
                } else {
                    "non-planar"
                }
            ));
        }
    }
    let cartesian_ok = is_planar(&cartesian_product(
        &SimpleGraph::path(3),
        &SimpleGraph::path(4),
    ))
    .planar
        && is_planar(&cartesian_product(
            &SimpleGraph::path(3),
            &SimpleGraph::cycle(5),
        ))
        .planar
        && !is_planar(&cartesian_product(
            &SimpleGraph::complete_bipartite(2, 3),
            &SimpleGraph::path(2),
        ))
        .planar;
    results.push((
        9,
        "product criterion",
        outcome(
            product_mismatches.is_empty() && cartesian_ok,
            format!(
                "{} products, {} mismatches {product_mismatches:?}; graph products as expected: {cartesian_ok}",
                products.len(),
                product_mismatches.len()
            ),
        ),
    ));

    let mut failed = 0;
    for (id, title, o) in &results {
        let status = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        println!("criterion {id} {status} {title}: {}", o.summary);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
