use crate::bitset::BitSet;
use crate::classify::{
    classify_capped, predicted_not_hasse_planar, predicted_outerplanar, predicted_planar,
    truncate_capped, FamilyTag, InfiniteFamilySpec, Truncation, TRUNCATION_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, SimpleGraph};
use crate::group::{
    center, centralizer_of_subgroup, factorize, is_nilpotent, min_generating_set, FiniteGroup,
    Subgroup, LATTICE_CAP,
};
use crate::lattice::{all_subgroups_capped, SubgroupLattice};
use crate::planarity::{
    is_outerplanar, is_planar, validate_witness, ForbiddenWitness, PlanarityVerdict,
};

use super::report::CheckResult;

/// Largest order for the exhaustive triple search.
pub const K33_SEARCH_CAP: usize = 64;

/// Lattice, classification and the three planarity verdicts of one group.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub label: String,
    pub lattice: SubgroupLattice,
    pub tag: FamilyTag,
    /// Planarity of the subgroup graph.
    pub planarity: PlanarityVerdict,
    pub outerplanarity: PlanarityVerdict,
    /// Planarity of the subgroup graph with a bottom-top edge.
    pub hasse: PlanarityVerdict,
    /// Bottom and top were already adjacent (prime order), so the bounded graph is the
    /// subgroup graph itself.
    pub bottom_top_adjacent: bool,
}

impl GroupAnalysis {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        GroupAnalysis::with_cap(g, LATTICE_CAP)
    }

    pub fn with_cap(g: &FiniteGroup, cap: usize) -> Result<Self> {
        let lattice = all_subgroups_capped(g, cap)?;
        let tag = classify_capped(g, cap)?;
        let graph = lattice.subgroup_graph();
        let planarity = is_planar(&graph);
        let outerplanarity = is_outerplanar(&graph);
        let (bounded, bottom_top_adjacent) = lattice.bounded_graph();
        let hasse = if planarity.planar {
            is_planar(&bounded)
        } else {
            PlanarityVerdict {
                planar: false,
                embedding: None,
                witness: planarity.witness.clone(),
            }
        };
        Ok(GroupAnalysis {
            label: g.source_spec().unwrap_or("group").to_string(),
            lattice,
            tag,
            planarity,
            outerplanarity,
            hasse,
            bottom_top_adjacent,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }

    /// Every emitted forbidden subdivision paired with the graph it refers to.
    pub fn witnesses(&self) -> Vec<(SimpleGraph, &ForbiddenWitness)> {
        let graph = self.lattice.subgroup_graph();
        let bounded = self.lattice.bounded_graph().0;
        let mut out = Vec::new();
        if let Some(w) = &self.planarity.witness {
            out.push((graph.clone(), w));
        }
        if let Some(w) = &self.outerplanarity.witness {
            out.push((graph, w));
        }
        if let Some(w) = &self.hasse.witness {
            out.push((bounded, w));
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "planar"
    } else {
        "non-planar"
    }
}

fn witness_note(v: &PlanarityVerdict) -> String {
    match &v.witness {
        Some(w) => format!(
            ", {:?} subdivision on vertices {:?}",
            w.kind, w.branch_vertices
        ),
        None => String::new(),
    }
}

pub fn check_planarity_agreement(a: &GroupAnalysis) -> CheckResult {
    let predicted = predicted_planar(&a.tag);
    let actual = a.planarity.planar;
    CheckResult::new(
        "planarity_agreement",
        &a.label,
        predicted == actual,
        format!(
            "{} subgroups, {}; tag {} predicts {}{}",
            a.lattice.len(),
            yes_no(actual),
            a.tag,
            yes_no(predicted),
            witness_note(&a.planarity)
        ),
    )
}

pub fn check_outerplanar_agreement(a: &GroupAnalysis) -> CheckResult {
    let predicted = predicted_outerplanar(&a.tag);
    let actual = a.outerplanarity.planar;
    let witness_ok = a
        .outerplanarity
        .witness
        .as_ref()
        .is_none_or(|w| validate_witness(&a.lattice.subgroup_graph(), w));
    CheckResult::new(
        "outerplanar_agreement",
        &a.label,
        predicted == actual && witness_ok,
        format!(
            "outer-planar {actual}, predicted {predicted}{}{}",
            witness_note(&a.outerplanarity),
            if witness_ok { "" } else { " (witness invalid)" }
        ),
    )
}

pub fn check_hasse_status(a: &GroupAnalysis) -> Result<CheckResult> {
    if !predicted_planar(&a.tag) {
        return Err(Error::NotPlanarGroup(a.label.clone()));
    }
    let expected = !predicted_not_hasse_planar(&a.tag);
    let actual = a.hasse.planar;
    let note = if a.bottom_top_adjacent {
        " (bottom and top already adjacent)"
    } else {
        ""
    };
    Ok(CheckResult::new(
        "hasse_status",
        &a.label,
        expected == actual,
        format!(
            "bounded graph {}, expected {}{note}{}",
            yes_no(actual),
            yes_no(expected),
            witness_note(&a.hasse)
        ),
    ))
}

/// A pair `H < K` of non-abelian subgroups, with both named up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedPair {
    pub sub: String,
    pub sup: String,
    pub sub_index: usize,
    pub sup_index: usize,
}

fn subgroup_is_abelian(g: &FiniteGroup, h: &Subgroup) -> bool {
    let e = h.elements();
    e.iter()
        .enumerate()
        .all(|(i, &x)| e[i + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

fn subgroup_center(g: &FiniteGroup, h: &Subgroup) -> BitSet {
    let e = h.elements();
    let mut z = BitSet::new(g.order());
    for &x in &e {
        if e.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
            z.insert(x);
        }
    }
    z
}

fn isomorphism_name(g: &FiniteGroup) -> Result<String> {
    Ok(match classify_capped(g, g.order().max(1))? {
        FamilyTag::Modular { p: 2, m: 3 } => "D8".into(),
        FamilyTag::NotInList => format!("unlisted group of order {}", g.order()),
        tag => tag.name().to_string(),
    })
}

/// All pairs of non-abelian subgroups `H < K` of the lattice's group.
pub fn nested_nonabelian_pairs(lattice: &SubgroupLattice) -> Result<Vec<NestedPair>> {
    let g = lattice.group();
    let nonabelian: Vec<usize> = (0..lattice.len())
        .filter(|&i| !subgroup_is_abelian(g, lattice.subgroup(i)))
        .collect();
    let mut names = Vec::with_capacity(nonabelian.len());
    for &i in &nonabelian {
        names.push(isomorphism_name(&g.subgroup_as_group(lattice.subgroup(i)))?);
    }
    let mut out = Vec::new();
    for (a, &i) in nonabelian.iter().enumerate() {
        for (b, &j) in nonabelian.iter().enumerate() {
            let (h, k) = (lattice.subgroup(i), lattice.subgroup(j));
            if i != j && h.is_subset(k) {
                out.push(NestedPair {
                    sub: names[a].clone(),
                    sup: names[b].clone(),
                    sub_index: i,
                    sup_index: j,
                });
            }
        }
    }
    Ok(out)
}

pub fn allowed_nested_pair(sub: &str, sup: &str) -> bool {
    matches!((sub, sup), ("Q8", "Q16") | ("D8", "QD16") | ("Q8", "QD16"))
}

pub fn check_nested_nonabelian(a: &GroupAnalysis) -> CheckResult {
    let pairs = match nested_nonabelian_pairs(&a.lattice) {
        Ok(p) => p,
        Err(e) => return CheckResult::new("nested_nonabelian", &a.label, false, e.to_string()),
    };
    let bad: Vec<String> = pairs
        .iter()
        .filter(|p| !allowed_nested_pair(&p.sub, &p.sup))
        .map(|p| {
            format!(
                "{} (#{}) < {} (#{})",
                p.sub, p.sub_index, p.sup, p.sup_index
            )
        })
        .collect();
    let details = if bad.is_empty() {
        let mut kinds: Vec<String> = pairs
            .iter()
            .map(|p| format!("{} < {}", p.sub, p.sup))
            .collect();
        kinds.dedup();
        format!("{} nested pairs [{}]", pairs.len(), kinds.join(", "))
    } else {
        format!("unexpected pairs: {}", bad.join("; "))
    };
    CheckResult::new("nested_nonabelian", &a.label, bad.is_empty(), details)
}

pub fn check_chain_corollaries(a: &GroupAnalysis) -> CheckResult {
    let g = a.group();
    let lat = &a.lattice;
    let mut problems = Vec::new();

    let gens = min_generating_set(g);
    if gens.len() > 2 {
        problems.push(format!("needs {} generators", gens.len()));
    }

    let frattini = lat.frattini();
    let top = lat.top();
    for x in 0..g.order() {
        let cx = lat.cyclic_index(x);
        let never_generates = (0..g.order()).all(|y| lat.join_element(cx, y) != top);
        if never_generates && !frattini.contains(x) {
            problems.push(format!(
                "{} generates with no element but lies outside the Frattini subgroup",
                g.label(x)
            ));
        }
    }

    let z = center(g);
    if !g.is_abelian() && !z.is_subset(&frattini) {
        problems.push(format!(
            "center of order {} not inside Frattini subgroup of order {}",
            z.order(),
            frattini.order()
        ));
    }

    let mut meet: Option<BitSet> = None;
    let mut nonabelian = 0;
    for h in lat.subgroups() {
        if subgroup_is_abelian(g, h) {
            continue;
        }
        nonabelian += 1;
        let zh = subgroup_center(g, h);
        match centralizer_of_subgroup(g, h) {
            Ok(c) if *c.members() == zh => {}
            Ok(c) => problems.push(format!(
                "subgroup of order {}: centralizer of order {} but center of order {}",
                h.order(),
                c.order(),
                zh.count()
            )),
            Err(e) => problems.push(e.to_string()),
        }
        meet = Some(match meet {
            None => zh,
            Some(m) => m.intersection(&zh),
        });
    }
    if let Some(m) = meet {
        if m != *z.members() {
            problems.push(format!(
                "center of order {} but intersection of subgroup centers has order {}",
                z.order(),
                m.count()
            ));
        }
    }

    let details = if problems.is_empty() {
        format!(
            "{} generators, Frattini order {}, center order {}, {nonabelian} non-abelian subgroups",
            gens.len(),
            frattini.order(),
            z.order()
        )
    } else {
        problems.join("; ")
    };
    CheckResult::new("chain_corollaries", &a.label, problems.is_empty(), details)
}

pub(crate) fn euler_phi(n: usize) -> usize {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// The conjugacy-class bound for an element of order `order` generating a normal or
/// non-normal cyclic subgroup, with the case number; `None` when no case applies.
pub fn engel_bound(order: usize, normal: bool) -> Option<(usize, u8)> {
    if normal {
        return Some((euler_phi(order), 1));
    }
    match order {
        2 => Some((5, 4)),
        4 => Some((6, 5)),
        _ => match *factorize(order).as_slice() {
            [(p, 1)] => Some((p * p - 1, 3)),
            [(p, _)] => Some((order * (p - 1), 2)),
            _ => None,
        },
    }
}

pub fn check_engel_bounds(a: &GroupAnalysis) -> CheckResult {
    let g = a.group();
    let n = g.order();
    let mut problems = Vec::new();
    let mut largest = 0;
    for x in 0..n {
        let cx = a.lattice.subgroup(a.lattice.cyclic_index(x));
        let normal = (0..n).all(|y| cx.contains(g.conjugate(x, y)));
        let centralizer = (0..n).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
        let class = n / centralizer;
        largest = largest.max(class);
        let order = g.element_order(x);
        match engel_bound(order, normal) {
            Some((bound, _)) if class <= bound => {}
            Some((bound, case)) => problems.push(format!(
                "{}: order {order}, class size {class} exceeds case {case} bound {bound}",
                g.label(x)
            )),
            None => problems.push(format!(
                "{}: order {order}, non-normal, no applicable case",
                g.label(x)
            )),
        }
    }
    let details = if problems.is_empty() {
        format!("largest class {largest}")
    } else {
        problems.join("; ")
    };
    CheckResult::new("engel_bounds", &a.label, problems.is_empty(), details)
}

/// A triple `(x, y, z)` such that `<x,y,z>` properly contains `<x,y>`, `<y,z>`, `<z,x>`
/// and `<x,yz>`, while `<x,yz> != <xyz>`.
pub fn find_k33_configuration(lattice: &SubgroupLattice) -> Option<(usize, usize, usize)> {
    let g = lattice.group();
    let n = g.order();
    for x in 0..n {
        let cx = lattice.cyclic_index(x);
        for y in 0..n {
            let xy = lattice.join_element(cx, y);
            let cy = lattice.cyclic_index(y);
            for z in 0..n {
                let h = lattice.join_element(xy, z);
                if h == xy || lattice.join_element(cy, z) == h {
                    continue;
                }
                if lattice.join_element(lattice.cyclic_index(z), x) == h {
                    continue;
                }
                let yz = g.mul(y, z);
                let x_yz = lattice.join_element(cx, yz);
                if x_yz != h && x_yz != lattice.cyclic_index(g.mul(x, yz)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Runs only for groups of order at most [`K33_SEARCH_CAP`].
pub fn check_k33_configuration(a: &GroupAnalysis) -> Option<CheckResult> {
    let g = a.group();
    if g.order() > K33_SEARCH_CAP {
        return None;
    }
    let planar = a.planarity.planar;
    Some(match find_k33_configuration(&a.lattice) {
        None => CheckResult::new("k33_configuration", &a.label, true, "no configuration"),
        Some((x, y, z)) => {
            let lat = &a.lattice;
            let x_yz = lat.subgroup(lat.generated(&[x, g.mul(y, z)])).order();
            let xyz = g.element_order(g.mul(x, g.mul(y, z)));
            CheckResult::new(
                "k33_configuration",
                &a.label,
                !planar,
                format!(
                    "x={}, y={}, z={}: <x,yz> of order {x_yz}, <xyz> of order {xyz}; group {}",
                    g.label(x),
                    g.label(y),
                    g.label(z),
                    yes_no(planar)
                ),
            )
        }
    })
}

pub fn check_witness_soundness(a: &GroupAnalysis) -> CheckResult {
    let graph = a.lattice.subgroup_graph();
    let bounded = a.lattice.bounded_graph().0;
    let mut problems = Vec::new();
    let mut count = 0;
    for (name, g, v) in [
        ("subgroup graph", &graph, &a.planarity),
        ("outer-planarity", &graph, &a.outerplanarity),
        ("bounded graph", &bounded, &a.hasse),
    ] {
        count += 1;
        let ok = match (&v.embedding, &v.witness) {
            (Some(e), None) => v.planar && e.is_valid_for(g),
            (None, Some(w)) => !v.planar && validate_witness(g, w),
            _ => false,
        };
        if !ok {
            problems.push(format!("{name} certificate invalid"));
        }
    }
    let details = if problems.is_empty() {
        format!("{count} certificates valid")
    } else {
        problems.join("; ")
    };
    CheckResult::new("witness_soundness", &a.label, problems.is_empty(), details)
}

pub fn product_predicted_planar(tag: &FamilyTag) -> bool {
    matches!(
        tag,
        FamilyTag::CyclicPmQn { n: 1, .. }
            | FamilyTag::CyclicPmQR { .. }
            | FamilyTag::PmTimesP { .. }
    )
}

/// Product criterion for an already analysed product group.
pub fn product_corollary(a: &GroupAnalysis) -> CheckResult {
    let predicted = product_predicted_planar(&a.tag);
    let actual = a.planarity.planar;
    CheckResult::new(
        "product_corollary",
        &a.label,
        predicted == actual,
        format!(
            "product {}, tag {} {} a planar product",
            yes_no(actual),
            a.tag,
            if predicted { "is" } else { "is not" }
        ),
    )
}

pub fn check_product_corollary(h: &FiniteGroup, k: &FiniteGroup) -> Result<CheckResult> {
    if h.order() == 1 || k.order() == 1 {
        return Err(Error::InvalidParameters(
            "product factors must be nontrivial".into(),
        ));
    }
    let g = FiniteGroup::direct_product(h, k, LATTICE_CAP)?;
    let label = format!(
        "{} x {}",
        h.source_spec().unwrap_or("H"),
        k.source_spec().unwrap_or("K")
    );
    let a = GroupAnalysis::new(&g.with_source(label))?;
    Ok(product_corollary(&a))
}

/// Truncations of the infinite abelian families must be planar; Tarski shapes must be
/// planar and outer-planar only for at most two atoms.
pub fn check_truncation(spec: &InfiniteFamilySpec) -> CheckResult {
    let label = spec.to_string();
    match truncate_capped(spec, TRUNCATION_CAP) {
        Err(e) => CheckResult::new("construct", &label, false, e.to_string()),
        Ok(Truncation::Graph(graph)) => {
            let n = graph.vertex_count() - 2;
            let p = is_planar(&graph);
            let o = is_outerplanar(&graph);
            let expect_outer = n <= 2;
            let certs = p.embedding.as_ref().is_some_and(|e| e.is_valid_for(&graph))
                && match &o.witness {
                    Some(w) => validate_witness(&graph, w),
                    None => o.embedding.as_ref().is_some_and(|e| e.is_valid_for(&graph)),
                };
            CheckResult::new(
                "tarski_shape",
                &label,
                p.planar && o.planar == expect_outer && certs,
                format!(
                    "K(2,{n}) {}, outer-planar {} (expected {expect_outer}){}",
                    yes_no(p.planar),
                    o.planar,
                    witness_note(&o)
                ),
            )
        }
        Ok(Truncation::Group(g)) => match GroupAnalysis::with_cap(&g, TRUNCATION_CAP) {
            Err(e) => CheckResult::new("construct", &label, false, e.to_string()),
            Ok(a) => {
                let certs = a
                    .planarity
                    .embedding
                    .as_ref()
                    .is_some_and(|e| e.is_valid_for(&a.lattice.subgroup_graph()));
                CheckResult::new(
                    "truncation_planar",
                    &label,
                    a.planarity.planar && certs && predicted_planar(&a.tag),
                    format!(
                        "order {}, {} subgroups, {}, tag {}{}",
                        g.order(),
                        a.lattice.len(),
                        yes_no(a.planarity.planar),
                        a.tag,
                        witness_note(&a.planarity)
                    ),
                )
            }
        },
    }
}

/// `Z_{p^level} x Z_p x Z_p`, outside every planar family: must be non-planar with a
/// valid witness.
pub fn check_truncation_control(p: usize, level: u32) -> CheckResult {
    let label = format!("control:p={p},level={level}");
    let built = FiniteGroup::abelian(&[p.pow(level), p, p], TRUNCATION_CAP)
        .and_then(|g| GroupAnalysis::with_cap(&g, TRUNCATION_CAP));
    match built {
        Err(e) => CheckResult::new("construct", &label, false, e.to_string()),
        Ok(a) => {
            let sound = a
                .planarity
                .witness
                .as_ref()
                .is_some_and(|w| validate_witness(&a.lattice.subgroup_graph(), w));
            CheckResult::new(
                "truncation_control",
                &label,
                !a.planarity.planar && sound,
                format!(
                    "{} subgroups, {}{}",
                    a.lattice.len(),
                    yes_no(a.planarity.planar),
                    witness_note(&a.planarity)
                ),
            )
        }
    }
}

/// Cartesian products of small connected graphs against their known planarity.
pub fn check_cartesian_products() -> Vec<CheckResult> {
    let cases = [
        ("P2 x P2", SimpleGraph::path(2), SimpleGraph::path(2), true),
        ("P3 x P4", SimpleGraph::path(3), SimpleGraph::path(4), true),
        ("P3 x C5", SimpleGraph::path(3), SimpleGraph::cycle(5), true),
        (
            "P2 x K(1,3)",
            SimpleGraph::path(2),
            SimpleGraph::complete_bipartite(1, 3),
            true,
        ),
        (
            "K(2,3) x P2",
            SimpleGraph::complete_bipartite(2, 3),
            SimpleGraph::path(2),
            false,
        ),
    ];
    cases
        .into_iter()
        .map(|(label, g, h, expected)| {
            let prod = cartesian_product(&g, &h);
            let v = is_planar(&prod);
            let certs = match (&v.embedding, &v.witness) {
                (Some(e), None) => e.is_valid_for(&prod),
                (None, Some(w)) => validate_witness(&prod, w),
                _ => false,
            };
            CheckResult::new(
                "cartesian_products",
                label,
                v.planar == expected && certs,
                format!(
                    "{} vertices, {} (expected {}){}",
                    prod.vertex_count(),
                    yes_no(v.planar),
                    yes_no(expected),
                    witness_note(&v)
                ),
            )
        })
        .collect()
}

/// Every check applicable to an analysed finite group, in a fixed order.
pub fn group_checks(a: &GroupAnalysis) -> Vec<CheckResult> {
    let mut out = vec![
        check_planarity_agreement(a),
        check_outerplanar_agreement(a),
        check_witness_soundness(a),
    ];
    out.extend(check_k33_configuration(a));
    if predicted_planar(&a.tag) {
        out.push(check_hasse_status(a).expect("classified planar"));
        out.push(check_nested_nonabelian(a));
        out.push(check_chain_corollaries(a));
        if is_nilpotent(a.group()) {
            out.push(check_engel_bounds(a));
        }
    }
    out
}
