//! Corpus-wide verification of the planar-group statements, with a structured report.

mod checks;
mod corpus;
mod report;

pub use checks::{
    allowed_nested_pair, check_cartesian_products, check_chain_corollaries, check_engel_bounds,
    check_hasse_status, check_k33_configuration, check_nested_nonabelian,
    check_outerplanar_agreement, check_planarity_agreement, check_product_corollary,
    check_truncation, check_truncation_control, check_witness_soundness, engel_bound,
    find_k33_configuration, group_checks, nested_nonabelian_pairs, product_corollary,
    product_predicted_planar, GroupAnalysis, NestedPair, K33_SEARCH_CAP,
};
pub use corpus::{
    cyclic_in_list, default_truncations, family_members, negative_exemplars, Corpus, CorpusEntry,
    CorpusFile, GroupSpec,
};
pub use report::{CheckResult, Summary, Tally, TheoremReport};

use crate::error::Result;
use crate::group::{FiniteGroup, LATTICE_CAP};

fn construct_failure(label: &str, e: impl std::fmt::Display) -> Vec<CheckResult> {
    vec![CheckResult::new("construct", label, false, e.to_string())]
}

fn analyze_spec(spec: &GroupSpec) -> Result<GroupAnalysis> {
    GroupAnalysis::new(&spec.build()?)
}

/// Checks for a single entry; construction errors become a failed `construct` result.
pub fn run_entry(entry: &CorpusEntry) -> Vec<CheckResult> {
    let label = entry.label();
    match entry {
        CorpusEntry::Group(spec) => match analyze_spec(spec) {
            Ok(a) => group_checks(&a),
            Err(e) => construct_failure(&label, e),
        },
        CorpusEntry::Product(h, k) => {
            let built = h
                .build()
                .and_then(|h| Ok((h, k.build()?)))
                .and_then(|(h, k)| FiniteGroup::direct_product(&h, &k, LATTICE_CAP))
                .and_then(|g| GroupAnalysis::new(&g.with_source(label.clone())));
            match built {
                Ok(a) if a.group().order() > 1 => {
                    let mut out = group_checks(&a);
                    out.push(product_corollary(&a));
                    out
                }
                Ok(a) => group_checks(&a),
                Err(e) => construct_failure(&label, e),
            }
        }
        CorpusEntry::Truncation(spec) => vec![check_truncation(spec)],
        CorpusEntry::Control { p, level } => vec![check_truncation_control(*p, *level)],
        CorpusEntry::GraphProducts => check_cartesian_products(),
    }
}

pub fn run_corpus(corpus: &Corpus) -> TheoremReport {
    let results = corpus.entries.iter().flat_map(run_entry).collect();
    TheoremReport::new(corpus.description.clone(), results)
}
