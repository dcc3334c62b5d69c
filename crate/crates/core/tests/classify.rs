use std::collections::BTreeMap;

use latplan::classify::{
    classify, classify_capped, matrices_of_order, predicted_outerplanar, predicted_planar,
    truncate_infinite_family, FamilyTag, InfiniteFamilySpec, Truncation,
};
use latplan::group::{are_isomorphic_capped, construct_family, FamilySpec, FiniteGroup};
use latplan::suite::{family_members, GroupSpec};
use proptest::prelude::*;

fn family(text: &str) -> FiniteGroup {
    construct_family(&FamilySpec::parse(text).unwrap()).unwrap()
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

/// Planarity of an abelian group from its elementary divisors: cyclic of order p^m q^n
/// or p^m q r, or Z_{p^m} x Z_p.
fn abelian_planar_by_divisors(moduli: &[usize]) -> bool {
    let mut by_prime: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for &m in moduli {
        for (p, e) in prime_factors(m) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let cyclic = by_prime.values().all(|es| es.len() == 1);
    if cyclic {
        let exps: Vec<u32> = by_prime.values().map(|es| es[0]).collect();
        return match exps.len() {
            0..=2 => true,
            3 => exps.iter().filter(|&&e| e > 1).count() <= 1,
            _ => false,
        };
    }
    by_prime.len() == 1 && {
        let es = by_prime.values().next().unwrap();
        es.len() == 2 && es.contains(&1)
    }
}

#[test]
fn paper_examples() {
    assert_eq!(classify(&family("q16")).unwrap(), FamilyTag::Q16);
    assert_eq!(classify(&family("qd16")).unwrap(), FamilyTag::QD16);
    assert_eq!(classify(&family("q8")).unwrap(), FamilyTag::Q8);
    assert_eq!(
        classify(&family("dihedral:n=8")).unwrap(),
        FamilyTag::Modular { p: 2, m: 3 }
    );
    assert_eq!(
        classify(&family("dihedral:n=16")).unwrap(),
        FamilyTag::NotInList
    );
    assert_eq!(
        classify(&FiniteGroup::cyclic(30).unwrap()).unwrap(),
        FamilyTag::CyclicPmQR {
            p: 2,
            m: 1,
            q: 3,
            r: 5
        }
    );
    assert_eq!(
        classify(&FiniteGroup::cyclic(12).unwrap()).unwrap(),
        FamilyTag::CyclicPmQn {
            p: 2,
            m: 2,
            q: 3,
            n: 1
        }
    );
    assert_eq!(
        classify(&FiniteGroup::abelian(&[2, 4], 64).unwrap()).unwrap(),
        FamilyTag::PmTimesP { p: 2, m: 2 }
    );
    assert_eq!(
        classify(&FiniteGroup::cyclic(1).unwrap()).unwrap(),
        FamilyTag::Trivial
    );
    let s4 = GroupSpec::Symmetric(4).build().unwrap();
    assert_eq!(classify(&s4).unwrap(), FamilyTag::NotInList);
    let a4 = family("frobenius:p=2,q=3,i=0,j=1,k=1,l=1");
    assert_eq!(
        classify(&a4).unwrap(),
        FamilyTag::FrobeniusP2Q { p: 2, q: 3 }
    );
    let dic12 = family("metacyclic:p=3,q=2,n=2,i=2");
    assert_eq!(
        classify(&dic12).unwrap(),
        FamilyTag::MetacyclicPQn { p: 3, q: 2, n: 2 }
    );
}

#[test]
fn tag_json_shape() {
    let v = serde_json::to_value(FamilyTag::Modular { p: 2, m: 4 }).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"family": "Modular", "parameters": {"p": 2, "m": 4}})
    );
    let q8 = serde_json::to_value(FamilyTag::Q8).unwrap();
    assert_eq!(q8, serde_json::json!({"family": "Q8"}));
}

#[test]
fn every_family_member_is_recognized() {
    for spec in family_members(200) {
        let g = spec.build().unwrap();
        let tag = classify(&g).unwrap();
        assert!(predicted_planar(&tag), "{spec} classified {tag}");
        let expected_outer = match &spec {
            GroupSpec::Family(FamilySpec::Cyclic { n }) => {
                let f = prime_factors(*n);
                f.len() <= 1 || (f.len() == 2 && f.values().any(|&e| e == 1))
            }
            _ => false,
        };
        assert_eq!(predicted_outerplanar(&tag), expected_outer, "{spec}");
    }
}

#[test]
fn frobenius_matrix_choice_is_immaterial() {
    for (p, q) in [(2, 3), (5, 3)] {
        let mats = matrices_of_order(p, q);
        assert!(!mats.is_empty());
        let build = |[i, j, k, l]: [usize; 4]| {
            construct_family(&FamilySpec::FrobeniusP2Q { p, q, i, j, k, l }).unwrap()
        };
        let first = build(mats[0]);
        for &m in &mats[1..] {
            assert!(
                are_isomorphic_capped(&first, &build(m), 200).unwrap(),
                "p={p} q={q} {m:?}"
            );
        }
    }
    assert_eq!(matrices_of_order(2, 3).len(), 2);
}

#[test]
fn metacyclic_root_choice_is_immaterial() {
    for (p, q, n) in [(7, 3, 1), (13, 2, 2), (13, 3, 1), (31, 5, 1)] {
        let roots: Vec<usize> = (2..p)
            .filter(|&i| {
                let mut x = 1;
                let mut k = 0;
                loop {
                    x = x * i % p;
                    k += 1;
                    if x == 1 {
                        break k == q;
                    }
                }
            })
            .collect();
        assert_eq!(roots.len(), q - 1);
        let groups: Vec<FiniteGroup> = roots
            .iter()
            .map(|&i| family(&format!("metacyclic:p={p},q={q},n={n},i={i}")))
            .collect();
        for g in &groups[1..] {
            assert!(are_isomorphic_capped(&groups[0], g, 200).unwrap());
        }
        assert_eq!(
            classify(&groups[0]).unwrap(),
            FamilyTag::MetacyclicPQn { p, q, n }
        );
    }
}

#[test]
fn caps_and_truncations() {
    let g = FiniteGroup::cyclic(210).unwrap();
    assert!(classify(&g).is_err());
    assert_eq!(classify_capped(&g, 210).unwrap(), FamilyTag::NotInList);
    for (text, order) in [
        ("prufer:p=2,level=5", 32),
        ("prufer_times_p:p=3,level=4", 243),
        ("prufer_times_qm:p=3,q=2,m=2,level=5", 972),
        ("prufer_times_prufer:p=2,q=3,level=5", 7776),
        ("prufer_times_qr:p=2,q=3,r=5,level=5", 480),
    ] {
        let spec = InfiniteFamilySpec::parse(text).unwrap();
        match truncate_infinite_family(&spec).unwrap() {
            Truncation::Group(g) => {
                assert_eq!(g.order(), order);
                assert!(predicted_planar(&classify_capped(&g, order).unwrap()));
            }
            Truncation::Graph(_) => panic!("{text} is a group"),
        }
    }
    let spec = InfiniteFamilySpec::parse("prufer:p=2,level=20").unwrap();
    assert!(truncate_infinite_family(&spec).is_err());
    assert!(InfiniteFamilySpec::parse("prufer_times_prufer:p=2,q=2,level=1").is_err());
    assert!(InfiniteFamilySpec::parse("tarski").is_err());
    match truncate_infinite_family(&InfiniteFamilySpec::parse("tarski:level=4").unwrap()).unwrap() {
        Truncation::Graph(g) => {
            assert_eq!((g.vertex_count(), g.edge_count()), (6, 8));
            assert_eq!(g.label(0), "1");
        }
        Truncation::Group(_) => panic!("tarski is a shape"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn abelian_classification_matches_divisor_rule(moduli in prop::collection::vec(1usize..=30, 1..=3)) {
        prop_assume!(moduli.iter().product::<usize>() <= 200);
        let g = FiniteGroup::abelian(&moduli, 512).unwrap();
        let tag = classify(&g).unwrap();
        prop_assert_eq!(predicted_planar(&tag), abelian_planar_by_divisors(&moduli), "{:?} -> {}", moduli, tag);
    }
}
