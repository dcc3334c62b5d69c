use std::collections::BTreeMap;

use super::invariants::{abelian_invariant_factors, center, conjugacy_classes, min_generating_set};
use super::{FiniteGroup, ISO_CAP};
use crate::error::{Error, Result};

/// Cheap isomorphism invariants used to reject candidate pairs before searching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub is_abelian: bool,
    /// element order -> number of elements of that order
    pub order_counts: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub abelian_invariants: Vec<usize>,
    pub class_sizes: Vec<usize>,
}

impl Fingerprint {
    pub fn of(g: &FiniteGroup) -> Self {
        let mut order_counts = BTreeMap::new();
        for x in 0..g.order() {
            *order_counts.entry(g.element_order(x)).or_insert(0) += 1;
        }
        let is_abelian = g.is_abelian();
        let mut class_sizes: Vec<usize> = if is_abelian {
            Vec::new()
        } else {
            conjugacy_classes(g).iter().map(Vec::len).collect()
        };
        class_sizes.sort_unstable();
        Fingerprint {
            order: g.order(),
            is_abelian,
            order_counts,
            center_order: center(g).order(),
            abelian_invariants: if is_abelian {
                abelian_invariant_factors(g)
            } else {
                Vec::new()
            },
            class_sizes,
        }
    }
}

/// Isomorphism test with the default cap.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    are_isomorphic_capped(g, h, ISO_CAP)
}

/// Decides whether a bijective homomorphism `g -> h` exists. Non-abelian pairs are
/// settled by mapping a minimum generating set of `g` onto order-matching tuples of
/// `h` and extending along the Cayley graph.
pub fn are_isomorphic_capped(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<bool> {
    for o in [g.order(), h.order()] {
        if o > cap {
            return Err(Error::OrderCapExceeded { order: o, cap });
        }
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    let (fg, fh) = (Fingerprint::of(g), Fingerprint::of(h));
    if fg != fh {
        return Ok(false);
    }
    if fg.is_abelian {
        // invariant factors classify finite abelian groups
        return Ok(true);
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// An explicit isomorphism as an element map, if one exists.
pub(crate) fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let gens = min_generating_set(g);
    let h_orders: Vec<usize> = (0..h.order()).map(|x| h.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order()).filter(|&y| h_orders[y] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let i = images.len();
    if i == gens.len() {
        return extend_map(g, h, gens, images);
    }
    for &y in &candidates[i] {
        images.push(y);
        if let Some(map) = search(g, h, gens, candidates, images) {
            return Some(map);
        }
        images.pop();
    }
    None
}

fn extend_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = g.order();
    let mut phi = vec![UNSET; n];
    let mut used = vec![false; n];
    phi[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let xs = g.mul(x, s);
            let target = h.mul(phi[x], t);
            if phi[xs] == UNSET {
                if used[target] {
                    return None;
                }
                used[target] = true;
                phi[xs] = target;
                queue.push(xs);
            } else if phi[xs] != target {
                return None;
            }
        }
    }
    (queue.len() == n).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_family, FamilySpec, CONSTRUCTION_CAP};

    #[test]
    fn reflexive_on_same_table() {
        let g = construct_family(&FamilySpec::Semidihedral16).unwrap();
        assert!(are_isomorphic(&g, &g.clone()).unwrap());
    }

    #[test]
    fn modular_eight_is_dihedral_eight() {
        let m8 = construct_family(&FamilySpec::Modular { p: 2, m: 3 }).unwrap();
        let d8 = construct_family(&FamilySpec::Dihedral { order: 8 }).unwrap();
        assert!(are_isomorphic(&m8, &d8).unwrap());
    }

    #[test]
    fn q8_is_not_d8() {
        let q8 = construct_family(&FamilySpec::q8()).unwrap();
        let d8 = construct_family(&FamilySpec::Dihedral { order: 8 }).unwrap();
        assert!(!are_isomorphic(&q8, &d8).unwrap());
        // the generator search alone also fails, independent of the fingerprint screen
        assert!(find_isomorphism(&q8, &d8).is_none());
    }

    #[test]
    fn s3_from_permutations_is_metacyclic() {
        let s3 =
            FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], CONSTRUCTION_CAP)
                .unwrap();
        let d6 = construct_family(&FamilySpec::MetacyclicPQ {
            p: 3,
            q: 2,
            n: 1,
            i: 2,
        })
        .unwrap();
        let map = find_isomorphism(&s3, &d6).expect("S3 = D6");
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(map[s3.mul(a, b)], d6.mul(map[a], map[b]));
            }
        }
    }

    #[test]
    fn a4_from_permutations_is_frobenius() {
        let a4 = FiniteGroup::from_permutations(
            4,
            &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]],
            CONSTRUCTION_CAP,
        )
        .unwrap();
        let f = construct_family(&FamilySpec::FrobeniusP2Q {
            p: 2,
            q: 3,
            i: 0,
            j: 1,
            k: 1,
            l: 1,
        })
        .unwrap();
        assert!(are_isomorphic(&a4, &f).unwrap());
        assert!(find_isomorphism(&a4, &f).is_some());
    }

    #[test]
    fn cap_enforced() {
        let g = FiniteGroup::cyclic(100).unwrap();
        assert!(matches!(
            are_isomorphic(&g, &g),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(are_isomorphic_capped(&g, &g, 200).unwrap());
    }

    #[test]
    fn abelian_with_different_invariants() {
        let a = FiniteGroup::abelian(&[4, 2], 64).unwrap();
        let b = FiniteGroup::cyclic(8).unwrap();
        assert!(!are_isomorphic(&a, &b).unwrap());
    }
}
