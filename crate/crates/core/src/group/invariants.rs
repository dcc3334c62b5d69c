use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{factorize, FiniteGroup, Subgroup};
use crate::bitset::BitSet;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    #[serde(serialize_with = "serialize_subgroup")]
    pub center: Subgroup,
    /// Element orders.
    pub spectrum: BTreeSet<usize>,
    pub prime_spectrum: BTreeSet<usize>,
    /// Invariant factors, largest first; empty for non-abelian (and trivial) groups.
    pub abelian_invariants: Vec<usize>,
    pub min_generators: usize,
}

fn serialize_subgroup<S: serde::Serializer>(
    h: &Subgroup,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(h.members().iter())
}

pub fn invariants(g: &FiniteGroup) -> GroupInvariants {
    let is_abelian = g.is_abelian();
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let spectrum: BTreeSet<usize> = orders.iter().copied().collect();
    let prime_spectrum = spectrum
        .iter()
        .filter(|&&k| factorize(k).len() == 1 && factorize(k)[0].1 == 1)
        .copied()
        .collect();
    GroupInvariants {
        order: g.order(),
        is_abelian,
        is_nilpotent: nilpotent_from_orders(g.order(), &orders),
        center: center(g),
        spectrum,
        prime_spectrum,
        abelian_invariants: if is_abelian {
            invariant_factors(g.order(), &orders)
        } else {
            Vec::new()
        },
        min_generators: min_generating_set(g).len(),
    }
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    if g.is_abelian() {
        return g.whole();
    }
    let mut s = BitSet::new(g.order());
    for z in 0..g.order() {
        if (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z)) {
            s.insert(z);
        }
    }
    Subgroup::from_members(s)
}

/// Conjugacy classes, each sorted, ordered by smallest member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    if g.is_abelian() {
        return (0..n).map(|x| vec![x]).collect();
    }
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|h| g.conjugate(x, h)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes
}

/// `C_G(H) = { g : g h = h g for all h in H }`.
pub fn centralizer_of_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    let h = g.subgroup(h.members().clone())?;
    let elems = h.elements();
    let mut s = BitSet::new(g.order());
    for x in 0..g.order() {
        if elems.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
            s.insert(x);
        }
    }
    Ok(Subgroup::from_members(s))
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    nilpotent_from_orders(g.order(), &orders)
}

// A finite group is nilpotent iff each Sylow subgroup is normal, i.e. the p-elements
// number exactly |G|_p for every prime p.
fn nilpotent_from_orders(n: usize, orders: &[usize]) -> bool {
    factorize(n).into_iter().all(|(p, a)| {
        let p_part = p.pow(a);
        orders.iter().filter(|&&o| p_part % o == 0).count() == p_part
    })
}

pub(crate) fn abelian_invariant_factors(g: &FiniteGroup) -> Vec<usize> {
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    invariant_factors(g.order(), &orders)
}

fn invariant_factors(n: usize, orders: &[usize]) -> Vec<usize> {
    // per prime: exponents of the cyclic p-factors, descending
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for (p, a) in factorize(n) {
        // rank_k = #{i : e_i >= k} = log_p(N_k / N_{k-1}), N_k = #{x : x^{p^k} = 1}
        let mut ranks = Vec::new();
        let mut prev = 1usize;
        for k in 1..=a {
            let pk = p.pow(k);
            let nk = orders.iter().filter(|&&o| pk % o == 0).count();
            let mut ratio = nk / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            ranks.push(r);
            prev = nk;
        }
        let width = ranks.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (0..width)
            .map(|i| ranks.iter().filter(|&&r| r > i).count() as u32)
            .collect();
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    (0..width)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, e)| e.get(i).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect()
}

/// Distinct cyclic subgroups, each with one generator, in order of first generator.
pub(crate) fn cyclic_subgroups(g: &FiniteGroup) -> Vec<(usize, Subgroup)> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let c = g.cyclic_subgroup(x);
        let k = c.order();
        // every generator x^j, gcd(j, k) = 1, spans the same subgroup
        let mut y = x;
        for j in 1..=k {
            if super::gcd(j, k) == 1 {
                assigned[y] = true;
            }
            y = g.mul(y, x);
        }
        out.push((x, c));
    }
    out
}

/// A generating set of minimum size. Breadth-first over distinct subgroups generated
/// by k elements, so equal subgroups are expanded once.
pub fn min_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![g.identity()];
    }
    let cyclics = cyclic_subgroups(g);
    if let Some((x, _)) = cyclics.iter().find(|(_, c)| c.order() == n) {
        return vec![*x];
    }
    let mut seen: HashSet<BitSet> = cyclics.iter().map(|(_, c)| c.members().clone()).collect();
    let mut level: Vec<(Subgroup, Vec<usize>)> =
        cyclics.iter().map(|(x, c)| (c.clone(), vec![*x])).collect();
    loop {
        let mut next = Vec::new();
        for (h, gens) in &level {
            for (x, c) in &cyclics {
                if c.is_subset(h) {
                    continue;
                }
                let k = g.extend(h, gens, &[*x]);
                let mut kg = gens.clone();
                kg.push(*x);
                if k.order() == n {
                    return kg;
                }
                if seen.insert(k.members().clone()) {
                    next.push((k, kg));
                }
            }
        }
        assert!(
            !next.is_empty(),
            "generation search stalled below the whole group"
        );
        level = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_family, FamilySpec, CONSTRUCTION_CAP};

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut s: Vec<usize> = conjugacy_classes(g).iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn q8_invariants() {
        let q8 = construct_family(&FamilySpec::q8()).unwrap();
        let inv = invariants(&q8);
        assert_eq!(inv.center.order(), 2);
        assert_eq!(inv.spectrum, BTreeSet::from([1, 2, 4]));
        assert_eq!(inv.min_generators, 2);
        assert!(inv.is_nilpotent);
        assert!(inv.abelian_invariants.is_empty());
        assert_eq!(class_sizes(&q8), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn d8_class_sizes() {
        let d8 = construct_family(&FamilySpec::Dihedral { order: 8 }).unwrap();
        assert_eq!(class_sizes(&d8), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn z30_invariants() {
        let z = FiniteGroup::cyclic(30).unwrap();
        let inv = invariants(&z);
        assert_eq!(inv.abelian_invariants, vec![30]);
        let divisors: BTreeSet<usize> = (1..=30).filter(|d| 30 % d == 0).collect();
        assert_eq!(inv.spectrum, divisors);
        assert_eq!(inv.prime_spectrum, BTreeSet::from([2, 3, 5]));
        assert_eq!(inv.min_generators, 1);
        assert!(class_sizes(&z).iter().all(|&s| s == 1));
    }

    #[test]
    fn a4_invariants() {
        let a4 = construct_family(&FamilySpec::FrobeniusP2Q {
            p: 2,
            q: 3,
            i: 0,
            j: 1,
            k: 1,
            l: 1,
        })
        .unwrap();
        let inv = invariants(&a4);
        assert_eq!(inv.center.order(), 1);
        assert_eq!(inv.min_generators, 2);
        assert!(!inv.is_nilpotent);
    }

    #[test]
    fn product_invariants() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let p = FiniteGroup::direct_product(&z4, &z2, CONSTRUCTION_CAP).unwrap();
        assert_eq!(invariants(&p).abelian_invariants, vec![4, 2]);
        let v = FiniteGroup::direct_product(
            &FiniteGroup::direct_product(&z2, &z2, 64).unwrap(),
            &z2,
            64,
        )
        .unwrap();
        let inv = invariants(&v);
        assert_eq!(inv.spectrum, BTreeSet::from([1, 2]));
        assert_eq!(inv.abelian_invariants, vec![2, 2, 2]);
        assert_eq!(inv.min_generators, 3);
        let mixed = FiniteGroup::abelian(&[6, 4, 9], CONSTRUCTION_CAP).unwrap();
        assert_eq!(invariants(&mixed).abelian_invariants, vec![36, 6]);
    }

    #[test]
    fn centralizers() {
        let q16 = construct_family(&FamilySpec::q16()).unwrap();
        assert_eq!(
            centralizer_of_subgroup(&q16, &q16.trivial_subgroup())
                .unwrap()
                .order(),
            16
        );
        // <a^2, b> is a Q8 inside Q16 (a = index 1, b = index 8)
        let q8 = q16.generate(&[2, 8]);
        assert_eq!(q8.order(), 8);
        let c = centralizer_of_subgroup(&q16, &q8).unwrap();
        assert_eq!(c.order(), 2);
        let z = FiniteGroup::cyclic(12).unwrap();
        let h = z.generate(&[4]);
        assert_eq!(centralizer_of_subgroup(&z, &h).unwrap().order(), 12);
    }
}
