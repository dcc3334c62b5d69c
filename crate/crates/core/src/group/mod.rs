//! Finite groups given by a multiplication law on dense indices `0..order`.

mod families;
mod invariants;
mod io;
mod iso;

use std::collections::{HashMap, VecDeque};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub use families::{construct_family, FamilySpec};
pub(crate) use families::{parse_kv, prime_power, smallest_root_of_order, Mat2};
pub(crate) use invariants::{abelian_invariant_factors, cyclic_subgroups};
pub use invariants::{
    center, centralizer_of_subgroup, conjugacy_classes, invariants, is_nilpotent,
    min_generating_set, GroupInvariants,
};
pub use io::{parse_permutation_text, parse_table_text, table_text, GroupFile};
pub use iso::{are_isomorphic, are_isomorphic_capped, Fingerprint};

/// Cap on group order for plain construction.
pub const CONSTRUCTION_CAP: usize = 512;
/// Cap on group order for workflows that enumerate the full subgroup lattice.
pub const LATTICE_CAP: usize = 200;
/// Default cap for the generator-search isomorphism test.
pub const ISO_CAP: usize = 64;

#[derive(Clone, Debug)]
enum Law {
    /// Row-major Cayley table.
    Table(Vec<u32>),
    /// Direct product of cyclic groups; elements are mixed-radix digit vectors,
    /// first modulus most significant.
    Abelian { moduli: Vec<u32>, strides: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    law: Law,
    identity: usize,
    inverses: Vec<u32>,
    labels: Vec<String>,
    source: Option<String>,
}

/// A subgroup, stored as the set of its member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: BitSet,
}

impl Subgroup {
    pub fn from_members(members: BitSet) -> Self {
        Subgroup { members }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::OrderCapExceeded { order, cap })
    } else {
        Ok(())
    }
}

impl FiniteGroup {
    /// Validates an external Cayley table. `table[g][h]` holds `g*h`.
    pub fn from_cayley_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        check_cap(n, CONSTRUCTION_CAP)?;
        for (r, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotLatinSquare(format!(
                        "cell ({r},{c}) holds {v}, out of range"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotLatinSquare(format!(
                        "row {r} repeats {v} at column {c}"
                    )));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for (r, row) in table.iter().enumerate() {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(Error::NotLatinSquare(format!(
                        "column {c} repeats {} at row {r}",
                        row[c]
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(Error::NoIdentity)?;
        let mut inverses = vec![0u32; n];
        for g in 0..n {
            let left = (0..n)
                .find(|&h| table[h][g] == identity)
                .ok_or(Error::NoInverse(g))?;
            if table[g][left] != identity {
                return Err(Error::NoInverse(g));
            }
            inverses[g] = left as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::Parse(format!("{} labels for {n} elements", l.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let flat = table.iter().flatten().map(|&v| v as u32).collect();
        Ok(FiniteGroup {
            order: n,
            law: Law::Table(flat),
            identity,
            inverses,
            labels,
            source: None,
        })
    }

    /// Builds a table group from a trusted multiplication rule; callers guarantee the
    /// group axioms.
    pub(crate) fn from_rule(
        order: usize,
        identity: usize,
        labels: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut flat = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                flat[a * order + b] = mul(a, b) as u32;
            }
        }
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &flat[a * order..(a + 1) * order];
            inverses[a] = row
                .iter()
                .position(|&v| v as usize == identity)
                .expect("group rule without inverse") as u32;
        }
        FiniteGroup {
            order,
            law: Law::Table(flat),
            identity,
            inverses,
            labels,
            source: None,
        }
    }

    /// Direct product of cyclic groups of the given orders, with an implicit law.
    pub fn abelian(moduli: &[usize], cap: usize) -> Result<Self> {
        let moduli: Vec<usize> = moduli.iter().copied().filter(|&m| m != 1).collect();
        if moduli.contains(&0) {
            return Err(Error::InvalidParameters("cyclic factor of order 0".into()));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .unwrap_or(usize::MAX);
        check_cap(order, cap)?;
        let mut strides = vec![1u32; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as u32;
        }
        let moduli: Vec<u32> = moduli.iter().map(|&m| m as u32).collect();
        let law = Law::Abelian { moduli, strides };
        let mut g = FiniteGroup {
            order,
            law,
            identity: 0,
            inverses: Vec::new(),
            labels: Vec::new(),
            source: None,
        };
        g.inverses = (0..order).map(|x| g.abelian_inverse(x) as u32).collect();
        g.labels = (0..order).map(|x| g.abelian_label(x)).collect();
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("cyclic group of order 0".into()));
        }
        let mut g = FiniteGroup::abelian(&[n], CONSTRUCTION_CAP)?;
        g.source = Some(format!("cyclic:n={n}"));
        Ok(g)
    }

    /// Closure of the given permutations (image lists on `0..degree`) under composition.
    /// Element 0 of the result is the identity; `g*h` applies `g` first.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for (i, p) in generators.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has {} images for degree {degree}",
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {i} is not a bijection"
                    )));
                }
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elems.len() {
            for s in generators {
                let prod: Vec<usize> = elems[head].iter().map(|&x| s[x]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() == cap {
                        return Err(Error::OrderCapExceeded {
                            order: cap + 1,
                            cap,
                        });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            head += 1;
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        let n = elems.len();
        Ok(FiniteGroup::from_rule(n, 0, labels, |a, b| {
            let prod: Vec<usize> = elems[a].iter().map(|&x| elems[b][x]).collect();
            index[&prod]
        }))
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Self> {
        let order = g.order.saturating_mul(h.order);
        check_cap(order, cap)?;
        let mut out = match (&g.law, &h.law) {
            (Law::Abelian { moduli: a, .. }, Law::Abelian { moduli: b, .. }) => {
                let ms: Vec<usize> = a.iter().chain(b.iter()).map(|&m| m as usize).collect();
                FiniteGroup::abelian(&ms, cap)?
            }
            _ => {
                let hn = h.order;
                let labels = (0..order)
                    .map(|x| format!("({},{})", g.label(x / hn), h.label(x % hn)))
                    .collect();
                FiniteGroup::from_rule(order, g.identity * hn + h.identity, labels, |x, y| {
                    g.mul(x / hn, y / hn) * hn + h.mul(x % hn, y % hn)
                })
            }
        };
        out.source = match (&g.source, &h.source) {
            (Some(a), Some(b)) => Some(format!("{a} x {b}")),
            _ => None,
        };
        Ok(out)
    }

    /// The subgroup `h` as a group in its own right, elements renumbered in increasing
    /// order of their indices in `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let elems = h.elements();
        let mut pos = HashMap::with_capacity(elems.len());
        for (i, &e) in elems.iter().enumerate() {
            pos.insert(e, i);
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        FiniteGroup::from_rule(elems.len(), pos[&self.identity], labels, |a, b| {
            pos[&self.mul(elems[a], elems[b])]
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn source_spec(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub(crate) fn set_source(&mut self, source: Option<String>) {
        self.source = source;
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.law {
            Law::Table(t) => t[a * self.order + b] as usize,
            Law::Abelian { moduli, strides } => {
                let mut out = 0usize;
                for (&m, &s) in moduli.iter().zip(strides) {
                    let (m, s) = (m as usize, s as usize);
                    let da = a / s % m;
                    let db = b / s % m;
                    out += (da + db) % m * s;
                }
                out
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        match &self.law {
            Law::Abelian { moduli, strides } => {
                moduli.iter().zip(strides).fold(1, |acc, (&m, &s)| {
                    let d = x / s as usize % m as usize;
                    lcm(acc, m as usize / gcd(d, m as usize))
                })
            }
            Law::Table(_) => {
                let mut k = 1;
                let mut y = x;
                while y != self.identity {
                    y = self.mul(y, x);
                    k += 1;
                }
                k
            }
        }
    }

    pub fn has_implicit_abelian_law(&self) -> bool {
        matches!(self.law, Law::Abelian { .. })
    }

    pub fn is_abelian(&self) -> bool {
        match &self.law {
            Law::Abelian { .. } => true,
            Law::Table(_) => (0..self.order)
                .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a))),
        }
    }

    /// Materializes the Cayley table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(BitSet::full(self.order))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut s = BitSet::new(self.order);
        s.insert(self.identity);
        Subgroup::from_members(s)
    }

    pub fn cyclic_subgroup(&self, x: usize) -> Subgroup {
        let mut s = BitSet::new(self.order);
        let mut y = x;
        s.insert(self.identity);
        while s.insert(y) {
            y = self.mul(y, x);
        }
        Subgroup::from_members(s)
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let base = self.trivial_subgroup();
        self.extend(&base, &[], gens)
    }

    /// Subgroup generated by a subgroup `base` (with generators `base_gens`) and `extra`.
    pub fn extend(&self, base: &Subgroup, base_gens: &[usize], extra: &[usize]) -> Subgroup {
        if extra.iter().all(|&x| base.contains(x)) {
            return base.clone();
        }
        let mut members = base.members.clone();
        let gens: Vec<usize> = base_gens.iter().chain(extra).copied().collect();
        let mut queue: VecDeque<usize> = members.iter().collect();
        while let Some(g) = queue.pop_front() {
            for &s in &gens {
                let p = self.mul(g, s);
                if members.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        Subgroup::from_members(members)
    }

    /// Checks that `members` is a subgroup; returns it wrapped.
    pub fn subgroup(&self, members: BitSet) -> Result<Subgroup> {
        if members.capacity() != self.order {
            return Err(Error::NotASubgroup(
                "bit-set size differs from group order".into(),
            ));
        }
        if !members.contains(self.identity) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        let elems: Vec<usize> = members.iter().collect();
        for &a in &elems {
            if !members.contains(self.inv(a)) {
                return Err(Error::NotASubgroup(format!(
                    "inverse of {} missing",
                    self.labels[a]
                )));
            }
            for &b in &elems {
                if !members.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "product {}*{} escapes",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(Subgroup::from_members(members))
    }

    fn abelian_inverse(&self, x: usize) -> usize {
        match &self.law {
            Law::Abelian { moduli, strides } => moduli
                .iter()
                .zip(strides)
                .map(|(&m, &s)| {
                    let (m, s) = (m as usize, s as usize);
                    (m - x / s % m) % m * s
                })
                .sum(),
            Law::Table(_) => unreachable!(),
        }
    }

    fn abelian_label(&self, x: usize) -> String {
        match &self.law {
            Law::Abelian { moduli, strides } => {
                if moduli.is_empty() || x == 0 {
                    return "1".into();
                }
                if moduli.len() == 1 {
                    return power_word("a", x);
                }
                let digits: Vec<String> = moduli
                    .iter()
                    .zip(strides)
                    .map(|(&m, &s)| (x / s as usize % m as usize).to_string())
                    .collect();
                format!("({})", digits.join(","))
            }
            Law::Table(_) => unreachable!(),
        }
    }
}

pub(crate) fn power_word(sym: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}
