use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{InfiniteFamily, InfiniteFamilySpec};
use crate::error::{Error, Result};
use crate::group::{
    factorize, is_prime, smallest_root_of_order, FamilySpec, FiniteGroup, CONSTRUCTION_CAP,
    LATTICE_CAP,
};

/// Textual group description used in corpora and on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Family(FamilySpec),
    /// `Z_{m1} x Z_{m2} x ...`, written `abelian:m1,m2,...`
    Abelian(Vec<usize>),
    /// Full symmetric group on `n` points, written `symmetric:n=4`.
    Symmetric(usize),
    /// `A x B`, written with ` x ` between the factors.
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((a, b)) = text.split_once(" x ") {
            return Ok(GroupSpec::Product(
                Box::new(GroupSpec::parse(a)?),
                Box::new(GroupSpec::parse(b)?),
            ));
        }
        let (name, args) = text.split_once(':').unwrap_or((text, ""));
        match name.to_ascii_lowercase().as_str() {
            "abelian" => {
                let moduli = args
                    .split(',')
                    .map(|m| {
                        m.trim()
                            .parse::<usize>()
                            .ok()
                            .filter(|&m| m > 0)
                            .ok_or_else(|| Error::Parse(format!("bad modulus `{m}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec::Abelian(moduli))
            }
            "symmetric" | "s" => {
                let n = args
                    .trim()
                    .strip_prefix("n=")
                    .and_then(|v| v.trim().parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| {
                        Error::Parse(format!("expected `symmetric:n=N`, got `{text}`"))
                    })?;
                Ok(GroupSpec::Symmetric(n))
            }
            _ => Ok(GroupSpec::Family(FamilySpec::parse(text)?)),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let g = match self {
            GroupSpec::Family(spec) => return crate::group::construct_family(spec),
            GroupSpec::Abelian(moduli) => FiniteGroup::abelian(moduli, CONSTRUCTION_CAP)?,
            GroupSpec::Symmetric(n) => {
                let n = *n;
                let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                let mut swap: Vec<usize> = (0..n).collect();
                if n > 1 {
                    swap.swap(0, 1);
                }
                FiniteGroup::from_permutations(n, &[cycle, swap], CONSTRUCTION_CAP)?
            }
            GroupSpec::Product(a, b) => {
                FiniteGroup::direct_product(&a.build()?, &b.build()?, CONSTRUCTION_CAP)?
            }
        };
        Ok(g.with_source(self.to_string()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Family(spec) => write!(f, "{spec}"),
            GroupSpec::Abelian(m) => {
                let parts: Vec<String> = m.iter().map(usize::to_string).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
            GroupSpec::Symmetric(n) => write!(f, "symmetric:n={n}"),
            GroupSpec::Product(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

/// One unit of work in a corpus run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusEntry {
    /// A finite group checked against the classification.
    Group(GroupSpec),
    /// A direct product `H x K`, additionally checked against the product criterion.
    Product(GroupSpec, GroupSpec),
    /// A finite truncation of an infinite planar family (group or Tarski shape).
    Truncation(InfiniteFamilySpec),
    /// `Z_{p^n} x Z_p x Z_p`, a non-member expected to fail planarity.
    Control { p: usize, level: u32 },
    /// Cartesian products of small graphs.
    GraphProducts,
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        match self {
            CorpusEntry::Group(g) => g.to_string(),
            CorpusEntry::Product(a, b) => format!("{a} x {b}"),
            CorpusEntry::Truncation(t) => t.to_string(),
            CorpusEntry::Control { p, level } => format!("control:p={p},level={level}"),
            CorpusEntry::GraphProducts => "graph-products".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub description: String,
    pub entries: Vec<CorpusEntry>,
}

/// Corpus file layout: group specs, product pairs, truncation specs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusFile {
    pub groups: Vec<String>,
    pub products: Vec<[String; 2]>,
    pub truncations: Vec<String>,
}

impl Corpus {
    pub fn empty() -> Self {
        Corpus {
            description: "empty".into(),
            entries: Vec::new(),
        }
    }

    pub fn from_file(file: &CorpusFile, description: impl Into<String>) -> Result<Self> {
        let mut entries = Vec::new();
        for g in &file.groups {
            entries.push(CorpusEntry::Group(GroupSpec::parse(g)?));
        }
        for [a, b] in &file.products {
            entries.push(CorpusEntry::Product(
                GroupSpec::parse(a)?,
                GroupSpec::parse(b)?,
            ));
        }
        for t in &file.truncations {
            entries.push(CorpusEntry::Truncation(InfiniteFamilySpec::parse(t)?));
        }
        Ok(Corpus {
            description: description.into(),
            entries,
        })
    }

    pub fn parse_json(text: &str, description: impl Into<String>) -> Result<Self> {
        let file: CorpusFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("corpus file: {e}")))?;
        Corpus::from_file(&file, description)
    }

    /// The standard corpus: every family member of order at most `max_order` (capped at
    /// the lattice limit), the non-planar exemplars, pairwise products of family members
    /// up to order `min(100, max_order)`, truncations at levels 1 to 5, the elementary
    /// abelian controls, the Tarski shapes `K_{2,n}` for `n <= 16`, and graph products.
    pub fn default_with_max_order(max_order: usize) -> Self {
        let max_order = max_order.min(LATTICE_CAP);
        let families = family_members(max_order);
        let mut entries: Vec<CorpusEntry> =
            families.iter().cloned().map(CorpusEntry::Group).collect();
        for spec in negative_exemplars() {
            if spec.build().map(|g| g.order() <= max_order).unwrap_or(true) {
                entries.push(CorpusEntry::Group(spec));
            }
        }
        let product_cap = max_order.min(100);
        let nontrivial: Vec<(GroupSpec, usize)> = families
            .iter()
            .map(|s| (s.clone(), spec_order(s)))
            .filter(|&(_, o)| o > 1)
            .collect();
        for (i, (a, oa)) in nontrivial.iter().enumerate() {
            for (b, ob) in &nontrivial[i..] {
                if oa * ob <= product_cap {
                    entries.push(CorpusEntry::Product(a.clone(), b.clone()));
                }
            }
        }
        entries.extend(
            default_truncations()
                .into_iter()
                .map(CorpusEntry::Truncation),
        );
        for p in [2, 3] {
            entries.push(CorpusEntry::Control { p, level: 1 });
        }
        entries.push(CorpusEntry::GraphProducts);
        Corpus {
            description: format!("default (max order {max_order})"),
            entries,
        }
    }
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::default_with_max_order(LATTICE_CAP)
    }
}

fn spec_order(spec: &GroupSpec) -> usize {
    match spec {
        GroupSpec::Family(f) => f.order(),
        GroupSpec::Abelian(m) => m.iter().product(),
        GroupSpec::Symmetric(n) => (1..=*n).product(),
        GroupSpec::Product(a, b) => spec_order(a) * spec_order(b),
    }
}

/// One representative of every finite planar family member with order `<= max_order`,
/// sorted by order, then by spec text.
pub fn family_members(max_order: usize) -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = Vec::new();
    for n in 1..=max_order {
        if cyclic_in_list(n) {
            out.push(GroupSpec::Family(FamilySpec::Cyclic { n }));
        }
    }
    let primes: Vec<usize> = (2..=max_order).filter(|&p| is_prime(p)).collect();
    for &p in &primes {
        let mut pm = p;
        while pm * p <= max_order {
            out.push(GroupSpec::Abelian(vec![pm, p]));
            pm *= p;
        }
    }
    for (spec, order) in [
        (FamilySpec::q8(), 8),
        (FamilySpec::q16(), 16),
        (FamilySpec::Semidihedral16, 16),
    ] {
        if order <= max_order {
            out.push(GroupSpec::Family(spec));
        }
    }
    for &p in &primes {
        let mut m = 3;
        while p.pow(m) <= max_order {
            out.push(GroupSpec::Family(FamilySpec::Modular { p, m }));
            m += 1;
        }
    }
    for &p in &primes {
        for &q in &primes {
            if q >= p || (p - 1) % q != 0 {
                continue;
            }
            let i = smallest_root_of_order(p, q).expect("q divides p-1");
            let mut n = 1;
            while p * q.pow(n) <= max_order {
                out.push(GroupSpec::Family(FamilySpec::MetacyclicPQ { p, q, n, i }));
                n += 1;
            }
        }
    }
    for &p in &primes {
        for &q in &primes {
            if q > 2 && q != p && (p + 1) % q == 0 && p * p * q <= max_order {
                let [i, j, k, l] = crate::classify::first_matrix_of_order(p, q);
                out.push(GroupSpec::Family(FamilySpec::FrobeniusP2Q {
                    p,
                    q,
                    i,
                    j,
                    k,
                    l,
                }));
            }
        }
    }
    out.sort_by_cached_key(|s| (spec_order(s), s.to_string()));
    out
}

/// Groups outside the planar families, each expected to be non-planar.
pub fn negative_exemplars() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Abelian(vec![2, 2, 2]),
        GroupSpec::Abelian(vec![3, 3, 3]),
        GroupSpec::Abelian(vec![4, 4]),
        GroupSpec::Symmetric(4),
        GroupSpec::Family(FamilySpec::Dihedral { order: 16 }),
        GroupSpec::Abelian(vec![2, 4, 2]),
    ]
}

/// Levels 1 to 5 of each infinite abelian family, for a few prime choices, plus the
/// Tarski shapes `K_{2,n}` for `n = 1..=16`.
pub fn default_truncations() -> Vec<InfiniteFamilySpec> {
    let families = [
        InfiniteFamily::Prufer { p: 2 },
        InfiniteFamily::Prufer { p: 3 },
        InfiniteFamily::PruferTimesP { p: 2 },
        InfiniteFamily::PruferTimesP { p: 3 },
        InfiniteFamily::PruferTimesQm { p: 2, q: 3, m: 1 },
        InfiniteFamily::PruferTimesQm { p: 3, q: 2, m: 2 },
        InfiniteFamily::PruferTimesPrufer { p: 2, q: 3 },
        InfiniteFamily::PruferTimesQTimesR { p: 2, q: 3, r: 5 },
    ];
    let mut out: Vec<InfiniteFamilySpec> = families
        .iter()
        .flat_map(|&f| (1..=5).map(move |level| InfiniteFamilySpec::new(f, level)))
        .collect();
    out.extend((1..=16).map(|n| InfiniteFamilySpec::new(InfiniteFamily::Tarski, n)));
    out
}

/// Whether `n` is the order of a cyclic group in the planar list.
pub fn cyclic_in_list(n: usize) -> bool {
    let f = factorize(n);
    match f.len() {
        0..=2 => true,
        3 => f.iter().filter(|&&(_, e)| e > 1).count() <= 1,
        _ => false,
    }
}
