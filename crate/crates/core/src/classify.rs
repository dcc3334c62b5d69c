//! Recognition of the planar group families and truncations of the infinite ones.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::{
    abelian_invariant_factors, are_isomorphic_capped, construct_family, factorize, is_prime,
    parse_kv, prime_power, smallest_root_of_order, FamilySpec, FiniteGroup, Mat2, LATTICE_CAP,
};

/// Largest truncation order built by default; truncations are abelian, so they carry
/// an implicit law and no table.
pub const TRUNCATION_CAP: usize = 8192;

/// Membership in one of the families of finite planar groups, with parameters.
///
/// Parameters are canonical: for `CyclicPmQn` the larger exponent comes first (ties
/// broken by the smaller prime), for `CyclicPmQR` the prime with exponent above one (or
/// else the smallest) comes first and `q < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "parameters")]
pub enum FamilyTag {
    Trivial,
    CyclicPrimePower {
        p: usize,
        m: u32,
    },
    CyclicPmQn {
        p: usize,
        m: u32,
        q: usize,
        n: u32,
    },
    CyclicPmQR {
        p: usize,
        m: u32,
        q: usize,
        r: usize,
    },
    PmTimesP {
        p: usize,
        m: u32,
    },
    Q8,
    Q16,
    QD16,
    Modular {
        p: usize,
        m: u32,
    },
    MetacyclicPQn {
        p: usize,
        q: usize,
        n: u32,
    },
    FrobeniusP2Q {
        p: usize,
        q: usize,
    },
    NotInList,
}

impl FamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Trivial => "Trivial",
            FamilyTag::CyclicPrimePower { .. } => "CyclicPrimePower",
            FamilyTag::CyclicPmQn { .. } => "CyclicPmQn",
            FamilyTag::CyclicPmQR { .. } => "CyclicPmQR",
            FamilyTag::PmTimesP { .. } => "PmTimesP",
            FamilyTag::Q8 => "Q8",
            FamilyTag::Q16 => "Q16",
            FamilyTag::QD16 => "QD16",
            FamilyTag::Modular { .. } => "Modular",
            FamilyTag::MetacyclicPQn { .. } => "MetacyclicPQn",
            FamilyTag::FrobeniusP2Q { .. } => "FrobeniusP2Q",
            FamilyTag::NotInList => "NotInList",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyTag::CyclicPrimePower { p, m } => write!(f, "CyclicPrimePower(p={p}, m={m})"),
            FamilyTag::CyclicPmQn { p, m, q, n } => {
                write!(f, "CyclicPmQn(p={p}, m={m}, q={q}, n={n})")
            }
            FamilyTag::CyclicPmQR { p, m, q, r } => {
                write!(f, "CyclicPmQR(p={p}, m={m}, q={q}, r={r})")
            }
            FamilyTag::PmTimesP { p, m } => write!(f, "PmTimesP(p={p}, m={m})"),
            FamilyTag::Modular { p, m } => write!(f, "Modular(p={p}, m={m})"),
            FamilyTag::MetacyclicPQn { p, q, n } => write!(f, "MetacyclicPQn(p={p}, q={q}, n={n})"),
            FamilyTag::FrobeniusP2Q { p, q } => write!(f, "FrobeniusP2Q(p={p}, q={q})"),
            other => f.write_str(other.name()),
        }
    }
}

pub fn predicted_planar(tag: &FamilyTag) -> bool {
    *tag != FamilyTag::NotInList
}

pub fn predicted_outerplanar(tag: &FamilyTag) -> bool {
    matches!(
        tag,
        FamilyTag::Trivial
            | FamilyTag::CyclicPrimePower { .. }
            | FamilyTag::CyclicPmQn { n: 1, .. }
    )
}

/// Whether the family's subgroup graph fails the bounded (bottom-top edge) planarity test.
pub fn predicted_not_hasse_planar(tag: &FamilyTag) -> bool {
    matches!(tag, FamilyTag::CyclicPmQR { .. } | FamilyTag::QD16)
}

/// Classifies under the default order cap.
pub fn classify(g: &FiniteGroup) -> Result<FamilyTag> {
    classify_capped(g, LATTICE_CAP)
}

/// Abelian groups are recognized from their invariant factors. Non-abelian groups are
/// compared, by an isomorphism test, with the family members of the same order.
pub fn classify_capped(g: &FiniteGroup, cap: usize) -> Result<FamilyTag> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap,
        });
    }
    if g.is_abelian() {
        return Ok(classify_abelian(&abelian_invariant_factors(g)));
    }
    for (spec, tag) in nonabelian_candidates(g.order()) {
        let h = construct_family(&spec)?;
        if are_isomorphic_capped(g, &h, cap)? {
            return Ok(tag);
        }
    }
    Ok(FamilyTag::NotInList)
}

/// Tag of the abelian group with the given invariant factors (largest first).
pub fn classify_abelian(factors: &[usize]) -> FamilyTag {
    match factors {
        [] => FamilyTag::Trivial,
        [n] => classify_cyclic(*n),
        [a, b] => match (prime_power(*a), is_prime(*b)) {
            (Some((p, m)), true) if p == *b => FamilyTag::PmTimesP { p, m },
            _ => FamilyTag::NotInList,
        },
        _ => FamilyTag::NotInList,
    }
}

fn classify_cyclic(n: usize) -> FamilyTag {
    match factorize(n).as_slice() {
        [] => FamilyTag::Trivial,
        &[(p, m)] => FamilyTag::CyclicPrimePower { p, m },
        &[(p1, e1), (p2, e2)] => {
            let ((p, m), (q, n)) = if e1 >= e2 {
                ((p1, e1), (p2, e2))
            } else {
                ((p2, e2), (p1, e1))
            };
            FamilyTag::CyclicPmQn { p, m, q, n }
        }
        &[a, b, c] => {
            let big: Vec<_> = [a, b, c].into_iter().filter(|&(_, e)| e > 1).collect();
            match big.as_slice() {
                [] => FamilyTag::CyclicPmQR {
                    p: a.0,
                    m: 1,
                    q: b.0,
                    r: c.0,
                },
                &[(p, m)] => {
                    let mut rest = [a, b, c]
                        .into_iter()
                        .filter(|&(x, _)| x != p)
                        .map(|(x, _)| x);
                    let (q, r) = (rest.next().unwrap(), rest.next().unwrap());
                    FamilyTag::CyclicPmQR { p, m, q, r }
                }
                _ => FamilyTag::NotInList,
            }
        }
        _ => FamilyTag::NotInList,
    }
}

/// Non-abelian family members of order `n`, each with the tag it earns.
fn nonabelian_candidates(n: usize) -> Vec<(FamilySpec, FamilyTag)> {
    let mut out = Vec::new();
    match n {
        8 => out.push((FamilySpec::q8(), FamilyTag::Q8)),
        16 => {
            out.push((FamilySpec::q16(), FamilyTag::Q16));
            out.push((FamilySpec::Semidihedral16, FamilyTag::QD16));
        }
        _ => {}
    }
    let f = factorize(n);
    if let [(p, m)] = f[..] {
        if m >= 3 {
            out.push((FamilySpec::Modular { p, m }, FamilyTag::Modular { p, m }));
        }
    }
    if let [a, b] = f[..] {
        for ((p, e), (q, k)) in [(a, b), (b, a)] {
            // Z_p ⋊ Z_{q^k} with a faithful action of order q on Z_p
            if e == 1 && (p - 1) % q == 0 {
                let i = smallest_root_of_order(p, q).expect("q divides p-1");
                out.push((
                    FamilySpec::MetacyclicPQ { p, q, n: k, i },
                    FamilyTag::MetacyclicPQn { p, q, n: k },
                ));
            }
            if e == 2 && k == 1 && q > 2 && (p + 1) % q == 0 {
                let [i, j, kk, l] = first_matrix_of_order(p, q);
                out.push((
                    FamilySpec::FrobeniusP2Q {
                        p,
                        q,
                        i,
                        j,
                        k: kk,
                        l,
                    },
                    FamilyTag::FrobeniusP2Q { p, q },
                ));
            }
        }
    }
    out
}

/// The lexicographically first matrix of order `q` in GL2(p).
pub fn first_matrix_of_order(p: usize, q: usize) -> [usize; 4] {
    Mat2::all_of_order(p, q)[0]
}

/// Every matrix of order `q` in GL2(p), lexicographic by entries `(i, j, k, l)`.
pub fn matrices_of_order(p: usize, q: usize) -> Vec<[usize; 4]> {
    Mat2::all_of_order(p, q)
}

/// The infinite planar abelian groups (as Prüfer-group products) and the Tarski
/// lattice shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InfiniteFamily {
    Prufer { p: usize },
    PruferTimesP { p: usize },
    PruferTimesQm { p: usize, q: usize, m: u32 },
    PruferTimesPrufer { p: usize, q: usize },
    PruferTimesQTimesR { p: usize, q: usize, r: usize },
    Tarski,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InfiniteFamilySpec {
    #[serde(flatten)]
    pub family: InfiniteFamily,
    pub level: u32,
}

impl InfiniteFamilySpec {
    pub fn new(family: InfiniteFamily, level: u32) -> Self {
        InfiniteFamilySpec { family, level }
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == 0 {
            return Err(Error::InvalidParameters(
                "truncation level must be at least 1".into(),
            ));
        }
        let primes: Vec<usize> = match self.family {
            InfiniteFamily::Prufer { p } | InfiniteFamily::PruferTimesP { p } => vec![p],
            InfiniteFamily::PruferTimesQm { p, q, m } => {
                if m == 0 {
                    return Err(Error::InvalidParameters("m must be at least 1".into()));
                }
                vec![p, q]
            }
            InfiniteFamily::PruferTimesPrufer { p, q } => vec![p, q],
            InfiniteFamily::PruferTimesQTimesR { p, q, r } => vec![p, q, r],
            InfiniteFamily::Tarski => vec![],
        };
        if let Some(&x) = primes.iter().find(|&&x| !is_prime(x)) {
            return Err(Error::InvalidParameters(format!("{x} is not prime")));
        }
        for (i, a) in primes.iter().enumerate() {
            if primes[i + 1..].contains(a) {
                return Err(Error::InvalidParameters(format!(
                    "primes must be distinct (repeated {a})"
                )));
            }
        }
        Ok(())
    }

    /// Cyclic factors of the truncation; `None` for the Tarski shape.
    pub fn moduli(&self) -> Option<Vec<usize>> {
        let n = self.level;
        Some(match self.family {
            InfiniteFamily::Prufer { p } => vec![p.pow(n)],
            InfiniteFamily::PruferTimesP { p } => vec![p.pow(n), p],
            InfiniteFamily::PruferTimesQm { p, q, m } => vec![p.pow(n), q.pow(m)],
            InfiniteFamily::PruferTimesPrufer { p, q } => vec![p.pow(n), q.pow(n)],
            InfiniteFamily::PruferTimesQTimesR { p, q, r } => vec![p.pow(n), q, r],
            InfiniteFamily::Tarski => return None,
        })
    }

    /// Parses `prufer:p=2,level=3`, `prufer_times_p:p=3,level=2`,
    /// `prufer_times_qm:p=2,q=3,m=1,level=4`, `prufer_times_prufer:p=2,q=3,level=2`,
    /// `prufer_times_qr:p=2,q=3,r=5,level=1`, `tarski:level=5`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = text.split_once(':').unwrap_or((text, ""));
        let kv = parse_kv(args)?;
        let get = |key: &str| -> Result<usize> {
            kv.iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::Parse(format!("`{name}` needs parameter `{key}`")))
        };
        let family = match name.to_ascii_lowercase().as_str() {
            "prufer" => InfiniteFamily::Prufer { p: get("p")? },
            "prufer_times_p" => InfiniteFamily::PruferTimesP { p: get("p")? },
            "prufer_times_qm" => InfiniteFamily::PruferTimesQm {
                p: get("p")?,
                q: get("q")?,
                m: get("m")? as u32,
            },
            "prufer_times_prufer" => InfiniteFamily::PruferTimesPrufer {
                p: get("p")?,
                q: get("q")?,
            },
            "prufer_times_qr" => InfiniteFamily::PruferTimesQTimesR {
                p: get("p")?,
                q: get("q")?,
                r: get("r")?,
            },
            "tarski" => InfiniteFamily::Tarski,
            other => return Err(Error::Parse(format!("unknown infinite family `{other}`"))),
        };
        let spec = InfiniteFamilySpec::new(family, get("level")? as u32);
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for InfiniteFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = self.level;
        match self.family {
            InfiniteFamily::Prufer { p } => write!(f, "prufer:p={p},level={level}"),
            InfiniteFamily::PruferTimesP { p } => write!(f, "prufer_times_p:p={p},level={level}"),
            InfiniteFamily::PruferTimesQm { p, q, m } => {
                write!(f, "prufer_times_qm:p={p},q={q},m={m},level={level}")
            }
            InfiniteFamily::PruferTimesPrufer { p, q } => {
                write!(f, "prufer_times_prufer:p={p},q={q},level={level}")
            }
            InfiniteFamily::PruferTimesQTimesR { p, q, r } => {
                write!(f, "prufer_times_qr:p={p},q={q},r={r},level={level}")
            }
            InfiniteFamily::Tarski => write!(f, "tarski:level={level}"),
        }
    }
}

/// A finite stand-in for an infinite family.
#[derive(Clone, Debug)]
pub enum Truncation {
    Group(FiniteGroup),
    /// Lattice shape only: bottom (vertex 0), `level` atoms, top (last vertex).
    Graph(SimpleGraph),
}

pub fn truncate_infinite_family(spec: &InfiniteFamilySpec) -> Result<Truncation> {
    truncate_capped(spec, TRUNCATION_CAP)
}

pub fn truncate_capped(spec: &InfiniteFamilySpec, cap: usize) -> Result<Truncation> {
    spec.validate()?;
    match spec.moduli() {
        Some(moduli) => {
            let order = moduli.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m));
            match order {
                Some(o) if o <= cap => {}
                _ => {
                    return Err(Error::OrderCapExceeded {
                        order: order.unwrap_or(usize::MAX),
                        cap,
                    })
                }
            }
            Ok(Truncation::Group(
                FiniteGroup::abelian(&moduli, cap)?.with_source(spec.to_string()),
            ))
        }
        None => {
            let n = spec.level as usize;
            let top = n + 1;
            let edges = (1..=n).flat_map(|a| [(0, a), (a, top)]);
            let mut labels = vec!["1".to_string()];
            labels.extend((1..=n).map(|a| format!("P{a}")));
            labels.push("G".into());
            Ok(Truncation::Graph(
                SimpleGraph::new(n + 2, edges)?.with_labels(labels),
            ))
        }
    }
}
