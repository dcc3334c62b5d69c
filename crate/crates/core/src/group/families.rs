use std::fmt;

use serde::{Deserialize, Serialize};

use super::{factorize, is_prime, power_word, FiniteGroup, CONSTRUCTION_CAP};
use crate::error::{Error, Result};

/// Parameterized group families from the finite planar classification, plus dihedral
/// and cyclic groups.
///
/// Orders are given explicitly where the family name carries one: `Dihedral(8)` has
/// order 8, `GeneralizedQuaternion(16)` has order 16.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum FamilySpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        order: usize,
    },
    GeneralizedQuaternion {
        order: usize,
    },
    Semidihedral16,
    /// `M_{p^m} = <a,b : a^{p^{m-1}} = b^p = 1, b a b^-1 = a^{p^{m-2}+1}>`, order `p^m`.
    Modular {
        p: usize,
        m: u32,
    },
    /// `Z_p ⋊ Z_{q^n}` with `b a b^-1 = a^i`, order `p q^n`.
    MetacyclicPQ {
        p: usize,
        q: usize,
        n: u32,
        i: usize,
    },
    /// `(Z_p x Z_p) ⋊ Z_q` where `c` acts by the matrix `(i j; k l)`, order `p^2 q`.
    FrobeniusP2Q {
        p: usize,
        q: usize,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
}

impl FamilySpec {
    pub fn q8() -> Self {
        FamilySpec::GeneralizedQuaternion { order: 8 }
    }

    pub fn q16() -> Self {
        FamilySpec::GeneralizedQuaternion { order: 16 }
    }

    /// Order implied by the parameters (no validation).
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Cyclic { n } => n,
            FamilySpec::Dihedral { order } | FamilySpec::GeneralizedQuaternion { order } => order,
            FamilySpec::Semidihedral16 => 16,
            FamilySpec::Modular { p, m } => p.pow(m),
            FamilySpec::MetacyclicPQ { p, q, n, .. } => p * q.pow(n),
            FamilySpec::FrobeniusP2Q { p, q, .. } => p * p * q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            FamilySpec::Cyclic { n: 0 } => bad("cyclic order must be positive".into()),
            FamilySpec::Dihedral { order } if order < 2 || order % 2 == 1 => bad(format!(
                "dihedral order {order} must be even and at least 2"
            )),
            FamilySpec::GeneralizedQuaternion { order }
                if order < 8 || !order.is_power_of_two() =>
            {
                bad(format!(
                    "generalized quaternion order {order} must be 2^m with m >= 3"
                ))
            }
            FamilySpec::Modular { p, m } if !is_prime(p) || m < 3 => bad(format!(
                "modular group needs prime p and m >= 3 (got p={p}, m={m})"
            )),
            FamilySpec::MetacyclicPQ { p, q, n, i } => {
                if !is_prime(p) || !is_prime(q) || p == q {
                    return bad(format!("p={p}, q={q} must be distinct primes"));
                }
                if n == 0 {
                    return bad("n must be at least 1".into());
                }
                if (p - 1) % q != 0 {
                    return bad(format!("q={q} does not divide p-1={}", p - 1));
                }
                match multiplicative_order(i % p, p) {
                    Some(o) if o == q => Ok(()),
                    o => bad(format!("ord_{p}({i}) = {o:?}, expected {q}")),
                }
            }
            FamilySpec::FrobeniusP2Q { p, q, i, j, k, l } => {
                if !is_prime(p) || !is_prime(q) || p == q {
                    return bad(format!("p={p}, q={q} must be distinct primes"));
                }
                if q <= 2 {
                    return bad(format!("q={q} must exceed 2"));
                }
                if (p + 1) % q != 0 {
                    return bad(format!("q={q} does not divide p+1={}", p + 1));
                }
                let m = Mat2::new([i, j, k, l], p);
                match m.order() {
                    Some(o) if o == q => Ok(()),
                    Some(o) => bad(format!("matrix has order {o} in GL2({p}), expected {q}")),
                    None => bad(format!("matrix is singular mod {p}")),
                }
            }
            _ => Ok(()),
        }
    }

    /// Parses the compact textual form used on the command line and in corpus files,
    /// e.g. `qd16`, `cyclic:n=30`, `metacyclic:p=5,q=2,n=1,i=4`.
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
        let spec = match name.to_ascii_lowercase().as_str() {
            "cyclic" | "z" => FamilySpec::Cyclic { n: get("n")? },
            "dihedral" | "d" => FamilySpec::Dihedral { order: get("n")? },
            "quaternion" | "q" => FamilySpec::GeneralizedQuaternion { order: get("n")? },
            "q8" => FamilySpec::q8(),
            "q16" => FamilySpec::q16(),
            "qd16" | "semidihedral16" => FamilySpec::Semidihedral16,
            "modular" | "m" => FamilySpec::Modular {
                p: get("p")?,
                m: get("m")? as u32,
            },
            "metacyclic" => FamilySpec::MetacyclicPQ {
                p: get("p")?,
                q: get("q")?,
                n: get("n")? as u32,
                i: get("i")?,
            },
            "frobenius" => FamilySpec::FrobeniusP2Q {
                p: get("p")?,
                q: get("q")?,
                i: get("i")?,
                j: get("j")?,
                k: get("k")?,
                l: get("l")?,
            },
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cyclic { n } => write!(f, "cyclic:n={n}"),
            FamilySpec::Dihedral { order } => write!(f, "dihedral:n={order}"),
            FamilySpec::GeneralizedQuaternion { order } => write!(f, "quaternion:n={order}"),
            FamilySpec::Semidihedral16 => write!(f, "qd16"),
            FamilySpec::Modular { p, m } => write!(f, "modular:p={p},m={m}"),
            FamilySpec::MetacyclicPQ { p, q, n, i } => {
                write!(f, "metacyclic:p={p},q={q},n={n},i={i}")
            }
            FamilySpec::FrobeniusP2Q { p, q, i, j, k, l } => {
                write!(f, "frobenius:p={p},q={q},i={i},j={j},k={k},l={l}")
            }
        }
    }
}

pub(crate) fn parse_kv(args: &str) -> Result<Vec<(String, usize)>> {
    args.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{pair}`")))?;
            let v = v
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("`{v}` is not a non-negative integer")))?;
            Ok((k.trim().to_ascii_lowercase(), v))
        })
        .collect()
}

/// Builds the group described by `spec`.
pub fn construct_family(spec: &FamilySpec) -> Result<FiniteGroup> {
    spec.validate()?;
    if spec.order() > CONSTRUCTION_CAP {
        return Err(Error::OrderCapExceeded {
            order: spec.order(),
            cap: CONSTRUCTION_CAP,
        });
    }
    let mut g = match *spec {
        FamilySpec::Cyclic { n } => FiniteGroup::cyclic(n)?,
        FamilySpec::Dihedral { order } => {
            let n = order / 2;
            metacyclic(n, 2, (n as i64 - 1) as usize, 0)
        }
        FamilySpec::GeneralizedQuaternion { order } => {
            let n = order / 2;
            metacyclic(n, 2, n - 1, n / 2)
        }
        FamilySpec::Semidihedral16 => metacyclic(8, 2, 3, 0),
        FamilySpec::Modular { p, m } => metacyclic(p.pow(m - 1), p, p.pow(m - 2) + 1, 0),
        FamilySpec::MetacyclicPQ { p, q, n, i } => metacyclic(p, q.pow(n), i % p, 0),
        FamilySpec::FrobeniusP2Q { p, q, i, j, k, l } => {
            frobenius(p, q, Mat2::new([i, j, k, l], p))
        }
    };
    g.set_source(Some(spec.to_string()));
    Ok(g)
}

/// `<a, b : a^n = 1, b^m = a^c, b a b^-1 = a^r>` on normal forms `a^s b^t`,
/// element index `t*n + s`. Requires `r^m = 1` and `c r = c` modulo `n`.
fn metacyclic(n: usize, m: usize, r: usize, c: usize) -> FiniteGroup {
    let order = n * m;
    // r^t mod n for t < m
    let mut rpow = vec![1 % n.max(1); m];
    for t in 1..m {
        rpow[t] = rpow[t - 1] * r % n;
    }
    let labels = (0..order)
        .map(|x| {
            let (s, t) = (x % n, x / n);
            let w = power_word("a", s) + &power_word("b", t);
            if w.is_empty() {
                "1".to_string()
            } else {
                w
            }
        })
        .collect();
    FiniteGroup::from_rule(order, 0, labels, |x, y| {
        let (s, t) = (x % n, x / n);
        let (u, v) = (y % n, y / n);
        let mut exp_a = s + u * rpow[t];
        let mut exp_b = t + v;
        if exp_b >= m {
            exp_b -= m;
            exp_a += c;
        }
        exp_b * n + exp_a % n
    })
}

/// `(Z_p x Z_p) ⋊ Z_q`, element `a^x b^y c^t` at index `t*p*p + x*p + y`.
fn frobenius(p: usize, q: usize, m: Mat2) -> FiniteGroup {
    let pp = p * p;
    let order = pp * q;
    // powers of the action matrix
    let mut mats = vec![Mat2::identity(p)];
    for t in 1..q {
        mats.push(mats[t - 1].mul(&m));
    }
    let labels = (0..order)
        .map(|e| {
            let (t, x, y) = (e / pp, e % pp / p, e % p);
            let w = power_word("a", x) + &power_word("b", y) + &power_word("c", t);
            if w.is_empty() {
                "1".to_string()
            } else {
                w
            }
        })
        .collect();
    FiniteGroup::from_rule(order, 0, labels, |e, f| {
        let (t, x, y) = (e / pp, e % pp / p, e % p);
        let (u, x2, y2) = (f / pp, f % pp / p, f % p);
        // c^t (a^x2 b^y2) c^-t = a^x' b^y' with (x', y') = (x2, y2) M^t
        let (ax, by) = mats[t].act(x2, y2);
        ((t + u) % q) * pp + (x + ax) % p * p + (y + by) % p
    })
}

/// 2x2 matrix over Z_p, row-major `[i, j, k, l]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Mat2 {
    e: [usize; 4],
    p: usize,
}

impl Mat2 {
    pub(crate) fn new(e: [usize; 4], p: usize) -> Self {
        Mat2 {
            e: e.map(|v| v % p),
            p,
        }
    }

    fn identity(p: usize) -> Self {
        Mat2::new([1, 0, 0, 1], p)
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.e;
        let [e, f, g, h] = o.e;
        Mat2::new(
            [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
            self.p,
        )
    }

    /// Row vector times matrix: the image of `a^x b^y` under the action.
    fn act(&self, x: usize, y: usize) -> (usize, usize) {
        let [i, j, k, l] = self.e;
        ((x * i + y * k) % self.p, (x * j + y * l) % self.p)
    }

    /// Multiplicative order in GL2(p), or `None` if singular.
    pub(crate) fn order(&self) -> Option<usize> {
        let [a, b, c, d] = self.e;
        if (a * d + self.p * self.p - b * c % self.p).is_multiple_of(self.p) {
            return None;
        }
        let id = Mat2::identity(self.p);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        Some(k)
    }

    /// All matrices of the given order in GL2(p), lexicographic by entries.
    pub(crate) fn all_of_order(p: usize, q: usize) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    for l in 0..p {
                        if Mat2::new([i, j, k, l], p).order() == Some(q) {
                            out.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Order of `i` in the multiplicative group mod prime `p`.
pub(crate) fn multiplicative_order(i: usize, p: usize) -> Option<usize> {
    if i.is_multiple_of(p) {
        return None;
    }
    let mut x = i % p;
    let mut k = 1;
    while x != 1 {
        x = x * i % p;
        k += 1;
    }
    Some(k)
}

/// Smallest `i` with multiplicative order `q` mod `p`.
pub(crate) fn smallest_root_of_order(p: usize, q: usize) -> Option<usize> {
    (2..p).find(|&i| multiplicative_order(i, p) == Some(q))
}

/// `p^m` if `n` is a prime power.
pub(crate) fn prime_power(n: usize) -> Option<(usize, u32)> {
    match factorize(n).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn involutions(g: &FiniteGroup) -> usize {
        (0..g.order()).filter(|&x| g.element_order(x) == 2).count()
    }

    fn check_axioms(g: &FiniteGroup) {
        FiniteGroup::from_cayley_table(&g.table(), None).expect("valid group");
    }

    #[test]
    fn quaternion_eight_has_unique_involution() {
        let q8 = construct_family(&FamilySpec::q8()).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(involutions(&q8), 1);
        check_axioms(&q8);
    }

    #[test]
    fn orders_match_parameters() {
        let specs = [
            FamilySpec::Dihedral { order: 16 },
            FamilySpec::q16(),
            FamilySpec::Semidihedral16,
            FamilySpec::Modular { p: 2, m: 4 },
            FamilySpec::Modular { p: 3, m: 3 },
            FamilySpec::MetacyclicPQ {
                p: 7,
                q: 3,
                n: 2,
                i: 2,
            },
            FamilySpec::FrobeniusP2Q {
                p: 2,
                q: 3,
                i: 0,
                j: 1,
                k: 1,
                l: 1,
            },
        ];
        for s in specs {
            let g = construct_family(&s).unwrap();
            assert_eq!(g.order(), s.order(), "{s}");
            check_axioms(&g);
            assert_eq!(FamilySpec::parse(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn metacyclic_five_two_is_dihedral_ten() {
        let g = construct_family(&FamilySpec::MetacyclicPQ {
            p: 5,
            q: 2,
            n: 1,
            i: 4,
        })
        .unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(involutions(&g), 5);
        assert!(!g.is_abelian());
    }

    #[test]
    fn invalid_parameters_rejected() {
        let bad = [
            FamilySpec::MetacyclicPQ {
                p: 5,
                q: 2,
                n: 1,
                i: 2,
            }, // ord_5(2) = 4
            FamilySpec::MetacyclicPQ {
                p: 7,
                q: 5,
                n: 1,
                i: 2,
            }, // 5 does not divide 6
            FamilySpec::FrobeniusP2Q {
                p: 3,
                q: 2,
                i: 0,
                j: 1,
                k: 1,
                l: 0,
            }, // q must exceed 2
            FamilySpec::FrobeniusP2Q {
                p: 2,
                q: 3,
                i: 1,
                j: 1,
                k: 0,
                l: 1,
            }, // order 2 matrix
            FamilySpec::Modular { p: 4, m: 3 },
            FamilySpec::GeneralizedQuaternion { order: 12 },
        ];
        for s in bad {
            assert!(
                matches!(construct_family(&s), Err(Error::InvalidParameters(_))),
                "{s}"
            );
        }
    }

    #[test]
    fn parse_errors() {
        assert!(FamilySpec::parse("nonsense").is_err());
        assert!(FamilySpec::parse("cyclic").is_err());
        assert!(FamilySpec::parse("cyclic:n=x").is_err());
    }

    #[test]
    fn gl2_orders() {
        assert_eq!(Mat2::new([0, 1, 1, 1], 2).order(), Some(3));
        assert_eq!(Mat2::new([1, 1, 1, 1], 2).order(), None);
        assert_eq!(Mat2::all_of_order(2, 3).len(), 2);
    }
}
