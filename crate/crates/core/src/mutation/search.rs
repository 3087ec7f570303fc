use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::Enumerator;
use super::{
    as_binomial_power, candidate_data, mutate, necessary_conditions, rigid_test, terminal_datum,
    CertFactor, MutationDatum, Provenance, SearchBounds, Violation, ZeroMutableCertificate,
};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Why a polynomial is not 0-mutable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoReason {
    /// A necessary condition fails.
    NecessaryConditions { violations: Vec<Violation> },
    /// The support has rank ≤ 1 and `f` is not `(1 + x^e)^k x^l`.
    NotBinomial,
    /// `L(S(f))` is not the line through `f`. Relies on the equivalence of
    /// 0-mutability and rigid maximal mutability.
    RigidityFailure { theorem_dependent: bool },
    /// A 0-mutable factor divides `f` and the cofactor is not 0-mutable.
    Cofactor {
        factor: LaurentPoly,
        reason: Box<NoReason>,
    },
}

impl std::fmt::Display for NoReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoReason::NecessaryConditions { violations } => {
                let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                write!(f, "necessary conditions fail: {}", parts.join("; "))
            }
            NoReason::NotBinomial => write!(f, "rank-1 support but not a binomial power"),
            NoReason::RigidityFailure { .. } => {
                write!(f, "not rigid maximally mutable (theorem-dependent)")
            }
            NoReason::Cofactor { factor, reason } => {
                write!(f, "after dividing by {factor}: {reason}")
            }
        }
    }
}

/// Outcome of [`decide_zero_mutable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(ZeroMutableCertificate),
    No(NoReason),
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

/// Outcome of [`find_chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSearch {
    /// Mutations taking `f` to a monomial with coefficient 1.
    Found(Vec<MutationDatum>),
    /// No chain within the bounds; `nodes` polynomials were expanded.
    Exhausted { nodes: usize },
}

struct Node {
    poly: LaurentPoly,
    parent: Option<(usize, MutationDatum)>,
    depth: usize,
}

fn path_to(nodes: &[Node], mut i: usize) -> Vec<MutationDatum> {
    let mut out = Vec::new();
    while let Some((p, d)) = &nodes[i].parent {
        out.push(d.clone());
        i = *p;
    }
    out.reverse();
    out
}

/// Chain ending at `g` if `g` is a binomial power, given the chain reaching it.
fn close_chain(mut chain: Vec<MutationDatum>, g: &LaurentPoly) -> Option<Vec<MutationDatum>> {
    let (e, k, l) = as_binomial_power(g)?;
    if k > 0 {
        chain.push(terminal_datum(e, k, l));
    }
    Some(chain)
}

/// Best-first search over mutations, smallest Newton polygon first, for a
/// chain ending at a monomial with coefficient 1. Polynomials equal up to
/// affine unimodular change of exponents are visited once.
pub fn find_chain(f: &LaurentPoly, bounds: &SearchBounds) -> ChainSearch {
    if let Some(chain) = close_chain(Vec::new(), f) {
        return ChainSearch::Found(chain);
    }
    let Ok(newt) = f.newton_polygon() else {
        return ChainSearch::Exhausted { nodes: 0 };
    };
    if newt.dimension() < 2 {
        return ChainSearch::Exhausted { nodes: 0 };
    }
    let area_cap = bounds.max_area_factor * Rational64::from_integer(newt.double_area());
    let mut nodes = vec![Node {
        poly: f.clone(),
        parent: None,
        depth: 0,
    }];
    let mut seen: HashSet<_> = HashSet::new();
    seen.insert(f.canonical_key().expect("nonzero"));
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((newt.double_area(), f.len(), 0usize)));
    let mut expanded = 0;
    while let Some(Reverse((_, _, id))) = heap.pop() {
        if expanded >= bounds.node_cap {
            break;
        }
        expanded += 1;
        if nodes[id].depth >= bounds.max_depth {
            continue;
        }
        let cur = nodes[id].poly.clone();
        let data = candidate_data(&cur, bounds, true);
        let children: Vec<(MutationDatum, LaurentPoly)> = data
            .into_par_iter()
            .filter_map(|d| mutate(&cur, &d).ok().map(|g| (d, g)))
            .collect();
        for (d, g) in children {
            if as_binomial_power(&g).is_some() {
                let mut chain = path_to(&nodes, id);
                chain.push(d);
                return ChainSearch::Found(close_chain(chain, &g).expect("binomial power"));
            }
            let Ok(gn) = g.newton_polygon() else { continue };
            if gn.dimension() < 2
                || Rational64::from_integer(gn.double_area()) > area_cap
                || !necessary_conditions(&g).passed()
            {
                continue;
            }
            let key = g.canonical_key().expect("nonzero");
            if !seen.insert(key) {
                continue;
            }
            let next = nodes.len();
            heap.push(Reverse((gn.double_area(), g.len(), next)));
            nodes.push(Node {
                poly: g,
                parent: Some((id, d)),
                depth: nodes[id].depth + 1,
            });
        }
    }
    ChainSearch::Exhausted { nodes: expanded }
}

fn merge_factor(cert: &mut ZeroMutableCertificate, poly: LaurentPoly, chain: Vec<MutationDatum>) {
    match cert.factors.iter_mut().find(|f| f.poly == poly) {
        Some(f) => f.multiplicity += 1,
        None => cert.factors.push(CertFactor {
            poly,
            multiplicity: 1,
            chain,
        }),
    }
}

/// Decides 0-mutability. Rank-≤1 supports are decided exactly. Otherwise
/// 0-mutable factors on Minkowski summands of `Newt f` are divided out; an
/// irreducible remainder is tested for rigidity and then searched for a chain.
pub fn decide_zero_mutable(f: &LaurentPoly, bounds: &SearchBounds) -> Result<Verdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut en = Enumerator::new(bounds.clone());
    Ok(decide_with(f, bounds, &mut en))
}

pub(crate) fn decide_with(f: &LaurentPoly, bounds: &SearchBounds, en: &mut Enumerator) -> Verdict {
    let report = necessary_conditions(f);
    if !report.passed() {
        return Verdict::No(NoReason::NecessaryConditions {
            violations: report.violations,
        });
    }
    let newt = f.newton_polygon().expect("nonzero");
    if newt.dimension() < 2 {
        return match as_binomial_power(f) {
            Some((e, k, l)) => {
                let mut cert = ZeroMutableCertificate {
                    factors: Vec::new(),
                    shift: l,
                    provenance: Provenance::UserSupplied,
                };
                if k > 0 {
                    cert.factors.push(CertFactor {
                        poly: &LaurentPoly::one() + &LaurentPoly::x_pow(e),
                        multiplicity: k,
                        chain: Vec::new(),
                    });
                }
                Verdict::Yes(cert)
            }
            None => Verdict::No(NoReason::NotBinomial),
        };
    }
    for summand in en.proper_summands(&newt) {
        for (g, chain) in en.irreducibles(&summand).verified.clone() {
            let Some(q) = f.div_exact(&g) else { continue };
            return match decide_with(&q, bounds, en) {
                Verdict::Yes(mut cert) => {
                    merge_factor(&mut cert, g, chain);
                    Verdict::Yes(cert)
                }
                Verdict::No(reason) => Verdict::No(NoReason::Cofactor {
                    factor: g,
                    reason: Box::new(reason),
                }),
                Verdict::Unknown => Verdict::Unknown,
            };
        }
    }
    if !rigid_test(f, bounds) {
        return Verdict::No(NoReason::RigidityFailure {
            theorem_dependent: true,
        });
    }
    let (g, shift) = f.normalized();
    match find_chain(&g, bounds) {
        ChainSearch::Found(chain) => Verdict::Yes(ZeroMutableCertificate {
            factors: vec![CertFactor {
                poly: g,
                multiplicity: 1,
                chain,
            }],
            shift,
            provenance: Provenance::UserSupplied,
        }),
        ChainSearch::Exhausted { .. } => Verdict::Unknown,
    }
}
