use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::rigid::mutability_space;
use super::search::{find_chain, ChainSearch};
use super::{
    necessary_conditions, CertFactor, MutationDatum, Provenance, SearchBounds,
    ZeroMutableCertificate,
};
use crate::lattice::minkowski::all_decompositions;
use crate::lattice::{AffineFunctional, DecompositionFilter, LatticePolygon};
use crate::laurent::{rat, LaurentPoly};

/// 0-mutable polynomials with a given Newton polygon.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Enumeration {
    /// Certified polynomials in deterministic order.
    pub polys: Vec<(LaurentPoly, ZeroMutableCertificate)>,
    /// Rigid irreducible candidates for which no chain was found within bounds.
    pub unverified: Vec<LaurentPoly>,
}

/// Irreducible candidates on a polygon whose lexicographically minimal
/// vertex is the origin.
#[derive(Clone, Debug, Default)]
pub(crate) struct IrreducibleSet {
    pub verified: Vec<(LaurentPoly, Vec<MutationDatum>)>,
    pub unverified: Vec<LaurentPoly>,
}

/// Partitions of `n` into non-increasing parts.
fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for d in (1..=n.min(max)).rev() {
            cur.push(d);
            rec(n - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Edge data `(p, q)` encoding a partition `d₁ ≥ d₂ ≥ …` of the edge length.
fn partition_data(parts: &[i64]) -> Vec<(i64, i64)> {
    let mut rem: i64 = parts.iter().sum();
    let mut out = Vec::new();
    for (i, &d) in parts.iter().enumerate() {
        out.push((d, rem + d * i as i64));
        rem -= d;
    }
    out
}

/// Constraint sets on a two-dimensional polygon: one partition of `ℓ(E)` per edge.
fn profiles(q: &LatticePolygon) -> Vec<Vec<MutationDatum>> {
    let mut acc: Vec<Vec<MutationDatum>> = vec![Vec::new()];
    for edge in q.edges().unwrap() {
        let n = edge.normal();
        let e = edge.direction.positive();
        let options: Vec<Vec<MutationDatum>> = partitions(edge.length)
            .iter()
            .map(|parts| {
                partition_data(parts)
                    .into_iter()
                    .map(|(p, off)| {
                        let phi =
                            AffineFunctional::new(p * n.x, p * n.y, -p * edge.min_value - off);
                        MutationDatum::binomial(phi, e, 1).expect("edge datum")
                    })
                    .collect()
            })
            .collect();
        acc = acc
            .into_iter()
            .flat_map(|base| {
                options.iter().map(move |o| {
                    let mut v = base.clone();
                    v.extend(o.iter().cloned());
                    v
                })
            })
            .collect();
    }
    acc
}

/// Memoized enumeration over normalized polygons.
pub(crate) struct Enumerator {
    bounds: SearchBounds,
    irreducible: HashMap<LatticePolygon, Arc<IrreducibleSet>>,
    all: HashMap<LatticePolygon, Arc<Vec<(LaurentPoly, ZeroMutableCertificate)>>>,
}

impl Enumerator {
    pub fn new(bounds: SearchBounds) -> Self {
        Self {
            bounds,
            irreducible: HashMap::new(),
            all: HashMap::new(),
        }
    }

    /// Distinct summands, translated to the origin, of nontrivial
    /// decompositions of `p`.
    pub fn proper_summands(&self, p: &LatticePolygon) -> Vec<LatticePolygon> {
        let set: BTreeSet<LatticePolygon> = all_decompositions(p, DecompositionFilter::All)
            .into_iter()
            .filter(|d| d.len() >= 2)
            .flat_map(|d| d.summands)
            .collect();
        set.into_iter().collect()
    }

    /// Irreducible candidates on `q` translated to the origin.
    pub fn irreducibles(&mut self, q: &LatticePolygon) -> Arc<IrreducibleSet> {
        let q = q.normalized_translate();
        if let Some(s) = self.irreducible.get(&q) {
            return s.clone();
        }
        let set = Arc::new(self.compute_irreducibles(&q));
        self.irreducible.insert(q, set.clone());
        set
    }

    fn compute_irreducibles(&mut self, q: &LatticePolygon) -> IrreducibleSet {
        match q.dimension() {
            0 => IrreducibleSet::default(),
            1 => {
                let mut out = IrreducibleSet::default();
                if q.is_unit_segment() {
                    let far = q.vertices()[1];
                    out.verified
                        .push((&LaurentPoly::one() + &LaurentPoly::x_pow(far), Vec::new()));
                }
                out
            }
            _ => {
                let products: BTreeSet<LaurentPoly> =
                    self.products(q).into_iter().map(|(f, _)| f).collect();
                let origin = q.lex_min();
                let candidates: BTreeSet<LaurentPoly> = profiles(q)
                    .par_iter()
                    .filter_map(|data| {
                        let space = mutability_space(q, data);
                        if space.len() != 1 {
                            return None;
                        }
                        let g = &space[0];
                        let c = g.coefficient(origin);
                        if c == rat(0) {
                            return None;
                        }
                        let g = g.scale(&(rat(1) / c));
                        let ok = g.newton_polygon().ok().as_ref() == Some(q)
                            && necessary_conditions(&g).passed();
                        ok.then_some(g)
                    })
                    .collect();
                let fresh: Vec<LaurentPoly> = candidates
                    .into_iter()
                    .filter(|g| !products.contains(g))
                    .collect();
                let bounds = &self.bounds;
                let searched: Vec<(LaurentPoly, ChainSearch)> = fresh
                    .into_par_iter()
                    .map(|g| {
                        let r = find_chain(&g, bounds);
                        (g, r)
                    })
                    .collect();
                let mut out = IrreducibleSet::default();
                for (g, r) in searched {
                    match r {
                        ChainSearch::Found(chain) => out.verified.push((g, chain)),
                        ChainSearch::Exhausted { .. } => out.unverified.push(g),
                    }
                }
                out
            }
        }
    }

    /// Products of irreducibles over nontrivial decompositions of `q`,
    /// which must have its minimal vertex at the origin.
    fn products(&mut self, q: &LatticePolygon) -> Vec<(LaurentPoly, ZeroMutableCertificate)> {
        let mut out: BTreeMap<LaurentPoly, ZeroMutableCertificate> = BTreeMap::new();
        for dec in all_decompositions(q, DecompositionFilter::All) {
            if dec.len() < 2 {
                continue;
            }
            let choices: Vec<Arc<IrreducibleSet>> =
                dec.summands.iter().map(|s| self.irreducibles(s)).collect();
            if choices.iter().any(|c| c.verified.is_empty()) {
                continue;
            }
            let mut picks: Vec<Vec<usize>> = vec![Vec::new()];
            for c in &choices {
                picks = picks
                    .into_iter()
                    .flat_map(|base| {
                        (0..c.verified.len()).map(move |i| {
                            let mut v = base.clone();
                            v.push(i);
                            v
                        })
                    })
                    .collect();
            }
            for pick in picks {
                let mut cert = ZeroMutableCertificate {
                    factors: Vec::new(),
                    shift: q.lex_min(),
                    provenance: Provenance::Enumeration,
                };
                for (c, &i) in choices.iter().zip(&pick) {
                    let (g, chain) = &c.verified[i];
                    match cert.factors.iter_mut().find(|f| f.poly == *g) {
                        Some(f) => f.multiplicity += 1,
                        None => cert.factors.push(CertFactor {
                            poly: g.clone(),
                            multiplicity: 1,
                            chain: chain.clone(),
                        }),
                    }
                }
                cert.factors.sort_by(|a, b| a.poly.cmp(&b.poly));
                out.entry(cert.product()).or_insert(cert);
            }
        }
        out.into_iter().collect()
    }

    /// All certified 0-mutables on `q` translated to the origin.
    fn all_normalized(
        &mut self,
        q: &LatticePolygon,
    ) -> Arc<Vec<(LaurentPoly, ZeroMutableCertificate)>> {
        if let Some(s) = self.all.get(q) {
            return s.clone();
        }
        let mut out: BTreeMap<LaurentPoly, ZeroMutableCertificate> = BTreeMap::new();
        match q.dimension() {
            0 => {
                out.insert(
                    LaurentPoly::one(),
                    ZeroMutableCertificate {
                        factors: Vec::new(),
                        shift: q.lex_min(),
                        provenance: Provenance::Enumeration,
                    },
                );
            }
            1 => {
                let far = q.vertices()[1];
                let len = far.content();
                let e = far.primitive();
                let cert = ZeroMutableCertificate {
                    factors: vec![CertFactor {
                        poly: &LaurentPoly::one() + &LaurentPoly::x_pow(e),
                        multiplicity: len as u32,
                        chain: Vec::new(),
                    }],
                    shift: q.lex_min(),
                    provenance: Provenance::Enumeration,
                };
                out.insert(cert.product(), cert);
            }
            _ => {
                for (f, cert) in self.products(q) {
                    out.insert(f, cert);
                }
                let irr = self.irreducibles(q);
                for (g, chain) in &irr.verified {
                    out.entry(g.clone())
                        .or_insert_with(|| ZeroMutableCertificate {
                            factors: vec![CertFactor {
                                poly: g.clone(),
                                multiplicity: 1,
                                chain: chain.clone(),
                            }],
                            shift: q.lex_min(),
                            provenance: Provenance::Enumeration,
                        });
                }
            }
        }
        let mut v: Vec<(LaurentPoly, ZeroMutableCertificate)> = out.into_iter().collect();
        v.sort_by_cached_key(|(f, _)| f.to_string());
        let v = Arc::new(v);
        self.all.insert(q.clone(), v.clone());
        v
    }
}

/// Rigid irreducible candidates on `q` and the subset verified by a
/// mutation chain, in the coordinates of `q`.
pub fn irreducible_zero_mutables(
    q: &LatticePolygon,
    bounds: &SearchBounds,
) -> (Vec<(LaurentPoly, Vec<MutationDatum>)>, Vec<LaurentPoly>) {
    let mut en = Enumerator::new(bounds.clone());
    let set = en.irreducibles(q);
    let t = q.lex_min();
    (
        set.verified
            .iter()
            .map(|(g, c)| (g.shift(t), c.clone()))
            .collect(),
        set.unverified.iter().map(|g| g.shift(t)).collect(),
    )
}

/// All certified 0-mutable polynomials with Newton polygon `f_poly`:
/// irreducible ones from rigid solutions verified by a chain search, and
/// products over Minkowski decompositions.
pub fn enumerate_zero_mutable(f_poly: &LatticePolygon, bounds: &SearchBounds) -> Enumeration {
    let mut en = Enumerator::new(bounds.clone());
    let q = f_poly.normalized_translate();
    let t = f_poly.lex_min();
    let all = en.all_normalized(&q);
    let mut polys: Vec<(LaurentPoly, ZeroMutableCertificate)> = all
        .iter()
        .map(|(f, cert)| {
            let mut cert = cert.clone();
            cert.shift = t;
            (f.shift(t), cert)
        })
        .collect();
    polys.sort_by_cached_key(|(f, _)| f.to_string());
    let mut unverified: Vec<LaurentPoly> = if q.dimension() == 2 {
        en.irreducibles(&q)
            .unverified
            .iter()
            .map(|g| g.shift(t))
            .collect()
    } else {
        Vec::new()
    };
    unverified.sort_by_cached_key(|g| g.to_string());
    Enumeration { polys, unverified }
}
