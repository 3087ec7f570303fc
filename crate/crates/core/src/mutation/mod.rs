//! Mutations of Laurent polynomials and 0-mutability.

mod certificate;
mod enumerate;
mod rigid;
mod search;
mod seed;

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{AffineFunctional, LatticePolygon, LatticeVector};
use crate::laurent::{KernelPoly, LaurentPoly};

pub use certificate::{replay_chain, CertFactor, Provenance, ZeroMutableCertificate};
pub use enumerate::{enumerate_zero_mutable, irreducible_zero_mutables, Enumeration};
pub use rigid::{mutability_space, rigid_report, rigid_test, supported_data};
pub use search::{decide_zero_mutable, find_chain, ChainSearch, NoReason, Verdict};
pub use seed::{s_minus, seed_tilde, tangent_table, Seed, SeedEntry, TangentTable};

/// A mutation datum `(φ, h)` with `h = (1 + x^e)^k` and `φ₀(e) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationDatum {
    pub phi: AffineFunctional,
    pub h: KernelPoly,
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    phi: [i64; 3],
    h_dir: [i64; 2],
    h_pow: u32,
}

impl Serialize for MutationDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DatumJson {
            phi: self.phi.as_array(),
            h_dir: self.h.direction.into(),
            h_pow: self.power(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MutationDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DatumJson::deserialize(d)?;
        MutationDatum::binomial(j.phi.into(), j.h_dir.into(), j.h_pow)
            .map_err(serde::de::Error::custom)
    }
}

impl MutationDatum {
    /// Validates `φ` non-constant, `φ₀(e) = 0` and `h` a binomial power.
    pub fn new(phi: AffineFunctional, h: KernelPoly) -> Result<Self> {
        if phi.is_constant() {
            return Err(Error::MalformedDatum("φ is constant".into()));
        }
        if phi.eval_linear(h.direction) != 0 {
            return Err(Error::MalformedDatum(format!(
                "h lies along {} but φ₀ does not vanish there",
                h.direction
            )));
        }
        if !h.is_binomial() {
            return Err(Error::MalformedDatum(
                "h is not of the form (1 + x^e)^k".into(),
            ));
        }
        Ok(Self { phi, h })
    }

    /// `(φ, (1 + x^e)^k)`.
    pub fn binomial(phi: AffineFunctional, e: LatticeVector, k: u32) -> Result<Self> {
        if !e.is_primitive() {
            return Err(Error::MalformedDatum(format!("{e} is not primitive")));
        }
        Self::new(phi, KernelPoly::binomial_power(e, k))
    }

    /// Reads `h` from a Laurent polynomial such as `1 + x`.
    pub fn from_laurent(phi: AffineFunctional, h: &LaurentPoly) -> Result<Self> {
        Self::new(phi, KernelPoly::from_laurent(h)?)
    }

    /// Exponent `k` in `h = (1 + x^e)^k`.
    pub fn power(&self) -> u32 {
        self.h.degree() as u32
    }

    pub fn direction(&self) -> LatticeVector {
        self.h.direction
    }
}

impl fmt::Display for MutationDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.phi, self.h.to_laurent())
    }
}

/// `(−φ, h)`; undoes a mutation.
pub fn inverse_datum(d: &MutationDatum) -> MutationDatum {
    MutationDatum {
        phi: -d.phi,
        h: d.h.clone(),
    }
}

/// Whether `h^{−k}` divides `f_k` for every level `k < 0`.
pub fn is_mutable(f: &LaurentPoly, d: &MutationDatum) -> bool {
    first_obstruction(f, d).is_none()
}

fn first_obstruction(f: &LaurentPoly, d: &MutationDatum) -> Option<(i64, LaurentPoly)> {
    for (k, fk) in f.slices(&d.phi) {
        if k >= 0 {
            break;
        }
        let hk = d.h.pow((-k) as u32);
        match crate::laurent::line_remainder(&hk, &fk) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => return Some((k, r)),
            Err(_) => return Some((k, fk)),
        }
    }
    None
}

/// `Σ_k h^k f_k`.
pub fn mutate(f: &LaurentPoly, d: &MutationDatum) -> Result<LaurentPoly> {
    if d.phi.eval_linear(d.h.direction) != 0 || d.phi.is_constant() {
        return Err(Error::MalformedDatum("kernel mismatch".into()));
    }
    if let Some((level, r)) = first_obstruction(f, d) {
        return Err(Error::NotMutable {
            level,
            remainder: r.to_string(),
        });
    }
    let mut out = LaurentPoly::zero();
    for (k, fk) in f.slices(&d.phi) {
        let term = if k < 0 {
            d.h.pow((-k) as u32)
                .divide(&fk)?
                .expect("divisibility checked")
        } else if k == 0 {
            fk
        } else {
            &fk * &d.h.pow(k as u32).to_laurent()
        };
        out = &out + &term;
    }
    Ok(out)
}

/// Limits for the mutation-chain search and candidate enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Longest mutation chain explored.
    pub max_depth: usize,
    /// Cap on `double_area` of intermediate Newton polygons relative to the start.
    pub max_area_factor: Rational64,
    /// Largest multiplier of the edge normal; `None` means the longest edge length.
    pub max_p: Option<i64>,
    /// Largest offset; `None` means the larger of the longest edge length
    /// and the largest lattice height over an edge.
    pub max_q: Option<i64>,
    /// Maximum number of search nodes.
    pub node_cap: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_depth: 16,
            max_area_factor: Rational64::from_integer(4),
            max_p: None,
            max_q: None,
            node_cap: 1_000_000,
        }
    }
}

impl SearchBounds {
    /// Multiplier and offset limits for a given Newton polygon.
    pub fn pq_for(&self, newt: &LatticePolygon) -> (i64, i64) {
        let len = newt.max_edge_length().max(1);
        let p = self.max_p.unwrap_or(len);
        let q = self
            .max_q
            .unwrap_or_else(|| len.max(newt.max_edge_height()).max(1));
        (p, q)
    }

    /// Applies `key=value` overrides, comma separated.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                Error::InvalidParameters(format!("expected key=value, got {item:?}"))
            })?;
            let bad = || Error::InvalidParameters(format!("bad value for {k}: {v:?}"));
            let int = |v: &str| {
                v.trim().parse::<i64>().map_err(|_| bad()).and_then(|n| {
                    if n > 0 {
                        Ok(n)
                    } else {
                        Err(bad())
                    }
                })
            };
            match k.trim() {
                "max_depth" => self.max_depth = int(v)? as usize,
                "max_area_factor" => {
                    let r: Rational64 = v.trim().parse().map_err(|_| bad())?;
                    if r <= Rational64::zero() {
                        return Err(bad());
                    }
                    self.max_area_factor = r;
                }
                "max_p" => self.max_p = Some(int(v)?),
                "max_q" => self.max_q = Some(int(v)?),
                "node_cap" => self.node_cap = int(v)? as usize,
                other => return Err(Error::InvalidParameters(format!("unknown bound {other:?}"))),
            }
        }
        Ok(self)
    }
}

/// Edge data `φ = p·(n_E − min) − q`, `h = 1 + x^e` with `1 ≤ p ≤ max_p`,
/// `1 ≤ q ≤ max_q`. The direction `e` is taken with positive sign
/// (`x > 0`, or `x = 0` and `y > 0`). With `only_mutable`, data for which `f`
/// is not mutable are dropped.
pub fn candidate_data(
    f: &LaurentPoly,
    bounds: &SearchBounds,
    only_mutable: bool,
) -> Vec<MutationDatum> {
    let Ok(newt) = f.newton_polygon() else {
        return Vec::new();
    };
    if newt.dimension() < 2 {
        return Vec::new();
    }
    let (max_p, max_q) = bounds.pq_for(&newt);
    let mut out = Vec::new();
    for edge in newt.edges().unwrap() {
        let n = edge.normal();
        let e = edge.direction.positive();
        for p in 1..=max_p {
            for q in 1..=max_q {
                let phi = AffineFunctional::new(p * n.x, p * n.y, -p * edge.min_value - q);
                let d = MutationDatum::binomial(phi, e, 1).expect("edge datum is well formed");
                if only_mutable && !is_mutable(f, &d) {
                    continue;
                }
                out.push(d);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A failed necessary condition for 0-mutability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonIntegral {
        exp: LatticeVector,
    },
    Negative {
        exp: LatticeVector,
    },
    VertexNotOne {
        vertex: LatticeVector,
    },
    BoundaryNotBinomial {
        from: LatticeVector,
        to: LatticeVector,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonIntegral { exp } => write!(f, "non-integral coefficient at {exp}"),
            Violation::Negative { exp } => write!(f, "negative coefficient at {exp}"),
            Violation::VertexNotOne { vertex } => {
                write!(f, "vertex coefficient at {vertex} is not 1")
            }
            Violation::BoundaryNotBinomial { from, to } => {
                write!(f, "boundary from {from} to {to} is not binomial")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryReport {
    pub violations: Vec<Violation>,
}

impl NecessaryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `f|_{[a,b]}` is `(1 + x^e)^ℓ x^a` along the segment from `a` to `b`.
fn segment_is_binomial(f: &LaurentPoly, a: LatticeVector, b: LatticeVector) -> bool {
    let d = b - a;
    let l = d.content();
    let e = d.primitive();
    (0..=l).all(|i| f.coefficient(a + e * i) == crate::laurent::binomial(l as u64, i as u64))
}

/// Checks non-negativity and integrality of coefficients, vertex
/// coefficients 1 and binomial boundary restrictions.
pub fn necessary_conditions(f: &LaurentPoly) -> NecessaryReport {
    let mut violations = Vec::new();
    for (e, c) in f.terms() {
        if !c.is_integer() {
            violations.push(Violation::NonIntegral { exp: *e });
        }
        if *c < num_rational::BigRational::zero() {
            violations.push(Violation::Negative { exp: *e });
        }
    }
    if let Ok(newt) = f.newton_polygon() {
        for &v in newt.vertices() {
            if !f.coefficient(v).is_one() {
                violations.push(Violation::VertexNotOne { vertex: v });
            }
        }
        match newt.dimension() {
            0 => {}
            1 => {
                let (a, b) = (newt.vertices()[0], newt.vertices()[1]);
                if !segment_is_binomial(f, a, b) {
                    violations.push(Violation::BoundaryNotBinomial { from: a, to: b });
                }
            }
            _ => {
                for edge in newt.edges().unwrap() {
                    if !segment_is_binomial(f, edge.start, edge.end) {
                        violations.push(Violation::BoundaryNotBinomial {
                            from: edge.start,
                            to: edge.end,
                        });
                    }
                }
            }
        }
    }
    NecessaryReport { violations }
}

/// `Some((e, k, l))` if `f = (1 + x^e)^k x^l` with `e` positive; a monomial
/// with coefficient 1 gives `k = 0`.
pub fn as_binomial_power(f: &LaurentPoly) -> Option<(LatticeVector, u32, LatticeVector)> {
    let newt = f.newton_polygon().ok()?;
    match newt.dimension() {
        0 => {
            let v = newt.vertices()[0];
            f.coefficient(v)
                .is_one()
                .then_some((LatticeVector::new(1, 0), 0, v))
        }
        1 => {
            let (a, b) = (newt.vertices()[0], newt.vertices()[1]);
            if f.len() as i64 > (b - a).content() + 1 || !segment_is_binomial(f, a, b) {
                return None;
            }
            let e = (b - a).primitive();
            let (e, l) = if e.is_positive() { (e, a) } else { (-e, b) };
            Some((e, (b - a).content() as u32, l))
        }
        _ => None,
    }
}

/// The datum sending `(1 + x^e)^k x^l` to `x^l`.
pub fn terminal_datum(e: LatticeVector, k: u32, l: LatticeVector) -> MutationDatum {
    let n = e.rotate_ccw();
    let c = -(k as i64) - n.dot(l);
    MutationDatum::binomial(AffineFunctional::new(n.x, n.y, c), e, 1).expect("well formed")
}

/// The unit polynomial `1`, as a convenience for chain replays.
pub(crate) fn is_unit_monomial(f: &LaurentPoly) -> bool {
    f.is_monomial() && f.terms().next().is_some_and(|(_, c)| c.is_one())
}
