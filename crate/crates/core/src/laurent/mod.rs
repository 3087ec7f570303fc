//! Sparse Laurent polynomials in `x, y` with exact rational coefficients.

mod kernel;
mod parse;
pub mod rat_serde;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    canonical_form, canonical_transforms, convex_hull, AffineFunctional, AffineMap, Edge,
    LatticePolygon, LatticeVector,
};

pub use kernel::{divide, divides, line_remainder, KernelPoly};

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `C(n, k)` as a rational.
pub fn binomial(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

/// A Laurent polynomial `Σ c_m x^m`. No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<LatticeVector, BigRational>,
}

/// Invariant of a polynomial under affine unimodular maps of the exponent lattice.
pub type CanonicalKey = (LatticePolygon, Vec<(LatticeVector, BigRational)>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(LatticeVector::ZERO, c)
    }

    pub fn monomial(exp: LatticeVector, coef: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { terms }
    }

    /// `x^exp` with coefficient 1.
    pub fn x_pow(exp: LatticeVector) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (LatticeVector, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[((i64, i64), i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&((x, y), c)| (LatticeVector::new(x, y), rat(c))),
        )
    }

    pub fn add_term(&mut self, e: LatticeVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: LatticeVector) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().copied().collect()
    }

    /// Newton polygon; an error for the zero polynomial.
    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        convex_hull(&self.support())
    }

    /// Lexicographically minimal exponent.
    pub fn min_exponent(&self) -> Option<LatticeVector> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<LatticeVector> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn shift(&self, t: LatticeVector) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e + t, a.clone()))
                .collect(),
        }
    }

    /// Translate so that the lexicographically minimal exponent is the origin.
    /// Returns the translated polynomial and the removed shift.
    pub fn normalized(&self) -> (Self, LatticeVector) {
        match self.min_exponent() {
            Some(m) => (self.shift(-m), m),
            None => (Self::zero(), LatticeVector::ZERO),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Image of the polynomial under an affine map of the exponent lattice.
    pub fn map_exponents(&self, m: &AffineMap) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (m.apply(*e), c.clone())))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Every vertex coefficient of the Newton polygon equals 1. False for 0.
    pub fn is_normalized(&self) -> bool {
        match self.newton_polygon() {
            Ok(newt) => newt
                .vertices()
                .iter()
                .all(|v| self.coefficient(*v).is_one()),
            Err(_) => false,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Terms with exponents on the face; an error if `face` is not a face of
    /// the Newton polygon.
    pub fn restrict_to_face(&self, face: &LatticePolygon) -> Result<Self> {
        let newt = self.newton_polygon()?;
        if !newt.has_face(face) {
            return Err(Error::NotAFace);
        }
        Ok(self.restrict_to_set(face))
    }

    /// Terms with exponents in the polygon, which need not be a face.
    pub fn restrict_to_set(&self, region: &LatticePolygon) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| region.contains(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Terms on the face where the linear functional `n` is minimal.
    pub fn face_poly(&self, n: LatticeVector) -> Self {
        let Some(min) = self.terms.keys().map(|e| n.dot(*e)).min() else {
            return Self::zero();
        };
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| n.dot(**e) == min)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Restriction to an edge of the Newton polygon.
    pub fn restrict_to_edge(&self, edge: &Edge) -> Result<Self> {
        let newt = self.newton_polygon()?;
        if newt.dimension() != 2 || !newt.edges()?.contains(edge) {
            return Err(Error::NotAnEdge);
        }
        Ok(self.face_poly(edge.normal()))
    }

    /// Decomposition `f = Σ_k f_k` where `f_k` collects the terms on the
    /// level set `φ = k`. Empty slices are omitted.
    pub fn slices(&self, phi: &AffineFunctional) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(phi.eval(*e))
                .or_default()
                .terms
                .insert(*e, c.clone());
        }
        out
    }

    /// Exact quotient `self / g` if it exists as a Laurent polynomial.
    pub fn div_exact(&self, g: &LaurentPoly) -> Option<LaurentPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let bbox = |p: &LaurentPoly| {
            let xs = p.terms.keys().map(|e| e.x);
            let ys = p.terms.keys().map(|e| e.y);
            (
                xs.clone().min().unwrap(),
                xs.max().unwrap(),
                ys.clone().min().unwrap(),
                ys.max().unwrap(),
            )
        };
        let (fx0, fx1, fy0, fy1) = bbox(self);
        let (gx0, gx1, gy0, gy1) = bbox(g);
        let (qx0, qx1, qy0, qy1) = (fx0 - gx0, fx1 - gx1, fy0 - gy0, fy1 - gy1);
        if qx0 > qx1 || qy0 > qy1 {
            return None;
        }
        let (glead, gc) = g.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let mut r = self.clone();
        let mut q = LaurentPoly::zero();
        while let Some((re, rc)) = r.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let te = re - glead;
            if te.x < qx0 || te.x > qx1 || te.y < qy0 || te.y > qy1 {
                return None;
            }
            let tc = rc / &gc;
            for (e, c) in &g.terms {
                r.add_term(*e + te, -(c * &tc));
            }
            q.add_term(te, tc);
        }
        Some(q)
    }

    /// Canonical representative of the polynomial up to affine unimodular
    /// change of exponents: the canonical Newton polygon together with the
    /// smallest term list over all maps realising it.
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        let newt = self.newton_polygon()?;
        let (form, _) = canonical_form(&newt);
        let mut best: Option<Vec<(LatticeVector, BigRational)>> = None;
        for m in canonical_transforms(&newt) {
            let img = self.map_exponents(&m);
            let terms: Vec<(LatticeVector, BigRational)> = img.terms.into_iter().collect();
            if best.as_ref().is_none_or(|b| terms < *b) {
                best = Some(terms);
            }
        }
        Ok((form, best.unwrap()))
    }

    /// Terms in print order: by `y`, then by `x`.
    fn print_order(&self) -> Vec<(LatticeVector, &BigRational)> {
        let mut v: Vec<(LatticeVector, &BigRational)> =
            self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by_key(|(e, _)| (e.y, e.x));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn fmt_monomial(e: LatticeVector) -> String {
    let mut parts = Vec::new();
    for (name, k) in [("x", e.x), ("y", e.y)] {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.print_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

impl LaurentPoly {
    pub fn parse(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: [i64; 2],
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            terms: self
                .print_order()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exp: [e.x, e.y],
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pj = PolyJson::deserialize(d)?;
        let mut terms = Vec::new();
        for t in pj.terms {
            let c = BigRational::from_str(t.coef.trim())
                .map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", t.coef)))?;
            terms.push((LatticeVector::from(t.exp), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(*a + *b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
