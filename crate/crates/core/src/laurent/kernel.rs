use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::univariate::{self, Poly1};
use super::{binomial, LaurentPoly};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// A polynomial `Σ cᵢ x^{i e}` in the single monomial `x^e`, with `e` primitive,
/// `c₀ ≠ 0` and nonzero top coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KernelPoly {
    pub direction: LatticeVector,
    #[serde(with = "super::rat_serde::vec")]
    pub coefficients: Vec<BigRational>,
}

impl KernelPoly {
    /// Normalises a coefficient list: strips leading and trailing zeros.
    pub fn new(direction: LatticeVector, coefficients: Vec<BigRational>) -> Result<Self> {
        if !direction.is_primitive() {
            return Err(Error::MalformedDatum(format!(
                "kernel direction {direction} is not primitive"
            )));
        }
        let mut c = coefficients;
        univariate::trim(&mut c);
        let lead = c.iter().take_while(|x| x.is_zero()).count();
        c.drain(..lead);
        if c.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self {
            direction,
            coefficients: c,
        })
    }

    /// `(1 + x^e)^k`.
    pub fn binomial_power(direction: LatticeVector, k: u32) -> Self {
        let coefficients = (0..=k as u64).map(|i| binomial(k as u64, i)).collect();
        Self {
            direction: direction.primitive(),
            coefficients,
        }
    }

    /// Reads `h` from a Laurent polynomial whose support contains the origin
    /// and lies on a ray from it.
    pub fn from_laurent(h: &LaurentPoly) -> Result<Self> {
        if h.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if h.coefficient(LatticeVector::ZERO).is_zero() {
            return Err(Error::MalformedDatum(
                "h must have a nonzero constant term".into(),
            ));
        }
        let far = h.support().into_iter().find(|e| *e != LatticeVector::ZERO);
        let Some(far) = far else {
            return Self::new(
                LatticeVector::new(1, 0),
                vec![h.coefficient(LatticeVector::ZERO)],
            );
        };
        let dir = far.primitive();
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (e, c) in h.terms() {
            if dir.cross(*e) != 0 || dir.dot(*e) < 0 {
                return Err(Error::SupportNotOnLine(dir));
            }
            let i = (e.content()) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, BigRational::zero());
            }
            coeffs[i] = c.clone();
        }
        Self::new(dir, coeffs)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| (self.direction * i as i64, c.clone())),
        )
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn pow(&self, k: u32) -> Self {
        Self {
            direction: self.direction,
            coefficients: univariate::pow(&self.coefficients, k),
        }
    }

    /// `Some(k)` if the coefficients are `C(k, i)`, i.e. `h = (1 + x^e)^k`.
    pub fn binomial_exponent(&self) -> Option<u32> {
        let k = self.degree() as u64;
        (0..=k)
            .all(|i| self.coefficients[i as usize] == binomial(k, i))
            .then_some(k as u32)
    }

    pub fn is_binomial(&self) -> bool {
        self.binomial_exponent().is_some()
    }

    /// Same polynomial written in the direction `-e`, i.e. times `x^{-deg·e}`
    /// reversed. Used to compare kernels up to sign of the direction.
    pub fn reversed(&self) -> Self {
        let mut c = self.coefficients.clone();
        c.reverse();
        Self {
            direction: -self.direction,
            coefficients: c,
        }
    }
}

/// Coordinates of a polynomial supported on one line parallel to `e`:
/// base point and dense coefficients in the parameter along `e`.
fn on_line(g: &LaurentPoly, e: LatticeVector) -> Result<(LatticeVector, Poly1)> {
    let base = g
        .support()
        .into_iter()
        .min_by_key(|p| e.dot(*p))
        .ok_or(Error::ZeroPolynomial)?;
    let mut coeffs: Poly1 = Vec::new();
    for (p, c) in g.terms() {
        let d = *p - base;
        if e.cross(d) != 0 {
            return Err(Error::SupportNotOnLine(e));
        }
        let i = if e.x != 0 { d.x / e.x } else { d.y / e.y } as usize;
        if coeffs.len() <= i {
            coeffs.resize(i + 1, BigRational::zero());
        }
        coeffs[i] = c.clone();
    }
    Ok((base, coeffs))
}

/// Remainder of `g` modulo `h` on the line carrying `g`, as a Laurent
/// polynomial on that line. Zero iff `h` divides `g`.
pub fn line_remainder(h: &KernelPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    if g.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let e = h.direction;
    let (base, gc) = on_line(g, e)?;
    let (_, r) = univariate::div_rem(&gc, &h.coefficients);
    Ok(LaurentPoly::from_terms(
        r.into_iter()
            .enumerate()
            .map(|(i, c)| (base + e * i as i64, c)),
    ))
}

/// Whether `h` divides `g` in the Laurent ring. `g` must lie on a line
/// parallel to the direction of `h`; the zero polynomial is divisible.
pub fn divides(h: &KernelPoly, g: &LaurentPoly) -> Result<bool> {
    Ok(line_remainder(h, g)?.is_zero())
}

/// Exact quotient `g / h` for `g` on a line parallel to the direction of
/// `h`, or `None` if `h` does not divide `g`.
pub fn divide(h: &KernelPoly, g: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    h.divide(g)
}

impl KernelPoly {
    /// Quotient `g / self` for `g` on a line parallel to the kernel direction.
    pub fn divide(&self, g: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        if g.is_zero() {
            return Ok(Some(LaurentPoly::zero()));
        }
        let e = self.direction;
        let (base, gc) = on_line(g, e)?;
        let (q, r) = univariate::div_rem(&gc, &self.coefficients);
        if !univariate::is_zero(&r) {
            return Ok(None);
        }
        Ok(Some(LaurentPoly::from_terms(
            q.into_iter()
                .enumerate()
                .map(|(i, c)| (base + e * i as i64, c)),
        )))
    }

    pub fn is_one(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0].is_one()
    }
}
