//! Multiplicities of the zero divisor at the points blown up over the
//! boundary, and the resulting intersection numbers.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Edge, LatticeVector};
use crate::laurent::univariate::{self, Poly1};
use crate::laurent::LaurentPoly;
use crate::mutation::ZeroMutableCertificate;

/// Slices `c_k(a)` of `f` parallel to an edge, `k` the lattice height
/// above the edge and `a = x^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLocalModel {
    pub edge: Edge,
    /// `slices[k]` lists the coefficients of `c_k` from the lowest power of
    /// `a`; empty when `f` has no terms at height `k`.
    #[serde(with = "crate::laurent::rat_serde::vec_vec")]
    pub slices: Vec<Poly1>,
}

impl EdgeLocalModel {
    /// `ord_{a=−1} c_k`, `None` for an empty slice.
    pub fn orders(&self) -> Vec<Option<u32>> {
        self.slices
            .iter()
            .map(|c| univariate::order_at_minus_one(c))
            .collect()
    }
}

/// `w` with `e × w = 1`, so that `p ↦ p × w` is the coordinate along `e`.
fn complement(e: LatticeVector) -> LatticeVector {
    let g = e.x.extended_gcd(&e.y);
    // g.x·e.x + g.y·e.y = 1 for primitive e
    LatticeVector::new(-g.y, g.x) * g.gcd.signum()
}

/// Slices of `f` by height above `edge`.
pub fn edge_local_expansion(f: &LaurentPoly, edge: &Edge) -> Result<EdgeLocalModel> {
    let newt = f.newton_polygon()?;
    if newt.dimension() != 2 || !newt.edges()?.contains(edge) {
        return Err(Error::NotAnEdge);
    }
    let n = edge.normal();
    let w = complement(edge.direction);
    let mut rows: Vec<Vec<(i64, BigRational)>> = Vec::new();
    for (p, c) in f.terms() {
        let k = (n.dot(*p) - edge.min_value) as usize;
        if rows.len() <= k {
            rows.resize(k + 1, Vec::new());
        }
        rows[k].push((p.cross(w), c.clone()));
    }
    let slices = rows
        .into_iter()
        .map(|row| {
            let Some(lo) = row.iter().map(|(j, _)| *j).min() else {
                return Vec::new();
            };
            let hi = row.iter().map(|(j, _)| *j).max().unwrap();
            let mut c = vec![BigRational::zero(); (hi - lo + 1) as usize];
            for (j, x) in row {
                c[(j - lo) as usize] = x;
            }
            c
        })
        .collect();
    Ok(EdgeLocalModel {
        edge: *edge,
        slices,
    })
}

/// Multiplicities `m₁, …, m_ℓ` at the `ℓ(E)` successive centers over the
/// point `a = −1` of the boundary curve, each center on the strict
/// transform of that curve.
pub fn multiplicity_sequence(f: &LaurentPoly, edge: &Edge) -> Result<Vec<u32>> {
    let model = edge_local_expansion(f, edge)?;
    let mut ords: Vec<Option<i64>> = model
        .orders()
        .into_iter()
        .map(|o| o.map(i64::from))
        .collect();
    let mut out = Vec::with_capacity(edge.length as usize);
    for _ in 0..edge.length {
        let m = ords
            .iter()
            .enumerate()
            .filter_map(|(k, o)| o.map(|o| o + k as i64))
            .min()
            .expect("edge slice is nonzero");
        for (k, o) in ords.iter_mut().enumerate() {
            if let Some(o) = o {
                *o += k as i64 - m;
                debug_assert!(*o >= 0);
            }
        }
        out.push(m as u32);
    }
    Ok(out)
}

/// Multiplicities and contributions of one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub edge: usize,
    pub mults: Vec<u32>,
    /// `−Σ m_j²`.
    pub z2: i64,
    /// `ℓ(E) − Σ m_j`.
    #[serde(rename = "zB")]
    pub zb: i64,
    pub pass: bool,
}

/// `Z′²` and `Z′·B` on the blown-up surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZPrime {
    pub self_intersection: i64,
    pub boundary_product: i64,
    pub edges: Vec<EdgeReport>,
}

impl ZPrime {
    /// `(Z′², Z′·B) = (−2, 0)`.
    pub fn is_minus_two_curve(&self) -> bool {
        self.self_intersection == -2 && self.boundary_product == 0
    }
}

/// `Z′² = 2·Area(Newt f) − Σ m_j²` and `Z′·B = Σ_E (ℓ(E) − Σ_j m_j)`.
pub fn z_prime_numbers(f: &LaurentPoly) -> Result<ZPrime> {
    let newt = f.newton_polygon()?;
    if newt.dimension() != 2 {
        return Err(Error::NotTwoDimensional(newt.dimension()));
    }
    let mut edges = Vec::new();
    for (i, e) in newt.edges()?.iter().enumerate() {
        let mults = multiplicity_sequence(f, e)?;
        let sq: i64 = mults.iter().map(|&m| (m as i64) * (m as i64)).sum();
        let sum: i64 = mults.iter().map(|&m| m as i64).sum();
        edges.push(EdgeReport {
            edge: i,
            mults,
            z2: -sq,
            zb: e.length - sum,
            pass: e.length == sum,
        });
    }
    Ok(ZPrime {
        self_intersection: newt.double_area() + edges.iter().map(|r| r.z2).sum::<i64>(),
        boundary_product: edges.iter().map(|r| r.zb).sum(),
        edges,
    })
}

/// Per-factor result. Factors with one-dimensional Newton polygon have no
/// numbers and are not judged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub poly: LaurentPoly,
    pub numbers: Option<ZPrime>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCurveReport {
    pub factors: Vec<FactorReport>,
    pub pass: bool,
}

/// Runs [`z_prime_numbers`] on every certified factor with two-dimensional
/// Newton polygon; passes iff each of them gives `(−2, 0)`.
pub fn check_two_curve(cert: &ZeroMutableCertificate) -> TwoCurveReport {
    let factors: Vec<FactorReport> = cert
        .factors
        .iter()
        .map(|fac| match z_prime_numbers(&fac.poly) {
            Ok(z) => FactorReport {
                poly: fac.poly.clone(),
                pass: z.is_minus_two_curve(),
                numbers: Some(z),
            },
            Err(_) => FactorReport {
                poly: fac.poly.clone(),
                numbers: None,
                pass: true,
            },
        })
        .collect();
    let pass = factors.iter().all(|f| f.pass);
    TwoCurveReport { factors, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn beta() -> LaurentPoly {
        p("(1+x)^3/(x*y) + 3*(1+x)^2/x + (1+x)*(3+x)*y/x + y^2/x")
    }

    fn ints(v: &[i64]) -> Poly1 {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn complements_are_unimodular() {
        for e in [(1, 0), (0, 1), (-1, 0), (2, -3), (-5, -2), (1, 1)] {
            let e = LatticeVector::new(e.0, e.1);
            assert_eq!(e.cross(complement(e)), 1, "{e}");
        }
    }

    #[test]
    fn beta_bottom_edge_slices() {
        let b = beta();
        let bottom = b.newton_polygon().unwrap().edges().unwrap()[0];
        let m = edge_local_expansion(&b, &bottom).unwrap();
        assert_eq!(m.slices[0], ints(&[1, 3, 3, 1]));
        assert_eq!(m.slices[1], ints(&[3, 6, 3]));
        assert_eq!(m.slices[2], ints(&[3, 4, 1]));
        assert_eq!(m.slices[3], ints(&[1]));
        assert_eq!(m.orders(), vec![Some(3), Some(2), Some(1), Some(0)]);
        assert_eq!(multiplicity_sequence(&b, &bottom).unwrap(), vec![3, 0, 0]);
    }

    #[test]
    fn beta_is_a_minus_two_curve() {
        let z = z_prime_numbers(&beta()).unwrap();
        assert_eq!((z.self_intersection, z.boundary_product), (-2, 0));
        let sq: i64 = z.edges.iter().map(|e| -e.z2).sum();
        assert_eq!(sq, 14);
    }

    #[test]
    fn not_an_edge() {
        let b = beta();
        let mut e = b.newton_polygon().unwrap().edges().unwrap()[0];
        e.min_value += 1;
        assert_eq!(edge_local_expansion(&b, &e), Err(Error::NotAnEdge));
        assert!(z_prime_numbers(&p("(1+x)^2")).is_err());
    }
}
