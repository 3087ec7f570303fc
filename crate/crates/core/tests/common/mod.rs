//! Brute-force blowups in local charts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use zmut_core::cluster::multiplicity_sequence;
use zmut_core::{Edge, LatticeVector, LaurentPoly};

/// Polynomial in `(s, t)` with non-negative exponents.
type Bivariate = BTreeMap<(u32, u32), BigRational>;

fn add(p: &mut Bivariate, k: (u32, u32), c: BigRational) {
    let e = p.entry(k).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

/// Coefficients of `(s − 1)^i` from the lowest power of `s`.
fn shifted_power(i: u32) -> Vec<BigRational> {
    let mut row = vec![BigInt::one()];
    for _ in 0..i {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j] -= c;
            next[j + 1] += c;
        }
        row = next;
    }
    row.into_iter().map(BigRational::from_integer).collect()
}

fn complement(e: LatticeVector) -> LatticeVector {
    for x in -20..=20 {
        for y in -20..=20 {
            if e.x * y - e.y * x == 1 {
                return LatticeVector::new(x, y);
            }
        }
    }
    panic!("no complement for {e}");
}

/// `f` in coordinates `a = s − 1` along the edge and `t` the height above it.
pub fn local_chart(f: &LaurentPoly, edge: &Edge) -> Bivariate {
    let n = edge.normal();
    let w = complement(edge.direction);
    let lo = f.terms().map(|(p, _)| p.x * w.y - p.y * w.x).min().unwrap();
    let mut out = Bivariate::new();
    for (p, c) in f.terms() {
        let i = (p.x * w.y - p.y * w.x - lo) as u32;
        let k = (n.x * p.x + n.y * p.y - edge.min_value) as u32;
        for (si, d) in shifted_power(i).iter().enumerate() {
            add(&mut out, (si as u32, k), c * d);
        }
    }
    out
}

/// Blows up the origin `len` times, each time at the point where the strict
/// transform of `t = 0` meets the exceptional curve, in the chart `t ↦ s·t`.
pub fn blowup_multiplicities(mut g: Bivariate, len: i64) -> Vec<u32> {
    let mut out = Vec::new();
    for _ in 0..len {
        let m = g.keys().map(|(i, j)| i + j).min().unwrap();
        let mut next = Bivariate::new();
        for (&(i, j), c) in &g {
            next.insert((i + j - m, j), c.clone());
        }
        g = next;
        out.push(m);
    }
    out
}

pub fn oracle(f: &LaurentPoly) -> Vec<Vec<u32>> {
    f.newton_polygon()
        .unwrap()
        .edges()
        .unwrap()
        .iter()
        .map(|e| blowup_multiplicities(local_chart(f, e), e.length))
        .collect()
}

pub fn computed(f: &LaurentPoly) -> Vec<Vec<u32>> {
    f.newton_polygon()
        .unwrap()
        .edges()
        .unwrap()
        .iter()
        .map(|e| multiplicity_sequence(f, e).unwrap())
        .collect()
}
