use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{candidate_data, MutationDatum, SearchBounds, ZeroMutableCertificate};
use crate::lattice::{LatticePolygon, LatticeVector};
use crate::laurent::univariate;
use crate::laurent::LaurentPoly;

/// The mutation data of `f` within the candidate bounds, i.e. `S(f)`
/// restricted to edge data with `h = 1 + x^e`.
pub fn supported_data(f: &LaurentPoly, bounds: &SearchBounds) -> Vec<MutationDatum> {
    candidate_data(f, bounds, true)
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn rref(rows: &mut Vec<Vec<BigRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the nullspace, one vector per free column, in column order.
fn nullspace(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rref(&mut rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Linear conditions on coefficients `(c_p)_{p ∈ F∩𝕃}` expressing that
/// `Σ c_p x^p` is mutable with respect to `d`.
fn conditions(index: &BTreeMap<LatticeVector, usize>, d: &MutationDatum) -> Vec<Vec<BigRational>> {
    let n = index.len();
    let e = d.h.direction;
    let mut levels: BTreeMap<i64, Vec<LatticeVector>> = BTreeMap::new();
    for &p in index.keys() {
        let k = d.phi.eval(p);
        if k < 0 {
            levels.entry(k).or_default().push(p);
        }
    }
    let mut rows = Vec::new();
    for (k, pts) in levels {
        let hk = univariate::pow(&d.h.coefficients, (-k) as u32);
        let deg = hk.len() - 1;
        if deg == 0 {
            continue;
        }
        let base = *pts.iter().min_by_key(|p| e.dot(**p)).unwrap();
        let param = |p: LatticeVector| {
            let dlt = p - base;
            (if e.x != 0 { dlt.x / e.x } else { dlt.y / e.y }) as usize
        };
        let top = pts.iter().map(|p| param(*p)).max().unwrap();
        // remainders of t^i modulo hk
        let mut rems: Vec<Vec<BigRational>> = Vec::with_capacity(top + 1);
        for i in 0..=top {
            let mut mono = vec![BigRational::zero(); i + 1];
            mono[i] = BigRational::one();
            let (_, mut r) = univariate::div_rem(&mono, &hk);
            r.resize(deg, BigRational::zero());
            rems.push(r);
        }
        for c in 0..deg {
            let mut row = vec![BigRational::zero(); n];
            for p in &pts {
                row[index[p]] = rems[param(*p)][c].clone();
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Basis of `{g : Newt g ⊆ F, g is s-mutable for all s ∈ S}`. Basis vectors
/// are scaled to be integral and primitive with positive leading entry.
pub fn mutability_space(f_poly: &LatticePolygon, data: &[MutationDatum]) -> Vec<LaurentPoly> {
    let pts = f_poly.lattice_points();
    let index: BTreeMap<LatticeVector, usize> =
        pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut rows = Vec::new();
    for d in data {
        rows.extend(conditions(&index, d));
    }
    nullspace(rows, pts.len())
        .into_iter()
        .map(|v| {
            let g = LaurentPoly::from_terms(pts.iter().copied().zip(v));
            primitive_integral(&g)
        })
        .collect()
}

/// Scales `g` to have coprime integer coefficients, first nonzero positive.
pub(crate) fn primitive_integral(g: &LaurentPoly) -> LaurentPoly {
    use num_integer::Integer;
    let mut den = num_bigint::BigInt::one();
    for (_, c) in g.terms() {
        den = den.lcm(c.denom());
    }
    let scaled = g.scale(&BigRational::from_integer(den));
    let mut num = num_bigint::BigInt::zero();
    for (_, c) in scaled.terms() {
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return scaled;
    }
    let first_neg = scaled
        .terms()
        .next()
        .is_some_and(|(_, c)| *c < BigRational::zero());
    if first_neg {
        num = -num;
    }
    scaled.scale(&(BigRational::one() / BigRational::from_integer(num)))
}

/// `L(S(f))` is the line spanned by `f`.
pub fn rigid_test(f: &LaurentPoly, bounds: &SearchBounds) -> bool {
    let Ok(newt) = f.newton_polygon() else {
        return false;
    };
    if newt.dimension() < 2 {
        return super::as_binomial_power(f).is_some();
    }
    let data = supported_data(f, bounds);
    mutability_space(&newt, &data).len() == 1
}

/// Rigidity of each certified factor.
pub fn rigid_report(
    cert: &ZeroMutableCertificate,
    bounds: &SearchBounds,
) -> Vec<(LaurentPoly, bool)> {
    cert.factors
        .iter()
        .map(|fac| (fac.poly.clone(), rigid_test(&fac.poly, bounds)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AffineFunctional;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn nullspace_of_simple_system() {
        let r = |v: &[i64]| {
            v.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        };
        let ns = nullspace(vec![r(&[1, 1, 0]), r(&[0, 1, 1])], 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], r(&[1, -1, 1]));
        assert_eq!(nullspace(Vec::new(), 2).len(), 2);
    }

    #[test]
    fn empty_data_gives_full_space() {
        let quad = LatticePolygon::from_coords(&[(-1, -1), (2, -1), (1, 1), (-1, 2)]);
        assert_eq!(mutability_space(&quad, &[]).len(), 11);
    }

    #[test]
    fn segment_forced_binomial() {
        let seg = LatticePolygon::from_coords(&[(0, 0), (3, 0)]);
        let d =
            MutationDatum::binomial(AffineFunctional::new(0, 1, -1), LatticeVector::new(1, 0), 3)
                .unwrap();
        let space = mutability_space(&seg, &[d]);
        assert_eq!(space, vec![p("(1+x)^3")]);
    }

    #[test]
    fn beta_is_rigid() {
        let beta = p("(1+x)^3/(x*y) + 3*(1+x)^2/x + (1+x)*(3+x)*y/x + y^2/x");
        assert!(rigid_test(&beta, &SearchBounds::default()));
        let quad = beta.newton_polygon().unwrap();
        let space = mutability_space(&quad, &supported_data(&beta, &SearchBounds::default()));
        assert_eq!(space, vec![beta]);
    }

    #[test]
    fn off_list_candidate_is_not_rigid() {
        let g = p("x^-1*y^-1 + 3*y^-1 + 3*x*y^-1 + x^2*y^-1 + 3*x^-1 + 3*x^-1*y + x^-1*y^2 + x*y");
        let h = &g + &p("5 + 3*x + 3*y");
        assert!(!rigid_test(&h, &SearchBounds::default()));
    }
}
