//! Dense univariate polynomials over ℚ, coefficients in increasing degree.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Poly1 = Vec<BigRational>;

pub fn trim(p: &mut Poly1) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn is_zero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> Poly1 {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn pow(a: &[BigRational], k: u32) -> Poly1 {
    let mut out = vec![BigRational::one()];
    for _ in 0..k {
        out = mul(&out, a);
    }
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Poly1, Poly1) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = &r[r.len() - 1] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Order of vanishing at `t = −1`; `None` for the zero polynomial.
pub fn order_at_minus_one(a: &[BigRational]) -> Option<u32> {
    let mut p = a.to_vec();
    trim(&mut p);
    if p.is_empty() {
        return None;
    }
    let lin = vec![BigRational::one(), BigRational::one()];
    let mut k = 0;
    loop {
        let (q, r) = div_rem(&p, &lin);
        if !is_zero(&r) {
            return Some(k);
        }
        p = q;
        k += 1;
    }
}
