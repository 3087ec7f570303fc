//! Gorenstein toric affine 3-folds attached to lattice polygons: cones, dual
//! cones, Hilbert bases and truncated binomial ideals.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LatticePolygon, MinkowskiDecomposition};

pub type Vec3 = [i64; 3];

fn dot(a: Vec3, b: Vec3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn det(a: Vec3, b: Vec3, c: Vec3) -> i64 {
    dot(a, cross(b, c))
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(k: i64, a: Vec3) -> Vec3 {
    [k * a[0], k * a[1], k * a[2]]
}

fn primitive(a: Vec3) -> Vec3 {
    use num_integer::Integer;
    let g = a[0].gcd(&a[1]).gcd(&a[2]);
    if g == 0 {
        a
    } else {
        [a[0] / g, a[1] / g, a[2] / g]
    }
}

/// Inward primitive normals of the facets spanned by cyclically consecutive rays.
fn facet_normals(rays: &[Vec3]) -> Vec<Vec3> {
    let r = rays.len();
    (0..r)
        .map(|i| {
            let n = primitive(cross(rays[i], rays[(i + 1) % r]));
            if rays.iter().any(|&a| dot(n, a) < 0) {
                scale(-1, n)
            } else {
                n
            }
        })
        .collect()
}

/// A strictly convex rational cone in `ℤ³` given by rays in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone3 {
    pub rays: Vec<Vec3>,
}

/// The dual cone `σ∨` with rays `s_j` and the Gorenstein degree `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualConeData {
    /// Facet normals of `σ`: first the facet over the first edge of the
    /// polygon, then the others clockwise.
    pub rays: Vec<Vec3>,
    pub gorenstein_degree: Vec3,
}

/// The cone over `F` placed at height 1: rays `(v, 1)` for the vertices `v`
/// in counterclockwise order.
pub fn cone_over(f: &LatticePolygon) -> Result<Cone3> {
    if f.dimension() != 2 {
        return Err(Error::NotTwoDimensional(f.dimension()));
    }
    Ok(Cone3 {
        rays: f.vertices().iter().map(|v| [v.x, v.y, 1]).collect(),
    })
}

/// Facet normals of `c` and the unique `u` with `⟨u, a⟩ = 1` on every ray.
pub fn dual_cone(c: &Cone3) -> Result<DualConeData> {
    let mut rays = facet_normals(&c.rays);
    rays[1..].reverse();
    let n = c.rays.len();
    let triple = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| det(c.rays[i], c.rays[j], c.rays[k]) != 0)
        .ok_or(Error::NotTwoDimensional(2))?;
    let (a, b, cc) = (c.rays[triple.0], c.rays[triple.1], c.rays[triple.2]);
    let d = det(a, b, cc);
    // rows of the inverse are the cross products of the other two rays
    let num = add(add(cross(b, cc), cross(cc, a)), cross(a, b));
    if num.iter().any(|x| x % d != 0) {
        return Err(Error::NotGorenstein);
    }
    let u = [num[0] / d, num[1] / d, num[2] / d];
    if c.rays.iter().any(|&r| dot(u, r) != 1) {
        return Err(Error::NotGorenstein);
    }
    Ok(DualConeData {
        rays,
        gorenstein_degree: u,
    })
}

/// `p·u − q·s_which` for `which` 1 or 2, the normals of the two edges
/// through the first vertex.
pub fn character(p: i64, q: i64, which: u8, dc: &DualConeData) -> Result<Vec3> {
    let s = match which {
        1 => dc.rays[0],
        2 => dc.rays[1],
        _ => {
            return Err(Error::InvalidParameters(format!(
                "character index must be 1 or 2, got {which}"
            )))
        }
    };
    Ok(add(scale(p, dc.gorenstein_degree), scale(-q, s)))
}

/// Minimal generating set of the monoid `σ∨ ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    pub elements: Vec<Vec3>,
    pub names: Vec<String>,
}

fn in_cone(m: Vec3, normals: &[Vec3]) -> bool {
    normals.iter().all(|&n| dot(n, m) >= 0)
}

/// Lattice points `Σ λ_i r_i` with `λ ∈ [0,1)³`.
fn parallelepiped(r: [Vec3; 3]) -> Vec<Vec3> {
    let d = det(r[0], r[1], r[2]);
    let sign = d.signum();
    let adj = [cross(r[1], r[2]), cross(r[2], r[0]), cross(r[0], r[1])];
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    for mask in 0..8 {
        let mut p = [0; 3];
        for (i, ri) in r.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p = add(p, *ri);
            }
        }
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let p = [x, y, z];
                if adj
                    .iter()
                    .all(|a| (0..d.abs()).contains(&(sign * dot(*a, p))))
                {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Hilbert basis of `σ∨ ∩ M`, computed from a fan triangulation of `σ∨`
/// and the lattice points of the fundamental parallelepipeds. Elements are
/// listed with `u` first, then counterclockwise in the projection along
/// the last coordinate starting from `s₁`.
pub fn hilbert_basis(dc: &DualConeData) -> HilbertBasis {
    let normals = facet_normals(&dc.rays);
    let mut cands: BTreeSet<Vec3> = dc.rays.iter().copied().collect();
    for j in 1..dc.rays.len() - 1 {
        for p in parallelepiped([dc.rays[0], dc.rays[j], dc.rays[j + 1]]) {
            if p != [0, 0, 0] {
                cands.insert(p);
            }
        }
    }
    let cands: Vec<Vec3> = cands.into_iter().collect();
    let mut elements: Vec<Vec3> = cands
        .iter()
        .copied()
        .filter(|&v| {
            !cands
                .iter()
                .any(|&w| w != v && in_cone(add(v, scale(-1, w)), &normals))
        })
        .collect();
    let start = dc.rays[0];
    let u = dc.gorenstein_degree;
    elements.sort_by(|a, b| {
        ccw_from(start, u, *a, *b)
            .then(a[2].cmp(&b[2]))
            .then(a.cmp(b))
    });
    let names = elements.iter().map(|v| element_name(*v, dc)).collect();
    HilbertBasis { elements, names }
}

/// Order by angle of the projection to the first two coordinates, measured
/// counterclockwise from that of `s`; multiples of `u` come first.
fn ccw_from(s: Vec3, u: Vec3, a: Vec3, b: Vec3) -> std::cmp::Ordering {
    use crate::lattice::LatticeVector;
    let s = LatticeVector::new(s[0], s[1]);
    let key = |v: Vec3| {
        let p = LatticeVector::new(v[0], v[1]);
        let on_u = primitive(v) == primitive(u) || p == LatticeVector::ZERO;
        let c = s.cross(p);
        let lower = c < 0 || (c == 0 && s.dot(p) < 0);
        (!on_u, lower, p)
    };
    let (ua, ha, pa) = key(a);
    let (ub, hb, pb) = key(b);
    ua.cmp(&ub)
        .then(ha.cmp(&hb))
        .then_with(|| 0.cmp(&pa.cross(pb)))
}

fn element_name(v: Vec3, dc: &DualConeData) -> String {
    if v == dc.gorenstein_degree {
        return "u".into();
    }
    match dc.rays.iter().position(|&s| s == v) {
        Some(j) => format!("s{}", j + 1),
        None => format!("({},{},{})", v[0], v[1], v[2]),
    }
}

/// `x^lhs − x^rhs` in the variables of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl Binomial {
    pub fn new(lhs: Vec<u32>, rhs: Vec<u32>) -> Self {
        Self { lhs, rhs }
    }

    /// Degree of the larger side.
    pub fn degree(&self) -> u32 {
        self.lhs.iter().sum::<u32>().max(self.rhs.iter().sum())
    }
}

fn monomial_string(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| {
            if *k == 1 {
                format!("x_{n}")
            } else {
                format!("x_{n}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Binomials in variables indexed by vectors of `M`, truncated at a degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialIdeal {
    pub variables: Vec<Vec3>,
    pub names: Vec<String>,
    pub generators: Vec<Binomial>,
    pub degree_bound: u32,
}

impl BinomialIdeal {
    /// `M`-degree of a monomial.
    pub fn m_degree(&self, e: &[u32]) -> Vec3 {
        e.iter()
            .zip(&self.variables)
            .fold([0; 3], |acc, (k, v)| add(acc, scale(*k as i64, *v)))
    }

    pub fn is_homogeneous(&self, b: &Binomial) -> bool {
        self.m_degree(&b.lhs) == self.m_degree(&b.rhs)
    }

    pub fn format_binomial(&self, b: &Binomial) -> String {
        format!(
            "{} - {}",
            monomial_string(&b.lhs, &self.names),
            monomial_string(&b.rhs, &self.names)
        )
    }

    /// Whether `b` lies in the ideal, tested by connecting its two monomials
    /// with generator moves through monomials of degree at most
    /// `max(degree_bound, deg b)`.
    pub fn contains(&self, b: &Binomial) -> bool {
        if b.lhs == b.rhs {
            return true;
        }
        if !self.is_homogeneous(b) {
            return false;
        }
        let cap = self.degree_bound.max(b.degree());
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(b.lhs.clone());
        queue.push_back(b.lhs.clone());
        while let Some(c) = queue.pop_front() {
            for g in &self.generators {
                for (from, to) in [(&g.lhs, &g.rhs), (&g.rhs, &g.lhs)] {
                    let Some(d) = apply_move(&c, from, to) else {
                        continue;
                    };
                    if d.iter().sum::<u32>() > cap || !seen.insert(d.clone()) {
                        continue;
                    }
                    if d == b.rhs {
                        return true;
                    }
                    queue.push_back(d);
                }
            }
        }
        false
    }

    /// Every generator of `other` lies in `self` and vice versa.
    pub fn same_as(&self, other: &BinomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
            && self.generators.iter().all(|g| other.contains(g))
    }
}

fn apply_move(c: &[u32], from: &[u32], to: &[u32]) -> Option<Vec<u32>> {
    c.iter()
        .zip(from)
        .zip(to)
        .map(|((c, f), t)| c.checked_sub(*f).map(|r| r + t))
        .collect()
}

impl fmt::Display for BinomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "{}", self.format_binomial(g))?;
        }
        Ok(())
    }
}

/// Exponent vectors in `n` variables of total degree `1..=bound`.
fn monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, bound, &mut vec![0; n], &mut out);
    out.retain(|e| e.iter().any(|&k| k > 0));
    out
}

/// A vector in the interior of the cone dual to the cone spanned by `vs`.
fn positive_weight(vs: &[Vec3]) -> Vec3 {
    let mut w = [0; 3];
    let mut seen = BTreeSet::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let n = primitive(cross(a, b));
            if n == [0, 0, 0] {
                continue;
            }
            let n = if vs.iter().all(|&v| dot(n, v) >= 0) {
                n
            } else if vs.iter().all(|&v| dot(n, v) <= 0) {
                scale(-1, n)
            } else {
                continue;
            };
            if seen.insert(n) {
                w = add(w, n);
            }
        }
    }
    w
}

/// Minimal binomial relations among the Hilbert-basis monomials with both
/// sides of degree at most `degree_bound`. Fibers of the degree map are
/// processed in increasing weight; a fiber whose monomials are not already
/// connected by earlier generators contributes one binomial per extra
/// connected component.
pub fn toric_relations(hb: &HilbertBasis, degree_bound: u32) -> Result<BinomialIdeal> {
    if degree_bound < 2 {
        return Err(Error::InvalidParameters(
            "degree bound must be at least 2".into(),
        ));
    }
    let n = hb.elements.len();
    let mut ideal = BinomialIdeal {
        variables: hb.elements.clone(),
        names: hb.names.clone(),
        generators: Vec::new(),
        degree_bound,
    };
    let w = positive_weight(&hb.elements);
    let mut fibers: BTreeMap<(i64, Vec3), Vec<Vec<u32>>> = BTreeMap::new();
    for e in monomials_up_to(n, degree_bound) {
        let m = ideal.m_degree(&e);
        fibers.entry((dot(w, m), m)).or_default().push(e);
    }
    for mut mons in fibers.into_values() {
        if mons.len() < 2 {
            continue;
        }
        mons.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then(b.cmp(a))
        });
        let index: HashMap<&Vec<u32>, usize> =
            mons.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut parent: Vec<usize> = (0..mons.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut j = i;
            while p[j] != r {
                let next = p[j];
                p[j] = r;
                j = next;
            }
            r
        }
        for (i, c) in mons.iter().enumerate() {
            for g in &ideal.generators {
                for (from, to) in [(&g.lhs, &g.rhs), (&g.rhs, &g.lhs)] {
                    if let Some(d) = apply_move(c, from, to) {
                        if let Some(&j) = index.get(&d) {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..mons.len() {
            if find(&mut parent, i) == i {
                reps.push(i);
            }
        }
        for &r in &reps[1..] {
            ideal
                .generators
                .push(Binomial::new(mons[reps[0]].clone(), mons[r].clone()));
        }
    }
    Ok(ideal)
}

/// `x₁x₂ − x₄^c x₅^b` and `x₃x₄ − x₅^a`, with variables attached to the
/// characters of `F_{a,b,c}`: the normals of the bottom, top, right and left
/// edges, and `u`.
pub fn nakajima_equations(a: i64, b: i64, c: i64) -> Result<BinomialIdeal> {
    if a < 1 || b < 0 || c < 0 || b + c < 1 {
        return Err(Error::InvalidParameters(format!(
            "need a ≥ 1, b, c ≥ 0 and b + c ≥ 1, got ({a}, {b}, {c})"
        )));
    }
    let variables = vec![[0, 1, 0], [c, -1, b], [-1, 0, a], [1, 0, 0], [0, 0, 1]];
    let names = (1..=5).map(|i| i.to_string()).collect();
    let (a, b, c) = (a as u32, b as u32, c as u32);
    Ok(BinomialIdeal {
        variables,
        names,
        generators: vec![
            Binomial::new(vec![1, 1, 0, 0, 0], vec![0, 0, 0, c, b]),
            Binomial::new(vec![0, 0, 1, 1, 0], vec![0, 0, 0, 0, a]),
        ],
        degree_bound: (1 + a).max(b + c).max(2),
    })
}

/// The cone over the Cayley polytope of a two-summand decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyCone {
    pub rays: Vec<[i64; 4]>,
}

/// Rays `(v, 1, 0)` for vertices of the first summand and `(w, 0, 1)` for
/// vertices of the second. Summands are used as stored.
pub fn cayley_cone(dec: &MinkowskiDecomposition) -> Result<CayleyCone> {
    if dec.len() != 2 {
        return Err(Error::WrongSummandCount(dec.len()));
    }
    let mut rays: Vec<[i64; 4]> = dec.summands[0]
        .vertices()
        .iter()
        .map(|v| [v.x, v.y, 1, 0])
        .collect();
    rays.extend(dec.summands[1].vertices().iter().map(|w| [w.x, w.y, 0, 1]));
    Ok(CayleyCone { rays })
}
