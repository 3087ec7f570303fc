//! Exact geometry of lattice polygons in ℤ².
//!
//! Polygons are stored by their vertices in counterclockwise order starting
//! from the lexicographically minimal vertex. Points and segments are
//! first-class polygons of dimension 0 and 1.

mod canonical;
pub(crate) mod minkowski;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{canonical_form, canonical_transforms, AffineMap};
pub use minkowski::{
    minkowski_decompositions, smoothing_decompositions, DecompositionFilter, MinkowskiDecomposition,
};

/// A point (or vector) of the lattice ℤ². Ordered lexicographically by `(x, y)`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Self) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive(self) -> Self {
        let g = self.content();
        if g == 0 {
            self
        } else {
            Self::new(self.x / g, self.y / g)
        }
    }

    /// Counterclockwise quarter turn: `(x, y) ↦ (−y, x)`.
    pub fn rotate_ccw(self) -> Self {
        Self::new(-self.y, self.x)
    }

    /// Sign convention used for line directions: `x > 0`, or `x = 0` and `y > 0`.
    pub fn is_positive(self) -> bool {
        self.x > 0 || (self.x == 0 && self.y > 0)
    }

    /// The representative of `±self` that satisfies [`is_positive`](Self::is_positive).
    pub fn positive(self) -> Self {
        if self.is_positive() {
            self
        } else {
            -self
        }
    }
}

impl From<[i64; 2]> for LatticeVector {
    fn from(v: [i64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<LatticeVector> for [i64; 2] {
    fn from(v: LatticeVector) -> Self {
        [v.x, v.y]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul<i64> for LatticeVector {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

/// Compares two nonzero vectors by angle in `[0, 2π)` measured from the
/// positive x-axis.
pub(crate) fn angle_cmp(a: LatticeVector, b: LatticeVector) -> Ordering {
    let half = |v: LatticeVector| {
        if v.y > 0 || (v.y == 0 && v.x > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Integer affine functional `p ↦ a·pₓ + b·p_y + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct AffineFunctional {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl AffineFunctional {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// The linear functional `p ↦ n·p`.
    pub const fn linear(n: LatticeVector) -> Self {
        Self::new(n.x, n.y, 0)
    }

    pub fn eval(&self, p: LatticeVector) -> i64 {
        self.a * p.x + self.b * p.y + self.c
    }

    /// Linear part `φ₀`, evaluated on a vector of the underlying lattice.
    pub fn eval_linear(&self, v: LatticeVector) -> i64 {
        self.a * v.x + self.b * v.y
    }

    pub fn linear_part(&self) -> LatticeVector {
        LatticeVector::new(self.a, self.b)
    }

    pub fn is_constant(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k, self.c * k)
    }

    /// gcd of all three coefficients.
    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }
}

impl Neg for AffineFunctional {
    type Output = Self;
    fn neg(self) -> Self {
        self.scaled(-1)
    }
}

impl From<[i64; 3]> for AffineFunctional {
    fn from(v: [i64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<AffineFunctional> for [i64; 3] {
    fn from(v: AffineFunctional) -> Self {
        v.as_array()
    }
}

impl fmt::Display for AffineFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// An edge of a two-dimensional lattice polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub start: LatticeVector,
    pub end: LatticeVector,
    /// Primitive vector with `end − start = length · direction`.
    pub direction: LatticeVector,
    /// Lattice length ℓ(E).
    pub length: i64,
    /// Primitive inner normal, constant term 0.
    pub inner_normal: AffineFunctional,
    /// Value of `inner_normal` along the edge; the minimum over the polygon.
    pub min_value: i64,
}

impl Edge {
    /// Height of `p` above the edge line, measured by the inner normal.
    pub fn height(&self, p: LatticeVector) -> i64 {
        self.inner_normal.eval(p) - self.min_value
    }

    pub fn normal(&self) -> LatticeVector {
        self.inner_normal.linear_part()
    }

    /// Lattice points of the edge from `start` to `end`.
    pub fn points(&self) -> Vec<LatticeVector> {
        (0..=self.length)
            .map(|i| self.start + self.direction * i)
            .collect()
    }
}

/// A lattice polygon of dimension 0, 1 or 2.
///
/// Vertices are the extreme points of the hull, counterclockwise, starting
/// from the lexicographically minimal one. A segment stores its two
/// endpoints and a point its single vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PolygonJson", into = "PolygonJson")]
pub struct LatticePolygon {
    vertices: Vec<LatticeVector>,
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<LatticeVector>,
}

impl TryFrom<PolygonJson> for LatticePolygon {
    type Error = Error;
    fn try_from(p: PolygonJson) -> Result<Self> {
        convex_hull(&p.vertices)
    }
}

impl From<LatticePolygon> for PolygonJson {
    fn from(p: LatticePolygon) -> Self {
        PolygonJson {
            vertices: p.vertices,
        }
    }
}

/// Convex hull of a non-empty point set, with collinear points removed.
pub fn convex_hull(points: &[LatticeVector]) -> Result<LatticePolygon> {
    let mut pts: Vec<LatticeVector> = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return Err(Error::EmptyPointSet),
        1 => return Ok(LatticePolygon { vertices: pts }),
        _ => {}
    }
    // Andrew's monotone chain; the lower chain starts at the lexicographic minimum.
    let mut hull: Vec<LatticeVector> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter() {
        while hull.len() >= 2
            && (hull[hull.len() - 1] - hull[hull.len() - 2]).cross(p - hull[hull.len() - 2]) <= 0
        {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && (hull[hull.len() - 1] - hull[hull.len() - 2]).cross(p - hull[hull.len() - 2]) <= 0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() <= 2 {
        // all points collinear
        let first = pts[0];
        let last = pts[pts.len() - 1];
        return Ok(LatticePolygon {
            vertices: vec![first, last],
        });
    }
    Ok(LatticePolygon { vertices: hull })
}

impl LatticePolygon {
    /// Hull of the given points; same as [`convex_hull`].
    pub fn from_points(points: &[LatticeVector]) -> Result<Self> {
        convex_hull(points)
    }

    /// Convenience constructor from coordinate pairs. Panics on empty input.
    pub fn from_coords(coords: &[(i64, i64)]) -> Self {
        let pts: Vec<LatticeVector> = coords
            .iter()
            .map(|&(x, y)| LatticeVector::new(x, y))
            .collect();
        convex_hull(&pts).expect("non-empty coordinate list")
    }

    pub fn point(p: LatticeVector) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_vertex(&self, p: LatticeVector) -> bool {
        self.vertices.contains(&p)
    }

    /// Lexicographically minimal vertex.
    pub fn lex_min(&self) -> LatticeVector {
        self.vertices[0]
    }

    pub fn contains(&self, p: LatticeVector) -> bool {
        match self.dimension() {
            0 => p == self.vertices[0],
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                (b - a).cross(p - a) == 0 && (p - a).dot(b - a) >= 0 && (p - b).dot(a - b) >= 0
            }
            _ => {
                let n = self.vertices.len();
                (0..n).all(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    (b - a).cross(p - a) >= 0
                })
            }
        }
    }

    /// All lattice points, boundary included, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        match self.dimension() {
            0 => self.vertices.clone(),
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let d = b - a;
                let g = d.content();
                let e = d.primitive();
                (0..=g).map(|i| a + e * i).collect()
            }
            _ => {
                let (lo, hi) = self.bounding_box();
                let mut out = Vec::new();
                for x in lo.x..=hi.x {
                    for y in lo.y..=hi.y {
                        let p = LatticeVector::new(x, y);
                        if self.contains(p) {
                            out.push(p);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn bounding_box(&self) -> (LatticeVector, LatticeVector) {
        let lo = LatticeVector::new(
            self.vertices.iter().map(|v| v.x).min().unwrap(),
            self.vertices.iter().map(|v| v.y).min().unwrap(),
        );
        let hi = LatticeVector::new(
            self.vertices.iter().map(|v| v.x).max().unwrap(),
            self.vertices.iter().map(|v| v.y).max().unwrap(),
        );
        (lo, hi)
    }

    /// Edges in counterclockwise order.
    pub fn edges(&self) -> Result<Vec<Edge>> {
        if self.dimension() != 2 {
            return Err(Error::NotTwoDimensional(self.dimension()));
        }
        let n = self.vertices.len();
        Ok((0..n)
            .map(|i| {
                let start = self.vertices[i];
                let end = self.vertices[(i + 1) % n];
                let d = end - start;
                let length = d.content();
                let direction = d.primitive();
                let normal = direction.rotate_ccw();
                let inner_normal = AffineFunctional::linear(normal);
                Edge {
                    start,
                    end,
                    direction,
                    length,
                    inner_normal,
                    min_value: inner_normal.eval(start),
                }
            })
            .collect())
    }

    /// Edge vectors of the boundary walk: each edge split into ℓ(E) copies
    /// of its primitive direction. A segment contributes `e` and `−e` with
    /// multiplicity equal to its length.
    pub fn primitive_edge_vectors(&self) -> Vec<LatticeVector> {
        match self.dimension() {
            0 => Vec::new(),
            1 => {
                let d = self.vertices[1] - self.vertices[0];
                let (e, l) = (d.primitive(), d.content());
                let mut out = vec![e; l as usize];
                out.extend(std::iter::repeat_n(-e, l as usize));
                out
            }
            _ => self
                .edges()
                .unwrap()
                .iter()
                .flat_map(|e| std::iter::repeat_n(e.direction, e.length as usize))
                .collect(),
        }
    }

    /// Twice the Euclidean area (shoelace formula); 0 for degenerate polygons.
    pub fn double_area(&self) -> i64 {
        if self.dimension() < 2 {
            return 0;
        }
        let n = self.vertices.len();
        let s: i64 = (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum();
        s.abs()
    }

    pub fn translate(&self, t: LatticeVector) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Translate so that the lexicographically minimal vertex is the origin.
    pub fn normalized_translate(&self) -> Self {
        self.translate(-self.lex_min())
    }

    /// `max − min` of the linear functional `n` over the polygon.
    pub fn width_along(&self, n: LatticeVector) -> i64 {
        let vals = self.vertices.iter().map(|v| n.dot(*v));
        let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    }

    /// Face on which the linear functional `n` is minimal (the whole polygon
    /// for `n = 0`).
    pub fn face_minimizing(&self, n: LatticeVector) -> Self {
        let min = self.vertices.iter().map(|v| n.dot(*v)).min().unwrap();
        let pts: Vec<LatticeVector> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| n.dot(*v) == min)
            .collect();
        convex_hull(&pts).unwrap()
    }

    /// Whether `face` is a face of `self` (the polygon itself, an edge, or a vertex).
    pub fn has_face(&self, face: &LatticePolygon) -> bool {
        if face == self {
            return true;
        }
        match face.dimension() {
            0 => self.is_vertex(face.vertices[0]),
            1 if self.dimension() == 2 => self.edges().unwrap().iter().any(|e| {
                let (a, b) = if e.start < e.end {
                    (e.start, e.end)
                } else {
                    (e.end, e.start)
                };
                face.vertices == [a, b]
            }),
            _ => false,
        }
    }

    pub fn max_edge_length(&self) -> i64 {
        match self.dimension() {
            0 => 0,
            1 => (self.vertices[1] - self.vertices[0]).content(),
            _ => self
                .edges()
                .unwrap()
                .iter()
                .map(|e| e.length)
                .max()
                .unwrap(),
        }
    }

    /// Largest lattice width of the polygon measured by an edge's inner normal.
    pub fn max_edge_height(&self) -> i64 {
        match self.dimension() {
            2 => self
                .edges()
                .unwrap()
                .iter()
                .map(|e| self.width_along(e.normal()))
                .max()
                .unwrap(),
            _ => 0,
        }
    }

    /// A triangle of double area 1.
    pub fn is_standard_triangle(&self) -> bool {
        self.vertices.len() == 3 && self.double_area() == 1
    }

    pub fn is_unit_segment(&self) -> bool {
        self.dimension() == 1 && (self.vertices[1] - self.vertices[0]).is_primitive()
    }

    pub fn map(&self, m: &AffineMap) -> Self {
        let pts: Vec<LatticeVector> = self.vertices.iter().map(|&v| m.apply(v)).collect();
        convex_hull(&pts).unwrap()
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Minkowski sum `P + Q`.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    let pts: Vec<LatticeVector> = p
        .vertices
        .iter()
        .flat_map(|&a| q.vertices.iter().map(move |&b| a + b))
        .collect();
    convex_hull(&pts).unwrap()
}

/// `F_{a,b,c} = conv{(0,0),(a,0),(0,b),(a,b+ac)}`, requiring `a ≥ 1` and `b + c ≥ 1`.
pub fn nakajima_polygon(a: i64, b: i64, c: i64) -> Result<LatticePolygon> {
    if a < 1 || b < 0 || c < 0 || b + c < 1 {
        return Err(Error::InvalidParameters(format!(
            "Nakajima polygon needs a ≥ 1, b, c ≥ 0 and b + c ≥ 1 (got {a},{b},{c})"
        )));
    }
    convex_hull(&[
        LatticeVector::new(0, 0),
        LatticeVector::new(a, 0),
        LatticeVector::new(0, b),
        LatticeVector::new(a, b + a * c),
    ])
}
