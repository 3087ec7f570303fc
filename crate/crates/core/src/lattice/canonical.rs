use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{convex_hull, LatticePolygon, LatticeVector};

/// Integral affine map `v ↦ M v + t` with `det M = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineMap {
    /// Row-major matrix.
    pub matrix: [[i64; 2]; 2],
    pub translation: LatticeVector,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        matrix: [[1, 0], [0, 1]],
        translation: LatticeVector::ZERO,
    };

    pub fn new(matrix: [[i64; 2]; 2], translation: LatticeVector) -> Self {
        Self {
            matrix,
            translation,
        }
    }

    pub fn translation(t: LatticeVector) -> Self {
        Self::new([[1, 0], [0, 1]], t)
    }

    pub fn det(&self) -> i64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Image of a vector under the linear part.
    pub fn apply_linear(&self, v: LatticeVector) -> LatticeVector {
        let m = self.matrix;
        LatticeVector::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        self.apply_linear(v) + self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let a = self.matrix;
        let b = other.matrix;
        let m = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        AffineMap::new(m, self.apply(other.translation))
    }

    pub fn inverse(&self) -> AffineMap {
        let d = self.det();
        assert!(d == 1 || d == -1, "affine map is not unimodular");
        let m = self.matrix;
        let inv = [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]];
        let lin = AffineMap::new(inv, LatticeVector::ZERO);
        AffineMap::new(inv, -lin.apply_linear(self.translation))
    }
}

/// Unimodular `U` with `det U = 1` and `U e = (1, 0)` for primitive `e`.
fn straighten(e: LatticeVector) -> [[i64; 2]; 2] {
    let g = e.x.extended_gcd(&e.y);
    let (mut s, mut t) = (g.x, g.y);
    if g.gcd < 0 {
        s = -s;
        t = -t;
    }
    [[s, t], [-e.y, e.x]]
}

fn candidates(p: &LatticePolygon) -> Vec<(Vec<LatticeVector>, AffineMap)> {
    let verts = p.vertices();
    match p.dimension() {
        0 => vec![(vec![LatticeVector::ZERO], AffineMap::translation(-verts[0]))],
        1 => {
            let mut out = Vec::new();
            for (a, b) in [(verts[0], verts[1]), (verts[1], verts[0])] {
                let lin = AffineMap::new(straighten((b - a).primitive()), LatticeVector::ZERO);
                let m = AffineMap::new(lin.matrix, -lin.apply_linear(a));
                let img = convex_hull(&[m.apply(a), m.apply(b)]).unwrap();
                out.push((img.vertices().to_vec(), m));
            }
            out
        }
        _ => {
            let mut out = Vec::new();
            for refl in [[[1, 0], [0, 1]], [[1, 0], [0, -1]]] {
                let r = AffineMap::new(refl, LatticeVector::ZERO);
                let q = p.map(&r);
                let qv = q.vertices();
                let n = qv.len();
                for i in 0..n {
                    let v = qv[i];
                    let e = (qv[(i + 1) % n] - v).primitive();
                    let w = (qv[(i + n - 1) % n] - v).primitive();
                    let u = AffineMap::new(straighten(e), LatticeVector::ZERO);
                    let w1 = u.apply_linear(w);
                    let k = -Integer::div_floor(&w1.x, &w1.y);
                    let shear = AffineMap::new([[1, k], [0, 1]], LatticeVector::ZERO);
                    let lin = shear.compose(&u).compose(&r);
                    let m = AffineMap::new(lin.matrix, -lin.apply_linear(p_vertex(&r, v)));
                    let img = p.map(&m);
                    out.push((img.vertices().to_vec(), m));
                }
            }
            out
        }
    }
}

// `v` is a vertex of the reflected polygon; recover the original vertex.
fn p_vertex(r: &AffineMap, v: LatticeVector) -> LatticeVector {
    r.inverse().apply(v)
}

/// Normal form of `p` under the affine unimodular group, with a map taking
/// `p` onto it. Two polygons are equivalent iff their forms are equal.
pub fn canonical_form(p: &LatticePolygon) -> (LatticePolygon, AffineMap) {
    let cands = candidates(p);
    let (best, m) = cands.into_iter().min().unwrap();
    (convex_hull(&best).unwrap(), m)
}

/// All candidate maps realising the canonical form of `p`. For segments,
/// one map per endpoint is returned.
pub fn canonical_transforms(p: &LatticePolygon) -> Vec<AffineMap> {
    let cands = candidates(p);
    let best = cands.iter().map(|(v, _)| v.clone()).min().unwrap();
    let mut maps: Vec<AffineMap> = cands
        .into_iter()
        .filter(|(v, _)| *v == best)
        .map(|(_, m)| m)
        .collect();
    maps.sort();
    maps.dedup();
    maps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_coords(c)
    }

    #[test]
    fn straighten_sends_e_to_x_axis() {
        for e in [(1, 0), (0, 1), (-1, 0), (2, 3), (-3, 5), (4, -7), (0, -1)] {
            let e = LatticeVector::new(e.0, e.1);
            let m = AffineMap::new(straighten(e), LatticeVector::ZERO);
            assert_eq!(m.det(), 1);
            assert_eq!(m.apply(e), LatticeVector::new(1, 0));
        }
    }

    #[test]
    fn inverse_and_compose() {
        let m = AffineMap::new([[2, 1], [1, 1]], LatticeVector::new(3, -4));
        let id = m.compose(&m.inverse());
        assert_eq!(id, AffineMap::IDENTITY);
        let r = AffineMap::new([[0, 1], [1, 0]], LatticeVector::new(1, 1));
        assert_eq!(r.compose(&r.inverse()), AffineMap::IDENTITY);
    }

    #[test]
    fn equivalent_triangles_agree() {
        let a = poly(&[(0, 0), (1, 0), (0, 1)]);
        let b = poly(&[(5, 5), (7, 6), (6, 6)]);
        assert_eq!(canonical_form(&a).0, canonical_form(&b).0);
        assert_eq!(canonical_form(&a).0, poly(&[(0, 0), (1, 0), (0, 1)]));
    }

    #[test]
    fn inequivalent_polygons_differ() {
        let a = poly(&[(0, 0), (2, 0), (0, 1)]);
        let b = poly(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_ne!(canonical_form(&a).0, canonical_form(&b).0);
    }

    #[test]
    fn transforms_realise_form() {
        let q = poly(&[(-1, -1), (2, -1), (1, 1), (-1, 2)]);
        let (c, m0) = canonical_form(&q);
        assert_eq!(q.map(&m0), c);
        let maps = canonical_transforms(&q);
        assert!(!maps.is_empty());
        for m in maps {
            assert_eq!(q.map(&m), c);
            assert_eq!(m.det().abs(), 1);
        }
    }

    #[test]
    fn segment_and_point_forms() {
        let s = poly(&[(1, 1), (7, 4)]);
        assert_eq!(canonical_form(&s).0, poly(&[(0, 0), (3, 0)]));
        assert_eq!(canonical_transforms(&s).len(), 2);
        let p = poly(&[(4, -2)]);
        assert_eq!(canonical_form(&p).0, poly(&[(0, 0)]));
    }

    #[test]
    fn shear_and_translation_invariance() {
        let t = poly(&[(0, 0), (3, 0), (3, 2)]);
        let shear = AffineMap::new([[1, 1], [0, 1]], LatticeVector::ZERO);
        assert_eq!(canonical_form(&t).0, canonical_form(&t.map(&shear)).0);
        let moved = t.translate(LatticeVector::new(7, -3));
        assert_eq!(canonical_form(&t).0, canonical_form(&moved).0);
        let (c, _) = canonical_form(&t);
        assert_eq!(canonical_form(&c).0, c);
    }

    #[test]
    fn unit_square_has_eight_symmetries() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(canonical_transforms(&sq).len(), 8);
    }
}
