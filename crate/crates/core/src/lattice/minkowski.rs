use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{angle_cmp, convex_hull, minkowski_sum, LatticePolygon, LatticeVector};

/// Which decompositions to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DecompositionFilter {
    /// Every unordered decomposition into at least two non-point summands.
    All,
    /// Only decompositions whose summands are Minkowski indecomposable.
    #[default]
    Maximal,
}

/// An unordered Minkowski decomposition. Summands are translated so that
/// their lexicographically minimal vertex is the origin, and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinkowskiDecomposition {
    pub summands: Vec<LatticePolygon>,
}

impl MinkowskiDecomposition {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.len() <= 1
    }

    /// Minkowski sum of the summands as stored.
    pub fn sum(&self) -> LatticePolygon {
        let mut it = self.summands.iter();
        let first = it.next().expect("non-empty decomposition").clone();
        it.fold(first, |acc, s| minkowski_sum(&acc, s))
    }

    /// Translate the last summand so that the summands add up to `p` exactly.
    pub fn aligned_to(&self, p: &LatticePolygon) -> MinkowskiDecomposition {
        let mut out = self.clone();
        let shift = p.lex_min() - self.sum().lex_min();
        if let Some(last) = out.summands.last_mut() {
            *last = last.translate(shift);
        }
        out
    }
}

/// Multiset of primitive edge vectors: distinct directions with counts.
fn edge_multiset(p: &LatticePolygon) -> (Vec<LatticeVector>, Vec<usize>) {
    let mut counts: BTreeMap<LatticeVector, usize> = BTreeMap::new();
    for e in p.primitive_edge_vectors() {
        *counts.entry(e).or_default() += 1;
    }
    let dirs: Vec<LatticeVector> = counts.keys().copied().collect();
    let cnt: Vec<usize> = counts.values().copied().collect();
    (dirs, cnt)
}

/// All nonzero sub-count vectors `k ≤ counts` with `Σ kᵢ eᵢ = 0`.
fn zero_sum_subvectors(dirs: &[LatticeVector], counts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; dirs.len()];
    fn rec(
        i: usize,
        acc: LatticeVector,
        dirs: &[LatticeVector],
        counts: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == dirs.len() {
            if acc == LatticeVector::ZERO && cur.iter().any(|&k| k > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=counts[i] {
            cur[i] = k;
            rec(i + 1, acc + dirs[i] * k as i64, dirs, counts, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, LatticeVector::ZERO, dirs, counts, &mut cur, &mut out);
    out
}

fn le(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn polygon_from_part(dirs: &[LatticeVector], part: &[usize]) -> LatticePolygon {
    let mut vecs: Vec<LatticeVector> = Vec::new();
    for (d, &k) in dirs.iter().zip(part) {
        vecs.extend(std::iter::repeat_n(*d, k));
    }
    vecs.sort_by(|a, b| angle_cmp(*a, *b));
    let mut pts = vec![LatticeVector::ZERO];
    let mut cur = LatticeVector::ZERO;
    for v in vecs {
        cur = cur + v;
        pts.push(cur);
    }
    convex_hull(&pts).unwrap().normalized_translate()
}

/// Nontrivial Minkowski decompositions of `p` into at least two non-point
/// summands, up to translation of the summands.
pub fn minkowski_decompositions(
    p: &LatticePolygon,
    filter: DecompositionFilter,
) -> Vec<MinkowskiDecomposition> {
    all_decompositions(p, filter)
        .into_iter()
        .filter(|d| d.len() >= 2)
        .collect()
}

/// Like [`minkowski_decompositions`] but keeps the trivial decomposition
/// `P = P` when it passes the filter.
pub(crate) fn all_decompositions(
    p: &LatticePolygon,
    filter: DecompositionFilter,
) -> Vec<MinkowskiDecomposition> {
    if p.is_point() {
        return Vec::new();
    }
    let (dirs, counts) = edge_multiset(p);
    let mut parts = zero_sum_subvectors(&dirs, &counts);
    if filter == DecompositionFilter::Maximal {
        // indecomposable parts contain no proper nonzero zero-sum part
        let all = parts.clone();
        parts.retain(|k| !all.iter().any(|j| j != k && le(j, k)));
    }
    parts.sort();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        remaining: &mut Vec<usize>,
        start: usize,
        parts: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining.iter().all(|&r| r == 0) {
            out.push(chosen.clone());
            return;
        }
        for i in start..parts.len() {
            let k = &parts[i];
            if !le(k, remaining) {
                continue;
            }
            for (r, x) in remaining.iter_mut().zip(k) {
                *r -= x;
            }
            chosen.push(i);
            rec(remaining, i, parts, chosen, out);
            chosen.pop();
            for (r, x) in remaining.iter_mut().zip(k) {
                *r += x;
            }
        }
    }
    let mut index_lists = Vec::new();
    let mut remaining = counts.clone();
    rec(&mut remaining, 0, &parts, &mut chosen, &mut index_lists);

    for idx in index_lists {
        let mut summands: Vec<LatticePolygon> = idx
            .iter()
            .map(|&i| polygon_from_part(&dirs, &parts[i]))
            .collect();
        summands.sort();
        out.push(MinkowskiDecomposition { summands });
    }
    out.sort();
    out.dedup();
    out
}

/// Decompositions all of whose summands are unit segments or standard
/// triangles, including `P` itself when it is one.
pub fn smoothing_decompositions(p: &LatticePolygon) -> Vec<MinkowskiDecomposition> {
    all_decompositions(p, DecompositionFilter::All)
        .into_iter()
        .filter(|d| {
            d.summands
                .iter()
                .all(|s| s.is_unit_segment() || s.is_standard_triangle())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_coords(c)
    }

    #[test]
    fn quad_splits_into_two_triangles() {
        let q = poly(&[(-1, -1), (2, -1), (1, 1), (-1, 2)]);
        let ds = minkowski_decompositions(&q, DecompositionFilter::Maximal);
        assert_eq!(ds.len(), 1);
        assert_eq!(
            minkowski_decompositions(&q, DecompositionFilter::All).len(),
            1
        );
        assert!(smoothing_decompositions(&q).is_empty());
        for d in &ds {
            assert_eq!(d.aligned_to(&q).sum(), q);
        }
        let has = |s: &[LatticePolygon]| ds.iter().any(|d| d.summands == s);
        let a = poly(&[(0, 0), (1, 0), (0, 2)]);
        let b = poly(&[(0, 0), (2, 0), (0, 1)]);
        assert!(has(&[a, b]));
    }

    #[test]
    fn unit_square_is_two_segments() {
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let ds = minkowski_decompositions(&sq, DecompositionFilter::Maximal);
        assert_eq!(ds.len(), 1);
        assert_eq!(
            ds[0].summands,
            vec![poly(&[(0, 0), (0, 1)]), poly(&[(0, 0), (1, 0)])]
        );
        let all = minkowski_decompositions(&sq, DecompositionFilter::All);
        assert_eq!(all.len(), 1);
        assert_eq!(smoothing_decompositions(&sq).len(), 1);
    }

    #[test]
    fn triangle_is_indecomposable() {
        let t = poly(&[(0, 0), (3, 0), (3, 2)]);
        assert!(minkowski_decompositions(&t, DecompositionFilter::All).is_empty());
        let unit = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert!(minkowski_decompositions(&unit, DecompositionFilter::All).is_empty());
        assert_eq!(smoothing_decompositions(&unit).len(), 1);
        assert!(smoothing_decompositions(&t).is_empty());
    }

    #[test]
    fn scaled_triangle() {
        let t = poly(&[(0, 0), (2, 0), (0, 2)]);
        let ds = minkowski_decompositions(&t, DecompositionFilter::Maximal);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].summands, vec![poly(&[(0, 0), (1, 0), (0, 1)]); 2]);
        assert_eq!(smoothing_decompositions(&t).len(), 1);
        assert_eq!(
            minkowski_decompositions(&t, DecompositionFilter::All).len(),
            1
        );
    }

    #[test]
    fn segment_splits_into_unit_segments() {
        let s = poly(&[(0, 0), (3, 0)]);
        let ds = minkowski_decompositions(&s, DecompositionFilter::Maximal);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].summands, vec![poly(&[(0, 0), (1, 0)]); 3]);
        // 3 = 2 + 1 = 1 + 1 + 1
        assert_eq!(
            minkowski_decompositions(&s, DecompositionFilter::All).len(),
            2
        );
    }

    #[test]
    fn hexagon_has_two_maximal_decompositions() {
        let h = poly(&[(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)]);
        let ds = minkowski_decompositions(&h, DecompositionFilter::Maximal);
        assert_eq!(ds.len(), 2);
        let lens: Vec<usize> = ds.iter().map(|d| d.len()).collect();
        assert!(lens.contains(&2) && lens.contains(&3));
        assert_eq!(smoothing_decompositions(&h).len(), 2);
    }
}
