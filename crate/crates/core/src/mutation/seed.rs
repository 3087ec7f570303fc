use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{is_mutable, MutationDatum, SearchBounds, ZeroMutableCertificate};
use crate::lattice::AffineFunctional;
use crate::laurent::LaurentPoly;

/// A seed entry: a character of `M = ℤ³` and the polynomial `h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeedEntry {
    #[serde(rename = "phi_M")]
    pub phi_m: [i64; 3],
    pub h: LaurentPoly,
}

impl SeedEntry {
    pub fn from_datum(d: &MutationDatum) -> Self {
        Self {
            phi_m: d.phi.as_array(),
            h: d.h.to_laurent(),
        }
    }
}

/// A finite truncation of `S₋(f)` or `S̃(f)`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed {
    pub entries: Vec<SeedEntry>,
}

impl Seed {
    pub fn contains(&self, phi_m: [i64; 3], h: &LaurentPoly) -> bool {
        self.entries.iter().any(|e| e.phi_m == phi_m && e.h == *h)
    }
}

/// Edge-negative data `(φ, 1 + x^e)` for which `f` is mutable. For each edge
/// and multiplier `p ≤ max_p`, offsets run upward from 1 until mutability
/// first fails. Empty when `Newt f` has rank ≤ 1.
pub fn s_minus(_cert: &ZeroMutableCertificate, f: &LaurentPoly, bounds: &SearchBounds) -> Seed {
    let Ok(newt) = f.newton_polygon() else {
        return Seed::default();
    };
    if newt.dimension() < 2 {
        return Seed::default();
    }
    let (max_p, _) = bounds.pq_for(&newt);
    let mut entries = Vec::new();
    for edge in newt.edges().unwrap() {
        let n = edge.normal();
        let e = edge.direction.positive();
        for p in 1..=max_p {
            let mut q = 1;
            while bounds.max_q.is_none_or(|m| q <= m) {
                let phi = AffineFunctional::new(p * n.x, p * n.y, -p * edge.min_value - q);
                let d = MutationDatum::binomial(phi, e, 1).expect("edge datum");
                if !is_mutable(f, &d) {
                    break;
                }
                entries.push(SeedEntry::from_datum(&d));
                q += 1;
            }
        }
    }
    entries.sort();
    entries.dedup();
    Seed { entries }
}

/// `S₋(f)` together with `(−k·u, h)` for each certified prime factor `h` of
/// multiplicity `k`, where `u = (0, 0, 1)`. A prime `f` is its own entry.
pub fn seed_tilde(cert: &ZeroMutableCertificate, f: &LaurentPoly, bounds: &SearchBounds) -> Seed {
    let mut seed = s_minus(cert, f, bounds);
    let prime = cert.factors.len() == 1 && cert.factors[0].multiplicity == 1;
    for fac in &cert.factors {
        seed.entries.push(SeedEntry {
            phi_m: [0, 0, -(fac.multiplicity as i64)],
            h: if prime { f.clone() } else { fac.poly.clone() },
        });
    }
    seed.entries.sort();
    seed.entries.dedup();
    seed
}

/// Predicted tangent dimensions by character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentTable {
    /// Characters with nonzero predicted dimension.
    pub entries: BTreeMap<[i64; 3], u32>,
    /// `n_k` for `k = 1, 2, …`.
    pub n: Vec<u32>,
}

impl TangentTable {
    pub fn dim(&self, m: [i64; 3]) -> u32 {
        self.entries.get(&m).copied().unwrap_or(0)
    }
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    m: [i64; 3],
    dim: u32,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    entries: Vec<TableEntry>,
    n: Vec<u32>,
}

impl Serialize for TangentTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            entries: self
                .entries
                .iter()
                .map(|(m, d)| TableEntry { m: *m, dim: *d })
                .collect(),
            n: self.n.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TangentTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TableJson::deserialize(d)?;
        Ok(Self {
            entries: j.entries.into_iter().map(|e| (e.m, e.dim)).collect(),
            n: j.n,
        })
    }
}

/// `n_k` at `−k·u`, 1 at the characters of `S₋(f)`, 0 elsewhere.
pub fn tangent_table(
    cert: &ZeroMutableCertificate,
    f: &LaurentPoly,
    bounds: &SearchBounds,
) -> TangentTable {
    let n = cert.n_k();
    let mut entries = BTreeMap::new();
    for e in s_minus(cert, f, bounds).entries {
        entries.insert(e.phi_m, 1);
    }
    for (k, &nk) in n.iter().enumerate() {
        if nk > 0 {
            entries.insert([0, 0, -(k as i64 + 1)], nk);
        }
    }
    TangentTable { entries, n }
}
