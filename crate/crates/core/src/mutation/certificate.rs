use serde::{Deserialize, Serialize};

use super::{as_binomial_power, is_unit_monomial, mutate, MutationDatum};
use crate::lattice::LatticeVector;
use crate::laurent::LaurentPoly;

/// Where a certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Enumeration,
    UserSupplied,
}

/// One irreducible factor with its multiplicity and a mutation chain to a
/// monomial. Factors whose support has rank ≤ 1 may carry an empty chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertFactor {
    pub poly: LaurentPoly,
    pub multiplicity: u32,
    pub chain: Vec<MutationDatum>,
}

/// `f = x^shift · Π poly_i^{multiplicity_i}` with each factor certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroMutableCertificate {
    pub factors: Vec<CertFactor>,
    #[serde(default)]
    pub shift: LatticeVector,
    pub provenance: Provenance,
}

impl ZeroMutableCertificate {
    /// Product of the factors times `x^shift`.
    pub fn product(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::x_pow(self.shift);
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    /// Prime factors counted with multiplicity.
    pub fn multiplicities(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.multiplicity).collect()
    }

    /// `n_k` = number of prime factors of multiplicity at least `k`, for
    /// `k = 1..=max multiplicity`.
    pub fn n_k(&self) -> Vec<u32> {
        let top = self
            .factors
            .iter()
            .map(|f| f.multiplicity)
            .max()
            .unwrap_or(0);
        (1..=top)
            .map(|k| self.factors.iter().filter(|f| f.multiplicity >= k).count() as u32)
            .collect()
    }

    /// Checks that the factors multiply to `f` and that every chain ends at
    /// a monomial with coefficient 1.
    pub fn verify(&self, f: &LaurentPoly) -> Result<(), String> {
        if self.product() != *f {
            return Err("factors do not multiply to the polynomial".into());
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if fac.multiplicity == 0 {
                return Err(format!("factor {i} has multiplicity 0"));
            }
            replay_chain(&fac.poly, &fac.chain).map_err(|e| format!("factor {i}: {e}"))?;
        }
        Ok(())
    }
}

/// Applies the chain and returns the final monomial. An empty chain is
/// accepted for `(1 + x^e)^k x^l`.
pub fn replay_chain(start: &LaurentPoly, chain: &[MutationDatum]) -> Result<LaurentPoly, String> {
    if chain.is_empty() {
        return match as_binomial_power(start) {
            Some(_) => Ok(start.clone()),
            None => Err("empty chain on a polynomial that is not a binomial power".into()),
        };
    }
    let mut cur = start.clone();
    for (j, d) in chain.iter().enumerate() {
        cur = mutate(&cur, d).map_err(|e| format!("step {j}: {e}"))?;
    }
    if !is_unit_monomial(&cur) {
        return Err(format!(
            "chain ends at {cur}, not a monomial with coefficient 1"
        ));
    }
    Ok(cur)
}
