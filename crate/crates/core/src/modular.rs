//! The weight-4 eta product `η⁴(2z)η⁴(4z)` as an integer q-expansion, and the
//! check that the well-poised 4F3 at 1 with all-`φ` top row equals `γ(p) + p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::finite_field::is_prime;
use crate::theorems::{evaluator_for, TheoremError};

/// Default truncation order; covers every prime up to 61.
pub const DEFAULT_TERMS: usize = 64;

#[derive(Debug, Error)]
pub enum ModularError {
    #[error("NotOddPrime: {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error(transparent)]
    Setup(#[from] TheoremError),
}

/// Coefficients `γ(1..=N)` of `η⁴(2z)η⁴(4z) = Σ γ(n) q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaSeries {
    coeffs: Vec<BigInt>,
}

impl EtaSeries {
    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `γ(n)` for `1 ≤ n ≤ N`.
    pub fn gamma(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }
}

/// Expands `η⁴(2z)η⁴(4z)` through `q^N`.
///
/// With `η(z) = q^{1/24} Π(1 - q^n)`, the eta prefactors contribute
/// `q^{(2·4 + 4·4)/24} = q^1`, leaving `q · Π (1 - q^{2n})⁴ (1 - q^{4n})⁴`.
/// Each binomial factor is applied in place, which is linear in `N`.
pub fn eta_product_coeffs(n_terms: usize) -> EtaSeries {
    let n_terms = n_terms.max(1);
    // Power series of the product, degrees 0..N-1; the leading q shifts it to 1..N.
    let mut series = vec![BigInt::zero(); n_terms];
    series[0] = BigInt::one();
    for step in [2usize, 4] {
        for k in (step..n_terms).step_by(step) {
            for _ in 0..4 {
                for i in (k..n_terms).rev() {
                    let lower = series[i - k].clone();
                    series[i] -= lower;
                }
            }
        }
    }
    EtaSeries { coeffs: series }
}

/// Result of comparing the finite-field 4F3 with the eta-product coefficient at `p`.
#[derive(Debug, Clone, Serialize)]
pub struct ModularCheck {
    pub p: u64,
    /// The 4F3 value as a rational, or its coefficient vector if it is not rational.
    pub value: String,
    /// True when the 4F3 value is a rational number with denominator 1.
    pub integral: bool,
    #[serde(serialize_with = "as_string")]
    pub gamma: BigInt,
    #[serde(serialize_with = "as_string")]
    pub gamma_plus_p: BigInt,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    // JSON numbers when they fit, strings otherwise.
    match v.to_i64() {
        Some(i) => s.serialize_i64(i),
        None => s.serialize_str(&v.to_string()),
    }
}

impl fmt::Display for ModularCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p = {:<3} 4F3 = {:<8} γ(p) = {:<8} γ(p)+p = {:<8} {}",
            self.p,
            self.value,
            self.gamma,
            self.gamma_plus_p,
            if self.matches { "match" } else { "MISMATCH" }
        )
    }
}

/// Evaluates `4F3(φ,φ,φ,φ; ε,ε,ε | 1)` over `F_p` exactly and compares it with
/// `γ(p) + p` from `series`, which must reach at least `p` terms.
pub fn verify_ao_with(p: u64, series: &EtaSeries) -> Result<ModularCheck, ModularError> {
    if p == 2 || !is_prime(p) {
        return Err(ModularError::NotOddPrime(p));
    }
    let ev = evaluator_for(p)?;
    let chars = ev.chars();
    let phi = chars.phi().map_err(TheoremError::from)?;
    let eps = chars.trivial();
    let v = ev.f_star(&[phi; 4], &[eps; 3], ev.field().one());

    let gamma = match series.gamma(p as usize) {
        Some(g) => g.clone(),
        None => eta_product_coeffs(p as usize)
            .gamma(p as usize)
            .cloned()
            .unwrap_or_default(),
    };
    let gamma_plus_p = &gamma + BigInt::from(p);
    let rational = v.to_rational();
    let integral = rational.as_ref().is_some_and(|r| r.is_integer());
    let matches = integral
        && rational
            .as_ref()
            .is_some_and(|r| *r.numer() == gamma_plus_p);
    let value = match rational {
        Some(r) => r.to_string(),
        None => v.coefficient_string(),
    };
    Ok(ModularCheck {
        p,
        value,
        integral,
        gamma,
        gamma_plus_p,
        matches,
    })
}

pub fn verify_ao(p: u64) -> Result<ModularCheck, ModularError> {
    verify_ao_with(p, &eta_product_coeffs(DEFAULT_TERMS.max(p as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent expansion: each factor `(1 - q^k)^4` is written out with
    /// binomial coefficients and multiplied in by full convolution.
    fn naive_coeffs(n_terms: usize) -> Vec<BigInt> {
        let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); n_terms];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    if i + j < n_terms {
                        out[i + j] += x * y;
                    }
                }
            }
            out
        };
        let mut acc = vec![BigInt::zero(); n_terms];
        acc[0] = BigInt::one();
        for k in 1..n_terms {
            for step in [2, 4] {
                let e = step * k;
                if e >= n_terms {
                    continue;
                }
                let mut factor = vec![BigInt::zero(); n_terms];
                for (j, c) in [1i64, -4, 6, -4, 1].into_iter().enumerate() {
                    if j * e < n_terms {
                        factor[j * e] = BigInt::from(c);
                    }
                }
                acc = mul(&acc, &factor);
            }
        }
        acc
    }

    #[test]
    fn matches_naive_expansion() {
        for n in [1, 2, 7, 30, 50] {
            assert_eq!(eta_product_coeffs(n).coeffs, naive_coeffs(n), "N = {n}");
        }
    }

    #[test]
    fn leading_and_even_coefficients() {
        let s = eta_product_coeffs(DEFAULT_TERMS);
        assert_eq!(s.terms(), DEFAULT_TERMS);
        assert_eq!(s.gamma(1), Some(&BigInt::one()));
        assert_eq!(s.gamma(0), None);
        for n in (2..=DEFAULT_TERMS).step_by(2) {
            assert!(s.gamma(n).unwrap().is_zero(), "γ({n})");
        }
    }

    #[test]
    fn multiplicative_at_coprime_indices() {
        let s = eta_product_coeffs(DEFAULT_TERMS);
        let g = |n| s.gamma(n).unwrap().clone();
        assert_eq!(g(15), g(3) * g(5));
        assert_eq!(g(21), g(3) * g(7));
        assert_eq!(g(33), g(3) * g(11));
        assert_eq!(g(35), g(5) * g(7));
    }

    #[test]
    fn four_f_three_matches_eta_coefficients() {
        for p in [3, 5, 7, 11, 13] {
            let c = verify_ao(p).unwrap();
            assert!(c.integral, "{c}");
            assert!(c.matches, "{c}");
        }
    }

    #[test]
    fn rejects_non_odd_primes() {
        for p in [0, 1, 2, 9, 15] {
            assert!(matches!(verify_ao(p), Err(ModularError::NotOddPrime(_))));
        }
    }

    #[test]
    fn json_record() {
        let c = verify_ao(3).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["p"], 3);
        assert_eq!(v["match"], true);
        assert!(v["gamma"].is_i64());
    }
}
