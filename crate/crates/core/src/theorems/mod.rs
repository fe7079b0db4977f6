//! Verifiers for the summation and transformation identities.
//!
//! Each verifier sweeps a space of character tuples, computes both sides of an
//! identity independently and compares them exactly. Tuples outside a
//! statement's hypotheses are tallied under an `excluded` branch rather than
//! evaluated.

mod invariants;
mod recursion;
mod relations;
mod report;
mod summation;
mod sweep;
mod whipple;

use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::characters::CharError;
use crate::finite_field::{FieldCtx, FieldError};
use crate::hypergeometric::Evaluator;

pub use report::{Failure, TheoremReport};
pub use sweep::{PlanParseError, SweepPlan};

pub use invariants::{
    verify_additive_independence, verify_gauss_conj, verify_gauss_inverse, verify_gauss_pair_sum,
    verify_jacobi_gauss, verify_orthogonality, verify_permutation, verify_sum_jacobi,
};
pub use recursion::{verify_katz_recursion, verify_recursion, verify_vanishing};
pub use relations::{verify_katz_vsum, verify_star_greene, verify_star_katz};
pub use summation::{
    verify_dixon, verify_four_gauss, verify_gauss_analogue, verify_greene_437, verify_greene_gauss,
    verify_kummer, DIXON_BRANCHES,
};
pub use whipple::{verify_remark_4f3, verify_whipple_4f3, verify_whipple_5f4};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Character(#[from] CharError),
}

/// Knobs shared by the verifiers that sweep over an order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `n` for the order-lowering recursion, both forms.
    pub recursion_n_max: usize,
    /// Largest `n` for the vanishing check.
    pub vanishing_n_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            recursion_n_max: 4,
            vanishing_n_max: 5,
        }
    }
}

type VerifyFn = fn(&Evaluator, &SweepPlan, &VerifyOptions) -> TheoremReport;

/// Identity verifiers, in suite order.
pub const THEOREMS: &[(&str, &str)] = &[
    ("hp", "four-Gauss-sum evaluation"),
    ("gauss", "2F1 at 1 and its Gauss-sum form"),
    ("kummer", "well-poised 2F1 at -1"),
    ("dixon", "well-poised 3F2 at 1, full case table"),
    ("whipple4", "well-poised 4F3 at -1"),
    ("remark", "well-poised 4F3 at -1 with A = ε, B = φ"),
    ("whipple5", "well-poised 5F4 at 1"),
    (
        "recursion",
        "order-lowering recursion for well-poised functions",
    ),
    ("katz-recursion", "order-lowering recursion in Katz form"),
    (
        "vanishing",
        "well-poised functions with non-square leading parameter",
    ),
    ("greene-gauss", "Greene's 2F1 at 1"),
    ("greene-437", "Greene's well-poised 3F2 at 1"),
    ("star-greene", "star function against Greene's function"),
    ("star-katz", "star function against Katz's sum"),
];

/// Structural invariants of characters, Gauss sums and the star function.
pub const INVARIANTS: &[(&str, &str)] = &[
    ("orthogonality", "orthogonality of characters"),
    ("gauss-conj", "g(χ) g(χ̄) = χ(-1) q"),
    ("jacobi-gauss", "Jacobi sums through Gauss sums"),
    ("sum-jacobi", "Σ_χ J(Aχ, Bχ̄) χ(-1) = 0"),
    ("gauss-pair-sum", "Σ_χ g(Aχ) g(Bχ̄) χ(-1)"),
    (
        "gauss-inverse",
        "closed-form 1/g(χ) against generic inversion",
    ),
    (
        "additive-independence",
        "star function under every additive character",
    ),
    ("permutation", "star function under parameter permutations"),
    ("katz-vsum", "Katz's sum against direct enumeration"),
];

fn lookup(id: &str) -> Option<VerifyFn> {
    Some(match id {
        "hp" => |ev, plan, _| verify_four_gauss(ev, plan),
        "gauss" => |ev, plan, _| verify_gauss_analogue(ev, plan),
        "kummer" => |ev, plan, _| verify_kummer(ev, plan),
        "dixon" => |ev, plan, _| verify_dixon(ev, plan),
        "whipple4" => |ev, plan, _| verify_whipple_4f3(ev, plan),
        "remark" => |ev, plan, _| verify_remark_4f3(ev, plan),
        "whipple5" => |ev, plan, _| verify_whipple_5f4(ev, plan),
        "recursion" => |ev, plan, o| verify_recursion(ev, o.recursion_n_max, plan),
        "katz-recursion" => |ev, plan, o| verify_katz_recursion(ev, o.recursion_n_max, plan),
        "vanishing" => |ev, plan, o| verify_vanishing(ev, o.vanishing_n_max, plan),
        "greene-gauss" => |ev, plan, _| verify_greene_gauss(ev, plan),
        "greene-437" => |ev, plan, _| verify_greene_437(ev, plan),
        "star-greene" => |ev, plan, _| verify_star_greene(ev, plan),
        "star-katz" => |ev, plan, _| verify_star_katz(ev, plan),
        "orthogonality" => |ev, _, _| verify_orthogonality(ev),
        "gauss-conj" => |ev, _, _| verify_gauss_conj(ev),
        "jacobi-gauss" => |ev, _, _| verify_jacobi_gauss(ev),
        "sum-jacobi" => |ev, _, _| verify_sum_jacobi(ev),
        "gauss-pair-sum" => |ev, _, _| verify_gauss_pair_sum(ev),
        "gauss-inverse" => |ev, _, _| verify_gauss_inverse(ev),
        "additive-independence" => |ev, plan, _| verify_additive_independence(ev, plan),
        "permutation" => |ev, plan, _| verify_permutation(ev, plan),
        "katz-vsum" => |ev, plan, _| verify_katz_vsum(ev, plan),
        _ => return None,
    })
}

/// True for every id accepted by [`verify`].
pub fn is_known(id: &str) -> bool {
    lookup(id).is_some()
}

/// All ids in suite order: identities first, then invariants.
pub fn all_ids() -> impl Iterator<Item = &'static str> {
    THEOREMS.iter().chain(INVARIANTS).map(|(id, _)| *id)
}

/// Builds the evaluator for `F_q` with the default order bound.
pub fn evaluator_for(q: u64) -> Result<Evaluator, TheoremError> {
    evaluator_with_bound(q, crate::finite_field::DEFAULT_MAX_ORDER)
}

pub fn evaluator_with_bound(q: u64, bound: u64) -> Result<Evaluator, TheoremError> {
    let field = Arc::new(FieldCtx::of_order_with_bound(q, bound)?);
    Ok(Evaluator::new(field)?)
}

/// Runs one verifier by id.
pub fn verify(
    id: &str,
    ev: &Evaluator,
    plan: &SweepPlan,
    opts: &VerifyOptions,
) -> Result<TheoremReport, TheoremError> {
    let f = lookup(id).ok_or_else(|| TheoremError::UnknownTheorem(id.to_string()))?;
    let start = Instant::now();
    let mut report = f(ev, plan, opts);
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs every verifier and invariant for each field order in `q_list`.
pub fn run_suite(
    q_list: &[u64],
    plan: &SweepPlan,
    opts: &VerifyOptions,
) -> Result<Vec<TheoremReport>, TheoremError> {
    let mut reports = Vec::new();
    for &q in q_list {
        let ev = evaluator_for(q)?;
        for id in all_ids() {
            reports.push(verify(id, &ev, plan, opts)?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        for id in all_ids() {
            assert!(is_known(id), "{id}");
        }
        assert!(!is_known("nope"));
        let ev = evaluator_for(3).unwrap();
        assert!(matches!(
            verify(
                "nope",
                &ev,
                &SweepPlan::Exhaustive,
                &VerifyOptions::default()
            ),
            Err(TheoremError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn small_suite_passes() {
        let reports = run_suite(
            &[3, 4, 5],
            &SweepPlan::Exhaustive,
            &VerifyOptions::default(),
        )
        .unwrap();
        for r in &reports {
            assert!(r.passed(), "{}", r.to_text());
            assert_eq!(
                r.branches.values().sum::<u64>(),
                r.tuples_tested,
                "{}",
                r.theorem_id
            );
        }
    }

    #[test]
    fn even_field_skips_quadratic_statements() {
        let ev = evaluator_for(8).unwrap();
        let opts = VerifyOptions::default();
        for id in [
            "kummer",
            "dixon",
            "whipple4",
            "remark",
            "whipple5",
            "vanishing",
            "greene-437",
        ] {
            let r = verify(id, &ev, &SweepPlan::Exhaustive, &opts).unwrap();
            assert!(r.skipped);
            assert!(r.passed());
        }
    }
}
