//! Relations between the star function, Greene's function and Katz's sum.

use super::report::{Check, Outcome, TheoremReport};
use super::sweep::{self, ParamSpace, SweepPlan};
use crate::finite_field::FqElem;
use crate::hypergeometric::{Evaluator, Relation};

// Direct enumeration of Katz's sum is only attempted up to this field size.
const VSUM_MAX_Q: u64 = 7;

/// The star function against normalized Greene functions, for orders 2F1 and
/// 3F2 and every argument. Parameter patterns without a known relation are
/// tallied as excluded.
pub fn verify_star_greene(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("star-greene", ev);
    let xs: Vec<FqElem> = ev.field().elements().collect();
    for n in 1..=2usize {
        let label = format!("star-greene-{n}");
        sweep::run(
            ev,
            &mut report,
            &ParamSpace::full(ev, 2 * n + 1),
            plan,
            &label,
            |t| {
                let (top, bottom) = t.split_at(n + 1);
                let relations = ev.relate_star_greene_multi(top, bottom, &xs);
                let mut branch = None;
                let checks = relations
                    .into_iter()
                    .zip(&xs)
                    .filter_map(|(rel, &x)| match rel {
                        Relation::Uncovered => None,
                        Relation::Checked { case, lhs, rhs } => {
                            branch = Some(case.label());
                            Some(Check::at("star against normalized Greene", x, lhs, rhs))
                        }
                    })
                    .collect();
                match branch {
                    Some(b) => Outcome::new(format!("n={n}, {b}"), checks),
                    None => Outcome::excluded(),
                }
            },
        );
    }
    report
}

/// The star function against Katz's sum at `1/x`, for orders 2F1 and 3F2,
/// every parameter choice and every nonzero argument.
pub fn verify_star_katz(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("star-katz", ev);
    let xs: Vec<FqElem> = ev.field().elements().skip(1).collect();
    for n in 1..=2usize {
        let label = format!("star-katz-{n}");
        sweep::run(
            ev,
            &mut report,
            &ParamSpace::full(ev, 2 * n + 1),
            plan,
            &label,
            |t| {
                let (top, bottom) = t.split_at(n + 1);
                let lhs = ev.f_star_multi(top, bottom, &xs);
                let rhs = ev
                    .star_via_katz_multi(top, bottom, &xs)
                    .expect("nonzero arguments");
                let checks = lhs
                    .into_iter()
                    .zip(rhs)
                    .zip(&xs)
                    .map(|((l, r), &x)| Check::at("star through Katz at 1/x", x, l, r))
                    .collect();
                Outcome::new(format!("n={n}"), checks)
            },
        );
    }
    report
}

/// Katz's sum from its character-sum form against direct enumeration of the
/// defining variety, for up to two top and two bottom parameters.
pub fn verify_katz_vsum(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let q = ev.field().order();
    if q > VSUM_MAX_Q {
        let reason = format!("direct enumeration limited to q ≤ {VSUM_MAX_Q}");
        return TheoremReport::skipped("katz-vsum", ev, reason);
    }
    let mut report = TheoremReport::new("katz-vsum", ev);
    let ts: Vec<FqElem> = ev.field().elements().skip(1).collect();
    for n in 0..=2usize {
        for m in 0..=2usize {
            let label = format!("katz-vsum-{n}-{m}");
            sweep::run(
                ev,
                &mut report,
                &ParamSpace::full(ev, n + m),
                plan,
                &label,
                |t| {
                    let (top, bottom) = t.split_at(n);
                    let fourier = ev
                        .f_katz_multi(top, bottom, &ts)
                        .expect("nonzero arguments");
                    let checks = fourier
                        .into_iter()
                        .zip(&ts)
                        .map(|(f, &x)| {
                            let direct = ev.katz_vsum(top, bottom, x).expect("nonzero argument");
                            Check::at("character-sum form against enumeration", x, f, direct)
                        })
                        .collect();
                    Outcome::new(format!("n={n}, m={m}"), checks)
                },
            );
        }
    }
    report
}
