//! The order-lowering recursion for well-poised functions, its Katz-sum
//! form, and the vanishing of well-poised functions with non-square `A_0`.

use super::report::{Check, Outcome, TheoremReport};
use super::summation::{even_field_reason, int};
use super::sweep::{self, ParamSpace, SweepPlan};
use crate::characters::MultChar;
use crate::cyclotomic::CycNum;
use crate::finite_field::FqElem;
use crate::hypergeometric::{Evaluator, HypSpec};

const EXTRA_ARGS: usize = 3;

/// Splits a well-poised top row into the order-lowered rows the recursion uses:
/// `(A_0, ..., A_{n-2}, ψ̄ ; A_0Ā_1, ..., A_0Ā_{n-2}, A_0ψ)` for the given `ψ`.
fn lowered(top: &[MultChar], psi: MultChar) -> (Vec<MultChar>, Vec<MultChar>) {
    let n = top.len() - 1;
    let mut t: Vec<MultChar> = top[..n - 1].to_vec();
    t.push(psi.conj());
    let mut b = HypSpec::well_poised_bottom(&top[..n - 1]);
    b.push(top[0] * psi);
    (t, b)
}

fn negated(ev: &Evaluator, xs: &[FqElem]) -> Vec<FqElem> {
    xs.iter().map(|&x| ev.field().neg(x)).collect()
}

fn zeros(ev: &Evaluator, len: usize) -> Vec<CycNum> {
    vec![CycNum::zero(ev.ring()); len]
}

fn add_scaled(acc: &mut [CycNum], values: Vec<CycNum>, scale: &CycNum) {
    for (a, v) in acc.iter_mut().zip(values) {
        if !v.is_zero() {
            *a = &*a + &(v * scale);
        }
    }
}

/// The recursion relating a well-poised `(n+1)F(n)` at `x` to a `ψ`-sum of
/// `nF(n-1)` at `-x` plus a correction by `(n-1)F(n-2)` at `x`, for
/// `2 ≤ n ≤ n_max`. Arguments are `±1` and three seeded random elements.
pub fn verify_recursion(ev: &Evaluator, n_max: usize, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("recursion", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    let xs = sweep::sample_args(ev, plan, "recursion-args", EXTRA_ARGS);
    let neg_xs = negated(ev, &xs);
    for n in 2..=n_max {
        let label = format!("recursion-{n}");
        sweep::run(
            ev,
            &mut report,
            &ParamSpace::full(ev, n + 1),
            plan,
            &label,
            |top| {
                let bottom = HypSpec::well_poised_bottom(top);
                let lhs = ev.f_star_multi(top, &bottom, &xs);
                let (a0, an1, an) = (top[0], top[n - 1], top[n]);
                let ab = a0.conj();
                let k = ab * an1 * an;
                let denom = [an1, an, ab * an1, ab * an];

                let mut sums = zeros(ev, xs.len());
                for psi in chars.all() {
                    let kernel = g.product(&[an1 * psi, an * psi, psi.conj(), (a0 * psi).conj()]);
                    let (t, b) = lowered(top, psi);
                    add_scaled(&mut sums, ev.f_star_multi(&t, &b, &neg_xs), &kernel);
                }
                let coef = g.ratio(&[k], &denom).mul_ratio(1, q - 1);
                let correction = k.is_trivial().then(|| {
                    let lower_top = &top[..n - 1];
                    let lower =
                        ev.f_star_multi(lower_top, &HypSpec::well_poised_bottom(lower_top), &xs);
                    let c = g
                        .inv_product(&denom)
                        .scale(q * (q - 1) * chars.sign(an * an1));
                    (c, lower)
                });
                let checks = xs
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let mut rhs = &coef * &sums[i];
                        if let Some((c, lower)) = &correction {
                            rhs = rhs + c * &lower[i];
                        }
                        Check::at("order-lowering recursion", x, lhs[i].clone(), rhs)
                    })
                    .collect();
                let branch = if k.is_trivial() {
                    format!("n={n}, Ā0An-1An=ε")
                } else {
                    format!("n={n}")
                };
                Outcome::new(branch, checks)
            },
        );
    }
    report
}

/// The recursion restated for Katz's sums `K(A_0..A_n; ε, A_0Ā_1..A_0Ā_n | x)`.
pub fn verify_katz_recursion(ev: &Evaluator, n_max: usize, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("katz-recursion", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    let eps = chars.trivial();
    let xs = sweep::sample_args(ev, plan, "katz-recursion-args", EXTRA_ARGS);
    let neg_xs = negated(ev, &xs);
    let katz_bottom = |top: &[MultChar]| -> Vec<MultChar> {
        let mut b = vec![eps];
        b.extend(HypSpec::well_poised_bottom(top));
        b
    };
    for n in 2..=n_max {
        let label = format!("katz-recursion-{n}");
        sweep::run(
            ev,
            &mut report,
            &ParamSpace::full(ev, n + 1),
            plan,
            &label,
            |top| {
                let lhs = ev
                    .f_katz_multi(top, &katz_bottom(top), &xs)
                    .expect("nonzero arguments");
                let (a0, an1, an) = (top[0], top[n - 1], top[n]);
                let k = a0.conj() * an1 * an;

                let mut sums = zeros(ev, xs.len());
                for psi in chars.all() {
                    let kernel = g.pair(an1 * psi, an * psi).scale(chars.sign(psi));
                    let (t, mut b) = lowered(top, psi);
                    b.insert(0, eps);
                    add_scaled(
                        &mut sums,
                        ev.f_katz_multi(&t, &b, &neg_xs).expect("nonzero"),
                        &kernel,
                    );
                }
                let coef = g.gauss_sum(k).mul_ratio(chars.sign(k), q - 1);
                let lower = k.is_trivial().then(|| {
                    let lower_top = &top[..n - 1];
                    ev.f_katz_multi(lower_top, &katz_bottom(lower_top), &xs)
                        .expect("nonzero")
                });
                let checks = xs
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let mut rhs = &coef * &sums[i];
                        if let Some(lower) = &lower {
                            rhs = rhs + lower[i].scale(q * (q - 1));
                        }
                        Check::at(
                            "order-lowering recursion, Katz form",
                            x,
                            lhs[i].clone(),
                            rhs,
                        )
                    })
                    .collect();
                let branch = if k.is_trivial() {
                    format!("n={n}, Ā0An-1An=ε")
                } else {
                    format!("n={n}")
                };
                Outcome::new(branch, checks)
            },
        );
    }
    report
}

/// Well-poised `(n+1)F(n)` at `(-1)^n` vanishes when `A_0` is not a square,
/// for `0 ≤ n ≤ n_max`.
pub fn verify_vanishing(ev: &Evaluator, n_max: usize, plan: &SweepPlan) -> TheoremReport {
    if ev.chars().phi().is_err() {
        return TheoremReport::skipped("vanishing", ev, even_field_reason(ev));
    }
    let mut report = TheoremReport::new("vanishing", ev);
    let all: Vec<MultChar> = ev.chars().all().collect();
    let non_squares: Vec<MultChar> = all.iter().copied().filter(|c| !c.is_square()).collect();
    let field = ev.field();
    for n in 0..=n_max {
        let x = if n % 2 == 0 {
            field.one()
        } else {
            field.minus_one()
        };
        let mut axes = vec![non_squares.clone()];
        axes.extend(std::iter::repeat_n(all.clone(), n));
        let label = format!("vanishing-{n}");
        sweep::run(
            ev,
            &mut report,
            &ParamSpace::from_axes(axes),
            plan,
            &label,
            |top| {
                let value = ev.f_star(top, &HypSpec::well_poised_bottom(top), x);
                Outcome::new(
                    format!("n={n}"),
                    vec![Check::at("vanishes", x, value, int(ev, 0))],
                )
            },
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::evaluator_for;

    #[test]
    fn recursion_q5_exhaustive_n2() {
        let ev = evaluator_for(5).unwrap();
        let r = verify_recursion(&ev, 2, &SweepPlan::Exhaustive);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.tuples_tested, 64);
        assert!(r.branch("n=2, Ā0An-1An=ε") > 0);
        let k = verify_katz_recursion(&ev, 2, &SweepPlan::Exhaustive);
        assert!(k.passed(), "{}", k.to_text());
    }

    #[test]
    fn first_order_vanishing_q7() {
        let ev = evaluator_for(7).unwrap();
        let a = ev.chars().char(1);
        assert!(ev.f_star(&[a], &[], ev.field().one()).is_zero());
        let r = verify_vanishing(&ev, 2, &SweepPlan::Exhaustive);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.tuples_tested, 3 + 18 + 108);
    }
}
