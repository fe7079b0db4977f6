//! Structural invariants: orthogonality, Gauss and Jacobi sum identities,
//! and symmetries of the star function.

use super::report::{Check, Outcome, TheoremReport};
use super::summation::int;
use super::sweep::{self, ParamSpace, SweepPlan};
use crate::characters::MultChar;
use crate::cyclotomic::CycNum;
use crate::finite_field::FqElem;
use crate::hypergeometric::Evaluator;

fn pairs(ev: &Evaluator) -> impl Iterator<Item = (MultChar, MultChar)> + '_ {
    ev.chars()
        .all()
        .flat_map(move |a| ev.chars().all().map(move |b| (a, b)))
}

/// Both orthogonality relations: sums over elements and sums over characters.
pub fn verify_orthogonality(ev: &Evaluator) -> TheoremReport {
    let mut report = TheoremReport::new("orthogonality", ev);
    let chars = ev.chars();
    let field = ev.field();
    let m = field.unit_order() as i64;
    for chi in chars.all() {
        let sum = field
            .elements()
            .fold(CycNum::zero(ev.ring()), |acc, x| acc + chars.eval(chi, x));
        let expect = int(ev, if chi.is_trivial() { m } else { 0 });
        report.record(
            ev,
            &[chi],
            Outcome::new(
                "sum over elements",
                vec![Check::new("Σ_x χ(x)", sum, expect)],
            ),
        );
    }
    for x in field.elements() {
        let sum = chars
            .all()
            .fold(CycNum::zero(ev.ring()), |acc, chi| acc + chars.eval(chi, x));
        let expect = int(ev, if x == field.one() { m } else { 0 });
        report.record(
            ev,
            &[],
            Outcome::new(
                "sum over characters",
                vec![Check::at("Σ_χ χ(x)", x, sum, expect)],
            ),
        );
    }
    report
}

/// `g(χ) g(χ̄) = χ(-1) q` for `χ ≠ ε`, and `g(ε) = -1`.
pub fn verify_gauss_conj(ev: &Evaluator) -> TheoremReport {
    let mut report = TheoremReport::new("gauss-conj", ev);
    let g = ev.gauss();
    for chi in ev.chars().all() {
        let outcome = if chi.is_trivial() {
            Outcome::new(
                "ε",
                vec![Check::new(
                    "g(ε) = -1",
                    g.gauss_sum(chi).clone(),
                    int(ev, -1),
                )],
            )
        } else {
            let prod = g.gauss_sum(chi) * g.gauss_sum(chi.conj());
            let expect = int(ev, ev.chars().sign(chi) * ev.q());
            Outcome::new("χ≠ε", vec![Check::new("g(χ) g(χ̄) = χ(-1) q", prod, expect)])
        };
        report.record(ev, &[chi], outcome);
    }
    report
}

/// Jacobi sums by direct summation against their Gauss-sum expressions.
pub fn verify_jacobi_gauss(ev: &Evaluator) -> TheoremReport {
    let mut report = TheoremReport::new("jacobi-gauss", ev);
    let g = ev.gauss();
    let q = ev.q();
    for (a, b) in pairs(ev) {
        let j = g.jacobi_sum(a, b);
        let outcome = if a.is_trivial() && b.is_trivial() {
            Outcome::new(
                "both trivial",
                vec![Check::new("J(ε, ε) = q - 2", j, int(ev, q - 2))],
            )
        } else if (a * b).is_trivial() {
            let rhs = -(g.pair(a, b).mul_ratio(1, q));
            Outcome::new("χψ=ε", vec![Check::new("J = -g(χ)g(ψ)/q", j, rhs)])
        } else {
            Outcome::new(
                "χψ≠ε",
                vec![Check::new(
                    "J = g(χ)g(ψ)/g(χψ)",
                    j,
                    g.ratio(&[a, b], &[a * b]),
                )],
            )
        };
        report.record(ev, &[a, b], outcome);
    }
    report
}

/// `Σ_χ J(Aχ, Bχ̄) χ(-1) = 0` for all `A, B`.
pub fn verify_sum_jacobi(ev: &Evaluator) -> TheoremReport {
    let mut report = TheoremReport::new("sum-jacobi", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    for (a, b) in pairs(ev) {
        let sum = chars.all().fold(CycNum::zero(ev.ring()), |acc, chi| {
            acc + g.jacobi_sum(a * chi, b / chi).scale(chars.sign(chi))
        });
        report.record(
            ev,
            &[a, b],
            Outcome::new(
                "all",
                vec![Check::new("Σ_χ J(Aχ, Bχ̄) χ(-1) = 0", sum, int(ev, 0))],
            ),
        );
    }
    report
}

/// `(1/(q-1)) Σ_χ g(Aχ) g(Bχ̄) χ(-1)` is `(q-1) A(-1)` when `AB = ε`, else 0.
pub fn verify_gauss_pair_sum(ev: &Evaluator) -> TheoremReport {
    let mut report = TheoremReport::new("gauss-pair-sum", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    for (a, b) in pairs(ev) {
        let sum = chars.all().fold(CycNum::zero(ev.ring()), |acc, chi| {
            acc + g.pair(a * chi, b / chi).scale(chars.sign(chi))
        });
        let lhs = sum.mul_ratio(1, q - 1);
        let (branch, rhs) = if (a * b).is_trivial() {
            ("AB=ε", int(ev, (q - 1) * chars.sign(a)))
        } else {
            ("AB≠ε", int(ev, 0))
        };
        report.record(
            ev,
            &[a, b],
            Outcome::new(branch, vec![Check::new("Gauss pair average", lhs, rhs)]),
        );
    }
    report
}

/// The closed-form inverse Gauss sum against generic cyclotomic inversion.
pub fn verify_gauss_inverse(ev: &Evaluator) -> TheoremReport {
    let mut report = TheoremReport::new("gauss-inverse", ev);
    let g = ev.gauss();
    for chi in ev.chars().all() {
        let generic = g.gauss_sum(chi).inverse().expect("Gauss sums are nonzero");
        let check = Check::new(
            "closed form = generic inverse",
            g.gauss_inv(chi).clone(),
            generic,
        );
        report.record(ev, &[chi], Outcome::new("all", vec![check]));
    }
    report
}

/// The star function recomputed from `θ_c(x) = θ(cx)` for every `c ≠ 0, 1`,
/// for 2F1 and 3F2 parameters and every argument.
pub fn verify_additive_independence(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("additive-independence", ev);
    let field = ev.field();
    let xs: Vec<FqElem> = field.elements().collect();
    let twisted: Vec<Evaluator> = field
        .elements()
        .skip(2)
        .map(|c| ev.with_additive_twist(c))
        .collect();
    for n in 1..=2usize {
        let label = format!("additive-independence-{n}");
        sweep::run(
            ev,
            &mut report,
            &ParamSpace::full(ev, 2 * n + 1),
            plan,
            &label,
            |t| {
                let (top, bottom) = t.split_at(n + 1);
                let base = ev.f_star_multi(top, bottom, &xs);
                let mut checks = Vec::new();
                for tw in &twisted {
                    let values = tw.f_star_multi(top, bottom, &xs);
                    for ((b, v), &x) in base.iter().zip(values).zip(&xs) {
                        checks.push(Check::at("same value under θ(cx)", x, v, b.clone()));
                    }
                }
                Outcome::new(format!("n={n}"), checks)
            },
        );
    }
    report
}

/// All permutations of `items`, the identity first.
fn permutations(items: &[MultChar]) -> Vec<Vec<MultChar>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn is_sorted(chars: &[MultChar]) -> bool {
    chars.windows(2).all(|w| w[0].index() <= w[1].index())
}

fn sorted(chars: &[MultChar]) -> Vec<MultChar> {
    let mut v = chars.to_vec();
    v.sort_by_key(|c| c.index());
    v
}

/// The star function under every permutation of the top row and every
/// permutation of the bottom row, for 2F1 and 3F2 parameters.
///
/// When a sweep covers the whole space, a tuple whose rows are not both
/// sorted is compared with its sorted reordering only; the sorted tuple is
/// compared with all of its reorderings, so every pair is still covered.
pub fn verify_permutation(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("permutation", ev);
    let xs: Vec<FqElem> = ev.field().elements().collect();
    for n in 1..=2usize {
        let label = format!("permutation-{n}");
        let space = ParamSpace::full(ev, 2 * n + 1);
        let exhaustive = space.covers_all(plan);
        sweep::run(ev, &mut report, &space, plan, &label, |t| {
            let (top, bottom) = t.split_at(n + 1);
            let base = ev.f_star_multi(top, bottom, &xs);
            let mut checks = Vec::new();
            let mut compare = |pt: &[MultChar], pb: &[MultChar]| {
                let values = ev.f_star_multi(pt, pb, &xs);
                for ((b, v), &x) in base.iter().zip(values).zip(&xs) {
                    checks.push(Check::at("invariant under permutation", x, v, b.clone()));
                }
            };
            if exhaustive && !(is_sorted(top) && is_sorted(bottom)) {
                compare(&sorted(top), &sorted(bottom));
                return Outcome::new(format!("n={n}, against sorted order"), checks);
            }
            for pt in permutations(top) {
                for pb in permutations(bottom) {
                    if pt == top && pb == bottom {
                        continue;
                    }
                    compare(&pt, &pb);
                }
            }
            Outcome::new(format!("n={n}"), checks)
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::evaluator_for;

    #[test]
    fn permutation_helper() {
        let c = |j| MultChar::new(j, 6);
        let p = permutations(&[c(1), c(2), c(3)]);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![c(1), c(2), c(3)]);
    }

    #[test]
    fn invariants_q7() {
        let ev = evaluator_for(7).unwrap();
        for r in [
            verify_orthogonality(&ev),
            verify_gauss_conj(&ev),
            verify_jacobi_gauss(&ev),
            verify_sum_jacobi(&ev),
            verify_gauss_pair_sum(&ev),
            verify_gauss_inverse(&ev),
        ] {
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
