//! Closed-form evaluations: the four-Gauss-sum identity and the analogues of
//! the Gauss, Kummer and Dixon summations, in both star and Greene form.

use super::report::{Check, Outcome, TheoremReport};
use super::sweep::{self, ParamSpace, SweepPlan};
use crate::characters::MultChar;
use crate::cyclotomic::CycNum;
use crate::hypergeometric::Evaluator;

pub(crate) fn int(ev: &Evaluator, v: i64) -> CycNum {
    CycNum::from_int(ev.ring(), v)
}

pub(crate) fn sum_over<F>(ev: &Evaluator, chars: &[MultChar], f: F) -> CycNum
where
    F: Fn(MultChar) -> CycNum,
{
    chars
        .iter()
        .fold(CycNum::zero(ev.ring()), |acc, &r| acc + f(r))
}

pub(crate) fn even_field_reason(ev: &Evaluator) -> String {
    format!(
        "EvenCharacteristic: q = {} is even; the statement needs the quadratic character",
        ev.field().order()
    )
}

/// Skips statements whose closed forms sum over the two square roots `R`, `Rφ`.
pub(crate) fn odd_field_only(id: &str, ev: &Evaluator) -> Option<TheoremReport> {
    ev.chars()
        .phi()
        .is_err()
        .then(|| TheoremReport::skipped(id, ev, even_field_reason(ev)))
}

pub fn verify_four_gauss(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("hp", ev);
    let g = ev.gauss();
    sweep::run(ev, &mut report, &ParamSpace::full(ev, 4), plan, "hp", |t| {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let branch = if (a * b * c * d).is_trivial() {
            "ABCD=ε"
        } else {
            "ABCD≠ε"
        };
        Outcome::new(
            branch,
            vec![Check::new(
                "four-Gauss-sum evaluation",
                g.four_gauss_lhs(a, b, c, d),
                g.four_gauss_rhs(a, b, c, d),
            )],
        )
    });
    report
}

/// The star 2F1 at 1 for `AB ≠ C`, and the raw Gauss-sum average it generalizes.
pub fn verify_gauss_analogue(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("gauss", ev);
    let g = ev.gauss();
    let one = ev.field().one();
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 3),
        plan,
        "gauss",
        |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            if a * b == c {
                return Outcome::excluded();
            }
            let cb = c.conj();
            let rhs = g.ratio(&[a * cb, b * cb], &[cb, a * b * cb]);
            let lhs = ev.f_star(&[a, b], &[c], one);
            let raw = g.gauss_average(a, b, c);
            Outcome::new(
                "AB≠C",
                vec![
                    Check::new("2F1(A,B;C|1) closed form", lhs, rhs.clone()),
                    Check::new("Gauss-sum average closed form", raw, rhs),
                ],
            )
        },
    );
    report
}

/// The well-poised 2F1 at -1, in the general form and, for `A ≠ ε`, the
/// form with `g(Ā)/g(R̄)` factors.
pub fn verify_kummer(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    if let Some(skipped) = odd_field_only("kummer", ev) {
        return skipped;
    }
    let mut report = TheoremReport::new("kummer", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let minus_one = ev.field().minus_one();
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 2),
        plan,
        "kummer",
        |t| {
            let (a, b) = (t[0], t[1]);
            let ab = a.conj();
            let lhs = ev.f_star(&[a, b], &[a / b], minus_one);
            if !a.is_square() {
                return Outcome::new(
                    "A non-square",
                    vec![Check::new("vanishes for non-square A", lhs, int(ev, 0))],
                );
            }
            let roots = a.square_roots();
            let general = sum_over(ev, &roots, |r| {
                g.ratio(&[r, r.conj() * b], &[a, ab * b])
                    .scale(chars.sign(r))
            });
            let mut checks = vec![Check::new("sum over square roots", lhs.clone(), general)];
            let branch = if a.is_trivial() {
                "A square, A=ε"
            } else {
                let restricted = sum_over(ev, &roots, |r| {
                    g.ratio(&[ab, r.conj() * b], &[r.conj(), ab * b])
                });
                checks.push(Check::new(
                    "sum over square roots, A≠ε form",
                    lhs,
                    restricted,
                ));
                "A square, A≠ε"
            };
            Outcome::new(branch, checks)
        },
    );
    report
}

/// Branches of the well-poised 3F2 case table, in the order they are tried.
pub const DIXON_BRANCHES: [&str; 6] = [
    "A non-square",
    "sum over roots",
    "-q+3",
    "-q^2+2q+1",
    "-q^3+q^2+q+1",
    "(-q^2+2q+1)/q",
];

/// The well-poised 3F2 at 1 against its six-case table, plus the restricted
/// form for `A ≠ ε`, `(BC)^2 ≠ A`.
pub fn verify_dixon(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let Ok(phi) = ev.chars().phi() else {
        return TheoremReport::skipped("dixon", ev, even_field_reason(ev));
    };
    let mut report = TheoremReport::new("dixon", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    let one = ev.field().one();
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 3),
        plan,
        "dixon",
        |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let eps = chars.trivial();
            let lhs = ev.f_star(&[a, b, c], &[a / b, a / c], one);
            let bc = b * c;
            let bc2 = bc.pow(2);
            let ab = a.conj();
            let roots = a.square_roots();

            let case = if !a.is_square() {
                Some(0)
            } else if bc2 != a || (a != bc && b != eps && c != eps) {
                Some(1)
            } else if (a != bc && a != eps && (b == eps || c == eps))
                || (a == eps && c == b.conj() && b != eps && b != phi)
            {
                Some(2)
            } else if a == eps && bc == phi && (b == eps || b == phi) {
                Some(3)
            } else if a == eps && b == eps && c == eps {
                Some(4)
            } else if a == eps && b == phi && c == phi {
                Some(5)
            } else {
                None
            };
            let Some(case) = case else {
                return Outcome::new("unclassified", vec![Check::unmatched("case table", lhs)]);
            };
            let rhs = match case {
                0 => int(ev, 0),
                1 => sum_over(ev, &roots, |r| {
                    g.ratio(
                        &[ab * bc, r.conj() * b, r.conj() * c, r, r / bc],
                        &[ab * b, ab * c, a],
                    )
                })
                .mul_ratio(chars.sign(bc), q),
                2 => int(ev, 3 - q),
                3 => int(ev, -q * q + 2 * q + 1),
                4 => int(ev, -q * q * q + q * q + q + 1),
                _ => CycNum::from_ratio(ev.ring(), -q * q + 2 * q + 1, q),
            };
            let mut checks = vec![Check::new("case table", lhs.clone(), rhs)];
            if a != eps && bc2 != a {
                let restricted = if a.is_square() {
                    sum_over(ev, &roots, |r| {
                        g.ratio(
                            &[ab, r.conj() * b, r.conj() * c, ab * bc],
                            &[r.conj(), ab * b, ab * c, r.conj() * bc],
                        )
                    })
                } else {
                    int(ev, 0)
                };
                checks.push(Check::new("A≠ε, (BC)^2≠A form", lhs, restricted));
            }
            Outcome::new(DIXON_BRANCHES[case], checks)
        },
    );
    report
}

/// Greene's 2F1 at 1 under `A ≠ ε`, `B ≠ C`, `AB ≠ C`.
pub fn verify_greene_gauss(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let mut report = TheoremReport::new("greene-gauss", ev);
    let g = ev.gauss();
    let one = ev.field().one();
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 3),
        plan,
        "greene-gauss",
        |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            if a.is_trivial() || b == c || a * b == c {
                return Outcome::excluded();
            }
            let cb = c.conj();
            let rhs = g.ratio(&[a * cb, b * cb], &[cb, a * b * cb]);
            let lhs = match ev.greene_binom_inv(b, c) {
                Some(inv) => inv * ev.f_greene(&[a, b], &[c], one),
                None => {
                    return Outcome::new(
                        "binomial vanishes",
                        vec![Check::unmatched("normalized 2F1", rhs)],
                    )
                }
            };
            Outcome::new(
                "admissible",
                vec![Check::new("normalized Greene 2F1 at 1", lhs, rhs)],
            )
        },
    );
    report
}

/// Greene's well-poised 3F2 at 1 under `A, B, C ≠ ε`, `BC ≠ A`, `(BC)^2 ≠ A`.
pub fn verify_greene_437(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    if let Some(skipped) = odd_field_only("greene-437", ev) {
        return skipped;
    }
    let mut report = TheoremReport::new("greene-437", ev);
    let g = ev.gauss();
    let one = ev.field().one();
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 3),
        plan,
        "greene-437",
        |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let bc = b * c;
            if a.is_trivial() || b.is_trivial() || c.is_trivial() || bc == a || bc.pow(2) == a {
                return Outcome::excluded();
            }
            let ab = a.conj();
            let greene = ev.f_greene(&[c, b, a], &[a / c, a / b], one);
            let (Some(i1), Some(i2)) =
                (ev.greene_binom_inv(b, a / c), ev.greene_binom_inv(a, a / b))
            else {
                return Outcome::new(
                    "binomial vanishes",
                    vec![Check::unmatched("normalized 3F2", greene)],
                );
            };
            let lhs = greene * i1 * i2;
            let (branch, rhs) = if a.is_square() {
                let rhs = sum_over(ev, &a.square_roots(), |r| {
                    g.ratio(
                        &[ab, r.conj() * b, r.conj() * c, ab * bc],
                        &[r.conj(), ab * b, ab * c, r.conj() * bc],
                    )
                });
                ("A square", rhs)
            } else {
                ("A non-square", int(ev, 0))
            };
            Outcome::new(
                branch,
                vec![Check::new("normalized Greene 3F2 at 1", lhs, rhs)],
            )
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::evaluator_for;

    #[test]
    fn dixon_constant_branches_q5() {
        let ev = evaluator_for(5).unwrap();
        let one = ev.field().one();
        let e = ev.chars().trivial();
        let phi = ev.chars().phi().unwrap();
        assert_eq!(ev.f_star(&[e, e, e], &[e, e], one), int(&ev, -94));
        assert_eq!(
            ev.f_star(&[e, phi, phi], &[phi, phi], one),
            CycNum::from_ratio(ev.ring(), -14, 5)
        );
    }

    #[test]
    fn kummer_non_square_vanishes_q7() {
        let ev = evaluator_for(7).unwrap();
        let a = ev.chars().char(3);
        for b in ev.chars().all() {
            assert!(ev
                .f_star(&[a, b], &[a / b], ev.field().minus_one())
                .is_zero());
        }
    }

    #[test]
    fn small_fields_pass() {
        for q in [3u64, 5, 7] {
            let ev = evaluator_for(q).unwrap();
            for r in [
                verify_four_gauss(&ev, &SweepPlan::Exhaustive),
                verify_gauss_analogue(&ev, &SweepPlan::Exhaustive),
                verify_kummer(&ev, &SweepPlan::Exhaustive),
                verify_dixon(&ev, &SweepPlan::Exhaustive),
                verify_greene_gauss(&ev, &SweepPlan::Exhaustive),
                verify_greene_437(&ev, &SweepPlan::Exhaustive),
            ] {
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn gauss_counts_q5() {
        let ev = evaluator_for(5).unwrap();
        let r = verify_gauss_analogue(&ev, &SweepPlan::Exhaustive);
        assert_eq!(r.tuples_tested, 64);
        assert_eq!(r.branch("excluded"), 16);
        assert_eq!(r.branch("AB≠C"), 48);
    }
}
