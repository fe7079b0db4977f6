//! Well-poised 4F3 at -1 and 5F4 at 1, reduced to lower-order functions.

use super::report::{Check, Outcome, TheoremReport};
use super::summation::{even_field_reason, int, odd_field_only, sum_over};
use super::sweep::{self, ParamSpace, SweepPlan};
use crate::characters::MultChar;
use crate::cyclotomic::CycNum;
use crate::hypergeometric::Evaluator;

/// Right-hand side of the `A = ε`, `B = φ` evaluation of the well-poised 4F3.
fn remark_rhs(ev: &Evaluator, phi: MultChar, c: MultChar, d: MultChar) -> CycNum {
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    let one = ev.field().one();
    let eps = chars.trivial();
    let roots = eps.square_roots();
    let f32s = sum_over(ev, &roots, |r| ev.f_star(&[r * phi, c, d], &[r, phi], one));
    let inner = g.ratio(&[c * phi, d * phi], &[c, d]).scale(chars.sign(phi)) + int(ev, 1);
    let bracket = f32s + inner.scale(q - 1);
    let mut rhs = -(g.ratio(&[c * d], &[c, d]) * bracket);
    if (c * d).is_trivial() {
        let denom = g.inv_product(&[c, c, c.conj(), c.conj()]);
        rhs = rhs + denom.scale(q * (q - 1) * (1 + chars.sign(phi)));
    }
    rhs
}

/// The well-poised 4F3 at -1: its general form for square `A` with
/// `A, B ≠ ε` and `B^2 ≠ A`, the shorter form when also `CD ≠ A`, and the
/// separate evaluation for `A = ε`, `B = φ`.
pub fn verify_whipple_4f3(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    if let Some(skipped) = odd_field_only("whipple4", ev) {
        return skipped;
    }
    let mut report = TheoremReport::new("whipple4", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    let (one, minus_one) = (ev.field().one(), ev.field().minus_one());
    let phi = chars.phi().expect("odd q");
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 4),
        plan,
        "whipple4",
        |t| {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            let eps = chars.trivial();
            let lhs = || ev.f_star(&[a, b, c, d], &[a / b, a / c, a / d], minus_one);
            if !a.is_square() {
                return Outcome::new(
                    "A non-square",
                    vec![Check::new("vanishes for non-square A", lhs(), int(ev, 0))],
                );
            }
            if a == eps && b == phi {
                let rhs = remark_rhs(ev, b, c, d);
                return Outcome::new(
                    "A=ε, B=φ",
                    vec![Check::new("A=ε, B=φ evaluation", lhs(), rhs)],
                );
            }
            if a == eps || b == eps || b.pow(2) == a {
                return Outcome::excluded();
            }
            let lhs = lhs();
            let ab = a.conj();
            let f32s = sum_over(ev, &a.square_roots(), |r| {
                ev.f_star(&[r / b, c, d], &[r, a / b], one)
            });
            let main = g.ratio(&[ab, ab * c * d], &[ab * c, ab * d]) * f32s;
            if (ab * c * d).is_trivial() {
                let f21 = ev.f_star(&[a, b], &[a / b], minus_one);
                let delta = g
                    .inv_product(&[c, c.conj(), a / c, ab * c])
                    .scale(q * (q - 1))
                    * f21;
                let rhs = main + delta;
                Outcome::new("A square, CD=A", vec![Check::new("general form", lhs, rhs)])
            } else {
                Outcome::new(
                    "A square, CD≠A",
                    vec![
                        Check::new("general form", lhs.clone(), main.clone()),
                        Check::new("short form", lhs, main),
                    ],
                )
            }
        },
    );
    report
}

/// The `A = ε`, `B = φ` evaluation of the well-poised 4F3 at -1, over all `(C, D)`.
pub fn verify_remark_4f3(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    let Ok(phi) = ev.chars().phi() else {
        return TheoremReport::skipped("remark", ev, even_field_reason(ev));
    };
    let mut report = TheoremReport::new("remark", ev);
    let eps = ev.chars().trivial();
    let minus_one = ev.field().minus_one();
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 2),
        plan,
        "remark",
        |t| {
            let (c, d) = (t[0], t[1]);
            let lhs = ev.f_star(&[eps, phi, c, d], &[phi, c.conj(), d.conj()], minus_one);
            let branch = if (c * d).is_trivial() {
                "CD=ε"
            } else {
                "CD≠ε"
            };
            Outcome::new(
                branch,
                vec![Check::new(
                    "A=ε, B=φ evaluation",
                    lhs,
                    remark_rhs(ev, phi, c, d),
                )],
            )
        },
    );
    report
}

/// The well-poised 5F4 at 1: the general three-term form for square `A` with
/// `A, B ≠ ε`, `B^2 ≠ A`, `CD ≠ A`, `CE ≠ A`, and the two-term form when also
/// `DE ≠ A` and `CDE ≠ A`.
pub fn verify_whipple_5f4(ev: &Evaluator, plan: &SweepPlan) -> TheoremReport {
    if let Some(skipped) = odd_field_only("whipple5", ev) {
        return skipped;
    }
    let mut report = TheoremReport::new("whipple5", ev);
    let g = ev.gauss();
    let chars = ev.chars();
    let q = ev.q();
    let (one, minus_one) = (ev.field().one(), ev.field().minus_one());
    sweep::run(
        ev,
        &mut report,
        &ParamSpace::full(ev, 5),
        plan,
        "whipple5",
        |t| {
            let (a, b, c, d, e) = (t[0], t[1], t[2], t[3], t[4]);
            let eps = chars.trivial();
            let lhs = || ev.f_star(&[a, b, c, d, e], &[a / b, a / c, a / d, a / e], one);
            if !a.is_square() {
                return Outcome::new(
                    "A non-square",
                    vec![Check::new("vanishes for non-square A", lhs(), int(ev, 0))],
                );
            }
            if a == eps || b == eps || b.pow(2) == a || c * d == a || c * e == a {
                return Outcome::excluded();
            }
            let lhs = lhs();
            let ab = a.conj();
            let cde = c * d * e;
            let f43s = sum_over(ev, &a.square_roots(), |r| {
                ev.f_star(&[r / b, c, d, e], &[r, ab * cde, a / b], one)
            });
            let f21 = ev.f_star(&[a, b], &[a / b], minus_one);
            let second = g
                .ratio(
                    &[ab * d * e, ab * c * d, ab * c * e],
                    &[c, d, e, ab * c, ab * d, ab * e],
                )
                .scale(q)
                * &f21;

            let mut general = g
                .ratio(
                    &[ab, ab * d * e, ab * c * d, ab * c * e, a / cde],
                    &[ab * c, ab * d, ab * e],
                )
                .mul_ratio(chars.sign(a / cde), q)
                * &f43s
                + &second;
            if (ab * d * e).is_trivial() {
                let f32 = ev.f_star(&[a, b, c], &[a / b, a / c], one);
                general = general
                    + g.inv_product(&[d, e, e.conj(), d.conj()])
                        .scale(q * (q - 1))
                        * f32;
            }
            let mut checks = vec![Check::new("general form", lhs.clone(), general)];
            let branch = if d * e != a && cde != a {
                let short = g.ratio(
                    &[ab, ab * d * e, ab * c * d, ab * c * e],
                    &[ab * c, ab * d, ab * e, ab * cde],
                ) * f43s
                    + second;
                checks.push(Check::new("short form", lhs, short));
                "A square, both forms"
            } else {
                "A square, general form only"
            };
            Outcome::new(branch, checks)
        },
    );
    report
}
