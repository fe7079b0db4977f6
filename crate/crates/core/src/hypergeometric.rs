//! The three hypergeometric functions over `F_q` and the relations between them.
//!
//! * `Star`: the Gauss-sum normalized function
//!   `(1/(q-1)) Σ_χ Π_i g(A_iχ)/g(A_i) Π_j g(conj(B_jχ))/g(conj B_j) g(χ̄) χ(-1)^{n+1} χ(x)`.
//! * `Greene`: `q/(q-1) Σ_χ binom(A_0χ, χ) Π_i binom(A_iχ, B_iχ) χ(x)`.
//! * `Katz`: `(1/(q-1)) Σ_χ χ̄(t) Π_i g(A_iχ) Π_j g(conj(B_jχ)) B_jχ(-1)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::characters::{CharError, CharacterTable, MultChar};
use crate::cyclotomic::{CycField, CycNum, RotatingSum};
use crate::finite_field::{FieldCtx, FqElem};
use crate::gauss::GaussTable;

const BINOM_CACHE_LIMIT: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypError {
    #[error("expected {expected} bottom parameters for {top} top parameters, got {bottom}")]
    Arity {
        top: usize,
        bottom: usize,
        expected: usize,
    },
    #[error("the Katz sum is only defined for a nonzero argument")]
    ZeroArgument,
    #[error("character {0} does not belong to this field")]
    ForeignCharacter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Star,
    Greene,
    Katz,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Star => "star",
            Variant::Greene => "greene",
            Variant::Katz => "katz",
        })
    }
}

/// One hypergeometric function instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypSpec {
    pub variant: Variant,
    pub top: Vec<MultChar>,
    pub bottom: Vec<MultChar>,
    pub arg: FqElem,
}

impl HypSpec {
    pub fn new(variant: Variant, top: Vec<MultChar>, bottom: Vec<MultChar>, arg: FqElem) -> Self {
        HypSpec {
            variant,
            top,
            bottom,
            arg,
        }
    }

    /// The well-poised bottom row `A_0 Ā_1, ..., A_0 Ā_n` for a top row.
    pub fn well_poised_bottom(top: &[MultChar]) -> Vec<MultChar> {
        top.iter().skip(1).map(|&a| top[0] / a).collect()
    }

    /// True when the argument is `±1` and `B_j = A_0 Ā_j` for every `j`.
    pub fn is_well_poised(&self, field: &FieldCtx) -> bool {
        let unit = self.arg == field.one() || self.arg == field.minus_one();
        unit && !self.top.is_empty()
            && self.bottom.len() + 1 == self.top.len()
            && self.bottom == Self::well_poised_bottom(&self.top)
    }
}

/// Outcome of comparing the star function with Greene's function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// The parameters satisfy neither hypothesis under which a relation is known.
    Uncovered,
    Checked {
        case: RelationCase,
        lhs: CycNum,
        rhs: CycNum,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationCase {
    /// `A_0 ≠ ε` and `A_i ≠ B_i` for every `i`.
    Generic,
    /// `A_0 ≠ ε`, `A_i ≠ B_i` for `i < n` and `A_n = B_n ≠ ε`.
    LastPairEqual,
}

impl RelationCase {
    pub fn label(self) -> &'static str {
        match self {
            RelationCase::Generic => "generic",
            RelationCase::LastPairEqual => "last-pair-equal",
        }
    }
}

impl Relation {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Relation::Uncovered => None,
            Relation::Checked { lhs, rhs, .. } => Some(lhs == rhs),
        }
    }
}

/// Evaluates hypergeometric functions over one field from cached Gauss sums.
pub struct Evaluator {
    gauss: GaussTable,
    binom_invs: Vec<OnceLock<Option<CycNum>>>,
}

impl Evaluator {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self, CharError> {
        Ok(Self::from_table(GaussTable::new(field)?))
    }

    pub fn from_table(gauss: GaussTable) -> Self {
        let m = gauss.chars().group_order();
        let cached = if m <= BINOM_CACHE_LIMIT {
            (m * m) as usize
        } else {
            0
        };
        Evaluator {
            binom_invs: (0..cached).map(|_| OnceLock::new()).collect(),
            gauss,
        }
    }

    /// An evaluator built on the additive character `θ_c(x) = θ(cx)`.
    pub fn with_additive_twist(&self, c: FqElem) -> Self {
        Self::from_table(self.gauss.with_additive_twist(c))
    }

    pub fn gauss(&self) -> &GaussTable {
        &self.gauss
    }

    pub fn chars(&self) -> &CharacterTable {
        self.gauss.chars()
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.gauss.field()
    }

    pub fn ring(&self) -> &Arc<CycField> {
        self.gauss.ring()
    }

    pub fn q(&self) -> i64 {
        self.gauss.q()
    }

    fn check_chars(&self, chars: &[MultChar]) -> Result<(), HypError> {
        let m = self.chars().group_order();
        match chars.iter().find(|c| c.group_order() != m) {
            Some(c) => Err(HypError::ForeignCharacter(format!(
                "{c} of order {}",
                c.group_order()
            ))),
            None => Ok(()),
        }
    }

    /// Dispatches on the variant, validating arity and argument.
    pub fn evaluate(&self, spec: &HypSpec) -> Result<CycNum, HypError> {
        self.check_chars(&spec.top)?;
        self.check_chars(&spec.bottom)?;
        match spec.variant {
            Variant::Star | Variant::Greene => {
                if spec.top.is_empty() || spec.top.len() != spec.bottom.len() + 1 {
                    return Err(HypError::Arity {
                        top: spec.top.len(),
                        bottom: spec.bottom.len(),
                        expected: spec.top.len().saturating_sub(1),
                    });
                }
                Ok(if spec.variant == Variant::Star {
                    self.f_star(&spec.top, &spec.bottom, spec.arg)
                } else {
                    self.f_greene(&spec.top, &spec.bottom, spec.arg)
                })
            }
            Variant::Katz => self.f_katz(&spec.top, &spec.bottom, spec.arg),
        }
    }

    /// Exponent of `ζ_n` for `χ_j(x)`, given `a = log_g x`.
    fn char_exponent(&self, j: u64, a: u64) -> i64 {
        let m = self.chars().group_order();
        ((j * a % m) * self.chars().mult_step()) as i64
    }

    /// `Σ_j terms[j] χ_j(x)` for each `x`, sharing the per-character terms.
    fn fourier_sums(&self, terms: &[CycNum], xs: &[FqElem]) -> Vec<CycNum> {
        xs.iter()
            .map(|&x| {
                if x.is_zero() {
                    return CycNum::zero(self.ring());
                }
                let a = self.field().dlog_unchecked(x);
                let mut acc = RotatingSum::new(self.ring());
                for (j, t) in terms.iter().enumerate() {
                    acc.add_rotated(t, self.char_exponent(j as u64, a));
                }
                acc.finish()
            })
            .collect()
    }

    fn star_terms(&self, top: &[MultChar], bottom: &[MultChar]) -> Vec<CycNum> {
        assert_eq!(
            top.len(),
            bottom.len() + 1,
            "star function needs n+1 top and n bottom parameters"
        );
        let odd = top.len() % 2 == 1;
        let mut factors = Vec::with_capacity(top.len() + bottom.len() + 1);
        self.chars()
            .all()
            .map(|chi| {
                factors.clear();
                factors.extend(top.iter().map(|&a| a * chi));
                factors.extend(bottom.iter().map(|&b| (b * chi).conj()));
                factors.push(chi.conj());
                let t = self.gauss.product(&factors);
                if odd && self.chars().sign(chi) < 0 {
                    -t
                } else {
                    t
                }
            })
            .collect()
    }

    fn star_norm(&self, top: &[MultChar], bottom: &[MultChar]) -> CycNum {
        let mut all: Vec<MultChar> = top.to_vec();
        all.extend(bottom.iter().map(|b| b.conj()));
        self.gauss.inv_product(&all).mul_ratio(1, self.q() - 1)
    }

    /// The star function at `x`.
    pub fn f_star(&self, top: &[MultChar], bottom: &[MultChar], x: FqElem) -> CycNum {
        self.f_star_multi(top, bottom, &[x])
            .pop()
            .expect("one value")
    }

    /// The star function at several arguments with the same parameters.
    pub fn f_star_multi(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        xs: &[FqElem],
    ) -> Vec<CycNum> {
        let terms = self.star_terms(top, bottom);
        let norm = self.star_norm(top, bottom);
        self.fourier_sums(&terms, xs)
            .into_iter()
            .map(|s| if s.is_zero() { s } else { s * &norm })
            .collect()
    }

    /// Greene's binomial `B(-1)/q · J(A, B̄)`.
    pub fn greene_binom(&self, a: MultChar, b: MultChar) -> CycNum {
        self.gauss
            .jacobi_sum(a, b.conj())
            .mul_ratio(self.chars().sign(b), self.q())
    }

    /// `binom(A, B)^{-1}` by generic cyclotomic inversion; `None` if it vanishes.
    pub fn greene_binom_inv(&self, a: MultChar, b: MultChar) -> Option<CycNum> {
        let compute = || self.greene_binom(a, b).inverse().ok();
        if self.binom_invs.is_empty() {
            return compute();
        }
        let m = self.chars().group_order();
        self.binom_invs[(a.index() * m + b.index()) as usize]
            .get_or_init(compute)
            .clone()
    }

    /// Greene's function at `x`.
    pub fn f_greene(&self, top: &[MultChar], bottom: &[MultChar], x: FqElem) -> CycNum {
        self.f_greene_multi(top, bottom, &[x])
            .pop()
            .expect("one value")
    }

    /// Greene's function at several arguments with the same parameters.
    pub fn f_greene_multi(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        xs: &[FqElem],
    ) -> Vec<CycNum> {
        assert_eq!(
            top.len(),
            bottom.len() + 1,
            "Greene's function needs n+1 top and n bottom parameters"
        );
        // binom(A, B) = B(-1) J(A, B̄) / q; the q's are divided out once at the end
        let terms: Vec<CycNum> = self
            .chars()
            .all()
            .map(|chi| {
                let mut sign = self.chars().sign(chi);
                let mut t = self.gauss.jacobi_sum(top[0] * chi, chi.conj());
                for (&ai, &bi) in top[1..].iter().zip(bottom) {
                    if t.is_zero() {
                        break;
                    }
                    sign *= self.chars().sign(bi * chi);
                    t = t * self.gauss.jacobi_sum(ai * chi, (bi * chi).conj());
                }
                if sign < 0 {
                    -t
                } else {
                    t
                }
            })
            .collect();
        let q = self.q();
        let qpow = (0..bottom.len()).try_fold(1i64, |acc, _| acc.checked_mul(q));
        self.fourier_sums(&terms, xs)
            .into_iter()
            .map(|s| match qpow {
                Some(qn) => s.mul_ratio(1, qn * (q - 1)),
                None => (0..bottom.len()).fold(s.mul_ratio(1, q - 1), |acc, _| acc.mul_ratio(1, q)),
            })
            .collect()
    }

    fn katz_terms(&self, top: &[MultChar], bottom: &[MultChar]) -> Vec<CycNum> {
        let mut factors = Vec::with_capacity(top.len() + bottom.len());
        self.chars()
            .all()
            .map(|chi| {
                factors.clear();
                factors.extend(top.iter().map(|&a| a * chi));
                factors.extend(bottom.iter().map(|&b| (b * chi).conj()));
                let t = self.gauss.product(&factors);
                let sign: i64 = bottom.iter().map(|&b| self.chars().sign(b * chi)).product();
                if sign < 0 {
                    -t
                } else {
                    t
                }
            })
            .collect()
    }

    /// Katz's sum at `t ≠ 0`, from its character-sum form.
    pub fn f_katz(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        t: FqElem,
    ) -> Result<CycNum, HypError> {
        Ok(self
            .f_katz_multi(top, bottom, &[t])?
            .pop()
            .expect("one value"))
    }

    pub fn f_katz_multi(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        ts: &[FqElem],
    ) -> Result<Vec<CycNum>, HypError> {
        if ts.iter().any(|t| t.is_zero()) {
            return Err(HypError::ZeroArgument);
        }
        let terms = self.katz_terms(top, bottom);
        // χ̄(t) = χ(1/t)
        let inv: Vec<FqElem> = ts
            .iter()
            .map(|&t| self.field().inv(t).expect("nonzero"))
            .collect();
        Ok(self
            .fourier_sums(&terms, &inv)
            .into_iter()
            .map(|s| s.mul_ratio(1, self.q() - 1))
            .collect())
    }

    /// Katz's sum by direct enumeration of `x_1⋯x_n = t y_1⋯y_m` over `F_q*`.
    ///
    /// Costs `(q-1)^{n+m-1}` steps; meant as a small-field cross-check.
    pub fn katz_vsum(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        t: FqElem,
    ) -> Result<CycNum, HypError> {
        if t.is_zero() {
            return Err(HypError::ZeroArgument);
        }
        let field = self.field();
        let chars = self.chars();
        let (n, m) = (top.len(), bottom.len());
        if n + m == 0 {
            let v = i64::from(t == field.one());
            return Ok(CycNum::from_int(self.ring(), v));
        }
        let modulus = self.ring().conductor();
        let mut counts = vec![0i64; modulus as usize];
        let unit = field.unit_order() as i64;
        let log_t = field.dlog_unchecked(t) as i64;
        let free = n + m - 1;
        let mut logs = vec![0i64; n + m];
        let mut digits = vec![0i64; free];
        loop {
            // the last x (or, without x's, the last y) is pinned by the constraint
            let (free_x, free_y) = if n > 0 { (n - 1, m) } else { (0, m - 1) };
            logs[..free_x].copy_from_slice(&digits[..free_x]);
            logs[n..n + free_y].copy_from_slice(&digits[free_x..]);
            let sx: i64 = digits[..free_x].iter().sum();
            let sy: i64 = digits[free_x..].iter().sum();
            if n > 0 {
                logs[n - 1] = log_t + sy - sx;
            } else {
                logs[n + m - 1] = -log_t - sy;
            }
            let mut sum = field.zero();
            let mut e = 0u64;
            for (i, &l) in logs.iter().enumerate() {
                let v = field.exp(l);
                if i < n {
                    sum = field.add(sum, v);
                    e += chars.exponent(top[i], v).expect("nonzero");
                } else {
                    sum = field.sub(sum, v);
                    e += chars.exponent(bottom[i - n].conj(), v).expect("nonzero");
                }
            }
            e += chars.additive_exponent(sum);
            counts[(e % modulus) as usize] += 1;

            let mut pos = 0;
            loop {
                if pos == free {
                    return Ok(CycNum::from_exponent_counts(self.ring(), &counts));
                }
                digits[pos] += 1;
                if digits[pos] < unit {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// The right-hand side of the star/Katz relation at `x ≠ 0`:
    /// `[1/g(A_0) Π B_i(-1)/(g(A_i) g(B̄_i))] · K(A_0..A_n; ε, B_1..B_n | 1/x)`.
    pub fn star_via_katz(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        x: FqElem,
    ) -> Result<CycNum, HypError> {
        Ok(self
            .star_via_katz_multi(top, bottom, &[x])?
            .pop()
            .expect("one value"))
    }

    pub fn star_via_katz_multi(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        xs: &[FqElem],
    ) -> Result<Vec<CycNum>, HypError> {
        if xs.iter().any(|x| x.is_zero()) {
            return Err(HypError::ZeroArgument);
        }
        let mut katz_bottom = Vec::with_capacity(bottom.len() + 1);
        katz_bottom.push(self.chars().trivial());
        katz_bottom.extend_from_slice(bottom);
        let inv_xs: Vec<FqElem> = xs
            .iter()
            .map(|&x| self.field().inv(x).expect("nonzero"))
            .collect();
        let katz = self.f_katz_multi(top, &katz_bottom, &inv_xs)?;
        let mut inverses: Vec<MultChar> = top.to_vec();
        inverses.extend(bottom.iter().map(|b| b.conj()));
        let sign: i64 = bottom.iter().map(|&b| self.chars().sign(b)).product();
        let norm = self.gauss.inv_product(&inverses).scale(sign);
        Ok(katz.into_iter().map(|k| k * &norm).collect())
    }

    /// Compares the star function with Greene's function where a relation is known.
    pub fn relate_star_greene(&self, top: &[MultChar], bottom: &[MultChar], x: FqElem) -> Relation {
        self.relate_star_greene_multi(top, bottom, &[x])
            .pop()
            .expect("one value")
    }

    pub fn relate_star_greene_multi(
        &self,
        top: &[MultChar],
        bottom: &[MultChar],
        xs: &[FqElem],
    ) -> Vec<Relation> {
        let uncovered = || xs.iter().map(|_| Relation::Uncovered).collect();
        let n = bottom.len();
        if top.len() != n + 1 || top[0].is_trivial() {
            return uncovered();
        }
        let differs = |i: usize| top[i + 1] != bottom[i];
        let case = if (0..n).all(differs) {
            RelationCase::Generic
        } else if n > 0 && (0..n - 1).all(differs) && !bottom[n - 1].is_trivial() {
            RelationCase::LastPairEqual
        } else {
            return uncovered();
        };

        let mut scale = CycNum::one(self.ring());
        for (&a, &b) in top[1..].iter().zip(bottom) {
            match self.greene_binom_inv(a, b) {
                Some(inv) => scale = scale * inv,
                None => return uncovered(),
            }
        }
        let extra = if case == RelationCase::LastPairEqual {
            let an_bar = top[n].conj();
            let mut extra = self
                .greene_binom(top[0] * an_bar, an_bar)
                .scale(self.q() - 1);
            for (&a, &b) in top[1..n].iter().zip(&bottom[..n - 1]) {
                extra = extra * self.greene_binom(a * an_bar, b * an_bar);
                match self.greene_binom_inv(a, b) {
                    Some(inv) => extra = extra * inv,
                    None => return uncovered(),
                }
            }
            Some((an_bar, extra))
        } else {
            None
        };
        let stars = self.f_star_multi(top, bottom, xs);
        let greenes = self.f_greene_multi(top, bottom, xs);
        stars
            .into_iter()
            .zip(greenes)
            .zip(xs)
            .map(|((lhs, greene), &x)| {
                let mut rhs = &scale * &greene;
                if let Some((an_bar, extra)) = &extra {
                    if !x.is_zero() {
                        rhs = rhs + extra * &self.chars().eval(*an_bar, x);
                    }
                }
                Relation::Checked { case, lhs, rhs }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evaluator(q: u64) -> Evaluator {
        Evaluator::new(Arc::new(FieldCtx::of_order(q).unwrap())).unwrap()
    }

    /// Star function straight from the definition: every Gauss sum divided out
    /// by generic inversion, every character value computed separately.
    fn star_by_definition(
        ev: &Evaluator,
        top: &[MultChar],
        bottom: &[MultChar],
        x: FqElem,
    ) -> CycNum {
        let g = |c: MultChar| ev.gauss().gauss_sum(c).clone();
        let inv = |c: MultChar| g(c).inverse().unwrap();
        let minus_one = ev.field().minus_one();
        let mut sum = CycNum::zero(ev.ring());
        for chi in ev.chars().all() {
            let mut t = ev.chars().eval(chi, x);
            for &a in top {
                t = t * g(a * chi) * inv(a);
            }
            for &b in bottom {
                t = t * g((b * chi).conj()) * inv(b.conj());
            }
            t = t * g(chi.conj());
            for _ in 0..top.len() {
                t = t * ev.chars().eval(chi, minus_one);
            }
            sum = sum + t;
        }
        sum.mul_ratio(1, ev.q() - 1)
    }

    #[test]
    fn star_matches_definition() {
        for q in [3u64, 5, 7, 9] {
            let ev = evaluator(q);
            let c = |j| ev.chars().char(j);
            let cases: Vec<(Vec<MultChar>, Vec<MultChar>)> = vec![
                (vec![c(0)], vec![]),
                (vec![c(1)], vec![]),
                (vec![c(1), c(2)], vec![c(3)]),
                (vec![c(2), c(0), c(1)], vec![c(1), c(0)]),
                (vec![c(1), c(1), c(3), c(2)], vec![c(0), c(2), c(5)]),
            ];
            for (top, bottom) in &cases {
                let xs: Vec<FqElem> = ev.field().elements().collect();
                let fast = ev.f_star_multi(top, bottom, &xs);
                for (x, v) in xs.iter().zip(&fast) {
                    assert_eq!(
                        v,
                        &star_by_definition(&ev, top, bottom, *x),
                        "q={q} {top:?} {bottom:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn star_basic_values() {
        let ev = evaluator(5);
        let e = ev.chars().trivial();
        let one = ev.field().one();
        assert_eq!(ev.f_star(&[e], &[], one), CycNum::from_int(ev.ring(), -4));
        assert!(ev.f_star(&[ev.chars().char(1)], &[], one).is_zero());
        assert!(ev.f_star(&[e, e], &[e], ev.field().zero()).is_zero());
    }

    #[test]
    fn greene_binom_direct() {
        let ev = evaluator(5);
        let (a, b) = (ev.chars().char(1), ev.chars().char(2));
        let f = ev.field();
        let mut direct = CycNum::zero(ev.ring());
        for x in f.elements() {
            let y = f.sub(f.one(), x);
            direct = direct + ev.chars().eval(a, x) * ev.chars().eval(b.conj(), y);
        }
        let direct = direct * ev.chars().eval(b, f.minus_one()).mul_ratio(1, 5);
        assert_eq!(ev.greene_binom(a, b), direct);
        let e = ev.chars().trivial();
        assert_eq!(ev.greene_binom(e, e), CycNum::from_ratio(ev.ring(), 3, 5));
    }

    #[test]
    fn greene_matches_definition() {
        for q in [5u64, 7, 9] {
            let ev = evaluator(q);
            let c = |j| ev.chars().char(j);
            let cases: Vec<(Vec<MultChar>, Vec<MultChar>)> = vec![
                (vec![c(1)], vec![]),
                (vec![c(1), c(2)], vec![c(3)]),
                (vec![c(2), c(0), c(1)], vec![c(1), c(0)]),
            ];
            for (top, bottom) in &cases {
                let xs: Vec<FqElem> = ev.field().elements().collect();
                let fast = ev.f_greene_multi(top, bottom, &xs);
                for (x, v) in xs.iter().zip(&fast) {
                    let mut direct = CycNum::zero(ev.ring());
                    for chi in ev.chars().all() {
                        let mut t = ev.greene_binom(top[0] * chi, chi) * ev.chars().eval(chi, *x);
                        for (&a, &b) in top[1..].iter().zip(bottom) {
                            t = t * ev.greene_binom(a * chi, b * chi);
                        }
                        direct = direct + t;
                    }
                    assert_eq!(v, &direct.mul_ratio(q as i64, q as i64 - 1));
                }
            }
        }
    }

    #[test]
    fn katz_matches_vsum_small() {
        for q in [3u64, 5] {
            let ev = evaluator(q);
            let all: Vec<MultChar> = ev.chars().all().collect();
            for n in 0..=2usize {
                for m in 0..=(4 - n).min(2) {
                    let combos = all.len().pow((n + m) as u32);
                    for idx in 0..combos {
                        let mut k = idx;
                        let mut pick = || {
                            let c = all[k % all.len()];
                            k /= all.len();
                            c
                        };
                        let top: Vec<MultChar> = (0..n).map(|_| pick()).collect();
                        let bottom: Vec<MultChar> = (0..m).map(|_| pick()).collect();
                        for t in ev.field().elements().skip(1) {
                            assert_eq!(
                                ev.f_katz(&top, &bottom, t).unwrap(),
                                ev.katz_vsum(&top, &bottom, t).unwrap(),
                                "q={q} {top:?} {bottom:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn katz_rejects_zero() {
        let ev = evaluator(5);
        let e = ev.chars().trivial();
        assert_eq!(
            ev.f_katz(&[e], &[e], ev.field().zero()),
            Err(HypError::ZeroArgument)
        );
    }

    #[test]
    fn star_greene_relation_cases() {
        let ev = evaluator(7);
        let c = |j| ev.chars().char(j);
        let x = ev.field().from_int(3);
        let generic = ev.relate_star_greene(&[c(1), c(2)], &[c(4)], x);
        assert!(matches!(
            generic,
            Relation::Checked {
                case: RelationCase::Generic,
                ..
            }
        ));
        assert_eq!(generic.holds(), Some(true));
        let last = ev.relate_star_greene(&[c(1), c(5), c(2)], &[c(3), c(2)], x);
        assert!(matches!(
            last,
            Relation::Checked {
                case: RelationCase::LastPairEqual,
                ..
            }
        ));
        assert_eq!(last.holds(), Some(true));
        assert_eq!(
            ev.relate_star_greene(&[c(0), c(2)], &[c(4)], x),
            Relation::Uncovered
        );
    }

    #[test]
    fn well_poised_predicate() {
        let f = FieldCtx::of_order(7).unwrap();
        let c = |j| MultChar::new(j, 6);
        let top = vec![c(2), c(1), c(5)];
        let bottom = HypSpec::well_poised_bottom(&top);
        assert_eq!(bottom, vec![c(1), c(3)]);
        let spec = HypSpec::new(Variant::Star, top.clone(), bottom.clone(), f.minus_one());
        assert!(spec.is_well_poised(&f));
        let spec = HypSpec::new(Variant::Star, top, bottom, f.from_int(3));
        assert!(!spec.is_well_poised(&f));
    }

    #[test]
    fn evaluate_checks_arity() {
        let ev = evaluator(5);
        let e = ev.chars().trivial();
        let spec = HypSpec::new(Variant::Star, vec![e, e], vec![], ev.field().one());
        assert!(matches!(ev.evaluate(&spec), Err(HypError::Arity { .. })));
        let spec = HypSpec::new(Variant::Katz, vec![e], vec![], ev.field().one());
        assert!(ev.evaluate(&spec).is_ok());
    }
}
