//! Multiplicative characters of `F_q*` and the fixed additive character.
//!
//! Characters are indexed against the field's fixed generator `g`:
//! `χ_j(g^a) = ζ_{q-1}^{ja}`, and every character vanishes at 0, the trivial
//! one included. The additive character is `θ(x) = ζ_p^{Tr(x)}`.

use std::fmt;
use std::ops::{Div, Mul};
use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{CycError, CycField, CycNum};
use crate::finite_field::{FieldCtx, FqElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("q = {0} is even: there is no character of order 2")]
    EvenCharacteristic(u64),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

/// A multiplicative character `χ_j`, carried with the group order `q - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultChar {
    index: u32,
    order: u32,
}

impl MultChar {
    pub fn new(index: i64, group_order: u64) -> Self {
        assert!(group_order > 0);
        MultChar {
            index: index.rem_euclid(group_order as i64) as u32,
            order: group_order as u32,
        }
    }

    pub fn trivial(group_order: u64) -> Self {
        Self::new(0, group_order)
    }

    pub fn index(self) -> u64 {
        self.index as u64
    }

    pub fn group_order(self) -> u64 {
        self.order as u64
    }

    pub fn is_trivial(self) -> bool {
        self.index == 0
    }

    /// `δ(χ)`: 1 for the trivial character, 0 otherwise.
    pub fn delta(self) -> u32 {
        u32::from(self.is_trivial())
    }

    /// The inverse character `χ̄`.
    pub fn conj(self) -> Self {
        MultChar {
            index: (self.order - self.index) % self.order,
            order: self.order,
        }
    }

    pub fn pow(self, e: i64) -> Self {
        let m = self.order as i128;
        let idx = (self.index as i128 * e as i128).rem_euclid(m);
        MultChar {
            index: idx as u32,
            order: self.order,
        }
    }

    /// True when `χ = R^2` for some character `R`.
    pub fn is_square(self) -> bool {
        self.order % 2 == 1 || self.index.is_multiple_of(2)
    }

    /// Every `R` with `R^2 = χ`: two roots or none for odd `q`, exactly one for even `q`.
    pub fn square_roots(self) -> Vec<MultChar> {
        let m = self.order;
        if m % 2 == 1 {
            // squaring is a bijection; its inverse is raising to (m+1)/2
            return vec![self.pow((m as i64 + 1) / 2)];
        }
        if self.index % 2 == 1 {
            return Vec::new();
        }
        let half = self.index / 2;
        vec![
            MultChar {
                index: half,
                order: m,
            },
            MultChar {
                index: half + m / 2,
                order: m,
            },
        ]
    }
}

impl Mul for MultChar {
    type Output = MultChar;
    fn mul(self, rhs: MultChar) -> MultChar {
        assert_eq!(self.order, rhs.order, "characters of different groups");
        MultChar {
            index: ((self.index as u64 + rhs.index as u64) % self.order as u64) as u32,
            order: self.order,
        }
    }
}

impl Div for MultChar {
    type Output = MultChar;
    // characters form a group under multiplication; dividing is multiplying by the conjugate
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: MultChar) -> MultChar {
        self * rhs.conj()
    }
}

impl fmt::Debug for MultChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{}", self.index)
    }
}

impl fmt::Display for MultChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ_{}", self.index)
    }
}

/// Character evaluation for one field, with values in `Q(ζ_n)` at the
/// field's fixed conductor.
pub struct CharacterTable {
    field: Arc<FieldCtx>,
    ring: Arc<CycField>,
    // n / (q - 1) and n / p
    mult_step: u64,
    add_step: u64,
}

impl CharacterTable {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self, CharError> {
        let n = field.conductor();
        let ring = CycField::new(n)?;
        Ok(Self::with_ring(field, ring))
    }

    pub fn with_ring(field: Arc<FieldCtx>, ring: Arc<CycField>) -> Self {
        let n = ring.conductor();
        assert_eq!(n, field.conductor());
        CharacterTable {
            mult_step: n / field.unit_order(),
            add_step: n / field.characteristic(),
            field,
            ring,
        }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn ring(&self) -> &Arc<CycField> {
        &self.ring
    }

    pub fn group_order(&self) -> u64 {
        self.field.unit_order()
    }

    pub fn char(&self, j: i64) -> MultChar {
        MultChar::new(j, self.group_order())
    }

    pub fn trivial(&self) -> MultChar {
        MultChar::trivial(self.group_order())
    }

    /// The quadratic character `φ = χ_{(q-1)/2}`; odd `q` only.
    pub fn phi(&self) -> Result<MultChar, CharError> {
        let m = self.group_order();
        if m % 2 == 1 {
            return Err(CharError::EvenCharacteristic(self.field.order()));
        }
        Ok(self.char(m as i64 / 2))
    }

    pub fn all(&self) -> impl Iterator<Item = MultChar> + '_ {
        (0..self.group_order()).map(move |j| self.char(j as i64))
    }

    /// Exponent `e` with `χ(x) = ζ_n^e`, or `None` at `x = 0`.
    pub fn exponent(&self, chi: MultChar, x: FqElem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let m = self.group_order();
        let a = self.field.dlog_unchecked(x);
        Some((chi.index() * a % m) * self.mult_step)
    }

    pub fn eval(&self, chi: MultChar, x: FqElem) -> CycNum {
        match self.exponent(chi, x) {
            None => CycNum::zero(&self.ring),
            Some(e) => CycNum::zeta_pow(&self.ring, e as i64),
        }
    }

    /// `χ(-1)`, which is always `±1`.
    pub fn sign(&self, chi: MultChar) -> i64 {
        let m = self.group_order();
        if m % 2 == 1 || chi.index().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Exponent `e` with `θ(x) = ζ_n^e`.
    pub fn additive_exponent(&self, x: FqElem) -> u64 {
        self.field.trace(x) as u64 * self.add_step
    }

    pub fn additive_eval(&self, x: FqElem) -> CycNum {
        CycNum::zeta_pow(&self.ring, self.additive_exponent(x) as i64)
    }

    /// Exponent of `ζ_n` for a character of `ζ_{q-1}`-exponent `a`.
    pub(crate) fn mult_step(&self) -> u64 {
        self.mult_step
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(q: u64) -> CharacterTable {
        CharacterTable::new(Arc::new(FieldCtx::of_order(q).unwrap())).unwrap()
    }

    #[test]
    fn trivial_character_values() {
        let t = table(7);
        let eps = t.trivial();
        assert!(t.eval(eps, t.field().zero()).is_zero());
        for x in t.field().elements().skip(1) {
            assert!(t.eval(eps, x).is_one());
        }
    }

    #[test]
    fn monomial_evaluation_f5() {
        let t = table(5);
        let chi1 = t.char(1);
        let four = t.field().from_int(4);
        assert_eq!(t.eval(chi1, four), CycNum::from_int(t.ring(), -1));
    }

    #[test]
    fn additive_character() {
        let t = table(3);
        assert!(t.additive_eval(t.field().zero()).is_one());
        let r3 = CycField::new(3).unwrap();
        assert_eq!(
            t.additive_eval(t.field().one()),
            CycNum::zeta_pow(&r3, 1).embed(t.ring()).unwrap()
        );
        for q in [3u64, 4, 5, 8, 9, 13] {
            let t = table(q);
            let total = t
                .field()
                .elements()
                .fold(CycNum::zero(t.ring()), |acc, x| acc + t.additive_eval(x));
            assert!(total.is_zero());
            for x in t.field().elements() {
                for y in t.field().elements() {
                    let lhs = t.additive_eval(t.field().add(x, y));
                    assert_eq!(lhs, t.additive_eval(x) * t.additive_eval(y));
                }
            }
        }
    }

    #[test]
    fn character_group_operations() {
        let t = table(7);
        let (c3, c4, c5) = (t.char(3), t.char(4), t.char(5));
        assert_eq!(c4 * c5, c3);
        assert_eq!(c3 * t.trivial(), c3);
        for j in 0..6 {
            assert_eq!(t.char(j).conj(), t.char((6 - j) % 6));
        }
    }

    #[test]
    fn squares_and_roots() {
        let t7 = table(7);
        assert!(t7.trivial().is_square());
        assert!(!t7.char(3).is_square());
        assert!(t7.char(3).square_roots().is_empty());
        let t8 = table(8);
        for chi in t8.all() {
            assert!(chi.is_square());
            let roots = chi.square_roots();
            assert_eq!(roots.len(), 1);
            assert_eq!(roots[0] * roots[0], chi);
        }
        let t9 = table(9);
        assert_eq!(t9.char(4).square_roots(), vec![t9.char(2), t9.char(6)]);
        let t5 = table(5);
        assert_eq!(
            t5.trivial().square_roots(),
            vec![t5.trivial(), t5.phi().unwrap()]
        );
        assert_eq!(t8.phi(), Err(CharError::EvenCharacteristic(8)));
    }

    #[test]
    fn delta_indicator() {
        let t = table(7);
        assert_eq!(t.trivial().delta(), 1);
        assert_eq!(t.phi().unwrap().delta(), 0);
        assert_eq!(t.char(1).delta(), 0);
    }

    #[test]
    fn orthogonality_relations() {
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
            let t = table(q);
            let m = (q - 1) as i64;
            for chi in t.all() {
                let s = t
                    .field()
                    .elements()
                    .fold(CycNum::zero(t.ring()), |acc, x| acc + t.eval(chi, x));
                let expect = if chi.is_trivial() { m } else { 0 };
                assert_eq!(s, CycNum::from_int(t.ring(), expect), "q={q} {chi}");
                let roots = chi.square_roots();
                assert_eq!(chi.is_square(), !roots.is_empty());
                let s2 = chi.pow(2);
                if s2.is_trivial() {
                    assert!(t.sign(chi) == 1 || t.sign(chi) == -1);
                }
                assert_eq!(
                    t.eval(chi, t.field().minus_one()),
                    CycNum::from_int(t.ring(), t.sign(chi))
                );
            }
            for x in t.field().elements() {
                let s = t
                    .all()
                    .fold(CycNum::zero(t.ring()), |acc, chi| acc + t.eval(chi, x));
                let expect = if x == t.field().one() { m } else { 0 };
                assert_eq!(s, CycNum::from_int(t.ring(), expect));
            }
        }
    }
}
