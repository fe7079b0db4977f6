//! Gauss and Jacobi sums, memoized per field.

use std::sync::{Arc, OnceLock};

use crate::characters::{CharError, CharacterTable, MultChar};
use crate::cyclotomic::{CycField, CycNum};
use crate::finite_field::{FieldCtx, FqElem};

// Pairwise products and Jacobi sums are cached only up to this many characters.
const PAIR_CACHE_LIMIT: u64 = 256;

/// Gauss sums `g(χ) = Σ_x χ(x) θ(x)` for every character of one field.
///
/// The additive character may be twisted to `θ_c(x) = θ(cx)`; every function
/// built on the table is independent of `c`, which the verifiers exploit.
pub struct GaussTable {
    chars: CharacterTable,
    twist: FqElem,
    sums: Vec<OnceLock<CycNum>>,
    inverses: Vec<OnceLock<CycNum>>,
    pairs: Vec<OnceLock<CycNum>>,
    jacobi: Vec<OnceLock<CycNum>>,
}

impl GaussTable {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self, CharError> {
        let chars = CharacterTable::new(field)?;
        Ok(Self::from_chars(chars, None))
    }

    fn from_chars(chars: CharacterTable, twist: Option<FqElem>) -> Self {
        let m = chars.group_order();
        let twist = twist.unwrap_or_else(|| chars.field().one());
        let cached = if m <= PAIR_CACHE_LIMIT {
            (m * m) as usize
        } else {
            0
        };
        GaussTable {
            sums: (0..m).map(|_| OnceLock::new()).collect(),
            inverses: (0..m).map(|_| OnceLock::new()).collect(),
            pairs: (0..cached).map(|_| OnceLock::new()).collect(),
            jacobi: (0..cached).map(|_| OnceLock::new()).collect(),
            chars,
            twist,
        }
    }

    /// A table over the same field built from `θ_c(x) = θ(cx)`, `c ≠ 0`.
    pub fn with_additive_twist(&self, c: FqElem) -> Self {
        assert!(
            !c.is_zero(),
            "the twisted additive character must be non-trivial"
        );
        let chars =
            CharacterTable::with_ring(self.chars.field().clone(), self.chars.ring().clone());
        Self::from_chars(chars, Some(c))
    }

    pub fn chars(&self) -> &CharacterTable {
        &self.chars
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.chars.field()
    }

    pub fn ring(&self) -> &Arc<CycField> {
        self.chars.ring()
    }

    pub fn q(&self) -> i64 {
        self.field().order() as i64
    }

    fn compute_gauss(&self, chi: MultChar) -> CycNum {
        let field = self.field();
        let n = self.ring().conductor();
        let mut counts = vec![0i64; n as usize];
        for x in field.elements().skip(1) {
            let e = self.chars.exponent(chi, x).expect("x ≠ 0")
                + self.chars.additive_exponent(field.mul(self.twist, x));
            counts[(e % n) as usize] += 1;
        }
        CycNum::from_exponent_counts(self.ring(), &counts)
    }

    /// `g(χ)`, computed by direct summation on first use.
    pub fn gauss_sum(&self, chi: MultChar) -> &CycNum {
        self.sums[chi.index() as usize].get_or_init(|| self.compute_gauss(chi))
    }

    /// `1 / g(χ)`: `χ(-1) g(χ̄) / q` for `χ ≠ ε`, and `-1` for `ε`.
    pub fn gauss_inv(&self, chi: MultChar) -> &CycNum {
        self.inverses[chi.index() as usize].get_or_init(|| {
            if chi.is_trivial() {
                CycNum::from_int(self.ring(), -1)
            } else {
                self.gauss_sum(chi.conj())
                    .mul_ratio(self.chars.sign(chi), self.q())
            }
        })
    }

    /// `g(χ) g(ψ)`, cached for small fields.
    pub fn pair(&self, chi: MultChar, psi: MultChar) -> CycNum {
        if self.pairs.is_empty() {
            return self.gauss_sum(chi) * self.gauss_sum(psi);
        }
        let (a, b) = if chi.index() <= psi.index() {
            (chi, psi)
        } else {
            (psi, chi)
        };
        let m = self.chars.group_order();
        let slot = (a.index() * m + b.index()) as usize;
        self.pairs[slot]
            .get_or_init(|| self.gauss_sum(a) * self.gauss_sum(b))
            .clone()
    }

    /// Product of `g(χ)` over a list of characters.
    pub fn product(&self, chars: &[MultChar]) -> CycNum {
        let mut it = chars.chunks(2);
        let mut acc = match it.next() {
            None => return CycNum::one(self.ring()),
            Some([a, b]) => self.pair(*a, *b),
            Some([a]) => self.gauss_sum(*a).clone(),
            Some(_) => unreachable!(),
        };
        for chunk in it {
            acc = match chunk {
                [a, b] => &acc * &self.pair(*a, *b),
                [a] => &acc * self.gauss_sum(*a),
                _ => unreachable!(),
            };
        }
        acc
    }

    /// Product of `1 / g(χ)` over a list of characters.
    pub fn inv_product(&self, chars: &[MultChar]) -> CycNum {
        chars
            .iter()
            .fold(CycNum::one(self.ring()), |acc, &c| &acc * self.gauss_inv(c))
    }

    /// `Π g(num) / Π g(den)`.
    pub fn ratio(&self, num: &[MultChar], den: &[MultChar]) -> CycNum {
        self.product(num) * self.inv_product(den)
    }

    fn compute_jacobi(&self, chi: MultChar, psi: MultChar) -> CycNum {
        let field = self.field();
        let n = self.ring().conductor();
        let mut counts = vec![0i64; n as usize];
        let one = field.one();
        for t in field.elements() {
            let u = field.sub(one, t);
            if let (Some(a), Some(b)) = (self.chars.exponent(chi, t), self.chars.exponent(psi, u)) {
                counts[((a + b) % n) as usize] += 1;
            }
        }
        CycNum::from_exponent_counts(self.ring(), &counts)
    }

    /// `J(χ, ψ) = Σ_t χ(t) ψ(1 - t)` by direct summation.
    pub fn jacobi_sum(&self, chi: MultChar, psi: MultChar) -> CycNum {
        if self.jacobi.is_empty() {
            return self.compute_jacobi(chi, psi);
        }
        let m = self.chars.group_order();
        let slot = (chi.index() * m + psi.index()) as usize;
        self.jacobi[slot]
            .get_or_init(|| self.compute_jacobi(chi, psi))
            .clone()
    }

    /// `(1/(q-1)) Σ_χ g(Aχ) g(Bχ) g(Cχ̄) g(Dχ̄)`.
    pub fn four_gauss_lhs(&self, a: MultChar, b: MultChar, c: MultChar, d: MultChar) -> CycNum {
        let sum = self
            .chars
            .all()
            .fold(CycNum::zero(self.ring()), |acc, chi| {
                let left = self.pair(a * chi, b * chi);
                let right = self.pair(c / chi, d / chi);
                acc + left * right
            });
        sum.mul_ratio(1, self.q() - 1)
    }

    /// `g(AC) g(AD) g(BC) g(BD) / g(ABCD) + q(q-1) AB(-1) δ(ABCD)`.
    pub fn four_gauss_rhs(&self, a: MultChar, b: MultChar, c: MultChar, d: MultChar) -> CycNum {
        let abcd = a * b * c * d;
        let main = self.product(&[a * c, a * d, b * c, b * d]) * self.gauss_inv(abcd);
        if abcd.is_trivial() {
            let q = self.q();
            let sign = self.chars.sign(a * b);
            main + CycNum::from_int(self.ring(), q * (q - 1) * sign)
        } else {
            main
        }
    }

    /// `(1/(q-1)) Σ_χ [g(Aχ)/g(A)] [g(Bχ)/g(B)] [g(C̄χ̄)/g(C̄)] g(χ̄)`, summed
    /// term by term straight from Gauss sums.
    pub fn gauss_average(&self, a: MultChar, b: MultChar, c: MultChar) -> CycNum {
        let sum = self
            .chars
            .all()
            .fold(CycNum::zero(self.ring()), |acc, chi| {
                let term = self.gauss_sum(a * chi)
                    * self.gauss_sum(b * chi)
                    * self.gauss_sum((c * chi).conj())
                    * self.gauss_sum(chi.conj());
                acc + term
            });
        let norm = self.inv_product(&[a, b, c.conj()]);
        (sum * norm).mul_ratio(1, self.q() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(q: u64) -> GaussTable {
        GaussTable::new(Arc::new(FieldCtx::of_order(q).unwrap())).unwrap()
    }

    #[test]
    fn trivial_gauss_sum_is_minus_one() {
        for q in [3u64, 4, 5, 9, 13] {
            let t = table(q);
            assert_eq!(
                t.gauss_sum(t.chars().trivial()),
                &CycNum::from_int(t.ring(), -1)
            );
        }
    }

    #[test]
    fn quadratic_gauss_sum_over_f3() {
        let t = table(3);
        let phi = t.chars().phi().unwrap();
        // direct oracle: g(φ) = φ(1)θ(1) + φ(2)θ(2) = ζ_3 - ζ_3^2
        let r = t.ring();
        let direct = CycNum::zeta_pow(r, 2) - CycNum::zeta_pow(r, 4);
        assert_eq!(t.gauss_sum(phi), &direct);
        let sq = &direct * &direct;
        assert_eq!(sq, CycNum::from_int(r, -3));
        assert_eq!(t.gauss_inv(phi), &direct.mul_ratio(1, -3));
    }

    #[test]
    fn conjugate_product_and_inverse() {
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13] {
            let t = table(q);
            for chi in t.chars().all() {
                let prod = t.gauss_sum(chi) * t.gauss_sum(chi.conj());
                let expect = if chi.is_trivial() {
                    1
                } else {
                    t.chars().sign(chi) * q as i64
                };
                assert_eq!(prod, CycNum::from_int(t.ring(), expect));
                assert!((t.gauss_sum(chi) * t.gauss_inv(chi)).is_one());
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        for q in [5u64, 7, 9] {
            let t = table(q);
            let eps = t.chars().trivial();
            assert_eq!(
                t.jacobi_sum(eps, eps),
                CycNum::from_int(t.ring(), q as i64 - 2)
            );
            for chi in t.chars().all().skip(1) {
                let j = t.jacobi_sum(chi, chi.conj());
                assert_eq!(j, CycNum::from_int(t.ring(), -t.chars().sign(chi)));
            }
        }
    }

    #[test]
    fn helversen_pasotto_all_trivial_q5() {
        let t = table(5);
        let e = t.chars().trivial();
        let expect = CycNum::from_int(t.ring(), 19);
        assert_eq!(t.four_gauss_lhs(e, e, e, e), expect);
        assert_eq!(t.four_gauss_rhs(e, e, e, e), expect);
    }

    #[test]
    fn helversen_pasotto_exhaustive_q5() {
        let t = table(5);
        let all: Vec<_> = t.chars().all().collect();
        let mut tested = 0;
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    for &d in &all {
                        assert_eq!(
                            t.four_gauss_lhs(a, b, c, d),
                            t.four_gauss_rhs(a, b, c, d),
                            "{a} {b} {c} {d}"
                        );
                        tested += 1;
                    }
                }
            }
        }
        assert_eq!(tested, 256);
    }

    #[test]
    fn twisted_table_scales_by_character() {
        let t = table(7);
        let c = t.field().from_int(3);
        let tw = t.with_additive_twist(c);
        for chi in t.chars().all() {
            // g_c(χ) = χ̄(c) g(χ)
            let expect = t.gauss_sum(chi) * t.chars().eval(chi.conj(), c);
            assert_eq!(tw.gauss_sum(chi), &expect);
        }
    }
}
