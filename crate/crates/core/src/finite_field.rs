//! Finite fields `F_q`, `q = p^k`, with a fixed multiplicative generator and
//! full discrete-logarithm tables.
//!
//! Elements are stored packed: the coefficient of `x^i` in the power basis of
//! the defining modulus is the `i`-th base-`p` digit of the packed integer.
//! For prime fields the packed value is simply the residue mod `p`.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order {0} exceeds the bound {1}")]
    BoundExceeded(u128, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("coefficient vector {0:?} is not an element of the field")]
    BadCoefficients(Vec<u32>),
}

/// An element of `F_q` in packed power-basis form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FqElem(u32);

impl FqElem {
    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A constructed finite field. Immutable once built.
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FqElem,
    // exp[a] = g^a for a in [0, q-2]
    exp: Vec<u32>,
    // log[x] = a with g^a = x; log[0] is unused
    log: Vec<u32>,
    trace: Vec<u32>,
    conductor: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^k`, failing when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32), FieldError> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = factors[0];
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    Ok((p, k))
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        super::pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p) as u64;
        while r.len() > df {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv) % p as u64;
            if c != 0 {
                for (i, &fi) in f.iter().enumerate() {
                    let idx = top - df + i;
                    let sub = (c * fi as u64) % p as u64;
                    r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, f, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u128, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        rem(&result, f, p)
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's irreducibility test for a monic `f` of degree `k`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = (f.len() - 1) as u32;
        let x = vec![0u32, 1];
        let pk = (p as u128).pow(k);
        let xq = pow_mod(&x, pk, f, p);
        if !sub(&xq, &rem(&x, f, p), p).is_empty() {
            return false;
        }
        for r in super::prime_factors(k as u64) {
            let e = (p as u128).pow(k / r as u32);
            let h = sub(&pow_mod(&x, e, f, p), &rem(&x, f, p), p);
            let g = gcd(f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

impl FieldCtx {
    /// Builds `F_{p^k}` with the default order bound.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, k, DEFAULT_MAX_ORDER)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        Self::of_order_with_bound(q, DEFAULT_MAX_ORDER)
    }

    pub fn of_order_with_bound(q: u64, bound: u64) -> Result<Self, FieldError> {
        if q as u128 > bound as u128 {
            return Err(FieldError::BoundExceeded(q as u128, bound));
        }
        let (p, k) = prime_power(q)?;
        Self::with_bound(p, k, bound)
    }

    pub fn with_bound(p: u64, k: u32, bound: u64) -> Result<Self, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > bound as u128 || q > u32::MAX as u128 {
            return Err(FieldError::BoundExceeded(q, bound));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let (p, q) = (p as u32, q as u32);

        // First monic irreducible of degree k, enumerating the lower
        // coefficients by their packed base-p value.
        let modulus = (0..q)
            .map(|packed| {
                let mut f = unpack(packed, p, k);
                f.push(1);
                f
            })
            .find(|f| fp_poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let raw_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                let prod = fp_poly::mul_mod(&unpack(a, p, k), &unpack(b, p, k), &modulus, p);
                pack(&prod, p)
            }
        };
        let raw_pow = |a: u32, mut e: u64| -> u32 {
            let mut r = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = raw_mul(r, b);
                }
                b = raw_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = (q - 1) as u64;
        let order_primes = prime_factors(order);
        let generator = (1..q)
            .find(|&c| {
                raw_pow(c, order) == 1 && order_primes.iter().all(|&r| raw_pow(c, order / r) != 1)
            })
            .expect("F_q* is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for a in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = a;
            cur = raw_mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);

        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            generator: FqElem(generator),
            exp,
            log,
            trace: Vec::new(),
            conductor: p as u64 / gcd_u64(p as u64, order) * order,
        };
        let trace = (0..q)
            .map(|x| {
                let mut t = FqElem(x);
                let mut sum = FqElem(x);
                for _ in 1..k {
                    t = ctx.pow(t, p as u64);
                    sum = ctx.add(sum, t);
                }
                debug_assert!(sum.0 < p, "trace lands in the prime field");
                sum.0
            })
            .collect();
        ctx.trace = trace;
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn unit_order(&self) -> u64 {
        self.q as u64 - 1
    }

    /// `lcm(p, q - 1)`: every character value and Gauss sum lives in `Q(ζ_n)`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients of the defining modulus, lowest degree first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    pub fn minus_one(&self) -> FqElem {
        self.neg(self.one())
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FqElem {
        FqElem(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem, FieldError> {
        if coeffs.len() > self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoefficients(coeffs.to_vec()));
        }
        Ok(FqElem(pack(coeffs, self.p)))
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        unpack(x.0, self.p, self.k)
    }

    pub fn from_packed(&self, packed: u32) -> Option<FqElem> {
        (packed < self.q).then_some(FqElem(packed))
    }

    /// All elements in packed order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(FqElem)
    }

    /// `g^a` for the fixed generator `g`; `a` is reduced mod `q - 1`.
    pub fn exp(&self, a: i64) -> FqElem {
        let m = self.unit_order() as i64;
        FqElem(self.exp[a.rem_euclid(m) as usize])
    }

    pub fn dlog(&self, x: FqElem) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    pub(crate) fn dlog_unchecked(&self, x: FqElem) -> u64 {
        debug_assert!(!x.is_zero());
        self.log[x.0 as usize] as u64
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.k == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.k {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.k == 1 {
            return FqElem((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem(0);
        }
        let m = self.unit_order();
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % m;
        FqElem(self.exp[s as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.exp(-(self.log[a.0 as usize] as i64)))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return FqElem(0);
        }
        let m = self.unit_order() as u128;
        let s = (self.log[a.0 as usize] as u128 * e as u128) % m;
        FqElem(self.exp[s as usize])
    }

    /// Absolute trace `Tr(x) = Σ_{i<k} x^{p^i}` as an integer in `[0, p)`.
    pub fn trace(&self, x: FqElem) -> u32 {
        self.trace[x.0 as usize]
    }

    /// Renders an element for reports: `0`, `1`, `-1`, or `g^a`.
    pub fn describe(&self, x: FqElem) -> String {
        if x.is_zero() {
            "0".to_string()
        } else if x == self.one() {
            "1".to_string()
        } else if x == self.minus_one() {
            "-1".to_string()
        } else {
            format!("g^{}", self.dlog_unchecked(x))
        }
    }

    /// Renders an element as a polynomial in the basis root `x`, highest degree first.
    pub fn polynomial_string(&self, x: FqElem) -> String {
        render_poly(&self.coeffs(x))
    }

    /// Renders the defining polynomial, e.g. `x^2 + 2x + 2`.
    pub fn modulus_string(&self) -> String {
        render_poly(&self.modulus)
    }
}

fn render_poly(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn unpack(mut packed: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = packed % p;
            packed /= p;
            d
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_structure() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.generator(), FqElem(2));
        assert_eq!(f.conductor(), 6);
    }

    #[test]
    fn polynomial_rendering() {
        let f9 = FieldCtx::of_order(9).unwrap();
        assert_eq!(f9.polynomial_string(f9.zero()), "0");
        assert_eq!(
            f9.polynomial_string(f9.from_coeffs(&[2, 1]).unwrap()),
            "x + 2"
        );
        assert_eq!(f9.polynomial_string(f9.from_coeffs(&[0, 2]).unwrap()), "2x");
        let f7 = FieldCtx::of_order(7).unwrap();
        assert_eq!(f7.polynomial_string(f7.generator()), "3");
    }

    #[test]
    fn f9_conductor_and_modulus() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.conductor(), 24);
        assert_eq!(f.modulus().len(), 3);
        assert!(fp_poly::is_irreducible(f.modulus(), 3));
        // x^2 + 1 is the first monic irreducible quadratic over F_3
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_composites_and_large_orders() {
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(
            FieldCtx::new(2, 21),
            Err(FieldError::BoundExceeded(..))
        ));
        assert_eq!(FieldCtx::new(5, 0).unwrap_err(), FieldError::ZeroDegree);
        assert_eq!(
            FieldCtx::of_order(12).unwrap_err(),
            FieldError::NotPrimePower(12)
        );
    }

    #[test]
    fn basic_arithmetic() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.inv(f7.from_int(3)).unwrap(), f7.from_int(5));
        assert_eq!(f7.inv(f7.zero()), Err(FieldError::DivisionByZero));
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.add(f5.from_int(2), f5.from_int(3)), f5.zero());
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.pow(f9.generator(), 8), f9.one());
    }

    #[test]
    fn trace_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.trace(f7.from_int(4)), 4);
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.trace(f9.one()), 2);
        for x in f9.elements() {
            for y in f9.elements() {
                assert_eq!(f9.trace(f9.add(x, y)), (f9.trace(x) + f9.trace(y)) % 3);
            }
        }
    }

    #[test]
    fn dlog_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.generator(), FqElem(2));
        assert_eq!(f5.dlog(f5.from_int(4)).unwrap(), 2);
        // oracle: direct exponentiation by repeated multiplication
        let mut acc = 1u64;
        for a in 0..4u64 {
            assert_eq!(f5.dlog(f5.from_int(acc as i64)).unwrap(), a);
            acc = acc * 2 % 5;
        }
        assert_eq!(f5.dlog(f5.zero()), Err(FieldError::LogOfZero));
        for q in [7u64, 8, 9, 16, 25] {
            let f = FieldCtx::of_order(q).unwrap();
            assert_eq!(f.dlog(f.one()).unwrap(), 0);
            assert_eq!(f.dlog(f.generator()).unwrap(), 1);
        }
    }

    #[test]
    fn field_axioms_small_extensions() {
        for q in [4u64, 8, 9, 25, 27] {
            let f = FieldCtx::of_order(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                    assert_eq!(f.pow(a, q - 1), f.one());
                }
                for &b in &els {
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn generator_has_full_order_and_dlog_is_bijective() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 81] {
            let f = FieldCtx::of_order(q).unwrap();
            let m = f.unit_order();
            let mut seen = vec![false; m as usize];
            for x in f.elements().skip(1) {
                let a = f.dlog(x).unwrap();
                assert_eq!(f.exp(a as i64), x);
                assert!(!seen[a as usize]);
                seen[a as usize] = true;
            }
            for a in 0..m {
                assert_eq!(f.dlog(f.exp(a as i64)).unwrap(), a);
            }
            assert!(
                f.conductor().is_multiple_of(f.characteristic()) && f.conductor().is_multiple_of(m)
            );
        }
    }

    #[test]
    fn wilson_via_dlog_sum() {
        // Π x over F_q* = -1, i.e. Σ dlog(x) ≡ dlog(-1) mod (q-1)
        for q in [
            3u64, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49,
        ] {
            let f = FieldCtx::of_order(q).unwrap();
            let m = f.unit_order();
            let s: u64 = f
                .elements()
                .skip(1)
                .map(|x| f.dlog(x).unwrap())
                .sum::<u64>()
                % m;
            assert_eq!(s, (m * (m - 1) / 2) % m);
            assert_eq!(f.exp(s as i64), f.minus_one());
        }
    }

    #[test]
    fn trace_is_onto_prime_field() {
        for q in [4u64, 8, 9, 25, 27, 49, 81] {
            let f = FieldCtx::of_order(q).unwrap();
            let mut hit = vec![false; f.characteristic() as usize];
            for x in f.elements() {
                hit[f.trace(x) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h));
            // trace of a prime-field scalar c is k*c
            for c in 0..f.characteristic() as i64 {
                let t = f.trace(f.from_int(c)) as i64;
                assert_eq!(
                    t,
                    (f.degree() as i64 * c).rem_euclid(f.characteristic() as i64)
                );
            }
        }
    }
}
