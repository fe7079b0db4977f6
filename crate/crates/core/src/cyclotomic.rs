//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! An element is an integer polynomial in `ζ_n` of degree `< φ(n)`, reduced
//! modulo the cyclotomic polynomial `Φ_n`, over a positive denominator. The
//! pair is kept in lowest terms, so two elements are equal exactly when their
//! stored coefficients are.
//!
//! Coefficients are arbitrary precision. Values whose coefficients fit in an
//! `i64` are stored inline and multiplied with 128-bit accumulators; every
//! operation falls back to `BigInt` on overflow.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest conductor accepted by [`CycField::new`].
pub const DEFAULT_MAX_CONDUCTOR: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor {0} exceeds the bound {1}")]
    BoundExceeded(u64, u64),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(ζ_{0}) into Q(ζ_{1})")]
    NotDivisible(u64, u64),
}

/// Integer coefficients of `Φ_n`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    coeffs: Vec<i64>,
}

impl CycPoly {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact division of `a` by the monic `b`; panics if the division is not exact.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - db] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                r[k - db + i] -= &c * bi;
            }
        }
    }
    assert!(r.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

fn cyclotomic_poly_memo(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly_memo(d, memo);
        poly = div_exact_monic(&poly, &phi_d);
    }
    memo.insert(n, poly.clone());
    poly
}

/// `Φ_n`, obtained by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(n: u64) -> Result<CycPoly, CycError> {
    cyclotomic_poly_bounded(n, DEFAULT_MAX_CONDUCTOR)
}

pub fn cyclotomic_poly_bounded(n: u64, bound: u64) -> Result<CycPoly, CycError> {
    if n == 0 {
        return Err(CycError::ZeroConductor);
    }
    if n > bound {
        return Err(CycError::BoundExceeded(n, bound));
    }
    let poly = cyclotomic_poly_memo(n, &mut HashMap::new());
    let coeffs = poly
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficients fit in i64"))
        .collect();
    Ok(CycPoly { coeffs })
}

/// The ring `Z[ζ_n] ⊂ Q(ζ_n)` together with its reduction data.
#[derive(Debug)]
pub struct CycField {
    n: u64,
    phi: CycPoly,
    degree: usize,
    // nonzero (i, c) with c the coefficient of x^i in Φ_n, i < degree
    tail: Vec<(usize, i64)>,
}

impl CycField {
    pub fn new(n: u64) -> Result<Arc<Self>, CycError> {
        Self::with_bound(n, DEFAULT_MAX_CONDUCTOR)
    }

    pub fn with_bound(n: u64, bound: u64) -> Result<Arc<Self>, CycError> {
        let phi = cyclotomic_poly_bounded(n, bound)?;
        let degree = phi.degree();
        let tail = phi.coeffs()[..degree]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        Ok(Arc::new(CycField {
            n,
            phi,
            degree,
            tail,
        }))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// `φ(n)`, the number of stored coefficients.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &CycPoly {
        &self.phi
    }

    /// Reduces a wide polynomial in place modulo `Φ_n`, keeping `degree` terms.
    /// Returns `false` on `i128` overflow, leaving `wide` unspecified.
    fn reduce_wide(&self, wide: &mut Vec<i128>) -> bool {
        let d = self.degree;
        for k in (d..wide.len()).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            for &(i, phi_i) in &self.tail {
                let idx = k - d + i;
                match c
                    .checked_mul(phi_i as i128)
                    .and_then(|s| wide[idx].checked_sub(s))
                {
                    Some(v) => wide[idx] = v,
                    None => return false,
                }
            }
        }
        wide.truncate(d);
        wide.resize(d, 0);
        true
    }

    fn reduce_big(&self, wide: &mut Vec<BigInt>) {
        let d = self.degree;
        for k in (d..wide.len()).rev() {
            if wide[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut wide[k]);
            for &(i, phi_i) in &self.tail {
                wide[k - d + i] -= &c * phi_i;
            }
        }
        wide.truncate(d);
        wide.resize(d, BigInt::zero());
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // invariant: every entry and den lie in (i64::MIN, i64::MAX]
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of `Q(ζ_n)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    repr: Repr,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.repr == other.repr
    }
}

impl Eq for CycNum {}

fn fits_i64(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

fn bits(v: u128) -> u32 {
    128 - v.leading_zeros()
}

fn normalize_wide(mut num: Vec<i128>, mut den: i128) -> Result<Repr, ()> {
    debug_assert!(den != 0);
    if den < 0 {
        den = den.checked_neg().ok_or(())?;
        for v in num.iter_mut() {
            *v = v.checked_neg().ok_or(())?;
        }
    }
    if num.iter().all(|&v| v == 0) {
        return Ok(Repr::Small {
            num: vec![0; num.len()],
            den: 1,
        });
    }
    if den != 1 {
        let mut g = den;
        for &v in &num {
            if v != 0 {
                g = g.gcd(&v);
                if g == 1 {
                    break;
                }
            }
        }
        if g > 1 {
            den /= g;
            for v in num.iter_mut() {
                *v /= g;
            }
        }
    }
    if fits_i64(den) && num.iter().all(|&v| fits_i64(v)) {
        Ok(Repr::Small {
            num: num.into_iter().map(|v| v as i64).collect(),
            den: den as i64,
        })
    } else {
        Ok(Repr::Big {
            num: num.into_iter().map(BigInt::from).collect(),
            den: BigInt::from(den),
        })
    }
}

fn normalize_big(mut num: Vec<BigInt>, mut den: BigInt) -> Repr {
    debug_assert!(!den.is_zero());
    if den.is_negative() {
        den = -den;
        for v in num.iter_mut() {
            *v = -std::mem::take(v);
        }
    }
    if num.iter().all(Zero::is_zero) {
        return Repr::Small {
            num: vec![0; num.len()],
            den: 1,
        };
    }
    if !den.is_one() {
        let mut g = den.clone();
        for v in &num {
            if !v.is_zero() {
                g = g.gcd(v);
                if g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() {
            den /= &g;
            for v in num.iter_mut() {
                *v /= &g;
            }
        }
    }
    let small_den = den.to_i64().filter(|&d| d != i64::MIN);
    let small_num: Option<Vec<i64>> = num
        .iter()
        .map(|v| v.to_i64().filter(|&x| x != i64::MIN))
        .collect();
    match (small_num, small_den) {
        (Some(num), Some(den)) => Repr::Small { num, den },
        _ => Repr::Big { num, den },
    }
}

impl Repr {
    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Repr::Small { num, den } => (
                num.iter().map(|&v| BigInt::from(v)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }
}

impl CycNum {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNum {
            field: field.clone(),
            repr: Repr::Small {
                num: vec![0; field.degree],
                den: 1,
            },
        }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycField>, c: i64) -> Self {
        Self::from_ratio(field, c, 1)
    }

    /// `num / den` as a rational element. Panics on a zero denominator.
    pub fn from_ratio(field: &Arc<CycField>, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut wide = vec![0i128; field.degree];
        wide[0] = num as i128;
        let repr = normalize_wide(wide, den as i128).expect("i64 inputs cannot overflow");
        CycNum {
            field: field.clone(),
            repr,
        }
    }

    pub fn from_rational(field: &Arc<CycField>, r: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree];
        num[0] = r.numer().clone();
        CycNum {
            field: field.clone(),
            repr: normalize_big(num, r.denom().clone()),
        }
    }

    /// `ζ_n^e`, with `e` reduced mod `n`.
    pub fn zeta_pow(field: &Arc<CycField>, e: i64) -> Self {
        Self::one(field).mul_zeta_pow(e)
    }

    /// Builds `Σ_e counts[e] ζ_n^e` from a histogram of exponents.
    pub fn from_exponent_counts(field: &Arc<CycField>, counts: &[i64]) -> Self {
        assert_eq!(
            counts.len() as u64,
            field.n,
            "histogram must have one bin per exponent"
        );
        let mut wide: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        if field.reduce_wide(&mut wide) {
            CycNum {
                field: field.clone(),
                repr: normalize_wide(wide, 1).expect("den 1"),
            }
        } else {
            let mut big: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
            field.reduce_big(&mut big);
            CycNum {
                field: field.clone(),
                repr: normalize_big(big, BigInt::one()),
            }
        }
    }

    /// Canonicalizes an arbitrary polynomial in `ζ_n` over a nonzero denominator.
    /// The polynomial may have any length; it is first folded mod `x^n - 1`.
    pub fn from_parts(
        field: &Arc<CycField>,
        num: &[BigInt],
        den: &BigInt,
    ) -> Result<Self, CycError> {
        if den.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let n = field.n as usize;
        let mut wide = vec![BigInt::zero(); n.max(field.degree)];
        for (i, c) in num.iter().enumerate() {
            wide[i % n] += c;
        }
        field.reduce_big(&mut wide);
        Ok(CycNum {
            field: field.clone(),
            repr: normalize_big(wide, den.clone()),
        })
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    /// Numerator coefficients of `ζ_n^0, …, ζ_n^{φ(n)-1}`.
    pub fn numerators(&self) -> Vec<BigInt> {
        self.repr.to_big().0
    }

    pub fn denominator(&self) -> BigInt {
        self.repr.to_big().1
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&v| v == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => {
                *den == 1 && num[0] == 1 && num[1..].iter().all(|&v| v == 0)
            }
            Repr::Big { .. } => false,
        }
    }

    fn with_repr(&self, repr: Repr) -> Self {
        CycNum {
            field: self.field.clone(),
            repr,
        }
    }

    fn check(&self, other: &Self) -> Result<(), CycError> {
        if self.field.n != other.field.n {
            return Err(CycError::ConductorMismatch(self.field.n, other.field.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self.add_same(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self.add_same(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        Ok(self.mul_same(other))
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let sign: i128 = if negate { -1 } else { 1 };
            let (da, db) = (*da as i128, *db as i128);
            let (la, lb, den) = if da == db {
                (1, 1, da)
            } else {
                let g = da.gcd(&db);
                (db / g, da / g, da / g * db)
            };
            // |a*la| < 2^126 so the sum cannot overflow i128
            let num = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| x as i128 * la + sign * (y as i128 * lb))
                .collect();
            if let Ok(repr) = normalize_wide(num, den) {
                return self.with_repr(repr);
            }
        }
        let (a, da) = self.repr.to_big();
        let (b, db) = other.repr.to_big();
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| {
                let l = x * &db;
                let r = y * &da;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        self.with_repr(normalize_big(num, da * db))
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.field.degree;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let max_a = a.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
            let max_b = b.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
            if max_a == 0 || max_b == 0 {
                return Self::zero(&self.field);
            }
            if bits(max_a) + bits(max_b) + bits(d as u128) <= 126 {
                let mut wide = vec![0i128; 2 * d - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let x = x as i128;
                    for (w, &y) in wide[i..i + d].iter_mut().zip(b) {
                        *w += x * y as i128;
                    }
                }
                if self.field.reduce_wide(&mut wide) {
                    if let Ok(repr) = normalize_wide(wide, *da as i128 * *db as i128) {
                        return self.with_repr(repr);
                    }
                }
            }
        }
        let (a, da) = self.repr.to_big();
        let (b, db) = other.repr.to_big();
        let mut wide = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                wide[i + j] += x * y;
            }
        }
        self.field.reduce_big(&mut wide);
        self.with_repr(normalize_big(wide, da * db))
    }

    /// Multiplies by `ζ_n^e`.
    pub fn mul_zeta_pow(&self, e: i64) -> Self {
        let n = self.field.n as usize;
        let shift = e.rem_euclid(n as i64) as usize;
        if shift == 0 {
            return self.clone();
        }
        let d = self.field.degree;
        let size = n.max(d);
        match &self.repr {
            Repr::Small { num, den } => {
                let mut wide = vec![0i128; size];
                for (i, &c) in num.iter().enumerate() {
                    wide[(i + shift) % n] += c as i128;
                }
                if self.field.reduce_wide(&mut wide) {
                    if let Ok(repr) = normalize_wide(wide, *den as i128) {
                        return self.with_repr(repr);
                    }
                }
            }
            Repr::Big { .. } => {}
        }
        let (num, den) = self.repr.to_big();
        let mut wide = vec![BigInt::zero(); size];
        for (i, c) in num.into_iter().enumerate() {
            wide[(i + shift) % n] += c;
        }
        self.field.reduce_big(&mut wide);
        self.with_repr(normalize_big(wide, den))
    }

    pub fn scale(&self, c: i64) -> Self {
        self.mul_ratio(c, 1)
    }

    /// Multiplies by the rational `num / den`. Panics on a zero denominator.
    pub fn mul_ratio(&self, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if let Repr::Small { num: a, den: da } = &self.repr {
            let wide = a.iter().map(|&x| x as i128 * num as i128).collect();
            if let Ok(repr) = normalize_wide(wide, *da as i128 * den as i128) {
                return self.with_repr(repr);
            }
        }
        let (a, da) = self.repr.to_big();
        let wide = a.into_iter().map(|x| x * num).collect();
        self.with_repr(normalize_big(wide, da * den))
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm for the
    /// numerator polynomial and `Φ_n` over `Q`.
    pub fn inverse(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let (num, den) = self.repr.to_big();
        let phi: Vec<BigRational> = self
            .field
            .phi
            .coeffs()
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a: Vec<BigRational> = num.into_iter().map(BigRational::from_integer).collect();
        let s = qpoly::inverse_mod(&a, &phi).ok_or(CycError::DivisionByZero)?;
        // inverse of num/den is den * s
        let lcm = s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = s
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()) * &den)
            .collect();
        Self::from_parts(&self.field, &ints, &lcm)
    }

    /// Embeds `Q(ζ_m)` into `Q(ζ_n)` for `m | n` via `ζ_m ↦ ζ_n^{n/m}`.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<Self, CycError> {
        let (m, n) = (self.field.n, target.n);
        if n % m != 0 {
            return Err(CycError::NotDivisible(m, n));
        }
        let step = (n / m) as usize;
        let (num, den) = self.repr.to_big();
        let mut wide = vec![BigInt::zero(); (n as usize).max(target.degree)];
        for (i, c) in num.into_iter().enumerate() {
            wide[i * step] += c;
        }
        target.reduce_big(&mut wide);
        Ok(CycNum {
            field: target.clone(),
            repr: normalize_big(wide, den),
        })
    }

    /// The value as a rational, when every non-constant coefficient vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        let (num, den) = self.repr.to_big();
        if num[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BigRational::new(num[0].clone(), den))
    }

    /// `[c0, c1, …] / den`, the coefficient-vector rendering used in reports.
    pub fn coefficient_string(&self) -> String {
        let (num, den) = self.repr.to_big();
        let body: Vec<String> = num.iter().map(|c| c.to_string()).collect();
        if den.is_one() {
            format!("[{}]", body.join(", "))
        } else {
            format!("[{}] / {}", body.join(", "), den)
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CycNum(n={}, {})",
            self.field.n,
            self.coefficient_string()
        )
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let (num, den) = self.repr.to_big();
        let mut terms = Vec::new();
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", i),
            };
            let term = match (c.to_i64(), i) {
                (_, 0) => c.to_string(),
                (Some(1), _) => mono,
                (Some(-1), _) => format!("-{}", mono),
                _ => format!("{}*{}", c, mono),
            };
            terms.push(term);
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if den.is_one() {
            write!(f, "{}", body)
        } else {
            write!(f, "({}) / {}", body, den)
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.scale(-1)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            /// Panics when the conductors differ; use the `try_` form to handle that case.
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs)
                    .expect("cyclotomic operands must share a conductor")
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

/// Accumulates `Σ v_i ζ_n^{e_i}` without reducing each term separately.
///
/// Integral small terms are added, rotated, into a length-`n` buffer modulo
/// `x^n - 1`; the buffer is reduced by `Φ_n` once in [`RotatingSum::finish`].
pub struct RotatingSum {
    field: Arc<CycField>,
    wide: Vec<i128>,
    // upper bound on |wide[i]|
    bound: u128,
    spill: Option<CycNum>,
}

const ROTATING_LIMIT: u128 = 1 << 120;

impl RotatingSum {
    pub fn new(field: &Arc<CycField>) -> Self {
        RotatingSum {
            field: field.clone(),
            wide: vec![0; (field.n as usize).max(field.degree)],
            bound: 0,
            spill: None,
        }
    }

    pub fn add_rotated(&mut self, v: &CycNum, e: i64) {
        if let Repr::Small { num, den: 1 } = &v.repr {
            let n = self.field.n as usize;
            let shift = e.rem_euclid(n as i64) as usize;
            let m = num.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u128;
            if self.bound + m > ROTATING_LIMIT {
                self.flush();
            }
            self.bound += m;
            for (i, &c) in num.iter().enumerate() {
                self.wide[(i + shift) % n] += c as i128;
            }
            return;
        }
        self.push_spill(v.mul_zeta_pow(e));
    }

    fn push_spill(&mut self, v: CycNum) {
        self.spill = Some(match self.spill.take() {
            Some(s) => &s + &v,
            None => v,
        });
    }

    fn flush(&mut self) {
        let size = self.wide.len();
        let buf = std::mem::replace(&mut self.wide, vec![0; size]);
        self.bound = 0;
        let num: Vec<BigInt> = buf.into_iter().map(BigInt::from).collect();
        let v = CycNum::from_parts(&self.field, &num, &BigInt::one()).expect("den 1");
        self.push_spill(v);
    }

    pub fn finish(mut self) -> CycNum {
        let mut wide = self.wide.clone();
        let main = if self.field.reduce_wide(&mut wide) {
            CycNum {
                field: self.field.clone(),
                repr: normalize_wide(wide, 1).expect("den 1"),
            }
        } else {
            let num: Vec<BigInt> = std::mem::take(&mut self.wide)
                .into_iter()
                .map(BigInt::from)
                .collect();
            CycNum::from_parts(&self.field, &num, &BigInt::one()).expect("den 1")
        };
        match self.spill {
            Some(s) => &main + &s,
            None => main,
        }
    }
}

mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(a: &mut Vec<BigRational>) {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
    }

    fn sub_scaled(
        a: &[BigRational],
        b: &[BigRational],
        c: &BigRational,
        shift: usize,
    ) -> Vec<BigRational> {
        let n = a.len().max(b.len() + shift);
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] = x.clone();
        }
        for (i, y) in b.iter().enumerate() {
            out[i + shift] -= c * y;
        }
        trim(&mut out);
        out
    }

    /// `s` with `s * a ≡ 1 (mod f)`, or `None` when `gcd(a, f) ≠ 1`.
    pub fn inverse_mod(a: &[BigRational], f: &[BigRational]) -> Option<Vec<BigRational>> {
        let mut r0 = f.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        while r1.len() > 1 {
            // r0 = q*r1 + r; s = s0 - q*s1
            let mut r = r0.clone();
            let mut s = s0.clone();
            let lead = r1.last().unwrap().clone();
            while r.len() >= r1.len() {
                let shift = r.len() - r1.len();
                let c = r.last().unwrap() / &lead;
                r = sub_scaled(&r, &r1, &c, shift);
                s = sub_scaled(&s, &s1, &c, shift);
            }
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return None;
        }
        let c = r1[0].clone();
        let mut out: Vec<BigRational> = s1.into_iter().map(|x| x / &c).collect();
        trim(&mut out);
        if out.is_empty() {
            return None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u64) -> Arc<CycField> {
        CycField::new(n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap().coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(6).unwrap().coeffs(), &[1, -1, 1]);
        assert_eq!(cyclotomic_poly(0), Err(CycError::ZeroConductor));
        assert!(matches!(
            cyclotomic_poly(1 << 20),
            Err(CycError::BoundExceeded(..))
        ));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=200u64 {
            let mut prod = vec![BigInt::one()];
            for d in divisors(n) {
                let phi = cyclotomic_poly(d).unwrap();
                let mut next = vec![BigInt::zero(); prod.len() + phi.degree()];
                for (i, a) in prod.iter().enumerate() {
                    for (j, &b) in phi.coeffs().iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn zeta_powers_reduce() {
        let f4 = field(4);
        assert_eq!(CycNum::zeta_pow(&f4, 2), CycNum::from_int(&f4, -1));
        let f6 = field(6);
        assert_eq!(CycNum::zeta_pow(&f6, 3), CycNum::from_int(&f6, -1));
        let f5 = field(5);
        let z4 = CycNum::zeta_pow(&f5, 4);
        assert_eq!(z4.numerators(), ints(&[-1, -1, -1, -1]));
        assert_eq!(CycNum::zeta_pow(&f5, -1), z4);
    }

    #[test]
    fn ring_operations() {
        let f6 = field(6);
        let z = CycNum::zeta_pow(&f6, 1);
        let z5 = CycNum::zeta_pow(&f6, 5);
        assert!((&z * &z5).is_one());
        let x = CycNum::from_parts(&f6, &ints(&[3, -7]), &BigInt::from(4)).unwrap();
        assert!((&x + &(-&x)).is_zero());
        let f5 = field(5);
        assert_eq!(
            CycNum::one(&f6).try_add(&CycNum::one(&f5)),
            Err(CycError::ConductorMismatch(6, 5))
        );
    }

    #[test]
    fn inversion() {
        let f12 = field(12);
        let m1 = CycNum::from_int(&f12, -1);
        assert_eq!(m1.inverse().unwrap(), m1);
        for e in 0..12 {
            assert_eq!(
                CycNum::zeta_pow(&f12, e).inverse().unwrap(),
                CycNum::zeta_pow(&f12, 12 - e)
            );
        }
        assert_eq!(CycNum::zero(&f12).inverse(), Err(CycError::DivisionByZero));
        let x = CycNum::from_parts(&f12, &ints(&[2, 0, 5, -1]), &BigInt::from(3)).unwrap();
        assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn embedding() {
        let f2 = field(2);
        let f6 = field(6);
        let f3 = field(3);
        assert_eq!(
            CycNum::from_int(&f2, -1).embed(&f6).unwrap(),
            CycNum::from_int(&f6, -1)
        );
        assert_eq!(
            CycNum::zeta_pow(&f3, 1).embed(&f6).unwrap(),
            CycNum::zeta_pow(&f6, 2)
        );
        let r = CycNum::from_ratio(&f3, -7, 5);
        assert_eq!(r.embed(&f6).unwrap().to_rational(), r.to_rational());
        assert_eq!(r.embed(&field(4)), Err(CycError::NotDivisible(3, 4)));
    }

    #[test]
    fn rational_extraction() {
        let f4 = field(4);
        assert_eq!(
            CycNum::from_int(&f4, -1).to_rational(),
            Some(BigRational::from_integer(BigInt::from(-1)))
        );
        assert_eq!(CycNum::zeta_pow(&f4, 1).to_rational(), None);
    }

    #[test]
    fn big_fallback_matches_small_path() {
        let f7 = field(7);
        let big = CycNum::from_parts(&f7, &ints(&[i64::MAX, 3, -5]), &BigInt::one()).unwrap();
        let sq = &big * &big;
        // (M + 3z - 5z^2)^2 computed by hand in BigInt
        let m = BigInt::from(i64::MAX);
        let expect = CycNum::from_parts(
            &f7,
            &[
                &m * &m,
                &m * 6,
                &m * -10 + 9,
                BigInt::from(-30),
                BigInt::from(25),
            ],
            &BigInt::one(),
        )
        .unwrap();
        assert_eq!(sq, expect);
        let back = &sq * &big.inverse().unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn rotating_sum_matches_direct_sum() {
        let f = field(24);
        let a = CycNum::from_parts(&f, &ints(&[1, 2, 3, -4, 5]), &BigInt::one()).unwrap();
        let b = CycNum::from_parts(&f, &ints(&[0, -2, 0, 7]), &BigInt::from(3)).unwrap();
        let mut acc = RotatingSum::new(&f);
        acc.add_rotated(&a, 5);
        acc.add_rotated(&b, 17);
        acc.add_rotated(&a, -3);
        let direct = a.mul_zeta_pow(5) + b.mul_zeta_pow(17) + a.mul_zeta_pow(-3);
        assert_eq!(acc.finish(), direct);
    }
}
