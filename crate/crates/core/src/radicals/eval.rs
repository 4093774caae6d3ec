//! Certified evaluation of radical expressions.
//!
//! Values are bracketed by outward-rounded intervals of scaled integers:
//! at working scale `w`, an interval is a pair `lo ≤ hi` of big integers
//! standing for `[lo/10^w, hi/10^w]`, and every operation rounds its lower
//! endpoint down and its upper endpoint up. The exact value of a subtree is
//! therefore always inside its interval, and any sign or comparison decided
//! through a bracket is a certificate, not a heuristic.
//!
//! Evaluation starts at `max(64, 2·digits)` working digits and doubles the
//! scale until the requested radius is met, giving up at 2^20 digits.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use thiserror::Error;

use super::RadicalExpr;

/// Hard ceiling on the working scale, in decimal digits.
const SCALE_CAP: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// A divisor interval still contained zero at the maximum working scale.
    #[error("division by an interval containing zero after precision escalation")]
    DivisionByZero,
    /// A radicand was certified negative; the expression has no real value.
    #[error("square root of a certifiably negative value")]
    NegativeRadicand,
    /// A radicand interval still straddled zero at the maximum working scale.
    #[error("square root radicand not certifiably nonnegative at final precision")]
    SqrtIndeterminate,
    /// The requested radius was not reached at the maximum working scale.
    #[error("requested precision not reachable within the working-scale cap")]
    PrecisionExhausted,
}

/// An exact decimal number `mantissa · 10^exp10`.
#[derive(Debug, Clone)]
pub struct Decimal {
    mantissa: BigInt,
    exp10: i64,
}

impl Decimal {
    pub fn new(mantissa: BigInt, exp10: i64) -> Self {
        let mut d = Decimal { mantissa, exp10 };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Decimal {
            mantissa: BigInt::zero(),
            exp10: 0,
        }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp10 = 0;
            return;
        }
        let ten = BigInt::from(10);
        while (&self.mantissa % &ten).is_zero() {
            self.mantissa /= &ten;
            self.exp10 += 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Decimal {
        Decimal {
            mantissa: self.mantissa.abs(),
            exp10: self.exp10,
        }
    }

    /// Aligns two decimals to a common exponent.
    fn aligned(&self, other: &Decimal) -> (BigInt, BigInt, i64) {
        let e = self.exp10.min(other.exp10);
        let scale = |d: &Decimal| -> BigInt {
            let shift = (d.exp10 - e) as u32;
            &d.mantissa * BigInt::from(10u32).pow(shift)
        };
        (scale(self), scale(other), e)
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let (a, b, e) = self.aligned(other);
        Decimal::new(a + b, e)
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        let (a, b, e) = self.aligned(other);
        Decimal::new(a - b, e)
    }

    /// True iff `|self| ≤ 10^k`.
    pub fn abs_le_pow10(&self, k: i64) -> bool {
        let m = self.mantissa.abs();
        if m.is_zero() {
            return true;
        }
        if self.exp10 >= k {
            let shift = (self.exp10 - k) as u32;
            m * BigInt::from(10u32).pow(shift) <= BigInt::one()
        } else {
            let shift = (k - self.exp10) as u32;
            m <= BigInt::from(10u32).pow(shift)
        }
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp10 >= 0 {
            let num = &self.mantissa * BigInt::from(10u32).pow(self.exp10 as u32);
            BigRational::from_integer(num)
        } else {
            let den = BigInt::from(10u32).pow((-self.exp10) as u32);
            BigRational::new(self.mantissa.clone(), den)
        }
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Decimal {}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return write!(f, "0");
        }
        if self.mantissa.is_negative() {
            write!(f, "-")?;
        }
        let digits = self.mantissa.abs().to_string();
        if self.exp10 >= 0 {
            write!(f, "{digits}")?;
            for _ in 0..self.exp10 {
                write!(f, "0")?;
            }
            return Ok(());
        }
        let frac_len = (-self.exp10) as usize;
        if digits.len() > frac_len {
            let split = digits.len() - frac_len;
            write!(f, "{}.{}", &digits[..split], &digits[split..])
        } else {
            write!(f, "0.")?;
            for _ in 0..(frac_len - digits.len()) {
                write!(f, "0")?;
            }
            write!(f, "{digits}")
        }
    }
}

/// A certified bracket: the represented real lies within
/// `[midpoint − radius, midpoint + radius]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedDecimal {
    midpoint: Decimal,
    radius: Decimal,
}

impl CertifiedDecimal {
    pub(crate) fn from_parts(midpoint: Decimal, radius: Decimal) -> Self {
        debug_assert!(!radius.is_negative());
        CertifiedDecimal { midpoint, radius }
    }

    pub fn midpoint(&self) -> &Decimal {
        &self.midpoint
    }

    pub fn radius(&self) -> &Decimal {
        &self.radius
    }

    pub fn lower_bound(&self) -> Decimal {
        self.midpoint.sub(&self.radius)
    }

    pub fn upper_bound(&self) -> Decimal {
        self.midpoint.add(&self.radius)
    }

    /// A certified bound on the absolute value: `|mid| + radius`.
    pub fn abs_upper_bound(&self) -> Decimal {
        self.midpoint.abs().add(&self.radius)
    }

    /// The sign of the bracketed value, when the bracket decides it.
    ///
    /// `Some(Equal)` only for the exact zero bracket; `None` when the
    /// bracket straddles zero.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if self.midpoint.is_zero() && self.radius.is_zero() {
            return Some(Ordering::Equal);
        }
        if self.midpoint.abs() > self.radius {
            Some(if self.midpoint.is_negative() {
                Ordering::Less
            } else {
                Ordering::Greater
            })
        } else {
            None
        }
    }

    /// True iff the two brackets share no point.
    pub fn disjoint_from(&self, other: &CertifiedDecimal) -> bool {
        self.upper_bound() < other.lower_bound() || other.upper_bound() < self.lower_bound()
    }

    pub fn overlaps(&self, other: &CertifiedDecimal) -> bool {
        !self.disjoint_from(other)
    }

    /// `|mid_self − mid_other|`.
    pub fn abs_midpoint_diff(&self, other: &CertifiedDecimal) -> Decimal {
        self.midpoint.sub(&other.midpoint).abs()
    }

    /// True iff the exact rational lies inside the bracket.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let diff = (q - self.midpoint.to_rational()).abs();
        diff <= self.radius.to_rational()
    }
}

impl fmt::Display for CertifiedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.midpoint, self.radius)
    }
}

// ---- interval arithmetic at a fixed working scale ----

#[derive(Clone)]
struct Iv {
    lo: BigInt,
    hi: BigInt,
}

enum PassError {
    DivisorStraddlesZero,
    NegativeRadicand,
    RadicandStraddlesZero,
}

struct Ctx {
    pow: BigInt, // 10^scale
}

impl Ctx {
    fn constant(&self, q: &BigRational) -> Iv {
        let scaled = q.numer() * &self.pow;
        Iv {
            lo: scaled.div_floor(q.denom()),
            hi: scaled.div_ceil(q.denom()),
        }
    }

    fn add(&self, a: &Iv, b: &Iv) -> Iv {
        Iv {
            lo: &a.lo + &b.lo,
            hi: &a.hi + &b.hi,
        }
    }

    fn sub(&self, a: &Iv, b: &Iv) -> Iv {
        Iv {
            lo: &a.lo - &b.hi,
            hi: &a.hi - &b.lo,
        }
    }

    fn mul(&self, a: &Iv, b: &Iv) -> Iv {
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = products.iter().min().unwrap();
        let hi = products.iter().max().unwrap();
        Iv {
            lo: lo.div_floor(&self.pow),
            hi: hi.div_ceil(&self.pow),
        }
    }

    fn div(&self, a: &Iv, b: &Iv) -> Result<Iv, PassError> {
        if !(b.lo.is_positive() || b.hi.is_negative()) {
            return Err(PassError::DivisorStraddlesZero);
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for x in [&a.lo, &a.hi] {
            let scaled = x * &self.pow;
            for y in [&b.lo, &b.hi] {
                let down = scaled.div_floor(y);
                let up = scaled.div_ceil(y);
                lo = Some(match lo {
                    Some(cur) => cur.min(down),
                    None => down,
                });
                hi = Some(match hi {
                    Some(cur) => cur.max(up),
                    None => up,
                });
            }
        }
        Ok(Iv {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        })
    }

    fn sqrt(&self, a: &Iv) -> Result<Iv, PassError> {
        if a.hi.is_negative() {
            return Err(PassError::NegativeRadicand);
        }
        if a.lo.is_negative() {
            return Err(PassError::RadicandStraddlesZero);
        }
        let lo_scaled = &a.lo * &self.pow;
        let hi_scaled = &a.hi * &self.pow;
        let lo = lo_scaled.sqrt();
        let hi_root = hi_scaled.sqrt();
        let hi = if &hi_root * &hi_root == hi_scaled {
            hi_root
        } else {
            hi_root + 1
        };
        Ok(Iv { lo, hi })
    }
}

fn eval_pass(
    expr: &RadicalExpr,
    ctx: &Ctx,
    memo: &mut BTreeMap<usize, Iv>,
) -> Result<Iv, PassError> {
    let key = expr as *const RadicalExpr as usize;
    if let Some(iv) = memo.get(&key) {
        return Ok(iv.clone());
    }
    let iv = match expr {
        RadicalExpr::Const(q) => ctx.constant(q),
        RadicalExpr::Add(l, r) => {
            let (a, b) = (eval_pass(l, ctx, memo)?, eval_pass(r, ctx, memo)?);
            ctx.add(&a, &b)
        }
        RadicalExpr::Sub(l, r) => {
            let (a, b) = (eval_pass(l, ctx, memo)?, eval_pass(r, ctx, memo)?);
            ctx.sub(&a, &b)
        }
        RadicalExpr::Mul(l, r) => {
            let (a, b) = (eval_pass(l, ctx, memo)?, eval_pass(r, ctx, memo)?);
            ctx.mul(&a, &b)
        }
        RadicalExpr::Div(l, r) => {
            let (a, b) = (eval_pass(l, ctx, memo)?, eval_pass(r, ctx, memo)?);
            ctx.div(&a, &b)?
        }
        RadicalExpr::Sqrt(c) => {
            let a = eval_pass(c, ctx, memo)?;
            ctx.sqrt(&a)?
        }
    };
    memo.insert(key, iv.clone());
    Ok(iv)
}

pub(crate) fn certify_interval(lo: &BigInt, hi: &BigInt, scale: u32) -> CertifiedDecimal {
    debug_assert!(lo <= hi);
    let exp = -(scale as i64) - 1;
    let mid = Decimal::new(BigInt::from(5) * (lo + hi), exp);
    let rad = Decimal::new(BigInt::from(5) * (hi - lo), exp);
    CertifiedDecimal::from_parts(mid, rad)
}

/// Evaluates an expression to a certified bracket of radius at most
/// `10^(−digits)`.
///
/// Shared subtrees are evaluated once per pass. The working scale starts at
/// `max(64, 2·digits)` decimal digits and doubles until the radius target is
/// met; a divisor interval containing zero or a sign-indeterminate radicand
/// also trigger escalation, and only become errors at the scale cap.
pub fn evaluate(expr: &RadicalExpr, digits: u32) -> Result<CertifiedDecimal, EvalError> {
    evaluate_capped(expr, digits, SCALE_CAP)
}

fn evaluate_capped(
    expr: &RadicalExpr,
    digits: u32,
    cap: u32,
) -> Result<CertifiedDecimal, EvalError> {
    assert!(digits >= 1, "evaluate: digits must be at least 1");
    let mut scale: u32 = 64u32.max(digits.saturating_mul(2)).min(cap);
    loop {
        let ctx = Ctx {
            pow: BigInt::from(10u32).pow(scale),
        };
        let mut memo = BTreeMap::new();
        let outcome = eval_pass(expr, &ctx, &mut memo);
        match outcome {
            Ok(iv) => {
                let width = &iv.hi - &iv.lo;
                let target = if scale >= digits {
                    BigInt::from(2) * BigInt::from(10u32).pow(scale - digits)
                } else {
                    BigInt::zero()
                };
                if width <= target {
                    return Ok(certify_interval(&iv.lo, &iv.hi, scale));
                }
                if scale == cap {
                    return Err(EvalError::PrecisionExhausted);
                }
            }
            Err(PassError::NegativeRadicand) => return Err(EvalError::NegativeRadicand),
            Err(PassError::DivisorStraddlesZero) => {
                if scale == cap {
                    return Err(EvalError::DivisionByZero);
                }
            }
            Err(PassError::RadicandStraddlesZero) => {
                if scale == cap {
                    return Err(EvalError::SqrtIndeterminate);
                }
            }
        }
        scale = scale.saturating_mul(2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::radicals::{Expr, RadicalExpr as E};
    use alloc::rc::Rc;
    use alloc::string::ToString;

    fn parse_decimal(s: &str) -> BigRational {
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        let joined = alloc::format!("{int_part}{frac_part}");
        let num: BigInt = joined.parse().unwrap();
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        BigRational::new(num, den)
    }

    fn pow10_inv(d: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10u32).pow(d))
    }

    // a Sqrt node without the constructor's folding, to exercise the
    // evaluator's own checks
    fn raw_sqrt(child: &Expr) -> Expr {
        Rc::new(E::Sqrt(child.clone()))
    }

    #[test]
    fn exact_rational_is_exact() {
        let half = E::rational(rational(1, 2));
        let v = evaluate(&half, 10).unwrap();
        assert!(v.radius().is_zero());
        assert_eq!(v.midpoint().to_string(), "0.5");
    }

    #[test]
    fn sqrt_two_to_twenty_digits() {
        let e = E::sqrt(&E::integer(2));
        let v = evaluate(&e, 20).unwrap();
        assert!(v.radius().abs_le_pow10(-20));
        // frozen independently
        let reference = parse_decimal("1.41421356237309504880168872420969807857");
        let diff = (reference - v.midpoint().to_rational()).abs();
        assert!(diff <= BigRational::from_integer(2.into()) * pow10_inv(20));
    }

    #[test]
    fn pentagon_closed_form() {
        // (√5 − 1)/4 = cos(2π/5)
        let e = E::div(
            &E::sub(&E::sqrt(&E::integer(5)), &E::integer(1)),
            &E::integer(4),
        );
        let v = evaluate(&e, 15).unwrap();
        let reference = parse_decimal("0.309016994374947424102293417182819");
        let diff = (reference - v.midpoint().to_rational()).abs();
        assert!(diff <= BigRational::from_integer(2.into()) * pow10_inv(15));
    }

    #[test]
    fn division_by_interval_zero_is_an_error() {
        // 1 / (√2·√2 − 2): the divisor is exactly zero but never folds.
        // A reduced cap keeps the futile escalation cheap.
        let s2 = E::sqrt(&E::integer(2));
        let zero = E::sub(&E::mul(&s2, &s2), &E::integer(2));
        let e = E::div(&E::integer(1), &zero);
        assert_eq!(evaluate_capped(&e, 5, 1024), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn provably_negative_radicand_is_an_error() {
        // √(√2 − 2): radicand ≈ −0.586, certifiably negative
        let s2 = E::sqrt(&E::integer(2));
        let neg = E::sub(&s2, &E::integer(2));
        assert_eq!(
            evaluate(&raw_sqrt(&neg), 5),
            Err(EvalError::NegativeRadicand)
        );
    }

    #[test]
    fn sqrt_of_exact_zero_interval_is_indeterminate() {
        // √(√2·√2 − 2): the radicand is exactly zero but its interval can
        // never certify a sign, so escalation must end in an error
        let s2 = E::sqrt(&E::integer(2));
        let zero = E::sub(&E::mul(&s2, &s2), &E::integer(2));
        let result = evaluate_capped(&raw_sqrt(&zero), 1, 1024);
        assert_eq!(result, Err(EvalError::SqrtIndeterminate));
    }

    #[test]
    fn perfect_square_brackets_the_root() {
        for (n, d) in [(2i64, 1i64), (3, 2), (7, 6)] {
            let q = rational(n, d);
            let square = &q * &q;
            let v = evaluate(&raw_sqrt(&E::rational(square)), 12).unwrap();
            assert!(v.contains_rational(&q));
        }
    }

    #[test]
    fn decimal_display() {
        assert_eq!(Decimal::new(BigInt::from(5), -1).to_string(), "0.5");
        assert_eq!(Decimal::new(BigInt::from(-25), -2).to_string(), "-0.25");
        assert_eq!(Decimal::new(BigInt::from(3), 2).to_string(), "300");
        assert_eq!(Decimal::new(BigInt::from(7), -4).to_string(), "0.0007");
        assert_eq!(Decimal::zero().to_string(), "0");
    }

    #[test]
    fn certified_sign_logic() {
        let exact_zero = CertifiedDecimal::from_parts(Decimal::zero(), Decimal::zero());
        assert_eq!(exact_zero.certified_sign(), Some(Ordering::Equal));

        let pos = CertifiedDecimal::from_parts(
            Decimal::new(BigInt::from(3), -1),
            Decimal::new(BigInt::from(1), -1),
        );
        assert_eq!(pos.certified_sign(), Some(Ordering::Greater));

        let straddling = CertifiedDecimal::from_parts(
            Decimal::new(BigInt::from(1), -2),
            Decimal::new(BigInt::from(5), -2),
        );
        assert_eq!(straddling.certified_sign(), None);
    }
}
