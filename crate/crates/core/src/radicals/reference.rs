//! Independent certified reference for `cos(2π·k/n)`.
//!
//! This is the oracle the radical evaluator is checked against, so it shares
//! no code with the interval machinery in `eval`: π comes from the Machin
//! identity `π = 16·atan(1/5) − 4·atan(1/239)` with exact floored partial
//! sums, and the cosine from its Maclaurin series with bracketed term
//! magnitudes. All arithmetic is plain big-integer work at a fixed scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::eval::{certify_interval, CertifiedDecimal};

fn pow10(scale: u32) -> BigInt {
    BigInt::from(10u32).pow(scale)
}

/// Partial sum of `atan(1/x)·10^scale` with an error bound in ulps.
///
/// Each partial quotient `floor(10^scale / x^(2j+1))` is exact because
/// repeated floor division composes exactly; dividing by `2j+1` is again a
/// single floor, so every term is off by less than one ulp.
fn atan_inv(x: u64, scale: u32) -> (BigInt, BigInt) {
    let xsq = BigInt::from(x) * BigInt::from(x);
    let mut p = pow10(scale) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    let mut terms = 0u64;
    while !p.is_zero() {
        let t = &p / BigInt::from(2 * j + 1);
        if t.is_zero() {
            break;
        }
        if j.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        terms += 1;
        j += 1;
        p /= &xsq;
    }
    // one ulp floor error per term, plus two for the truncated tail
    (sum, BigInt::from(terms + 2))
}

/// Bracket of `π·10^scale`.
fn pi_bracket(scale: u32) -> (BigInt, BigInt) {
    let (a, ea) = atan_inv(5, scale);
    let (b, eb) = atan_inv(239, scale);
    let mid = BigInt::from(16) * a - BigInt::from(4) * b;
    let err = BigInt::from(16) * ea + BigInt::from(4) * eb;
    (&mid - &err, mid + err)
}

/// Bracket of `cos(2π·num/den)·10^scale` given a bracket of `π·10^scale`.
fn cos_bracket(num: u64, den: u64, pi_lo: &BigInt, pi_hi: &BigInt, scale: u32) -> (BigInt, BigInt) {
    let pow = pow10(scale);
    let pow2 = &pow * &pow;
    let d = BigInt::from(den);
    // x = 2π·num/den, bracketed outward
    let x_lo = (BigInt::from(2 * num) * pi_lo).div_floor(&d);
    let x_hi = (BigInt::from(2 * num) * pi_hi).div_ceil(&d);
    debug_assert!(!x_lo.is_negative());
    let x2_lo = &x_lo * &x_lo;
    let x2_hi = &x_hi * &x_hi;

    // term magnitude bracket, starting from the constant term 1
    let mut t_lo = pow.clone();
    let mut t_hi = pow;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k = 0u64;
    loop {
        if k.is_multiple_of(2) {
            sum_lo += &t_lo;
            sum_hi += &t_hi;
        } else {
            sum_lo -= &t_hi;
            sum_hi -= &t_lo;
        }
        let divisor = &pow2 * BigInt::from((2 * k + 1) * (2 * k + 2));
        let next_lo = (&t_lo * &x2_lo).div_floor(&divisor);
        let next_hi = (&t_hi * &x2_hi).div_ceil(&divisor);
        k += 1;
        t_lo = next_lo;
        t_hi = next_hi;
        // once the term ratio is ≤ 1/2 and the magnitude is a few ulps, the
        // whole alternating tail is bounded by the current magnitude
        let next_divisor = &pow2 * BigInt::from((2 * k + 1) * (2 * k + 2));
        if BigInt::from(2) * &x2_hi <= next_divisor && t_hi <= BigInt::from(4) {
            let slack = &t_hi + BigInt::from(1);
            return (sum_lo - &slack, sum_hi + &slack);
        }
    }
}

/// `cos(2π/n)` as a certified bracket of radius at most `10^(−digits)`.
pub fn reference_cos(n: u64, digits: u32) -> CertifiedDecimal {
    assert!(n >= 1, "reference_cos: n must be at least 1");
    reference_cos_sum(n, &[1], digits)
}

/// Certified `Σ_k cos(2π·k/p)` over the given numerators: the value of a
/// sum of p-th roots of unity whose imaginary parts cancel.
pub fn reference_cos_sum(p: u64, numerators: &[u64], digits: u32) -> CertifiedDecimal {
    assert!(p >= 1 && digits >= 1);
    let mut scale = digits + 30;
    loop {
        let (pi_lo, pi_hi) = pi_bracket(scale);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for &k in numerators {
            let (clo, chi) = cos_bracket(k % p, p, &pi_lo, &pi_hi, scale);
            lo += clo;
            hi += chi;
        }
        let width = &hi - &lo;
        if width <= BigInt::from(2) * pow10(scale - digits) {
            return certify_interval(&lo, &hi, scale);
        }
        scale *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn parse_decimal(s: &str) -> BigRational {
        let neg = s.starts_with('-');
        let body = s.trim_start_matches('-');
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        let joined = alloc::format!("{int_part}{frac_part}");
        let num: BigInt = joined.parse().unwrap();
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let q = BigRational::new(num, den);
        if neg {
            -q
        } else {
            q
        }
    }

    #[test]
    fn simple_angles() {
        // cos(π/2) = 0 and cos(2π/3) = −1/2, within certified radius
        let v = reference_cos(4, 20);
        assert!(v.contains_rational(&BigRational::zero()));
        assert!(v.radius().abs_le_pow10(-20));

        let v = reference_cos(3, 20);
        assert!(v.contains_rational(&parse_decimal("-0.5")));

        let v = reference_cos(1, 20);
        assert!(v.contains_rational(&BigRational::from_integer(1.into())));

        let v = reference_cos(2, 20);
        assert!(v.contains_rational(&BigRational::from_integer((-1).into())));
    }

    #[test]
    fn pentagon_reference() {
        let v = reference_cos(5, 40);
        let frozen = parse_decimal(
            "0.3090169943749474241022934171828190588601545899028814310677243113526302",
        );
        let diff = (frozen - v.midpoint().to_rational()).abs();
        assert!(diff <= BigRational::new(2.into(), BigInt::from(10u32).pow(40)));
    }

    #[test]
    fn heptadecagon_reference() {
        let v = reference_cos(17, 60);
        let frozen = parse_decimal(
            "0.932472229404355804573115891821563386262587777945116928248350011860536",
        );
        let diff = (frozen - v.midpoint().to_rational()).abs();
        assert!(diff <= BigRational::new(2.into(), BigInt::from(10u32).pow(60)));
    }

    #[test]
    fn period_sum_matches_single_terms() {
        // additivity: one bracketed sum over {1,4} agrees with two single calls
        let sum = reference_cos_sum(5, &[1, 4], 30);
        let a = reference_cos_sum(5, &[1], 35);
        let b = reference_cos_sum(5, &[4], 35);
        let combined = a.midpoint().add(b.midpoint());
        let diff = sum.midpoint().sub(&combined).abs();
        assert!(diff.abs_le_pow10(-29));
    }
}
