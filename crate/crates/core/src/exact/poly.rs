//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, stored constant term first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense integer polynomial. `coeffs[i]` is the coefficient of `x^i`.
///
/// Canonical form: the vector is empty for the zero polynomial, otherwise
/// its last element is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds from coefficients in ascending degree order, stripping
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// The substitution `x ↦ x + 1`.
    pub fn shifted(&self) -> Self {
        self.shifted_by(&BigInt::one())
    }

    /// The substitution `x ↦ x + t`, by Horner accumulation:
    /// `P(x+t) = (…(c_d·(x+t) + c_{d−1})·(x+t) + …)·(x+t) + c_0`.
    /// Each step multiplies the accumulator by `x + t`, so the whole shift
    /// costs O(d²) big-integer additions and small multiplications.
    pub fn shifted_by(&self, t: &BigInt) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let mut acc: Vec<BigInt> = Vec::with_capacity(d + 1);
        acc.push(self.coeffs[d].clone());
        for k in (0..d).rev() {
            // acc ← acc·(x + t) + c_k, in place top-down so each slot still
            // reads the pre-multiplication values it needs
            acc.push(BigInt::zero());
            for i in (1..acc.len()).rev() {
                let scaled = &acc[i] * t;
                acc[i] = &acc[i - 1] + scaled;
            }
            acc[0] *= t;
            acc[0] += &self.coeffs[k];
        }
        Self::from_coeffs(acc)
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    /// Independent route for the shift: explicit binomial expansion,
    /// `P(x+t) = Σ_k c_k Σ_j C(k,j) t^(k−j) x^j`.
    fn shift_by_binomials(p: &IntPolynomial, t: &BigInt) -> IntPolynomial {
        let Some(d) = p.degree() else {
            return IntPolynomial::zero();
        };
        let mut out = vec![BigInt::zero(); d + 1];
        for k in 0..=d {
            let ck = p.coeff(k);
            if ck.is_zero() {
                continue;
            }
            // Pascal row C(k, 0..=k) with powers of t
            let mut binom = BigInt::one();
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                // binom = C(k, j), accumulate c_k · C(k,j) · t^(k−j)
                let mut term = &ck * &binom;
                term *= t.pow((k - j) as u32);
                *slot += term;
                if j < k {
                    binom = binom * BigInt::from((k - j) as u64) / BigInt::from((j + 1) as u64);
                }
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    #[test]
    fn shift_examples() {
        // (x+1)² + 1 = x² + 2x + 2
        let p = IntPolynomial::from_i64_coeffs(&[1, 0, 1]);
        assert_eq!(p.shifted(), IntPolynomial::from_i64_coeffs(&[2, 2, 1]));

        // x⁴+x³+x²+x+1 shifted: x⁴+5x³+10x²+10x+5
        let p = IntPolynomial::from_i64_coeffs(&[1, 1, 1, 1, 1]);
        let expected = shift_by_binomials(&p, &BigInt::one());
        assert_eq!(p.shifted(), expected);
        assert_eq!(
            p.shifted(),
            IntPolynomial::from_i64_coeffs(&[5, 10, 10, 5, 1])
        );

        // constants are shift-invariant
        let c = IntPolynomial::from_i64_coeffs(&[7]);
        assert_eq!(c.shifted(), c);
    }

    #[test]
    fn shift_matches_binomial_route_and_evaluation() {
        let polys = [
            IntPolynomial::from_i64_coeffs(&[3, -2, 0, 5, 1]),
            IntPolynomial::from_i64_coeffs(&[0, 0, 0, 1]),
            IntPolynomial::from_i64_coeffs(&[-4, 9]),
            IntPolynomial::zero(),
        ];
        for p in &polys {
            for t in [-3i64, -1, 1, 2, 10] {
                let t = BigInt::from(t);
                let s = p.shifted_by(&t);
                assert_eq!(s, shift_by_binomials(p, &t));
                for x in -5..=5i64 {
                    let x = BigInt::from(x);
                    assert_eq!(s.eval(&x), p.eval(&(&x + &t)));
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            IntPolynomial::from_i64_coeffs(&[5, 10, 10, 5, 1]).to_string(),
            "x^4 + 5x^3 + 10x^2 + 10x + 5"
        );
        assert_eq!(
            IntPolynomial::from_i64_coeffs(&[1, 0, 0, 1]).to_string(),
            "x^3 + 1"
        );
        assert_eq!(
            IntPolynomial::from_i64_coeffs(&[-1, -2]).to_string(),
            "-2x - 1"
        );
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
