//! Eisenstein-criterion checks and non-constructibility certificates.
//!
//! For a non-constructible n-gon there is a witness divisor d of n (either
//! a prime that is not a Fermat prime, or the square of an odd prime) whose
//! cyclotomic-style polynomial is irreducible by Eisenstein after the shift
//! `x ↦ x + 1` and has degree that is not a power of two. Together those two
//! facts certify that `cos(2π/d)`, and hence `cos(2π/n)`, is not expressible
//! in nested square roots.

use alloc::string::String;
use alloc::vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use thiserror::Error;

use crate::construct::decide;
use crate::exact::IntPolynomial;
use crate::numtheory::{factorize, is_fermat_prime, is_power_of_two, is_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("{0} is constructible; no certificate exists")]
    Constructible(u64),
}

/// Eisenstein criterion at the prime `q`: leading coefficient not divisible
/// by `q`, every other coefficient divisible by `q`, constant term not
/// divisible by `q²`. Panics unless `q` is prime and `deg P ≥ 1`.
pub fn eisenstein_check(poly: &IntPolynomial, q: u64) -> bool {
    assert!(is_prime(q), "eisenstein_check: {q} is not prime");
    let degree = poly.degree().expect("eisenstein_check: zero polynomial");
    assert!(degree >= 1, "eisenstein_check: degree must be at least 1");
    let q = BigInt::from(q);
    let q_squared = &q * &q;
    if poly
        .leading_coeff()
        .expect("nonzero")
        .mod_floor(&q)
        .is_zero()
    {
        return false;
    }
    for i in 0..degree {
        if !poly.coeff(i).mod_floor(&q).is_zero() {
            return false;
        }
    }
    !poly.coeff(0).mod_floor(&q_squared).is_zero()
}

/// `x^(p−1) + x^(p−2) + ⋯ + x + 1`, the minimal-polynomial witness for a
/// prime p-gon.
pub fn cyclotomic_poly_prime(p: u64) -> IntPolynomial {
    assert!(is_prime(p), "cyclotomic_poly_prime: {p} is not prime");
    IntPolynomial::from_coeffs(vec![BigInt::from(1); p as usize])
}

/// `x^(p(p−1)) + x^(p(p−2)) + ⋯ + x^p + 1`, the witness for a p²-gon:
/// coefficient 1 exactly at the exponents that are multiples of p.
pub fn cyclotomic_poly_prime_square(p: u64) -> IntPolynomial {
    assert!(
        is_prime(p),
        "cyclotomic_poly_prime_square: {p} is not prime"
    );
    let p = p as usize;
    let mut coeffs = vec![BigInt::zero(); p * (p - 1) + 1];
    for k in 0..p {
        coeffs[k * p] = BigInt::from(1);
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// Euler's totient, via the prime factorization. This is the independent
/// cross-check for the constructibility decision: φ(n) is a power of two
/// exactly for constructible n.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi: n must be at least 1");
    factorize(n)
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// A machine-checkable witness of non-constructibility.
///
/// Valid when `shifted_ok` holds (the shifted witness polynomial passes
/// Eisenstein at `eisenstein_prime`) and the degree is not a power of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonConstructibilityCertificate {
    pub n: u64,
    pub witness_poly: IntPolynomial,
    pub eisenstein_prime: u64,
    pub shifted_ok: bool,
    pub degree: u64,
    pub degree_power_of_two: bool,
}

impl NonConstructibilityCertificate {
    pub fn is_valid(&self) -> bool {
        self.shifted_ok && !self.degree_power_of_two
    }

    /// Canonical JSON form: fields in declaration order, coefficients as
    /// decimal strings, constant term first.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"n\":");
        out.push_str(&alloc::format!("{}", self.n));
        out.push_str(",\"witness_poly\":[");
        for (i, c) in self.witness_poly.coeffs().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("\"{c}\""));
        }
        out.push_str("],\"eisenstein_prime\":");
        out.push_str(&alloc::format!("{}", self.eisenstein_prime));
        out.push_str(",\"shifted_ok\":");
        out.push_str(if self.shifted_ok { "true" } else { "false" });
        out.push_str(",\"degree\":");
        out.push_str(&alloc::format!("{}", self.degree));
        out.push_str(",\"degree_power_of_two\":");
        out.push_str(if self.degree_power_of_two {
            "true"
        } else {
            "false"
        });
        out.push('}');
        out
    }
}

/// Builds the certificate for a non-constructible `n`, naming the smallest
/// witness divisor: a non-Fermat prime factor `q` (witness polynomial of
/// degree q−1) or a repeated odd prime as `q²` (degree q(q−1)).
pub fn certify_nonconstructible(n: u64) -> Result<NonConstructibilityCertificate, CertifyError> {
    let verdict = decide(n);
    if verdict.constructible {
        return Err(CertifyError::Constructible(n));
    }

    // candidate witness divisors with their Eisenstein primes
    let mut best: Option<(u64, u64)> = None; // (divisor, prime)
    for (p, e) in verdict.factorization.odd_pairs() {
        let candidate = if !is_fermat_prime(p) {
            Some((p, p))
        } else if e >= 2 {
            Some((p * p, p))
        } else {
            None
        };
        if let Some((d, q)) = candidate {
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, q));
            }
        }
    }
    let (divisor, prime) = best.expect("a non-constructible n has a witness divisor");

    let witness_poly = if divisor == prime {
        cyclotomic_poly_prime(prime)
    } else {
        cyclotomic_poly_prime_square(prime)
    };
    let degree = witness_poly.degree().expect("witness has positive degree") as u64;
    let shifted_ok = eisenstein_check(&witness_poly.shifted(), prime);

    Ok(NonConstructibilityCertificate {
        n,
        witness_poly,
        eisenstein_prime: prime,
        shifted_ok,
        degree,
        degree_power_of_two: is_power_of_two(degree),
    })
}
