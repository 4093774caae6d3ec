//! Elementary number theory: trial-division factorization, modular
//! exponentiation, primitive roots with exhaustive verification, Fermat-prime
//! recognition and Bezout coefficients.
//!
//! Everything here works on machine integers. Trial division is deliberate:
//! the intended input range (n up to about 10^6) does not justify anything
//! probabilistic, and exactness is the whole point of this crate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    /// A negative exponent was requested for a base that has no inverse
    /// modulo the given modulus.
    #[error("{base} is not invertible modulo {modulus}")]
    NonInvertible { base: u64, modulus: u64 },
}

/// Prime factorization as (prime, exponent) pairs, primes strictly increasing.
///
/// The factorization of 1 is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Multiplies the factorization back together.
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Exponent of the given prime, zero if absent.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// The odd prime-power part, as (prime, exponent) pairs.
    pub fn odd_pairs(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.pairs.iter().copied().filter(|&(p, _)| p != 2)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n ≥ 1` by trial division. The factorization of 1 is empty.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize: n must be at least 1");
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0u32;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Factorization { pairs }
}

/// Trial-division primality test.
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

/// True exactly when `n` is a power of two (including 2^0 = 1).
pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// True iff `p` is prime and `p − 1` is a power of two.
///
/// For a prime, `p − 1` being a power of two forces `p = 2^(2^s) + 1`,
/// since `2^k + 1` divides `2^(kl) + 1` for odd `l`.
pub fn is_fermat_prime(p: u64) -> bool {
    p >= 3 && is_power_of_two(p - 1) && is_prime(p)
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod modulus` for a nonnegative exponent.
pub fn mod_pow_u(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "mod_pow: modulus must be at least 2");
    let mut acc = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, b, modulus);
        }
        b = mod_mul(b, b, modulus);
        exp >>= 1;
    }
    acc
}

/// `base^exp mod modulus`, allowing negative exponents via the modular
/// inverse. Fails when `exp < 0` and `gcd(base, modulus) ≠ 1`.
pub fn mod_pow(base: u64, exp: i64, modulus: u64) -> Result<u64, NumTheoryError> {
    assert!(modulus >= 2, "mod_pow: modulus must be at least 2");
    if exp >= 0 {
        return Ok(mod_pow_u(base, exp as u64, modulus));
    }
    let b = base % modulus;
    let (g, x, _) = extended_gcd(b as i64, modulus as i64);
    if g != 1 {
        return Err(NumTheoryError::NonInvertible { base: b, modulus });
    }
    let inv = x.rem_euclid(modulus as i64) as u64;
    Ok(mod_pow_u(inv, exp.unsigned_abs(), modulus))
}

/// Verifies exhaustively that the residues `g^1, …, g^(p−1)` mod `p` are
/// pairwise distinct, i.e. that `g` generates all nonzero residues.
pub fn verify_primitive_root(p: u64, g: u64) -> bool {
    if p < 3 || g.is_multiple_of(p) {
        return false;
    }
    let mut seen = vec![false; p as usize];
    let mut acc = 1u64;
    for _ in 1..p {
        acc = mod_mul(acc, g, p);
        if seen[acc as usize] {
            return false;
        }
        seen[acc as usize] = true;
    }
    true
}

/// Smallest primitive root modulo the prime `p ≥ 3`.
///
/// Every candidate is verified exhaustively before being returned; the
/// verification, not the search order, is what callers rely on.
pub fn find_primitive_root(p: u64) -> u64 {
    assert!(
        p >= 3 && is_prime(p),
        "find_primitive_root: p must be an odd prime"
    );
    for g in 2..p {
        if verify_primitive_root(p, g) {
            return g;
        }
    }
    unreachable!("a prime modulus always has a primitive root")
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(m, n) > 0` and
/// `m·x + n·y = g`. Panics on `(0, 0)`.
///
/// The coefficient `x` is normalized into `(−n/(2g), n/(2g)]` so that the
/// output is unique; this keeps downstream angle compositions reproducible.
pub fn extended_gcd(m: i64, n: i64) -> (i64, i64, i64) {
    assert!(m != 0 || n != 0, "extended_gcd: (0, 0) has no gcd");
    if n == 0 {
        return (m.abs(), m.signum(), 0);
    }
    if m == 0 {
        return (n.abs(), 0, n.signum());
    }
    let (mut old_r, mut r) = (m, n);
    let (mut old_x, mut x) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
    }
    let g = old_r.abs();
    let mut bx = if old_r < 0 { -old_x } else { old_x };
    // shift x into the symmetric residue range modulo n/g
    let step = (n / g).abs();
    bx = bx.rem_euclid(step);
    if 2 * bx > step {
        bx -= step;
    }
    let by = (g as i128 - m as i128 * bx as i128) / n as i128;
    (g, bx, by as i64)
}
