//! The group ring of Z/p with nonnegative integer coefficients: formal sums
//! of symbols ε^0, …, ε^(p−1) multiplied by adding exponents mod p.
//!
//! Elements are kept unreduced (the cyclotomic relation
//! 1 + ε + ⋯ + ε^(p−1) = 0 is never applied), so products of Gaussian-period
//! indicator vectors have a canonical representation with exact term counts.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Mul;

use num_bigint::BigUint;
use num_traits::Zero;

/// Vector of nonnegative coefficients indexed by residues 0…p−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingVector {
    modulus: u64,
    coeffs: Vec<BigUint>,
}

impl GroupRingVector {
    pub fn zero(modulus: u64) -> Self {
        assert!(modulus >= 2, "group ring needs modulus ≥ 2");
        GroupRingVector {
            modulus,
            coeffs: vec![BigUint::zero(); modulus as usize],
        }
    }

    /// The basis element ε^k.
    pub fn basis(modulus: u64, k: u64) -> Self {
        let mut v = Self::zero(modulus);
        v.coeffs[(k % modulus) as usize] += 1u32;
        v
    }

    /// Indicator vector of a set of residues.
    pub fn from_support(modulus: u64, support: &[u64]) -> Self {
        let mut v = Self::zero(modulus);
        for &r in support {
            v.coeffs[(r % modulus) as usize] += 1u32;
        }
        v
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeff(&self, r: u64) -> &BigUint {
        &self.coeffs[(r % self.modulus) as usize]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Sum of all coefficients. Multiplicative under convolution.
    pub fn mass(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Schoolbook convolution: `w[t] = Σ_{a+b ≡ t (mod p)} u[a]·v[b]`.
    ///
    /// Panics on a modulus mismatch.
    pub fn convolve(&self, other: &GroupRingVector) -> GroupRingVector {
        assert_eq!(
            self.modulus, other.modulus,
            "group ring modulus mismatch: {} vs {}",
            self.modulus, other.modulus
        );
        let p = self.modulus as usize;
        let mut out = GroupRingVector::zero(self.modulus);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let t = (a + b) % p;
                out.coeffs[t] += ca * cb;
            }
        }
        out
    }
}

impl Mul for &GroupRingVector {
    type Output = GroupRingVector;

    fn mul(self, rhs: &GroupRingVector) -> GroupRingVector {
        self.convolve(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_product_mod_5() {
        // (ε¹+ε⁴)·(ε²+ε³) = ε¹+ε²+ε³+ε⁴
        let u = GroupRingVector::from_support(5, &[1, 4]);
        let v = GroupRingVector::from_support(5, &[2, 3]);
        let w = u.convolve(&v);
        assert_eq!(w, GroupRingVector::from_support(5, &[1, 2, 3, 4]));
    }

    #[test]
    fn identity_element() {
        let e0 = GroupRingVector::basis(5, 0);
        let v = GroupRingVector::from_support(5, &[1, 2, 2, 4]);
        assert_eq!(e0.convolve(&v), v);
    }

    #[test]
    fn exponents_add_mod_p() {
        let a = GroupRingVector::basis(5, 2);
        let b = GroupRingVector::basis(5, 3);
        assert_eq!(a.convolve(&b), GroupRingVector::basis(5, 0));
    }

    #[test]
    fn mass_is_multiplicative() {
        let u = GroupRingVector::from_support(17, &[1, 2, 4, 8, 9, 13, 15, 16]);
        let v = GroupRingVector::from_support(17, &[3, 5, 6, 7, 10, 11, 12, 14]);
        let w = u.convolve(&v);
        assert_eq!(w.mass(), u.mass() * v.mass());
    }

    #[test]
    #[should_panic(expected = "modulus mismatch")]
    fn modulus_mismatch_panics() {
        let u = GroupRingVector::basis(5, 1);
        let v = GroupRingVector::basis(7, 1);
        let _ = u.convolve(&v);
    }
}
