//! The binary tree of Gaussian periods for a Fermat prime `p = 2^m + 1`.
//!
//! Fix a verified primitive root `g` mod `p` and write ε for the primitive
//! p-th root of unity. A period is indexed by a bit string `(i_0, …)`; the
//! period with index of length `λ` is the formal sum of `ε^(g^e)` over the
//! exponents `e = s·2^λ − bar(i)  (mod p−1)`, `s = 0, …, 2^(m−λ) − 1`, where
//! `bar(i) = Σ i_t·2^t`. Index length grows by one per level; appending a bit
//! splits a period into two halves of equal term count.
//!
//! Everything in this module is combinatorial and exact: supports are sets of
//! residues, sums are group-ring vectors, and the product of two sibling
//! periods is decomposed over whole periods with machine-checked constancy of
//! the coefficients. Numeric values enter only in the `construct` module.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::exact::GroupRingVector;
use crate::numtheory::{find_primitive_root, is_fermat_prime, verify_primitive_root};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodError {
    #[error("{0} is not a Fermat prime ≥ 5")]
    NotFermatPrime(u64),
    #[error("{root} is not a primitive root modulo {p}")]
    BadPrimitiveRoot { p: u64, root: u64 },
    /// The product of two sibling periods failed to have a constant
    /// coefficient across some period's support. This would falsify the
    /// period product identity and must never be masked.
    #[error("period product coefficient not constant on the support of index {index} (mod {p})")]
    NonConstantCoefficient { p: u64, index: PeriodIndex },
}

/// A node of the period tree: a bit string, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodIndex {
    bits: Vec<u8>,
}

impl PeriodIndex {
    pub fn empty() -> Self {
        PeriodIndex { bits: Vec::new() }
    }

    /// Builds from explicit bits. Panics if an entry is not 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(
            bits.iter().all(|&b| b <= 1),
            "period index bits must be 0 or 1"
        );
        PeriodIndex {
            bits: bits.to_vec(),
        }
    }

    /// The index with `len` bits whose little-endian value is `value`.
    pub fn from_value(value: u64, len: u32) -> Self {
        let bits = (0..len).map(|t| ((value >> t) & 1) as u8).collect();
        PeriodIndex { bits }
    }

    pub fn len(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Appends one bit, producing a child index.
    pub fn child(&self, bit: u8) -> Self {
        assert!(bit <= 1);
        let mut bits = self.bits.clone();
        bits.push(bit);
        PeriodIndex { bits }
    }

    /// `bar(i) = i_0·2^0 + ⋯ + i_x·2^x`.
    pub fn bar(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .map(|(t, &b)| (b as u64) << t)
            .sum()
    }
}

impl fmt::Display for PeriodIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return write!(f, "-");
        }
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A Fermat prime `p = 2^m + 1 ≥ 5` with a verified primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSystem {
    p: u64,
    m: u32,
    g: u64,
}

impl PeriodSystem {
    /// Builds the system with the smallest primitive root.
    pub fn new(p: u64) -> Result<Self, PeriodError> {
        if p < 5 || !is_fermat_prime(p) {
            return Err(PeriodError::NotFermatPrime(p));
        }
        let g = find_primitive_root(p);
        Ok(PeriodSystem {
            p,
            m: (p - 1).trailing_zeros(),
            g,
        })
    }

    /// Builds the system with a caller-chosen root, which is verified
    /// exhaustively before being accepted.
    pub fn with_root(p: u64, g: u64) -> Result<Self, PeriodError> {
        if p < 5 || !is_fermat_prime(p) {
            return Err(PeriodError::NotFermatPrime(p));
        }
        if !verify_primitive_root(p, g) {
            return Err(PeriodError::BadPrimitiveRoot { p, root: g });
        }
        Ok(PeriodSystem {
            p,
            m: (p - 1).trailing_zeros(),
            g,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `p = 2^m + 1`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    /// All indices with `len` bits, ordered by their little-endian value.
    pub fn indices_at(&self, len: u32) -> Vec<PeriodIndex> {
        assert!(len <= self.m, "period index longer than m");
        (0..(1u64 << len))
            .map(|v| PeriodIndex::from_value(v, len))
            .collect()
    }

    /// `g^e mod p` with the exponent reduced mod `p − 1`.
    fn root_power(&self, e: i64) -> u64 {
        let order = (self.p - 1) as i64;
        let e = e.rem_euclid(order) as u64;
        crate::numtheory::mod_pow_u(self.g, e, self.p)
    }

    /// Sorted support of the period at `idx`: the residues
    /// `g^(s·2^λ − bar)` for `s = 0, …, 2^(m−λ) − 1` with `λ = len(idx)`.
    ///
    /// The empty index yields all of `{1, …, p−1}`. Panics if the index is
    /// longer than `m`.
    pub fn support(&self, idx: &PeriodIndex) -> Vec<u64> {
        let lambda = idx.len();
        assert!(lambda <= self.m, "period index longer than m");
        let count = 1u64 << (self.m - lambda);
        let step = 1i64 << lambda;
        let bar = idx.bar() as i64;
        let mut out: Vec<u64> = (0..count)
            .map(|s| self.root_power(s as i64 * step - bar))
            .collect();
        out.sort_unstable();
        // distinct exponents mod p−1 map to distinct residues
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        out
    }

    /// Indicator group-ring vector of the support.
    pub fn period_vector(&self, idx: &PeriodIndex) -> GroupRingVector {
        GroupRingVector::from_support(self.p, &self.support(idx))
    }

    /// Number of term pairs `(k, l)`, drawn from the two child periods of
    /// `idx`, whose residues sum to `s` mod `p`: the coefficient α(s) of the
    /// sibling product, counted by direct congruence enumeration.
    ///
    /// This is the independent route against which the group-ring
    /// convolution is checked; it shares no code with `convolve`.
    pub fn alpha_count(&self, idx: &PeriodIndex, s: u64) -> u64 {
        let lambda = idx.len();
        assert!(lambda < self.m, "index has no children");
        let child_len = lambda + 1;
        let count = 1u64 << (self.m - child_len);
        let step = 1i64 << child_len;
        let bar0 = idx.child(0).bar() as i64;
        let bar1 = idx.child(1).bar() as i64;
        let s = s % self.p;
        let mut hits = 0u64;
        for k in 0..count {
            let a = self.root_power(k as i64 * step - bar0);
            for l in 0..count {
                let b = self.root_power(l as i64 * step - bar1);
                if (a + b) % self.p == s {
                    hits += 1;
                }
            }
        }
        hits
    }

    /// Product of the two child periods of `idx`, decomposed over the
    /// periods at the children's level.
    ///
    /// Computes the group-ring convolution of the child indicator vectors,
    /// then reads off one coefficient per child-level period, verifying that
    /// the convolution is constant across each period's support. A
    /// non-constant coefficient is reported as an error, never truncated.
    pub fn decompose_product(
        &self,
        idx: &PeriodIndex,
    ) -> Result<ProductDecomposition, PeriodError> {
        let lambda = idx.len();
        assert!(lambda < self.m, "index has no children");
        let child_len = lambda + 1;
        let product = self
            .period_vector(&idx.child(0))
            .convolve(&self.period_vector(&idx.child(1)));

        let alpha0 = biguint_to_u64(product.coeff(0));
        let mut terms = BTreeMap::new();
        let mut mass_check = alpha0 as u128;
        for j in self.indices_at(child_len) {
            let support = self.support(&j);
            let alpha = biguint_to_u64(product.coeff(support[0]));
            if support
                .iter()
                .any(|&r| biguint_to_u64(product.coeff(r)) != alpha)
            {
                return Err(PeriodError::NonConstantCoefficient {
                    p: self.p,
                    index: j,
                });
            }
            mass_check += alpha as u128 * support.len() as u128;
            terms.insert(j, alpha);
        }
        // the decomposition must account for every term of the product
        let total = biguint_to_u64(&product.mass()) as u128;
        assert_eq!(mass_check, total, "period decomposition lost terms");
        // α(0) vanishes strictly above the singleton level
        assert!(
            alpha0 == 0 || child_len == self.m,
            "α(0) ≠ 0 above the singleton level (p = {})",
            self.p
        );
        Ok(ProductDecomposition {
            parent: idx.clone(),
            child_len,
            alpha0,
            terms,
        })
    }
}

fn biguint_to_u64(x: &num_bigint::BigUint) -> u64 {
    u64::try_from(x).expect("period coefficient exceeds u64")
}

/// The decomposition `A_child0 · A_child1 = α(0) + Σ_j α_j A_j` with `j`
/// running over all indices at the children's level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDecomposition {
    parent: PeriodIndex,
    child_len: u32,
    alpha0: u64,
    terms: BTreeMap<PeriodIndex, u64>,
}

impl ProductDecomposition {
    pub fn parent(&self) -> &PeriodIndex {
        &self.parent
    }

    /// Bit length of the indices the terms are taken over.
    pub fn child_len(&self) -> u32 {
        self.child_len
    }

    /// Coefficient of ε^0. Zero unless the children are single terms.
    pub fn alpha0(&self) -> u64 {
        self.alpha0
    }

    pub fn terms(&self) -> &BTreeMap<PeriodIndex, u64> {
        &self.terms
    }

    /// Collapses the child-level terms to the parent's level using the
    /// sibling-sum identity `A_(i,0) + A_(i,1) = A_i`, which is valid here
    /// because the two siblings always carry equal coefficients. Panics if
    /// they do not; that would falsify the product identity.
    pub fn collapse_to_parent_level(&self) -> (u64, BTreeMap<PeriodIndex, u64>) {
        let mut collapsed = BTreeMap::new();
        for (j, &alpha) in &self.terms {
            if *j.bits().last().expect("child index is nonempty") == 1 {
                continue;
            }
            let parent = PeriodIndex::from_bits(&j.bits()[..j.bits().len() - 1]);
            let sibling = parent.child(1);
            let alpha_sibling = *self
                .terms
                .get(&sibling)
                .expect("sibling term missing from decomposition");
            assert_eq!(
                alpha, alpha_sibling,
                "sibling coefficients differ; cannot collapse period product"
            );
            collapsed.insert(parent, alpha);
        }
        (self.alpha0, collapsed)
    }
}
