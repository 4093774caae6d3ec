//! The decision procedure and the synthesis of `cos(2π/n)` as a nested
//! square-root expression.
//!
//! A regular n-gon is constructible iff `n = 2^α·p_1⋯p_l` with distinct
//! Fermat primes `p_i`. For each Fermat prime the expression comes from the
//! Gaussian-period descent: starting from the full period sum, whose value
//! is −1, each period splits into two children that are the roots of
//! `t² − S·t + P`, where `S` is the period itself and `P` is the exact
//! period-product decomposition re-expressed over already-built periods.
//! Which quadratic root is which child is settled by certified interval
//! separation against the reference cosine oracle, never by guessing.
//!
//! The descent stops at the two-term periods `ε^a + ε^(−a) = 2cos(2πa/p)`,
//! which keeps every intermediate value real. Composite `n` are assembled
//! with the coprime angle addition `cos(2π/(mn))` from Bezout coefficients,
//! and powers of two with the half-angle identity
//! `cos(α/2) = √((1+cos α)/2)`, valid on the angles that occur here.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use thiserror::Error;

use crate::numtheory::{extended_gcd, factorize, is_fermat_prime, is_power_of_two, Factorization};
use crate::periods::{PeriodError, PeriodIndex, PeriodSystem};
use crate::radicals::{
    evaluate, reference_cos, reference_cos_sum, CertifiedDecimal, EvalError, Expr, RadicalExpr,
};

/// Digits used for the construction's own final certification.
const SELF_CHECK_DIGITS: u32 = 30;

/// Separation search for root matching starts here and doubles.
const MATCH_START_DIGITS: u32 = 24;
const MATCH_MAX_DIGITS: u32 = 6144;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// Every odd prime factor is a Fermat prime appearing once.
    Ok,
    /// An odd prime factor that is not a Fermat prime.
    BadPrimeFactor(u64),
    /// A Fermat prime factor with exponent at least two.
    RepeatedOddPrime(u64),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Ok => write!(f, "ok"),
            Reason::BadPrimeFactor(p) => {
                write!(f, "(*) prime factor {p} is not a Fermat prime")
            }
            Reason::RepeatedOddPrime(p) => {
                write!(f, "(**) odd prime factor {p} is repeated")
            }
        }
    }
}

/// Outcome of the constructibility decision for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibilityVerdict {
    pub n: u64,
    pub constructible: bool,
    pub factorization: Factorization,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{} is not constructible: {}", .0.n, .0.reason)]
    NotConstructible(ConstructibilityVerdict),
    #[error("{m} and {n} are not coprime")]
    NotCoprime { m: u64, n: u64 },
    #[error("half-angle radicand certified negative")]
    NegativeRadicand,
    #[error("cosine certified outside [-1, 1]")]
    CosineOutOfRange,
    #[error("could not certify root separation at index {parent} (mod {p})")]
    RootSeparation { p: u64, parent: PeriodIndex },
    #[error("final expression failed certification against the reference cosine for n = {n}")]
    CertificationFailed { n: u64 },
    #[error(transparent)]
    Periods(#[from] PeriodError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Decides constructibility of the regular n-gon.
///
/// The verdict follows the prime-factor characterization and is
/// cross-checked against the independent criterion that φ(n) is a power of
/// two; a disagreement would be a bug and panics.
pub fn decide(n: u64) -> ConstructibilityVerdict {
    assert!(n >= 1, "decide: n must be at least 1");
    let factorization = factorize(n);
    let mut reason = Reason::Ok;
    for (p, e) in factorization.odd_pairs() {
        if !is_fermat_prime(p) {
            reason = Reason::BadPrimeFactor(p);
            break;
        }
        if e >= 2 {
            reason = Reason::RepeatedOddPrime(p);
            break;
        }
    }
    let constructible = reason == Reason::Ok;

    let phi: u64 = factorization
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product();
    assert_eq!(
        constructible,
        is_power_of_two(phi),
        "constructibility decision disagrees with the totient criterion for n = {n}"
    );

    ConstructibilityVerdict {
        n,
        constructible,
        factorization,
        reason,
    }
}

/// One level step of the Gaussian-period descent, kept for auditing: the
/// children are the roots of `t² − sum·t + product`.
#[derive(Debug, Clone)]
pub struct DescentStep {
    pub parent: PeriodIndex,
    pub sum: Expr,
    pub product: Expr,
    pub child0: Expr,
    pub child1: Expr,
}

/// `cos(2π/p)` for a Fermat prime, with the descent trace.
pub fn construct_fermat_prime_with_trace(
    p: u64,
) -> Result<(Expr, Vec<DescentStep>), ConstructError> {
    assert!(
        is_fermat_prime(p),
        "construct_fermat_prime: {p} is not a Fermat prime"
    );
    if p == 3 {
        return Ok((
            RadicalExpr::rational(BigRational::new((-1).into(), 2.into())),
            Vec::new(),
        ));
    }

    let sys = PeriodSystem::new(p)?;
    let m = sys.m();
    let mut exprs: BTreeMap<PeriodIndex, Expr> = BTreeMap::new();
    // the full period sum: A = ε + ε² + ⋯ + ε^(p−1) = −1
    exprs.insert(PeriodIndex::empty(), RadicalExpr::integer(-1));
    let mut trace = Vec::new();

    for level in 0..=(m - 2) {
        for parent in sys.indices_at(level) {
            let sum = exprs[&parent].clone();
            let decomposition = sys.decompose_product(&parent)?;
            let (alpha0, collapsed) = decomposition.collapse_to_parent_level();

            // P = α(0) + Σ β_r · A_r over the already-built level; the α(0)
            // and unit-coefficient terms are elided at construction
            let mut product: Option<Expr> = if alpha0 > 0 {
                Some(RadicalExpr::integer(alpha0 as i64))
            } else {
                None
            };
            for (r, beta) in &collapsed {
                if *beta == 0 {
                    continue;
                }
                let term = if *beta == 1 {
                    exprs[r].clone()
                } else {
                    RadicalExpr::mul(&RadicalExpr::integer(*beta as i64), &exprs[r])
                };
                product = Some(match product {
                    Some(acc) => RadicalExpr::add(&acc, &term),
                    None => term,
                });
            }
            let product = product.unwrap_or_else(|| RadicalExpr::integer(0));

            let discriminant = RadicalExpr::sub(
                &RadicalExpr::mul(&sum, &sum),
                &RadicalExpr::mul(&RadicalExpr::integer(4), &product),
            );
            let root_term = RadicalExpr::sqrt(&discriminant);
            let two = RadicalExpr::integer(2);
            let root_hi = RadicalExpr::div(&RadicalExpr::add(&sum, &root_term), &two);
            let root_lo = RadicalExpr::div(&RadicalExpr::sub(&sum, &root_term), &two);

            let child0 = parent.child(0);
            let child1 = parent.child(1);
            let (expr0, expr1) =
                match_roots_to_children(&sys, &parent, &child0, &child1, &root_hi, &root_lo)?;

            trace.push(DescentStep {
                parent: parent.clone(),
                sum,
                product,
                child0: expr0.clone(),
                child1: expr1.clone(),
            });
            exprs.insert(child0, expr0);
            exprs.insert(child1, expr1);
        }
    }

    // the all-zero index of length m−1 is ε + ε^(−1) = 2cos(2π/p)
    let target = PeriodIndex::from_value(0, m - 1);
    let double_cos = exprs.remove(&target).expect("terminal period built");
    Ok((
        RadicalExpr::div(&double_cos, &RadicalExpr::integer(2)),
        trace,
    ))
}

/// `cos(2π/p)` for a Fermat prime `p`.
pub fn construct_fermat_prime(p: u64) -> Result<Expr, ConstructError> {
    construct_fermat_prime_with_trace(p).map(|(e, _)| e)
}

/// Certified assignment of the two quadratic roots to the two child periods.
///
/// Both roots and both true period values (as reference cosine sums) are
/// bracketed at escalating precision until all four brackets separate
/// consistently; the assignment is then forced, and each chosen root's
/// bracket must overlap its period's bracket.
fn match_roots_to_children(
    sys: &PeriodSystem,
    parent: &PeriodIndex,
    child0: &PeriodIndex,
    child1: &PeriodIndex,
    root_hi: &Expr,
    root_lo: &Expr,
) -> Result<(Expr, Expr), ConstructError> {
    let mut digits = MATCH_START_DIGITS;
    loop {
        let value0 = reference_cos_sum(sys.p(), &sys.support(child0), digits);
        let value1 = reference_cos_sum(sys.p(), &sys.support(child1), digits);
        let bracket_hi = evaluate(root_hi, digits)?;
        let bracket_lo = evaluate(root_lo, digits)?;

        if value0.disjoint_from(&value1) && bracket_hi.disjoint_from(&bracket_lo) {
            let zero_is_larger = value0.lower_bound() > value1.upper_bound();
            let (big, small) = if zero_is_larger {
                (&value0, &value1)
            } else {
                (&value1, &value0)
            };
            let matched = big.overlaps(&bracket_hi)
                && small.overlaps(&bracket_lo)
                && big.disjoint_from(&bracket_lo)
                && small.disjoint_from(&bracket_hi);
            if matched {
                return Ok(if zero_is_larger {
                    (root_hi.clone(), root_lo.clone())
                } else {
                    (root_lo.clone(), root_hi.clone())
                });
            }
        }
        if digits >= MATCH_MAX_DIGITS {
            return Err(ConstructError::RootSeparation {
                p: sys.p(),
                parent: parent.clone(),
            });
        }
        digits *= 2;
    }
}

/// `T_k(c)` as an expression: certifies to `cos(kθ)` when `c` certifies to
/// `cos θ`. Built by the recurrence `T_{k+1} = 2c·T_k − T_{k−1}`.
pub fn chebyshev_apply(k: u64, c: &Expr) -> Expr {
    assert!(k >= 1, "chebyshev_apply: k must be at least 1");
    if k == 1 {
        return c.clone();
    }
    let mut prev = RadicalExpr::integer(1);
    let mut cur = c.clone();
    for _ in 2..=k {
        let doubled = RadicalExpr::mul(&RadicalExpr::integer(2), &RadicalExpr::mul(c, &cur));
        let next = RadicalExpr::sub(&doubled, &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Certifies the sign of an expression, escalating precision as needed.
fn certified_sign_of(expr: &Expr) -> Result<Ordering, ConstructError> {
    for digits in [16u32, 64, 256, 1024] {
        let bracket = evaluate(expr, digits)?;
        if let Some(sign) = bracket.certified_sign() {
            return Ok(sign);
        }
    }
    Err(ConstructError::Eval(EvalError::PrecisionExhausted))
}

/// From `c = cos(2π/n)` builds `cos(2π/(2n)) = √((1 + c)/2)`.
///
/// Valid for `n ≥ 2`: the halved angle then lies in (0, π/2], where the
/// cosine is nonnegative. The radicand is certified nonnegative (or folds
/// exactly) before the root is taken.
pub fn half_angle(c: &Expr, n: u64) -> Result<Expr, ConstructError> {
    assert!(n >= 2, "half_angle: n must be at least 2");
    let radicand = RadicalExpr::div(
        &RadicalExpr::add(&RadicalExpr::integer(1), c),
        &RadicalExpr::integer(2),
    );
    if let Some(q) = radicand.as_const() {
        if q.is_negative() {
            return Err(ConstructError::NegativeRadicand);
        }
        return Ok(RadicalExpr::sqrt(&radicand));
    }
    match certified_sign_of(&radicand)? {
        Ordering::Less => Err(ConstructError::NegativeRadicand),
        _ => Ok(RadicalExpr::sqrt(&radicand)),
    }
}

/// From `c = cos(2πt)` builds `sin(2πt) = ±√(1 − c²)`, with the sign read
/// off the exact rational angle `t` (in turns).
///
/// Angles with `t ≡ 0 or 1/2 (mod 1)` yield the exact zero constant.
pub fn sin_from_cos(c: &Expr, angle_turns: &BigRational) -> Result<Expr, ConstructError> {
    let t = angle_turns - angle_turns.floor();
    let half = BigRational::new(1.into(), 2.into());
    if t.is_zero() || t == half {
        return Ok(RadicalExpr::integer(0));
    }
    let radicand = RadicalExpr::sub(&RadicalExpr::integer(1), &RadicalExpr::mul(c, c));
    if let Some(q) = radicand.as_const() {
        if q.is_negative() {
            return Err(ConstructError::CosineOutOfRange);
        }
    } else if certified_sign_of(&radicand)? == Ordering::Less {
        return Err(ConstructError::CosineOutOfRange);
    }
    let magnitude = RadicalExpr::sqrt(&radicand);
    if t < half {
        Ok(magnitude)
    } else {
        Ok(RadicalExpr::mul(&RadicalExpr::integer(-1), &magnitude))
    }
}

/// Cosine and sine of `2π·k/n` from `c_n = cos(2π/n)`, as (cosine, sine
/// magnitude, sine sign), using cosine evenness to keep the Chebyshev
/// degree at most `n/2`.
fn multiple_angle(n: u64, cn: &Expr, k: i64) -> Result<(Expr, Expr, i8), ConstructError> {
    let reduced = k.rem_euclid(n as i64) as u64;
    debug_assert!(reduced != 0, "multiple of a full turn cannot occur here");
    let (folded, sign) = if 2 * reduced > n {
        (n - reduced, -1i8)
    } else {
        (reduced, 1i8)
    };
    let cosine = chebyshev_apply(folded, cn);
    let sine_magnitude = sin_from_cos(
        &cosine,
        &BigRational::new((folded as i64).into(), (n as i64).into()),
    )?;
    Ok((cosine, sine_magnitude, sign))
}

/// `cos(2π/(mn))` for coprime `m, n ≥ 3` from `cos(2π/m)` and `cos(2π/n)`,
/// via the Bezout identity `m·x + n·y = 1` and the angle addition
/// `cos(2πx/n + 2πy/m)`.
pub fn combine_coprime(m: u64, n: u64, cm: &Expr, cn: &Expr) -> Result<Expr, ConstructError> {
    assert!(
        m >= 3 && n >= 3,
        "combine_coprime: moduli must be at least 3"
    );
    let (g, x, y) = extended_gcd(m as i64, n as i64);
    if g != 1 {
        return Err(ConstructError::NotCoprime { m, n });
    }
    // 1/(mn) = x/n + y/m
    let (cos_a, sin_a, sign_a) = multiple_angle(n, cn, x)?;
    let (cos_b, sin_b, sign_b) = multiple_angle(m, cm, y)?;
    let cos_part = RadicalExpr::mul(&cos_a, &cos_b);
    let sin_part = RadicalExpr::mul(&sin_a, &sin_b);
    Ok(if sign_a * sign_b > 0 {
        RadicalExpr::sub(&cos_part, &sin_part)
    } else {
        RadicalExpr::add(&cos_part, &sin_part)
    })
}

/// `cos(2π/n)` as a nested-radical expression, for constructible `n`.
///
/// Assembly is deterministic: Fermat-prime factors are combined left to
/// right in ascending order, then the power of two is applied as half-angle
/// steps. The result is certified against the independent reference cosine
/// before being returned.
pub fn construct(n: u64) -> Result<Expr, ConstructError> {
    let verdict = decide(n);
    if !verdict.constructible {
        return Err(ConstructError::NotConstructible(verdict));
    }

    let alpha = verdict.factorization.exponent_of(2);
    let odd_primes: Vec<u64> = verdict.factorization.odd_pairs().map(|(p, _)| p).collect();

    let expr = if odd_primes.is_empty() {
        // n = 2^α: start from cos(2π/2) = −1 and halve
        match n {
            1 => RadicalExpr::integer(1),
            _ => {
                let mut c = RadicalExpr::integer(-1);
                let mut angle_denominator = 2u64;
                for _ in 1..alpha {
                    c = half_angle(&c, angle_denominator)?;
                    angle_denominator *= 2;
                }
                c
            }
        }
    } else {
        let mut c = construct_fermat_prime(odd_primes[0])?;
        let mut built = odd_primes[0];
        for &p in &odd_primes[1..] {
            let cp = construct_fermat_prime(p)?;
            c = combine_coprime(built, p, &c, &cp)?;
            built *= p;
        }
        for _ in 0..alpha {
            c = half_angle(&c, built)?;
            built *= 2;
        }
        c
    };

    // final gate: the expression must agree with the reference oracle
    let bracket = evaluate(&expr, SELF_CHECK_DIGITS)?;
    let reference = reference_cos(n, SELF_CHECK_DIGITS);
    if agree_within(&bracket, &reference, SELF_CHECK_DIGITS) {
        Ok(expr)
    } else {
        Err(ConstructError::CertificationFailed { n })
    }
}

/// `|mid_a − mid_b| ≤ 2·10^(−digits)`.
pub fn agree_within(a: &CertifiedDecimal, b: &CertifiedDecimal, digits: u32) -> bool {
    let diff = a.abs_midpoint_diff(b);
    let diff_rational = diff.to_rational();
    let bound = BigRational::new(2.into(), num_bigint::BigInt::from(10u32).pow(digits));
    diff_rational <= bound
}
