//! Radical expression trees over exact rationals, closed under
//! `+ − × ÷ √`, with certified arbitrary-precision evaluation, renderers,
//! and extraction of the chain of quadratic extensions an expression lives in.

mod eval;
mod json;
mod reference;
mod render;

pub use eval::{evaluate, CertifiedDecimal, Decimal, EvalError};
pub use json::{parse_json, JsonParseError};
pub use reference::{reference_cos, reference_cos_sum};
pub use render::{render, RenderFormat};

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Shared handle to an expression node. Subtrees may be shared freely;
/// everything in this module treats expressions as immutable.
pub type Expr = Rc<RadicalExpr>;

/// A node of a radical expression: an exact rational constant or one of the
/// five closed operations.
///
/// Invariants maintained by the constructors:
/// - the right child of `Div` is never the literal zero constant;
/// - `Sqrt` of a negative constant is rejected outright, and `Sqrt` of a
///   perfect-square rational folds to a constant. Non-constant radicands are
///   checked by certified evaluation when the expression is used.
///
/// No simplification happens beyond exact folding of all-constant nodes:
/// the shape of a synthesized expression is part of the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalExpr {
    Const(BigRational),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Sqrt(Expr),
}

impl RadicalExpr {
    pub fn rational(q: BigRational) -> Expr {
        Rc::new(RadicalExpr::Const(q))
    }

    pub fn integer(n: i64) -> Expr {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The constant inside, if this node is a constant.
    pub fn as_const(&self) -> Option<&BigRational> {
        match self {
            RadicalExpr::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn add(l: &Expr, r: &Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => Self::rational(a + b),
            _ => Rc::new(RadicalExpr::Add(l.clone(), r.clone())),
        }
    }

    pub fn sub(l: &Expr, r: &Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => Self::rational(a - b),
            _ => Rc::new(RadicalExpr::Sub(l.clone(), r.clone())),
        }
    }

    pub fn mul(l: &Expr, r: &Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => Self::rational(a * b),
            _ => Rc::new(RadicalExpr::Mul(l.clone(), r.clone())),
        }
    }

    /// Division. Panics if the divisor is the literal zero constant; division
    /// by an expression that merely evaluates to zero surfaces as an
    /// evaluation error instead.
    pub fn div(l: &Expr, r: &Expr) -> Expr {
        if let Some(b) = r.as_const() {
            assert!(!b.is_zero(), "division by the zero constant");
            if let Some(a) = l.as_const() {
                return Self::rational(a / b);
            }
        }
        Rc::new(RadicalExpr::Div(l.clone(), r.clone()))
    }

    /// Principal square root. Folds perfect-square rational constants; panics
    /// on a negative constant radicand.
    pub fn sqrt(child: &Expr) -> Expr {
        if let Some(q) = child.as_const() {
            assert!(!q.is_negative(), "square root of a negative constant");
            if let Some(root) = rational_sqrt_exact(q) {
                return Self::rational(root);
            }
        }
        Rc::new(RadicalExpr::Sqrt(child.clone()))
    }
}

impl Drop for RadicalExpr {
    /// Iterative teardown. The JSON parser accepts arbitrarily deep input,
    /// so the default recursive destructor could overflow the stack.
    fn drop(&mut self) {
        if matches!(self, RadicalExpr::Const(_)) {
            return;
        }
        let placeholder: Expr = Rc::new(RadicalExpr::Const(BigRational::zero()));
        let mut stack: Vec<Expr> = Vec::new();
        take_children(self, &placeholder, &mut stack);
        while let Some(node) = stack.pop() {
            if let Some(mut owned) = Rc::into_inner(node) {
                take_children(&mut owned, &placeholder, &mut stack);
            }
        }
    }
}

fn take_children(node: &mut RadicalExpr, placeholder: &Expr, out: &mut Vec<Expr>) {
    match node {
        RadicalExpr::Const(_) => {}
        RadicalExpr::Add(l, r)
        | RadicalExpr::Sub(l, r)
        | RadicalExpr::Mul(l, r)
        | RadicalExpr::Div(l, r) => {
            out.push(core::mem::replace(l, placeholder.clone()));
            out.push(core::mem::replace(r, placeholder.clone()));
        }
        RadicalExpr::Sqrt(c) => out.push(core::mem::replace(c, placeholder.clone())),
    }
}

/// Exact square root of a nonnegative rational, when one exists.
fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    let num = q.numer();
    let den = q.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Maximum number of `Sqrt` nodes on any root-to-leaf path.
///
/// Shared subtrees are visited once; the walk is linear in the number of
/// distinct nodes.
pub fn sqrt_depth(expr: &RadicalExpr) -> usize {
    fn go(e: &RadicalExpr, memo: &mut BTreeMap<usize, usize>) -> usize {
        let key = e as *const RadicalExpr as usize;
        if let Some(&d) = memo.get(&key) {
            return d;
        }
        let d = match e {
            RadicalExpr::Const(_) => 0,
            RadicalExpr::Add(l, r)
            | RadicalExpr::Sub(l, r)
            | RadicalExpr::Mul(l, r)
            | RadicalExpr::Div(l, r) => go(l, memo).max(go(r, memo)),
            RadicalExpr::Sqrt(c) => go(c, memo) + 1,
        };
        memo.insert(key, d);
        d
    }
    go(expr, &mut BTreeMap::new())
}

/// The ordered list of square-root radicands an expression depends on:
/// the chain of quadratic extensions `Q ⊂ Q[√a_1] ⊂ …` the expression
/// lives atop.
#[derive(Debug, Clone)]
pub struct ExtensionTower {
    radicands: Vec<Expr>,
}

impl ExtensionTower {
    /// Radicands in dependency order: each entry uses only square roots
    /// introduced earlier in the list.
    pub fn radicands(&self) -> &[Expr] {
        &self.radicands
    }

    pub fn len(&self) -> usize {
        self.radicands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radicands.is_empty()
    }
}

/// Collects the distinct `Sqrt` radicands of `expr` in dependency order,
/// innermost first, deduplicated by structural equality.
pub fn extract_tower(expr: &Expr) -> ExtensionTower {
    let mut radicands: Vec<Expr> = Vec::new();
    let mut visited: BTreeMap<usize, ()> = BTreeMap::new();

    fn go(e: &Expr, radicands: &mut Vec<Expr>, visited: &mut BTreeMap<usize, ()>) {
        let key = Rc::as_ptr(e) as usize;
        if visited.contains_key(&key) {
            return;
        }
        visited.insert(key, ());
        match &**e {
            RadicalExpr::Const(_) => {}
            RadicalExpr::Add(l, r)
            | RadicalExpr::Sub(l, r)
            | RadicalExpr::Mul(l, r)
            | RadicalExpr::Div(l, r) => {
                go(l, radicands, visited);
                go(r, radicands, visited);
            }
            RadicalExpr::Sqrt(c) => {
                go(c, radicands, visited);
                if !radicands.iter().any(|known| known == c) {
                    radicands.push(c.clone());
                }
            }
        }
    }

    go(expr, &mut radicands, &mut visited);
    ExtensionTower { radicands }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn constant_folding() {
        let half = RadicalExpr::rational(rational(1, 2));
        let one = RadicalExpr::integer(1);
        let sum = RadicalExpr::add(&one, &half);
        assert_eq!(sum.as_const(), Some(&rational(3, 2)));

        let q = RadicalExpr::div(&one, &RadicalExpr::integer(4));
        let folded = RadicalExpr::sqrt(&q);
        assert_eq!(folded.as_const(), Some(&rational(1, 2)));

        // √0 folds away entirely
        assert_eq!(
            RadicalExpr::sqrt(&RadicalExpr::integer(0)).as_const(),
            Some(&rational(0, 1))
        );

        // irrational radicands stay symbolic
        let s2 = RadicalExpr::sqrt(&RadicalExpr::integer(2));
        assert!(s2.as_const().is_none());
    }

    #[test]
    #[should_panic(expected = "division by the zero constant")]
    fn zero_divisor_rejected() {
        let _ = RadicalExpr::div(&RadicalExpr::integer(1), &RadicalExpr::integer(0));
    }

    #[test]
    #[should_panic(expected = "negative constant")]
    fn negative_sqrt_rejected() {
        let _ = RadicalExpr::sqrt(&RadicalExpr::integer(-2));
    }

    #[test]
    fn sqrt_depth_examples() {
        assert_eq!(sqrt_depth(&RadicalExpr::integer(3)), 0);
        let inner = RadicalExpr::sqrt(&RadicalExpr::integer(2));
        let nested = RadicalExpr::sqrt(&RadicalExpr::add(&RadicalExpr::integer(1), &inner));
        assert_eq!(sqrt_depth(&nested), 2);
    }

    #[test]
    fn tower_examples() {
        // (√5 − 1)/4 lives in the single extension Q[√5]
        let five = RadicalExpr::integer(5);
        let pentagon = RadicalExpr::div(
            &RadicalExpr::sub(&RadicalExpr::sqrt(&five), &RadicalExpr::integer(1)),
            &RadicalExpr::integer(4),
        );
        let tower = extract_tower(&pentagon);
        assert_eq!(tower.len(), 1);
        assert_eq!(tower.radicands()[0], five);

        // rationals need no extension at all
        assert!(extract_tower(&RadicalExpr::integer(7)).is_empty());

        // √(1 + √2): two nested extensions, inner first
        let two = RadicalExpr::integer(2);
        let inner = RadicalExpr::sqrt(&two);
        let outer_rad = RadicalExpr::add(&RadicalExpr::integer(1), &inner);
        let nested = RadicalExpr::sqrt(&outer_rad);
        let tower = extract_tower(&nested);
        assert_eq!(tower.len(), 2);
        assert_eq!(tower.radicands()[0], two);
        assert_eq!(tower.radicands()[1], outer_rad);

        // sharing the same radicand twice introduces it once
        let a = RadicalExpr::sqrt(&two);
        let b = RadicalExpr::sqrt(&RadicalExpr::integer(2));
        let both = RadicalExpr::add(&a, &b);
        assert_eq!(extract_tower(&both).len(), 1);
    }
}
