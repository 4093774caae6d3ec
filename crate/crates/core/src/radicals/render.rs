//! Deterministic renderers: plain text, LaTeX, and the canonical JSON wire
//! form. Identical expressions always render to identical bytes.

use alloc::string::String;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::RadicalExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Latex,
    Json,
}

/// Renders an expression.
///
/// The JSON form is canonical: object keys in fixed order, no whitespace,
/// constants as decimal strings `"num"`/`"den"` with `den ≥ 1` in lowest
/// terms. Parsing it back yields a structurally identical expression.
pub fn render(expr: &RadicalExpr, format: RenderFormat) -> String {
    let mut out = String::new();
    match format {
        RenderFormat::Text => text(expr, Prec::Sum, &mut out),
        RenderFormat::Latex => latex(expr, Prec::Sum, &mut out),
        RenderFormat::Json => json(expr, &mut out),
    }
    out
}

/// Precedence of the context an expression is printed into.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum,
    Product,
    Atom,
}

fn node_prec(expr: &RadicalExpr) -> Prec {
    match expr {
        RadicalExpr::Const(q) => {
            if q.is_negative() {
                Prec::Sum
            } else {
                Prec::Atom
            }
        }
        RadicalExpr::Add(..) | RadicalExpr::Sub(..) => Prec::Sum,
        RadicalExpr::Mul(..) | RadicalExpr::Div(..) => Prec::Product,
        RadicalExpr::Sqrt(_) => Prec::Atom,
    }
}

fn text(expr: &RadicalExpr, min: Prec, out: &mut String) {
    let prec = node_prec(expr);
    let parens = prec < min;
    if parens {
        out.push('(');
    }
    match expr {
        RadicalExpr::Const(q) => {
            out.push_str(&alloc::format!("{q}"));
        }
        RadicalExpr::Add(l, r) => {
            text(l, Prec::Sum, out);
            out.push_str(" + ");
            text(r, Prec::Product, out);
        }
        RadicalExpr::Sub(l, r) => {
            text(l, Prec::Sum, out);
            out.push_str(" - ");
            text(r, Prec::Product, out);
        }
        RadicalExpr::Mul(l, r) => {
            text(l, Prec::Product, out);
            out.push('*');
            text(r, Prec::Atom, out);
        }
        RadicalExpr::Div(l, r) => {
            text(l, Prec::Product, out);
            out.push('/');
            text(r, Prec::Atom, out);
        }
        RadicalExpr::Sqrt(c) => {
            out.push_str("sqrt(");
            text(c, Prec::Sum, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

fn latex_const(q: &BigRational, out: &mut String) {
    if q.is_negative() {
        out.push('-');
    }
    let num = q.numer().abs();
    if q.denom().is_one() {
        out.push_str(&alloc::format!("{num}"));
    } else {
        out.push_str(&alloc::format!("\\frac{{{num}}}{{{}}}", q.denom()));
    }
}

fn latex(expr: &RadicalExpr, min: Prec, out: &mut String) {
    let prec = node_prec(expr);
    // fractions and roots carry their own grouping
    let self_grouping = matches!(expr, RadicalExpr::Div(..) | RadicalExpr::Sqrt(_))
        || matches!(expr, RadicalExpr::Const(q) if !q.denom().is_one() && !q.is_negative());
    let parens = prec < min && !self_grouping;
    if parens {
        out.push_str("\\left(");
    }
    match expr {
        RadicalExpr::Const(q) => latex_const(q, out),
        RadicalExpr::Add(l, r) => {
            latex(l, Prec::Sum, out);
            out.push('+');
            latex(r, Prec::Product, out);
        }
        RadicalExpr::Sub(l, r) => {
            latex(l, Prec::Sum, out);
            out.push('-');
            latex(r, Prec::Product, out);
        }
        RadicalExpr::Mul(l, r) => {
            latex(l, Prec::Product, out);
            out.push_str(" \\cdot ");
            latex(r, Prec::Atom, out);
        }
        RadicalExpr::Div(l, r) => {
            out.push_str("\\frac{");
            latex(l, Prec::Sum, out);
            out.push_str("}{");
            latex(r, Prec::Sum, out);
            out.push('}');
        }
        RadicalExpr::Sqrt(c) => {
            out.push_str("\\sqrt{");
            latex(c, Prec::Sum, out);
            out.push('}');
        }
    }
    if parens {
        out.push_str("\\right)");
    }
}

fn json(expr: &RadicalExpr, out: &mut String) {
    match expr {
        RadicalExpr::Const(q) => {
            out.push_str("{\"op\":\"const\",\"num\":\"");
            out.push_str(&alloc::format!("{}", q.numer()));
            out.push_str("\",\"den\":\"");
            out.push_str(&alloc::format!("{}", q.denom()));
            out.push_str("\"}");
        }
        RadicalExpr::Add(l, r) => json_binary("add", l, r, out),
        RadicalExpr::Sub(l, r) => json_binary("sub", l, r, out),
        RadicalExpr::Mul(l, r) => json_binary("mul", l, r, out),
        RadicalExpr::Div(l, r) => json_binary("div", l, r, out),
        RadicalExpr::Sqrt(c) => {
            out.push_str("{\"op\":\"sqrt\",\"arg\":");
            json(c, out);
            out.push('}');
        }
    }
}

fn json_binary(op: &str, l: &RadicalExpr, r: &RadicalExpr, out: &mut String) {
    out.push_str("{\"op\":\"");
    out.push_str(op);
    out.push_str("\",\"args\":[");
    json(l, out);
    out.push(',');
    json(r, out);
    out.push_str("]}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::radicals::RadicalExpr as E;

    #[test]
    fn latex_pentagon() {
        let e = E::div(
            &E::sub(&E::sqrt(&E::integer(5)), &E::integer(1)),
            &E::integer(4),
        );
        assert_eq!(render(&e, RenderFormat::Latex), "\\frac{\\sqrt{5}-1}{4}");
    }

    #[test]
    fn text_negative_rational() {
        let e = E::rational(rational(-1, 2));
        assert_eq!(render(&e, RenderFormat::Text), "-1/2");
    }

    #[test]
    fn json_sqrt_two() {
        let e = E::sqrt(&E::integer(2));
        assert_eq!(
            render(&e, RenderFormat::Json),
            "{\"op\":\"sqrt\",\"arg\":{\"op\":\"const\",\"num\":\"2\",\"den\":\"1\"}}"
        );
    }

    #[test]
    fn text_parenthesization() {
        let sum = E::sub(&E::sqrt(&E::integer(5)), &E::integer(1));
        let e = E::div(&sum, &E::integer(4));
        assert_eq!(render(&e, RenderFormat::Text), "(sqrt(5) - 1)/4");

        // subtracting a negative constant keeps the sign readable
        let f = E::sub(&E::sqrt(&E::integer(2)), &E::rational(rational(-1, 2)));
        assert_eq!(render(&f, RenderFormat::Text), "sqrt(2) - (-1/2)");
    }

    #[test]
    fn latex_negative_fraction() {
        let e = E::rational(rational(-3, 4));
        assert_eq!(render(&e, RenderFormat::Latex), "-\\frac{3}{4}");
    }
}
