use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::{parse_expr, Expr, FieldContext, Scalar, ScalarError};

/// A basis symbol: `L[alpha,i]` or the central element `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Gen { alpha: i64, i: u32 },
    Central,
}

impl Basis {
    pub fn gen(alpha: i64, i: u32) -> Self {
        Basis::Gen { alpha, i }
    }

    /// Degree in the `Z`-gradation; the central element sits in degree 0.
    pub fn degree(&self) -> i64 {
        match self {
            Basis::Gen { alpha, .. } => *alpha,
            Basis::Central => 0,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Gen { alpha, i } => write!(f, "L[{alpha},{i}]"),
            Basis::Central => write!(f, "c"),
        }
    }
}

/// Finite linear combination of basis symbols, no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    ctx: Arc<FieldContext>,
    terms: BTreeMap<Basis, Scalar>,
}

impl Element {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Element {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ctx: &Arc<FieldContext>, b: Basis) -> Self {
        Self::term(b, Scalar::one(ctx))
    }

    pub fn gen(ctx: &Arc<FieldContext>, alpha: i64, i: u32) -> Self {
        Self::basis(ctx, Basis::gen(alpha, i))
    }

    pub fn central(ctx: &Arc<FieldContext>) -> Self {
        Self::basis(ctx, Basis::Central)
    }

    pub fn term(b: Basis, coeff: Scalar) -> Self {
        let mut e = Element::zero(coeff.ctx());
        e.add_term(b, &coeff);
        e
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Basis) -> Scalar {
        self.terms
            .get(&b)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn central_coeff(&self) -> Scalar {
        self.coeff(Basis::Central)
    }

    pub fn add_term(&mut self, b: Basis, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c);
        }
        out
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero(&self.ctx);
        }
        Element {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// The common degree of all terms, or `None` when inhomogeneous or zero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Basis::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Applies `f` to every coefficient (used to move between contexts).
    pub fn try_map_coeffs(
        &self,
        ctx: &Arc<FieldContext>,
        f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>,
    ) -> Result<Element, ScalarError> {
        let mut out = Element::zero(ctx);
        for (b, c) in &self.terms {
            out.add_term(*b, &f(c)?);
        }
        Ok(out)
    }

    /// Parses element text such as `-4*q*L[0,0] + (1/2)*c`.
    pub fn parse(ctx: &Arc<FieldContext>, text: &str) -> Result<Element, ScalarError> {
        let e = parse_expr(text)?;
        match eval(ctx, &e)? {
            Val::E(el) => Ok(el),
            Val::S(s) if s.is_zero() => Ok(Element::zero(ctx)),
            Val::S(_) => Err(ScalarError::Parse(crate::scalar::ParseError {
                line: 1,
                col: 1,
                message: "expression has no basis symbol".into(),
            })),
        }
    }
}

enum Val {
    S(Scalar),
    E(Element),
}

fn not_linear() -> ScalarError {
    ScalarError::Parse(crate::scalar::ParseError {
        line: 1,
        col: 1,
        message: "element text must be linear in the basis symbols".into(),
    })
}

fn eval(ctx: &Arc<FieldContext>, e: &Expr) -> Result<Val, ScalarError> {
    Ok(match e {
        Expr::Basis(alpha, i) => {
            let i = u32::try_from(*i).map_err(|_| {
                ScalarError::Parse(crate::scalar::ParseError {
                    line: 1,
                    col: 1,
                    message: format!("negative second index in L[{alpha},{i}]"),
                })
            })?;
            Val::E(Element::gen(ctx, *alpha, i))
        }
        Expr::Ident(s) if s == "c" && !ctx.has_var("c") => Val::E(Element::central(ctx)),
        Expr::Neg(a) => match eval(ctx, a)? {
            Val::S(s) => Val::S(-s),
            Val::E(x) => Val::E(x.neg()),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sub = matches!(e, Expr::Sub(..));
            match (eval(ctx, a)?, eval(ctx, b)?) {
                (Val::S(x), Val::S(y)) => Val::S(if sub { x - y } else { x + y }),
                (Val::E(x), Val::E(y)) => Val::E(if sub { x.sub(&y) } else { x.add(&y) }),
                (Val::E(x), Val::S(y)) | (Val::S(y), Val::E(x)) if y.is_zero() => Val::E(x),
                _ => return Err(not_linear()),
            }
        }
        Expr::Mul(a, b) => match (eval(ctx, a)?, eval(ctx, b)?) {
            (Val::S(x), Val::S(y)) => Val::S(x * y),
            (Val::S(s), Val::E(x)) | (Val::E(x), Val::S(s)) => Val::E(x.scale(&s)),
            _ => return Err(not_linear()),
        },
        Expr::Div(a, b) => match (eval(ctx, a)?, eval(ctx, b)?) {
            (Val::S(x), Val::S(y)) => Val::S(x.checked_div(&y)?),
            (Val::E(x), Val::S(y)) => Val::E(x.scale(&y.inv()?)),
            _ => return Err(not_linear()),
        },
        other => Val::S(Scalar::from_expr(ctx, other)?),
    })
}

/// Formats `coeff*symbol` pieces joined with signs, e.g. `-4*q*L[0,0] + (1/2)*c`.
pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (sym, c) in terms {
        let neg = c.leading_is_negative();
        let abs = if neg { -c } else { c.clone() };
        let cs = abs.to_string();
        let simple = abs.is_polynomial() && abs.numer_poly().terms().len() == 1;
        let body = match (sym.is_empty(), abs.is_one(), simple) {
            (true, _, true) => cs,
            (true, _, false) => format!("({cs})"),
            (false, true, _) => sym,
            (false, false, true) => format!("{cs}*{sym}"),
            (false, false, false) => format!("({cs})*{sym}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(self.terms.iter().map(|(b, c)| (b.to_string(), c)));
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let ctx = FieldContext::rational(&["q"]).unwrap();
        let text = "-4*q*L[0,0] + (1/2)*c";
        let e = Element::parse(&ctx, text).unwrap();
        assert_eq!(e.to_string(), text);
        let e2 = Element::parse(&ctx, "(2*q+1)*L[1,2] - L[-1,0]").unwrap();
        assert_eq!(e2.to_string(), "-L[-1,0] + (2*q + 1)*L[1,2]");
        assert_eq!(Element::parse(&ctx, &e2.to_string()).unwrap(), e2);
    }

    #[test]
    fn nonlinear_text_rejected() {
        let ctx = FieldContext::rational(&["q"]).unwrap();
        assert!(Element::parse(&ctx, "L[0,0]*L[1,0]").is_err());
        assert!(Element::parse(&ctx, "L[0,0] + 1").is_err());
    }
}
