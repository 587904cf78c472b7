use std::fmt;
use std::sync::Arc;

use crate::scalar::{FieldContext, Scalar};

/// Univariate polynomial with [`Scalar`] coefficients, lowest degree first,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    ctx: Arc<FieldContext>,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(ctx: &Arc<FieldContext>, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, c: &[i64]) -> Self {
        Self::new(ctx, c.iter().map(|&n| Scalar::int(ctx, n)).collect())
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Self::new(ctx, vec![])
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::new(ctx, vec![Scalar::one(ctx)])
    }

    /// `t - a`.
    pub fn linear_root(a: &Scalar) -> Self {
        Self::new(a.ctx(), vec![-a, Scalar::one(a.ctx())])
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> UPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                UPoly::new(&self.ctx, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(
            &self.ctx,
            (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(
            &self.ctx,
            (0..n).map(|k| self.coeff(k) - o.coeff(k)).collect(),
        )
    }

    pub fn scale(&self, s: &Scalar) -> UPoly {
        UPoly::new(&self.ctx, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut out = vec![Scalar::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(&self.ctx, out)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(&self.ctx), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let lc_inv = d.coeffs.last().unwrap().inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() <= dd {
            return (UPoly::zero(&self.ctx), self.clone());
        }
        let mut q = vec![Scalar::zero(&self.ctx); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &(&c * dj);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(&self.ctx, q), UPoly::new(&self.ctx, r))
    }

    pub fn divides(&self, o: &UPoly) -> bool {
        o.divrem(self).1.is_zero()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(&self.ctx), |acc, c| &(&acc * x) + c)
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let sym = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (sym, c)
            });
        crate::algebra::format_terms(terms)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_division() {
        let ctx = FieldContext::rational::<&str>(&[]).unwrap();
        let p = UPoly::from_ints(&ctx, &[1, -2, 1]);
        assert_eq!(p.to_string(), "t^2 - 2*t + 1");
        let d = UPoly::from_ints(&ctx, &[-1, 1]);
        let (q, r) = p.divrem(&d);
        assert_eq!(q, d);
        assert!(r.is_zero());
        assert_eq!(UPoly::one(&ctx).to_string(), "1");
        assert_eq!(UPoly::from_ints(&ctx, &[-2, 1]).to_string(), "t - 2");
        assert_eq!(UPoly::from_ints(&ctx, &[12, 1]).to_string(), "t + 12");
    }
}
