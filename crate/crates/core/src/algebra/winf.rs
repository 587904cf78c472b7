//! Differential operators `x^alpha D^i` (`D = x d/dx`, `i >= 1`) with the
//! centrally extended bracket
//!
//! `[x^a D^i, x^b D^j] = x^(a+b) ((D+b)^i D^j - D^i (D+a)^j)
//!     + delta(a+b,0) (-1)^i i! j! C(a+i, i+j+1) c`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Basis, BlockAlgebra};
use crate::scalar::{FieldContext, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    ctx: Arc<FieldContext>,
    /// `(alpha, i) -> coefficient` of `x^alpha D^i`.
    terms: BTreeMap<(i64, u32), Scalar>,
    central: Scalar,
}

impl DiffOp {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        DiffOp {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
            central: Scalar::zero(ctx),
        }
    }

    /// `x^alpha D^i`; `i` must be at least one.
    pub fn monomial(ctx: &Arc<FieldContext>, alpha: i64, i: u32) -> Self {
        assert!(i >= 1, "operators of D-degree zero are outside the algebra");
        let mut d = DiffOp::zero(ctx);
        d.add_term(alpha, i, &Scalar::one(ctx));
        d
    }

    pub fn add_term(&mut self, alpha: i64, i: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((alpha, i))
            .or_insert_with(|| Scalar::zero(&self.ctx));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(alpha, i));
        }
    }

    pub fn coeff(&self, alpha: i64, i: u32) -> Scalar {
        self.terms
            .get(&(alpha, i))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for ((a, i), c) in &o.terms {
            out.add_term(*a, *i, &-c);
        }
        out.central = &out.central - &o.central;
        out
    }

    pub fn bracket(&self, o: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(&self.ctx);
        for ((a, i), cx) in &self.terms {
            for ((b, j), cy) in &o.terms {
                let c = cx * cy;
                for (k, v) in monomial_bracket_coeffs(*a, *i, *b, *j) {
                    if !v.is_zero() {
                        out.add_term(a + b, k, &(&c * &Scalar::rational(&self.ctx, v.into())));
                    }
                }
                if a + b == 0 {
                    let z = central_term(*a, *i, *j);
                    if !z.is_zero() {
                        out.central = &out.central + &(&c * &Scalar::rational(&self.ctx, z));
                    }
                }
            }
        }
        out
    }
}

/// Coefficients of `D^k` in `(D+b)^i D^j - D^i (D+a)^j`.
fn monomial_bracket_coeffs(a: i64, i: u32, b: i64, j: u32) -> BTreeMap<u32, BigInt> {
    let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
    let (ba, bb) = (BigInt::from(a), BigInt::from(b));
    for m in 0..=i {
        let c = binomial(i, m) * num_traits::pow(bb.clone(), (i - m) as usize);
        *out.entry(m + j).or_insert_with(BigInt::zero) += c;
    }
    for m in 0..=j {
        let c = binomial(j, m) * num_traits::pow(ba.clone(), (j - m) as usize);
        *out.entry(m + i).or_insert_with(BigInt::zero) -= c;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(n, m) = n (n-1) ... (n-m+1) / m!` for any integer `n`.
pub fn generalized_binomial(n: i64, m: u32) -> BigRational {
    let mut num = BigInt::one();
    for t in 0..m {
        num *= BigInt::from(n - t as i64);
    }
    BigRational::new(num, factorial(m))
}

fn central_term(a: i64, i: u32, j: u32) -> BigRational {
    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
    let f = BigRational::from_integer(BigInt::from(sign) * factorial(i) * factorial(j));
    f * generalized_binomial(a + i as i64, i + j + 1)
}

/// Difference between the top `D`-coefficient of `[x^a D^i, x^b D^j]` and the
/// structure constant of `[L[a,i-1], L[b,j-1]]` in `B(1)`.
pub fn assoc_graded_check(a: i64, b: i64, i: u32, j: u32) -> Scalar {
    assert!(i >= 1 && j >= 1, "D-degrees start at one");
    let b1 = BlockAlgebra::at_ratio(1, 1);
    let ctx = b1.ctx();
    let br = DiffOp::monomial(ctx, a, i).bracket(&DiffOp::monomial(ctx, b, j));
    let top = br.coeff(a + b, i + j - 1);
    let lie = b1.bracket(&b1.gen(a, i - 1), &b1.gen(b, j - 1));
    top - lie.coeff(Basis::gen(a + b, i + j - 2))
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |a: i64, i: u32| {
            let x = match a {
                0 => String::new(),
                1 => "x*".into(),
                _ => format!("x^{a}*"),
            };
            let d = if i == 1 {
                "D".to_string()
            } else {
                format!("D^{i}")
            };
            format!("{x}{d}")
        };
        let mut items: Vec<(String, &Scalar)> = self
            .terms
            .iter()
            .map(|((a, i), c)| (sym(*a, *i), c))
            .collect();
        if !self.central.is_zero() {
            items.push(("c".into(), &self.central));
        }
        write!(f, "{}", super::format_terms(items.into_iter()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::rational::<&str>(&[]).unwrap()
    }

    #[test]
    fn first_order_brackets() {
        let k = ctx();
        let br = DiffOp::monomial(&k, 1, 1).bracket(&DiffOp::monomial(&k, -1, 1));
        // (D-1)D - D(D+1) = -2D; C(2,3) = 0
        assert_eq!(br.to_string(), "-2*D");
        let br = DiffOp::monomial(&k, 2, 1).bracket(&DiffOp::monomial(&k, -2, 1));
        assert_eq!(br.to_string(), "-4*D - c");
    }

    #[test]
    fn second_order_bracket() {
        let k = ctx();
        let br = DiffOp::monomial(&k, 1, 2).bracket(&DiffOp::monomial(&k, 1, 1));
        // (D+1)^2 D - D^2 (D+1) = D^3 + D^2... minus D^3 + D^2 -> D^2 + D
        assert_eq!(br.to_string(), "x^2*D + x^2*D^2");
    }

    #[test]
    fn central_term_matches_formula() {
        let k = ctx();
        for a in -4i64..=4 {
            let br = DiffOp::monomial(&k, a, 1).bracket(&DiffOp::monomial(&k, -a, 1));
            let expect = -generalized_binomial(a + 1, 3);
            assert_eq!(br.central().as_rational().unwrap(), expect);
        }
    }

    #[test]
    fn generalized_binomial_negative_top() {
        assert_eq!(
            generalized_binomial(-1, 3),
            BigRational::from_integer((-1).into())
        );
        assert_eq!(
            generalized_binomial(5, 2),
            BigRational::from_integer(10.into())
        );
    }

    #[test]
    fn graded_examples() {
        assert!(assoc_graded_check(1, -1, 2, 1).is_zero());
        assert!(assoc_graded_check(0, 0, 3, 2).is_zero());
        assert!(assoc_graded_check(3, 2, 1, 4).is_zero());
    }
}
