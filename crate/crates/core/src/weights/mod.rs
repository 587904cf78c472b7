//! Highest weights of `B(q)` and the quasifiniteness test.
//!
//! A weight is recorded by its labels `Lambda_n = Lambda(L[0,n])` for
//! `n <= N`. The generating series enters only through its exponential
//! coefficients `d_n = (2q+n) Lambda_n`; the module is quasifinite exactly
//! when `d` satisfies a linear recurrence with constant coefficients.

mod quasi;
mod recurrence;
mod singular;
mod upoly;

pub use quasi::{labels_from_quasipoly, QuasiPolynomial};
pub use recurrence::{berlekamp_massey, Recurrence};
pub use singular::{apply_functional, bqa0_element, singular_check, singular_residuals};
pub use upoly::UPoly;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::scalar::{FieldContext, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("truncation exceeded: label {needed} requested but only labels 0..={have} are known")]
    TruncationExceeded { needed: usize, have: usize },
    #[error("free value required at n={0}")]
    MissingFreeValue(usize),
    #[error("quasipolynomial coefficient at pole index n={0} is nonzero")]
    PoleCoefficientNonzero(usize),
    #[error("invalid quasipolynomial: {0}")]
    InvalidQuasiPolynomial(String),
    #[error("no certified recurrence: {0}")]
    NoCharacteristicPolynomial(String),
}

/// Truncated highest weight: `q`, labels `Lambda_0..=Lambda_N` and `Lambda(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub q: Scalar,
    pub labels: Vec<Scalar>,
    pub central: Scalar,
}

/// Verdict of [`Weight::is_quasifinite`]; each carries the Berlekamp-Massey candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Quasifinite(Recurrence),
    NotDetected(Recurrence),
    Insufficient(Recurrence),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Quasifinite(_) => "QUASIFINITE",
            Verdict::NotDetected(_) => "NOT_DETECTED",
            Verdict::Insufficient(_) => "INSUFFICIENT",
        }
    }

    pub fn recurrence(&self) -> &Recurrence {
        match self {
            Verdict::Quasifinite(r) | Verdict::NotDetected(r) | Verdict::Insufficient(r) => r,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Quasifinite(r) => write!(f, "QUASIFINITE, h = {}", r.annihilator),
            Verdict::NotDetected(r) => write!(
                f,
                "NOT_DETECTED (linear complexity {} on {} terms)",
                r.order, r.length
            ),
            Verdict::Insufficient(r) => write!(
                f,
                "INSUFFICIENT (candidate h = {} needs {} terms, have {})",
                r.annihilator,
                2 * r.order + 2,
                r.length
            ),
        }
    }
}

impl Weight {
    pub fn new(q: Scalar, labels: Vec<Scalar>, central: Scalar) -> Self {
        Weight { q, labels, central }
    }

    /// Weight with every label and the central charge zero.
    pub fn trivial(q: Scalar, depth: usize) -> Self {
        let z = Scalar::zero(q.ctx());
        Weight {
            labels: vec![z.clone(); depth + 1],
            central: z,
            q,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.q.ctx()
    }

    /// Truncation depth `N`.
    pub fn depth(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    fn label(&self, n: usize) -> Result<&Scalar, WeightError> {
        self.labels.get(n).ok_or(WeightError::TruncationExceeded {
            needed: n,
            have: self.depth(),
        })
    }

    /// `2q + n`.
    pub fn shift(&self, n: usize) -> Scalar {
        self.q.scale_int(2) + Scalar::int(self.ctx(), n as i64)
    }

    /// `d_n = (2q+n) Lambda_n`, the coefficient of `z^n/n!` in the generating series.
    pub fn delta_coeffs(&self) -> Vec<Scalar> {
        self.labels
            .iter()
            .enumerate()
            .map(|(n, l)| &self.shift(n) * l)
            .collect()
    }

    pub fn is_quasifinite(&self) -> Verdict {
        let d = self.delta_coeffs();
        let r = berlekamp_massey(self.ctx(), &d);
        if r.is_certified() {
            Verdict::Quasifinite(r)
        } else if r.order > self.depth() / 2 {
            Verdict::NotDetected(r)
        } else {
            Verdict::Insufficient(r)
        }
    }

    /// The stored part `h` of the characteristic polynomial `t^q h(t)`.
    pub fn char_poly(&self) -> Result<UPoly, WeightError> {
        match self.is_quasifinite() {
            Verdict::Quasifinite(r) => Ok(r.annihilator),
            v => Err(WeightError::NoCharacteristicPolynomial(v.to_string())),
        }
    }

    /// `sum_k h_k (2q+i+k) Lambda_(i+k)`.
    pub fn constraint_row(&self, h: &UPoly, i: usize) -> Result<Scalar, WeightError> {
        let top = i + h.degree();
        self.label(top)?;
        let mut acc = Scalar::zero(self.ctx());
        for (k, hk) in h.coeffs().iter().enumerate() {
            if !hk.is_zero() {
                acc += &(&(hk * &self.shift(i + k)) * self.label(i + k)?);
            }
        }
        Ok(acc)
    }

    /// All constraint rows that fit in the truncation.
    pub fn constraint_rows(&self, h: &UPoly) -> Vec<Scalar> {
        let deg = h.degree();
        (0..self.labels.len().saturating_sub(deg))
            .map(|i| self.constraint_row(h, i).expect("within truncation"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_weight() -> Weight {
        // q = 1, Lambda_n = 2^n / (n+2)
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let labels = (0..=6).map(|n| Scalar::ratio(&k, 1 << n, n + 2)).collect();
        Weight::new(Scalar::one(&k), labels, Scalar::zero(&k))
    }

    #[test]
    fn delta_examples() {
        let w = geometric_weight();
        let d: Vec<i64> = w
            .delta_coeffs()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 4, 8, 16, 32, 64]);
        let k = FieldContext::rational(&["q"]).unwrap();
        let q = Scalar::var(&k, "q").unwrap();
        let mut w = Weight::trivial(q.clone(), 3);
        w.labels[0] = Scalar::one(&k);
        let d = w.delta_coeffs();
        assert_eq!(d[0], q.scale_int(2));
        assert!(d[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn verdict_examples() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let t = Weight::trivial(Scalar::one(&k), 6);
        assert_eq!(t.char_poly().unwrap(), UPoly::one(&k));
        let w = geometric_weight();
        assert_eq!(w.char_poly().unwrap(), UPoly::from_ints(&k, &[-2, 1]));
        let mut fact = Scalar::one(&k);
        let mut labels = vec![];
        for n in 0..=8 {
            if n > 0 {
                fact = fact.scale_int(n);
            }
            labels.push(fact.clone());
        }
        let f = Weight::new(Scalar::one(&k), labels, Scalar::zero(&k));
        assert_eq!(f.is_quasifinite().name(), "NOT_DETECTED");
        assert!(f.char_poly().is_err());
    }

    #[test]
    fn constraint_row_examples() {
        let w = geometric_weight();
        let k = w.ctx().clone();
        assert!(w
            .constraint_row(&UPoly::from_ints(&k, &[-2, 1]), 0)
            .unwrap()
            .is_zero());
        assert_eq!(
            w.constraint_row(&UPoly::from_ints(&k, &[-3, 1]), 0)
                .unwrap(),
            Scalar::int(&k, -1)
        );
        assert!(matches!(
            w.constraint_row(&UPoly::from_ints(&k, &[-2, 1]), 6),
            Err(WeightError::TruncationExceeded { needed: 7, have: 6 })
        ));
    }
}
