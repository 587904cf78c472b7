//! Modules of the intermediate series: every graded piece `C v_mu` is at most
//! one dimensional. The degree-zero operators `L[alpha,0]` act by one of the
//! classical Virasoro families (scaled by `q`); the operators with `i >= 1`
//! act through an extension rule. The central element acts trivially.

mod verify;

pub use verify::{
    bracket_residual, eigen_check, irreducible_window, verify_module, Reachability, Violation,
    WindowSpec,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Basis, Element};
use crate::scalar::{FieldContext, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntSeriesError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("index {0} is not in the basis of this module")]
    OutsideBasis(i64),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}

/// Degree-zero action, `L[alpha,0] v_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `q(a + mu + b alpha) v_(alpha+mu)`.
    Aab { a: Scalar, b: Scalar },
    /// `q(mu + alpha) v_(alpha+mu)` for `mu != 0`, `v_0 -> q alpha (a + alpha) v_alpha`.
    Aa { a: Scalar },
    /// `q mu v_(alpha+mu)` for `mu != -alpha`, `v_(-alpha) -> -q alpha (a + alpha) v_0`.
    Ba { a: Scalar },
    /// `q(mu + alpha) v_(alpha+mu)` on the span of `v_mu`, `mu != 0`.
    Ap01,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Aab { .. } => "Aab",
            Family::Aa { .. } => "Aa",
            Family::Ba { .. } => "Ba",
            Family::Ap01 => "Ap01",
        }
    }

    /// The offset `a` in the `L[0,0]` eigenvalue `q(mu + a)`.
    pub fn eigen_offset(&self, ctx: &Arc<FieldContext>) -> Scalar {
        match self {
            Family::Aab { a, .. } => a.clone(),
            _ => Scalar::zero(ctx),
        }
    }

    pub fn contains(&self, mu: i64) -> bool {
        !matches!(self, Family::Ap01) || mu != 0
    }
}

/// Action of `L[alpha,i]` for `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Every `L[alpha,i]`, `i >= 1`, acts as zero.
    Trivial,
    /// `L[0,-2q]` acts by `s`; needs `-2q` a positive integer.
    S { s: Scalar },
    /// `q = -1`: `L[0,2]` acts by `s`, `L[alpha,1] v_mu = t v_(alpha+mu)`.
    ST { s: Scalar, t: Scalar },
    /// `L[0,level]` acts by `s` with no condition on `q`. Not a module in
    /// general; used to probe which levels are allowed.
    Level { level: u32, s: Scalar },
}

impl Extension {
    pub fn name(&self) -> &'static str {
        match self {
            Extension::Trivial => "Trivial",
            Extension::S { .. } => "S",
            Extension::ST { .. } => "ST",
            Extension::Level { .. } => "Level",
        }
    }
}

/// A module of the intermediate series over `B(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateModule {
    q: Scalar,
    family: Family,
    extension: Extension,
    /// The level `-2q` when `q` is a negative half integer.
    s_level: Option<u32>,
}

/// `-2q` when it is a positive integer.
fn negative_double(q: &Scalar) -> Option<u32> {
    let v = q.scale_int(-2).as_i64()?;
    u32::try_from(v).ok().filter(|&v| v >= 1)
}

impl IntermediateModule {
    pub fn new(q: Scalar, family: Family, extension: Extension) -> Result<Self, IntSeriesError> {
        let s_level = negative_double(&q);
        match &extension {
            Extension::S { .. } if s_level.is_none() => {
                return Err(IntSeriesError::InvalidExtension(format!(
                    "S needs -2q to be a positive integer, q = {q}"
                )));
            }
            Extension::ST { .. } if q != Scalar::int(q.ctx(), -1) => {
                return Err(IntSeriesError::InvalidExtension(format!(
                    "ST needs q = -1, q = {q}"
                )));
            }
            Extension::Level { level: 0, .. } => {
                return Err(IntSeriesError::InvalidExtension(
                    "Level extension needs level >= 1".into(),
                ));
            }
            _ => {}
        }
        Ok(IntermediateModule {
            q,
            family,
            extension,
            s_level,
        })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.q.ctx()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn extension(&self) -> &Extension {
        &self.extension
    }

    pub fn basis_vector(&self, mu: i64) -> Result<GradedVector, IntSeriesError> {
        if !self.family.contains(mu) {
            return Err(IntSeriesError::OutsideBasis(mu));
        }
        let mut v = GradedVector::zero(self.ctx());
        v.add_term(mu, &Scalar::one(self.ctx()));
        Ok(v)
    }

    /// `L[alpha,i] v_mu` as `(target index, coefficient)`, `None` when zero.
    pub fn act_basis(&self, alpha: i64, i: u32, mu: i64) -> Option<(i64, Scalar)> {
        if !self.family.contains(mu) {
            return None;
        }
        let ctx = self.ctx();
        let q = &self.q;
        let int = |n: i64| Scalar::int(ctx, n);
        let (target, coeff) = if i == 0 {
            match &self.family {
                Family::Aab { a, b } => (alpha + mu, q * &(a + &(int(mu) + b.scale_int(alpha)))),
                Family::Aa { a } => {
                    if mu != 0 {
                        (alpha + mu, q.scale_int(mu + alpha))
                    } else {
                        (alpha, &q.scale_int(alpha) * &(a + &int(alpha)))
                    }
                }
                Family::Ba { a } => {
                    if mu != -alpha {
                        (alpha + mu, q.scale_int(mu))
                    } else {
                        (0, -(&q.scale_int(alpha) * &(a + &int(alpha))))
                    }
                }
                Family::Ap01 => (alpha + mu, q.scale_int(mu + alpha)),
            }
        } else {
            match &self.extension {
                Extension::Trivial => return None,
                Extension::S { s } => {
                    if alpha == 0 && Some(i) == self.s_level {
                        (mu, s.clone())
                    } else {
                        return None;
                    }
                }
                Extension::Level { level, s } => {
                    if alpha == 0 && i == *level {
                        (mu, s.clone())
                    } else {
                        return None;
                    }
                }
                Extension::ST { s, t } => {
                    if alpha == 0 && i == 2 {
                        (mu, s.clone())
                    } else if i == 1 {
                        (alpha + mu, t.clone())
                    } else {
                        return None;
                    }
                }
            }
        };
        if coeff.is_zero() || !self.family.contains(target) {
            return None;
        }
        Some((target, coeff))
    }

    pub fn act(&self, alpha: i64, i: u32, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.ctx());
        for (mu, c) in v.terms() {
            if let Some((target, k)) = self.act_basis(alpha, i, *mu) {
                out.add_term(target, &(c * &k));
            }
        }
        out
    }

    /// Action of an algebra element; `c` acts as zero.
    pub fn act_element(&self, x: &Element, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.ctx());
        for (b, c) in x.terms() {
            if let Basis::Gen { alpha, i } = b {
                out = out.add(&self.act(*alpha, *i, v).scale(c));
            }
        }
        out
    }
}

impl fmt::Display for IntermediateModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match &self.family {
            Family::Aab { a, b } => format!("A[a={a}, b={b}]"),
            Family::Aa { a } => format!("A[a={a}]"),
            Family::Ba { a } => format!("B[a={a}]"),
            Family::Ap01 => "A'[0,1]".to_string(),
        };
        let ext = match &self.extension {
            Extension::Trivial => String::new(),
            Extension::S { s } => format!("(s={s})"),
            Extension::ST { s, t } => format!("(s={s}, t={t})"),
            Extension::Level { level, s } => format!("(L[0,{level}] -> {s})"),
        };
        write!(f, "{fam}{ext} over B({})", self.q)
    }
}

/// Finite combination of basis vectors `v_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVector {
    ctx: Arc<FieldContext>,
    terms: BTreeMap<i64, Scalar>,
}

impl GradedVector {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        GradedVector {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: i64) -> Scalar {
        self.terms
            .get(&mu)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mu: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(mu)
            .or_insert_with(|| Scalar::zero(&self.ctx));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn add(&self, o: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (mu, c) in &o.terms {
            out.add_term(*mu, c);
        }
        out
    }

    pub fn sub(&self, o: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (mu, c) in &o.terms {
            out.add_term(*mu, &-c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GradedVector {
        let mut out = GradedVector::zero(&self.ctx);
        for (mu, c) in &self.terms {
            out.add_term(*mu, &(c * s));
        }
        out
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s =
            crate::algebra::format_terms(self.terms.iter().map(|(mu, c)| (format!("v[{mu}]"), c)));
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::rational(&["q", "a", "b", "s", "t"]).unwrap()
    }

    fn v(c: &Arc<FieldContext>, n: &str) -> Scalar {
        Scalar::var(c, n).unwrap()
    }

    #[test]
    fn family_rows() {
        let c = ctx();
        let (q, a, b) = (v(&c, "q"), v(&c, "a"), v(&c, "b"));
        let m = IntermediateModule::new(
            q.clone(),
            Family::Aab {
                a: a.clone(),
                b: b.clone(),
            },
            Extension::Trivial,
        )
        .unwrap();
        let (t, k) = m.act_basis(1, 0, 0).unwrap();
        assert_eq!((t, k), (1, &q * &(&a + &b)));
        assert!(m.act_basis(2, 1, 5).is_none());

        let aa =
            IntermediateModule::new(q.clone(), Family::Aa { a: a.clone() }, Extension::Trivial)
                .unwrap();
        assert_eq!(
            aa.act_basis(3, 0, 0).unwrap(),
            (3, &q.scale_int(3) * &(&a + &Scalar::int(&c, 3)))
        );
        let ba =
            IntermediateModule::new(q.clone(), Family::Ba { a: a.clone() }, Extension::Trivial)
                .unwrap();
        assert_eq!(
            ba.act_basis(3, 0, -3).unwrap(),
            (0, -(&q.scale_int(3) * &(&a + &Scalar::int(&c, 3))))
        );
        let ap = IntermediateModule::new(q, Family::Ap01, Extension::Trivial).unwrap();
        assert!(ap.act_basis(2, 0, -2).is_none());
        assert!(ap.basis_vector(0).is_err());
    }

    #[test]
    fn s_extension_level() {
        let c = ctx();
        let s = v(&c, "s");
        let q = Scalar::ratio(&c, -3, 2);
        let m = IntermediateModule::new(
            q,
            Family::Aab {
                a: v(&c, "a"),
                b: v(&c, "b"),
            },
            Extension::S { s: s.clone() },
        )
        .unwrap();
        assert_eq!(m.act_basis(0, 3, 7).unwrap(), (7, s.clone()));
        assert!(m.act_basis(0, 2, 7).is_none());
        assert!(IntermediateModule::new(
            Scalar::ratio(&c, -1, 3),
            Family::Ap01,
            Extension::S { s }
        )
        .is_err());
    }
}
