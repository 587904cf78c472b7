//! The Block type Lie algebra `B(q)`: basis `L[alpha,i]` (`i >= 0`) and a
//! central element `c`, with
//!
//! `[L[a,i], L[b,j]] = (b(i+q) - a(j+q)) L[a+b,i+j] + delta(a+b,0) delta(i+j,0) (a^3-a)/12 c`.
//!
//! `q` is a scalar of the context: an indeterminate or a specialized value.

mod element;
pub mod winf;

pub(crate) use element::format_terms;
pub use element::{Basis, Element};

use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{FieldContext, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("q is zero; the Virasoro generators are undefined")]
    QIsZero,
    #[error("denominator vanishes: {0} = 0")]
    DenominatorVanishes(String),
    #[error("alpha = {alpha} is below the bound {bound} for mu0 = {mu0}")]
    BelowBound { mu0: i64, alpha: i64, bound: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// `B(q)` over a field context; `q` may be symbolic or a number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAlgebra {
    q: Scalar,
}

impl BlockAlgebra {
    pub fn new(q: Scalar) -> Self {
        BlockAlgebra { q }
    }

    /// `B(q)` with `q` an indeterminate named `q`.
    pub fn symbolic() -> Self {
        let ctx = FieldContext::rational(&["q"]).expect("valid context");
        BlockAlgebra::new(Scalar::var(&ctx, "q").expect("q exists"))
    }

    /// `B(q)` at a rational value of `q`.
    pub fn at_ratio(n: i64, d: i64) -> Self {
        let ctx = FieldContext::rational::<&str>(&[]).expect("valid context");
        BlockAlgebra::new(Scalar::ratio(&ctx, n, d))
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.q.ctx()
    }

    pub fn gen(&self, alpha: i64, i: u32) -> Element {
        Element::gen(self.ctx(), alpha, i)
    }

    pub fn central(&self) -> Element {
        Element::central(self.ctx())
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.ctx())
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::int(self.ctx(), n)
    }

    /// Structure constant of `[L[a,i], L[b,j]]` on `L[a+b,i+j]`.
    pub fn structure_constant(&self, a: i64, i: u32, b: i64, j: u32) -> Scalar {
        self.q.scale_int(b - a) + self.int(b * i as i64 - a * j as i64)
    }

    /// Central coefficient of `[L[a,i], L[b,j]]`.
    pub fn central_constant(&self, a: i64, i: u32, b: i64, j: u32) -> Scalar {
        if a + b == 0 && i + j == 0 {
            Scalar::ratio(self.ctx(), a * a * a - a, 12)
        } else {
            Scalar::zero(self.ctx())
        }
    }

    fn bracket_basis(&self, x: Basis, y: Basis, out: &mut Element, coeff: &Scalar) {
        let (Basis::Gen { alpha: a, i }, Basis::Gen { alpha: b, i: j }) = (x, y) else {
            return;
        };
        let k = self.structure_constant(a, i, b, j);
        if !k.is_zero() {
            out.add_term(Basis::gen(a + b, i + j), &(&k * coeff));
        }
        let z = self.central_constant(a, i, b, j);
        if !z.is_zero() {
            out.add_term(Basis::Central, &(&z * coeff));
        }
    }

    pub fn try_bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        for e in [x, y] {
            if e.ctx() != self.ctx() && **e.ctx() != **self.ctx() {
                return Err(ScalarError::ContextMismatch(
                    e.ctx().to_string(),
                    self.ctx().to_string(),
                )
                .into());
            }
        }
        let mut out = self.zero();
        for (bx, cx) in x.terms() {
            for (by, cy) in y.terms() {
                self.bracket_basis(*bx, *by, &mut out, &(cx * cy));
            }
        }
        Ok(out)
    }

    /// Bilinear bracket. Panics on mixed contexts; see [`Self::try_bracket`].
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        self.try_bracket(x, y).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobi_residual(&self, x: &Element, y: &Element, z: &Element) -> Element {
        let a = self.bracket(x, &self.bracket(y, z));
        let b = self.bracket(y, &self.bracket(z, x));
        let c = self.bracket(z, &self.bracket(x, y));
        a.add(&b).add(&c)
    }

    /// `L_alpha = q^-1 L[alpha,0]`.
    pub fn vir_embed(&self, alpha: i64) -> Result<Element, AlgebraError> {
        let qi = self.q.inv().map_err(|_| AlgebraError::QIsZero)?;
        Ok(self.gen(alpha, 0).scale(&qi))
    }

    /// `kappa = q^-2 c`.
    pub fn vir_central(&self) -> Result<Element, AlgebraError> {
        let qi = self.q.inv().map_err(|_| AlgebraError::QIsZero)?;
        Ok(self.central().scale(&(&qi * &qi)))
    }

    /// The algebra `B(kq)` receiving [`Self::scale_embed`].
    pub fn scaled(&self, k: u32) -> BlockAlgebra {
        BlockAlgebra::new(self.q.scale_int(k as i64))
    }

    /// `L[a,i] -> k^-1 L[a,ki]`, `c -> k^-2 c`, landing in `B(kq)`.
    pub fn scale_embed(&self, x: &Element, k: u32) -> Result<Element, AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::InvalidArgument(
                "scale factor must be >= 1".into(),
            ));
        }
        let ctx = self.ctx();
        let inv_k = Scalar::ratio(ctx, 1, k as i64);
        let inv_k2 = Scalar::ratio(ctx, 1, (k * k) as i64);
        let mut out = Element::zero(ctx);
        for (b, c) in x.terms() {
            match b {
                Basis::Gen { alpha, i } => out.add_term(Basis::gen(*alpha, k * i), &(c * &inv_k)),
                Basis::Central => out.add_term(Basis::Central, &(c * &inv_k2)),
            }
        }
        Ok(out)
    }

    /// Iterated bracket `ad(z2)^(k2-1) ad(z1)^k1 (z2)` with `z1 = L[1-mu0,0]`,
    /// `z2 = L[-mu0,0]`, next to its closed form coefficient.
    pub fn ad_chain(&self, mu0: i64, k1: u32, k2: u32) -> Result<AdChain, AlgebraError> {
        if mu0 > -1 || k1 < 1 || k2 < 1 {
            return Err(AlgebraError::InvalidArgument(format!(
                "ad_chain needs mu0 <= -1, k1 >= 1, k2 >= 1 (got {mu0}, {k1}, {k2})"
            )));
        }
        let z1 = self.gen(1 - mu0, 0);
        let z2 = self.gen(-mu0, 0);
        let mut x = z2.clone();
        for _ in 0..k1 {
            x = self.bracket(&z1, &x);
        }
        for _ in 1..k2 {
            x = self.bracket(&z2, &x);
        }
        let (k1i, k2i) = (k1 as i64, k2 as i64);
        let mut coeff = self.q.powi(k1 + k2 - 1);
        for i in 1..=k1i {
            coeff = coeff.scale_int(-(i - 1) * mu0 + i - 2);
        }
        for j in 1..k2i {
            coeff = coeff.scale_int(-(k1i + j - 1) * mu0 + k1i);
        }
        let alpha = k1i * (1 - mu0) - k2i * mu0;
        Ok(AdChain {
            iterated: x,
            closed_form: Element::term(Basis::gen(alpha, 0), coeff.clone()),
            coefficient: coeff,
            alpha,
        })
    }

    /// Residual of the bracket identity that carries the induction on `s`:
    /// `L[alpha,s-1] + r^-1 [L[alpha+mu0,s-2], L[-mu0,1]]` with
    /// `r = mu0(2q+s-1) + alpha(q+1)`. At `s = 3, q = -1` that `r` vanishes and
    /// the identity `L[alpha,2] + alpha^-1 [L[alpha+mu0,0], L[-mu0,2]]` is used.
    pub fn induction_step_identity(
        &self,
        mu0: i64,
        alpha: i64,
        s: u32,
    ) -> Result<Element, AlgebraError> {
        if s < 2 {
            return Err(AlgebraError::InvalidArgument("s must be >= 2".into()));
        }
        let minus_one = self.int(-1);
        if s == 3 && self.q == minus_one {
            if alpha == 0 {
                return Err(AlgebraError::DenominatorVanishes("alpha".into()));
            }
            let br = self.bracket(&self.gen(alpha + mu0, 0), &self.gen(-mu0, 2));
            let r = self.int(alpha);
            return Ok(self.gen(alpha, 2).add(&br.scale(&r.inv()?)));
        }
        let r = self.q.scale_int(2 * mu0 + alpha) + self.int(mu0 * (s as i64 - 1) + alpha);
        if r.is_zero() {
            return Err(AlgebraError::DenominatorVanishes(format!(
                "mu0(2q+s-1) + alpha(q+1) at mu0={mu0}, alpha={alpha}, s={s}"
            )));
        }
        let br = self.bracket(&self.gen(alpha + mu0, s - 2), &self.gen(-mu0, 1));
        Ok(self.gen(alpha, s - 1).add(&br.scale(&r.inv()?)))
    }
}

/// Result of [`BlockAlgebra::ad_chain`].
#[derive(Clone, Debug)]
pub struct AdChain {
    pub iterated: Element,
    pub closed_form: Element,
    pub coefficient: Scalar,
    pub alpha: i64,
}

impl AdChain {
    pub fn agrees(&self) -> bool {
        self.iterated == self.closed_form
    }
}

/// `(k1, k2)` with `alpha = k1(1-mu0) - k2 mu0`, both positive, for
/// `alpha >= (1-mu0)^2`.
pub fn decompose_alpha(mu0: i64, alpha: i64) -> Result<(i64, i64), AlgebraError> {
    if mu0 > -1 {
        return Err(AlgebraError::InvalidArgument(format!(
            "mu0 = {mu0} must be <= -1"
        )));
    }
    let bound = (1 - mu0) * (1 - mu0);
    if alpha < bound {
        return Err(AlgebraError::BelowBound { mu0, alpha, bound });
    }
    let k0 = alpha.div_euclid(1 - mu0);
    let k1 = alpha + (k0 + 1) * mu0;
    let k2 = (k0 + 1) * (1 - mu0) - alpha;
    debug_assert_eq!(k1 * (1 - mu0) - k2 * mu0, alpha);
    Ok((k1, k2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: &BlockAlgebra, s: &str) -> Element {
        Element::parse(a.ctx(), s).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let b = BlockAlgebra::symbolic();
        assert!(b.bracket(&b.gen(0, 1), &b.gen(0, 2)).is_zero());
        assert_eq!(
            b.bracket(&b.gen(2, 0), &b.gen(-2, 0)),
            el(&b, "-4*q*L[0,0] + (1/2)*c")
        );
        assert_eq!(
            b.bracket(&b.gen(1, 1), &b.gen(-1, 0)),
            el(&b, "-(1+2*q)*L[0,1]")
        );
    }

    #[test]
    fn virasoro_examples() {
        let b = BlockAlgebra::symbolic();
        let l = |a| b.vir_embed(a).unwrap();
        assert_eq!(b.bracket(&l(1), &l(-1)), el(&b, "-2/q*L[0,0]"));
        assert_eq!(
            b.bracket(&l(2), &l(-2)),
            el(&b, "-4/q*L[0,0] + 1/(2*q^2)*c")
        );
        assert_eq!(
            BlockAlgebra::at_ratio(0, 1).vir_embed(1).unwrap_err(),
            AlgebraError::QIsZero
        );
    }

    #[test]
    fn scale_embed_example() {
        let b = BlockAlgebra::symbolic();
        assert_eq!(
            b.scale_embed(&b.gen(1, 1), 2).unwrap(),
            el(&b, "(1/2)*L[1,2]")
        );
        let target = b.scaled(2);
        let x = b.gen(1, 0);
        let y = b.gen(-1, 1);
        let lhs = b.scale_embed(&b.bracket(&x, &y), 2).unwrap();
        let rhs = target.bracket(
            &b.scale_embed(&x, 2).unwrap(),
            &b.scale_embed(&y, 2).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_chain_examples() {
        let b = BlockAlgebra::symbolic();
        let r = b.ad_chain(-1, 1, 2).unwrap();
        assert_eq!(r.iterated, el(&b, "-2*q^2*L[4,0]"));
        assert!(r.agrees());
        let r = b.ad_chain(-1, 1, 1).unwrap();
        assert_eq!(r.iterated, el(&b, "-q*L[3,0]"));
        assert!(r.agrees());
        assert!(b.ad_chain(-2, 2, 2).unwrap().agrees());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_alpha(-1, 4).unwrap(), (1, 2));
        assert_eq!(decompose_alpha(-2, 9).unwrap(), (1, 3));
        assert!(matches!(
            decompose_alpha(-1, 3),
            Err(AlgebraError::BelowBound { .. })
        ));
    }

    #[test]
    fn induction_step_examples() {
        let b = BlockAlgebra::symbolic();
        assert!(b.induction_step_identity(-1, 5, 2).unwrap().is_zero());
        let m1 = BlockAlgebra::at_ratio(-1, 1);
        assert!(m1.induction_step_identity(-1, 3, 3).unwrap().is_zero());
        let m2 = BlockAlgebra::at_ratio(-2, 1);
        assert!(matches!(
            m2.induction_step_identity(-1, 3, 2),
            Err(AlgebraError::DenominatorVanishes(_))
        ));
    }
}
