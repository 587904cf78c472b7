use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::context::FieldContext;
use super::gcd::gcd;
use super::number::{format_rational, Base, Num};
use super::parse::{parse_expr, Expr};
use super::poly::{MPoly, Mono};
use super::ScalarError;

/// A rational function `num / den` in canonical form: `gcd(num, den) = 1`
/// and `den` monic. Structural equality is therefore mathematical equality.
#[derive(Clone, Debug)]
pub struct Scalar {
    ctx: Arc<FieldContext>,
    num: MPoly,
    den: MPoly,
}

fn same_ctx(a: &Arc<FieldContext>, b: &Arc<FieldContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Scalar {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Scalar {
            ctx: ctx.clone(),
            num: MPoly::zero(),
            den: MPoly::constant(ctx.base().one()),
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::int(ctx, 1)
    }

    pub fn int(ctx: &Arc<FieldContext>, n: i64) -> Self {
        Self::from_num(ctx, ctx.base().from_int(n))
    }

    pub fn ratio(ctx: &Arc<FieldContext>, n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator in Scalar::ratio");
        Self::rational(ctx, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(ctx: &Arc<FieldContext>, r: BigRational) -> Self {
        Self::from_num(ctx, ctx.base().from_rational(r))
    }

    pub fn from_num(ctx: &Arc<FieldContext>, c: Num) -> Self {
        Scalar {
            ctx: ctx.clone(),
            num: MPoly::constant(c),
            den: MPoly::constant(ctx.base().one()),
        }
    }

    /// The indeterminate called `name`, or the extension generator if that is its name.
    pub fn var(ctx: &Arc<FieldContext>, name: &str) -> Result<Self, ScalarError> {
        if let Some(i) = ctx.index_of(name) {
            return Ok(Scalar {
                ctx: ctx.clone(),
                num: MPoly::monomial(Mono::var(i, 1), ctx.base().one()),
                den: MPoly::constant(ctx.base().one()),
            });
        }
        if ctx.base().generator_name() == Some(name) {
            return Ok(Self::from_num(
                ctx,
                ctx.base().generator().expect("extension"),
            ));
        }
        Err(ScalarError::UnknownVariable(name.to_string()))
    }

    /// Parses a scalar expression over `ctx`.
    pub fn parse(ctx: &Arc<FieldContext>, text: &str) -> Result<Self, ScalarError> {
        let e = parse_expr(text)?;
        Self::from_expr(ctx, &e)
    }

    pub fn from_expr(ctx: &Arc<FieldContext>, e: &Expr) -> Result<Self, ScalarError> {
        Ok(match e {
            Expr::Int(n) => Self::rational(ctx, BigRational::from_integer(n.clone())),
            Expr::Ident(s) => Self::var(ctx, s)?,
            Expr::Basis(..) => return Err(ScalarError::BasisInScalar),
            Expr::Neg(a) => -Self::from_expr(ctx, a)?,
            Expr::Add(a, b) => Self::from_expr(ctx, a)? + Self::from_expr(ctx, b)?,
            Expr::Sub(a, b) => Self::from_expr(ctx, a)? - Self::from_expr(ctx, b)?,
            Expr::Mul(a, b) => Self::from_expr(ctx, a)? * Self::from_expr(ctx, b)?,
            Expr::Div(a, b) => Self::from_expr(ctx, a)?.checked_div(&Self::from_expr(ctx, b)?)?,
            Expr::Pow(a, k) => Self::from_expr(ctx, a)?.try_powi(*k)?,
        })
    }

    fn from_parts(ctx: &Arc<FieldContext>, num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let base = ctx.base();
        if num.is_zero() {
            return Ok(Self::zero(ctx));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den, base);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g, base).expect("gcd divides numerator"),
                    den.div_exact(&g, base).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading().expect("nonzero").1.clone();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = base.inv(&lc).expect("nonzero");
            (num.scale(&inv, base), den.scale(&inv, base))
        };
        Ok(Scalar {
            ctx: ctx.clone(),
            num,
            den,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    fn base(&self) -> &Base {
        self.ctx.base()
    }

    fn check(&self, o: &Scalar) -> Result<(), ScalarError> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(ScalarError::ContextMismatch(
                self.ctx.to_string(),
                o.ctx.to_string(),
            ))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Whether the value is a base-field constant.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn numer(&self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.clone(),
            den: MPoly::constant(self.base().one()),
        }
    }

    pub fn denom(&self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.den.clone(),
            den: MPoly::constant(self.base().one()),
        }
    }

    pub fn numer_poly(&self) -> &MPoly {
        &self.num
    }

    pub fn denom_poly(&self) -> &MPoly {
        &self.den
    }

    /// The base-field value of a constant.
    pub fn as_num(&self) -> Option<Num> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.num
                .constant_value()
                .unwrap_or_else(|| self.base().zero()),
        )
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_num()?.as_rational().cloned()
    }

    pub fn as_i64(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(o)?;
        Ok(self.add_unchecked(o, false))
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(o)?;
        Ok(self.add_unchecked(o, true))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inv()?))
    }

    fn add_unchecked(&self, o: &Scalar, negate: bool) -> Scalar {
        let base = self.base();
        let combine = |a: &MPoly, b: &MPoly| {
            if negate {
                a.sub(b, base)
            } else {
                a.add(b, base)
            }
        };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -o } else { o.clone() };
        }
        if self.den == o.den {
            let num = combine(&self.num, &o.num);
            if self.den.is_one() {
                return Scalar {
                    ctx: self.ctx.clone(),
                    num,
                    den: self.den.clone(),
                };
            }
            return Self::from_parts(&self.ctx, num, self.den.clone()).expect("nonzero den");
        }
        let g = gcd(&self.den, &o.den, base);
        let d1 = self.den.div_exact(&g, base).expect("gcd divides");
        let d2 = o.den.div_exact(&g, base).expect("gcd divides");
        let num = combine(&self.num.mul(&d2, base), &o.num.mul(&d1, base));
        let den = self.den.mul(&d2, base);
        Self::from_parts(&self.ctx, num, den).expect("nonzero den")
    }

    fn mul_unchecked(&self, o: &Scalar) -> Scalar {
        let base = self.base();
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                ctx: self.ctx.clone(),
                num: self.num.mul(&o.num, base),
                den: self.den.clone(),
            };
        }
        let cancel = |n: &MPoly, d: &MPoly| -> (MPoly, MPoly) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d, base);
            (
                n.div_exact(&g, base).expect("gcd divides"),
                d.div_exact(&g, base).expect("gcd divides"),
            )
        };
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        let num = n1.mul(&n2, base);
        let den = d1.mul(&d2, base);
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            Scalar {
                ctx: self.ctx.clone(),
                num,
                den,
            }
        } else {
            let inv = base.inv(&lc).expect("nonzero");
            Scalar {
                ctx: self.ctx.clone(),
                num: num.scale(&inv, base),
                den: den.scale(&inv, base),
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Self::from_parts(&self.ctx, self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, e: u32) -> Scalar {
        let base = self.base();
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.pow(e, base),
            den: self.den.pow(e, base),
        }
    }

    pub fn try_powi(&self, e: i64) -> Result<Scalar, ScalarError> {
        let p = self.powi(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        self * &Scalar::int(&self.ctx, n)
    }

    /// Degree of the numerator and of the denominator in `var`.
    pub fn degrees_in(&self, var: &str) -> Result<(u16, u16), ScalarError> {
        let i = self.index(var)?;
        Ok((self.num.degree_in(i), self.den.degree_in(i)))
    }

    pub fn depends_on(&self, var: &str) -> bool {
        match self.ctx.index_of(var) {
            Some(i) => self.num.uses_var(i) || self.den.uses_var(i),
            None => false,
        }
    }

    /// Names of the indeterminates this value actually depends on.
    pub fn free_vars(&self) -> Vec<String> {
        self.ctx
            .vars()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.num.uses_var(*i) || self.den.uses_var(*i))
            .map(|(_, v)| v.clone())
            .collect()
    }

    fn index(&self, var: &str) -> Result<usize, ScalarError> {
        self.ctx
            .index_of(var)
            .ok_or_else(|| ScalarError::UnknownVariable(var.to_string()))
    }

    /// Coefficients in `var`, lowest power first. The denominator must not involve `var`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Scalar>, ScalarError> {
        let i = self.index(var)?;
        if self.den.uses_var(i) {
            return Err(ScalarError::NotPolynomial(var.to_string()));
        }
        Ok(self
            .num
            .to_univariate(i)
            .into_iter()
            .map(|c| Self::from_parts(&self.ctx, c, self.den.clone()).expect("nonzero den"))
            .collect())
    }

    pub fn coeff(&self, var: &str, power: usize) -> Result<Scalar, ScalarError> {
        Ok(self
            .coefficients_in(var)?
            .into_iter()
            .nth(power)
            .unwrap_or_else(|| Self::zero(&self.ctx)))
    }

    /// Substitutes values for some indeterminates, staying in the same context.
    pub fn subs(&self, bindings: &[(&str, &Scalar)]) -> Result<Scalar, ScalarError> {
        let ctx = self.ctx.clone();
        self.specialize(bindings, &ctx)
    }

    /// Maps into `target`: bound indeterminates are replaced by their values
    /// (which must live in `target`), the rest are matched by name.
    pub fn specialize(
        &self,
        bindings: &[(&str, &Scalar)],
        target: &Arc<FieldContext>,
    ) -> Result<Scalar, ScalarError> {
        for (_, v) in bindings {
            if !same_ctx(v.ctx(), target) {
                return Err(ScalarError::ContextMismatch(
                    v.ctx().to_string(),
                    target.to_string(),
                ));
            }
        }
        let src = &self.ctx;
        let mut images: Vec<Option<Scalar>> = vec![None; src.vars().len()];
        for (i, name) in src.vars().iter().enumerate() {
            let used = self.num.uses_var(i) || self.den.uses_var(i);
            if !used {
                continue;
            }
            if let Some((_, v)) = bindings.iter().find(|(n, _)| n == name) {
                images[i] = Some((*v).clone());
            } else if target.has_var(name) {
                images[i] = Some(Scalar::var(target, name)?);
            } else {
                return Err(ScalarError::UnboundVariable(name.clone()));
            }
        }
        let map_num = |c: &Num| -> Result<Num, ScalarError> {
            if src.base() == target.base() {
                Ok(c.clone())
            } else if let Some(r) = c.as_rational() {
                Ok(target.base().from_rational(r.clone()))
            } else {
                Err(ScalarError::IncompatibleBase(target.base().to_string()))
            }
        };
        let num = eval_poly(&self.num, &images, target, &map_num)?;
        let den = eval_poly(&self.den, &images, target, &map_num)?;
        if den.is_zero() {
            return Err(ScalarError::SingularSpecialization {
                factor: self.denom().to_string(),
            });
        }
        num.checked_div(&den)
    }

    /// Re-expresses the value in another context with the same named indeterminates.
    pub fn to_context(&self, target: &Arc<FieldContext>) -> Result<Scalar, ScalarError> {
        self.specialize(&[], target)
    }

    /// Numeric value at a rational point for every free indeterminate.
    pub fn eval_rational(&self, point: &[(&str, BigRational)]) -> Result<Num, ScalarError> {
        let empty: Arc<FieldContext> = self.ctx.with_vars::<&str>(&[])?;
        let vals: Vec<(&str, Scalar)> = point
            .iter()
            .map(|(n, r)| (*n, Scalar::rational(&empty, r.clone())))
            .collect();
        let refs: Vec<(&str, &Scalar)> = vals.iter().map(|(n, s)| (*n, s)).collect();
        let v = self.specialize(&refs, &empty)?;
        Ok(v.as_num().expect("no indeterminates remain"))
    }

    /// Sign of the leading numerator coefficient, used to normalize for display.
    pub fn leading_is_negative(&self) -> bool {
        self.num
            .leading()
            .map(|(_, c)| c.is_negative_lead())
            .unwrap_or(false)
    }

    /// Display with parentheses when the value has more than one term.
    pub fn to_factor_string(&self) -> String {
        let s = self.to_string();
        if self.den.is_one() && self.num.terms().len() <= 1 && !s.starts_with('-') {
            s
        } else {
            format!("({s})")
        }
    }
}

fn eval_poly(
    p: &MPoly,
    images: &[Option<Scalar>],
    target: &Arc<FieldContext>,
    map_num: &dyn Fn(&Num) -> Result<Num, ScalarError>,
) -> Result<Scalar, ScalarError> {
    // Sum over terms with cached powers; all-polynomial images avoid gcds.
    let poly_images = images
        .iter()
        .all(|v| v.as_ref().is_none_or(|s| s.is_polynomial()));
    let tb = target.base();
    if poly_images {
        let imgs: Vec<Option<MPoly>> = images
            .iter()
            .map(|v| {
                v.as_ref().map(|s| {
                    let inv = tb.inv(&s.den.constant_value().expect("constant den"));
                    s.num.scale(&inv.expect("nonzero"), tb)
                })
            })
            .collect();
        let mut cache: Vec<Vec<MPoly>> = vec![vec![]; imgs.len()];
        let mut acc = MPoly::zero();
        for (m, c) in p.terms() {
            let mut t = MPoly::constant(map_num(c)?);
            for (i, img) in imgs.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                let img = img.as_ref().expect("used variable has an image");
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(MPoly::constant(tb.one()));
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(img, tb);
                    pw.push(next);
                }
                t = t.mul(&pw[e], tb);
            }
            acc = acc.add(&t, tb);
        }
        return Ok(Scalar {
            ctx: target.clone(),
            num: acc,
            den: MPoly::constant(tb.one()),
        });
    }
    let mut acc = Scalar::zero(target);
    for (m, c) in p.terms() {
        let mut t = Scalar::from_num(target, map_num(c)?);
        for (i, img) in images.iter().enumerate() {
            let e = m.exp(i) as u32;
            if e > 0 {
                t = &t * &img.as_ref().expect("image").powi(e);
            }
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        same_ctx(&self.ctx, &o.ctx) && self.num == o.num && self.den == o.den
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Result<Scalar, ScalarError> = $body;
                f(self, o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.try_add(b));
binop!(Sub, sub, |a, b| a.try_sub(b));
binop!(Mul, mul, |a, b| a.try_mul(b));
binop!(Div, div, |a, b| a.checked_div(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.neg(self.base()),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

fn fmt_poly(p: &MPoly, ctx: &FieldContext) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let base = ctx.base();
    let mut out = String::new();
    for (m, c) in p.terms() {
        let mut factors: Vec<String> = vec![];
        let neg;
        if let Some((k, r)) = single_coord(c) {
            neg = r.is_negative();
            let abs = r.abs();
            if !abs.is_one() {
                factors.push(format_rational(&abs));
            }
            if k > 0 {
                let g = base.generator_name().unwrap_or("theta");
                factors.push(if k == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{k}")
                });
            }
        } else {
            neg = false;
            factors.push(format!("({})", base.fmt_num(c)));
        }
        for (i, name) in ctx.vars().iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => factors.push(name.clone()),
                e => factors.push(format!("{name}^{e}")),
            }
        }
        let body = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
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
    out
}

fn single_coord(c: &Num) -> Option<(usize, BigRational)> {
    if c.nonzero_coords() != 1 {
        return None;
    }
    c.0.iter()
        .enumerate()
        .find(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_poly(&self.num, &self.ctx);
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let n = if self.num.terms().len() > 1 {
            format!("({n})")
        } else {
            n
        };
        let d = fmt_poly(&self.den, &self.ctx);
        if self.den.terms().len() > 1 || d.contains('*') {
            write!(f, "{n}/({d})")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::rational(&["q", "b", "x"]).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p(c: &Arc<FieldContext>, s: &str) -> Scalar {
        Scalar::parse(c, s).unwrap()
    }

    #[test]
    fn canonical_form_cancels() {
        let c = ctx();
        let a = p(&c, "(q^2 - 1)/(2*q + 2)");
        assert_eq!(a, p(&c, "(q - 1)/2"));
        assert!(a.is_polynomial());
        let z = p(&c, "1/(q+1) - 1/(q+1)");
        assert!(z.is_zero());
    }

    #[test]
    fn sum_of_coprime_fractions() {
        let c = ctx();
        let x = p(&c, "(-q^2*b - 3*q - 3*b)/(q^2*b^2 + 3*b^2)");
        let y = p(&c, "(q^3*b - q)/(-3*q^3*b^2 - 4*q^3 + 2*b^2)");
        let s = &x + &y;
        assert_eq!(&s - &y, x);
    }

    #[test]
    fn display_formats() {
        let c = ctx();
        assert_eq!(p(&c, "-4*q").to_string(), "-4*q");
        assert_eq!(p(&c, "1/2").to_string(), "(1/2)");
        assert_eq!(p(&c, "q^2 - 2*q*b + 1").to_string(), "q^2 - 2*q*b + 1");
        assert_eq!(p(&c, "1/(q+1)").to_string(), "1/(q + 1)");
        assert_eq!(p(&c, "(b+1)/q").to_string(), "(b + 1)/q");
    }

    #[test]
    fn specialization_and_singularity() {
        let c = ctx();
        let f = p(&c, "(q + b)/(q - 1)");
        let half = Scalar::ratio(&c, 1, 2);
        let g = f.subs(&[("b", &half)]).unwrap();
        assert_eq!(g, p(&c, "(q + 1/2)/(q - 1)"));
        let one = Scalar::one(&c);
        let err = f.subs(&[("q", &one)]).unwrap_err();
        assert!(matches!(err, ScalarError::SingularSpecialization { .. }));
        let v = f
            .eval_rational(&[("q", rat(3, 1)), ("b", rat(1, 1))])
            .unwrap();
        assert_eq!(v.as_rational().unwrap(), &rat(2, 1));
    }

    #[test]
    fn unbound_variable_reported() {
        let c = ctx();
        let target = FieldContext::rational(&["q"]).unwrap();
        let err = p(&c, "q + b").to_context(&target).unwrap_err();
        assert_eq!(err, ScalarError::UnboundVariable("b".into()));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Scalar::one(&ctx());
        let other = FieldContext::rational(&["y"]).unwrap();
        let b = Scalar::one(&other);
        assert!(matches!(
            a.try_add(&b),
            Err(ScalarError::ContextMismatch(..))
        ));
    }

    #[test]
    fn division_by_zero() {
        let c = ctx();
        assert_eq!(
            Scalar::parse(&c, "q/(b - b)").unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn extension_arithmetic() {
        let c = FieldContext::cube_roots_of_unity(&["x"], "theta").unwrap();
        let t = Scalar::var(&c, "theta").unwrap();
        assert!((&t * &t + &t + Scalar::one(&c)).is_zero());
        assert!((t.powi(3) - Scalar::one(&c)).is_zero());
        let f = p(&c, "(x^2 + x + 1)/(x - theta)");
        assert_eq!(f, p(&c, "x - theta^2"));
        assert_eq!(p(&c, "theta*x").to_string(), "theta*x");
    }

    #[test]
    fn coefficient_extraction() {
        let c = ctx();
        let f = p(&c, "(3*q^2*x + b*x - 5)/(b + 1)");
        let cs = f.coefficients_in("x").unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], p(&c, "-5/(b+1)"));
        assert_eq!(cs[1], p(&c, "(3*q^2 + b)/(b + 1)"));
        assert!(matches!(
            f.coefficients_in("b"),
            Err(ScalarError::NotPolynomial(_))
        ));
    }
}
