use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::scalar::{FieldContext, Scalar, ScalarError};

/// Integer-linear index `sum c_s * s + offset` over named index symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index {
    terms: BTreeMap<String, i64>,
    offset: i64,
}

impl Index {
    pub fn int(n: i64) -> Self {
        Index {
            terms: BTreeMap::new(),
            offset: n,
        }
    }

    pub fn sym(name: &str) -> Self {
        Index {
            terms: BTreeMap::from([(name.to_string(), 1)]),
            offset: 0,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.offset)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &i64)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Index) -> Index {
        let mut out = self.clone();
        for (s, c) in &o.terms {
            let e = out.terms.entry(s.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                out.terms.remove(s);
            }
        }
        out.offset += o.offset;
        out
    }

    pub fn neg(&self) -> Index {
        Index {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
            offset: -self.offset,
        }
    }

    pub fn sub(&self, o: &Index) -> Index {
        self.add(&o.neg())
    }

    pub fn times(&self, k: i64) -> Index {
        if k == 0 {
            return Index::int(0);
        }
        Index {
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c * k)).collect(),
            offset: self.offset * k,
        }
    }

    pub fn shift(&self, n: i64) -> Index {
        let mut out = self.clone();
        out.offset += n;
        out
    }

    /// Simultaneous substitution of index symbols.
    pub fn subs(&self, map: &[(&str, Index)]) -> Index {
        let mut out = Index::int(self.offset);
        for (s, c) in &self.terms {
            let image = map
                .iter()
                .find(|(n, _)| n == s)
                .map(|(_, i)| i.clone())
                .unwrap_or_else(|| Index::sym(s));
            out = out.add(&image.times(*c));
        }
        out
    }

    /// The same combination of scalar indeterminates of `ctx`; a symbol may be
    /// renamed through `rename`.
    pub fn to_scalar(
        &self,
        ctx: &Arc<FieldContext>,
        rename: &[(&str, &str)],
    ) -> Result<Scalar, ScalarError> {
        let mut acc = Scalar::int(ctx, self.offset);
        for (s, c) in &self.terms {
            let name = rename
                .iter()
                .find(|(from, _)| from == s)
                .map(|(_, to)| *to)
                .unwrap_or(s);
            acc += &Scalar::var(ctx, name)?.scale_int(*c);
        }
        Ok(acc)
    }
}

impl From<i64> for Index {
    fn from(n: i64) -> Self {
        Index::int(n)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (s, c) in &self.terms {
            let sign = if *c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            out.push_str(sign);
            if c.abs() != 1 {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(s);
        }
        if out.is_empty() {
            out = self.offset.to_string();
        } else if self.offset != 0 {
            out.push_str(&format!("{:+}", self.offset));
        }
        write!(f, "{out}")
    }
}

/// A formal unknown such as `d[beta-gamma]` or `e[1,3]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub name: String,
    pub indices: Vec<Index>,
}

impl Unknown {
    pub fn new(name: &str, index: impl Into<Index>) -> Self {
        Unknown {
            name: name.to_string(),
            indices: vec![index.into()],
        }
    }

    pub fn pair(name: &str, i: impl Into<Index>, j: impl Into<Index>) -> Self {
        Unknown {
            name: name.to_string(),
            indices: vec![i.into(), j.into()],
        }
    }

    /// The single integer index, if the unknown has one.
    pub fn int_index(&self) -> Option<i64> {
        match self.indices.as_slice() {
            [i] => i.as_int(),
            _ => None,
        }
    }

    fn reindexed(&self, map: &[(&str, Index)]) -> Unknown {
        Unknown {
            name: self.name.clone(),
            indices: self.indices.iter().map(|i| i.subs(map)).collect(),
        }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(Index::to_string).collect();
        write!(f, "{}[{}]", self.name, idx.join(","))
    }
}

type Monomial = Vec<Unknown>;

/// Polynomial in formal unknowns with [`Scalar`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalExpr {
    ctx: Arc<FieldContext>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl FormalExpr {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        FormalExpr {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: &Scalar) -> Self {
        let mut out = FormalExpr::zero(c.ctx());
        out.add_term(vec![], c);
        out
    }

    pub fn unknown(ctx: &Arc<FieldContext>, u: Unknown) -> Self {
        let mut out = FormalExpr::zero(ctx);
        out.add_term(vec![u], &Scalar::one(ctx));
        out
    }

    /// `c * u`.
    pub fn linear(c: &Scalar, u: Unknown) -> Self {
        let mut out = FormalExpr::zero(c.ctx());
        out.add_term(vec![u], c);
        out
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    fn add_term(&mut self, mut m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let slot = self
            .terms
            .entry(m.clone())
            .or_insert_with(|| Scalar::zero(&self.ctx));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Unknown], &Scalar)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest number of unknown factors in a term.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_linear(&self) -> bool {
        self.degree() <= 1
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.terms.keys().flatten().cloned().collect()
    }

    /// Coefficient of the degree-one term `u`.
    pub fn linear_coeff(&self, u: &Unknown) -> Scalar {
        self.terms
            .get(std::slice::from_ref(u))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![])
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn add(&self, o: &FormalExpr) -> FormalExpr {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &FormalExpr) -> FormalExpr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FormalExpr {
        self.scale(&Scalar::int(&self.ctx, -1))
    }

    pub fn scale(&self, s: &Scalar) -> FormalExpr {
        let mut out = FormalExpr::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &(c * s));
        }
        out
    }

    pub fn mul(&self, o: &FormalExpr) -> FormalExpr {
        let mut out = FormalExpr::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend(m2.iter().cloned());
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }

    /// Replaces unknowns by expressions; unknowns mapped to `None` stay.
    pub fn substitute<F>(&self, f: F) -> FormalExpr
    where
        F: Fn(&Unknown) -> Option<FormalExpr>,
    {
        let mut out = FormalExpr::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut term = FormalExpr::constant(c);
            for u in m {
                let image = f(u).unwrap_or_else(|| FormalExpr::unknown(&self.ctx, u.clone()));
                term = term.mul(&image);
            }
            out = out.add(&term);
        }
        out
    }

    /// Simultaneous substitution of index symbols in unknowns and of scalar
    /// indeterminates in coefficients.
    pub fn subs(
        &self,
        index_map: &[(&str, Index)],
        scalar_map: &[(&str, &Scalar)],
    ) -> Result<FormalExpr, ScalarError> {
        self.specialize(index_map, scalar_map, &self.ctx.clone())
    }

    /// As [`Self::subs`], mapping coefficients into `target`.
    pub fn specialize(
        &self,
        index_map: &[(&str, Index)],
        scalar_map: &[(&str, &Scalar)],
        target: &Arc<FieldContext>,
    ) -> Result<FormalExpr, ScalarError> {
        let mut out = FormalExpr::zero(target);
        for (m, c) in &self.terms {
            let m: Monomial = m.iter().map(|u| u.reindexed(index_map)).collect();
            out.add_term(m, &c.specialize(scalar_map, target)?);
        }
        Ok(out)
    }

    /// `Some(k)` with `self = k * other` (`k` may be zero only if `self` is).
    pub fn ratio_to(&self, other: &FormalExpr) -> Option<Scalar> {
        if other.is_zero() {
            return self.is_zero().then(|| Scalar::zero(&self.ctx));
        }
        let (m, c) = other.terms.iter().next()?;
        let k = self
            .terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
            .checked_div(c)
            .ok()?;
        self.sub(&other.scale(&k)).is_zero().then_some(k)
    }
}

impl fmt::Display for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = crate::algebra::format_terms(self.terms.iter().map(|(m, c)| {
            let sym: Vec<String> = m.iter().map(Unknown::to_string).collect();
            (sym.join("*"), c)
        }));
        write!(f, "{s}")
    }
}

/// Equations `expr = 0`, each with a label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSystem {
    pub equations: Vec<FormalExpr>,
    pub labels: Vec<String>,
}

impl FormalSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, label: impl Into<String>, e: FormalExpr) {
        self.labels.push(label.into());
        self.equations.push(e);
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.equations
            .iter()
            .flat_map(FormalExpr::unknowns)
            .collect()
    }

    pub fn is_linear(&self) -> bool {
        self.equations.iter().all(FormalExpr::is_linear)
    }

    /// Coefficient matrix for the given unknown order.
    pub fn matrix(&self, order: &[Unknown]) -> Vec<Vec<Scalar>> {
        self.equations
            .iter()
            .map(|e| order.iter().map(|u| e.linear_coeff(u)).collect())
            .collect()
    }

    pub fn subs(
        &self,
        index_map: &[(&str, Index)],
        scalar_map: &[(&str, &Scalar)],
    ) -> Result<FormalSystem, ScalarError> {
        Ok(FormalSystem {
            equations: self
                .equations
                .iter()
                .map(|e| e.subs(index_map, scalar_map))
                .collect::<Result<_, _>>()?,
            labels: self.labels.clone(),
        })
    }
}

impl fmt::Display for FormalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, e) in self.labels.iter().zip(&self.equations) {
            writeln!(f, "{l}: {e} = 0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_arithmetic() {
        let b = Index::sym("beta");
        let g = Index::sym("gamma");
        let i = b.sub(&g);
        assert_eq!(i.to_string(), "beta-gamma");
        let j = i.subs(&[
            ("beta", Index::sym("beta").shift(-1)),
            ("gamma", Index::int(1)),
        ]);
        assert_eq!(j.to_string(), "beta-2");
        assert_eq!(Index::sym("gamma").neg().shift(3).to_string(), "-gamma+3");
        assert_eq!(Index::int(-2).to_string(), "-2");
    }

    #[test]
    fn expr_algebra() {
        let k = FieldContext::rational(&["a"]).unwrap();
        let a = Scalar::var(&k, "a").unwrap();
        let x = FormalExpr::unknown(&k, Unknown::new("e", 0));
        let y = FormalExpr::unknown(&k, Unknown::new("e", 1));
        let d = x.sub(&y);
        let sq = d.mul(&d).scale(&a);
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.to_string(), "a*e[0]*e[0] - 2*a*e[0]*e[1] + a*e[1]*e[1]");
        let zero = sq.substitute(|u| (u.name == "e").then(|| FormalExpr::constant(&a)));
        assert!(zero.is_zero());
        assert_eq!(sq.ratio_to(&d.mul(&d)), Some(a.clone()));
        assert_eq!(sq.ratio_to(&x), None);
    }
}
