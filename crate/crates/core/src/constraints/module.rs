//! Modules of the intermediate series whose higher operators act through
//! formal unknowns: `L[s,i] v_mu = u[mu] v_(s+mu)` for one seed degree `s`
//! per level `i`, and every other `L[alpha,i]` is obtained from
//! `[L[s,i], L[alpha-s,0]] = k L[alpha,i]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::formal::{FormalExpr, Unknown};
use super::ConstraintError;
use crate::algebra::BlockAlgebra;
use crate::intseries::IntermediateModule;
use crate::scalar::{FieldContext, Scalar};

/// Degree-zero action on the formal module.
#[derive(Clone, Debug)]
pub enum ZeroAction {
    Module(IntermediateModule),
    /// `A'[0,1]` plus a vector `v_0` killed by every `L[alpha,0]`.
    Ap01PlusTrivial(IntermediateModule),
}

impl ZeroAction {
    fn act(&self, alpha: i64, mu: i64) -> Option<(i64, Scalar)> {
        match self {
            ZeroAction::Module(m) => m.act_basis(alpha, 0, mu),
            ZeroAction::Ap01PlusTrivial(m) => {
                if mu == 0 {
                    None
                } else {
                    m.act_basis(alpha, 0, mu)
                }
            }
        }
    }
}

/// Action of level `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelRule {
    Zero,
    /// `L[seed,i] v_mu = name[mu] v_(seed+mu)`.
    Seed {
        seed: i64,
        name: String,
    },
}

pub type FormalVector = BTreeMap<i64, FormalExpr>;

#[derive(Clone, Debug)]
pub struct FormalModule {
    algebra: BlockAlgebra,
    zero: ZeroAction,
    levels: BTreeMap<u32, LevelRule>,
}

impl FormalModule {
    pub fn new(zero: ZeroAction, levels: BTreeMap<u32, LevelRule>) -> Self {
        let q = match &zero {
            ZeroAction::Module(m) | ZeroAction::Ap01PlusTrivial(m) => m.q().clone(),
        };
        FormalModule {
            algebra: BlockAlgebra::new(q),
            zero,
            levels,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.algebra.ctx()
    }

    pub fn basis(&self, mu: i64) -> FormalVector {
        FormalVector::from([(mu, FormalExpr::constant(&Scalar::one(self.ctx())))])
    }

    pub fn apply(
        &self,
        alpha: i64,
        i: u32,
        v: &FormalVector,
    ) -> Result<FormalVector, ConstraintError> {
        let mut out = FormalVector::new();
        if i == 0 {
            for (mu, c) in v {
                if let Some((t, k)) = self.zero.act(alpha, *mu) {
                    add_into(&mut out, t, &c.scale(&k));
                }
            }
            return Ok(out);
        }
        match self.levels.get(&i).unwrap_or(&LevelRule::Zero) {
            LevelRule::Zero => Ok(out),
            LevelRule::Seed { seed, name } if *seed == alpha => {
                for (mu, c) in v {
                    let u = FormalExpr::unknown(self.ctx(), Unknown::new(name, *mu));
                    add_into(&mut out, alpha + mu, &c.mul(&u));
                }
                Ok(out)
            }
            LevelRule::Seed { seed, .. } => {
                let k = self.algebra.structure_constant(*seed, i, alpha - seed, 0);
                if k.is_zero() {
                    return Err(ConstraintError::ZeroPivot(format!(
                        "[L[{seed},{i}], L[{},0]] vanishes",
                        alpha - seed
                    )));
                }
                let a = self.apply(*seed, i, &self.apply(alpha - seed, 0, v)?)?;
                let b = self.apply(alpha - seed, 0, &self.apply(*seed, i, v)?)?;
                let inv = k.inv()?;
                Ok(sub_vectors(&a, &b)
                    .into_iter()
                    .map(|(mu, c)| (mu, c.scale(&inv)))
                    .collect())
            }
        }
    }

    /// Coefficient `x(alpha,i,mu)` with `L[alpha,i] v_mu = x v_(alpha+mu)`.
    pub fn coefficient(&self, alpha: i64, i: u32, mu: i64) -> Result<FormalExpr, ConstraintError> {
        let v = self.apply(alpha, i, &self.basis(mu))?;
        Ok(v.get(&(alpha + mu))
            .cloned()
            .unwrap_or_else(|| FormalExpr::zero(self.ctx())))
    }

    pub fn apply_op(&self, op: &Op, v: &FormalVector) -> Result<FormalVector, ConstraintError> {
        let mut out = FormalVector::new();
        for (c, word) in &op.terms {
            let mut w = v.clone();
            for &(alpha, i) in word.iter().rev() {
                w = self.apply(alpha, i, &w)?;
            }
            for (mu, e) in w {
                add_into(&mut out, mu, &e.scale(c));
            }
        }
        Ok(out)
    }

    /// `([x,y] - [x,y]_B) v_mu`, the defect of the module axiom for a pair of
    /// generators, collected on the single target vector.
    pub fn bracket_defect(
        &self,
        x: (i64, u32),
        y: (i64, u32),
        mu: i64,
    ) -> Result<FormalExpr, ConstraintError> {
        let k = self.algebra.structure_constant(x.0, x.1, y.0, y.1);
        let op = Op::gen(self.ctx(), x.0, x.1)
            .commutator(&Op::gen(self.ctx(), y.0, y.1))
            .sub(&Op::gen(self.ctx(), x.0 + y.0, x.1 + y.1).scale(&k));
        single(
            self.apply_op(&op, &self.basis(mu))?,
            x.0 + y.0 + mu,
            self.ctx(),
        )
    }

    /// `op v_mu` collected on `v_target`.
    pub fn op_on(&self, op: &Op, mu: i64, target: i64) -> Result<FormalExpr, ConstraintError> {
        single(self.apply_op(op, &self.basis(mu))?, target, self.ctx())
    }
}

fn single(
    v: FormalVector,
    target: i64,
    ctx: &Arc<FieldContext>,
) -> Result<FormalExpr, ConstraintError> {
    for (mu, e) in &v {
        if *mu != target && !e.is_zero() {
            return Err(ConstraintError::Shape(format!(
                "component on v[{mu}] outside the expected degree {target}"
            )));
        }
    }
    Ok(v.get(&target)
        .cloned()
        .unwrap_or_else(|| FormalExpr::zero(ctx)))
}

fn add_into(out: &mut FormalVector, mu: i64, e: &FormalExpr) {
    let slot = out.entry(mu).or_insert_with(|| FormalExpr::zero(e.ctx()));
    *slot = slot.add(e);
    if slot.is_zero() {
        out.remove(&mu);
    }
}

fn sub_vectors(a: &FormalVector, b: &FormalVector) -> FormalVector {
    let mut out = a.clone();
    for (mu, e) in b {
        add_into(&mut out, *mu, &e.neg());
    }
    out
}

/// Linear combination of words in the generators; words act right to left.
#[derive(Clone, Debug)]
pub struct Op {
    ctx: Arc<FieldContext>,
    terms: Vec<(Scalar, Vec<(i64, u32)>)>,
}

impl Op {
    pub fn gen(ctx: &Arc<FieldContext>, alpha: i64, i: u32) -> Op {
        Op {
            ctx: ctx.clone(),
            terms: vec![(Scalar::one(ctx), vec![(alpha, i)])],
        }
    }

    pub fn scale(&self, s: &Scalar) -> Op {
        Op {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(c, w)| (c * s, w.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Op) -> Op {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Op {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn sub(&self, o: &Op) -> Op {
        self.add(&o.scale(&Scalar::int(&self.ctx, -1)))
    }

    pub fn compose(&self, o: &Op) -> Op {
        let mut terms = vec![];
        for (c1, w1) in &self.terms {
            for (c2, w2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                terms.push((c1 * c2, w));
            }
        }
        Op {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// `self o - o self`.
    pub fn commutator(&self, o: &Op) -> Op {
        self.compose(o).sub(&o.compose(self))
    }
}
