//! The three-unknown systems for `L[alpha0,1]` when `q != -1/2, -1`.
//!
//! Scalars live in [`symbols`]: `q`, `a`, `b`, `alpha0`, `beta`, `gamma` and
//! `mubar = mu + a`. Unknowns `d[...]` are indexed by the integer part
//! (`mu` for `d_mu`, `beta` for `d_(beta - a)`).

use std::collections::BTreeMap;
use std::sync::Arc;

use super::formal::{FormalExpr, FormalSystem, Index, Unknown};
use super::linear::{det3, eliminate};
use super::ConstraintError;
use crate::scalar::{FieldContext, Scalar, ScalarError};

pub const SYMBOLS: [&str; 7] = ["q", "a", "b", "alpha0", "beta", "gamma", "mubar"];

pub fn symbols() -> Arc<FieldContext> {
    FieldContext::rational(&SYMBOLS).expect("valid context")
}

fn var(ctx: &Arc<FieldContext>, name: &str) -> Result<Scalar, ScalarError> {
    Scalar::var(ctx, name)
}

/// `(h1, h2)` with `[L[g,0],[L[b,0],L[alpha0,1]]] = h1 L[g+b+alpha0,1]` and
/// `[L[g+b,0],L[alpha0,1]] = h2 L[g+b+alpha0,1]`.
pub fn h_coeffs(q: &Scalar, alpha0: &Scalar, beta: &Scalar, gamma: &Scalar) -> (Scalar, Scalar) {
    let h1 = &(&(q * &(alpha0 - beta)) - beta) * &(&(q * &(&(beta + alpha0) - gamma)) - gamma);
    let h2 = &(&(q * &(&(alpha0 - gamma) - beta)) - gamma) - beta;
    (h1, h2)
}

/// Both sides of the double-bracket identity applied to `v_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquElement {
    /// `[L_g,[L_b,L[alpha0,1]]] v_mu` with Virasoro generators `L_x = q^-1 L[x,0]`.
    pub lhs: FormalExpr,
    /// `[L_(g+b), L[alpha0,1]] v_mu`.
    pub rhs: FormalExpr,
    /// `q h2 lhs - h1 rhs`.
    pub equ: FormalExpr,
}

type IdxVector = BTreeMap<Index, FormalExpr>;

fn push(v: &mut IdxVector, i: Index, e: FormalExpr) {
    let slot = v
        .entry(i.clone())
        .or_insert_with(|| FormalExpr::zero(e.ctx()));
    *slot = slot.add(&e);
    if slot.is_zero() {
        v.remove(&i);
    }
}

/// `L_x v_nu = (a + nu + b x) v_(nu+x)`.
fn vir(ctx: &Arc<FieldContext>, x: &Index, v: &IdxVector) -> Result<IdxVector, ScalarError> {
    let b = var(ctx, "b")?;
    let xs = x.to_scalar(ctx, &[])?;
    let mut out = IdxVector::new();
    for (nu, c) in v {
        let k = &nu.to_scalar(ctx, &[("mu", "mubar")])? + &(&b * &xs);
        push(&mut out, nu.add(x), c.scale(&k));
    }
    Ok(out)
}

/// `L[alpha0,1] v_nu = d_nu v_(nu+alpha0)`.
fn seed(ctx: &Arc<FieldContext>, v: &IdxVector) -> IdxVector {
    let mut out = IdxVector::new();
    for (nu, c) in v {
        let d = FormalExpr::unknown(ctx, Unknown::new("d", nu.clone()));
        push(&mut out, nu.add(&Index::sym("alpha0")), c.mul(&d));
    }
    out
}

fn sub(a: &IdxVector, b: &IdxVector) -> IdxVector {
    let mut out = a.clone();
    for (i, e) in b {
        push(&mut out, i.clone(), e.neg());
    }
    out
}

/// `[L_x, T] v` for an operator `T` given as a closure.
fn commutator<F>(
    ctx: &Arc<FieldContext>,
    x: &Index,
    t: &F,
    v: &IdxVector,
) -> Result<IdxVector, ScalarError>
where
    F: Fn(&IdxVector) -> Result<IdxVector, ScalarError>,
{
    Ok(sub(&vir(ctx, x, &t(v)?)?, &t(&vir(ctx, x, v)?)?))
}

/// Derives the identity for `A_(a,b)` from the module action with formal `d`.
pub fn derive_equ_element(ctx: &Arc<FieldContext>) -> Result<EquElement, ConstraintError> {
    let (bi, gi, mu) = (Index::sym("beta"), Index::sym("gamma"), Index::sym("mu"));
    let v = IdxVector::from([(mu.clone(), FormalExpr::constant(&Scalar::one(ctx)))]);
    let x = |w: &IdxVector| Ok(seed(ctx, w));
    let inner = |w: &IdxVector| commutator(ctx, &bi, &x, w);
    let lhs_v = commutator(ctx, &gi, &inner, &v)?;
    let lhs_v = lhs_v.into_iter().collect::<IdxVector>();
    let rhs_v = commutator(ctx, &bi.add(&gi), &x, &v)?;
    let target = mu.add(&Index::sym("alpha0")).add(&bi).add(&gi);
    let pick = |w: IdxVector| -> Result<FormalExpr, ConstraintError> {
        for (i, e) in &w {
            if *i != target && !e.is_zero() {
                return Err(ConstraintError::Shape(format!("stray component v[{i}]")));
            }
        }
        Ok(w.get(&target)
            .cloned()
            .unwrap_or_else(|| FormalExpr::zero(ctx)))
    };
    let lhs = pick(lhs_v)?;
    let rhs = pick(rhs_v)?;
    let q = var(ctx, "q")?;
    let (h1, h2) = h_coeffs(
        &q,
        &var(ctx, "alpha0")?,
        &var(ctx, "beta")?,
        &var(ctx, "gamma")?,
    );
    let equ = lhs.scale(&(&q * &h2)).sub(&rhs.scale(&h1));
    Ok(EquElement { lhs, rhs, equ })
}

fn d(i: Index, c: &Scalar) -> FormalExpr {
    FormalExpr::linear(c, Unknown::new("d", i))
}

/// The displayed forms of both sides.
pub fn displayed_equ_sides(
    ctx: &Arc<FieldContext>,
) -> Result<(FormalExpr, FormalExpr), ConstraintError> {
    let (a0, b, be, ga, mb) = (
        var(ctx, "alpha0")?,
        var(ctx, "b")?,
        var(ctx, "beta")?,
        var(ctx, "gamma")?,
        var(ctx, "mubar")?,
    );
    let mu = Index::sym("mu");
    let (bi, gi) = (Index::sym("beta"), Index::sym("gamma"));
    let bb = &b * &be;
    let bg = &b * &ga;
    let t1 = d(mu.clone(), &(&(&a0 + &mb) + &bb)).sub(&d(mu.add(&bi), &(&mb + &bb)));
    let t2 = d(mu.add(&gi), &(&(&(&a0 + &mb) + &ga) + &bb))
        .sub(&d(mu.add(&gi).add(&bi), &(&(&mb + &ga) + &bb)));
    let lhs = t1
        .scale(&(&(&(&be + &a0) + &mb) + &bg))
        .sub(&t2.scale(&(&mb + &bg)));
    let bgb = &b * &(&ga + &be);
    let rhs = d(mu.clone(), &(&(&a0 + &mb) + &bgb)).sub(&d(mu.add(&gi).add(&bi), &(&mb + &bgb)));
    Ok((lhs, rhs))
}

/// `f^(idx)` at `(x1, x2)`; `alpha0`, `b`, `q` are read from the context.
pub fn f_coeff(idx: u8, x1: &Scalar, x2: &Scalar) -> Result<Scalar, ConstraintError> {
    let ctx = x1.ctx();
    let (q, a0, b) = (var(ctx, "q")?, var(ctx, "alpha0")?, var(ctx, "b")?);
    let one = Scalar::one(ctx);
    let int = |n| Scalar::int(ctx, n);
    let qa = &q * &a0;
    let bx1 = &b * x1;
    let op = &one + &q;
    let out = match idx {
        1 => {
            &(&(&q * &(&qa + &(&int(2) * &(&op * x1)))) * &(&bx1 - x2))
                * &(&(&(&b - &one) * x1) - x2)
        }
        2 => &(&(&qa - &(&op * x1)) * &(&qa - x1)) * &(&(&(&b.scale_int(2) - &one) * x1) + x2),
        3 => {
            &(&(&q.scale_int(2) * &(&qa - &(&int(2) * &(&op * x1)))) * &(&(&a0 + &bx1) + x2))
                * &(&(&(&one - &b) * x1) - x2)
        }
        4 => &(&(&(&q * &q) * &a0) * &(&bx1 - x2)) * &(&(&a0 + &(&(&b - &one) * x1)) + x2),
        5 => {
            let c = &(&one + &q.scale_int(3))
                + &(&(&q * &q).scale_int(2) * &(&(&one + &b) - &(&b * &b)));
            &a0 * &(&(&c * &(x1 * x1)) + &(&(&(&q * &q).scale_int(2) * &(&a0 + x2)) * x2))
        }
        _ => {
            return Err(ConstraintError::Shape(format!(
                "coefficient index {idx} outside 1..=5"
            )))
        }
    };
    Ok(out)
}

/// `g^(idx) = f^(idx)` at `b = 1`.
pub fn g_coeff(idx: u8, x1: &Scalar, x2: &Scalar) -> Result<Scalar, ConstraintError> {
    let one = Scalar::one(x1.ctx());
    Ok(f_coeff(idx, x1, x2)?.subs(&[("b", &one)])?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// `A_(a,b)`: coefficients `f`, unknowns `d_((beta-gamma)^-)`, `d_(beta^-)`, `d_((beta+gamma)^-)`.
    One,
    /// `A'_(0,1)`: coefficients `g`, unknowns `d_(beta-gamma)`, `d_beta`, `d_(beta+gamma)`.
    Two,
}

/// Unknowns in column order.
pub fn case_unknowns() -> [Unknown; 3] {
    let (b, g) = (Index::sym("beta"), Index::sym("gamma"));
    [
        Unknown::new("d", b.sub(&g)),
        Unknown::new("d", b.clone()),
        Unknown::new("d", b.add(&g)),
    ]
}

/// The displayed three-equation system.
pub fn assemble_case_system(
    ctx: &Arc<FieldContext>,
    case: Case,
) -> Result<FormalSystem, ConstraintError> {
    let c = |i: u8, x1: &Scalar, x2: &Scalar| match case {
        Case::One => f_coeff(i, x1, x2),
        Case::Two => g_coeff(i, x1, x2),
    };
    let (be, ga) = (var(ctx, "beta")?, var(ctx, "gamma")?);
    let bp = &be + &var(ctx, "alpha0")?;
    let ng = -&ga;
    let rows = [
        [
            &c(1, &ng, &bp)? - &c(2, &ga, &bp)?,
            c(3, &ga, &be)?,
            &c(1, &ng, &be)? + &c(2, &ga, &be)?,
        ],
        [c(4, &ga, &be)?, c(5, &ga, &be)?, c(4, &ng, &be)?],
        [
            &c(1, &ga, &be)? + &c(2, &ng, &be)?,
            c(3, &ng, &be)?,
            &c(1, &ga, &bp)? - &c(2, &ng, &bp)?,
        ],
    ];
    let us = case_unknowns();
    let mut s = FormalSystem::new();
    for (n, row) in rows.iter().enumerate() {
        let mut e = FormalExpr::zero(ctx);
        for (k, u) in row.iter().zip(&us) {
            e = e.add(&FormalExpr::linear(k, u.clone()));
        }
        s.push(format!("row{}", n + 1), e);
    }
    Ok(s)
}

/// Rows obtained from the derived identity by `(gamma, beta, mubar)` ->
/// `(gamma, gamma, beta-gamma)`, `(gamma, -gamma, beta)`, `(-gamma, -gamma, beta+gamma)`.
pub fn substituted_rows(
    ctx: &Arc<FieldContext>,
    equ: &FormalExpr,
) -> Result<FormalSystem, ConstraintError> {
    let (be, ga) = (var(ctx, "beta")?, var(ctx, "gamma")?);
    let (bi, gi) = (Index::sym("beta"), Index::sym("gamma"));
    let ng = -&ga;
    let subs: [(Index, Index, Index, Scalar, Scalar, Scalar); 3] = [
        (
            gi.clone(),
            gi.clone(),
            bi.sub(&gi),
            ga.clone(),
            ga.clone(),
            &be - &ga,
        ),
        (
            gi.clone(),
            gi.neg(),
            bi.clone(),
            ga.clone(),
            ng.clone(),
            be.clone(),
        ),
        (
            gi.neg(),
            gi.neg(),
            bi.add(&gi),
            ng.clone(),
            ng.clone(),
            &be + &ga,
        ),
    ];
    let mut s = FormalSystem::new();
    for (n, (g, b, m, gs, bs, ms)) in subs.into_iter().enumerate() {
        let e = equ.subs(
            &[("gamma", g), ("beta", b), ("mu", m)],
            &[("gamma", &gs), ("beta", &bs), ("mubar", &ms)],
        )?;
        s.push(format!("row{}", n + 1), e);
    }
    Ok(s)
}

pub fn case_determinant(ctx: &Arc<FieldContext>, case: Case) -> Result<Scalar, ConstraintError> {
    let s = assemble_case_system(ctx, case)?;
    det3(&s.matrix(&case_unknowns()))
}

/// Coefficient of `beta^i gamma^j`.
pub fn coeff_extract(p: &Scalar, i: usize, j: usize) -> Result<Scalar, ConstraintError> {
    Ok(p.coeff("beta", i)?.coeff("gamma", j)?)
}

/// Exponents `(i, j)` of the monomials `beta^i gamma^j` present in `p`.
pub fn beta_gamma_support(p: &Scalar) -> Result<Vec<(usize, usize)>, ConstraintError> {
    let mut out = vec![];
    for (i, ci) in p.coefficients_in("beta")?.iter().enumerate() {
        for (j, cij) in ci.coefficients_in("gamma")?.iter().enumerate() {
            if !cij.is_zero() {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Displayed closed forms of the determinant coefficients, in the variables of [`symbols`].
pub mod displayed {
    pub const GAMMA8: &str = "8*b*(1-b)*(2*b-1)*q*(1+q)^3*(1+2*q)*alpha0";
    pub const BETA_GAMMA6: &str = "2*(1+q)^2*(1+2*q)*(1+q-2*q^2+12*b*q^2-12*b^2*q^2)*alpha0^2";
    pub const BETA_GAMMA6_AT_HALF: &str = "2*(1+q)^2*(1+2*q)*(1+q+q^2)*alpha0^2";
    pub const UNIT_B_BETA_GAMMA6: &str = "2*(1-q)*(1+q)^2*(1+2*q)^2*alpha0^2";
    pub const UNIT_B_GAMMA6: &str = "(1-q)*(1+q)^2*(1+2*q)^2*alpha0^3";
    /// Leading coefficient at `q = theta`, with `s = sqrt(-3) = 2 theta + 1`.
    pub const TOP_AT_THETA: &str = "-3*(1+s)*(24+16*s+(9-s)*alpha0^2)*alpha0^3";
    /// Leading coefficient at `q = theta^2`.
    pub const TOP_AT_THETA2: &str = "-3*(1-s)*(24-16*s+(9+s)*alpha0^2)*alpha0^3";
}

/// Output of the elimination at a primitive cube root of unity.
#[derive(Clone, Debug)]
pub struct OmegaPipeline {
    /// Equation A in `d[beta-gamma]`, `d[beta]`.
    pub a: FormalSystem,
    /// Equations B in `d[beta-2]`, `d[beta-1]`, `d[beta]`.
    pub b: FormalSystem,
    /// Coefficient of `d[beta]` after elimination, a polynomial in `beta`.
    pub residual: Scalar,
}

impl OmegaPipeline {
    /// Coefficient of `beta^i` in the residual.
    pub fn beta_coeff(&self, i: usize) -> Result<Scalar, ConstraintError> {
        Ok(self.residual.coeff("beta", i)?)
    }
}

/// Context `Q(theta)(alpha0, beta, gamma)` with `theta^2 + theta + 1 = 0`.
pub fn omega_context() -> Arc<FieldContext> {
    FieldContext::cube_roots_of_unity(&["alpha0", "beta", "gamma"], "theta").expect("valid context")
}

/// Runs the case-one elimination at `b = 1/2` and `q = q_value` (a scalar of
/// [`omega_context`], normally `theta` or `theta^2`).
pub fn omega_pipeline(q_value: &Scalar) -> Result<OmegaPipeline, ConstraintError> {
    let src = symbols();
    let target = q_value.ctx().clone();
    let half = Scalar::ratio(&target, 1, 2);
    let case1 = assemble_case_system(&src, Case::One)?;
    let mut first_two = FormalSystem::new();
    for n in 0..2 {
        let e = case1.equations[n].specialize(&[], &[("q", q_value), ("b", &half)], &target)?;
        first_two.push(case1.labels[n].clone(), e);
    }
    let [_, _, top] = case_unknowns();
    let a = eliminate(&first_two, &[top])?;
    let beta = Scalar::var(&target, "beta")?;
    let one = Scalar::one(&target);
    let two = Scalar::int(&target, 2);
    let bm1 = &beta - &one;
    let bi = Index::sym("beta");
    let inst: [(Index, Index, &Scalar, &Scalar, &str); 3] = [
        (bi.clone(), Index::int(1), &beta, &one, "(beta,1)"),
        (bi.shift(-1), Index::int(1), &bm1, &one, "(beta-1,1)"),
        (bi.clone(), Index::int(2), &beta, &two, "(beta,2)"),
    ];
    let mut b = FormalSystem::new();
    for (bx, gx, bs, gs, label) in inst {
        let e = a.equations[0].subs(
            &[("beta", bx), ("gamma", gx)],
            &[("beta", bs), ("gamma", gs)],
        )?;
        b.push(format!("A{label}"), e);
    }
    let victims = [
        Unknown::new("d", bi.shift(-2)),
        Unknown::new("d", bi.shift(-1)),
    ];
    let last = eliminate(&b, &victims)?;
    let target_u = Unknown::new("d", bi);
    let [eq] = last.equations.as_slice() else {
        return Err(ConstraintError::Shape(format!(
            "expected one equation after elimination, got {}",
            last.len()
        )));
    };
    if eq.unknowns().into_iter().any(|u| u != target_u) {
        return Err(ConstraintError::Shape(format!(
            "unexpected unknowns left in {eq}"
        )));
    }
    Ok(OmegaPipeline {
        a,
        b,
        residual: eq.linear_coeff(&target_u),
    })
}

/// A displayed leading-coefficient text read in [`omega_context`] with `s = 2 theta + 1`.
pub fn parse_displayed_top(text: &str) -> Result<Scalar, ConstraintError> {
    Ok(Scalar::parse(
        &omega_context(),
        &text.replace('s', "(2*theta+1)"),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_coeff_examples() {
        let k = symbols();
        let q = var(&k, "q").unwrap();
        let a0 = var(&k, "alpha0").unwrap();
        let z = Scalar::zero(&k);
        let (h1, h2) = h_coeffs(&q, &a0, &z, &z);
        assert_eq!(h1, &(&q * &q) * &(&a0 * &a0));
        assert_eq!(h2, &q * &a0);
        let one = Scalar::one(&k);
        let (h1, _) = h_coeffs(&one, &one, &one, &z);
        // (1*0 - 1)(1*(1+1-0) - 0) = -2
        assert_eq!(h1, Scalar::int(&k, -2));
    }

    #[test]
    fn derived_sides_match_display() {
        let k = symbols();
        let e = derive_equ_element(&k).unwrap();
        let (lhs, rhs) = displayed_equ_sides(&k).unwrap();
        assert_eq!(e.lhs, lhs);
        assert_eq!(e.rhs, rhs);
    }

    #[test]
    fn f_examples() {
        let k = symbols();
        let (x1, x2) = (Scalar::int(&k, 2), Scalar::int(&k, 3));
        let q = var(&k, "q").unwrap();
        let a0 = var(&k, "alpha0").unwrap();
        let b = var(&k, "b").unwrap();
        // f4 = q^2 a0 (2b - 3)(a0 + 2(b-1) + 3)
        let expect = &(&(&(&q * &q) * &a0) * &(&b.scale_int(2) - &Scalar::int(&k, 3)))
            * &(&(&a0 + &b.scale_int(2)) + &Scalar::one(&k));
        assert_eq!(f_coeff(4, &x1, &x2).unwrap(), expect);
        assert!(f_coeff(6, &x1, &x2).is_err());
    }

    fn parse(text: &str) -> Scalar {
        Scalar::parse(&symbols(), text).unwrap()
    }

    /// Fraction-free Bareiss elimination, an independent determinant.
    fn bareiss3(m: &[Vec<Scalar>]) -> Scalar {
        let mut m = m.to_vec();
        let mut prev = Scalar::one(m[0][0].ctx());
        for k in 0..2 {
            for i in k + 1..3 {
                for j in k + 1..3 {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.checked_div(&prev).unwrap();
                }
            }
            prev = m[k][k].clone();
        }
        m[2][2].clone()
    }

    #[test]
    fn substituted_identity_gives_the_case_one_rows() {
        let k = symbols();
        let e = derive_equ_element(&k).unwrap();
        let rows = substituted_rows(&k, &e.equ).unwrap();
        let sys = assemble_case_system(&k, Case::One).unwrap();
        for (r, s) in rows.equations.iter().zip(&sys.equations) {
            assert_eq!(r, s);
        }
    }

    #[test]
    fn case_one_determinant() {
        let k = symbols();
        let det = case_determinant(&k, Case::One).unwrap();
        let sys = assemble_case_system(&k, Case::One).unwrap();
        assert_eq!(det, bareiss3(&sys.matrix(&case_unknowns())));
        assert_eq!(
            beta_gamma_support(&det).unwrap(),
            vec![(0, 6), (0, 8), (1, 6)]
        );
        assert_eq!(coeff_extract(&det, 0, 8).unwrap(), parse(displayed::GAMMA8));
        assert_eq!(
            coeff_extract(&det, 1, 6).unwrap(),
            parse(displayed::BETA_GAMMA6)
        );
        // independent oracle value for the undisplayed coefficient
        let p06 = parse(
            "alpha0^3*(q+1)*(2*q+1)*(16*b^3*q^3-36*b^2*q^3-12*b^2*q^2+20*b*q^3+12*b*q^2-2*q^3-q^2+2*q+1)",
        );
        assert_eq!(coeff_extract(&det, 0, 6).unwrap(), p06);
        let half = Scalar::ratio(&k, 1, 2);
        let at_half = det.subs(&[("b", &half)]).unwrap();
        assert!(coeff_extract(&at_half, 0, 8).unwrap().is_zero());
        assert_eq!(
            coeff_extract(&at_half, 1, 6).unwrap(),
            parse(displayed::BETA_GAMMA6_AT_HALF)
        );
        // even in gamma, total degree in (beta, gamma) at most 8
        let ng = -&parse("gamma");
        assert_eq!(det.subs(&[("gamma", &ng)]).unwrap(), det);
        assert!(beta_gamma_support(&det)
            .unwrap()
            .iter()
            .all(|(i, j)| i + j <= 8));
    }

    #[test]
    fn case_two_determinant() {
        let k = symbols();
        let det = case_determinant(&k, Case::Two).unwrap();
        assert_eq!(beta_gamma_support(&det).unwrap(), vec![(0, 6), (1, 6)]);
        assert_eq!(
            coeff_extract(&det, 1, 6).unwrap(),
            parse(displayed::UNIT_B_BETA_GAMMA6)
        );
        assert_eq!(
            coeff_extract(&det, 0, 6).unwrap(),
            parse(displayed::UNIT_B_GAMMA6)
        );
        let one = Scalar::one(&k);
        let case1 = case_determinant(&k, Case::One).unwrap();
        assert_eq!(case1.subs(&[("b", &one)]).unwrap(), det);
    }

    #[test]
    fn top_coefficient_at_cube_roots_of_unity() {
        let k = omega_context();
        let theta = Scalar::var(&k, "theta").unwrap();
        let p = omega_pipeline(&theta).unwrap();
        assert_eq!(p.residual.degrees_in("beta").unwrap().0, 4);
        let top = p.beta_coeff(4).unwrap();
        assert_eq!(top, -&parse_displayed_top(displayed::TOP_AT_THETA).unwrap());
        // oracle value under this pivot rule
        let oracle = Scalar::parse(&k, "12*alpha0^3*((4*theta+5)*alpha0^2+20*theta+4)").unwrap();
        assert_eq!(top, oracle);
        for n in (-5..=5).filter(|&n| n != 0) {
            let v = top.subs(&[("alpha0", &Scalar::int(&k, n))]).unwrap();
            assert!(!v.is_zero(), "alpha0 = {n}");
        }
        let theta2 = &(-&theta) - &Scalar::one(&k);
        let top2 = omega_pipeline(&theta2).unwrap().beta_coeff(4).unwrap();
        assert_eq!(
            top2,
            -&parse_displayed_top(displayed::TOP_AT_THETA2).unwrap()
        );
    }

    #[test]
    fn identity_holds_for_the_constant_level_one_action_at_q_minus_one() {
        let k = symbols();
        let e = derive_equ_element(&k).unwrap();
        let t = parse("a*b + 3");
        let m1 = Scalar::int(&k, -1);
        let at = e
            .equ
            .substitute(|_| Some(FormalExpr::constant(&t)))
            .subs(&[], &[("q", &m1)])
            .unwrap();
        assert!(at.is_zero());
        let q2 = Scalar::int(&k, 2);
        let off = e
            .equ
            .substitute(|_| Some(FormalExpr::constant(&t)))
            .subs(&[], &[("q", &q2)])
            .unwrap();
        assert!(!off.is_zero());
    }
}
