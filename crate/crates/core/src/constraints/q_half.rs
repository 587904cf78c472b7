//! `q = -1/2`: `L[0,1]` acts diagonally by formal `e[mu]`, `L[alpha,2]` acts as zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::formal::{FormalExpr, Unknown};
use super::module::{FormalModule, LevelRule, ZeroAction};
use super::{Check, ConstraintError};
use crate::intseries::{Extension, Family, IntermediateModule};
use crate::scalar::{FieldContext, Scalar};

pub fn q_half_context() -> Arc<FieldContext> {
    FieldContext::rational(&["a", "b", "s", "s1"]).expect("valid context")
}

fn e(ctx: &Arc<FieldContext>, i: i64) -> FormalExpr {
    FormalExpr::unknown(ctx, Unknown::new("e", i))
}

fn formal(family: Family, ctx: &Arc<FieldContext>) -> Result<FormalModule, ConstraintError> {
    let m = IntermediateModule::new(Scalar::ratio(ctx, -1, 2), family, Extension::Trivial)?;
    let levels = BTreeMap::from([
        (
            1,
            LevelRule::Seed {
                seed: 0,
                name: "e".into(),
            },
        ),
        (2, LevelRule::Zero),
    ]);
    Ok(FormalModule::new(ZeroAction::Module(m), levels))
}

/// `(2/alpha^2)(a + mu + b alpha)(e_mu - e_(alpha+mu))^2`.
pub fn displayed_identity(ctx: &Arc<FieldContext>, alpha: i64, mu: i64) -> FormalExpr {
    let a = Scalar::var(ctx, "a").expect("a");
    let b = Scalar::var(ctx, "b").expect("b");
    let k = &Scalar::ratio(ctx, 2, alpha * alpha)
        * &(&(&a + &Scalar::int(ctx, mu)) + &b.scale_int(alpha));
    let d = e(ctx, mu).sub(&e(ctx, alpha + mu));
    d.mul(&d).scale(&k)
}

/// Displayed instances: `(a+mu+b)(e_mu-e_(mu+1))^2`, `(a+mu-b+1)(e_mu-e_(mu+1))^2`,
/// `(a+mu+2b)(e_mu-e_(mu+2))^2`.
pub fn displayed_instances(ctx: &Arc<FieldContext>, mu: i64) -> [FormalExpr; 3] {
    let a = Scalar::var(ctx, "a").expect("a");
    let b = Scalar::var(ctx, "b").expect("b");
    let am = &a + &Scalar::int(ctx, mu);
    let sq = |k: i64| {
        let d = e(ctx, mu).sub(&e(ctx, mu + k));
        d.mul(&d)
    };
    [
        sq(1).scale(&(&am + &b)),
        sq(1).scale(&(&(&am - &b) + &Scalar::one(ctx))),
        sq(2).scale(&(&am + &b.scale_int(2))),
    ]
}

fn ratio_check(label: String, derived: &FormalExpr, expected: &FormalExpr) -> Check {
    let r = derived.ratio_to(expected);
    let pass = matches!(&r, Some(k) if !k.is_zero());
    Check {
        label,
        assembled: derived.to_string(),
        expected: expected.to_string(),
        pass,
        witness: if pass {
            None
        } else {
            Some("not a nonzero multiple".into())
        },
    }
}

fn equal_check(label: String, got: &FormalExpr, expected: &FormalExpr) -> Check {
    let pass = got == expected;
    Check {
        label,
        assembled: got.to_string(),
        expected: expected.to_string(),
        pass,
        witness: (!pass).then(|| format!("difference {}", got.sub(expected))),
    }
}

/// Every computation of the `q = -1/2` argument, as checks.
pub fn q_half_identities(window: i64) -> Result<Vec<Check>, ConstraintError> {
    let ctx = q_half_context();
    let a = Scalar::var(&ctx, "a")?;
    let b = Scalar::var(&ctx, "b")?;
    let m = formal(
        Family::Aab {
            a: a.clone(),
            b: b.clone(),
        },
        &ctx,
    )?;
    let mut out = vec![];

    // L[alpha,1] v_mu = (1/alpha)(a+mu+b alpha)(e_mu - e_(alpha+mu)) v_(alpha+mu)
    for alpha in [-2i64, -1, 1, 2, 3] {
        for mu in -window..=window {
            let got = m.coefficient(alpha, 1, mu)?;
            let k = &Scalar::ratio(&ctx, 1, alpha)
                * &(&(&a + &Scalar::int(&ctx, mu)) + &b.scale_int(alpha));
            let expected = e(&ctx, mu).sub(&e(&ctx, alpha + mu)).scale(&k);
            out.push(equal_check(
                format!("L[{alpha},1] v[{mu}]"),
                &got,
                &expected,
            ));
        }
    }
    // [L[0,1], L[alpha,1]] = (alpha/2) L[alpha,2] acts as zero
    for alpha in [-3i64, -2, -1, 1, 2, 3] {
        for mu in -window..=window {
            let derived = m.bracket_defect((0, 1), (alpha, 1), mu)?;
            out.push(ratio_check(
                format!("identity(alpha={alpha}, mu={mu})"),
                &derived,
                &displayed_identity(&ctx, alpha, mu),
            ));
        }
    }
    for mu in -window..=window {
        let inst = displayed_instances(&ctx, mu);
        for (n, (alpha, nu)) in [(1, mu), (-1, mu + 1), (2, mu)].into_iter().enumerate() {
            out.push(ratio_check(
                format!("instance {} at mu={mu}", n + 1),
                &displayed_identity(&ctx, alpha, nu),
                &inst[n],
            ));
        }
        let d = e(&ctx, mu).sub(&e(&ctx, mu + 1));
        let diff = d.mul(&d).scale(&(&b.scale_int(2) - &Scalar::one(&ctx)));
        out.push(equal_check(
            format!("instance 1 - instance 2 at mu={mu}"),
            &inst[0].sub(&inst[1]),
            &diff,
        ));
    }

    let s = Scalar::var(&ctx, "s")?;
    let s1 = Scalar::var(&ctx, "s1")?;
    let constant = |u: &Unknown| (u.name == "e").then(|| FormalExpr::constant(&s));
    let zero = FormalExpr::zero(&ctx);
    for alpha in [-2i64, -1, 1, 2] {
        for mu in -window..=window {
            let got = displayed_identity(&ctx, alpha, mu).substitute(constant);
            out.push(equal_check(
                format!("constant e at (alpha={alpha}, mu={mu})"),
                &got,
                &zero,
            ));
        }
    }

    // b = 1/2, a = -mu0 - 1/2: a step sequence passes instance 1 and fails instance 3
    let half = Scalar::ratio(&ctx, 1, 2);
    for mu0 in [-2i64, 0, 3] {
        let a_val = &Scalar::int(&ctx, -mu0) - &half;
        let step = |u: &Unknown| {
            let i = u.int_index()?;
            Some(FormalExpr::constant(if i > mu0 { &s } else { &s1 }))
        };
        for mu in (mu0 - window)..=(mu0 + window) {
            let inst = displayed_instances(&ctx, mu);
            let got = inst[0]
                .subs(&[], &[("a", &a_val), ("b", &half)])?
                .substitute(step);
            out.push(equal_check(
                format!("step mu0={mu0}: instance 1 at mu={mu}"),
                &got,
                &zero,
            ));
        }
        let inst3 = displayed_instances(&ctx, mu0)[2].subs(&[], &[("a", &a_val), ("b", &half)])?;
        let got = inst3.substitute(step);
        let d = FormalExpr::constant(&(&s - &s1));
        out.push(equal_check(
            format!("step mu0={mu0}: instance 3 at mu0 forces s = s1"),
            &got,
            &d.mul(&d).scale(&half),
        ));
    }

    // A'(0,1): (mu+1)(e_mu - e_(mu+1))^2 for mu != 0, -1, then e[-1] and the junction.
    // The relation tying e[-1] to e[-2] comes from v[-1]; on v[-2] it involves e[-3].
    let ap = formal(Family::Ap01, &ctx)?;
    for mu in -window..=window {
        if mu == 0 || mu == -1 {
            continue;
        }
        let d = e(&ctx, mu).sub(&e(&ctx, mu + 1));
        out.push(ratio_check(
            format!("A'(0,1) consecutive at mu={mu}"),
            &ap.bracket_defect((0, 1), (1, 1), mu)?,
            &d.mul(&d).scale(&Scalar::int(&ctx, mu + 1)),
        ));
    }
    let d = e(&ctx, -2).sub(&e(&ctx, -1));
    out.push(ratio_check(
        "A'(0,1) L[-1,2] on v[-1]".into(),
        &ap.bracket_defect((-1, 1), (0, 1), -1)?,
        &d.mul(&d).scale(&Scalar::int(&ctx, 2)),
    ));
    let d = e(&ctx, -1).sub(&e(&ctx, 1));
    out.push(ratio_check(
        "A'(0,1) L[2,2] on v[-1]".into(),
        &ap.bracket_defect((0, 1), (2, 1), -1)?,
        &d.mul(&d),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        let checks = q_half_identities(2).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
