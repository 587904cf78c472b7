//! `q = -1`. The reducible cases take the degree-zero action from `A_a`,
//! `B_a` or `A'(0,1) + C v_0` with `L[1,1] -> e`, `L[0,2] -> f`; the
//! "main" case takes `A_(a,b)` with `L[1,1] -> f`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::formal::{FormalExpr, FormalSystem, Unknown};
use super::linear::{solve_linear, SolutionSpace};
use super::module::{FormalModule, LevelRule, Op, ZeroAction};
use super::{Check, ConstraintError};
use crate::intseries::{Extension, Family, IntermediateModule};
use crate::scalar::{FieldContext, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subcase {
    Aa,
    Ba,
    Ap01PlusTrivial,
    Main,
}

impl Subcase {
    pub const ALL: [Subcase; 4] = [
        Subcase::Aa,
        Subcase::Ba,
        Subcase::Ap01PlusTrivial,
        Subcase::Main,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcase::Aa => "Aa",
            Subcase::Ba => "Ba",
            Subcase::Ap01PlusTrivial => "Ap01",
            Subcase::Main => "main",
        }
    }

    /// Accepts the family name or the numeric case id (`2.1`, `2.2`, `2.3`).
    pub fn parse(s: &str) -> Option<Subcase> {
        let alias = match s {
            "2.1" => Some(Subcase::Aa),
            "2.2" => Some(Subcase::Ba),
            "2.3" => Some(Subcase::Ap01PlusTrivial),
            _ => None,
        };
        alias.or_else(|| Subcase::ALL.into_iter().find(|c| c.name() == s))
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub fn q_minus_one_context() -> Arc<FieldContext> {
    FieldContext::rational(&["a", "b", "t", "t0", "t1"]).expect("valid context")
}

/// Assembled systems and the checks run on them.
#[derive(Clone, Debug)]
pub struct SubcaseReport {
    pub subcase: Subcase,
    pub systems: Vec<(String, FormalSystem, Option<SolutionSpace>)>,
    pub checks: Vec<Check>,
    /// Cross-checks of the displayed relations against the bracket that do
    /// not enter the verdict.
    pub findings: Vec<Check>,
}

impl SubcaseReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Ctx {
    ctx: Arc<FieldContext>,
    a: Scalar,
}

impl Ctx {
    fn new() -> Self {
        let ctx = q_minus_one_context();
        let a = Scalar::var(&ctx, "a").expect("a");
        Ctx { ctx, a }
    }

    fn int(&self, n: i64) -> Scalar {
        Scalar::int(&self.ctx, n)
    }

    /// `a + n`.
    fn ap(&self, n: i64) -> Scalar {
        &self.a + &self.int(n)
    }

    fn u(&self, name: &str, i: i64) -> FormalExpr {
        FormalExpr::unknown(&self.ctx, Unknown::new(name, i))
    }

    fn lin(&self, terms: &[(Scalar, &str, i64)]) -> FormalExpr {
        terms
            .iter()
            .fold(FormalExpr::zero(&self.ctx), |acc, (c, n, i)| {
                acc.add(&FormalExpr::linear(c, Unknown::new(n, *i)))
            })
    }
}

fn module(c: &Ctx, sub: Subcase) -> Result<FormalModule, ConstraintError> {
    let q = c.int(-1);
    let a = c.a.clone();
    let (zero, levels) = match sub {
        Subcase::Main => {
            let b = Scalar::var(&c.ctx, "b")?;
            let m = IntermediateModule::new(q, Family::Aab { a, b }, Extension::Trivial)?;
            (
                ZeroAction::Module(m),
                BTreeMap::from([(
                    1,
                    LevelRule::Seed {
                        seed: 1,
                        name: "f".into(),
                    },
                )]),
            )
        }
        _ => {
            let zero = match sub {
                Subcase::Aa => ZeroAction::Module(IntermediateModule::new(
                    q,
                    Family::Aa { a },
                    Extension::Trivial,
                )?),
                Subcase::Ba => ZeroAction::Module(IntermediateModule::new(
                    q,
                    Family::Ba { a },
                    Extension::Trivial,
                )?),
                _ => ZeroAction::Ap01PlusTrivial(IntermediateModule::new(
                    q,
                    Family::Ap01,
                    Extension::Trivial,
                )?),
            };
            (
                zero,
                BTreeMap::from([
                    (
                        1,
                        LevelRule::Seed {
                            seed: 1,
                            name: "e".into(),
                        },
                    ),
                    (
                        2,
                        LevelRule::Seed {
                            seed: 0,
                            name: "f".into(),
                        },
                    ),
                ]),
            )
        }
    };
    Ok(FormalModule::new(zero, levels))
}

fn ratio_check(label: String, derived: &FormalExpr, expected: &FormalExpr) -> Check {
    let r = derived.ratio_to(expected);
    let pass = match &r {
        Some(k) => !k.is_zero() || expected.is_zero(),
        None => false,
    };
    Check {
        label,
        assembled: derived.to_string(),
        expected: expected.to_string(),
        pass,
        witness: (!pass)
            .then(|| "derived relation is not a nonzero multiple of the display".into()),
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

fn solve_check(
    label: &str,
    system: &FormalSystem,
    conclusion: &str,
    holds: impl Fn(&SolutionSpace) -> bool,
) -> (Check, Option<SolutionSpace>) {
    match solve_linear(system) {
        Ok(sol) => {
            let pass = holds(&sol);
            let check = Check {
                label: label.to_string(),
                assembled: system.to_string(),
                expected: conclusion.to_string(),
                pass,
                witness: (!pass).then(|| describe_solution(&sol)),
            };
            (check, Some(sol))
        }
        Err(e) => (
            Check {
                label: label.to_string(),
                assembled: system.to_string(),
                expected: conclusion.to_string(),
                pass: false,
                witness: Some(e.to_string()),
            },
            None,
        ),
    }
}

/// Human-readable description of a solution space.
pub fn describe_solution(sol: &SolutionSpace) -> String {
    let names: Vec<String> = sol.unknowns.iter().map(Unknown::to_string).collect();
    let fmt_vec = |v: &[Scalar]| {
        let parts: Vec<String> = v.iter().map(Scalar::to_factor_string).collect();
        format!("({})", parts.join(", "))
    };
    let basis: Vec<String> = sol.basis.iter().map(|v| fmt_vec(v)).collect();
    format!(
        "unknowns ({}); particular {}; basis [{}]",
        names.join(", "),
        fmt_vec(&sol.particular),
        basis.join(", ")
    )
}

/// Every solution vanishes on the unknowns selected by `pick`.
fn vanishes_on(sol: &SolutionSpace, pick: impl Fn(&Unknown) -> bool) -> bool {
    let idx: Vec<usize> = (0..sol.unknowns.len())
        .filter(|&i| pick(&sol.unknowns[i]))
        .collect();
    idx.iter().all(|&i| sol.particular[i].is_zero())
        && sol
            .basis
            .iter()
            .all(|v| idx.iter().all(|&i| v[i].is_zero()))
}

/// Every solution is constant on the unknowns selected by `pick`.
fn constant_on(sol: &SolutionSpace, pick: impl Fn(&Unknown) -> bool) -> bool {
    let idx: Vec<usize> = (0..sol.unknowns.len())
        .filter(|&i| pick(&sol.unknowns[i]))
        .collect();
    let Some(&first) = idx.first() else {
        return true;
    };
    let same = |v: &[Scalar]| idx.iter().all(|&i| v[i] == v[first]);
    same(&sol.particular) && sol.basis.iter().all(|v| same(v))
}

/// `e_(alpha,mu)` as displayed for each subcase.
fn displayed_e(c: &Ctx, sub: Subcase, alpha: i64, mu: i64) -> FormalExpr {
    let i = |n| c.int(n);
    match sub {
        Subcase::Aa => match mu {
            0 => c.lin(&[
                (-&(&i(alpha - 1) * &c.ap(alpha - 1)), "e", alpha - 1),
                (i(alpha), "e", 0),
            ]),
            -1 => c.lin(&[
                (i(-(alpha - 2)), "e", alpha - 2),
                (&i(alpha - 1) * &c.ap(alpha - 1), "e", -1),
            ]),
            _ => c.lin(&[
                (i(mu + alpha), "e", mu),
                (i(-(mu + alpha - 1)), "e", mu + alpha - 1),
            ]),
        },
        Subcase::Ba => {
            if mu == -alpha {
                c.lin(&[
                    (i(alpha), "e", -1),
                    (-&(&i(alpha - 1) * &c.ap(alpha - 1)), "e", -alpha),
                ])
            } else if mu == -alpha + 1 {
                c.lin(&[
                    (&i(alpha - 1) * &c.ap(alpha - 1), "e", 0),
                    (i(-(alpha - 2)), "e", -alpha + 1),
                ])
            } else {
                c.lin(&[(i(mu + 1), "e", mu), (i(-mu), "e", alpha + mu - 1)])
            }
        }
        Subcase::Ap01PlusTrivial => match mu {
            0 => c.lin(&[(i(alpha), "e", 0)]),
            // displayed as -alpha e_alpha; the bracket gives -(alpha-2) e_(alpha-2)
            -1 => c.lin(&[(i(-(alpha - 2)), "e", alpha - 2)]),
            _ => c.lin(&[
                (i(mu + alpha), "e", mu),
                (i(-(mu + alpha - 1)), "e", mu + alpha - 1),
            ]),
        },
        Subcase::Main => unreachable!("main uses f"),
    }
}

/// `f_(alpha,mu)`, `alpha != 0`, as displayed for the reducible cases.
fn displayed_f(c: &Ctx, sub: Subcase, alpha: i64, mu: i64) -> FormalExpr {
    let diff = |x: i64, y: i64| c.u("f", x).sub(&c.u("f", y));
    match sub {
        Subcase::Aa if mu == 0 => diff(0, alpha).scale(&c.ap(alpha)),
        Subcase::Ba if mu == -alpha => diff(0, -alpha).scale(&c.ap(alpha)),
        Subcase::Ap01PlusTrivial if mu == 0 => FormalExpr::zero(&c.ctx),
        Subcase::Ba => diff(mu, alpha + mu).scale(&Scalar::ratio(&c.ctx, mu, alpha)),
        _ => diff(mu, alpha + mu).scale(&Scalar::ratio(&c.ctx, mu + alpha, alpha)),
    }
}

fn f_rel_v0(c: &Ctx, mu: i64) -> FormalExpr {
    let f = |i| c.u("f", i);
    f(0).sub(&f(mu))
        .scale(&(&c.int(mu) * &c.ap(mu)))
        .sub(&f(1).sub(&f(mu + 1)).scale(&c.ap(1)))
        .sub(&f(0).sub(&f(mu + 1)).scale(&(&c.int(mu) * &c.ap(mu + 1))))
}

fn f_rel_vm1(c: &Ctx, mu: i64) -> FormalExpr {
    let f = |i| c.u("f", i);
    f(-1)
        .sub(&f(mu - 1))
        .scale(&c.int(mu - 1))
        .sub(&f(-1).sub(&f(mu)).scale(&c.int(mu)))
}

fn e_rel_v_neg(c: &Ctx, mu: i64) -> FormalExpr {
    let e = |i| c.u("e", i);
    e(-2)
        .scale(&c.int(mu + 1))
        .sub(&e(-mu - 1).scale(&c.int(mu)))
        .scale(&c.int(mu))
        .sub(&e(0).scale(&(&c.int(mu) * &c.ap(mu))))
        .add(&e(-mu).scale(&c.int(mu - 1)))
}

fn e_rel_v_neg1(c: &Ctx, mu: i64) -> FormalExpr {
    let e = |i| c.u("e", i);
    let t1 = e(-1)
        .scale(&c.int(mu))
        .sub(&e(-mu).scale(&(&c.int(mu - 1) * &c.ap(mu - 1))))
        .scale(&c.int(mu + 1));
    let t2 = e(-2)
        .scale(&c.int(mu + 1))
        .sub(&e(-mu - 1).scale(&c.int(mu)))
        .scale(&c.ap(1));
    let t3 = e(0)
        .scale(&(&c.int(mu) * &c.ap(mu)))
        .sub(&e(-mu).scale(&c.int(mu - 1)))
        .scale(&c.int(mu));
    t1.sub(&t2).sub(&t3)
}

fn f_rel_v_neg(c: &Ctx, mu: i64) -> FormalExpr {
    let f = |i| c.u("f", i);
    f(1 - mu)
        .sub(&f(1))
        .scale(&c.int(1 - mu))
        .add(&f(-mu).sub(&f(1)).scale(&c.int(mu)))
}

fn f_rel_v_neg1(c: &Ctx, mu: i64) -> FormalExpr {
    let f = |i| c.u("f", i);
    f(-mu - 1)
        .sub(&f(-1))
        .scale(&c.ap(1))
        .add(&f(-mu - 1).scale(&(&c.int(mu) * &c.ap(mu + 1))))
        .sub(&f(-mu).scale(&(&c.int(mu) * &c.ap(mu))))
        .sub(&f(0).scale(&c.int(mu)))
}

fn e_rel_vm1(c: &Ctx, mu: i64) -> FormalExpr {
    c.lin(&[(c.int(mu + 1), "e", mu + 1), (c.int(-mu), "e", mu)])
}

fn e_rel_v1(c: &Ctx, mu: i64) -> FormalExpr {
    e_rel_vm1(c, mu).add(&c.lin(&[(c.int(1), "e", 1), (c.int(-2), "e", 2)]))
}

/// `f_(alpha,mu)` of the main case: `(a+mu+1+b(alpha-1)) f_mu - (a+mu+b(alpha-1)) f_(alpha+mu-1)`.
fn main_f(c: &Ctx, alpha: i64, mu: i64) -> FormalExpr {
    let b = Scalar::var(&c.ctx, "b").expect("b");
    let k = &c.ap(mu) + &b.scale_int(alpha - 1);
    c.lin(&[(&k + &c.int(1), "f", mu), (-&k, "f", alpha + mu - 1)])
}

fn main_zero_level(c: &Ctx, alpha: i64, mu: i64) -> FormalExpr {
    let b = Scalar::var(&c.ctx, "b").expect("b");
    main_f(c, 0, mu)
        .sub(&main_f(c, 0, alpha + mu))
        .scale(&(&c.ap(mu) + &b.scale_int(alpha)))
}

fn main_level_one_pair(c: &Ctx, alpha: i64, mu: i64) -> FormalExpr {
    main_f(c, alpha - 1, mu)
        .mul(&c.u("f", alpha + mu - 1))
        .sub(&main_f(c, alpha - 1, mu + 1).mul(&c.u("f", mu)))
}

fn main_shift(c: &Ctx, alpha: i64, mu: i64) -> FormalExpr {
    let b = Scalar::var(&c.ctx, "b").expect("b");
    main_f(c, mu, alpha)
        .scale(&(&c.ap(mu + alpha) + &b))
        .sub(&main_f(c, mu, alpha + 1).scale(&(&c.ap(alpha) + &b)))
        .sub(&main_f(c, mu + 1, alpha).scale(&c.int(mu)))
}

/// The six equations at `mu`.
pub fn main_system(mu: i64) -> FormalSystem {
    let c = Ctx::new();
    let mut s = FormalSystem::new();
    s.push(format!("zero-level(1,{mu})"), main_zero_level(&c, 1, mu));
    s.push(
        format!("zero-level(1,{})", mu - 1),
        main_zero_level(&c, 1, mu - 1),
    );
    s.push(
        format!("level-one-pair(0,{mu})"),
        main_level_one_pair(&c, 0, mu),
    );
    s.push(
        format!("level-one-pair(3,{})", mu - 1),
        main_level_one_pair(&c, 3, mu - 1),
    );
    s.push(format!("shift(0,{mu})"), main_shift(&c, 0, mu));
    s.push(format!("shift(-1,{})", mu + 1), main_shift(&c, -1, mu + 1));
    s
}

fn window_check(c: &mut Vec<Check>, label: String, ok: bool, witness: impl FnOnce() -> String) {
    c.push(Check {
        label,
        assembled: String::new(),
        expected: "zero".into(),
        pass: ok,
        witness: (!ok).then(witness),
    });
}

/// Assembles, derives and solves everything for one subcase. `window`
/// bounds the ranges of `mu` used for cross-checks and propagation.
pub fn q_minus1_systems(sub: Subcase, window: i64) -> Result<SubcaseReport, ConstraintError> {
    let c = Ctx::new();
    let m = module(&c, sub)?;
    let mut checks = vec![];
    let mut findings = vec![];
    let mut systems = vec![];
    let ctx = c.ctx.clone();

    if sub != Subcase::Main {
        for alpha in -window..=window {
            for mu in -window..=window {
                if alpha != 1 {
                    checks.push(equal_check(
                        format!("e[{alpha},{mu}]"),
                        &m.coefficient(alpha, 1, mu)?,
                        &displayed_e(&c, sub, alpha, mu),
                    ));
                }
                if alpha != 0 {
                    checks.push(equal_check(
                        format!("f[{alpha},{mu}]"),
                        &m.coefficient(alpha, 2, mu)?,
                        &displayed_f(&c, sub, alpha, mu),
                    ));
                }
            }
        }
    }

    match sub {
        Subcase::Aa => {
            checks.push(ratio_check(
                "[L[-1,1],L[1,0]] = -L[0,1] on v[0]".into(),
                &m.bracket_defect((-1, 1), (1, 0), 0)?,
                &c.u("e", -1),
            ));
            // [L[0,1], L[1,0]] = 0 at q = -1, so the recurrence is vacuous at mu = 0
            checks.push(equal_check(
                "recurrence at mu=0 is vacuous".into(),
                &m.bracket_defect((0, 1), (1, 0), -1)?,
                &FormalExpr::zero(&ctx),
            ));
            let mut es = level_one_window(&m, window)?;
            es.push("e[-1]", c.u("e", -1));
            for mu in (-window..=window).filter(|&mu| mu != 1 && mu != 0) {
                let derived = m.bracket_defect((mu, 1), (1, 0), -1)?.substitute(|u| {
                    (u.name == "e" && u.int_index() == Some(-1)).then(|| FormalExpr::zero(&ctx))
                });
                let shown = c.lin(&[
                    (c.int(mu - 1), "e", mu - 1),
                    (c.int(-(mu - 2)), "e", mu - 2),
                ]);
                checks.push(ratio_check(
                    format!("e recurrence at mu={mu}"),
                    &derived,
                    &shown,
                ));
                es.push(format!("rec({mu})"), shown);
            }
            let (chk, sol) = solve_check("e vanishes off 0", &es, "e[mu] = 0 for mu != 0", |s| {
                vanishes_on(s, |u| u.int_index() != Some(0))
            });
            checks.push(chk);
            systems.push(("e".into(), es, sol));

            for mu in -window..=window {
                if mu != 0 && mu != -1 {
                    checks.push(ratio_check(
                        format!("f@v0({mu})"),
                        &m.bracket_defect((mu, 2), (1, 0), 0)?,
                        &f_rel_v0(&c, mu),
                    ));
                }
                if mu != 0 && mu.abs() != 1 {
                    checks.push(ratio_check(
                        format!("f@v-1({mu})"),
                        &m.bracket_defect((mu, 2), (1, 0), -1)?,
                        &f_rel_vm1(&c, mu),
                    ));
                }
            }
            let mut fs = FormalSystem::new();
            for mu in [2, -2, -3, 1] {
                fs.push(format!("f@v0({mu})"), f_rel_v0(&c, mu));
            }
            for mu in [2, -2, -3] {
                fs.push(format!("f@v-1({mu})"), f_rel_vm1(&c, mu));
            }
            let (chk, sol) = solve_check(
                "f@v0/f@v-1 system",
                &fs,
                "f[0] = f[1] = f[-1] = ... constant",
                SolutionSpace::is_constant_line,
            );
            checks.push(chk);
            systems.push(("f@v0/f@v-1".into(), fs, sol));
            propagate(&c, &mut checks, window, f_rel_vm1, "f@v-1");
        }
        Subcase::Ba => {
            for mu in -window..=window {
                if mu != 1 {
                    findings.push(ratio_check(
                        format!("e@v-mu({mu}) from the bracket on v[{}]", -mu),
                        &m.bracket_defect((mu, 1), (1, 0), -mu)?,
                        &e_rel_v_neg(&c, mu),
                    ));
                }
                if mu != 0 {
                    findings.push(ratio_check(
                        format!("e@v-mu-1({mu}) from the bracket on v[{}]", -mu - 1),
                        &m.bracket_defect((mu, 1), (1, 0), -mu - 1)?,
                        &e_rel_v_neg1(&c, mu),
                    ));
                }
                if mu != 0 && mu.abs() != 1 {
                    checks.push(ratio_check(
                        format!("f@v-mu({mu})"),
                        &m.bracket_defect((mu, 2), (1, 0), -mu)?,
                        &f_rel_v_neg(&c, mu),
                    ));
                }
                if mu != 0 && mu != -1 {
                    checks.push(ratio_check(
                        format!("f@v-mu-1({mu})"),
                        &m.bracket_defect((mu, 2), (1, 0), -mu - 1)?,
                        &f_rel_v_neg1(&c, mu),
                    ));
                }
            }
            let mut es = FormalSystem::new();
            for mu in [0, 2, 3] {
                es.push(format!("e@v-mu({mu})"), e_rel_v_neg(&c, mu));
            }
            for mu in [1, 2, 3] {
                es.push(format!("e@v-mu-1({mu})"), e_rel_v_neg1(&c, mu));
            }
            let (chk, sol) = solve_check(
                "e@v-mu/e@v-mu-1 system",
                &es,
                "e[0] = e[-1] = ... = e[-4] = 0",
                SolutionSpace::is_trivial,
            );
            checks.push(chk);
            systems.push(("e@v-mu system".into(), es, sol));
            // with e[0] = e[-2] = 0, e@v-mu reads (mu-1) e[-mu] = mu^2 e[-mu-1]
            let mut rec = FormalSystem::new();
            for i in [0i64, -2] {
                rec.push(format!("e[{i}]"), c.u("e", i));
            }
            let e0_zero = |u: &Unknown| (u.int_index() == Some(0)).then(|| FormalExpr::zero(&ctx));
            for mu in (-window..=window + 2).filter(|&mu| mu != 0 && mu != 1) {
                let shown = c.lin(&[(c.int(mu - 1), "e", -mu), (c.int(-mu * mu), "e", -mu - 1)]);
                let e2 = c.lin(&[(c.int(mu * (mu + 1)), "e", -2)]);
                checks.push(equal_check(
                    format!("e@v-mu({mu}) with e[0] = 0"),
                    &e_rel_v_neg(&c, mu).substitute(e0_zero),
                    &shown.add(&e2).substitute(e0_zero),
                ));
                rec.push(format!("e@v-mu({mu})"), shown);
            }
            let (chk, sol) = solve_check(
                "e recurrence",
                &rec,
                "e vanishes",
                SolutionSpace::is_trivial,
            );
            checks.push(chk);
            systems.push(("e-recurrence".into(), rec, sol));

            // what the brackets themselves force on e
            let window_sys = level_one_window(&m, window)?;
            let (chk, sol) = solve_check(
                "level-one brackets force e[mu] = 0 for mu != -1",
                &window_sys,
                "e[mu] = 0 for mu != -1",
                |s| vanishes_on(s, |u| u.int_index() != Some(-1)),
            );
            findings.push(chk);
            let free = sol
                .as_ref()
                .is_some_and(|s| !s.unknowns.contains(&Unknown::new("e", -1)));
            findings.push(Check {
                label: "e[-1] is not determined by the level-one brackets".into(),
                assembled: window_sys
                    .unknowns()
                    .iter()
                    .map(Unknown::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                expected: "e[-1] absent".into(),
                pass: free,
                witness: (!free).then(|| "e[-1] occurs in the window system".into()),
            });
            // C v_0 is still a submodule: L[1,1] v_0 = e[0] v_1 and f[alpha,0] = 0
            let mut sub_ok = sol
                .as_ref()
                .is_some_and(|s| vanishes_on(s, |u| u.int_index() == Some(0)));
            for alpha in (-window..=window).filter(|&a| a != 0) {
                sub_ok &= m.coefficient(alpha, 2, 0)?.is_zero();
            }
            findings.push(Check {
                label: "C v[0] is a submodule".into(),
                assembled: String::new(),
                expected: "e[0] = 0 and L[alpha,2] v[0] = 0 for alpha != 0".into(),
                pass: sub_ok,
                witness: (!sub_ok).then(|| "v[0] is not invariant".into()),
            });

            let mut fs = FormalSystem::new();
            for mu in [2, -2, 3] {
                fs.push(format!("f@v-mu({mu})"), f_rel_v_neg(&c, mu));
            }
            for mu in [2, -2, 1, -3] {
                fs.push(format!("f@v-mu-1({mu})"), f_rel_v_neg1(&c, mu));
            }
            let (chk, sol) = solve_check(
                "f@v-mu/f@v-mu-1 system",
                &fs,
                "f constant",
                SolutionSpace::is_constant_line,
            );
            checks.push(chk);
            systems.push(("f@v-mu system".into(), fs, sol));
            // f@v-mu(mu) reads mu f[-mu] - (mu-1) f[1-mu] = f[1]
            for mu in -window..=window {
                let shown = c.lin(&[
                    (c.int(mu), "f", -mu),
                    (c.int(-(mu - 1)), "f", 1 - mu),
                    (c.int(-1), "f", 1),
                ]);
                checks.push(equal_check(
                    format!("f@v-mu({mu}) rewritten"),
                    &f_rel_v_neg(&c, mu),
                    &shown,
                ));
            }
            propagate(&c, &mut checks, window, f_rel_v_neg, "f@v-mu");
        }
        Subcase::Ap01PlusTrivial => {
            for mu in -window..=window {
                if mu != 0 && mu != 1 {
                    let derived = m.bracket_defect((mu, 1), (1, 0), -1)?;
                    // with the corrected e[alpha,-1] the relation on v[-1] is e@v-1(mu-2)
                    checks.push(ratio_check(
                        format!("e@v-1({}) on v[-1]", mu - 2),
                        &derived,
                        &e_rel_vm1(&c, mu - 2),
                    ));
                    findings.push(ratio_check(
                        format!("e@v-1({mu}) from the bracket on v[-1]"),
                        &derived,
                        &e_rel_vm1(&c, mu),
                    ));
                }
                if mu != -1 && mu != -2 {
                    checks.push(ratio_check(
                        format!("e@v1({mu})"),
                        &m.bracket_defect((mu, 1), (1, 0), 1)?,
                        &e_rel_v1(&c, mu),
                    ));
                }
            }
            let mut es = FormalSystem::new();
            for mu in [2, -1] {
                es.push(format!("e@v-1({mu})"), e_rel_vm1(&c, mu));
            }
            for mu in [2, 0] {
                es.push(format!("e@v1({mu})"), e_rel_v1(&c, mu));
            }
            let (chk, sol) = solve_check(
                "e@v-1/e@v1 system",
                &es,
                "e[-1] = e[1] = e[2] = e[3] = 0",
                |s| vanishes_on(s, |u| u.int_index() != Some(0)),
            );
            checks.push(chk);
            systems.push(("e@v-1/e@v1".into(), es, sol));
            let mut prop = es_window(&c, window);
            let (chk, sol) =
                solve_check("e@v-1 propagation", &prop, "e[mu] = 0 for mu != 0", |s| {
                    vanishes_on(s, |u| u.int_index() != Some(0))
                });
            checks.push(chk);
            systems.push(("e@v-1 window".into(), std::mem::take(&mut prop), sol));

            let window_sys = level_one_window(&m, window)?;
            let (chk, sol) = solve_check(
                "level-one brackets force e[mu] = 0 for mu != 0, -1",
                &window_sys,
                "e[mu] = 0 for mu != 0, -1",
                |s| vanishes_on(s, |u| !matches!(u.int_index(), Some(0) | Some(-1))),
            );
            findings.push(chk);
            let free = sol
                .as_ref()
                .is_some_and(|s| !s.unknowns.contains(&Unknown::new("e", -1)));
            findings.push(Check {
                label: "e[-1] is not determined by the level-one brackets".into(),
                assembled: window_sys
                    .unknowns()
                    .iter()
                    .map(Unknown::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                expected: "e[-1] absent".into(),
                pass: free,
                witness: (!free).then(|| "e[-1] occurs in the window system".into()),
            });
            // [L[1,1], L[y,1]] = 0 on v[-1] gives y e[0] e[-1] once e vanishes off 0, -1
            for y in (3..=window.max(3) + 2).chain(-window.max(3)..=-2) {
                let off = |u: &Unknown| {
                    (u.name == "e" && !matches!(u.int_index(), Some(0) | Some(-1)))
                        .then(|| FormalExpr::zero(&ctx))
                };
                let derived = m.bracket_defect((1, 1), (y, 1), -1)?.substitute(off);
                findings.push(ratio_check(
                    format!("[L[1,1],L[{y},1]] on v[-1] gives e[0] e[-1] = 0"),
                    &derived,
                    &c.u("e", 0).mul(&c.u("e", -1)),
                ));
            }

            checks.push(ratio_check(
                "[L[1,2],L[1,0]] = 2 L[2,2] on v[-1]".into(),
                &m.bracket_defect((1, 2), (1, 0), -1)?,
                &c.u("f", -1).sub(&c.u("f", 1)),
            ));
            let f1 =
                |u: &Unknown| (u.name == "f" && u.int_index() == Some(-1)).then(|| c.u("f", 1));
            checks.push(ratio_check(
                "[L[-3,2],L[1,0]] = -2 L[-2,2] on v[1], given f[-1] = f[1]".into(),
                &m.bracket_defect((-3, 2), (1, 0), 1)?.substitute(f1),
                &c.u("f", -2).sub(&c.u("f", 2)),
            ));
            let mut fs = FormalSystem::new();
            fs.push("f[-1] = f[1]", c.u("f", -1).sub(&c.u("f", 1)));
            fs.push("f[-2] = f[2]", c.u("f", -2).sub(&c.u("f", 2)));
            for mu in (-window..=window).filter(|&mu| mu != 0 && mu.abs() != 1) {
                let shown = c.lin(&[
                    (c.int(mu), "f", mu),
                    (c.int(-(mu - 1)), "f", mu - 1),
                    (c.int(-1), "f", -1),
                ]);
                checks.push(ratio_check(
                    format!("f recurrence at mu={mu}"),
                    &m.bracket_defect((mu, 2), (1, 0), -1)?,
                    &shown,
                ));
                fs.push(format!("rec({mu})"), shown);
            }
            let (chk, sol) = solve_check("f system", &fs, "f constant off 0", |s| {
                constant_on(s, |u| u.int_index() != Some(0))
            });
            checks.push(chk);
            systems.push(("f".into(), fs, sol));

            let op = {
                let g = |a, i| Op::gen(&ctx, a, i);
                g(1, 1)
                    .commutator(&g(0, 2))
                    .scale(&c.int(2))
                    .sub(&g(1, 1).commutator(&g(-1, 2)).commutator(&g(1, 0)))
            };
            let derived =
                m.op_on(&op, 0, 1)?
                    .substitute(|u| match (u.name.as_str(), u.int_index()) {
                        ("e", Some(i)) if i != 0 => Some(FormalExpr::zero(&ctx)),
                        ("f", Some(i)) if i != 0 => Some(c.u("f", 1)),
                        _ => None,
                    });
            let shown = c.u("e", 0).mul(&c.u("f", 1).sub(&c.u("f", 0)));
            checks.push(ratio_check(
                "e[0](f[1] - f[0]) on v[0]".into(),
                &derived,
                &shown,
            ));
        }
        Subcase::Main => {
            for mu in -window..=window {
                for alpha in -2..=3 {
                    checks.push(equal_check(
                        format!("f[{alpha},{mu}]"),
                        &m.coefficient(alpha, 1, mu)?,
                        &main_f(&c, alpha, mu),
                    ));
                    checks.push(ratio_check(
                        format!("zero-level({alpha},{mu})"),
                        &m.bracket_defect((0, 1), (alpha, 0), mu)?,
                        &main_zero_level(&c, alpha, mu),
                    ));
                    checks.push(ratio_check(
                        format!("level-one-pair({alpha},{mu})"),
                        &m.bracket_defect((1, 1), (alpha - 1, 1), mu)?,
                        &main_level_one_pair(&c, alpha, mu),
                    ));
                    checks.push(ratio_check(
                        format!("shift({alpha},{mu})"),
                        &m.bracket_defect((mu, 1), (1, 0), alpha)?,
                        &main_shift(&c, alpha, mu),
                    ));
                }
            }
            main_branches(&c, &mut checks, &mut systems, window)?;
        }
    }
    Ok(SubcaseReport {
        subcase: sub,
        systems,
        checks,
        findings,
    })
}

/// Every defect `[L[alpha,1], L[beta,0]]` on `v[nu]` over the window.
fn level_one_window(m: &FormalModule, window: i64) -> Result<FormalSystem, ConstraintError> {
    let mut s = FormalSystem::new();
    let r = window.min(3);
    for alpha in -r..=r {
        for beta in -r..=r {
            for nu in -window..=window {
                let d = m.bracket_defect((alpha, 1), (beta, 0), nu)?;
                if !d.is_zero() {
                    s.push(format!("[L[{alpha},1],L[{beta},0]] v[{nu}]"), d);
                }
            }
        }
    }
    Ok(s)
}

fn es_window(c: &Ctx, window: i64) -> FormalSystem {
    let mut s = FormalSystem::new();
    for mu in [2, -1] {
        s.push(format!("e@v-1({mu})"), e_rel_vm1(c, mu));
    }
    for mu in [2, 0] {
        s.push(format!("e@v1({mu})"), e_rel_v1(c, mu));
    }
    for mu in (-window..=window).filter(|&mu| mu != 0) {
        s.push(format!("e@v-1({mu})"), e_rel_vm1(c, mu));
    }
    s
}

/// Iterates a two-term recurrence from a constant seed window and checks
/// every value stays equal to the constant.
fn propagate(
    c: &Ctx,
    checks: &mut Vec<Check>,
    window: i64,
    eq: fn(&Ctx, i64) -> FormalExpr,
    name: &str,
) {
    let t = Scalar::var(&c.ctx, "t").expect("t");
    let mut values: BTreeMap<i64, Scalar> = (-4..=3).map(|i| (i, t.clone())).collect();
    let mut ok = true;
    let mut witness = String::new();
    let span = window.max(4) + 4;
    for step in 0..2 * span {
        for mu in -span..=span {
            let e = eq(c, mu);
            let unknown: Vec<Unknown> = e
                .unknowns()
                .into_iter()
                .filter(|u| !values.contains_key(&u.int_index().expect("integer index")))
                .collect();
            if unknown.len() != 1 {
                continue;
            }
            let u = &unknown[0];
            let k = e.linear_coeff(u);
            if k.is_zero() {
                continue;
            }
            let rest = e.substitute(|v| values.get(&v.int_index()?).map(FormalExpr::constant));
            let Ok(value) = (-&rest.constant_term()).checked_div(&k) else {
                continue;
            };
            if value != t {
                ok = false;
                witness = format!("{name}({mu}) gives {u} = {value} at step {step}");
            }
            values.insert(u.int_index().expect("integer index"), value);
        }
    }
    let covered = (-span..=span).all(|i| values.contains_key(&i));
    window_check(
        checks,
        format!("{name} propagation over [{}, {}]", -span, span),
        ok && covered,
        || {
            if ok {
                "window not covered".into()
            } else {
                witness
            }
        },
    );
}

fn main_branches(
    c: &Ctx,
    checks: &mut Vec<Check>,
    systems: &mut Vec<(String, FormalSystem, Option<SolutionSpace>)>,
    window: i64,
) -> Result<(), ConstraintError> {
    let ctx = &c.ctx;
    let zero = FormalExpr::zero(ctx);
    let t = Scalar::var(ctx, "t")?;
    for mu in -window..=window {
        let s = main_system(mu);
        let constant = |u: &Unknown| (u.name == "f").then(|| FormalExpr::constant(&t));
        let bad: Vec<String> = s
            .labels
            .iter()
            .zip(&s.equations)
            .filter(|(_, e)| !e.substitute(constant).is_zero())
            .map(|(l, _)| l.clone())
            .collect();
        window_check(
            checks,
            format!("(i) f constant at mu={mu}"),
            bad.is_empty(),
            || bad.join(", "),
        );
        systems.push((format!("main({mu})"), s, None));
    }
    // spikes: b = 0, f nonzero only at -a-1; b = 1, f nonzero only at -a
    for (label, b_val, shift, tname) in [("(ii)", 0i64, -1i64, "t0"), ("(iii)", 1, 0, "t1")] {
        let tv = Scalar::var(ctx, tname)?;
        let bv = Scalar::int(ctx, b_val);
        for mu in -window..=window {
            for p in (mu - 5)..=(mu + 5) {
                let a_val = Scalar::int(ctx, shift - p);
                let s = main_system(mu).subs(&[], &[("a", &a_val), ("b", &bv)])?;
                let spike = |u: &Unknown| {
                    let i = u.int_index()?;
                    Some(if i == p {
                        FormalExpr::constant(&tv)
                    } else {
                        zero.clone()
                    })
                };
                let bad: Vec<String> = s
                    .labels
                    .iter()
                    .zip(&s.equations)
                    .filter(|(_, e)| !e.substitute(spike).is_zero())
                    .map(|(l, _)| l.clone())
                    .collect();
                if !bad.is_empty() {
                    window_check(
                        checks,
                        format!("{label} spike at {p}, mu={mu}"),
                        false,
                        || bad.join(", "),
                    );
                }
            }
        }
        window_check(
            checks,
            format!("{label} spike branch over the window"),
            true,
            String::new,
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcases_pass() {
        for sub in Subcase::ALL {
            let r = q_minus1_systems(sub, 3).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{sub}: {failed:#?}");
        }
    }

    #[test]
    fn findings_record_the_discrepancies() {
        let r = q_minus1_systems(Subcase::Ba, 3).unwrap();
        for f in &r.findings {
            let displayed_relation =
                f.label.starts_with("e@v-mu(") || f.label.starts_with("e@v-mu-1(");
            assert_eq!(f.pass, !displayed_relation, "{f:#?}");
        }
        let r = q_minus1_systems(Subcase::Ap01PlusTrivial, 3).unwrap();
        for f in &r.findings {
            assert_eq!(f.pass, !f.label.starts_with("e@v-1("), "{f:#?}");
        }
        assert!(q_minus1_systems(Subcase::Aa, 3)
            .unwrap()
            .findings
            .is_empty());
    }

    #[test]
    fn main_branches_satisfy_the_system() {
        let c = Ctx::new();
        let t = Scalar::var(&c.ctx, "t").unwrap();
        let s = main_system(2);
        assert_eq!(s.len(), 6);
        for e in &s.equations {
            assert!(e.substitute(|_| Some(FormalExpr::constant(&t))).is_zero());
        }
        // a non-constant sequence violates it
        let bad = |u: &Unknown| {
            Some(FormalExpr::constant(&Scalar::int(
                &c.ctx,
                u.int_index().unwrap(),
            )))
        };
        assert!(s.equations.iter().any(|e| !e.substitute(bad).is_zero()));
    }
}
