use std::collections::{BTreeSet, VecDeque};

use super::{GradedVector, IntSeriesError, IntermediateModule};
use crate::algebra::BlockAlgebra;
use crate::par::Exec;
use crate::scalar::Scalar;

/// Finite window of checks: generators `L[alpha,i]` with `|alpha| <= alpha_max`,
/// `i <= level_max`, and basis vectors `v_mu` with `|mu| <= mu_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    pub alpha_max: i64,
    pub level_max: u32,
    pub mu_max: i64,
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            alpha_max: 4,
            level_max: 6,
            mu_max: 8,
        }
    }
}

impl WindowSpec {
    fn generators(&self) -> Vec<(i64, u32)> {
        (-self.alpha_max..=self.alpha_max)
            .flat_map(|a| (0..=self.level_max).map(move |i| (a, i)))
            .collect()
    }
}

/// A pair of generators and a basis vector where the module axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub x: (i64, u32),
    pub y: (i64, u32),
    pub mu: i64,
    pub residual: GradedVector,
}

/// `[x,y] v_mu - (x y - y x) v_mu` for `x = L[alpha,i]`, `y = L[beta,j]`.
pub fn bracket_residual(
    m: &IntermediateModule,
    x: (i64, u32),
    y: (i64, u32),
    mu: i64,
) -> Result<GradedVector, IntSeriesError> {
    let v = m.basis_vector(mu)?;
    let alg = BlockAlgebra::new(m.q().clone());
    let k = alg.structure_constant(x.0, x.1, y.0, y.1);
    let lhs = m.act(x.0 + y.0, x.1 + y.1, &v).scale(&k);
    let xy = m.act(x.0, x.1, &m.act(y.0, y.1, &v));
    let yx = m.act(y.0, y.1, &m.act(x.0, x.1, &v));
    Ok(lhs.sub(&xy.sub(&yx)))
}

/// Every violation of the module axiom in the window. Each unordered pair of
/// generators is checked once.
pub fn verify_module(m: &IntermediateModule, window: &WindowSpec, exec: Exec) -> Vec<Violation> {
    let gens = window.generators();
    let mus: Vec<i64> = (-window.mu_max..=window.mu_max)
        .filter(|&mu| m.family().contains(mu))
        .collect();
    let pairs: Vec<((i64, u32), (i64, u32))> = gens
        .iter()
        .enumerate()
        .flat_map(|(n, &x)| gens[n..].iter().map(move |&y| (x, y)))
        .collect();
    exec.flat_map(&pairs, |&(x, y)| {
        mus.iter()
            .filter_map(|&mu| {
                let residual = bracket_residual(m, x, y, mu).expect("mu is in the basis");
                (!residual.is_zero()).then_some(Violation { x, y, mu, residual })
            })
            .collect()
    })
}

/// `L[0,0]` eigenvalue on `v_mu` minus `q(mu + a)`.
pub fn eigen_check(m: &IntermediateModule, mu: i64) -> Result<Scalar, IntSeriesError> {
    let v = m.basis_vector(mu)?;
    let value = m.act(0, 0, &v).coeff(mu);
    let ctx = m.ctx();
    let expect = m.q() * &(&Scalar::int(ctx, mu) + &m.family().eigen_offset(ctx));
    Ok(&value - &expect)
}

/// Result of [`irreducible_window`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    /// Basis indices that were used as sources and targets.
    pub inner: Vec<i64>,
    /// Pairs `(mu, nu)` in the inner window with `v_nu` not reachable from `v_mu`.
    pub unreachable: Vec<(i64, i64)>,
}

impl Reachability {
    pub fn is_irreducible(&self) -> bool {
        self.unreachable.is_empty()
    }
}

/// Reachability between basis vectors of the inner half of `[-mu_max, mu_max]`
/// under the generators with `|alpha| <= 2`, `i <= max(1, -2q)`; paths may pass
/// through the outer half. A step counts when its coefficient is not
/// identically zero.
pub fn irreducible_window(
    m: &IntermediateModule,
    mu_max: i64,
    exec: Exec,
) -> Result<Reachability, IntSeriesError> {
    if mu_max < 1 {
        return Err(IntSeriesError::InvalidWindow(format!(
            "mu_max must be positive, got {mu_max}"
        )));
    }
    let neg_double = m
        .q()
        .scale_int(-2)
        .as_i64()
        .filter(|&v| v >= 1)
        .unwrap_or(0);
    let level_max = neg_double.max(1) as u32;
    let gens: Vec<(i64, u32)> = (-2..=2i64)
        .flat_map(|a| (0..=level_max).map(move |i| (a, i)))
        .collect();
    let inner_max = mu_max / 2;
    let inner: Vec<i64> = (-inner_max..=inner_max)
        .filter(|&mu| m.family().contains(mu))
        .collect();
    let unreachable = exec.flat_map(&inner, |&start| {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(mu) = queue.pop_front() {
            for &(a, i) in &gens {
                if let Some((nu, _)) = m.act_basis(a, i, mu) {
                    if nu.abs() <= mu_max && seen.insert(nu) {
                        queue.push_back(nu);
                    }
                }
            }
        }
        inner
            .iter()
            .filter(|nu| !seen.contains(nu))
            .map(|&nu| (start, nu))
            .collect()
    });
    Ok(Reachability { inner, unreachable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intseries::{Extension, Family};
    use crate::scalar::FieldContext;
    use std::sync::Arc;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::rational(&["q", "a", "b", "s", "t"]).unwrap()
    }

    fn v(c: &Arc<FieldContext>, n: &str) -> Scalar {
        Scalar::var(c, n).unwrap()
    }

    fn small() -> WindowSpec {
        WindowSpec {
            alpha_max: 2,
            level_max: 3,
            mu_max: 3,
        }
    }

    #[test]
    fn symbolic_families_are_modules() {
        let c = ctx();
        let q = v(&c, "q");
        let a = v(&c, "a");
        for fam in [
            Family::Aab {
                a: a.clone(),
                b: v(&c, "b"),
            },
            Family::Aa { a: a.clone() },
            Family::Ba { a },
            Family::Ap01,
        ] {
            let m = IntermediateModule::new(q.clone(), fam, Extension::Trivial).unwrap();
            assert!(
                verify_module(&m, &small(), Exec::Sequential).is_empty(),
                "{m}"
            );
        }
    }

    #[test]
    fn wrong_level_is_obstructed() {
        let c = ctx();
        let s = v(&c, "s");
        let q = Scalar::ratio(&c, -1, 3);
        let m = IntermediateModule::new(
            q,
            Family::Aab {
                a: v(&c, "a"),
                b: v(&c, "b"),
            },
            Extension::Level {
                level: 1,
                s: s.clone(),
            },
        )
        .unwrap();
        let r = bracket_residual(&m, (1, 0), (-1, 1), 0).unwrap();
        // -alpha (2q + j) s with alpha = 1, j = 1
        assert_eq!(r.coeff(0), -(&Scalar::ratio(&c, 1, 3) * &s));
        assert!(!verify_module(&m, &small(), Exec::Parallel).is_empty());
    }

    #[test]
    fn st_extension_at_minus_one() {
        let c = ctx();
        let m = IntermediateModule::new(
            Scalar::int(&c, -1),
            Family::Aab {
                a: v(&c, "a"),
                b: Scalar::int(&c, 1),
            },
            Extension::ST {
                s: v(&c, "s"),
                t: v(&c, "t"),
            },
        )
        .unwrap();
        assert!(verify_module(&m, &small(), Exec::Sequential).is_empty());
    }

    #[test]
    fn reachability() {
        let c = ctx();
        let z = Scalar::zero(&c);
        let m = IntermediateModule::new(
            Scalar::one(&c),
            Family::Aab { a: z.clone(), b: z },
            Extension::Trivial,
        )
        .unwrap();
        let r = irreducible_window(&m, 8, Exec::Sequential).unwrap();
        assert!(r.unreachable.contains(&(0, 1)));
        let ap =
            IntermediateModule::new(Scalar::one(&c), Family::Ap01, Extension::Trivial).unwrap();
        assert!(irreducible_window(&ap, 8, Exec::Sequential)
            .unwrap()
            .is_irreducible());
        assert!(eigen_check(&ap, 3).unwrap().is_zero());
    }
}
