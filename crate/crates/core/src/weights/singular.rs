//! Depth-one singular vectors and the label functionals `(f g)' t^(1-q)`.

use std::collections::BTreeMap;

use super::upoly::UPoly;
use super::{Weight, WeightError};
use crate::algebra::{Basis, BlockAlgebra};
use crate::scalar::Scalar;

/// One term `coeff * t^exponent` of a function in `t^q C[t]`-type spaces;
/// exponents are scalars because they involve `q`.
#[derive(Clone, Debug)]
struct Power {
    exponent: Scalar,
    coeff: Scalar,
}

fn derivative(f: &[Power]) -> Vec<Power> {
    f.iter()
        .map(|p| Power {
            coeff: &p.coeff * &p.exponent,
            exponent: &p.exponent - &Scalar::one(p.exponent.ctx()),
        })
        .filter(|p| !p.coeff.is_zero())
        .collect()
}

fn times_power(f: &[Power], e: &Scalar) -> Vec<Power> {
    f.iter()
        .map(|p| Power {
            coeff: p.coeff.clone(),
            exponent: &p.exponent + e,
        })
        .collect()
}

/// The functional `(f g)' t^(1-q)` for `f = t^q h_f(t)`, `g = t^(q+j)`, written
/// as `label index -> coefficient` (the term `t^(q+n)` pairs with `Lambda_n`).
pub fn bqa0_element(q: &Scalar, h_f: &UPoly, j: usize) -> BTreeMap<usize, Scalar> {
    let ctx = q.ctx();
    let one = Scalar::one(ctx);
    let base_exp = q.scale_int(2) + Scalar::int(ctx, j as i64);
    let fg: Vec<Power> = h_f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Power {
            exponent: &base_exp + &Scalar::int(ctx, k as i64),
            coeff: c.clone(),
        })
        .collect();
    let shifted = times_power(&derivative(&fg), &(&one - q));
    let mut out = BTreeMap::new();
    for p in shifted {
        let n = (&p.exponent - q)
            .as_i64()
            .and_then(|n| usize::try_from(n).ok())
            .expect("exponent is q plus a nonnegative integer");
        out.insert(n, p.coeff);
    }
    out
}

/// Evaluates a label functional on `w`.
pub fn apply_functional(
    functional: &BTreeMap<usize, Scalar>,
    w: &Weight,
) -> Result<Scalar, WeightError> {
    let mut acc = Scalar::zero(w.ctx());
    for (n, c) in functional {
        let l = w.labels.get(*n).ok_or(WeightError::TruncationExceeded {
            needed: *n,
            have: w.depth(),
        })?;
        acc += &(c * l);
    }
    Ok(acc)
}

/// Values of `Lambda(L[1,j] u)` where `u = sum_k h_k L[-1,k]` acts on the
/// highest weight vector, for every `j` the truncation allows. The products are
/// formed with the bracket of `B(q)`, since `L[1,j]` kills the highest weight vector.
pub fn singular_residuals(w: &Weight, h_f: &UPoly) -> Result<Vec<Scalar>, WeightError> {
    let deg = h_f.degree();
    if deg > w.depth() {
        return Err(WeightError::TruncationExceeded {
            needed: deg,
            have: w.depth(),
        });
    }
    let alg = BlockAlgebra::new(w.q.clone());
    let mut u = alg.zero();
    for (k, hk) in h_f.coeffs().iter().enumerate() {
        u = u.add(&alg.gen(-1, k as u32).scale(hk));
    }
    let mut out = vec![];
    for j in 0..=(w.depth() - deg) {
        let x = alg.bracket(&alg.gen(1, j as u32), &u);
        let mut value = Scalar::zero(w.ctx());
        for (b, c) in x.terms() {
            let l = match b {
                Basis::Gen { alpha: 0, i } => &w.labels[*i as usize],
                Basis::Central => &w.central,
                Basis::Gen { .. } => unreachable!("bracket lands in degree 0"),
            };
            value += &(c * l);
        }
        out.push(value);
    }
    Ok(out)
}

/// Whether `x^-1 t^q h_f(t)` applied to the highest weight vector is
/// singular, within the truncation.
pub fn singular_check(w: &Weight, h_f: &UPoly) -> Result<bool, WeightError> {
    Ok(singular_residuals(w, h_f)?.iter().all(Scalar::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldContext;

    #[test]
    fn functional_examples() {
        let k = FieldContext::rational(&["q", "lambda"]).unwrap();
        let q = Scalar::var(&k, "q").unwrap();
        let lam = Scalar::var(&k, "lambda").unwrap();
        let one = UPoly::one(&k);
        assert_eq!(
            bqa0_element(&q, &one, 0),
            BTreeMap::from([(0, q.scale_int(2))])
        );
        let t = UPoly::from_ints(&k, &[0, 1]);
        assert_eq!(
            bqa0_element(&q, &t, 0),
            BTreeMap::from([(1, q.scale_int(2) + Scalar::one(&k))])
        );
        let h = UPoly::linear_root(&lam);
        let m = bqa0_element(&q, &h, 1);
        assert_eq!(m[&1], -(&lam * &(q.scale_int(2) + Scalar::one(&k))));
        assert_eq!(m[&2], q.scale_int(2) + Scalar::int(&k, 2));
    }

    #[test]
    fn singular_examples() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let t = Weight::trivial(Scalar::one(&k), 4);
        assert!(singular_check(&t, &UPoly::one(&k)).unwrap());
        let labels = (0..=6).map(|n| Scalar::ratio(&k, 1 << n, n + 2)).collect();
        let w = Weight::new(Scalar::one(&k), labels, Scalar::zero(&k));
        assert!(singular_check(&w, &UPoly::from_ints(&k, &[-2, 1])).unwrap());
        assert!(!singular_check(&w, &UPoly::from_ints(&k, &[-3, 1])).unwrap());
    }
}
