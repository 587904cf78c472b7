use std::collections::BTreeMap;
use std::fmt;

use super::upoly::UPoly;
use super::{Weight, WeightError};
use crate::scalar::Scalar;

/// `sum_j p_j(z) e^(a_j z)` with distinct exponents and nonzero `p_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    terms: Vec<(Scalar, UPoly)>,
}

impl QuasiPolynomial {
    pub fn new(terms: Vec<(Scalar, UPoly)>) -> Result<Self, WeightError> {
        for (i, (a, p)) in terms.iter().enumerate() {
            if p.is_zero() {
                return Err(WeightError::InvalidQuasiPolynomial(format!(
                    "polynomial of exponent {a} is zero"
                )));
            }
            if terms[..i].iter().any(|(b, _)| b == a) {
                return Err(WeightError::InvalidQuasiPolynomial(format!(
                    "exponent {a} repeated"
                )));
            }
        }
        Ok(QuasiPolynomial { terms })
    }

    pub fn zero() -> Self {
        QuasiPolynomial { terms: vec![] }
    }

    pub fn terms(&self) -> &[(Scalar, UPoly)] {
        &self.terms
    }

    /// Coefficient of `z^n / n!`: `sum_j sum_m p_(j,m) n!/(n-m)! a_j^(n-m)`.
    pub fn coefficient(&self, n: usize) -> Option<Scalar> {
        let ctx = self.terms.first()?.0.ctx().clone();
        let mut acc = Scalar::zero(&ctx);
        for (a, p) in &self.terms {
            let mut falling = Scalar::one(&ctx);
            for (m, pm) in p.coeffs().iter().enumerate() {
                if m > n {
                    break;
                }
                if m > 0 {
                    falling = falling.scale_int((n - m + 1) as i64);
                }
                if !pm.is_zero() {
                    acc += &(&(pm * &falling) * &a.powi((n - m) as u32));
                }
            }
        }
        Some(acc)
    }

    /// `prod_j (t - a_j)^(deg p_j + 1)`.
    pub fn minimal_annihilator(&self) -> Option<UPoly> {
        let ctx = self.terms.first()?.0.ctx().clone();
        Some(self.terms.iter().fold(UPoly::one(&ctx), |acc, (a, p)| {
            acc.mul(&UPoly::linear_root(a).pow(p.degree() as u32 + 1))
        }))
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, p)| format!("({})*exp({}*z)", p.display_in("z"), a.to_factor_string()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Labels whose generating series is `qp`: `Lambda_n = [z^n/n!] qp / (2q+n)`.
/// At a pole `2q+n = 0` the label is taken from `free` and the coefficient
/// of `qp` there must vanish.
pub fn labels_from_quasipoly(
    qp: &QuasiPolynomial,
    q: &Scalar,
    depth: usize,
    free: &BTreeMap<usize, Scalar>,
) -> Result<Weight, WeightError> {
    let ctx = q.ctx();
    let mut w = Weight::trivial(q.clone(), depth);
    for n in 0..=depth {
        let d = qp.coefficient(n).unwrap_or_else(|| Scalar::zero(ctx));
        let shift = w.shift(n);
        w.labels[n] = if shift.is_zero() {
            let value = free
                .get(&n)
                .cloned()
                .ok_or(WeightError::MissingFreeValue(n))?;
            if !d.is_zero() {
                return Err(WeightError::PoleCoefficientNonzero(n));
            }
            value
        } else {
            d.checked_div(&shift)?
        };
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldContext;

    #[test]
    fn exponential_labels() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let qp = QuasiPolynomial::new(vec![(Scalar::int(&k, 2), UPoly::one(&k))]).unwrap();
        let w = labels_from_quasipoly(&qp, &Scalar::one(&k), 4, &BTreeMap::new()).unwrap();
        let expect: Vec<Scalar> = (0..=4).map(|n| Scalar::ratio(&k, 1 << n, n + 2)).collect();
        assert_eq!(w.labels, expect);
    }

    #[test]
    fn pole_takes_free_value() {
        let k = FieldContext::rational(&["s"]).unwrap();
        let s = Scalar::var(&k, "s").unwrap();
        let free = BTreeMap::from([(3usize, s.clone())]);
        let w = labels_from_quasipoly(
            &QuasiPolynomial::zero(),
            &Scalar::ratio(&k, -3, 2),
            4,
            &free,
        )
        .unwrap();
        let z = Scalar::zero(&k);
        assert_eq!(w.labels, vec![z.clone(), z.clone(), z.clone(), s, z]);
    }

    #[test]
    fn pole_without_free_value() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        // z e^z
        let qp =
            QuasiPolynomial::new(vec![(Scalar::one(&k), UPoly::from_ints(&k, &[0, 1]))]).unwrap();
        let half = Scalar::ratio(&k, -1, 2);
        let err = labels_from_quasipoly(&qp, &half, 3, &BTreeMap::new()).unwrap_err();
        assert_eq!(err.to_string(), "free value required at n=1");
        // with a free value the nonzero coefficient of z/1! is the problem
        let free = BTreeMap::from([(1usize, Scalar::one(&k))]);
        let err = labels_from_quasipoly(&qp, &half, 3, &free).unwrap_err();
        assert_eq!(err, WeightError::PoleCoefficientNonzero(1));
    }

    #[test]
    fn coefficients_of_z_exp() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        // z^2 e^(3z): coefficient n(n-1) 3^(n-2)
        let qp = QuasiPolynomial::new(vec![(Scalar::int(&k, 3), UPoly::from_ints(&k, &[0, 0, 1]))])
            .unwrap();
        for n in 0..6i64 {
            let expect = if n < 2 {
                0
            } else {
                n * (n - 1) * 3i64.pow((n - 2) as u32)
            };
            assert_eq!(qp.coefficient(n as usize).unwrap(), Scalar::int(&k, expect));
        }
    }
}
