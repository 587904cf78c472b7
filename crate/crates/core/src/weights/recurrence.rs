use std::sync::Arc;

use super::upoly::UPoly;
use crate::scalar::{FieldContext, Scalar};

/// Outcome of Berlekamp-Massey on a finite sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// Monic `h(t) = sum h_k t^k` with `sum_k h_k s_(n+k) = 0` for every `n`
    /// the sequence covers.
    pub annihilator: UPoly,
    /// Linear complexity (the degree of `annihilator`).
    pub order: usize,
    /// Sequence length used.
    pub length: usize,
}

impl Recurrence {
    /// The order is certified when it is backed by at least `2 order + 2` terms.
    pub fn is_certified(&self) -> bool {
        self.length >= 2 * self.order + 2
    }
}

/// Minimal linear recurrence of `seq` over the exact field.
pub fn berlekamp_massey(ctx: &Arc<FieldContext>, seq: &[Scalar]) -> Recurrence {
    let zero = Scalar::zero(ctx);
    let mut c: Vec<Scalar> = vec![Scalar::one(ctx)];
    let mut b: Vec<Scalar> = vec![Scalar::one(ctx)];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = Scalar::one(ctx);
    for n in 0..seq.len() {
        let mut d = seq[n].clone();
        for i in 1..=l {
            if let Some(ci) = c.get(i) {
                if !ci.is_zero() {
                    d += &(ci * &seq[n - i]);
                }
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, zero.clone());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &(&coef * bi);
        }
        if 2 * l <= n {
            b = std::mem::replace(&mut c, next);
            l = n + 1 - l;
            bd = d;
            m = 1;
        } else {
            c = next;
            m += 1;
        }
    }
    c.resize(l + 1, zero);
    let h: Vec<Scalar> = (0..=l).map(|k| c[l - k].clone()).collect();
    Recurrence {
        annihilator: UPoly::new(ctx, h),
        order: l,
        length: seq.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(ctx: &Arc<FieldContext>, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::int(ctx, x)).collect()
    }

    #[test]
    fn examples() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let r = berlekamp_massey(&k, &ints(&k, &[0, 0, 0, 0]));
        assert_eq!(r.annihilator, UPoly::one(&k));
        let r = berlekamp_massey(&k, &ints(&k, &[1, 2, 4, 8, 16, 32]));
        assert_eq!(r.annihilator, UPoly::from_ints(&k, &[-2, 1]));
        assert!(r.is_certified());
        let r = berlekamp_massey(&k, &ints(&k, &[0, 1, 2, 3, 4, 5, 6, 7]));
        assert_eq!(r.annihilator, UPoly::from_ints(&k, &[1, -2, 1]));
    }

    #[test]
    fn impulse_needs_shift() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let r = berlekamp_massey(&k, &ints(&k, &[1, 0, 0, 0, 0]));
        assert_eq!(r.annihilator, UPoly::from_ints(&k, &[0, 1]));
    }
}
