//! Multivariate gcd by recursive primitive polynomial remainder sequences.

use super::number::Base;
use super::poly::{MPoly, Mono, MAX_VARS};

/// Monic gcd of `a` and `b` (zero only when both are zero).
pub fn gcd(a: &MPoly, b: &MPoly, base: &Base) -> MPoly {
    if a.is_zero() {
        return b.monic(base);
    }
    if b.is_zero() {
        return a.monic(base);
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::constant(base.one());
    }
    if a.is_monomial() {
        return monomial_gcd(&a.terms[0].0, b, base);
    }
    if b.is_monomial() {
        return monomial_gcd(&b.terms[0].0, a, base);
    }
    if a == b {
        return a.monic(base);
    }

    let var = match (0..MAX_VARS).find(|&v| a.uses_var(v) || b.uses_var(v)) {
        Some(v) => v,
        None => return MPoly::constant(base.one()),
    };
    let in_a = a.uses_var(var);
    let in_b = b.uses_var(var);
    if !in_a {
        return gcd(a, &content(b, var, base), base);
    }
    if !in_b {
        return gcd(&content(a, var, base), b, base);
    }

    let ca = content(a, var, base);
    let cb = content(b, var, base);
    let pa = a.div_exact(&ca, base).expect("content divides").monic(base);
    let pb = b.div_exact(&cb, base).expect("content divides").monic(base);
    let c = gcd(&ca, &cb, base);

    let (mut r0, mut r1) = if pa.degree_in(var) >= pb.degree_in(var) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let g = loop {
        let r = prem(&r0, &r1, var, base);
        if r.is_zero() {
            break primitive_part(&r1, var, base);
        }
        if r.degree_in(var) == 0 {
            break MPoly::constant(base.one());
        }
        r0 = r1;
        r1 = primitive_part(&r, var, base);
    };
    c.mul(&g, base).monic(base)
}

fn monomial_gcd(m: &Mono, p: &MPoly, base: &Base) -> MPoly {
    let g = p.terms.iter().fold(*m, |acc, (pm, _)| acc.gcd(pm));
    MPoly::monomial(g, base.one())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &MPoly, var: usize, base: &Base) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.to_univariate(var).iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c, base);
        if g.is_constant() {
            return MPoly::constant(base.one());
        }
    }
    g
}

/// `p` divided by its content in `var`, scaled to leading coefficient one
/// so that remainder sequences over a field keep small coefficients.
pub fn primitive_part(p: &MPoly, var: usize, base: &Base) -> MPoly {
    let c = content(p, var, base);
    p.div_exact(&c, base).expect("content divides").monic(base)
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn prem(a: &MPoly, b: &MPoly, var: usize, base: &Base) -> MPoly {
    let bu = b.to_univariate(var);
    let db = bu.len() - 1;
    let lb = &bu[db];
    let mut r = a.to_univariate(var);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb, base);
        }
        for (k, bk) in bu.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&bk.mul(&lr, base), base);
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(MPoly::is_zero) {
            r.pop();
        }
    }
    MPoly::from_univariate(&r, var, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize, k: &Base) -> MPoly {
        MPoly::monomial(Mono::var(i, 1), k.one())
    }
    fn n(c: i64, k: &Base) -> MPoly {
        MPoly::constant(k.from_int(c))
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let k = Base::rationals();
        // (x + y) (x - 2z) and (x + y) (y^2 + 3)
        let common = v(0, &k).add(&v(1, &k), &k);
        let f1 = v(0, &k).sub(&v(2, &k).scale(&k.from_int(2), &k), &k);
        let f2 = v(1, &k).pow(2, &k).add(&n(3, &k), &k);
        let a = common.mul(&f1, &k);
        let b = common.mul(&f2, &k);
        assert_eq!(gcd(&a, &b, &k), common.monic(&k));
    }

    #[test]
    fn coprime_gives_one() {
        let k = Base::rationals();
        let a = v(0, &k).add(&n(1, &k), &k);
        let b = v(0, &k).sub(&n(1, &k), &k);
        assert!(gcd(&a, &b, &k).is_one());
    }

    #[test]
    fn monomial_fast_path() {
        let k = Base::rationals();
        let a = v(0, &k).pow(3, &k).mul(&v(1, &k), &k);
        let b = v(0, &k).pow(2, &k).add(&v(0, &k).mul(&v(1, &k), &k), &k);
        assert_eq!(gcd(&a, &b, &k), v(0, &k));
    }

    #[test]
    fn gcd_over_extension() {
        let q = |c: i64| num_rational::BigRational::from_integer(c.into());
        let k = Base::extension(vec![q(1), q(1), q(1)], "w").unwrap();
        let w = MPoly::constant(k.generator().unwrap());
        // (x - w)(x + 1) and (x - w)(x - 1)
        let xw = v(0, &k).sub(&w, &k);
        let a = xw.mul(&v(0, &k).add(&n(1, &k), &k), &k);
        let b = xw.mul(&v(0, &k).sub(&n(1, &k), &k), &k);
        assert_eq!(gcd(&a, &b, &k), xw);
    }
}
