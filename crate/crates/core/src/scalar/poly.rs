//! Sparse multivariate polynomials over a [`Base`] field.
//!
//! Terms are kept sorted in strictly descending graded-lexicographic order
//! with no zero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;

use super::number::{Base, Num};

/// Maximum number of indeterminates in one field context.
pub const MAX_VARS: usize = 16;

/// Exponent vector, ordered graded-lexicographically (variable 0 most significant).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub(crate) [u16; MAX_VARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; MAX_VARS])
    }

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = Mono::one();
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = [0u16; MAX_VARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = self.0[k]
                .checked_add(o.0[k])
                .expect("exponent overflow in monomial product");
        }
        Mono(r)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut r = [0u16; MAX_VARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = o.0[k] - self.0[k];
        }
        Mono(r)
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut r = [0u16; MAX_VARS];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = self.0[k].min(o.0[k]);
        }
        Mono(r)
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Mono {
        let mut m = *self;
        m.0[i] = e;
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    pub(crate) terms: Vec<(Mono, Num)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: vec![] }
    }

    pub fn constant(c: Num) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(Mono::one(), c)],
            }
        }
    }

    pub fn monomial(m: Mono, c: Num) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly {
                terms: vec![(m, c)],
            }
        }
    }

    pub(crate) fn from_map(map: BTreeMap<Mono, Num>) -> Self {
        MPoly {
            terms: map
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Mono, Num)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<Num> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Num)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn add(&self, o: &MPoly, base: &Base) -> MPoly {
        self.merge(o, base, false)
    }

    pub fn sub(&self, o: &MPoly, base: &Base) -> MPoly {
        self.merge(o, base, true)
    }

    fn merge(&self, o: &MPoly, base: &Base, negate: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &o.terms[j];
                    out.push((*m, if negate { base.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &o.terms[j].1;
                    let c = if negate {
                        base.sub(a, b)
                    } else {
                        base.add(a, b)
                    };
                    if !c.is_zero() {
                        out.push((*m, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly { terms: out }
    }

    pub fn neg(&self, base: &Base) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, base.neg(c))).collect(),
        }
    }

    pub fn mul(&self, o: &MPoly, base: &Base) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1, base);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1, base);
        }
        let mut acc: BTreeMap<Mono, Num> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = base.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = base.add(slot, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    pub fn mul_term(&self, m: &Mono, c: &Num, base: &Base) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), base.mul(cc, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Num, base: &Base) -> MPoly {
        self.mul_term(&Mono::one(), c, base)
    }

    pub fn scale_rational(&self, r: &BigRational, base: &Base) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, base.scale(c, r)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32, base: &Base) -> MPoly {
        let mut result = MPoly::constant(base.one());
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b, base);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly, base: &Base) -> Option<MPoly> {
        let (ld_m, ld_c) = d.leading()?;
        let inv = base.inv(ld_c)?;
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !ld_m.divides(m) {
                    return None;
                }
                out.push((ld_m.quotient_of(m), base.mul(c, &inv)));
            }
            return Some(MPoly { terms: out });
        }
        let mut r = self.clone();
        let mut q: BTreeMap<Mono, Num> = BTreeMap::new();
        while let Some((rm, rc)) = r.leading().cloned() {
            if !ld_m.divides(&rm) {
                return None;
            }
            let tm = ld_m.quotient_of(&rm);
            let tc = base.mul(&rc, &inv);
            r = r.sub(&d.mul_term(&tm, &tc, base), base);
            q.insert(tm, tc);
        }
        Some(MPoly::from_map(q))
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, base: &Base) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&base.inv(c).expect("nonzero lead"), base),
        }
    }

    /// Coefficients as a univariate polynomial in `var`, lowest degree first;
    /// the returned coefficients do not involve `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut maps: Vec<BTreeMap<Mono, Num>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            maps[m.exp(var) as usize].insert(m.with_exp(var, 0), c.clone());
        }
        maps.into_iter().map(MPoly::from_map).collect()
    }

    pub fn from_univariate(coeffs: &[MPoly], var: usize, base: &Base) -> MPoly {
        let mut acc = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(
                    &c.mul_term(&Mono::var(var, k as u16), &base.one(), base),
                    base,
                );
            }
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&Num) -> Num) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, base: &Base) -> MPoly {
        MPoly::monomial(Mono::var(i, 1), base.one())
    }

    fn c(n: i64, base: &Base) -> MPoly {
        MPoly::constant(base.from_int(n))
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = Mono::var(1, 2);
        let b = Mono::var(0, 1);
        assert!(a > b);
        assert!(Mono::var(0, 1) > Mono::var(1, 1));
    }

    #[test]
    fn exact_division_and_failure() {
        let k = Base::rationals();
        let p = x(0, &k).add(&c(1, &k), &k);
        let m = x(0, &k).sub(&c(1, &k), &k);
        let prod = p.mul(&m, &k);
        assert_eq!(prod.div_exact(&m, &k), Some(p.clone()));
        let shifted = prod.add(&c(1, &k), &k);
        assert_eq!(shifted.div_exact(&m, &k), None);
    }

    #[test]
    fn univariate_round_trip() {
        let k = Base::rationals();
        let p = x(0, &k)
            .mul(&x(1, &k), &k)
            .add(&x(1, &k).pow(3, &k), &k)
            .add(&c(7, &k), &k);
        let u = p.to_univariate(1);
        assert_eq!(u.len(), 4);
        assert_eq!(MPoly::from_univariate(&u, 1, &k), p);
    }
}
