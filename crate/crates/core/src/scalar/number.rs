//! Coefficient base fields: the rationals, or a simple algebraic extension
//! `Q[theta]/(m(theta))` with `m` monic and irreducible of degree at most 4.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// Largest extension degree accepted (irreducibility is only decided up to here).
pub const MAX_EXTENSION_DEGREE: usize = 4;

/// An element of the base field, stored as coordinates in the power basis
/// `1, theta, ..., theta^(d-1)`. Over `Q` the vector has length one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Num(pub(crate) Vec<BigRational>);

impl Num {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.0[0].is_one() && self.0[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.0[1..].iter().all(Zero::is_zero) {
            Some(&self.0[0])
        } else {
            None
        }
    }

    /// Sign of the leading nonzero coordinate, used only for display.
    pub(crate) fn is_negative_lead(&self) -> bool {
        self.0
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }

    pub(crate) fn nonzero_coords(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

/// The base field `Q` or `Q[theta]/(m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Base {
    /// Monic minimal polynomial, coefficients from constant term upward.
    minpoly: Option<Vec<BigRational>>,
    generator: String,
}

impl Base {
    pub fn rationals() -> Self {
        Base {
            minpoly: None,
            generator: String::new(),
        }
    }

    /// Adjoins a root `generator` of the monic polynomial `minpoly`
    /// (coefficients listed from the constant term upward).
    pub fn extension(minpoly: Vec<BigRational>, generator: &str) -> Result<Self, ScalarError> {
        let mut m = minpoly;
        trim(&mut m);
        let deg = m.len().saturating_sub(1);
        if deg == 0 {
            return Err(ScalarError::InvalidExtension(
                "minimal polynomial must have positive degree".into(),
            ));
        }
        if deg > MAX_EXTENSION_DEGREE {
            return Err(ScalarError::InvalidExtension(format!(
                "extension degree {deg} exceeds the supported maximum {MAX_EXTENSION_DEGREE}"
            )));
        }
        if !m[deg].is_one() {
            return Err(ScalarError::InvalidExtension(
                "minimal polynomial must be monic".into(),
            ));
        }
        if !is_irreducible(&m) {
            return Err(ScalarError::InvalidExtension(format!(
                "{} is reducible over Q",
                format_upoly(&m, generator)
            )));
        }
        Ok(Base {
            minpoly: Some(m),
            generator: generator.to_string(),
        })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn is_rationals(&self) -> bool {
        self.minpoly.is_none()
    }

    pub fn generator_name(&self) -> Option<&str> {
        self.minpoly.as_ref().map(|_| self.generator.as_str())
    }

    pub fn minpoly(&self) -> Option<&[BigRational]> {
        self.minpoly.as_deref()
    }

    pub fn zero(&self) -> Num {
        Num(vec![BigRational::zero(); self.degree()])
    }

    pub fn one(&self) -> Num {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(&self, r: BigRational) -> Num {
        let mut v = vec![BigRational::zero(); self.degree()];
        v[0] = r;
        Num(v)
    }

    pub fn from_int(&self, n: i64) -> Num {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The adjoined generator; `None` over `Q`.
    pub fn generator(&self) -> Option<Num> {
        let d = self.degree();
        if d == 1 {
            // Degree-one extensions are rational: theta = -m0.
            return self
                .minpoly
                .as_ref()
                .map(|m| self.from_rational(-m[0].clone()));
        }
        self.minpoly.as_ref().map(|_| {
            let mut v = vec![BigRational::zero(); d];
            v[1] = BigRational::one();
            Num(v)
        })
    }

    pub fn add(&self, a: &Num, b: &Num) -> Num {
        Num(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Num, b: &Num) -> Num {
        Num(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Num) -> Num {
        Num(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Num, b: &Num) -> Num {
        let d = self.degree();
        if d == 1 {
            return Num(vec![&a.0[0] * &b.0[0]]);
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Num(self.reduce(prod))
    }

    pub fn scale(&self, a: &Num, r: &BigRational) -> Num {
        Num(a.0.iter().map(|x| x * r).collect())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Num) -> Option<Num> {
        if a.is_zero() {
            return None;
        }
        let Some(m) = &self.minpoly else {
            return Some(Num(vec![a.0[0].recip()]));
        };
        if let Some(r) = a.as_rational() {
            return Some(self.from_rational(r.recip()));
        }
        // Extended Euclid in Q[theta]: s*a + t*m = 1.
        let (g, s) = ext_gcd(a.0.clone(), m.clone());
        debug_assert_eq!(g.len(), 1);
        let c = g[0].recip();
        let mut s: Vec<BigRational> = s.into_iter().map(|x| x * &c).collect();
        s.resize(self.degree(), BigRational::zero());
        Some(Num(self.reduce(s)))
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        if let Some(m) = &self.minpoly {
            for k in (d..p.len()).rev() {
                if p[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut p[k]);
                for (j, mj) in m.iter().enumerate().take(d) {
                    if !mj.is_zero() {
                        p[k - d + j] -= &c * mj;
                    }
                }
            }
        }
        p.truncate(d);
        p.resize(d, BigRational::zero());
        p
    }

    pub(crate) fn fmt_num(&self, n: &Num) -> String {
        if let Some(r) = n.as_rational() {
            return format_rational(r);
        }
        format_upoly(&n.0, &self.generator)
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-({}/{})", -r.numer(), r.denom())
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn format_upoly(p: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", format_rational(&abs), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn udivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        trim(&mut r);
    }
    (q, r)
}

fn umul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn usub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(BigRational::zero)
                - b.get(i).cloned().unwrap_or_else(BigRational::zero)
        })
        .collect();
    trim(&mut out);
    out
}

/// Returns `(g, s)` with `s*a = g (mod m)`, `g` the gcd (up to a unit).
fn ext_gcd(
    mut a: Vec<BigRational>,
    mut b: Vec<BigRational>,
) -> (Vec<BigRational>, Vec<BigRational>) {
    trim(&mut a);
    trim(&mut b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![]);
    while !b.is_empty() {
        let (q, r) = udivrem(&a, &b);
        let s2 = usub(&s0, &umul(&q, &s1));
        a = std::mem::replace(&mut b, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (a, s0)
}

/// Irreducibility over `Q` for monic polynomials of degree at most 4.
fn is_irreducible(m: &[BigRational]) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    let ints = monic_integer_form(m);
    if has_integer_root(&ints) {
        return false;
    }
    if deg <= 3 {
        return true;
    }
    !splits_into_quadratics(&ints)
}

/// Rescales `x -> x / L` so the monic polynomial gets integer coefficients.
fn monic_integer_form(m: &[BigRational]) -> Vec<BigInt> {
    let deg = m.len() - 1;
    let l = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (0..=deg)
        .map(|k| {
            let scale = num_traits::pow(l.clone(), deg - k);
            (m[k].clone() * BigRational::from_integer(scale)).to_integer()
        })
        .collect()
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn has_integer_root(p: &[BigInt]) -> bool {
    if p[0].is_zero() {
        return true;
    }
    divisors(&p[0])
        .into_iter()
        .any(|d| eval_int(p, &d).is_zero() || eval_int(p, &-d).is_zero())
}

/// Whether a monic integer quartic with no rational root factors as a
/// product of two monic integer quadratics.
fn splits_into_quadratics(p: &[BigInt]) -> bool {
    let (s, r, q, pp) = (&p[0], &p[1], &p[2], &p[3]);
    for b in divisors(s).into_iter().flat_map(|d| [d.clone(), -d]) {
        let d = s / &b;
        if b != d {
            let num = r - &b * pp;
            let den = &d - &b;
            if !(&num % &den).is_zero() {
                continue;
            }
            let a = num / den;
            let c = pp - &a;
            if &a * &c + &b + &d == *q {
                return true;
            }
        } else if *r == &b * pp {
            // a + c = p, a*c = q - 2b
            let disc = pp * pp - BigInt::from(4) * (q - BigInt::from(2) * &b);
            if !disc.is_negative() {
                let root = disc.sqrt();
                if &root * &root == disc {
                    return true;
                }
            }
        }
    }
    false
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.minpoly {
            None => write!(f, "Q"),
            Some(m) => write!(
                f,
                "Q[{}]/({})",
                self.generator,
                format_upoly(m, &self.generator)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn cyclotomic3() -> Base {
        Base::extension(vec![q(1), q(1), q(1)], "theta").unwrap()
    }

    #[test]
    fn theta_squared_reduces() {
        let k = cyclotomic3();
        let t = k.generator().unwrap();
        let t2 = k.mul(&t, &t);
        // theta^2 = -theta - 1
        assert_eq!(t2, Num(vec![q(-1), q(-1)]));
    }

    #[test]
    fn inverse_in_extension() {
        let k = cyclotomic3();
        let x = Num(vec![q(2), q(3)]);
        let y = k.inv(&x).unwrap();
        assert!(k.mul(&x, &y).is_one());
    }

    #[test]
    fn reducible_minpolys_rejected() {
        // x^2 - 1, x^3 - 8, (x^2+1)(x^2+2)
        assert!(Base::extension(vec![q(-1), q(0), q(1)], "t").is_err());
        assert!(Base::extension(vec![q(-8), q(0), q(0), q(1)], "t").is_err());
        assert!(Base::extension(vec![q(2), q(0), q(3), q(0), q(1)], "t").is_err());
        // x^4 + 1 and x^4 - 2 are irreducible
        assert!(Base::extension(vec![q(1), q(0), q(0), q(0), q(1)], "t").is_ok());
        assert!(Base::extension(vec![q(-2), q(0), q(0), q(0), q(1)], "t").is_ok());
        // x^2 - 1/4 has the rational root 1/2
        let quarter = BigRational::new(1.into(), 4.into());
        assert!(Base::extension(vec![-quarter, q(0), q(1)], "t").is_err());
    }

    #[test]
    fn non_monic_rejected() {
        assert!(Base::extension(vec![q(1), q(2)], "t").is_err());
    }
}
