use super::formal::{FormalExpr, FormalSystem, Unknown};
use super::ConstraintError;
use crate::scalar::Scalar;

/// Fraction-free elimination. For each victim in turn, the first equation
/// containing it is the pivot `p`; every other equation `e` becomes
/// `c_p e - c_e p` and the pivot is dropped.
pub fn eliminate(
    system: &FormalSystem,
    victims: &[Unknown],
) -> Result<FormalSystem, ConstraintError> {
    let mut eqs: Vec<(String, FormalExpr)> = system
        .labels
        .iter()
        .cloned()
        .zip(system.equations.iter().cloned())
        .collect();
    for v in victims {
        if let Some(e) = eqs.iter().find(|(_, e)| !e.is_linear()) {
            return Err(ConstraintError::Nonlinear(e.0.clone()));
        }
        let pos = eqs
            .iter()
            .position(|(_, e)| !e.linear_coeff(v).is_zero())
            .ok_or_else(|| ConstraintError::ZeroPivot(format!("no equation contains {v}")))?;
        let (plabel, pivot) = eqs.remove(pos);
        let cp = pivot.linear_coeff(v);
        eqs = eqs
            .into_iter()
            .map(|(l, e)| {
                let ce = e.linear_coeff(v);
                if ce.is_zero() {
                    (l, e)
                } else {
                    (format!("{l}/{plabel}"), e.scale(&cp).sub(&pivot.scale(&ce)))
                }
            })
            .collect();
    }
    let (labels, equations) = eqs.into_iter().unzip();
    Ok(FormalSystem { equations, labels })
}

/// Solution set of a linear system: `particular + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub unknowns: Vec<Unknown>,
    pub particular: Vec<Scalar>,
    pub basis: Vec<Vec<Scalar>>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Only the zero vector.
    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty() && self.particular.iter().all(Scalar::is_zero)
    }

    /// Exactly the constant vectors.
    pub fn is_constant_line(&self) -> bool {
        if !self.particular.iter().all(Scalar::is_zero) || self.basis.len() != 1 {
            return false;
        }
        let b = &self.basis[0];
        !b[0].is_zero() && b.iter().all(|x| *x == b[0])
    }
}

/// Exact Gauss-Jordan over the coefficient field, unknowns in sorted order.
pub fn solve_linear(system: &FormalSystem) -> Result<SolutionSpace, ConstraintError> {
    if let Some(l) = system
        .labels
        .iter()
        .zip(&system.equations)
        .find(|(_, e)| !e.is_linear())
        .map(|(l, _)| l)
    {
        return Err(ConstraintError::Nonlinear(l.clone()));
    }
    let unknowns: Vec<Unknown> = system.unknowns().into_iter().collect();
    let n = unknowns.len();
    let mut rows: Vec<Vec<Scalar>> = system
        .equations
        .iter()
        .map(|e| {
            let mut r: Vec<Scalar> = unknowns.iter().map(|u| e.linear_coeff(u)).collect();
            r.push(-e.constant_term());
            r
        })
        .collect();
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].inv()?;
        rows[row] = rows[row].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if let Some(bad) = rows[row..].iter().position(|r| !r[n].is_zero()) {
        return Err(ConstraintError::Inconsistent(
            system.labels[bad + row].clone(),
        ));
    }
    let zero = unknowns
        .first()
        .map(|_| Scalar::zero(system.equations[0].ctx()));
    let zero = match zero {
        Some(z) => z,
        None => {
            return Ok(SolutionSpace {
                unknowns,
                particular: vec![],
                basis: vec![],
            })
        }
    };
    let mut particular = vec![zero.clone(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][n].clone();
    }
    let mut basis = vec![];
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); n];
        v[free] = Scalar::one(zero.ctx());
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&rows[r][free];
        }
        basis.push(v);
    }
    Ok(SolutionSpace {
        unknowns,
        particular,
        basis,
    })
}

/// Determinant of a 3x3 matrix by cofactor expansion.
pub fn det3(m: &[Vec<Scalar>]) -> Result<Scalar, ConstraintError> {
    if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
        return Err(ConstraintError::Shape(format!(
            "expected 3x3, got {}x{}",
            m.len(),
            m.first().map_or(0, Vec::len)
        )));
    }
    let minor =
        |r1: &[Scalar], r2: &[Scalar], i: usize, j: usize| &(&r1[i] * &r2[j]) - &(&r1[j] * &r2[i]);
    let a = &m[0][0] * &minor(&m[1], &m[2], 1, 2);
    let b = &m[0][1] * &minor(&m[1], &m[2], 0, 2);
    let c = &m[0][2] * &minor(&m[1], &m[2], 0, 1);
    Ok(&(&a - &b) + &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldContext;

    #[test]
    fn eliminate_two_by_two() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let x = FormalExpr::unknown(&k, Unknown::new("x", 0));
        let y = FormalExpr::unknown(&k, Unknown::new("y", 0));
        let mut s = FormalSystem::new();
        s.push("e1", x.add(&y));
        s.push("e2", x.sub(&y));
        let r = eliminate(&s, &[Unknown::new("y", 0)]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.equations[0], x.scale(&Scalar::int(&k, 2)));
        assert!(eliminate(&r, &[Unknown::new("y", 0)]).is_err());
    }

    #[test]
    fn solve_examples() {
        let k = FieldContext::rational(&["a"]).unwrap();
        let a = Scalar::var(&k, "a").unwrap();
        let u = |i| FormalExpr::unknown(&k, Unknown::new("f", i));
        let mut s = FormalSystem::new();
        s.push("r1", u(0).sub(&u(1)).scale(&a));
        s.push("r2", u(1).sub(&u(2)));
        let sol = solve_linear(&s).unwrap();
        assert!(sol.is_constant_line());
        s.push("r3", u(2));
        assert!(solve_linear(&s).unwrap().is_trivial());
        s.push("r4", u(2).sub(&FormalExpr::constant(&Scalar::one(&k))));
        assert!(matches!(
            solve_linear(&s),
            Err(ConstraintError::Inconsistent(_))
        ));
    }

    #[test]
    fn det3_example() {
        let k = FieldContext::rational::<&str>(&[]).unwrap();
        let m: Vec<Vec<Scalar>> = [[2, 0, 1], [1, 3, 2], [1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::int(&k, x)).collect())
            .collect();
        assert_eq!(det3(&m).unwrap(), Scalar::int(&k, 0));
        assert!(det3(&m[..2]).is_err());
    }
}
