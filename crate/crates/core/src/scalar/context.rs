use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::number::Base;
use super::poly::MAX_VARS;
use super::ScalarError;

/// The coefficient field: a base (`Q` or `Q(theta)`) plus an ordered list of
/// indeterminates. Immutable once built and shared through `Arc`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldContext {
    vars: Vec<String>,
    base: Base,
}

impl FieldContext {
    /// Rational functions over `Q` in the given indeterminates.
    pub fn rational<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Self>, ScalarError> {
        Self::build(vars, Base::rationals())
    }

    /// Rational functions over `Q[generator]/(minpoly)`. `minpoly` is monic,
    /// coefficients from the constant term upward.
    pub fn extension<S: AsRef<str>>(
        vars: &[S],
        minpoly: Vec<BigRational>,
        generator: &str,
    ) -> Result<Arc<Self>, ScalarError> {
        let base = Base::extension(minpoly, generator)?;
        if vars.iter().any(|v| v.as_ref() == generator) {
            return Err(ScalarError::DuplicateVariable(generator.to_string()));
        }
        Self::build(vars, base)
    }

    /// `Q(theta)` with `theta^2 + theta + 1 = 0`, a primitive cube root of unity.
    pub fn cube_roots_of_unity<S: AsRef<str>>(
        vars: &[S],
        generator: &str,
    ) -> Result<Arc<Self>, ScalarError> {
        let one = BigRational::from_integer(1.into());
        Self::extension(vars, vec![one.clone(), one.clone(), one], generator)
    }

    fn build<S: AsRef<str>>(vars: &[S], base: Base) -> Result<Arc<Self>, ScalarError> {
        if vars.len() > MAX_VARS {
            return Err(ScalarError::TooManyVariables(vars.len()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref().to_string();
            if names.contains(&v) {
                return Err(ScalarError::DuplicateVariable(v));
            }
            names.push(v);
        }
        Ok(Arc::new(FieldContext { vars: names, base }))
    }

    /// Same base, different indeterminates.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Arc<Self>, ScalarError> {
        Self::build(vars, self.base.clone())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.base, self.vars.join(", "))
    }
}
