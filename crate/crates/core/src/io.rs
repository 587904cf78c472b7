//! JSON input formats: algebra elements, weights, quasipolynomials and
//! module specifications. Scalars are exact text (`"-3/2"`, `"2*b-1"`);
//! the field context is built from the identifiers that occur.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{Basis, BlockAlgebra, Element};
use crate::intseries::{Extension, Family, IntSeriesError, IntermediateModule};
use crate::scalar::{parse_expr, FieldContext, Scalar, ScalarError};
use crate::weights::{QuasiPolynomial, UPoly, Weight, WeightError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    IntSeries(#[from] IntSeriesError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub alpha: i64,
    pub i: u32,
    pub coeff: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    #[serde(default)]
    pub q: Option<String>,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub central: Option<String>,
}

impl ElementSpec {
    fn texts(&self) -> impl Iterator<Item = &str> {
        self.q
            .iter()
            .chain(self.central.iter())
            .map(String::as_str)
            .chain(self.terms.iter().map(|t| t.coeff.as_str()))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub q: String,
    #[serde(default)]
    pub central: Option<String>,
    pub labels: Vec<String>,
    #[serde(default)]
    pub free: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiTermSpec {
    pub exponent: String,
    pub poly: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FamilySpec {
    Aab { a: String, b: String },
    Aa { a: String },
    Ba { a: String },
    Ap01,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ExtensionSpec {
    Trivial,
    S { s: String },
    ST { s: String, t: String },
    Level { level: u32, s: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub q: String,
    pub family: FamilySpec,
    #[serde(default = "trivial_extension")]
    pub extension: ExtensionSpec,
}

fn trivial_extension() -> ExtensionSpec {
    ExtensionSpec::Trivial
}

impl ModuleSpec {
    fn texts(&self) -> Vec<&str> {
        let mut out = vec![self.q.as_str()];
        match &self.family {
            FamilySpec::Aab { a, b } => out.extend([a.as_str(), b.as_str()]),
            FamilySpec::Aa { a } | FamilySpec::Ba { a } => out.push(a),
            FamilySpec::Ap01 => {}
        }
        match &self.extension {
            ExtensionSpec::Trivial => {}
            ExtensionSpec::S { s } | ExtensionSpec::Level { s, .. } => out.push(s),
            ExtensionSpec::ST { s, t } => out.extend([s.as_str(), t.as_str()]),
        }
        out
    }
}

/// Identifiers of all texts, sorted, with `extra` names added. The symbol
/// `c` is reserved for the central element.
pub fn context_for<'a>(
    texts: impl IntoIterator<Item = &'a str>,
    extra: &[&str],
) -> Result<Arc<FieldContext>, InputError> {
    let mut names: BTreeSet<String> = extra.iter().map(|s| s.to_string()).collect();
    for t in texts {
        names.extend(parse_expr(t).map_err(ScalarError::from)?.identifiers());
    }
    names.remove("c");
    let names: Vec<String> = names.into_iter().collect();
    Ok(FieldContext::rational(&names)?)
}

pub fn scalar(ctx: &Arc<FieldContext>, text: &str) -> Result<Scalar, InputError> {
    Ok(Scalar::parse(ctx, text)?)
}

pub fn element_spec(json: &str) -> Result<ElementSpec, InputError> {
    Ok(serde_json::from_str(json)?)
}

/// The algebra and the elements, all over one context. `q` comes from the
/// first element that sets it, else from `q_default`, else it is symbolic.
pub fn elements(
    specs: &[ElementSpec],
    q_default: Option<&str>,
) -> Result<(BlockAlgebra, Vec<Element>), InputError> {
    let q_text = specs
        .iter()
        .find_map(|s| s.q.clone())
        .or_else(|| q_default.map(str::to_string))
        .unwrap_or_else(|| "q".to_string());
    for s in specs {
        if let Some(q) = &s.q {
            if *q != q_text {
                return Err(InputError::Invalid(format!(
                    "elements disagree on q: {q} vs {q_text}"
                )));
            }
        }
    }
    let texts = specs
        .iter()
        .flat_map(ElementSpec::texts)
        .chain(std::iter::once(q_text.as_str()));
    let ctx = context_for(texts, &[])?;
    let alg = BlockAlgebra::new(scalar(&ctx, &q_text)?);
    let mut out = vec![];
    for s in specs {
        let mut e = Element::zero(&ctx);
        for t in &s.terms {
            e.add_term(Basis::gen(t.alpha, t.i), &scalar(&ctx, &t.coeff)?);
        }
        if let Some(c) = &s.central {
            e.add_term(Basis::Central, &scalar(&ctx, c)?);
        }
        out.push(e);
    }
    Ok((alg, out))
}

/// A weight; entries of `free` override the labels at their indices, and
/// the label list is extended with zeros to reach them.
pub fn weight(json: &str) -> Result<Weight, InputError> {
    let spec: WeightSpec = serde_json::from_str(json)?;
    let texts = std::iter::once(spec.q.as_str())
        .chain(spec.central.iter().map(String::as_str))
        .chain(spec.labels.iter().map(String::as_str))
        .chain(spec.free.values().map(String::as_str));
    let ctx = context_for(texts, &[])?;
    let q = scalar(&ctx, &spec.q)?;
    let mut labels = spec
        .labels
        .iter()
        .map(|l| scalar(&ctx, l))
        .collect::<Result<Vec<_>, _>>()?;
    for (k, v) in &spec.free {
        let n: usize = k.parse().map_err(|_| {
            InputError::Invalid(format!("free index `{k}` is not a nonnegative integer"))
        })?;
        if labels.len() <= n {
            labels.resize(n + 1, Scalar::zero(&ctx));
        }
        labels[n] = scalar(&ctx, v)?;
    }
    if labels.is_empty() {
        return Err(InputError::Invalid(
            "a weight needs at least one label".into(),
        ));
    }
    let central = match &spec.central {
        Some(c) => scalar(&ctx, c)?,
        None => Scalar::zero(&ctx),
    };
    Ok(Weight::new(q, labels, central))
}

/// Polynomial from coefficient texts, constant term first.
pub fn upoly(ctx: &Arc<FieldContext>, coeffs: &[String]) -> Result<UPoly, InputError> {
    let c = coeffs
        .iter()
        .map(|t| scalar(ctx, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UPoly::new(ctx, c))
}

/// Coefficient texts of a polynomial from JSON, e.g. `["-2","1"]`.
pub fn poly_texts(json: &str) -> Result<Vec<String>, InputError> {
    Ok(serde_json::from_str(json)?)
}

pub fn quasi_terms(json: &str) -> Result<Vec<QuasiTermSpec>, InputError> {
    Ok(serde_json::from_str(json)?)
}

pub fn quasipoly(
    ctx: &Arc<FieldContext>,
    terms: &[QuasiTermSpec],
) -> Result<QuasiPolynomial, InputError> {
    let t = terms
        .iter()
        .map(|t| Ok((scalar(ctx, &t.exponent)?, upoly(ctx, &t.poly)?)))
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(QuasiPolynomial::new(t)?)
}

/// Free label values keyed by index, e.g. `{"3": "s"}`.
pub fn free_texts(json: &str) -> Result<BTreeMap<String, String>, InputError> {
    Ok(serde_json::from_str(json)?)
}

pub fn free_values(
    ctx: &Arc<FieldContext>,
    free: &BTreeMap<String, String>,
) -> Result<BTreeMap<usize, Scalar>, InputError> {
    free.iter()
        .map(|(k, v)| {
            let n = k.parse().map_err(|_| {
                InputError::Invalid(format!("free index `{k}` is not a nonnegative integer"))
            })?;
            Ok((n, scalar(ctx, v)?))
        })
        .collect()
}

pub fn module(json: &str) -> Result<IntermediateModule, InputError> {
    let spec: ModuleSpec = serde_json::from_str(json)?;
    let ctx = context_for(spec.texts(), &[])?;
    let s = |t: &str| scalar(&ctx, t);
    let family = match &spec.family {
        FamilySpec::Aab { a, b } => Family::Aab { a: s(a)?, b: s(b)? },
        FamilySpec::Aa { a } => Family::Aa { a: s(a)? },
        FamilySpec::Ba { a } => Family::Ba { a: s(a)? },
        FamilySpec::Ap01 => Family::Ap01,
    };
    let extension = match &spec.extension {
        ExtensionSpec::Trivial => Extension::Trivial,
        ExtensionSpec::S { s: v } => Extension::S { s: s(v)? },
        ExtensionSpec::ST { s: v, t } => Extension::ST { s: s(v)?, t: s(t)? },
        ExtensionSpec::Level { level, s: v } => Extension::Level {
            level: *level,
            s: s(v)?,
        },
    };
    Ok(IntermediateModule::new(s(&spec.q)?, family, extension)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_json() {
        let l = element_spec(r#"{"terms":[{"alpha":2,"i":0,"coeff":"1"}]}"#).unwrap();
        let r = element_spec(r#"{"terms":[{"alpha":-2,"i":0,"coeff":"1"}]}"#).unwrap();
        let (alg, els) = elements(&[l, r], Some("q")).unwrap();
        assert_eq!(
            alg.bracket(&els[0], &els[1]).to_string(),
            "-4*q*L[0,0] + (1/2)*c"
        );
    }

    #[test]
    fn element_json_with_central_and_numeric_q() {
        let x =
            element_spec(r#"{"q":"-1/2","terms":[{"alpha":1,"i":1,"coeff":"b"}],"central":"3"}"#)
                .unwrap();
        let (alg, els) = elements(&[x], None).unwrap();
        assert_eq!(alg.q().to_string(), "-(1/2)");
        assert_eq!(els[0].to_string(), "b*L[1,1] + 3*c");
        assert!(element_spec(r#"{"terms":[{"alpha":1}]}"#).is_err());
    }

    #[test]
    fn weight_json() {
        let w = weight(r#"{"q":"-3/2","central":"0","labels":["0","0","0","0"],"free":{"3":"s"}}"#)
            .unwrap();
        assert_eq!(w.labels[3].to_string(), "s");
        assert_eq!(w.depth(), 3);
        assert!(weight(r#"{"q":"1","labels":[],"free":{"x":"1"}}"#).is_err());
    }

    #[test]
    fn quasipoly_json() {
        let t = quasi_terms(r#"[{"exponent":"2","poly":["1"]}]"#).unwrap();
        let ctx = context_for(t.iter().map(|t| t.exponent.as_str()), &[]).unwrap();
        let qp = quasipoly(&ctx, &t).unwrap();
        assert_eq!(qp.coefficient(3).unwrap(), Scalar::int(&ctx, 8));
    }

    #[test]
    fn module_json() {
        let m = module(
            r#"{"q":"-3/2","family":{"kind":"Aab","a":"a","b":"b"},"extension":{"kind":"S","s":"s"}}"#,
        )
        .unwrap();
        assert_eq!(m.act_basis(0, 3, 2).unwrap().1.to_string(), "s");
        assert!(
            module(r#"{"q":"1","family":{"kind":"Ap01"},"extension":{"kind":"S","s":"s"}}"#)
                .is_err()
        );
        assert!(module(r#"{"q":"1","family":{"kind":"Nope"}}"#).is_err());
    }
}
