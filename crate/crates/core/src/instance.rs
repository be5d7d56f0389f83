//! JSON instance files.
//!
//! ```json
//! {
//!   "field": { "generator": "a", "minpoly": ["-2", "0", "0", "0", "1"] },
//!   "parametrization": [
//!     { "num": [["0", "0", "0", "0"], ["1", "0", "0", "0"]], "den": [["1", "0", "0", "0"]] }
//!   ]
//! }
//! ```
//!
//! Polynomials are ascending in `t`; every coefficient is a vector over the
//! power basis `1, a, …, a^{n-1}`; rationals are `"p/q"` or `"p"` strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::FactorField;
use crate::field::Rationals;
use crate::numfield::{AlgElem, AlgField, NumberField};
use crate::poly::UniPoly;
use crate::ratfunc::{Parametrization, RatFunc};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub generator: String,
    pub minpoly: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub num: Vec<Vec<String>>,
    pub den: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldSpec,
    pub parametrization: Vec<ComponentSpec>,
}

/// A validated instance: the field `ℚ(α)` and a parametrization over it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: AlgField,
    pub psi: Parametrization<AlgElem>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Input(format!(
        "syntax error at line {}, column {}: {e}",
        e.line(),
        e.column()
    ))
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| Error::Input(e.to_string())))
        .collect()
}

/// Builds `ℚ(α)`, rejecting reducible or degree < 2 minimal polynomials.
pub fn build_field(spec: &FieldSpec) -> Result<AlgField> {
    let coeffs = rationals(&spec.minpoly)?;
    let m = UniPoly::new(coeffs, &Rationals);
    if m.deg0() < 2 {
        return Err(Error::Input(
            "minimal polynomial must have degree at least 2".into(),
        ));
    }
    let m = m.monic(&Rationals)?;
    if !Rationals.is_irreducible(&m)? {
        return Err(Error::Input("reducible minimal polynomial".into()));
    }
    if spec.generator.is_empty()
        || !spec
            .generator
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_')
    {
        return Err(Error::Input(format!(
            "invalid generator name {:?}",
            spec.generator
        )));
    }
    NumberField::new(Rationals, spec.generator.clone(), m)
}

pub fn parse_field(text: &str) -> Result<AlgField> {
    build_field(&serde_json::from_str(text).map_err(json_error)?)
}

fn poly(k: &AlgField, cs: &[Vec<String>], what: &str) -> Result<UniPoly<AlgElem>> {
    let elems = cs
        .iter()
        .map(|v| {
            if v.len() != k.degree() {
                return Err(Error::Input(format!(
                    "{what}: coefficient vector has length {}, expected {}",
                    v.len(),
                    k.degree()
                )));
            }
            k.element(rationals(v)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(elems, k))
}

pub fn from_file(file: &InstanceFile) -> Result<Instance> {
    let field = build_field(&file.field)?;
    let components = file
        .parametrization
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let num = poly(&field, &c.num, &format!("component {i} numerator"))?;
            let den = poly(&field, &c.den, &format!("component {i} denominator"))?;
            if den.is_zero() {
                return Err(Error::Input(format!(
                    "component {i}: zero denominator polynomial"
                )));
            }
            RatFunc::new(num, den, &field)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        psi: Parametrization::new(components)?,
        field,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    from_file(&serde_json::from_str(text).map_err(json_error)?)
}

pub fn field_spec(k: &AlgField) -> FieldSpec {
    FieldSpec {
        generator: k.name().to_string(),
        minpoly: k.minpoly().coeffs().iter().map(format_rational).collect(),
    }
}

fn poly_spec(p: &UniPoly<AlgElem>) -> Vec<Vec<String>> {
    p.coeffs()
        .iter()
        .map(|c| c.coords().iter().map(format_rational).collect())
        .collect()
}

pub fn to_file(k: &AlgField, psi: &Parametrization<AlgElem>) -> InstanceFile {
    InstanceFile {
        field: field_spec(k),
        parametrization: psi
            .components()
            .iter()
            .map(|c| ComponentSpec {
                num: poly_spec(c.num()),
                den: poly_spec(c.den()),
            })
            .collect(),
    }
}

pub fn serialize_instance(k: &AlgField, psi: &Parametrization<AlgElem>) -> String {
    serde_json::to_string_pretty(&to_file(k, psi)).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rational::{int, rat};

    const EXAMPLE: &str = include_str!("../../../data/quartic_worked.json");

    #[test]
    fn worked_example_parses() {
        let inst = parse_instance(EXAMPLE).unwrap();
        assert_eq!(inst.field.degree(), 4);
        assert_eq!(inst.psi.ambient_dim(), 2);
        for c in inst.psi.components() {
            assert!(c.num().deg0() <= 3 && c.den().deg0() == 3);
        }
        // the denominator is stored monic, so its constant term is divided by 7
        let k = &inst.field;
        let d0 = k.element(vec![int(1), int(4), int(2), int(1)]).unwrap();
        assert_eq!(
            inst.psi.components()[0].den().coeffs()[0],
            k.scale_rational(&d0, &rat(1, 7))
        );
    }

    #[test]
    fn roundtrip_is_identity() {
        let inst = parse_instance(EXAMPLE).unwrap();
        let again = parse_instance(&serialize_instance(&inst.field, &inst.psi)).unwrap();
        assert!(again.field.minpoly() == inst.field.minpoly());
        assert_eq!(again.psi, inst.psi);
    }

    #[test]
    fn rejects_bad_input() {
        let reducible = r#"{"field":{"generator":"a","minpoly":["-1","0","1"]},"parametrization":[{"num":[["0","0"],["1","0"]],"den":[["1","0"]]}]}"#;
        let err = parse_instance(reducible).unwrap_err().to_string();
        assert!(err.contains("reducible minimal polynomial"), "{err}");
        let short = r#"{"field":{"generator":"a","minpoly":["1","0","1"]},"parametrization":[{"num":[["0"],["1","0"]],"den":[["1","0"]]}]}"#;
        assert!(parse_instance(short)
            .unwrap_err()
            .to_string()
            .contains("length 1"));
        let zero_den = r#"{"field":{"generator":"a","minpoly":["1","0","1"]},"parametrization":[{"num":[["0","0"],["1","0"]],"den":[]}]}"#;
        assert!(parse_instance(zero_den)
            .unwrap_err()
            .to_string()
            .contains("zero denominator"));
        let syntax = "{\n  \"field\": }";
        assert!(parse_instance(syntax)
            .unwrap_err()
            .to_string()
            .contains("line 2"));
    }
}
