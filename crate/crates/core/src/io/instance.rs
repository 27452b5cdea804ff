use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::arith::{parse_gaussian, GaussianRational};
use crate::incidence::{CartesianPointSet, CurveFamily};
use crate::poly::{BivariatePoly, TermJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub label: String,
    pub terms: Vec<TermJson>,
}

/// On-disk form of an [`Instance`]; every number is a GR string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(default)]
    pub curves: Vec<CurveJson>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub seed: Option<u64>,
    pub generator: Option<String>,
    pub points: CartesianPointSet,
    pub curves: CurveFamily,
}

fn parse_values(axis: &str, values: &[String]) -> Result<Vec<GaussianRational>, IoError> {
    values
        .iter()
        .enumerate()
        .map(|(k, s)| {
            parse_gaussian(s).map_err(|source| IoError::Parse {
                location: format!("{axis}[{k}]"),
                source,
            })
        })
        .collect()
}

impl Instance {
    pub fn from_json(json: &InstanceJson) -> Result<Self, IoError> {
        let points = CartesianPointSet::new(parse_values("A", &json.a)?, parse_values("B", &json.b)?)?;
        let mut curves = Vec::with_capacity(json.curves.len());
        for c in &json.curves {
            let poly = BivariatePoly::from_term_list(&c.terms).map_err(|e| IoError::poly(&c.label, e))?;
            curves.push((c.label.clone(), poly));
        }
        Ok(Instance {
            name: json.name.clone(),
            seed: json.seed,
            generator: json.generator.clone(),
            points,
            curves: CurveFamily::new(curves)?,
        })
    }

    pub fn to_json(&self) -> InstanceJson {
        let strings = |v: &[GaussianRational]| v.iter().map(ToString::to_string).collect();
        InstanceJson {
            name: self.name.clone(),
            seed: self.seed,
            generator: self.generator.clone(),
            a: strings(self.points.a()),
            b: strings(self.points.b()),
            curves: self
                .curves
                .curves()
                .iter()
                .map(|c| CurveJson {
                    label: c.label.clone(),
                    terms: c.poly.to_json().terms,
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn parse_instance_str(text: &str) -> Result<Instance, IoError> {
    Instance::from_json(&serde_json::from_str(text)?)
}

pub fn parse_instance(path: &Path) -> Result<Instance, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    parse_instance_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{Axis, IncidenceError};

    #[test]
    fn minimal() {
        let inst = parse_instance_str(
            r#"{"A":["0"],"B":["0"],"curves":[{"label":"C_1","terms":[{"i":0,"j":1,"c":"1"},{"i":1,"j":0,"c":"-1"}]}]}"#,
        )
        .unwrap();
        assert_eq!(inst.points.len(), 1);
        assert_eq!(inst.curves.len(), 1);
    }

    #[test]
    fn duplicate_point() {
        let e = parse_instance_str(r#"{"A":["1/2","3","1/2"],"B":["0"]}"#).unwrap_err();
        match e {
            IoError::Incidence(IncidenceError::DuplicatePoint { axis, first, second, .. }) => {
                assert_eq!((axis, first, second), (Axis::A, 0, 2));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn empty_terms_is_zero_polynomial() {
        let e = parse_instance_str(r#"{"A":["0"],"B":["0"],"curves":[{"label":"z","terms":[]}]}"#).unwrap_err();
        assert!(matches!(e, IoError::Incidence(IncidenceError::ZeroPolynomial { .. })), "{e}");
    }

    #[test]
    fn bad_value_has_location() {
        let e = parse_instance_str(r#"{"A":["0","1+i"],"B":["0"]}"#).unwrap_err();
        assert_eq!(e.to_string(), format!("A[1]: {}", parse_gaussian("1+i").unwrap_err()));
    }

    #[test]
    fn bad_coefficient_has_location() {
        let e = parse_instance_str(r#"{"A":["0"],"B":["0"],"curves":[{"label":"q","terms":[{"i":0,"j":0,"c":"x"}]}]}"#)
            .unwrap_err();
        assert!(e.to_string().starts_with("curve q, term 0"), "{e}");
    }
}
