//! Algebra presentations as JSON files: generators, straightening relations
//! with scalar `c` and tail expression `d`, optional weights and the
//! coefficient field. Relation indices are 1-based in the file.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::expr;
use crate::field::Field;
use crate::pbw::{builtins, GAlgebra, PbwError};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<RelationEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    pub field: FieldSpecJson,
}

/// One relation `x_j x_i = c x_i x_j + d` with 1-based i < j; omitted pairs
/// commute.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationEntry {
    pub i: usize,
    pub j: usize,
    pub c: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpecJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
}

pub fn parse_file(text: &str) -> Result<PresentationFile, PbwError> {
    serde_json::from_str(text)
        .map_err(|e| PbwError::BadPresentation(format!("invalid presentation JSON: {}", e)))
}

/// Instantiate a presentation over a concrete field. Tails are parsed as
/// commutative polynomial expressions in the listed generators.
pub fn build<K: Field>(file: &PresentationFile, field: K) -> Result<Arc<GAlgebra<K>>, PbwError> {
    let n = file.generators.len();
    if n == 0 {
        return Err(PbwError::BadPresentation("no generators".into()));
    }
    // tails live in the commutative polynomial ring on the same generators
    let poly_ring = GAlgebra::new(
        field.clone(),
        file.generators.clone(),
        vec![1; n],
        Vec::new(),
        false,
    )?;
    let mut relations = Vec::new();
    for entry in &file.relations {
        if entry.i == 0 || entry.j == 0 || entry.i >= entry.j || entry.j > n {
            return Err(PbwError::BadPresentation(format!(
                "relation indices ({}, {}) must satisfy 1 <= i < j <= {}",
                entry.i, entry.j, n
            )));
        }
        let c = field
            .parse(&entry.c)
            .map_err(|e| PbwError::BadPresentation(format!("bad c literal {:?}: {}", entry.c, e)))?;
        let d = match &entry.d {
            None => Default::default(),
            Some(src) if src.trim().is_empty() || src.trim() == "0" => Default::default(),
            Some(src) => {
                let poly = expr::parse_in(&poly_ring, src).map_err(|e| {
                    PbwError::BadPresentation(format!("bad tail expression {:?}: {}", src, e))
                })?;
                poly.terms().clone()
            }
        };
        relations.push((entry.i - 1, entry.j - 1, c, d));
    }
    let weights = file.weights.clone().unwrap_or_else(|| vec![1; n]);
    GAlgebra::new(field, file.generators.clone(), weights, relations, false)
}

/// The builtin algebras reachable from the command line; quantum parameters
/// are scalar literals interpreted in the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Weyl(usize),
    Shift,
    QShift(String),
    QWeyl(usize, String),
    QuantumAffine(usize, String),
    Integration,
    Polynomial(usize),
}

impl AlgebraSpec {
    /// Parse specs like `weyl:2`, `shift`, `qshift:2`, `qweyl:1:1/2`,
    /// `qaffine:2:3`, `integration`, `poly:2`.
    pub fn parse(s: &str) -> Result<AlgebraSpec, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |idx: usize| -> Result<usize, String> {
            parts
                .get(idx)
                .ok_or_else(|| format!("{}: missing generator count", s))?
                .parse()
                .map_err(|_| format!("{}: bad generator count", s))
        };
        match parts[0] {
            "weyl" => Ok(AlgebraSpec::Weyl(arity(1)?)),
            "shift" => Ok(AlgebraSpec::Shift),
            "qshift" => Ok(AlgebraSpec::QShift(
                parts
                    .get(1)
                    .ok_or_else(|| format!("{}: missing q", s))?
                    .to_string(),
            )),
            "qweyl" => Ok(AlgebraSpec::QWeyl(
                arity(1)?,
                parts
                    .get(2)
                    .ok_or_else(|| format!("{}: missing q", s))?
                    .to_string(),
            )),
            "qaffine" => Ok(AlgebraSpec::QuantumAffine(
                arity(1)?,
                parts
                    .get(2)
                    .ok_or_else(|| format!("{}: missing q", s))?
                    .to_string(),
            )),
            "integration" => Ok(AlgebraSpec::Integration),
            "poly" | "polynomial" => Ok(AlgebraSpec::Polynomial(arity(1)?)),
            other => Err(format!("unknown algebra {:?}", other)),
        }
    }

    pub fn build<K: Field>(&self, field: K) -> Result<Arc<GAlgebra<K>>, PbwError> {
        let parse_q = |field: &K, src: &str| {
            field
                .parse(src)
                .map_err(|e| PbwError::BadParameter(format!("bad q literal {:?}: {}", src, e)))
        };
        match self {
            AlgebraSpec::Weyl(n) => builtins::weyl(field, *n),
            AlgebraSpec::Shift => builtins::shift(field),
            AlgebraSpec::QShift(q) => {
                let q = parse_q(&field, q)?;
                builtins::qshift(field, q)
            }
            AlgebraSpec::QWeyl(n, q) => {
                let q = parse_q(&field, q)?;
                builtins::qweyl(field, *n, q)
            }
            AlgebraSpec::QuantumAffine(n, q) => {
                let q = parse_q(&field, q)?;
                builtins::quantum_affine_uniform(field, *n, q)
            }
            AlgebraSpec::Integration => builtins::integration(field),
            AlgebraSpec::Polynomial(n) => builtins::polynomial(field, *n),
        }
    }

    /// Override the default weights after construction.
    pub fn build_weighted<K: Field>(
        &self,
        field: K,
        weights: Option<Vec<u64>>,
    ) -> Result<Arc<GAlgebra<K>>, PbwError> {
        let ring = self.build(field.clone())?;
        match weights {
            None => Ok(ring),
            Some(w) => {
                let mut rels = Vec::new();
                for j in 1..ring.ngens() {
                    for i in 0..j {
                        let rel = ring.relation(i, j);
                        rels.push((i, j, rel.c.clone(), rel.d.clone()));
                    }
                }
                GAlgebra::new(
                    field,
                    ring.names().to_vec(),
                    w,
                    rels,
                    ring.is_graded(),
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn counterexample_from_json() {
        let text = r#"{
            "name": "pbw-counterexample",
            "generators": ["x1", "x2", "x3"],
            "relations": [{"i": 1, "j": 2, "c": "1", "d": "x1*x2*x3"}],
            "field": {"type": "Q"}
        }"#;
        let file = parse_file(text).unwrap();
        let ring = build(&file, Rationals).unwrap();
        assert!(!ring.gr_check().admissible);
        assert_eq!(ring.find_weights(5), None);
        let builtin = crate::pbw::builtins::pbw_counterexample(Rationals).unwrap();
        assert_eq!(*ring, *builtin);
    }

    #[test]
    fn algebra_specs() {
        assert_eq!(AlgebraSpec::parse("weyl:2").unwrap(), AlgebraSpec::Weyl(2));
        assert_eq!(AlgebraSpec::parse("shift").unwrap(), AlgebraSpec::Shift);
        assert_eq!(
            AlgebraSpec::parse("qweyl:1:1/2").unwrap(),
            AlgebraSpec::QWeyl(1, "1/2".into())
        );
        assert!(AlgebraSpec::parse("nope").is_err());
        let ring = AlgebraSpec::parse("qaffine:2:3")
            .unwrap()
            .build(PrimeField::new(7).unwrap())
            .unwrap();
        assert_eq!(ring.relation(0, 1).c, 5);
        // weights override
        let w = AlgebraSpec::parse("weyl:1")
            .unwrap()
            .build_weighted(Rationals, Some(vec![2, 1]))
            .unwrap();
        assert_eq!(w.weights(), &[2, 1]);
    }

    #[test]
    fn bad_presentations_rejected() {
        let bad_idx = r#"{"generators": ["a"], "relations": [{"i": 1, "j": 1, "c": "1"}], "field": {"type": "Q"}}"#;
        assert!(build(&parse_file(bad_idx).unwrap(), Rationals).is_err());
        let zero_c = r#"{"generators": ["a", "b"], "relations": [{"i": 1, "j": 2, "c": "0"}], "field": {"type": "Q"}}"#;
        assert!(build(&parse_file(zero_c).unwrap(), Rationals).is_err());
        assert!(parse_file("{").is_err());
    }
}
