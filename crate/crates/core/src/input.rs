//! The JSON variety input document.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{is_prime, FieldError};
use crate::poly::{PolyError, PolynomialSystem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("malformed input document: {0}")]
    Malformed(String),
    #[error("equation {index}: {source}")]
    Equation { index: usize, source: PolyError },
    #[error(transparent)]
    System(PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("S must be at least 1")]
    EmptyTower,
    #[error("d must be at least 1")]
    InvalidDegree,
}

/// Trusted facts about a variety; absent means unknown.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fano: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_intersection: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyInput {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub name: String,
    /// Ambient projective dimension.
    pub n: usize,
    pub equations: Vec<String>,
    pub p: u64,
    #[serde(default = "one")]
    pub d: u32,
    #[serde(rename = "S", default = "one_usize")]
    pub s: usize,
    #[serde(default)]
    pub flags: VarietyFlags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn one() -> u32 {
    1
}

fn one_usize() -> usize {
    1
}

impl VarietyInput {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let doc: VarietyInput = serde_json::from_str(text).map_err(|e| InputError::Malformed(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(InputError::Malformed(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        doc.validate()?;
        Ok(doc)
    }

    /// Checks the field parameters and parses the equations.
    pub fn validate(&self) -> Result<PolynomialSystem, InputError> {
        if !is_prime(self.p) {
            return Err(FieldError::InvalidPrime(self.p).into());
        }
        if self.d == 0 {
            return Err(InputError::InvalidDegree);
        }
        if self.s == 0 {
            return Err(InputError::EmptyTower);
        }
        self.system()
    }

    pub fn system(&self) -> Result<PolynomialSystem, InputError> {
        let polys = self
            .equations
            .iter()
            .enumerate()
            .map(|(index, e)| crate::poly::parse_poly(e, self.n + 1).map_err(|source| InputError::Equation { index, source }))
            .collect::<Result<Vec<_>, _>>()?;
        PolynomialSystem::new(self.n, polys).map_err(InputError::System)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let doc = VarietyInput::from_json(r#"{"name": "q", "n": 3, "equations": ["x0*x3 - x1*x2"], "p": 2}"#).unwrap();
        assert_eq!((doc.d, doc.s), (1, 1));
        assert_eq!(doc.flags, VarietyFlags::default());
        assert_eq!(doc.system().unwrap().degrees(), &[2]);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = |s: &str| VarietyInput::from_json(s).unwrap_err();
        assert!(matches!(bad(r#"{"name": "q", "n": 2, "equations": [], "p": 4}"#), InputError::Field(_)));
        assert!(matches!(bad(r#"{"name": "q", "n": 2, "equations": [], "p": 3, "S": 0}"#), InputError::EmptyTower));
        assert!(matches!(bad(r#"{"name": "q", "n": 2, "equations": [], "p": 3, "extra": 1}"#), InputError::Malformed(_)));
        assert!(matches!(
            bad(r#"{"name": "q", "n": 2, "equations": ["x0 + x1", "x0*x9"], "p": 3}"#),
            InputError::Equation { index: 1, .. }
        ));
        assert!(matches!(
            bad(r#"{"name": "q", "n": 2, "equations": ["x0 + x1^2"], "p": 3}"#),
            InputError::System(PolyError::NotHomogeneous { index: 0 })
        ));
    }
}
