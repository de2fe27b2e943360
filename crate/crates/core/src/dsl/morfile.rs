//! JSON morphism files:
//! `{"dom": [2], "cod": [2, 2], "semiring": "complex", "entries": [[1.0, 0.0], ...]}`
//! with entries in row-major order, complex entries as `[re, im]` and
//! booleans as `0`/`1`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{render_mor, DslError, LitScalar, Semiring};
use crate::mor::{CMor, Mor, RelMor};
use crate::object::Object;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorFile {
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub semiring: String,
    pub entries: Vec<Value>,
}

/// A morphism over either semiring.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMor {
    Complex(CMor),
    Bool(RelMor),
}

fn object(factors: &[usize]) -> Result<Object, DslError> {
    if factors.contains(&0) {
        return Err(DslError::File("object factors must be positive".into()));
    }
    Ok(Object::new(factors.to_vec()))
}

impl MorFile {
    pub fn from_mor<S: LitScalar>(m: &Mor<S>) -> Self {
        MorFile {
            dom: m.dom().factors().to_vec(),
            cod: m.cod().factors().to_vec(),
            semiring: S::NAME.to_string(),
            entries: m.entries().iter().map(|&s| s.to_json()).collect(),
        }
    }

    pub fn to_mor<S: LitScalar>(&self) -> Result<Mor<S>, DslError> {
        if self.semiring != S::NAME {
            return Err(DslError::File(format!("semiring is '{}', expected '{}'", self.semiring, S::NAME)));
        }
        let (dom, cod) = (object(&self.dom)?, object(&self.cod)?);
        let entries = self.entries.iter().map(S::from_json).collect::<Result<Vec<S>, _>>()?;
        Ok(Mor::new(dom, cod, entries)?)
    }

    pub fn to_any(&self) -> Result<AnyMor, DslError> {
        match self.semiring.parse::<Semiring>().map_err(DslError::File)? {
            Semiring::Complex => Ok(AnyMor::Complex(self.to_mor()?)),
            Semiring::Bool => Ok(AnyMor::Bool(self.to_mor()?)),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DslError> {
        serde_json::from_str(text).map_err(|e| DslError::File(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("morphism files always serialize")
    }

    pub fn read(path: &Path) -> Result<Self, DslError> {
        let text = std::fs::read_to_string(path).map_err(|e| DslError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), DslError> {
        std::fs::write(path, self.to_json_string()).map_err(|e| DslError::Io(format!("{}: {e}", path.display())))
    }
}

impl AnyMor {
    pub fn semiring(&self) -> Semiring {
        match self {
            AnyMor::Complex(_) => Semiring::Complex,
            AnyMor::Bool(_) => Semiring::Bool,
        }
    }

    pub fn to_file(&self) -> MorFile {
        match self {
            AnyMor::Complex(m) => MorFile::from_mor(m),
            AnyMor::Bool(m) => MorFile::from_mor(m),
        }
    }

    pub fn render(&self) -> String {
        match self {
            AnyMor::Complex(m) => render_mor(m),
            AnyMor::Bool(m) => render_mor(m),
        }
    }
}
