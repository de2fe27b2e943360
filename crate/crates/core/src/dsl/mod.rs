//! A small language for writing morphisms, plus the JSON morphism file format.

pub mod eval;
pub mod lexer;
pub mod morfile;
pub mod parser;

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::Value;
use thiserror::Error;

use crate::error::CatError;
use crate::mor::Mor;
use crate::scalar::Scalar;

pub use eval::{eval, run_script, Env, ScriptReport};
pub use morfile::{AnyMor, MorFile};
pub use parser::{parse_expr, parse_script, parse_script_with, Item, Lit, Script, Term};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, col {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown identifier '{name}' at line {line}, col {col}")]
    UnknownIdentifier { name: String, line: usize, col: usize },

    #[error("unbound name '{0}'")]
    Unbound(String),

    #[error("type error in '{subterm}': {msg}")]
    Type { subterm: String, msg: String },

    #[error("bad literal: {0}")]
    Literal(String),

    #[error("bad morphism file: {0}")]
    File(String),

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Cat(#[from] CatError),
}

impl DslError {
    pub fn syntax(line: usize, col: usize, msg: String) -> Self {
        DslError::Syntax { line, col, msg }
    }
}

/// Which scalar semiring a command works over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semiring {
    Complex,
    Bool,
}

impl Semiring {
    pub fn name(self) -> &'static str {
        match self {
            Semiring::Complex => Complex64::NAME,
            Semiring::Bool => bool::NAME,
        }
    }
}

impl FromStr for Semiring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complex" => Ok(Semiring::Complex),
            "bool" => Ok(Semiring::Bool),
            other => Err(format!("unknown semiring '{other}' (expected complex or bool)")),
        }
    }
}

/// Scalars that can be written in scripts, files and output.
pub trait LitScalar: Scalar {
    fn from_lit(lit: Lit) -> Result<Self, DslError>;
    fn to_json(self) -> Value;
    fn from_json(v: &Value) -> Result<Self, DslError>;
    /// Printed form inside an entries block.
    fn render(self) -> String;
}

/// `{:.16e}` without negative zero, so output is stable.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

impl LitScalar for Complex64 {
    fn from_lit(lit: Lit) -> Result<Self, DslError> {
        Ok(Complex64::new(lit.re, lit.im))
    }

    fn to_json(self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self, DslError> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(DslError::File(format!("complex entry {v} must hold two numbers"))),
            },
            _ => Err(DslError::File(format!("complex entry {v} must be [re, im]"))),
        }
    }

    fn render(self) -> String {
        format!("[{},{}]", fmt_f64(self.re), fmt_f64(self.im))
    }
}

impl LitScalar for bool {
    fn from_lit(lit: Lit) -> Result<Self, DslError> {
        match (lit.re, lit.im) {
            (x, y) if x == 0.0 && y == 0.0 => Ok(false),
            (x, y) if x == 1.0 && y == 0.0 => Ok(true),
            _ => Err(DslError::Literal(format!("boolean entries must be 0 or 1, found {lit}"))),
        }
    }

    fn to_json(self) -> Value {
        Value::from(u8::from(self))
    }

    fn from_json(v: &Value) -> Result<Self, DslError> {
        match v.as_u64() {
            Some(0) => Ok(false),
            Some(1) => Ok(true),
            _ => Err(DslError::File(format!("boolean entry {v} must be 0 or 1"))),
        }
    }

    fn render(self) -> String {
        u8::from(self).to_string()
    }
}

/// `dom=`, `cod=`, `semiring=` and an `entries=` block with one matrix row
/// per line.
pub fn render_mor<S: LitScalar>(m: &Mor<S>) -> String {
    let mut out = String::new();
    writeln!(out, "dom={}", m.dom()).unwrap();
    writeln!(out, "cod={}", m.cod()).unwrap();
    writeln!(out, "semiring={}", S::NAME).unwrap();
    writeln!(out, "entries=").unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).render()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}
