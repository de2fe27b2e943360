use std::fmt;

use serde::{Deserialize, Serialize};

/// An object of a strict monoidal skeleton: an ordered list of factor
/// dimensions. The empty list is the tensor unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Object {
    factors: Vec<usize>,
}

impl Object {
    /// Builds an object from factor dimensions. Factors equal to 1 are kept
    /// as metadata; zero factors are rejected by panicking since they have
    /// no meaning as spaces or sets.
    pub fn new(factors: Vec<usize>) -> Self {
        assert!(factors.iter().all(|&d| d > 0), "object factors must be positive");
        Self { factors }
    }

    pub fn unit() -> Self {
        Self { factors: Vec::new() }
    }

    pub fn dim(d: usize) -> Self {
        Self::new(vec![d])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn total(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn is_unit(&self) -> bool {
        self.total() == 1
    }

    pub fn tensor(&self, other: &Object) -> Object {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Object { factors }
    }

    /// Equality used for composability: total dimension only.
    pub fn matches(&self, other: &Object) -> bool {
        self.total() == other.total()
    }
}

impl From<usize> for Object {
    fn from(d: usize) -> Self {
        Object::dim(d)
    }
}

impl From<&[usize]> for Object {
    fn from(f: &[usize]) -> Self {
        Object::new(f.to_vec())
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_has_total_one() {
        assert_eq!(Object::unit().total(), 1);
        assert!(Object::unit().is_unit());
        assert_eq!(Object::unit().to_string(), "I");
    }

    #[test]
    fn tensor_concatenates() {
        let a = Object::new(vec![2, 3]);
        let b = Object::dim(4);
        let ab = a.tensor(&b);
        assert_eq!(ab.factors(), &[2, 3, 4]);
        assert_eq!(ab.total(), 24);
        assert_eq!(a.tensor(&Object::unit()), a);
        assert!(Object::dim(6).matches(&Object::new(vec![2, 3])));
    }
}
