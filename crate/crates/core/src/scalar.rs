use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default absolute tolerance for float-valued functions.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Exact,
    Float,
}

/// A function value: exact rational or binary64.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn zero(kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Exact => Scalar::Exact(Rational::zero()),
            ScalarKind::Float => Scalar::Float(0.0),
        }
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Exact(_) => ScalarKind::Exact,
            Scalar::Float(_) => ScalarKind::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn mixed() -> Error {
        Error::Evaluation("exact and float scalars cannot be mixed".into())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a + b)),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a + b)),
            _ => Err(Self::mixed()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a - b)),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a - b)),
            _ => Err(Self::mixed()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Float(a) => Scalar::Float(-a),
        }
    }

    /// Multiplies by an exact coefficient (converted for float values).
    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a * c),
            Scalar::Float(a) => Scalar::Float(a * c.to_f64()),
        }
    }

    /// Exact values must be exactly zero; floats within `tol` scaled by
    /// `max(1, magnitude)`.
    pub fn is_negligible(&self, tol: f64, magnitude: f64) -> bool {
        match self {
            Scalar::Exact(a) => a.is_zero(),
            Scalar::Float(a) => a.abs() <= tol * magnitude.max(1.0),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// Exact values serialize as `"p/q"` strings, floats as JSON numbers.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => serializer.collect_str(r),
            Scalar::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map(Scalar::Exact).map_err(serde::de::Error::custom),
            Raw::Number(x) => Ok(Scalar::Float(x)),
        }
    }
}
