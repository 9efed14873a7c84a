//! Polynomial-like functions on groups: difference operators, membership
//! tests for polynomials and semipolynomials, and exact invariant-subspace
//! computations for finite-dimensional representations.

pub mod calculus;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod function;
pub mod group;
pub mod linalg;
pub mod montel;
pub mod quasipoly;
pub mod rational;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod selftest;

pub use calculus::{CheckOptions, DegreeKind};
pub use error::{Error, Result};
pub use function::GroupFunction;
pub use group::{GroupElement, GroupSpec};
pub use rational::Rational;
pub use report::{CheckReport, Verdict, Witness};
pub use scalar::{Scalar, ScalarKind};
