//! Presentations, bases and series invariants for orbit configuration spaces
//! of marked spheres.
//!
//! The entry point is [`MarkedAction`], parsed from a descriptor such as
//! `cyclic:3` or `dihedral:2+orbits:1`, together with a strand count `n`.
//! [`Presentation`] lays out the quadratic algebra for that pair. From there,
//! [`algebra`] computes in the algebra itself, [`verify`] cross-checks the
//! claimed monomial basis by independent exact elimination, [`series`] covers
//! Poincaré polynomials and lower central series ranks, and [`hypersurface`]
//! describes the defining divisor and its meridian pairing.
//!
//! All arithmetic is exact: coefficients are [`Int`] or [`Rational`], never
//! floating point.

pub mod action;
pub mod algebra;
pub mod error;
pub mod group;
pub mod hypersurface;
pub mod linalg;
pub mod polyhedron;
pub mod presentation;
pub mod scalar;
pub mod series;
pub mod verify;

pub use action::{ActionKind, MarkedAction, Solid};
pub use algebra::{Element, Monomial};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElem};
pub use presentation::{Generator, Presentation, Rel3Variant, Relator, Transform};
pub use scalar::Scalar;
pub use verify::Budget;

/// Default exact integer scalar.
pub type Int = num_bigint::BigInt;
/// Default exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Algebra element with integer coefficients.
pub type IntElement = algebra::Element<Int>;
/// Algebra element with rational coefficients.
pub type RatElement = algebra::Element<Rational>;
