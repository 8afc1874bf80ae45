//! Weil numbers over imaginary quadratic fields and abelian varieties of
//! type IV(1,d).
//!
//! The crate classifies Weil numbers (dimension, Newton polygon, Hasse
//! invariants, point counts), constructs Weil numbers whose endomorphism
//! algebra is a prescribed central division algebra over an imaginary
//! quadratic field, and evaluates the arithmetic predicates that govern
//! cyclic isogenies between such varieties.
//!
//! All arithmetic is exact. Element and form types are generic over an
//! integer [`Scalar`]; the aliases below fix the usual choices.

pub mod algebra;
pub mod arith;
pub mod forge;
pub mod honda_tate;
pub mod quadfield;
pub mod torsion_lab;

pub use arith::Scalar;
pub use quadfield::{
    BigForm, Form, QuadForm, QuadInt, QuadraticField, QuadraticInteger, SmallQuadInt,
};

/// Exact rational used for slopes and Hasse invariants.
pub type Rational = num_rational::Ratio<i64>;
