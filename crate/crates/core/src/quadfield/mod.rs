//! Exact arithmetic in imaginary quadratic fields.
//!
//! Elements are `(x + y*sqrt(disc))/2`; ideal classes are reduced binary
//! quadratic forms. Only maximal orders of fundamental discriminants are
//! supported.

mod class_group;
mod element;
mod field;
mod form;
mod norm;

use num_bigint::BigInt;
use thiserror::Error;

pub use class_group::{
    class_group, class_number_by_generation, invariant_factors_from_orders, reduced_forms,
    ClassGroup,
};
pub use element::QuadraticInteger;
pub use field::{fundamental_discriminant, is_fundamental, QuadraticField};
pub use form::{QuadForm, Transform};
pub use norm::{
    distinguished_root, is_norm, prime_form, principal_generator, split_kind,
    split_prime_power_form, splitting, NormRoutes, NormTest, PrimeSplitting, SplitKind,
};

/// Forms over machine integers, used for class-group work.
pub type Form = QuadForm<i64>;
/// Forms over big integers, used for ideals of large norm.
pub type BigForm = QuadForm<BigInt>;
/// Quadratic integers over big integers.
pub type QuadInt = QuadraticInteger<BigInt>;
/// Quadratic integers over machine integers.
pub type SmallQuadInt = QuadraticInteger<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadFieldError {
    #[error("discriminant {0} is not negative")]
    NotImaginary(i64),
    #[error("discriminant {disc} is not fundamental (field discriminant is {fundamental})")]
    NonFundamentalDiscriminant { disc: i64, fundamental: i64 },
    #[error("({x} + {y}*sqrt({disc}))/2 is not an algebraic integer")]
    NonIntegral { x: String, y: String, disc: i64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} ramifies")]
    RamifiedPrime(u64),
    #[error("the {n}-th power of the prime above {p} is not principal")]
    NotPrincipal { p: u64, n: u32 },
    #[error("norm routes disagree for l = {l}: {routes:?}")]
    RouteDisagreement { l: u64, routes: NormRoutes },
}

impl QuadFieldError {
    /// Stable error name for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotImaginary(_) => "NotImaginary",
            Self::NonFundamentalDiscriminant { .. } => "NonFundamentalDiscriminant",
            Self::NonIntegral { .. } => "NonIntegral",
            Self::NotPrime(_) => "NotPrime",
            Self::RamifiedPrime(_) => "RamifiedPrime",
            Self::NotPrincipal { .. } => "NotPrincipal",
            Self::RouteDisagreement { .. } => "RouteDisagreement",
        }
    }
}
