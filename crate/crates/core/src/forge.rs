//! Weil numbers with prescribed type IV(1,d) endomorphism algebra.
//!
//! Given a center `K`, a prime `p` split in `K` as `P * conj(P)` and invariants
//! `j/d` at `P`, `(d-j)/d` at `conj(P)`: take the exact order `n` of the class
//! of `P`, a generator `pi` of `P^n`, and `pi_1 = pi^j * conj(pi)^(d-j)`.
//! Then `pi_1` is a Weil `p^(dn)`-number with `v_P(pi_1) = jn`, so its
//! invariants are the requested ones.

use num_integer::Integer;
use thiserror::Error;

use crate::arith::is_prime;
use crate::honda_tate::{distinguished_valuation, validate_weil, NewtonPolygon, WeilNumber};
use crate::quadfield::{
    prime_form, principal_generator, split_kind, QuadFieldError, QuadInt, QuadraticField,
    SplitKind,
};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error("{p} does not split in the center (it is {kind})")]
    NotSplit { p: u64, kind: SplitKind },
    #[error("d = 2 is excluded: no abelian variety has type IV(1,2)")]
    DegenerateD,
    #[error("d = {0} gives a commutative endomorphism algebra, not a division algebra of type IV(1,d)")]
    CommutativeCase(u64),
    #[error("j = {j} is not a unit modulo d = {d}")]
    NotCoprime { d: u64, j: u64 },
    #[error("j = {j} must satisfy 1 <= j < d = {d}")]
    JOutOfRange { d: u64, j: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    Field(#[from] QuadFieldError),
}

impl ForgeError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotSplit { .. } => "NotSplit",
            Self::DegenerateD => "DegenerateD",
            Self::CommutativeCase(_) => "CommutativeCase",
            Self::NotCoprime { .. } => "NotCoprime",
            Self::JOutOfRange { .. } => "JOutOfRange",
            Self::NotPrime(_) => "NotPrime",
            Self::Field(e) => e.code(),
        }
    }
}

/// Central division algebra of dimension `d^2` over `K` with invariant `j/d`
/// at the distinguished prime above `p` and `(d-j)/d` at its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisionAlgebraSpec {
    field: QuadraticField,
    p: u64,
    d: u64,
    j: u64,
}

impl DivisionAlgebraSpec {
    pub fn new(field: QuadraticField, p: u64, d: u64, j: u64) -> Result<Self, ForgeError> {
        check_degree(d, j)?;
        if !is_prime(p) {
            return Err(ForgeError::NotPrime(p));
        }
        let kind = split_kind(field, p);
        if kind != SplitKind::Split {
            return Err(ForgeError::NotSplit { p, kind });
        }
        Ok(Self { field, p, d, j })
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    /// `(j/d, (d-j)/d)`.
    pub fn invariants(&self) -> (Rational, Rational) {
        let (d, j) = (self.d as i64, self.j as i64);
        (Rational::new(j, d), Rational::new(d - j, d))
    }
}

fn check_degree(d: u64, j: u64) -> Result<(), ForgeError> {
    match d {
        0 | 1 => return Err(ForgeError::CommutativeCase(d)),
        2 => return Err(ForgeError::DegenerateD),
        _ => {}
    }
    if j == 0 || j >= d {
        return Err(ForgeError::JOutOfRange { d, j });
    }
    if j.gcd(&d) != 1 {
        return Err(ForgeError::NotCoprime { d, j });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForgedWeil {
    pub spec: DivisionAlgebraSpec,
    pub weil: WeilNumber,
    /// Order of the class of the distinguished prime above `p`.
    pub n: u64,
    /// Generator of `P^n`, with `P` the distinguished prime.
    pub base_generator: QuadInt,
}

/// Construct `pi_1 = pi^j * conj(pi)^(d-j)` over `q = p^(dn)`.
pub fn forge(spec: &DivisionAlgebraSpec) -> Result<ForgedWeil, ForgeError> {
    let (field, p) = (spec.field, spec.p);
    let n = prime_form(field, p).expect("split prime has a form").order();
    let n32 = u32::try_from(n).expect("class order fits in u32");
    let canonical = principal_generator(field, p, n32)?;
    // The canonical associate is fixed only up to conjugation; orient it into P^n.
    let probe = validate_weil(canonical.clone(), p, n32).expect("generator norm is p^n");
    let base = if distinguished_valuation(&probe).expect("split") == n32 {
        canonical
    } else {
        canonical.conj()
    };
    let (d, j) = (spec.d as u32, spec.j as u32);
    let pi1 = &base.pow(j) * &base.conj().pow(d - j);
    let weil = validate_weil(pi1, p, d * n32).expect("forged element has norm p^(dn)");
    Ok(ForgedWeil {
        spec: *spec,
        weil,
        n,
        base_generator: base,
    })
}

/// The polygon `{j/d x d, (d-j)/d x d}` of a type IV(1,d) variety.
pub fn admissible_iv_polygon(d: u64, j: u64) -> Result<NewtonPolygon, ForgeError> {
    if j == 0 || j >= d {
        return Err(ForgeError::JOutOfRange { d, j });
    }
    if j.gcd(&d) != 1 {
        return Err(ForgeError::NotCoprime { d, j });
    }
    let (di, ji) = (d as i64, j as i64);
    let poly = NewtonPolygon::from_parts([
        (Rational::new(ji, di), d),
        (Rational::new(di - ji, di), d),
    ]);
    debug_assert!(poly.is_admissible());
    Ok(poly)
}

/// Symmetric with integral breakpoints.
pub fn is_admissible(poly: &NewtonPolygon) -> bool {
    poly.is_admissible()
}
