//! Predicates on the division algebra `D` of a type IV(1,d) variety and on its
//! center `K`.

mod aux_prime;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

pub use aux_prime::{
    aux_prime_search, empirical_density, evaluate_conditions, evaluate_conditions_by_enumeration,
    AuxChecks, AuxPrimeCriteria, AuxPrimeHit, DensityReport,
};

use crate::arith::{is_prime, multiplicative_order, prime_power};
use crate::forge::DivisionAlgebraSpec;
use crate::honda_tate::WeilNumber;
use crate::quadfield::{class_group, is_norm, QuadFieldError, QuadInt, QuadraticField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is rational")]
    RationalPi(String),
    #[error("no qualifying prime up to the bound ({tested} primes tested)")]
    NotFound { tested: u64 },
    #[error("bad prime element: {0}")]
    BadPrime(String),
    #[error("the Weil number reduces to 0 modulo the prime")]
    ZeroImage,
    #[error("invalid criteria: {0}")]
    InvalidCriteria(String),
    #[error("d = {0} is not an odd prime power")]
    UnsupportedDegree(u64),
    #[error(transparent)]
    Field(#[from] QuadFieldError),
}

impl AlgebraError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::RationalPi(_) => "RationalPi",
            Self::NotFound { .. } => "NotFound",
            Self::BadPrime(_) => "BadPrime",
            Self::ZeroImage => "ZeroImage",
            Self::InvalidCriteria(_) => "InvalidCriteria",
            Self::UnsupportedDegree(_) => "UnsupportedDegree",
            Self::Field(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EichlerVerdict {
    pub holds: bool,
    pub reason: &'static str,
}

/// `D` is never a totally definite quaternion algebra: its center is CM.
pub fn eichler_condition(_spec: &DivisionAlgebraSpec) -> EichlerVerdict {
    EichlerVerdict {
        holds: true,
        reason: "center is CM",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionStarReport {
    pub d_prime_power: bool,
    /// `K` is not contained in `Q(zeta_d)`, i.e. `|disc|` does not divide `d`.
    pub center_outside_cyclotomic: bool,
    pub class_number_coprime: bool,
    pub satisfied: bool,
}

pub fn condition_star(field: QuadraticField, d: u64) -> ConditionStarReport {
    let d_prime_power = prime_power(d).is_some();
    let center_outside_cyclotomic = !d.is_multiple_of(field.abs_disc());
    let class_number_coprime = class_group(field).h().gcd(&d) == 1;
    ConditionStarReport {
        d_prime_power,
        center_outside_cyclotomic,
        class_number_coprime,
        satisfied: d_prime_power && center_outside_cyclotomic && class_number_coprime,
    }
}

/// Primes `l <= bound` with `l` the norm of an integral element; these are the
/// prime degrees of cyclic ideal isogenies.
pub fn feasible_cyclic_degrees(field: QuadraticField, bound: u64) -> Result<Vec<u64>, AlgebraError> {
    let mut out = Vec::new();
    for l in crate::arith::primes_up_to(bound) {
        if field.ramifies(l) {
            continue;
        }
        if is_norm(field, l)?.is_norm {
            out.push(l);
        }
    }
    Ok(out)
}

/// `[O_K : Z[pi, conj(pi)]]`.
///
/// `Z[pi, conj(pi)] = Z[pi] = Z + Z pi` since `conj(pi) = tr(pi) - pi`. With
/// `pi = u + y*omega` the index is `|det [[1, 0], [u, y]]| = |y|`.
pub fn conductor_index(w: &WeilNumber) -> Result<BigInt, AlgebraError> {
    if w.pi().is_rational() {
        return Err(AlgebraError::RationalPi(w.pi().to_string()));
    }
    Ok(w.pi().y().abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSidedGroupReport {
    pub order: u64,
    pub class_number_part: u64,
    pub cokernel_part: (u64, u64),
}

/// Order of the group of two-sided ideals of a maximal order, an extension of
/// `(Z/d)^2` by `Cl(O_K)`.
pub fn two_sided_group(field: QuadraticField, d: u64) -> TwoSidedGroupReport {
    let h = class_group(field).h();
    TwoSidedGroupReport {
        order: h * d * d,
        class_number_part: h,
        cokernel_part: (d, d),
    }
}

/// Kronecker-Weber obstruction: `l != 1 (mod p)`.
pub fn galois_norm_obstruction(p: u64, l: u64) -> Result<bool, AlgebraError> {
    if !is_prime(p) || p == 2 {
        return Err(AlgebraError::BadPrime(format!("p = {p} must be an odd prime")));
    }
    if !is_prime(l) || l == p {
        return Err(AlgebraError::BadPrime(format!("l = {l} must be a prime other than p")));
    }
    Ok(l % p != 1)
}

/// Residue of `omega` modulo the degree-one prime `(ell)`, and `l = norm(ell)`.
fn omega_residue(ell: &QuadInt) -> Result<(u64, u64), AlgebraError> {
    let norm = ell.norm();
    let l = u64::try_from(&norm)
        .ok()
        .filter(|&l| is_prime(l))
        .ok_or_else(|| AlgebraError::BadPrime(format!("norm {norm} of {ell} is not prime")))?;
    if ell.field().ramifies(l) {
        return Err(AlgebraError::BadPrime(format!("{ell} lies above the ramified prime {l}")));
    }
    let lb = BigInt::from(l);
    let (u, v) = ell.omega_coords();
    let v_inv = crate::arith::mod_inverse(&v, &lb).expect("prime of norm l has y prime to l");
    let t = (-u * v_inv).mod_floor(&lb);
    Ok((u64::try_from(t).expect("reduced mod l"), l))
}

/// Smallest `N >= 1` with `pi^N = 1 (mod ell)`, for `ell` of prime norm `l != p`.
pub fn torsion_field_degree(w: &WeilNumber, ell: &QuadInt) -> Result<u64, AlgebraError> {
    if ell.field() != w.field() {
        return Err(AlgebraError::BadPrime(format!("{ell} is in a different field")));
    }
    let (t, l) = omega_residue(ell)?;
    if l == w.p() {
        return Err(AlgebraError::BadPrime(format!("norm of {ell} equals p")));
    }
    let lb = BigInt::from(l);
    let (u, v) = w.pi().omega_coords();
    let image = (u + v * BigInt::from(t)).mod_floor(&lb);
    let image = u64::try_from(image).expect("reduced mod l");
    multiplicative_order(image, l).ok_or(AlgebraError::ZeroImage)
}
