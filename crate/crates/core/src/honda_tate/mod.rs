//! Honda-Tate classification of Weil numbers in imaginary quadratic fields.
//!
//! A Weil number here is `pi` in the maximal order of `K = Q(sqrt(disc))` with
//! `pi * conj(pi) = q = p^k`. Its isogeny class is described through the
//! Hasse invariants of `End^0 = D` at the places above `p`: they are
//! `[K_v : Q_p] * v(pi) / v(q) mod 1`. Their common denominator is `m`, the
//! dimension of the variety is `m` and every other invariant follows.
//!
//! Valuations at a split prime come from the embedding `O_K -> Z_p` that sends
//! `omega` to the Hensel lift of the distinguished root (the smallest root
//! modulo `p`). The place it defines is labelled [`Place::PAdic1`].

mod polygon;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use polygon::NewtonPolygon;

use crate::arith::{big_pow, is_prime, valuation};
use crate::quadfield::{
    class_group, distinguished_root, prime_form, split_kind, QuadFieldError, QuadInt,
    QuadraticField, SplitKind,
};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HondaTateError {
    #[error("{pi} has norm {norm}, not {q}")]
    NotWeil { pi: String, norm: String, q: String },
    #[error("{0} ramifies in the field of the Weil number")]
    RamifiedBase(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is rational; its field is Q, not an imaginary quadratic field")]
    RationalPi(String),
    #[error(transparent)]
    Field(#[from] QuadFieldError),
}

impl HondaTateError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotWeil { .. } => "NotWeil",
            Self::RamifiedBase(_) => "RamifiedBase",
            Self::NotPrime(_) => "NotPrime",
            Self::RationalPi(_) => "RationalPi",
            Self::Field(e) => e.code(),
        }
    }
}

/// `pi` with `pi * conj(pi) = p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeilNumber {
    pi: QuadInt,
    p: u64,
    k: u32,
}

impl WeilNumber {
    pub fn pi(&self) -> &QuadInt {
        &self.pi
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> BigInt {
        big_pow(self.p, self.k)
    }

    pub fn field(&self) -> QuadraticField {
        self.pi.field()
    }
}

impl fmt::Display for WeilNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q = {}^{})", self.pi, self.p, self.k)
    }
}

/// Check `norm(pi) = p^k` exactly.
pub fn validate_weil(pi: QuadInt, p: u64, k: u32) -> Result<WeilNumber, HondaTateError> {
    if !is_prime(p) {
        return Err(HondaTateError::NotPrime(p));
    }
    let q = big_pow(p, k);
    if k == 0 || pi.norm() != q {
        return Err(HondaTateError::NotWeil {
            pi: pi.to_string(),
            norm: pi.norm().to_string(),
            q: q.to_string(),
        });
    }
    Ok(WeilNumber { pi, p, k })
}

/// Build from raw coordinates `(x + y*sqrt(disc))/2`.
///
/// A non-integral pair is reported as `NotWeil`, with its rational norm.
pub fn weil_from_coords(
    disc: i64,
    x: BigInt,
    y: BigInt,
    p: u64,
    k: u32,
) -> Result<WeilNumber, HondaTateError> {
    let field = QuadraticField::new(disc)?;
    match QuadInt::new(field, x.clone(), y.clone()) {
        Ok(pi) => validate_weil(pi, p, k),
        Err(QuadFieldError::NonIntegral { .. }) => {
            let norm = Ratio::new(&x * &x - BigInt::from(disc) * &y * &y, BigInt::from(4));
            let sign = if y.is_negative() { '-' } else { '+' };
            Err(HondaTateError::NotWeil {
                pi: format!("({x} {sign} {}*sqrt({disc}))/2", y.abs()),
                norm: norm.to_string(),
                q: big_pow(p, k).to_string(),
            })
        }
        Err(e) => Err(e.into()),
    }
}

/// Label of a place of the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// The distinguished place above `p` (or the only one, when `p` is inert).
    PAdic1,
    /// Its conjugate.
    PAdic2,
    Real,
    Other,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Place::PAdic1 => "p-adic-1",
            Place::PAdic2 => "p-adic-2",
            Place::Real => "real",
            Place::Other => "other",
        })
    }
}

/// Hasse invariants in `[0, 1)`. Places not listed carry invariant 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseInvariantVector {
    pub entries: Vec<(Place, Rational)>,
}

impl HasseInvariantVector {
    pub fn get(&self, place: Place) -> Rational {
        self.entries
            .iter()
            .find(|(pl, _)| *pl == place)
            .map_or_else(Rational::zero, |(_, v)| *v)
    }

    /// Global reciprocity: the invariants sum to 0 in `Q/Z`.
    pub fn sums_to_zero(&self) -> bool {
        self.entries.iter().map(|(_, v)| *v).sum::<Rational>().is_integer()
    }

    /// Least common denominator, i.e. the index `m` of the algebra.
    pub fn period(&self) -> u64 {
        self.entries
            .iter()
            .fold(1i64, |acc, (_, v)| acc.lcm(v.denom())) as u64
    }
}

fn frac(n: i64, d: i64) -> Rational {
    let r = Rational::new(n, d);
    r - r.floor()
}

/// `v_P(pi)` at the distinguished place `P` above a split `p`, capped at `k`.
pub fn distinguished_valuation(w: &WeilNumber) -> Result<u32, HondaTateError> {
    let field = w.field();
    if split_kind(field, w.p) != SplitKind::Split {
        return Err(HondaTateError::RamifiedBase(w.p));
    }
    let t0 = distinguished_root(field, w.p).expect("split prime has a root");
    let precision = w.k + 2;
    let t = field.lift_omega_root(w.p, t0, precision);
    let (u, v) = w.pi.omega_coords();
    let modulus = big_pow(w.p, precision);
    let image = (u + v * t).mod_floor(&modulus);
    let val = valuation(&image, &BigInt::from(w.p)).unwrap_or(precision);
    Ok(val.min(w.k))
}

/// Local data at `p`: `(place, local degree, v(pi)/v(q))` for each place above `p`.
fn local_slopes(w: &WeilNumber) -> Result<Vec<(Place, u64, Rational)>, HondaTateError> {
    let k = i64::from(w.k);
    match split_kind(w.field(), w.p) {
        SplitKind::Ramified => Err(HondaTateError::RamifiedBase(w.p)),
        SplitKind::Inert => Ok(vec![(Place::PAdic1, 2, Rational::new(1, 2))]),
        SplitKind::Split => {
            let i = i64::from(distinguished_valuation(w)?);
            Ok(vec![
                (Place::PAdic1, 1, Rational::new(i, k)),
                (Place::PAdic2, 1, Rational::new(k - i, k)),
            ])
        }
    }
}

pub fn hasse_invariants(w: &WeilNumber) -> Result<HasseInvariantVector, HondaTateError> {
    let entries = local_slopes(w)?
        .into_iter()
        .map(|(place, deg, s)| {
            let v = s * Rational::from_integer(deg as i64);
            (place, frac(*v.numer(), *v.denom()))
        })
        .collect();
    Ok(HasseInvariantVector { entries })
}

/// Slopes `v(pi)/v(q)`, each with multiplicity `[K_v : Q_p] * m`.
pub fn newton_polygon(w: &WeilNumber) -> Result<NewtonPolygon, HondaTateError> {
    let m = hasse_invariants(w)?.period();
    let parts = local_slopes(w)?
        .into_iter()
        .map(|(_, deg, s)| (s, deg * m));
    Ok(NewtonPolygon::from_parts(parts))
}

/// `pi^N` is irrational for every `N >= 1`.
///
/// `pi^N` rational means `pi/conj(pi)` is a root of unity of `K`, whose orders
/// divide `w`; that is `pi^(2w) = q^w`.
pub fn absolutely_simple(w: &WeilNumber) -> bool {
    if w.pi.is_rational() {
        return false;
    }
    let wk = u32::from(w.field().w());
    let lhs = w.pi.pow(2 * wk);
    let rhs = QuadInt::from_integer(w.field(), num_traits::pow(w.q(), wk as usize));
    lhs != rhs
}

/// `d` and `j` of a type IV(1,d) classification. `j` is the numerator of the
/// invariant at the distinguished place; the conjugate place carries `d - j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeIv {
    pub d: u64,
    pub j: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub weil: WeilNumber,
    pub splitting: SplitKind,
    pub dim: u64,
    pub m_pi: u64,
    pub newton: NewtonPolygon,
    pub invariants: HasseInvariantVector,
    /// Coefficients of `(X^2 - aX + q)^m`, leading coefficient first.
    pub char_poly_coeffs: Vec<BigInt>,
    pub point_count: BigInt,
    pub p_rank: u64,
    pub absolutely_simple: bool,
    pub type_iv: Option<TypeIv>,
    /// Class number `h`: a model exists over `F_{p^h}`.
    pub min_field_exponent_bound: u64,
    /// Order of the class of the distinguished prime above `p`.
    pub min_field_exponent_exact: u64,
}

impl ClassificationReport {
    pub fn is_type_iv_1_d(&self) -> bool {
        self.type_iv.is_some()
    }
}

/// Full Honda-Tate dossier of a Weil number.
pub fn classify(w: &WeilNumber) -> Result<ClassificationReport, HondaTateError> {
    if w.pi.is_rational() {
        return Err(HondaTateError::RationalPi(w.pi.to_string()));
    }
    let field = w.field();
    let invariants = hasse_invariants(w)?;
    let newton = newton_polygon(w)?;
    let m = invariants.period();
    let a = w.pi.trace();
    let q = w.q();
    let quadratic = [BigInt::one(), -a.clone(), q.clone()];
    let char_poly_coeffs = poly_pow(&quadratic, m);
    let point_count = num_traits::pow(BigInt::one() - &a + &q, m as usize);
    let splitting = split_kind(field, w.p);
    let simple = absolutely_simple(w);
    let type_iv = match (splitting, m >= 3 && simple) {
        (SplitKind::Split, true) => {
            let s = invariants.get(Place::PAdic1);
            debug_assert_eq!(*s.denom() as u64, m);
            Some(TypeIv {
                d: m,
                j: *s.numer() as u64,
            })
        }
        _ => None,
    };
    let min_field_exponent_exact = prime_form(field, w.p).map_or(1, |f| f.order());
    Ok(ClassificationReport {
        weil: w.clone(),
        splitting,
        dim: m,
        m_pi: m,
        p_rank: newton.multiplicity(&Rational::zero()),
        newton,
        invariants,
        char_poly_coeffs,
        point_count,
        absolutely_simple: simple,
        type_iv,
        min_field_exponent_bound: class_group(field).h(),
        min_field_exponent_exact,
    })
}

/// `Nm(1 - pi)^m`, the point count through the norm of `1 - pi`.
pub fn point_count_by_norm(w: &WeilNumber, m: u64) -> BigInt {
    let one = QuadInt::one(w.field());
    num_traits::pow((&one - w.pi()).norm(), m as usize)
}

fn poly_pow(base: &[BigInt], e: u64) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..e {
        let mut next = vec![BigInt::zero(); acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}
