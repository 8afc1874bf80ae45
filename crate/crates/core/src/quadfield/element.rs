use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::{QuadFieldError, QuadraticField};
use crate::arith::{cast, Scalar};

/// Algebraic integer `(x + y*sqrt(disc))/2` of an imaginary quadratic field.
///
/// Integrality in the maximal order is the parity condition `x = y*disc (mod 2)`,
/// checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticInteger<T> {
    x: T,
    y: T,
    field: QuadraticField,
}

impl<T: Scalar> QuadraticInteger<T> {
    pub fn new(field: QuadraticField, x: T, y: T) -> Result<Self, QuadFieldError> {
        let d = T::from_int(field.disc());
        if !(x.clone() - y.clone() * d).is_even() {
            return Err(QuadFieldError::NonIntegral {
                x: x.to_string(),
                y: y.to_string(),
                disc: field.disc(),
            });
        }
        Ok(Self { x, y, field })
    }

    /// Element `u + v*omega` in the integral basis `{1, omega}`.
    pub fn from_omega(field: QuadraticField, u: T, v: T) -> Self {
        let x = T::from_int(2) * u + T::from_int(field.omega_trace()) * v.clone();
        Self { x, y: v, field }
    }

    pub fn from_integer(field: QuadraticField, n: T) -> Self {
        Self {
            x: T::from_int(2) * n,
            y: T::zero(),
            field,
        }
    }

    pub fn one(field: QuadraticField) -> Self {
        Self::from_integer(field, T::one())
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn y(&self) -> &T {
        &self.y
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    /// `alpha + conj(alpha)`, which equals `x`.
    pub fn trace(&self) -> T {
        self.x.clone()
    }

    pub fn norm(&self) -> T {
        let d = T::from_int(self.field.disc());
        (self.x.clone() * self.x.clone() - d * self.y.clone() * self.y.clone()) / T::from_int(4)
    }

    pub fn conj(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: -self.y.clone(),
            field: self.field,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Coordinates `(u, v)` with `self = u + v*omega`.
    pub fn omega_coords(&self) -> (T, T) {
        let u = (self.x.clone() - T::from_int(self.field.omega_trace()) * self.y.clone())
            / T::from_int(2);
        (u, self.y.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self / n` when it lies in the maximal order.
    pub fn div_rational(&self, n: &T) -> Option<Self> {
        let (u, v) = self.omega_coords();
        if !(u.is_multiple_of(n) && v.is_multiple_of(n)) {
            return None;
        }
        Some(Self::from_omega(self.field, u / n.clone(), v / n.clone()))
    }

    /// Whether `other` divides `self` in the maximal order.
    pub fn is_divisible_by(&self, other: &Self) -> bool {
        let n = other.norm();
        if n.is_zero() {
            return self.is_zero();
        }
        (self * &other.conj()).div_rational(&n).is_some()
    }

    /// Change the coordinate scalar type.
    pub fn convert<U: Scalar>(&self) -> QuadraticInteger<U> {
        QuadraticInteger {
            x: cast(&self.x),
            y: cast(&self.y),
            field: self.field,
        }
    }

    /// Units of the maximal order (the `w` roots of unity), starting at 1.
    pub fn units(field: QuadraticField) -> Vec<Self> {
        let generator = match field.disc() {
            -4 => Self::from_omega(field, T::zero(), T::one()),
            -3 => Self::from_omega(field, T::zero(), T::one()),
            _ => Self::from_integer(field, -T::one()),
        };
        let mut out = vec![Self::one(field)];
        let mut cur = generator.clone();
        while cur != Self::one(field) {
            out.push(cur.clone());
            cur = &cur * &generator;
        }
        out
    }

    /// Canonical representative of `self` up to units and complex conjugation:
    /// among associates of `self` and of its conjugate with `x >= 0` and
    /// `y >= 0`, the one with smallest `y` (then smallest `x`).
    pub fn canonical_associate(&self) -> Self {
        let units = Self::units(self.field);
        let conj = self.conj();
        units
            .iter()
            .flat_map(|u| [u * self, u * &conj])
            .filter(|a| !a.x.is_negative() && !a.y.is_negative())
            .min_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)))
            .expect("some associate lies in the closed first quadrant")
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.field, other.field,
            "arithmetic between elements of different fields"
        );
    }
}

impl<T: Scalar> Add for &QuadraticInteger<T> {
    type Output = QuadraticInteger<T>;

    fn add(self, rhs: Self) -> Self::Output {
        self.same_field(rhs);
        QuadraticInteger {
            x: self.x.clone() + rhs.x.clone(),
            y: self.y.clone() + rhs.y.clone(),
            field: self.field,
        }
    }
}

impl<T: Scalar> Sub for &QuadraticInteger<T> {
    type Output = QuadraticInteger<T>;

    fn sub(self, rhs: Self) -> Self::Output {
        self.same_field(rhs);
        QuadraticInteger {
            x: self.x.clone() - rhs.x.clone(),
            y: self.y.clone() - rhs.y.clone(),
            field: self.field,
        }
    }
}

impl<T: Scalar> Mul for &QuadraticInteger<T> {
    type Output = QuadraticInteger<T>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.same_field(rhs);
        let d = T::from_int(self.field.disc());
        let two = T::from_int(2);
        let x = (self.x.clone() * rhs.x.clone() + d * self.y.clone() * rhs.y.clone()) / two.clone();
        let y = (self.x.clone() * rhs.y.clone() + rhs.x.clone() * self.y.clone()) / two;
        QuadraticInteger {
            x,
            y,
            field: self.field,
        }
    }
}

impl<T: Scalar> Neg for &QuadraticInteger<T> {
    type Output = QuadraticInteger<T>;

    fn neg(self) -> Self::Output {
        QuadraticInteger {
            x: -self.x.clone(),
            y: -self.y.clone(),
            field: self.field,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for QuadraticInteger<T> {
            type Output = QuadraticInteger<T>;

            fn $m(self, rhs: Self) -> Self::Output {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> fmt::Display for QuadraticInteger<T> {
    /// Renders as `(x + y*sqrt(disc))/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({} {} {}*sqrt({}))/2",
            self.x,
            sign,
            self.y.abs(),
            self.field.disc()
        )
    }
}
