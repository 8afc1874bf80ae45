//! Positive definite binary quadratic forms `a x^2 + b x y + c y^2`.
//!
//! Reduced forms of discriminant `D < 0` stand for ideal classes of the maximal
//! order of `Q(sqrt(D))`; Gauss composition followed by reduction is the group law.

use std::fmt;


use crate::arith::{cast, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// Integer 2x2 matrix `[[m00, m01], [m10, m11]]` of a change of variables.
pub type Transform<T> = [[T; 2]; 2];

impl<T: Scalar> QuadForm<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    /// The form of discriminant `disc` with `c` solved for; `None` if not integral.
    pub fn from_ab(a: T, b: T, disc: &T) -> Option<Self> {
        let num = b.clone() * b.clone() - disc.clone();
        let den = T::from_int(4) * a.clone();
        if den.is_zero() || !num.is_multiple_of(&den) {
            return None;
        }
        Some(Self { a, b, c: num / den })
    }

    /// Principal form `(1, b0, c0)` with `b0 = disc mod 2`.
    pub fn principal(disc: &T) -> Self {
        let b0 = disc.mod_floor(&T::from_int(2));
        Self::from_ab(T::one(), b0, disc).expect("principal form exists for every discriminant")
    }

    pub fn discriminant(&self) -> T {
        self.b.clone() * self.b.clone() - T::from_int(4) * self.a.clone() * self.c.clone()
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.a.clone() * x.clone() * x.clone()
            + self.b.clone() * x.clone() * y.clone()
            + self.c.clone() * y.clone() * y.clone()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// `|b| <= a <= c`, with `b >= 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        if ab > self.a || self.a > self.c {
            return false;
        }
        if ab == self.a || self.a == self.c {
            return !self.b.is_negative();
        }
        true
    }

    pub fn is_principal(&self) -> bool {
        self.reduce() == Self::principal(&self.discriminant())
    }

    /// Opposite class `(a, -b, c)`, reduced.
    pub fn inverse(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.c.clone()).reduce()
    }

    pub fn reduce(&self) -> Self {
        self.reduce_with_transform().0
    }

    /// Reduce, returning the reduced form `g` and the unimodular matrix `M`
    /// with `g(X, Y) = self(M * (X, Y))`.
    pub fn reduce_with_transform(&self) -> (Self, Transform<T>) {
        assert!(self.a.is_positive(), "reduction needs a positive definite form");
        let (zero, one) = (T::zero(), T::one());
        let mut f = self.clone();
        let mut m = [[one.clone(), zero.clone()], [zero.clone(), one.clone()]];
        loop {
            // x -> x + k y brings b into (-a, a].
            let two_a = T::from_int(2) * f.a.clone();
            let k = (f.a.clone() - f.b.clone()).div_floor(&two_a);
            if !k.is_zero() {
                let b = f.b.clone() + two_a * k.clone();
                let c = f.a.clone() * k.clone() * k.clone() + f.b.clone() * k.clone() + f.c.clone();
                f = Self::new(f.a.clone(), b, c);
                m = mat_mul(&m, &[[one.clone(), k], [zero.clone(), one.clone()]]);
            }
            let swap = f.a > f.c || (f.a == f.c && f.b.is_negative());
            if !swap {
                return (f, m);
            }
            // (x, y) -> (-y, x)
            f = Self::new(f.c.clone(), -f.b.clone(), f.a.clone());
            m = mat_mul(&m, &[[zero.clone(), -one.clone()], [one.clone(), zero.clone()]]);
        }
    }

    /// Gauss composition without the final reduction.
    ///
    /// When `gcd(a1, a2, (b1 + b2)/2) = 1` the result is the form of the product
    /// of the two ideals, with leading coefficient `a1 * a2`.
    pub fn compose_unreduced(&self, other: &Self) -> Self {
        let disc = self.discriminant();
        debug_assert_eq!(disc, other.discriminant(), "composition needs equal discriminants");
        let (f1, f2) = if self.a > other.a { (other, self) } else { (self, other) };
        let two = T::from_int(2);
        let s = (f1.b.clone() + f2.b.clone()) / two.clone();
        let n = f2.b.clone() - s.clone();
        let (y1, d) = if f2.a.is_multiple_of(&f1.a) {
            (T::zero(), f1.a.clone())
        } else {
            let e = f2.a.extended_gcd(&f1.a);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s.is_multiple_of(&d) {
            (T::zero(), -T::one(), d.clone())
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = f1.a.clone() / d1.clone();
        let v2 = f2.a.clone() / d1.clone();
        let r = (y1 * y2 * n - x2 * f2.c.clone()).mod_floor(&v1);
        let b3 = f2.b.clone() + two * v2.clone() * r;
        let a3 = v1 * v2;
        Self::from_ab(a3, b3, &disc).expect("composition yields an integral form")
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.compose_unreduced(other).reduce()
    }

    /// `n`-th power of the class, reduced.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::principal(&self.discriminant());
        let mut base = self.reduce();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Order of the class in the class group.
    pub fn order(&self) -> u64 {
        let id = Self::principal(&self.discriminant());
        let g = self.reduce();
        let mut cur = g.clone();
        let mut n = 1;
        while cur != id {
            cur = cur.compose(&g);
            n += 1;
        }
        n
    }

    pub fn convert<U: Scalar>(&self) -> QuadForm<U> {
        QuadForm::new(cast(&self.a), cast(&self.b), cast(&self.c))
    }
}

fn mat_mul<T: Scalar>(a: &Transform<T>, b: &Transform<T>) -> Transform<T> {
    let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

impl<T: Scalar> fmt::Display for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}
