use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::QuadFieldError;
use crate::arith::{self, big_pow, is_squarefree};

/// Imaginary quadratic field `Q(sqrt(disc))` with `disc` a negative fundamental
/// discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    disc: i64,
    w: u8,
}

impl QuadraticField {
    /// Build the field of a negative fundamental discriminant.
    ///
    /// Non-fundamental discriminants are rejected; the error carries the
    /// fundamental discriminant of the same field.
    pub fn new(disc: i64) -> Result<Self, QuadFieldError> {
        if disc >= 0 {
            return Err(QuadFieldError::NotImaginary(disc));
        }
        if !is_fundamental(disc) {
            return Err(QuadFieldError::NonFundamentalDiscriminant {
                disc,
                fundamental: fundamental_discriminant(disc),
            });
        }
        let w = match disc {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        Ok(Self { disc, w })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Number of roots of unity in the field.
    pub fn w(&self) -> u8 {
        self.w
    }

    pub fn abs_disc(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    /// Trace of `omega`, the second element of the integral basis `{1, omega}`.
    ///
    /// `omega = (1 + sqrt(disc))/2` when `disc` is odd, `sqrt(disc)/2` otherwise.
    pub fn omega_trace(&self) -> i64 {
        self.disc.rem_euclid(2)
    }

    /// Norm of `omega`.
    pub fn omega_norm(&self) -> i64 {
        if self.omega_trace() == 1 {
            (1 - self.disc) / 4
        } else {
            -self.disc / 4
        }
    }

    /// Evaluate the minimal polynomial `t^2 - tr(omega) t + nm(omega)` of `omega`.
    pub fn omega_minpoly(&self, t: &BigInt) -> BigInt {
        t * t - BigInt::from(self.omega_trace()) * t + BigInt::from(self.omega_norm())
    }

    /// Roots of the minimal polynomial of `omega` modulo the prime `p`, ascending.
    ///
    /// Two roots when `p` splits, one when it ramifies, none when inert.
    pub fn omega_roots_mod(&self, p: u64) -> Vec<u64> {
        let tr = self.omega_trace().rem_euclid(p as i64) as u64;
        let nm = self.omega_norm().rem_euclid(p as i64) as u64;
        if p == 2 {
            return (0..2).filter(|&t| (t * t + 2 * p - tr * t + nm).is_multiple_of(p)).collect();
        }
        let disc_mod = self.disc.rem_euclid(p as i64) as u64;
        let Some(s) = arith::sqrt_mod_prime(disc_mod, p) else {
            return Vec::new();
        };
        // t = (tr + s) / 2 mod p
        let inv2 = p.div_ceil(2);
        let mut roots: Vec<u64> = [s, (p - s) % p]
            .iter()
            .map(|&r| ((tr + r) % p) * inv2 % p)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    /// Hensel-lift a simple root `t0` of the minimal polynomial of `omega` modulo
    /// `p` to a root modulo `p^precision`.
    ///
    /// Panics if `t0` is not a root mod `p` or is a double root (ramified `p`).
    pub fn lift_omega_root(&self, p: u64, t0: u64, precision: u32) -> BigInt {
        let modulus = big_pow(p, precision);
        let pb = BigInt::from(p);
        let mut t = BigInt::from(t0);
        assert!(
            self.omega_minpoly(&t).mod_floor(&pb).is_zero(),
            "{t0} is not a root of the omega polynomial mod {p}"
        );
        let tr = BigInt::from(self.omega_trace());
        loop {
            let f = self.omega_minpoly(&t).mod_floor(&modulus);
            if f.is_zero() {
                return t.mod_floor(&modulus);
            }
            let df = BigInt::from(2) * &t - &tr;
            let inv = arith::mod_inverse(&df, &modulus)
                .unwrap_or_else(|| panic!("root {t0} mod {p} is not simple"));
            t = (t - f * inv).mod_floor(&modulus);
        }
    }

    /// Whether `p` divides the discriminant.
    pub fn ramifies(&self, p: u64) -> bool {
        self.disc.unsigned_abs().is_multiple_of(p)
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.disc)
    }
}

/// Whether `disc` is a fundamental discriminant (either sign, `disc != 0, 1`).
pub fn is_fundamental(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => is_squarefree(disc.unsigned_abs()),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental discriminant of `Q(sqrt(n))` for a non-square `n`.
pub fn fundamental_discriminant(n: i64) -> i64 {
    assert!(n != 0, "zero has no quadratic field");
    let mut core: i64 = if n < 0 { -1 } else { 1 };
    for (p, e) in arith::factorize(n.unsigned_abs()) {
        if e % 2 == 1 {
            core *= p as i64;
        }
    }
    if core.rem_euclid(4) == 1 {
        core
    } else {
        4 * core
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_count() {
        assert_eq!(QuadraticField::new(-4).unwrap().w(), 4);
        assert_eq!(QuadraticField::new(-3).unwrap().w(), 6);
        assert_eq!(QuadraticField::new(-7).unwrap().w(), 2);
    }

    #[test]
    fn rejects_non_fundamental() {
        assert_eq!(
            QuadraticField::new(-12),
            Err(QuadFieldError::NonFundamentalDiscriminant {
                disc: -12,
                fundamental: -3
            })
        );
        assert_eq!(
            QuadraticField::new(-16),
            Err(QuadFieldError::NonFundamentalDiscriminant {
                disc: -16,
                fundamental: -4
            })
        );
        assert!(matches!(
            QuadraticField::new(-5),
            Err(QuadFieldError::NonFundamentalDiscriminant { fundamental: -20, .. })
        ));
        assert_eq!(QuadraticField::new(5), Err(QuadFieldError::NotImaginary(5)));
    }

    #[test]
    fn fundamental_discriminants_below_100() {
        let got: Vec<i64> = (-100..0).rev().filter(|&d| is_fundamental(d)).take(12).collect();
        assert_eq!(got, vec![-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -35]);
    }

    #[test]
    fn hensel_lift_is_root() {
        let k = QuadraticField::new(-7).unwrap();
        for p in [2u64, 11, 23, 29] {
            let roots = k.omega_roots_mod(p);
            assert_eq!(roots.len(), 2, "p={p}");
            for &t0 in &roots {
                let t = k.lift_omega_root(p, t0, 9);
                assert!(k.omega_minpoly(&t).mod_floor(&big_pow(p, 9)).is_zero());
                assert_eq!(t.mod_floor(&BigInt::from(p)), BigInt::from(t0));
            }
        }
        assert!(k.omega_roots_mod(13).is_empty());
        assert_eq!(k.omega_roots_mod(7).len(), 1);
    }
}
