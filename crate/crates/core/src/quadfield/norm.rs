//! Prime splitting, prime ideals as forms, norm representation and principal
//! generators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{BigForm, Form, QuadFieldError, QuadInt, QuadraticField, SmallQuadInt};
use crate::arith::{big_pow, exact_sqrt, is_prime, isqrt, kronecker};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitKind::Split => "split",
            SplitKind::Inert => "inert",
            SplitKind::Ramified => "ramified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSplitting {
    pub p: u64,
    pub kind: SplitKind,
    /// Order of the class of a prime above `p`; `None` when `p` is inert.
    pub ideal_class_order: Option<u64>,
}

pub fn split_kind(field: QuadraticField, p: u64) -> SplitKind {
    match kronecker(field.disc(), p) {
        1 => SplitKind::Split,
        -1 => SplitKind::Inert,
        _ => SplitKind::Ramified,
    }
}

pub fn splitting(field: QuadraticField, p: u64) -> Result<PrimeSplitting, QuadFieldError> {
    if !is_prime(p) {
        return Err(QuadFieldError::NotPrime(p));
    }
    let kind = split_kind(field, p);
    let ideal_class_order = prime_form(field, p).map(|f| f.order());
    Ok(PrimeSplitting {
        p,
        kind,
        ideal_class_order,
    })
}

/// Residue `t0` of `omega` at the distinguished prime above `p`: the smallest
/// root of the minimal polynomial of `omega` modulo `p`.
///
/// The distinguished prime is `P = (p, omega - t0)`. `None` when `p` is inert.
pub fn distinguished_root(field: QuadraticField, p: u64) -> Option<u64> {
    field.omega_roots_mod(p).first().copied()
}

/// Form `(p, tr(omega - t0), nm(omega - t0)/p)` of the distinguished prime above `p`
/// (unreduced). `None` when `p` is inert.
pub fn prime_form(field: QuadraticField, p: u64) -> Option<Form> {
    let t0 = distinguished_root(field, p)? as i64;
    let p = p as i64;
    let tr = field.omega_trace();
    let nm = field.omega_norm();
    let b = tr - 2 * t0;
    let c = (t0 * t0 - tr * t0 + nm) / p;
    let form = Form::new(p, b, c);
    debug_assert_eq!(form.discriminant(), field.disc());
    Some(form)
}

/// Form of the ideal `P^n` for the distinguished prime `P` above a split `p`,
/// with leading coefficient `p^n` (unreduced).
pub fn split_prime_power_form(field: QuadraticField, p: u64, n: u32) -> BigForm {
    let t0 = distinguished_root(field, p).expect("split prime has a root");
    let t = field.lift_omega_root(p, t0, n);
    let a = big_pow(p, n);
    let b = BigInt::from(field.omega_trace()) - BigInt::from(2) * &t;
    let c = field.omega_minpoly(&t) / &a;
    BigForm::new(a, b, c)
}

/// Which of the three norm routes held for a prime `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormRoutes {
    /// `l` splits and the prime above it is principal.
    pub principal_class: bool,
    /// `l` is represented by the principal form.
    pub principal_form: bool,
    /// Exhaustive search of `(x^2 - disc*y^2)/4 = l`.
    pub brute_force: bool,
}

impl NormRoutes {
    pub fn agree(&self) -> bool {
        self.principal_class == self.principal_form && self.principal_form == self.brute_force
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormTest {
    pub l: u64,
    pub is_norm: bool,
    /// Canonical element of norm `l` when one exists.
    pub witness: Option<SmallQuadInt>,
    pub routes: NormRoutes,
}

/// Decide whether the prime `l` is the norm of an integral element, by three
/// independent routes that must agree.
pub fn is_norm(field: QuadraticField, l: u64) -> Result<NormTest, QuadFieldError> {
    if !is_prime(l) {
        return Err(QuadFieldError::NotPrime(l));
    }
    if field.ramifies(l) {
        return Err(QuadFieldError::RamifiedPrime(l));
    }
    let principal_class = split_kind(field, l) == SplitKind::Split
        && prime_form(field, l).is_some_and(|f| f.is_principal());
    let by_form = represent_by_principal_form(field, l);
    let by_search = norm_search(field, l);
    let routes = NormRoutes {
        principal_class,
        principal_form: by_form.is_some(),
        brute_force: by_search.is_some(),
    };
    if !routes.agree() {
        return Err(QuadFieldError::RouteDisagreement { l, routes });
    }
    if let (Some(a), Some(b)) = (&by_form, &by_search) {
        debug_assert_eq!(a.canonical_associate(), *b);
    }
    Ok(NormTest {
        l,
        is_norm: routes.brute_force,
        witness: by_search,
        routes,
    })
}

fn y_search_bound(field: QuadraticField, n: i64) -> i64 {
    // |y| <= ceil(2 sqrt(n/|disc|)) + 1
    isqrt(&(4 * n / field.disc().abs())).expect("nonnegative") + 2
}

/// `X + Y*omega` with `X^2 + tr XY + nm Y^2 = l`, scanning `Y`.
fn represent_by_principal_form(field: QuadraticField, l: u64) -> Option<SmallQuadInt> {
    let l = l as i64;
    let disc = field.disc();
    let b0 = field.omega_trace();
    let principal = Form::principal(&disc);
    for y in 0..=y_search_bound(field, l) {
        // 4 f(X, Y) = (2X + b0 Y)^2 - disc Y^2
        let Some(s) = exact_sqrt(&(4 * l + disc * y * y)) else {
            continue;
        };
        for s in [s, -s] {
            if (s - b0 * y).rem_euclid(2) == 0 {
                let x = (s - b0 * y) / 2;
                debug_assert_eq!(principal.eval(&x, &y), l);
                return Some(SmallQuadInt::from_omega(field, x, y));
            }
        }
    }
    None
}

/// Brute force over the box `0 <= x <= 2 sqrt(l) + 1`, `0 <= y <= bound`.
fn norm_search(field: QuadraticField, l: u64) -> Option<SmallQuadInt> {
    let l = l as i64;
    let disc = field.disc();
    let x_max = isqrt(&(4 * l)).expect("nonnegative") + 1;
    let mut best: Option<SmallQuadInt> = None;
    for y in 0..=y_search_bound(field, l) {
        for x in 0..=x_max {
            if x * x - disc * y * y == 4 * l && (x - disc * y).rem_euclid(2) == 0 {
                let cand = SmallQuadInt::new(field, x, y)
                    .expect("parity checked")
                    .canonical_associate();
                best = Some(match best {
                    Some(b) if (b.y(), b.x()) <= (cand.y(), cand.x()) => b,
                    _ => cand,
                });
            }
        }
    }
    best
}

/// Generator of `P^n` for the distinguished prime `P` above `p`, in canonical
/// form (up to units and conjugation).
///
/// For split `p` the ideal `P^n` is written as a form of leading coefficient
/// `p^n`; it is principal exactly when the form reduces to the principal form,
/// and the reduction matrix yields the representation of 1 that gives the
/// generator.
pub fn principal_generator(field: QuadraticField, p: u64, n: u32) -> Result<QuadInt, QuadFieldError> {
    if !is_prime(p) {
        return Err(QuadFieldError::NotPrime(p));
    }
    if n == 0 {
        return Ok(QuadInt::one(field));
    }
    let gen = match split_kind(field, p) {
        SplitKind::Inert => QuadInt::from_integer(field, big_pow(p, n)),
        SplitKind::Split => generator_of_form_ideal(field, &split_prime_power_form(field, p, n))
            .ok_or(QuadFieldError::NotPrincipal { p, n })?,
        SplitKind::Ramified => {
            // P^2 = (p)
            let base = QuadInt::from_integer(field, big_pow(p, n / 2));
            if n.is_multiple_of(2) {
                base
            } else {
                let form = prime_form(field, p).expect("ramified prime has a form").convert();
                let g = generator_of_form_ideal(field, &form)
                    .ok_or(QuadFieldError::NotPrincipal { p, n })?;
                &base * &g
            }
        }
    };
    Ok(gen.canonical_associate())
}

/// Generator of the ideal `A Z + (omega - t) Z` whose form is `(A, tr - 2t, *)`.
fn generator_of_form_ideal(field: QuadraticField, form: &BigForm) -> Option<QuadInt> {
    let (reduced, m) = form.reduce_with_transform();
    if reduced != BigForm::principal(&BigInt::from(field.disc())) {
        return None;
    }
    let (x, y) = (m[0][0].clone(), m[1][0].clone());
    debug_assert!(form.eval(&x, &y).is_one());
    // omega - t = omega + (b - tr)/2
    let shift = (&form.b - BigInt::from(field.omega_trace())) / BigInt::from(2);
    let u = &x * &form.a + &y * shift;
    let gen = QuadInt::from_omega(field, u, y);
    debug_assert_eq!(gen.norm(), form.a);
    Some(gen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    fn xy(a: &QuadInt) -> (i64, i64) {
        (a.x().try_into().unwrap(), a.y().try_into().unwrap())
    }

    #[test]
    fn splitting_examples() {
        let s = splitting(k(-7), 11).unwrap();
        assert_eq!((s.kind, s.ideal_class_order), (SplitKind::Split, Some(1)));
        let s = splitting(k(-23), 5).unwrap();
        assert_eq!((s.kind, s.ideal_class_order), (SplitKind::Inert, None));
        let s = splitting(k(-4), 2).unwrap();
        assert_eq!(s.kind, SplitKind::Ramified);
        assert_eq!(splitting(k(-4), 9), Err(QuadFieldError::NotPrime(9)));
    }

    #[test]
    fn norm_examples() {
        let t = is_norm(k(-4), 5).unwrap();
        assert!(t.is_norm);
        let w = t.witness.unwrap();
        assert_eq!((*w.x(), *w.y()), (4, 1)); // 2 + sqrt(-1)
        assert_eq!(w.norm(), 5);

        assert!(!is_norm(k(-23), 5).unwrap().is_norm);

        let t = is_norm(k(-23), 59).unwrap();
        let w = t.witness.unwrap();
        assert_eq!((*w.x(), *w.y()), (12, 2)); // 6 + sqrt(-23)

        assert_eq!(is_norm(k(-7), 7), Err(QuadFieldError::RamifiedPrime(7)));
    }

    #[test]
    fn generator_examples() {
        let g = principal_generator(k(-7), 11, 1).unwrap();
        assert_eq!(xy(&g), (4, 2)); // 2 + sqrt(-7)
        assert_eq!(
            principal_generator(k(-20), 3, 1),
            Err(QuadFieldError::NotPrincipal { p: 3, n: 1 })
        );
        let g = principal_generator(k(-20), 3, 2).unwrap();
        assert_eq!(xy(&g), (4, 1)); // 2 + sqrt(-5)
        assert_eq!(g.norm(), BigInt::from(9));
    }

    #[test]
    fn generator_generates_the_prime_power() {
        for d in [-3i64, -4, -7, -8, -15, -20, -23, -24, -47, -84] {
            let f = k(d);
            for p in crate::arith::primes_up_to(40) {
                let order = prime_form(f, p).map(|pf| pf.order()).unwrap_or(1);
                for n in 1..=(2 * order as u32) {
                    let res = principal_generator(f, p, n);
                    let principal = (n as u64).is_multiple_of(order);
                    match split_kind(f, p) {
                        SplitKind::Split | SplitKind::Ramified => assert_eq!(res.is_ok(), principal, "d={d} p={p} n={n}"),
                        SplitKind::Inert => assert!(res.is_ok()),
                    }
                    let Ok(g) = res else { continue };
                    let norm_p = if split_kind(f, p) == SplitKind::Inert { 2 * n } else { n };
                    assert_eq!(g.norm(), big_pow(p, norm_p));
                    if split_kind(f, p) == SplitKind::Split {
                        // not divisible by p, so (g) is a power of a single prime
                        assert!(g.div_rational(&BigInt::from(p)).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_form_matches_composition() {
        let f = k(-23);
        for p in [2u64, 3, 13] {
            let base = prime_form(f, p).unwrap();
            for n in 1..6 {
                let power = split_prime_power_form(f, p, n);
                assert_eq!(power.a, big_pow(p, n));
                assert_eq!(power.reduce().convert::<i64>(), base.pow(n as u64), "p={p} n={n}");
            }
        }
    }
}
