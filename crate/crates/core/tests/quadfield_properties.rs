use num_bigint::BigInt;
use weilforge::arith::{is_prime, primes_up_to};
use weilforge::quadfield::{
    class_group, class_number_by_generation, is_fundamental, is_norm, prime_form,
    principal_generator, reduced_forms, split_kind, splitting, QuadFieldError, SplitKind,
};
use weilforge::{Form, QuadraticField};

fn fundamental_discs(max_abs: i64) -> impl Iterator<Item = i64> {
    (1..=max_abs).map(|d| -d).filter(|&d| is_fundamental(d))
}

#[test]
fn composition_identity_and_inverse_laws() {
    for disc in fundamental_discs(10_000) {
        let id = Form::principal(&disc);
        for f in reduced_forms(disc) {
            assert_eq!(f.compose(&id), f, "identity law, disc {disc}");
            assert_eq!(f.compose(&f.inverse()), id, "inverse law, disc {disc}");
        }
    }
}

#[test]
fn class_number_two_ways() {
    for disc in fundamental_discs(2000) {
        let field = QuadraticField::new(disc).unwrap();
        let g = class_group(field);
        assert_eq!(g.h(), class_number_by_generation(field), "disc {disc}");
        assert_eq!(g.invariant_factors().iter().product::<u64>(), g.h());
    }
    for (disc, h) in [(-4, 1), (-7, 1), (-20, 2), (-23, 3), (-71, 7), (-163, 1)] {
        assert_eq!(class_group(QuadraticField::new(disc).unwrap()).h(), h);
    }
}

#[test]
fn norm_routes_agree() {
    let primes = primes_up_to(500);
    for disc in fundamental_discs(500) {
        let field = QuadraticField::new(disc).unwrap();
        for &l in &primes {
            if field.ramifies(l) {
                continue;
            }
            let t = is_norm(field, l).unwrap_or_else(|e| panic!("disc {disc} l {l}: {e}"));
            if let Some(w) = t.witness {
                assert_eq!(w.norm(), l as i64);
            }
        }
    }
}

#[test]
fn splitting_matches_factorization_mod_p() {
    for disc in [-3i64, -4, -7, -8, -15, -20, -23, -84, -163, -420] {
        let field = QuadraticField::new(disc).unwrap();
        for p in primes_up_to(1000) {
            let roots = (0..p)
                .filter(|&x| ((x * x) as i64 - disc).rem_euclid(p as i64) == 0)
                .count();
            // x^2 - disc for odd p; for p = 2 use x^2 + x + (1 - disc)/4 when disc is odd
            let expected = if p == 2 {
                if disc % 2 == 0 {
                    SplitKind::Ramified
                } else {
                    let c = (1 - disc) / 4;
                    match (0..2).filter(|&x| (x * x + x + c) % 2 == 0).count() {
                        2 => SplitKind::Split,
                        _ => SplitKind::Inert,
                    }
                }
            } else {
                match roots {
                    2 => SplitKind::Split,
                    1 => SplitKind::Ramified,
                    _ => SplitKind::Inert,
                }
            };
            assert_eq!(split_kind(field, p), expected, "disc {disc} p {p}");
        }
    }
}

#[test]
fn generator_norm_equals_ideal_norm() {
    for disc in fundamental_discs(300) {
        let field = QuadraticField::new(disc).unwrap();
        for p in primes_up_to(30) {
            let s = splitting(field, p).unwrap();
            let Some(order) = s.ideal_class_order else { continue };
            for n in 1..=order as u32 {
                match principal_generator(field, p, n) {
                    Ok(g) => {
                        assert_eq!(n as u64 % order, 0);
                        assert_eq!(g.norm(), num_traits::pow(BigInt::from(p), n as usize));
                    }
                    Err(QuadFieldError::NotPrincipal { .. }) => assert_ne!(n as u64 % order, 0),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn prime_forms_have_the_field_discriminant() {
    for disc in fundamental_discs(1000) {
        let field = QuadraticField::new(disc).unwrap();
        for p in primes_up_to(60).into_iter().filter(|&p| is_prime(p)) {
            if let Some(f) = prime_form(field, p) {
                assert_eq!(f.discriminant(), disc);
                assert_eq!(f.a, p as i64);
            }
        }
    }
}

#[test]
fn non_fundamental_rejected_with_payload() {
    match QuadraticField::new(-12) {
        Err(QuadFieldError::NonFundamentalDiscriminant { fundamental, .. }) => assert_eq!(fundamental, -3),
        other => panic!("{other:?}"),
    }
}
