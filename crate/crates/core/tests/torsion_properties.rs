use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use weilforge::torsion_lab::{
    bezout_witness, check_decomposition, fixture_commuting_family, kernel, kernel_by_enumeration,
    kernel_intersection, TorsionEndomorphism, TorsionModule,
};

fn matrix_strategy(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..1000, rank), rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernel_agrees_with_enumeration_rank2(ni in 0usize..8, m in matrix_strategy(2)) {
        let n = [2u64, 3, 4, 5, 8, 25, 27, 125][ni];
        let e = TorsionEndomorphism::new(TorsionModule::new(n, 2).unwrap(), &m).unwrap();
        let k = kernel(&e);
        let (order, divs) = kernel_by_enumeration(&e);
        prop_assert_eq!(BigUint::from(order), k.order.clone());
        prop_assert_eq!(&divs, &k.elementary_divisors);
        prop_assert_eq!(k.cyclic, divs.len() <= 1);
    }

    #[test]
    fn kernel_agrees_with_enumeration_rank4(ni in 0usize..5, m in matrix_strategy(4)) {
        let n = [2u64, 3, 4, 5, 9][ni];
        let e = TorsionEndomorphism::new(TorsionModule::new(n, 4).unwrap(), &m).unwrap();
        let k = kernel(&e);
        let (order, divs) = kernel_by_enumeration(&e);
        prop_assert_eq!(BigUint::from(order), k.order.clone());
        prop_assert_eq!(&divs, &k.elementary_divisors);
        // kernel order divides n^rank
        prop_assert!((e.module().order() % &k.order) == BigUint::from(0u32));
    }

    #[test]
    fn product_kernel_contains_factor_kernels(seed in 0u64..1000, li in 0usize..3, exp in 1u32..3) {
        let l = [3u64, 5, 7][li];
        let fam = fixture_commuting_family(l, exp, 2, seed).unwrap();
        let prod = fam[0].mul(&fam[1]);
        for g in kernel(&fam[0]).generators {
            prop_assert!(prod.apply(&g).iter().all(|&c| c == 0));
        }
    }
}

/// Seeded families over l in {2,3,5,7}, d in {2,3,4}, N in {1,2,3}.
fn seeded_families() -> Vec<(u64, u32, usize, u64)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < 200 {
        for l in [2u64, 3, 5, 7] {
            for d in [2usize, 3, 4] {
                for exp in [1u32, 2, 3] {
                    if out.len() < 200 {
                        out.push((l, exp, d, seed));
                    }
                }
            }
        }
        seed += 1;
    }
    out
}

#[test]
fn coprime_families_decompose() {
    let mut checked = 0;
    for (l, exp, d, seed) in seeded_families() {
        let Ok(fam) = fixture_commuting_family(l, exp, d, seed) else {
            continue;
        };
        let v = check_decomposition(&fam).unwrap();
        if v.pairwise_coprime {
            assert_eq!(v.product_kernel_order, v.product_of_kernel_orders, "l {l} N {exp} d {d} seed {seed}");
            assert!(v.kernels_intersect_trivially);
            assert!(v.decomposition_holds);
            checked += 1;
        }
        // Bezout witness for a pair forces trivial intersection.
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                if bezout_witness(&fam[i], &fam[j]).unwrap().is_some() {
                    assert!(kernel_intersection(&fam[i], &fam[j]).order.is_one());
                }
            }
        }
        let n = fam[0].module().n();
        if (n as f64).powi(2 * d as i32) <= 5f64.powi(6) {
            for e in &fam {
                let (order, divs) = kernel_by_enumeration(e);
                let k = kernel(e);
                assert_eq!(BigUint::from(order), k.order);
                assert_eq!(divs, k.elementary_divisors);
            }
        }
    }
    assert!(checked > 150, "only {checked} coprime families");
}
