//! Seeded commuting families built from one companion matrix.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mat_mul, Matrix, TorsionEndomorphism, TorsionError, TorsionModule};
use crate::arith::is_prime;

const RETRIES: usize = 1000;

/// `d` commuting `2d x 2d` matrices modulo `l^exp`.
///
/// Pick monic quadratics `g_1, ..., g_d` that are pairwise coprime modulo `l`
/// and let `C` be the companion matrix of `f = prod g_i`. The family is
/// `M_i = g_i(C)`. When `l >= 2d` each `g_i` is a product of two linear factors
/// with all `2d` roots distinct mod `l`. For smaller `l` the quadratics are
/// sampled at random, which may include irreducible ones.
///
/// Pairwise coprimality mod `l` makes the family decompose: `ker M_i` is the
/// `g_i`-primary part of `(Z/l^exp)^(2d)`, free of rank 2.
pub fn fixture_commuting_family(
    l: u64,
    exp: u32,
    d: usize,
    seed: u64,
) -> Result<Vec<TorsionEndomorphism>, TorsionError> {
    if !is_prime(l) {
        return Err(TorsionError::InvalidModule(format!("{l} is not prime")));
    }
    if exp == 0 || d == 0 {
        return Err(TorsionError::InvalidModule("exponent and d must be positive".into()));
    }
    let n = l
        .checked_pow(exp)
        .ok_or_else(|| TorsionError::InvalidModule("modulus overflows".into()))?;
    let module = TorsionModule::new(n, 2 * d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = if l >= 2 * d as u64 {
        split_factors(&mut rng, l, n, d)
    } else {
        coprime_factors(&mut rng, l, n, d)?
    };
    let f = factors.iter().fold(vec![1u64], |acc, g| poly_mul(&acc, g, n));
    let c = companion(&f, n);
    let c2 = mat_mul(&c, &c, n);
    let r = 2 * d;
    Ok(factors
        .iter()
        .map(|g| {
            // g = X^2 + g[1] X + g[0]
            let m = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            let id = u64::from(i == j);
                            let v = c2[i][j] as u128 + g[1] as u128 * c[i][j] as u128 + g[0] as u128 * id as u128;
                            (v % n as u128) as u64
                        })
                        .collect()
                })
                .collect();
            TorsionEndomorphism::from_reduced(module, m)
        })
        .collect())
}

fn split_factors(rng: &mut ChaCha8Rng, l: u64, n: u64, d: usize) -> Vec<Vec<u64>> {
    let residues = sample(rng, l as usize, 2 * d);
    let roots: Vec<u64> = residues
        .iter()
        .map(|r| (r as u64 + l * rng.gen_range(0..n / l)) % n)
        .collect();
    roots
        .chunks(2)
        .map(|ab| {
            let (a, b) = (ab[0], ab[1]);
            let c0 = ((a as u128 * b as u128) % n as u128) as u64;
            let c1 = (2 * n - a - b) % n;
            vec![c0, c1, 1]
        })
        .collect()
}

fn coprime_factors(rng: &mut ChaCha8Rng, l: u64, n: u64, d: usize) -> Result<Vec<Vec<u64>>, TorsionError> {
    for _ in 0..RETRIES {
        let cands: Vec<Vec<u64>> = (0..d)
            .map(|_| vec![rng.gen_range(0..n), rng.gen_range(0..n), 1])
            .collect();
        let ok = (0..d).all(|i| (i + 1..d).all(|j| coprime_mod(&cands[i], &cands[j], l)));
        if ok {
            return Ok(cands);
        }
    }
    Err(TorsionError::BadSplit(format!(
        "no {d} pairwise coprime quadratics found modulo {l} after {RETRIES} tries"
    )))
}

fn poly_mul(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % n as u128) as u64;
        }
    }
    out
}

/// Companion matrix of a monic `f` (ascending coefficients).
fn companion(f: &[u64], n: u64) -> Matrix {
    let m = f.len() - 1;
    let mut c = vec![vec![0u64; m]; m];
    for i in 1..m {
        c[i][i - 1] = 1;
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[m - 1] = (n - f[i] % n) % n;
    }
    c
}

/// `gcd(a, b) = 1` over `F_l`.
fn coprime_mod(a: &[u64], b: &[u64], l: u64) -> bool {
    let norm = |p: &[u64]| -> Vec<u64> {
        let mut v: Vec<u64> = p.iter().map(|c| c % l).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (norm(a), norm(b));
    while !b.is_empty() {
        // a mod b
        let inv = crate::arith::pow_mod(*b.last().unwrap(), l - 2, l);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * inv % l;
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + l * l - c * bc % l) % l;
            }
            a = norm(&a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}
