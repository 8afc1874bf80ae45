//! Scalar trait and elementary number theory on machine and big integers.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as the coordinate type of quadratic integers
/// and binary quadratic forms.
///
/// Implemented for `i64`, `i128` and [`BigInt`]. Machine integers are fine for
/// class-group work at desk scale; Weil numbers of large `q` need `BigInt`.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Hash
    + Integer
    + Roots
    + Signed
    + FromPrimitive
    + ToPrimitive
    + ToBigInt
    + Send
    + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type holds an i64")
    }

    fn big(&self) -> BigInt {
        self.to_bigint().expect("integers convert to BigInt")
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Integer
        + Roots
        + Signed
        + FromPrimitive
        + ToPrimitive
        + ToBigInt
        + Send
        + Sync
{
}

/// Convert between scalar types. Panics if the value does not fit.
pub fn cast<T: Scalar, U: Scalar>(t: &T) -> U {
    U::from_str_radix(&t.to_string(), 10)
        .ok()
        .unwrap_or_else(|| panic!("{t} does not fit the target scalar"))
}

/// Integer square root, `None` when `n` is negative.
pub fn isqrt<T: Scalar>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    Some(n.sqrt())
}

/// Exact square root when `n` is a perfect square.
pub fn exact_sqrt<T: Scalar>(n: &T) -> Option<T> {
    let r = isqrt(n)?;
    if r.clone() * r.clone() == *n {
        Some(r)
    } else {
        None
    }
}

/// `p`-adic valuation of a nonzero integer. Returns `None` for zero.
pub fn valuation<T: Scalar>(x: &T, p: &T) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        cur = q;
        v += 1;
    }
}

/// Inverse of `a` modulo `m`, if it exists. The result lies in `[0, m)`.
pub fn mod_inverse<T: Scalar>(a: &T, m: &T) -> Option<T> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes `<= bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((l, e))` when `n = l^e` with `l` prime and `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(l, e)] => Some((*l, *e)),
        _ => None,
    }
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Kronecker symbol `(a | n)` for `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i8 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut n = n;
    let mut result: i8 = 1;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a.rem_euclid(2) == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // Jacobi symbol (a | n) with n odd.
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// A square root of `a` modulo an odd prime `p` (Tonelli-Shanks), if `a` is a square.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulm(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r)
}

/// Multiplicative order of `a` modulo the prime `p`; `None` when `p | a`.
pub fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let mut order = p - 1;
    for (q, _) in factorize(p - 1) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Whether `a` is a `d`-th power modulo the prime `p`, by Euler's criterion.
///
/// Residue zero counts as a `d`-th power (`0 = 0^d`).
pub fn is_power_residue(a: u64, d: u64, p: u64) -> bool {
    let a = a % p;
    if a == 0 {
        return true;
    }
    let g = (p - 1).gcd(&d);
    pow_mod(a, (p - 1) / g, p) == 1
}

/// Same predicate as [`is_power_residue`] by enumerating every `x^d mod p`.
pub fn is_power_residue_by_enumeration(a: u64, d: u64, p: u64) -> bool {
    let a = a % p;
    (0..p).any(|x| pow_mod(x, d, p) == a)
}

/// `p^k` as a big integer.
pub fn big_pow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Least common multiple of a list of positive integers (1 for the empty list).
pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, |acc, x| acc.lcm(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(10_000);
        let by_test: Vec<u64> = (0..=10_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, by_test);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn kronecker_matches_residue_enumeration() {
        for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
            for a in -60i64..60 {
                let r = a.rem_euclid(p as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if (1..p).any(|x| x * x % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expected, "({a} | {p})");
            }
        }
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn tonelli_shanks_roots_square() {
        for p in primes_up_to(500).into_iter().filter(|&p| p > 2) {
            for a in 0..p {
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(r * r % p, a),
                    None => assert!((0..p).all(|x| x * x % p != a)),
                }
            }
        }
    }

    #[test]
    fn cubic_residues_mod_31() {
        assert!(is_power_residue(2, 3, 31));
        assert!(is_power_residue_by_enumeration(2, 3, 31));
        assert!(!is_power_residue(5, 3, 31));
        assert!(!is_power_residue_by_enumeration(5, 3, 31));
        assert_eq!(pow_mod(5, 3, 31), 1);
    }

    #[test]
    fn power_residue_routes_agree() {
        for p in primes_up_to(300) {
            for d in 2..8 {
                for a in 0..p.min(60) {
                    assert_eq!(
                        is_power_residue(a, d, p),
                        is_power_residue_by_enumeration(a, d, p),
                        "a={a} d={d} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn order_and_factor_helpers() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 7), Some(6));
        assert_eq!(multiplicative_order(14, 7), None);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(343), Some((7, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(valuation(&1331i64, &11), Some(3));
        assert_eq!(valuation(&0i64, &11), None);
        assert_eq!(mod_inverse(&3i64, &7), Some(5));
        assert_eq!(exact_sqrt(&BigInt::from(1331i64 * 1331)), Some(BigInt::from(1331)));
        assert_eq!(exact_sqrt(&-4i64), None);
    }
}
