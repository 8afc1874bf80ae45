//! Smith normal form over `Z`, and diagonalization over `Z/l^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer Smith form of an `m x c` matrix: the diagonal `d_0 | d_1 | ...`
/// (length `c`, zero-padded past the rank) and a unimodular `c x c` matrix `V`
/// with `U A V = diag(d)` for some unimodular `U`.
pub fn smith_diagonal(a: &[Vec<BigInt>], cols: usize) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let rows = a.len();
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    let mut diag = vec![BigInt::zero(); cols];
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
            else {
                return (diag, v);
            };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for row in a.iter_mut() {
                row[t] = -row[t].clone();
            }
            for row in v.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
        diag[t] = a[t][t].clone();
    }
    (diag, v)
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `col_j -= q * col_t`.
fn col_axpy(m: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = q * &row[t];
        row[j] -= s;
    }
}

/// Arithmetic in `Z/l^N`, a local ring whose ideals form a chain.
#[derive(Debug, Clone, Copy)]
pub struct PrimePowerRing {
    pub l: u64,
    pub exp: u32,
    pub n: u64,
}

impl PrimePowerRing {
    pub fn new(l: u64, exp: u32) -> Self {
        Self {
            l,
            exp,
            n: l.pow(exp),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.n as u128) as u64
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.n - b) % self.n
    }

    /// `l`-adic valuation; `exp` for zero.
    fn val(&self, a: u64) -> u32 {
        if a == 0 {
            return self.exp;
        }
        let (mut a, mut v) = (a, 0);
        while a % self.l == 0 {
            a /= self.l;
            v += 1;
        }
        v
    }

    fn inv_unit(&self, u: u64) -> u64 {
        crate::arith::mod_inverse(&(u as i128), &(self.n as i128)).expect("unit") as u64
    }

    /// `b / a` for `v(a) <= v(b)`, well defined modulo `l^(N - v(a))`.
    fn quotient(&self, b: u64, a: u64) -> u64 {
        let v = self.val(a);
        let lv = self.l.pow(v);
        let unit = a / lv;
        self.mul(b / lv, self.inv_unit(unit))
    }

    /// Some solution of `A x = b` over `Z/l^N`, or `None`.
    ///
    /// Rows and columns are eliminated around a pivot of least valuation, which
    /// divides every other entry of the trailing block.
    pub fn solve(&self, a: &[Vec<u64>], b: &[u64]) -> Option<Vec<u64>> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut a: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % self.n).collect()).collect();
        let mut b: Vec<u64> = b.iter().map(|x| x % self.n).collect();
        let mut v: Vec<Vec<u64>> = (0..cols)
            .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut rank = 0;
        for t in 0..rows.min(cols) {
            let best = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| (self.val(a[i][j]), i, j));
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            b.swap(t, pi);
            for row in a.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            let p = a[t][t];
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let c = self.quotient(a[i][t], p);
                    for j in t..cols {
                        a[i][j] = self.sub(a[i][j], self.mul(c, a[t][j]));
                    }
                    b[i] = self.sub(b[i], self.mul(c, b[t]));
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let c = self.quotient(a[t][j], p);
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        row[j] = self.sub(row[j], self.mul(c, row[t]));
                    }
                }
            }
            rank = t + 1;
        }
        // diagonal system d_t y_t = b_t
        let mut y = vec![0u64; cols];
        for t in 0..rows {
            if t < rank {
                if self.val(b[t]) < self.val(a[t][t]) {
                    return None;
                }
                y[t] = self.quotient(b[t], a[t][t]);
            } else if b[t] != 0 {
                return None;
            }
        }
        // A V = U^-1 D, so x = V y
        let x = v
            .iter()
            .map(|row| row.iter().zip(&y).fold(0, |acc, (&p, &q)| (acc + self.mul(p, q)) % self.n))
            .collect();
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn smith_examples() {
        let (d, _) = smith_diagonal(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(d, vec![2.into(), 6.into(), 12.into()]);
        let (d, v) = smith_diagonal(&big(&[&[0, 5], &[0, 0]]), 2);
        assert_eq!(d, vec![5.into(), 0.into()]);
        // A V has its nonzero columns first
        assert_eq!(v[0][0], BigInt::zero());
        let (d, _) = smith_diagonal(&big(&[&[1, 2]]), 2);
        assert_eq!(d, vec![1.into(), 0.into()]);
    }

    #[test]
    fn local_solve() {
        let r = PrimePowerRing::new(5, 2);
        // 5x = 10 mod 25 -> x = 2 (mod 5)
        let x = r.solve(&[vec![5]], &[10]).unwrap();
        assert_eq!((5 * x[0]) % 25, 10);
        assert!(r.solve(&[vec![5]], &[1]).is_none());
        let a = vec![vec![5, 1, 0], vec![0, 5, 10]];
        let b = [3, 20];
        let x = r.solve(&a, &b).unwrap();
        for (row, &bi) in a.iter().zip(&b) {
            let s: u64 = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert_eq!(s % 25, bi);
        }
    }
}
