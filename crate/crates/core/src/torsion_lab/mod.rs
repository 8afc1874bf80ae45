//! Finite model of torsion subgroups: endomorphisms are integer matrices acting
//! on `(Z/n)^rank` with `n = l^N`.
//!
//! Kernels come from the integer Smith form `U M V = diag(d_i)`: with
//! `z = V^-1 x` the equation `M x = 0 (mod n)` reads `d_i z_i = 0 (mod n)`, so
//! the kernel is `sum Z/gcd(d_i, n)` generated by `(n / gcd(d_i, n)) V e_i`.

mod fixture;
mod snf;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use fixture::fixture_commuting_family;
pub use snf::{smith_diagonal, PrimePowerRing};

use crate::arith::prime_power;
use crate::quadfield::QuadInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("the endomorphisms do not commute")]
    NonCommuting,
    #[error("no suitable polynomial: {0}")]
    BadSplit(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

impl TorsionError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::NonCommuting => "NonCommuting",
            Self::BadSplit(_) => "BadSplit",
            Self::InvalidModule(_) => "InvalidModule",
            Self::ShapeMismatch(_) => "ShapeMismatch",
        }
    }
}

/// `(Z/n)^rank` with `n = l^N` and even `rank >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorsionModule {
    n: u64,
    l: u64,
    exp: u32,
    rank: usize,
}

impl TorsionModule {
    pub fn new(n: u64, rank: usize) -> Result<Self, TorsionError> {
        let Some((l, exp)) = prime_power(n) else {
            return Err(TorsionError::InvalidModule(format!("{n} is not a prime power")));
        };
        if rank < 2 || !rank.is_multiple_of(2) {
            return Err(TorsionError::InvalidModule(format!("rank {rank} must be even and >= 2")));
        }
        if (n as u128).pow(2) > u64::MAX as u128 {
            return Err(TorsionError::InvalidModule(format!("modulus {n} is too large")));
        }
        Ok(Self { n, l, exp, rank })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `n^rank`.
    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.n), self.rank)
    }

    pub fn ring(&self) -> PrimePowerRing {
        PrimePowerRing::new(self.l, self.exp)
    }
}

pub type Matrix = Vec<Vec<u64>>;

/// Square matrix acting on a [`TorsionModule`], entries reduced mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorsionEndomorphism {
    matrix: Matrix,
    module: TorsionModule,
}

impl TorsionEndomorphism {
    pub fn new(module: TorsionModule, entries: &[Vec<i64>]) -> Result<Self, TorsionError> {
        let r = module.rank;
        if entries.len() != r || entries.iter().any(|row| row.len() != r) {
            return Err(TorsionError::ShapeMismatch(format!("expected a {r}x{r} matrix")));
        }
        let n = module.n as i64;
        let matrix = entries
            .iter()
            .map(|row| row.iter().map(|&x| x.rem_euclid(n) as u64).collect())
            .collect();
        Ok(Self { matrix, module })
    }

    fn from_reduced(module: TorsionModule, matrix: Matrix) -> Self {
        Self { matrix, module }
    }

    pub fn identity(module: TorsionModule) -> Self {
        let r = module.rank;
        Self::from_reduced(
            module,
            (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect(),
        )
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn module(&self) -> TorsionModule {
        self.module
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_reduced(self.module, mat_mul(&self.matrix, &other.matrix, self.module.n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.module.n;
        let m = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) % n).collect())
            .collect();
        Self::from_reduced(self.module, m)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let n = self.module.n as u128;
        self.matrix
            .iter()
            .map(|row| (row.iter().zip(x).map(|(&a, &b)| a as u128 * b as u128).sum::<u128>() % n) as u64)
            .collect()
    }
}

pub(crate) fn mat_mul(a: &Matrix, b: &Matrix, n: u64) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let s: u128 = row.iter().zip(b).map(|(&x, brow)| x as u128 * brow[j] as u128).sum();
                    (s % n as u128) as u64
                })
                .collect()
        })
        .collect()
}

/// Matrix of multiplication by `alpha` on `O_K / n` in the basis `{1, omega}`.
pub fn multiplication_matrix(alpha: &QuadInt, module: TorsionModule) -> Result<TorsionEndomorphism, TorsionError> {
    if module.rank != 2 {
        return Err(TorsionError::ShapeMismatch("O_K / n has rank 2".into()));
    }
    let f = alpha.field();
    let (u, v) = alpha.omega_coords();
    let small = |x: BigInt| x.mod_floor(&BigInt::from(module.n)).to_i64().expect("reduced");
    // alpha * omega = -v nm + (u + v tr) omega
    let col2_top = -(&v * BigInt::from(f.omega_norm()));
    let col2_bot = &u + &v * BigInt::from(f.omega_trace());
    TorsionEndomorphism::new(
        module,
        &[
            vec![small(u), small(col2_top)],
            vec![small(v), small(col2_bot)],
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDescription {
    pub generators: Vec<Vec<u64>>,
    pub order: BigUint,
    /// Nontrivial invariant factors of the kernel, ascending, each dividing the next.
    pub elementary_divisors: Vec<u64>,
    pub cyclic: bool,
}

/// Kernel of a `rows x rank` matrix acting on `(Z/n)^rank`.
fn kernel_of_rows(rows: &[Vec<u64>], module: TorsionModule) -> KernelDescription {
    let n = module.n;
    let a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let (diag, v) = smith_diagonal(&a, module.rank);
    let nb = BigInt::from(n);
    let mut gens = Vec::new();
    let mut divisors = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let g = d.gcd(&nb).to_u64().expect("divides n");
        if g == 1 {
            continue;
        }
        let scale = BigInt::from(n / g);
        let gen = v
            .iter()
            .map(|row| (&row[i] * &scale).mod_floor(&nb).to_u64().expect("reduced"))
            .collect();
        gens.push(gen);
        divisors.push(g);
    }
    debug_assert!(divisors.windows(2).all(|w| w[1] % w[0] == 0));
    let order = divisors.iter().fold(BigUint::one(), |acc, &g| acc * g);
    KernelDescription {
        generators: gens,
        order,
        cyclic: divisors.len() <= 1,
        elementary_divisors: divisors,
    }
}

pub fn kernel(e: &TorsionEndomorphism) -> KernelDescription {
    kernel_of_rows(&e.matrix, e.module)
}

/// Order of the subgroup generated by the given vectors.
pub fn span_order(vectors: &[Vec<u64>], module: TorsionModule) -> BigUint {
    if vectors.is_empty() {
        return BigUint::one();
    }
    // columns are the generators
    let a: Vec<Vec<BigInt>> = (0..module.rank)
        .map(|i| vectors.iter().map(|v| BigInt::from(v[i])).collect())
        .collect();
    let (diag, _) = smith_diagonal(&a, vectors.len());
    let nb = BigInt::from(module.n);
    (0..module.rank).fold(BigUint::one(), |acc, i| {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        acc * (module.n / d.gcd(&nb).to_u64().expect("divides n"))
    })
}

/// `ker A ∩ ker B`, the kernel of the stacked matrix.
pub fn kernel_intersection(a: &TorsionEndomorphism, b: &TorsionEndomorphism) -> KernelDescription {
    let stacked: Vec<Vec<u64>> = a.matrix.iter().chain(&b.matrix).cloned().collect();
    kernel_of_rows(&stacked, a.module)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutWitness {
    pub a1: TorsionEndomorphism,
    pub a2: TorsionEndomorphism,
}

/// `A1 M1 + A2 M2 = I` with `A1, A2` in the ring generated by `M1` and `M2`.
///
/// The ring is spanned by the monomials `M1^a M2^b` with `a, b < rank`
/// (Cayley-Hamilton); the coefficients solve a linear system over `Z/l^N`.
pub fn bezout_witness(
    e1: &TorsionEndomorphism,
    e2: &TorsionEndomorphism,
) -> Result<Option<BezoutWitness>, TorsionError> {
    let module = e1.module;
    if e2.module != module {
        return Err(TorsionError::ShapeMismatch("different modules".into()));
    }
    if !e1.commutes_with(e2) {
        return Err(TorsionError::NonCommuting);
    }
    let r = module.rank;
    let id = TorsionEndomorphism::identity(module);
    let mut pow1 = vec![id.clone()];
    let mut pow2 = vec![id.clone()];
    for _ in 1..r {
        pow1.push(pow1.last().unwrap().mul(e1));
        pow2.push(pow2.last().unwrap().mul(e2));
    }
    let monomials: Vec<TorsionEndomorphism> = pow1
        .iter()
        .flat_map(|a| pow2.iter().map(move |b| a.mul(b)))
        .collect();
    // unknown columns: monomial * M1, then monomial * M2
    let columns: Vec<TorsionEndomorphism> = monomials
        .iter()
        .map(|m| m.mul(e1))
        .chain(monomials.iter().map(|m| m.mul(e2)))
        .collect();
    let system: Vec<Vec<u64>> = (0..r * r)
        .map(|idx| columns.iter().map(|c| c.matrix[idx / r][idx % r]).collect())
        .collect();
    let rhs: Vec<u64> = (0..r * r).map(|idx| u64::from(idx / r == idx % r)).collect();
    let Some(coeffs) = module.ring().solve(&system, &rhs) else {
        return Ok(None);
    };
    let combine = |cs: &[u64]| {
        monomials.iter().zip(cs).fold(
            TorsionEndomorphism::from_reduced(module, vec![vec![0; r]; r]),
            |acc, (m, &c)| acc.add(&scale(m, c)),
        )
    };
    let k = monomials.len();
    let w = BezoutWitness {
        a1: combine(&coeffs[..k]),
        a2: combine(&coeffs[k..]),
    };
    debug_assert_eq!(w.a1.mul(e1).add(&w.a2.mul(e2)), id);
    Ok(Some(w))
}

fn scale(m: &TorsionEndomorphism, c: u64) -> TorsionEndomorphism {
    let n = m.module.n as u128;
    let matrix = m
        .matrix
        .iter()
        .map(|row| row.iter().map(|&x| ((x as u128 * c as u128) % n) as u64).collect())
        .collect();
    TorsionEndomorphism::from_reduced(m.module, matrix)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionVerdict {
    /// Each member has a Bezout witness against the product of the others.
    pub pairwise_coprime: bool,
    /// `ker M_i ∩ ker M_j = 0` for all `i != j`.
    pub kernels_intersect_trivially: bool,
    pub kernel_orders: Vec<BigUint>,
    /// `|ker prod M_i|`.
    pub product_kernel_order: BigUint,
    /// `prod |ker M_i|`.
    pub product_of_kernel_orders: BigUint,
    /// `|sum ker M_i|`.
    pub sum_order: BigUint,
    /// `ker prod M_i` is the internal direct sum of the `ker M_i`.
    pub decomposition_holds: bool,
}

/// Check `ker(prod M_i) = direct sum of ker(M_i)` for a commuting family.
///
/// The sum of the kernels lies in the kernel of the product. It is direct iff
/// its order is the product of the kernel orders, and it is everything iff its
/// order is that of the product kernel.
pub fn check_decomposition(es: &[TorsionEndomorphism]) -> Result<DecompositionVerdict, TorsionError> {
    let Some(first) = es.first() else {
        return Err(TorsionError::ShapeMismatch("empty family".into()));
    };
    let module = first.module;
    if es.iter().any(|e| e.module != module) {
        return Err(TorsionError::ShapeMismatch("different modules".into()));
    }
    for (i, a) in es.iter().enumerate() {
        if es[i + 1..].iter().any(|b| !a.commutes_with(b)) {
            return Err(TorsionError::NonCommuting);
        }
    }
    let id = TorsionEndomorphism::identity(module);
    let mut pairwise_coprime = true;
    for i in 0..es.len() {
        let rest = es
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(id.clone(), |acc, (_, e)| acc.mul(e));
        pairwise_coprime &= bezout_witness(&es[i], &rest)?.is_some();
    }
    let mut kernels_intersect_trivially = true;
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            kernels_intersect_trivially &= kernel_intersection(&es[i], &es[j]).order.is_one();
        }
    }
    let kernels: Vec<KernelDescription> = es.iter().map(kernel).collect();
    let kernel_orders: Vec<BigUint> = kernels.iter().map(|k| k.order.clone()).collect();
    let product_of_kernel_orders = kernel_orders.iter().fold(BigUint::one(), |a, b| a * b);
    let product = es.iter().fold(id, |acc, e| acc.mul(e));
    let product_kernel_order = kernel(&product).order;
    let all_gens: Vec<Vec<u64>> = kernels.iter().flat_map(|k| k.generators.clone()).collect();
    let sum_order = span_order(&all_gens, module);
    let decomposition_holds =
        sum_order == product_of_kernel_orders && sum_order == product_kernel_order;
    Ok(DecompositionVerdict {
        pairwise_coprime,
        kernels_intersect_trivially,
        kernel_orders,
        product_kernel_order,
        product_of_kernel_orders,
        sum_order,
        decomposition_holds,
    })
}

/// Brute-force kernel: every vector of `(Z/n)^rank` is tested. Returns the
/// order and the invariant factors, read off from `|K[l^i]|`.
pub fn kernel_by_enumeration(e: &TorsionEndomorphism) -> (u64, Vec<u64>) {
    let module = e.module;
    let (n, r, l) = (module.n, module.rank, module.l);
    let total = n.checked_pow(r as u32).expect("enumeration size fits u64");
    let mut killed_by = vec![0u64; module.exp as usize + 1]; // |K[l^i]|
    let mut x = vec![0u64; r];
    for idx in 0..total {
        let mut rem = idx;
        for xi in x.iter_mut() {
            *xi = rem % n;
            rem /= n;
        }
        if e.apply(&x).iter().all(|&c| c == 0) {
            // smallest i with l^i x = 0
            let ord_exp = x
                .iter()
                .map(|&c| if c == 0 { 0 } else { module.exp - small_valuation(c, l) })
                .max()
                .unwrap_or(0);
            for slot in killed_by.iter_mut().skip(ord_exp as usize) {
                *slot += 1;
            }
        }
    }
    let order = killed_by[module.exp as usize];
    // rank of K[l^i]/K[l^(i-1)] counts the invariant factors of exponent >= i
    let log = |m: u64| (m as f64).log(l as f64).round() as u32;
    let mut ge: Vec<u32> = Vec::new();
    for i in 1..=module.exp as usize {
        ge.push(log(killed_by[i]) - log(killed_by[i - 1]));
    }
    let mut divisors = Vec::new();
    for (i, &cnt) in ge.iter().enumerate() {
        let next = ge.get(i + 1).copied().unwrap_or(0);
        for _ in 0..cnt - next {
            divisors.push(l.pow(i as u32 + 1));
        }
    }
    divisors.sort_unstable();
    (order, divisors)
}

fn small_valuation(mut c: u64, l: u64) -> u32 {
    let mut v = 0;
    while c.is_multiple_of(l) {
        c /= l;
        v += 1;
    }
    v
}
