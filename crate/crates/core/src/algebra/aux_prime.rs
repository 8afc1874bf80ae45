//! Sieve for the auxiliary prime `p1` of the cyclic-isogeny construction.
//!
//! The five conditions are read on rational primes `p1`:
//!
//! 1. `p1 = 1 (mod d)`: `p1` has degree one in `Q(zeta_d)`.
//! 2. every target `l` is a nonzero `d`-th power residue mod `p1`.
//! 3. `p1 != 1 (mod d * d')` with `d'` the smallest prime factor of `d`, and
//!    `p` is not a `d`-th power residue mod `p1`.
//! 4. `p1` does not divide `disc`.
//! 5. `(disc / p1) = -1`.
//!
//! The search returns the smallest qualifying prime. It runs in parallel and
//! uses an ordered `find_first`, so the answer does not depend on scheduling.

use rayon::prelude::*;

use super::AlgebraError;
use crate::arith::{
    euler_phi, factorize, is_power_residue, is_power_residue_by_enumeration, is_prime, kronecker,
    pow_mod, prime_power, primes_up_to,
};
use crate::quadfield::QuadraticField;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxPrimeCriteria {
    d: u64,
    p: u64,
    norm_targets: Vec<u64>,
    disc: i64,
}

impl AuxPrimeCriteria {
    /// `d` must be an odd prime power `>= 3`; `p` a prime not dividing `disc`;
    /// targets primes other than `p`.
    pub fn new(d: u64, p: u64, norm_targets: Vec<u64>, disc: i64) -> Result<Self, AlgebraError> {
        if d < 3 || d.is_multiple_of(2) || prime_power(d).is_none() {
            return Err(AlgebraError::UnsupportedDegree(d));
        }
        QuadraticField::new(disc)?;
        if !is_prime(p) {
            return Err(AlgebraError::InvalidCriteria(format!("p = {p} is not prime")));
        }
        if disc.unsigned_abs().is_multiple_of(p) {
            return Err(AlgebraError::InvalidCriteria(format!("p = {p} divides the discriminant")));
        }
        for &l in &norm_targets {
            if !is_prime(l) || l == p {
                return Err(AlgebraError::InvalidCriteria(format!(
                    "target {l} must be a prime other than p"
                )));
            }
        }
        let r = norm_targets.len() as u32;
        if d.checked_pow(r + 2).is_none_or(|v| v > i64::MAX as u64 / 2) {
            return Err(AlgebraError::InvalidCriteria("too many targets for d".into()));
        }
        Ok(Self {
            d,
            p,
            norm_targets,
            disc,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn norm_targets(&self) -> &[u64] {
        &self.norm_targets
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    fn smallest_prime_factor(&self) -> u64 {
        factorize(self.d)[0].0
    }

    /// `phi(d)^2 / (2 d^(r+2))`.
    pub fn predicted_density(&self) -> Rational {
        let phi = euler_phi(self.d) as i64;
        let r = self.norm_targets.len() as u32;
        Rational::new(phi * phi, 2 * (self.d as i64).pow(r + 2))
    }
}

/// Outcome of each condition for one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxChecks {
    pub i_degree_one: bool,
    pub ii_targets_split: bool,
    pub iii_inert_layers: bool,
    pub iv_prime_to_disc: bool,
    pub v_inert_in_k: bool,
}

impl AuxChecks {
    pub fn all(&self) -> bool {
        self.i_degree_one
            && self.ii_targets_split
            && self.iii_inert_layers
            && self.iv_prime_to_disc
            && self.v_inert_in_k
    }
}

/// Fast route: Euler's criterion and the Kronecker symbol.
pub fn evaluate_conditions(crit: &AuxPrimeCriteria, p1: u64) -> AuxChecks {
    let d = crit.d;
    AuxChecks {
        i_degree_one: p1 % d == 1,
        ii_targets_split: crit
            .norm_targets
            .iter()
            .all(|&l| l % p1 != 0 && is_power_residue(l, d, p1)),
        iii_inert_layers: p1 % (d * crit.smallest_prime_factor()) != 1
            && !is_power_residue(crit.p, d, p1),
        iv_prime_to_disc: !crit.disc.unsigned_abs().is_multiple_of(p1),
        v_inert_in_k: kronecker(crit.disc, p1) == -1,
    }
}

/// Oracle route: enumerate all `d`-th powers and squares modulo `p1`.
pub fn evaluate_conditions_by_enumeration(crit: &AuxPrimeCriteria, p1: u64) -> AuxChecks {
    let d = crit.d;
    let residue = |a: u64| is_power_residue_by_enumeration(a, d, p1);
    let disc_mod = crit.disc.rem_euclid(p1 as i64) as u64;
    let inert = if p1 == 2 {
        crit.disc.rem_euclid(8) == 5
    } else {
        disc_mod != 0 && !(0..p1).any(|x| pow_mod(x, 2, p1) == disc_mod)
    };
    AuxChecks {
        i_degree_one: (p1 - 1).is_multiple_of(d),
        ii_targets_split: crit.norm_targets.iter().all(|&l| l % p1 != 0 && residue(l)),
        iii_inert_layers: !(p1 - 1).is_multiple_of(d * crit.smallest_prime_factor()) && !residue(crit.p),
        iv_prime_to_disc: crit.disc % p1 as i64 != 0,
        v_inert_in_k: inert,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxPrimeHit {
    pub p1: u64,
    pub checks: AuxChecks,
}

/// Smallest prime `p1 <= search_bound` passing all five conditions.
pub fn aux_prime_search(crit: &AuxPrimeCriteria, search_bound: u64) -> Result<AuxPrimeHit, AlgebraError> {
    let primes = primes_up_to(search_bound);
    primes
        .par_iter()
        .find_first(|&&p1| evaluate_conditions(crit, p1).all())
        .map(|&p1| AuxPrimeHit {
            p1,
            checks: evaluate_conditions(crit, p1),
        })
        .ok_or(AlgebraError::NotFound {
            tested: primes.len() as u64,
        })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub bound: u64,
    pub primes_tested: u64,
    /// Primes `p1 = 1 (mod d)` up to the bound.
    pub conditioned: u64,
    pub qualifying: u64,
    /// `qualifying / conditioned`: density among degree-one primes of `Q(zeta_d)`.
    pub empirical: Rational,
    /// `qualifying / primes_tested`.
    pub overall: Rational,
    pub predicted: Rational,
}

impl DensityReport {
    /// `empirical / predicted` as a float, for tolerance checks.
    pub fn ratio_to_prediction(&self) -> f64 {
        let r = self.empirical / self.predicted;
        *r.numer() as f64 / *r.denom() as f64
    }
}

/// Fraction of primes up to `bound` that pass every condition, normalized
/// among the primes `p1 = 1 (mod d)`.
pub fn empirical_density(crit: &AuxPrimeCriteria, bound: u64) -> DensityReport {
    let primes = primes_up_to(bound);
    let (conditioned, qualifying) = primes
        .par_iter()
        .map(|&p1| {
            let c = evaluate_conditions(crit, p1);
            (u64::from(c.i_degree_one), u64::from(c.all()))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let ratio = |n: u64, m: u64| {
        if m == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new(n as i64, m as i64)
        }
    };
    DensityReport {
        bound,
        primes_tested: primes.len() as u64,
        conditioned,
        qualifying,
        empirical: ratio(qualifying, conditioned),
        overall: ratio(qualifying, primes.len() as u64),
        predicted: crit.predicted_density(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crit() -> AuxPrimeCriteria {
        AuxPrimeCriteria::new(3, 11, vec![5], -7).unwrap()
    }

    #[test]
    fn running_search() {
        let hit = aux_prime_search(&crit(), 10_000).unwrap();
        assert!(hit.checks.all());
        assert_eq!(evaluate_conditions_by_enumeration(&crit(), hit.p1), hit.checks);
        // nothing smaller qualifies, by the oracle
        for p1 in primes_up_to(hit.p1 - 1) {
            assert!(!evaluate_conditions_by_enumeration(&crit(), p1).all(), "p1 = {p1}");
        }
    }

    #[test]
    fn fast_and_enumeration_routes_agree() {
        let c = crit();
        for p1 in primes_up_to(2000) {
            assert_eq!(evaluate_conditions(&c, p1), evaluate_conditions_by_enumeration(&c, p1), "p1 = {p1}");
        }
    }

    #[test]
    fn criteria_validation() {
        assert_eq!(AuxPrimeCriteria::new(4, 11, vec![5], -7).unwrap_err(), AlgebraError::UnsupportedDegree(4));
        assert_eq!(AuxPrimeCriteria::new(6, 11, vec![5], -7).unwrap_err(), AlgebraError::UnsupportedDegree(6));
        assert!(AuxPrimeCriteria::new(9, 11, vec![5], -7).is_ok());
        assert_eq!(AuxPrimeCriteria::new(3, 7, vec![5], -7).unwrap_err().code(), "InvalidCriteria");
        assert_eq!(AuxPrimeCriteria::new(3, 11, vec![11], -7).unwrap_err().code(), "InvalidCriteria");
    }

    #[test]
    fn density_prediction_and_degenerate_bound() {
        assert_eq!(crit().predicted_density(), Rational::new(2, 27));
        let first = aux_prime_search(&crit(), 10_000).unwrap().p1;
        let rep = empirical_density(&crit(), first - 1);
        assert_eq!(rep.qualifying, 0);
        assert_eq!(rep.empirical, Rational::from_integer(0));
        let rep = empirical_density(&crit(), 20_000);
        assert!(rep.overall <= Rational::new(rep.conditioned as i64, rep.primes_tested as i64));
    }

    #[test]
    fn not_found_reports_count() {
        assert_eq!(aux_prime_search(&crit(), 10), Err(AlgebraError::NotFound { tested: 4 }));
    }
}
