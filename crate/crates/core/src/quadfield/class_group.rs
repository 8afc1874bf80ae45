use std::collections::{BTreeMap, HashSet, VecDeque};

use super::{prime_form, Form, QuadraticField};
use crate::arith::{factorize, isqrt};

/// Ideal class group of the maximal order, as reduced forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    field: QuadraticField,
    h: u64,
    invariant_factors: Vec<u64>,
    forms: Vec<Form>,
}

impl ClassGroup {
    pub fn field(&self) -> QuadraticField {
        self.field
    }

    /// Class number.
    pub fn h(&self) -> u64 {
        self.h
    }

    /// Invariant factors `d1 | d2 | ... | dr` with product `h`; `[1]` for the trivial group.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// All reduced forms, principal form first.
    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn identity(&self) -> Form {
        Form::principal(&self.field.disc())
    }
}

/// Every reduced positive definite primitive form of discriminant `disc < 0`,
/// ordered by `(a, b)` so the principal form comes first.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    assert!(disc < 0, "reduced_forms needs a negative discriminant");
    let a_max = isqrt(&(disc.abs() / 3)).expect("nonnegative");
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let Some(form) = Form::from_ab(a, b, &disc) else {
                continue;
            };
            if form.is_reduced() && form.is_primitive() {
                out.push(form);
            }
        }
    }
    out
}

/// Class group by enumeration of reduced forms; structure by element orders.
pub fn class_group(field: QuadraticField) -> ClassGroup {
    let forms = reduced_forms(field.disc());
    let h = forms.len() as u64;
    let orders: Vec<u64> = forms.iter().map(Form::order).collect();
    ClassGroup {
        field,
        h,
        invariant_factors: invariant_factors_from_orders(h, &orders),
        forms,
    }
}

/// Structure of a finite abelian group of order `h` from the multiset of its
/// element orders: `|G[q^i]|` determines the `q`-primary partition.
pub fn invariant_factors_from_orders(h: u64, orders: &[u64]) -> Vec<u64> {
    // exponents[q] = exponents of the cyclic q-primary factors, descending
    let mut exponents: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (q, _) in factorize(h) {
        let mut ranks = Vec::new(); // ranks[i-1] = #factors with exponent >= i
        let mut prev = 0u32;
        let mut qi = 1u64;
        loop {
            qi *= q;
            let killed = orders.iter().filter(|&&o| qi.is_multiple_of(o)).count() as u64;
            let n_i = log_exact(killed, q);
            if n_i == prev {
                break;
            }
            ranks.push(n_i - prev);
            prev = n_i;
        }
        let mut ex = Vec::new();
        for (i, &r) in ranks.iter().enumerate() {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                ex.push(i as u32 + 1);
            }
        }
        ex.sort_unstable_by(|a, b| b.cmp(a));
        exponents.insert(q, ex);
    }
    let rank = exponents.values().map(Vec::len).max().unwrap_or(0);
    if rank == 0 {
        return vec![1];
    }
    let mut factors: Vec<u64> = (0..rank)
        .map(|j| {
            exponents
                .iter()
                .map(|(&q, ex)| ex.get(j).map_or(1, |&e| q.pow(e)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

fn log_exact(n: u64, q: u64) -> u32 {
    let mut e = 0;
    let mut m = n;
    while m > 1 {
        assert_eq!(m % q, 0, "{n} is not a power of {q}");
        m /= q;
        e += 1;
    }
    e
}

/// Class number by closing the classes of prime forms of norm at most
/// `sqrt(|disc|/3)` under composition. Independent of [`reduced_forms`].
pub fn class_number_by_generation(field: QuadraticField) -> u64 {
    let disc = field.disc();
    let bound = isqrt(&(disc.abs() / 3)).expect("nonnegative") as u64;
    let generators: Vec<Form> = crate::arith::primes_up_to(bound)
        .into_iter()
        .filter_map(|p| prime_form(field, p))
        .map(|f| f.reduce())
        .collect();
    let id = Form::principal(&disc);
    let mut seen: HashSet<Form> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(cur) = queue.pop_front() {
        for g in &generators {
            let next = cur.compose(g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len() as u64
}
