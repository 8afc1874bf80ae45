use std::fmt;

use num_traits::{One, Zero};

use crate::Rational;

/// Newton polygon as slopes with multiplicities, ascending, slopes distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    slopes: Vec<(Rational, u64)>,
}

impl NewtonPolygon {
    /// Merge equal slopes and sort. Zero multiplicities are dropped.
    pub fn from_parts<I: IntoIterator<Item = (Rational, u64)>>(parts: I) -> Self {
        let mut slopes: Vec<(Rational, u64)> = Vec::new();
        for (s, m) in parts {
            if m == 0 {
                continue;
            }
            match slopes.iter_mut().find(|(t, _)| *t == s) {
                Some(entry) => entry.1 += m,
                None => slopes.push((s, m)),
            }
        }
        slopes.sort();
        Self { slopes }
    }

    pub fn slopes(&self) -> &[(Rational, u64)] {
        &self.slopes
    }

    pub fn multiplicity(&self, slope: &Rational) -> u64 {
        self.slopes
            .iter()
            .find(|(s, _)| s == slope)
            .map_or(0, |(_, m)| *m)
    }

    /// Sum of multiplicities, which is twice the dimension.
    pub fn total_multiplicity(&self) -> u64 {
        self.slopes.iter().map(|(_, m)| m).sum()
    }

    /// `mult(s) = mult(1 - s)` for every slope.
    pub fn is_symmetric(&self) -> bool {
        self.slopes
            .iter()
            .all(|(s, m)| self.multiplicity(&(Rational::one() - s)) == *m)
    }

    /// `mult(s) * s` is an integer for every slope.
    pub fn has_integral_breakpoints(&self) -> bool {
        self.slopes
            .iter()
            .all(|(s, m)| (*s * Rational::from_integer(*m as i64)).is_integer())
    }

    /// Symmetric, integral breakpoints, slopes in `[0, 1]`.
    pub fn is_admissible(&self) -> bool {
        let in_range = self
            .slopes
            .iter()
            .all(|(s, _)| *s >= Rational::zero() && *s <= Rational::one());
        in_range && self.is_symmetric() && self.has_integral_breakpoints()
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(|(s, m)| format!("{s}x{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(parts: &[(i64, i64, u64)]) -> NewtonPolygon {
        NewtonPolygon::from_parts(parts.iter().map(|&(n, d, m)| (Rational::new(n, d), m)))
    }

    #[test]
    fn admissibility_examples() {
        assert!(poly(&[(0, 1, 1), (1, 1, 1)]).is_admissible());
        assert!(poly(&[(1, 3, 3), (2, 3, 3)]).is_admissible());
        assert!(!poly(&[(1, 3, 2), (2, 3, 2)]).is_admissible());
        assert!(!poly(&[(1, 3, 3)]).is_admissible());
        assert!(!poly(&[(3, 2, 2), (-1, 2, 2)]).is_admissible());
    }

    #[test]
    fn merging_and_display() {
        let p = poly(&[(1, 2, 2), (1, 2, 2), (0, 1, 0)]);
        assert_eq!(p.slopes(), &[(Rational::new(1, 2), 4)]);
        assert_eq!(p.to_string(), "{1/2x4}");
        assert_eq!(p.total_multiplicity(), 4);
    }
}
