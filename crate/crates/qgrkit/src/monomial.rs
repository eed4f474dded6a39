//! Weighted monomials with cached weighted degree.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 4]>;

/// A monomial `x0^e0 * ... * xm^em` in a weighted polynomial ring.
///
/// The weighted degree is cached at construction time so that the
/// monomial order (weighted degree, then lexicographic with
/// `x0 > x1 > ... > xm`) can be evaluated without consulting the ring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    weighted_degree: i64,
    exponents: Exponents,
}

impl Monomial {
    pub fn new(exponents: impl Into<Exponents>, weights: &[i64]) -> Self {
        let exponents = exponents.into();
        assert_eq!(exponents.len(), weights.len(), "exponent/weight arity mismatch");
        let weighted_degree = exponents
            .iter()
            .zip(weights)
            .map(|(&e, &w)| (e as i64).checked_mul(w).expect("degree overflow"))
            .try_fold(0i64, |acc, d| acc.checked_add(d))
            .expect("degree overflow");
        Monomial { weighted_degree, exponents }
    }

    pub fn constant(num_vars: usize) -> Self {
        Monomial { weighted_degree: 0, exponents: SmallVec::from_elem(0, num_vars) }
    }

    pub fn variable(index: usize, weights: &[i64]) -> Self {
        let mut exps = SmallVec::from_elem(0u32, weights.len());
        exps[index] = 1;
        Monomial::new(exps, weights)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents[i]
    }

    pub fn weighted_degree(&self) -> i64 {
        self.weighted_degree
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        let exps: Exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            weighted_degree: self
                .weighted_degree
                .checked_add(other.weighted_degree)
                .expect("degree overflow"),
            exponents: exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn divide_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Exponents =
            other.exponents.iter().zip(&self.exponents).map(|(&b, &a)| b - a).collect();
        Monomial {
            weighted_degree: other.weighted_degree - self.weighted_degree,
            exponents: exps,
        }
    }

    /// Least common multiple; needs the weights to recompute the degree.
    pub fn lcm_with_weights(&self, other: &Monomial, weights: &[i64]) -> Monomial {
        let exps: Exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial::new(exps, weights)
    }

    pub fn coprime_with(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// True when the monomial is a pure power of variable `i` (or constant).
    pub fn is_pure_power_of(&self, i: usize) -> bool {
        self.exponents.iter().enumerate().all(|(j, &e)| j == i || e == 0)
    }

    pub fn render(&self, var_names: &[String]) -> String {
        if self.is_constant() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 1 {
                parts.push(var_names[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", var_names[i], e));
            }
        }
        parts.join("*")
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "m{:?}(deg {})", self.exponents.as_slice(), self.weighted_degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: [i64; 4] = [1, 2, 3, 5]; // n = 2

    #[test]
    fn degree_caching() {
        let m = Monomial::new(vec![1u32, 0, 0, 1], &W);
        assert_eq!(m.weighted_degree(), 6);
    }

    #[test]
    fn order_is_degree_then_lex() {
        // x0*x3, x1^3, x2^2 all have degree 6; x0*x3 is lex-largest.
        let x0x3 = Monomial::new(vec![1u32, 0, 0, 1], &W);
        let x1c = Monomial::new(vec![0u32, 3, 0, 0], &W);
        let x2s = Monomial::new(vec![0u32, 0, 2, 0], &W);
        assert!(x0x3 > x1c);
        assert!(x0x3 > x2s);
        assert!(x1c > x2s);
        // degree dominates
        let x0 = Monomial::new(vec![1u32, 0, 0, 0], &W);
        assert!(x1c > x0);
    }

    #[test]
    fn divide_and_lcm() {
        let a = Monomial::new(vec![2u32, 1, 0, 0], &W);
        let b = Monomial::new(vec![1u32, 0, 0, 0], &W);
        assert!(b.divides(&a));
        let q = b.divide_into(&a);
        assert_eq!(q.exponents(), &[1, 1, 0, 0]);
        assert_eq!(q.weighted_degree(), 3);
        let l = a.lcm_with_weights(&b, &W);
        assert_eq!(l.exponents(), &[2, 1, 0, 0]);
    }
}
