//! Ring descriptors for the weighted polynomial algebra `B` and the
//! hypersurface quotient `A = B/(f)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A positively weighted polynomial algebra, optionally modulo one
/// homogeneous relation.
///
/// For the hypersurface family the weights are `(1, 2, 2n-1, 4n-3)` and
/// the relation is `f = x0*x3 + x1^(2n-1) + x2^2` of degree `d = 4n-2`,
/// so that `kappa = d - s = -(2n+1)` where `s` is the weight sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub num_vars: usize,
    pub weights: Vec<i64>,
    pub relation: Option<Polynomial>,
    pub n_param: Option<i64>,
    pub degree_d: Option<i64>,
    pub s_total: i64,
    pub kappa: Option<i64>,
}

impl RingDescriptor {
    /// General weighted polynomial ring without a relation.
    pub fn polynomial(weights: Vec<i64>) -> Result<Self, RingError> {
        if weights.is_empty() || weights.iter().any(|&w| w < 1) {
            return Err(RingError::InvalidParameter("weights must be >= 1".into()));
        }
        let s_total = weights.iter().sum();
        Ok(RingDescriptor {
            num_vars: weights.len(),
            weights,
            relation: None,
            n_param: None,
            degree_d: None,
            s_total,
            kappa: None,
        })
    }

    pub fn has_relation(&self) -> bool {
        self.relation.is_some()
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.num_vars).map(|i| format!("x{i}")).collect()
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec(), &self.weights)
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        Polynomial::from_monomial(Monomial::variable(i, &self.weights), coeff::one())
    }

    /// The ring with the relation dropped (the ambient `B` of an `A`).
    pub fn ambient(&self) -> RingDescriptor {
        let mut r = self.clone();
        r.relation = None;
        r.degree_d = None;
        r.kappa = None;
        r
    }

    /// Largest variable weight; controls generation windows.
    pub fn max_weight(&self) -> i64 {
        *self.weights.iter().max().expect("nonempty weights")
    }
}

/// Builds `B` (`quotient = false`) or `A` (`quotient = true`) for the
/// hypersurface family with parameter `n >= 2`.
pub fn make_ring(n: i64, quotient: bool) -> Result<RingDescriptor, RingError> {
    if n < 2 {
        return Err(RingError::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let weights = vec![1, 2, 2 * n - 1, 4 * n - 3];
    let s_total: i64 = weights.iter().sum();
    debug_assert_eq!(s_total, 6 * n - 1);
    let mut ring = RingDescriptor {
        num_vars: 4,
        weights: weights.clone(),
        relation: None,
        n_param: Some(n),
        degree_d: None,
        s_total,
        kappa: None,
    };
    if quotient {
        let d = 4 * n - 2;
        let f = hypersurface_relation(n, &weights);
        debug_assert_eq!(f.degree(), d);
        ring.relation = Some(f);
        ring.degree_d = Some(d);
        ring.kappa = Some(d - s_total);
        debug_assert_eq!(ring.kappa, Some(-(2 * n + 1)));
    }
    Ok(ring)
}

fn hypersurface_relation(n: i64, weights: &[i64]) -> Polynomial {
    let x0x3 = Monomial::new(vec![1u32, 0, 0, 1], weights);
    let x1p = Monomial::new(vec![0, (2 * n - 1) as u32, 0, 0], weights);
    let x2s = Monomial::new(vec![0u32, 0, 2, 0], weights);
    let mut p = Polynomial::from_monomial(x0x3, coeff::one());
    p = p.add(&Polynomial::from_monomial(x1p, coeff::one()));
    p.add(&Polynomial::from_monomial(x2s, coeff::one()))
}

/// Reduces `p` to its normal form modulo the defining relation.
///
/// With the fixed order the relation's lead term is `x0*x3`, so `{f}` is
/// a Groebner basis of `(f)` and the result contains no monomial
/// divisible by `x0*x3`. Rings without a relation return `p` unchanged.
pub fn normal_form(p: &Polynomial, ring: &RingDescriptor) -> Polynomial {
    let f = match &ring.relation {
        Some(f) => f,
        None => return p.clone(),
    };
    let (lead_m, lead_c) = f.leading_term().expect("relation is nonzero");
    let mut rest = f.clone();
    rest.remove_term(lead_m);
    // x0*x3 = -(x1^(2n-1) + x2^2) / lead coefficient
    let mut result = Polynomial::zero(p.degree());
    let mut work = p.clone();
    while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        if lead_m.divides(&m) {
            let q = lead_m.divide_into(&m);
            let scale = -c / lead_c.clone();
            let sub = rest.mul_term(&q, &scale);
            work.remove_term(&m);
            work = work.add(&sub);
        } else {
            work.remove_term(&m);
            result.insert_term(m, c);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn make_ring_n2_quotient() {
        let a = make_ring(2, true).unwrap();
        assert_eq!(a.weights, vec![1, 2, 3, 5]);
        assert_eq!(a.degree_d, Some(6));
        assert_eq!(a.s_total, 11);
        assert_eq!(a.kappa, Some(-5));
        let f = a.relation.as_ref().unwrap();
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.degree(), 6);
    }

    #[test]
    fn make_ring_n3_plain() {
        let b = make_ring(3, false).unwrap();
        assert_eq!(b.weights, vec![1, 2, 5, 9]);
        assert!(b.relation.is_none());
        assert_eq!(b.degree_d, None);
        assert_eq!(b.s_total, 17);
    }

    #[test]
    fn make_ring_rejects_small_n() {
        assert!(make_ring(1, true).is_err());
    }

    #[test]
    fn lead_term_is_x0x3() {
        for n in 2..=6 {
            let a = make_ring(n, true).unwrap();
            let f = a.relation.as_ref().unwrap();
            let (m, _) = f.leading_term().unwrap();
            assert_eq!(m.exponents(), &[1, 0, 0, 1], "n = {n}");
        }
    }

    #[test]
    fn normal_form_one_step() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("x0*x3", &a).unwrap();
        let nf = normal_form(&p, &a);
        let expected = parse_poly("-x1^3 - x2^2", &a).unwrap();
        assert_eq!(nf, expected);
    }

    #[test]
    fn normal_form_already_reduced() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("x1^3", &a).unwrap();
        assert_eq!(normal_form(&p, &a), p);
    }

    #[test]
    fn normal_form_square() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("x0^2*x3^2", &a).unwrap();
        let nf = normal_form(&p, &a);
        let expected = parse_poly("x1^6 + 2*x1^3*x2^2 + x2^4", &a).unwrap();
        assert_eq!(nf, expected);
        // idempotent
        assert_eq!(normal_form(&nf, &a), nf);
    }

    #[test]
    fn normal_form_no_relation_is_identity() {
        let b = make_ring(2, false).unwrap();
        let p = parse_poly("x0*x3 + x1^3", &b).unwrap();
        assert_eq!(normal_form(&p, &b), p);
    }
}
