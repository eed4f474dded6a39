//! Homogeneous polynomials as sparse ordered term maps.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{self, Coeff};
use crate::monomial::Monomial;

/// A homogeneous polynomial: a sparse map from monomials to nonzero
/// rational coefficients, all monomials of one weighted degree.
///
/// The zero polynomial still carries its forced degree so that graded
/// matrix entries stay well-typed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    degree: i64,
    terms: BTreeMap<Monomial, Coeff>,
}

/// Serialized form: coefficients as `p/q` strings for stable files.
#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    degree: i64,
    terms: Vec<(Monomial, String)>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PolynomialRepr {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), coeff::render(c)))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for (m, cs) in repr.terms {
            let c = Coeff::from_str(&cs)
                .map_err(|e| D::Error::custom(format!("bad coefficient {cs}: {e}")))?;
            if m.weighted_degree() != repr.degree {
                return Err(D::Error::custom("term degree mismatch"));
            }
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
        Ok(Polynomial { degree: repr.degree, terms })
    }
}

impl Polynomial {
    pub fn zero(degree: i64) -> Self {
        Polynomial { degree, terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: Monomial, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        let degree = m.weighted_degree();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { degree, terms }
    }

    pub fn constant(num_vars: usize, c: Coeff) -> Self {
        Polynomial::from_monomial(Monomial::constant(num_vars), c)
    }

    pub fn one(num_vars: usize) -> Self {
        Polynomial::constant(num_vars, coeff::one())
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn num_vars(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.num_vars())
    }

    /// Largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub(crate) fn insert_term(&mut self, m: Monomial, c: Coeff) {
        debug_assert!(self.terms.is_empty() || m.weighted_degree() == self.degree);
        if self.terms.is_empty() {
            self.degree = m.weighted_degree();
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, m: &Monomial) {
        self.terms.remove(m);
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "adding different degrees {} vs {}",
            self.degree,
            other.degree
        );
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.degree);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        out
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let mut out = Polynomial::zero(self.degree + m.weighted_degree());
        if c.is_zero() {
            return out;
        }
        for (tm, tc) in &self.terms {
            out.insert_term(tm.mul(m), tc.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.degree + other.degree);
        for (m, c) in &other.terms {
            out = out.add(&self.mul_term(m, c));
        }
        out
    }

    /// Divides every coefficient so the leading coefficient becomes 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Coeff::new(c.denom().clone(), c.numer().clone());
                self.scale(&inv)
            }
        }
    }

    pub fn render(&self, var_names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Descending order: leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = coeff::render(c);
            let (sign, mag) = if let Some(stripped) = cs.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", cs)
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            if m.is_constant() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&m.render(var_names));
            } else {
                out.push_str(&format!("{}*{}", mag, m.render(var_names)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_poly;
    use crate::ring::make_ring;

    #[test]
    fn grading_under_multiplication() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("x0^2 + x1", &a).unwrap();
        let q = parse_poly("x0^3 + x0*x1 - x2", &a).unwrap();
        let pq = p.mul(&q);
        assert_eq!(pq.degree(), p.degree() + q.degree());
        for m in pq.terms().keys() {
            assert_eq!(m.weighted_degree(), pq.degree());
        }
    }

    #[test]
    fn render_round_trip() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("3*x0*x3 - x1^3 + 1/2*x0*x1*x2", &a).unwrap();
        let s = p.render(&a.var_names());
        let q = parse_poly(&s, &a).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = make_ring(2, true).unwrap();
        let p = parse_poly("x1^3", &a).unwrap();
        let q = parse_poly("-x1^3", &a).unwrap();
        assert!(p.add(&q).is_zero());
    }
}
