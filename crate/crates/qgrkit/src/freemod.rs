//! Graded free modules, their elements, and homogeneous matrices.

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::poly::Polynomial;
use crate::ring::{self, RingDescriptor};

/// A graded free module `⊕_j R(-b_j)`: generator `g_j` sits in degree `b_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModule {
    pub ring: RingDescriptor,
    pub generator_degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: RingDescriptor, generator_degrees: Vec<i64>) -> Self {
        FreeModule { ring, generator_degrees }
    }

    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn zero_element(&self, degree: i64) -> FreeElement {
        FreeElement {
            components: self
                .generator_degrees
                .iter()
                .map(|&b| Polynomial::zero(degree - b))
                .collect(),
            degree,
        }
    }

    /// Basis element `p * g_j`.
    pub fn element_from_component(&self, j: usize, p: Polynomial) -> FreeElement {
        let degree = p.degree() + self.generator_degrees[j];
        let mut e = self.zero_element(degree);
        e.components[j] = p;
        e
    }

    pub fn generator(&self, j: usize) -> FreeElement {
        self.element_from_component(j, Polynomial::one(self.ring.num_vars))
    }

    /// Graded rank `dim (⊕_j R(-b_j))_k = Σ_j dim R_{k - b_j}`.
    pub fn graded_dim(&self, k: i64) -> usize {
        self.generator_degrees
            .iter()
            .map(|&b| crate::hilbert::hilbert_dim(&self.ring, k - b))
            .sum()
    }

    pub fn twist(&self, k: i64) -> FreeModule {
        FreeModule {
            ring: self.ring.clone(),
            generator_degrees: self.generator_degrees.iter().map(|&b| b - k).collect(),
        }
    }
}

/// A homogeneous element of a graded free module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeElement {
    pub components: Vec<Polynomial>,
    pub degree: i64,
}

impl FreeElement {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        debug_assert_eq!(self.components.len(), other.components.len());
        FreeElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
            degree: self.degree,
        }
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreeElement {
        FreeElement {
            components: self.components.iter().map(|p| p.neg()).collect(),
            degree: self.degree,
        }
    }

    pub fn scale(&self, c: &Coeff) -> FreeElement {
        FreeElement {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
            degree: self.degree,
        }
    }

    pub fn mul_term(&self, m: &crate::monomial::Monomial, c: &Coeff) -> FreeElement {
        FreeElement {
            components: self.components.iter().map(|p| p.mul_term(m, c)).collect(),
            degree: self.degree + m.weighted_degree(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> FreeElement {
        FreeElement {
            components: self.components.iter().map(|q| q.mul(p)).collect(),
            degree: self.degree + p.degree(),
        }
    }

    /// Reduces every component modulo the ring relation.
    pub fn normal_form(&self, ring: &RingDescriptor) -> FreeElement {
        FreeElement {
            components: self.components.iter().map(|p| ring::normal_form(p, ring)).collect(),
            degree: self.degree,
        }
    }

    pub fn render(&self, var_names: &[String]) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({})*e{}", p.render(var_names), i))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A matrix of homogeneous polynomials between graded free modules.
/// Entry `(i, j)` maps generator `j` of the source into component `i`
/// of the target and is homogeneous of degree `b_j^src - b_i^tgt`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMatrix {
    pub source: FreeModule,
    pub target: FreeModule,
    pub entries: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    pub fn new(source: FreeModule, target: FreeModule, entries: Vec<Vec<Polynomial>>) -> Self {
        assert_eq!(entries.len(), target.rank(), "row count");
        for row in &entries {
            assert_eq!(row.len(), source.rank(), "column count");
        }
        let m = GradedMatrix { source, target, entries };
        m.assert_homogeneous();
        m
    }

    pub fn from_columns(source: FreeModule, target: FreeModule, cols: &[FreeElement]) -> Self {
        assert_eq!(cols.len(), source.rank());
        let entries = (0..target.rank())
            .map(|i| cols.iter().map(|c| c.components[i].clone()).collect())
            .collect();
        GradedMatrix::new(source, target, entries)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let entries = (0..target.rank())
            .map(|i| {
                (0..source.rank())
                    .map(|j| {
                        Polynomial::zero(
                            source.generator_degrees[j] - target.generator_degrees[i],
                        )
                    })
                    .collect()
            })
            .collect();
        GradedMatrix::new(source, target, entries)
    }

    pub fn identity(module: &FreeModule) -> Self {
        let mut m = GradedMatrix::zero(module.clone(), module.clone());
        for i in 0..module.rank() {
            m.entries[i][i] = Polynomial::one(module.ring.num_vars);
        }
        m
    }

    fn assert_homogeneous(&self) {
        for i in 0..self.target.rank() {
            for j in 0..self.source.rank() {
                let e = &self.entries[i][j];
                if !e.is_zero() {
                    assert_eq!(
                        e.degree(),
                        self.source.generator_degrees[j] - self.target.generator_degrees[i],
                        "entry ({i},{j}) has the wrong degree"
                    );
                }
            }
        }
    }

    pub fn column(&self, j: usize) -> FreeElement {
        let degree = self.source.generator_degrees[j];
        FreeElement {
            components: self.entries.iter().map(|row| row[j].clone()).collect(),
            degree,
        }
    }

    pub fn columns(&self) -> Vec<FreeElement> {
        (0..self.source.rank()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|p| p.is_zero()))
    }

    pub fn apply(&self, v: &FreeElement) -> FreeElement {
        debug_assert_eq!(v.components.len(), self.source.rank());
        let mut out = self.target.zero_element(v.degree);
        for (j, comp) in v.components.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            for i in 0..self.target.rank() {
                let e = &self.entries[i][j];
                if e.is_zero() {
                    continue;
                }
                out.components[i] = out.components[i].add(&e.mul(comp));
            }
        }
        out.normal_form(&self.target.ring)
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GradedMatrix) -> GradedMatrix {
        assert_eq!(other.target.rank(), self.source.rank());
        let ring = &self.target.ring;
        let entries: Vec<Vec<Polynomial>> = (0..self.target.rank())
            .map(|i| {
                (0..other.source.rank())
                    .map(|j| {
                        let mut acc = Polynomial::zero(
                            other.source.generator_degrees[j]
                                - self.target.generator_degrees[i],
                        );
                        for k in 0..self.source.rank() {
                            let a = &self.entries[i][k];
                            let b = &other.entries[k][j];
                            if !a.is_zero() && !b.is_zero() {
                                acc = acc.add(&a.mul(b));
                            }
                        }
                        ring::normal_form(&acc, ring)
                    })
                    .collect()
            })
            .collect();
        GradedMatrix::new(other.source.clone(), self.target.clone(), entries)
    }

    /// Reduces every entry modulo the ring relation.
    pub fn normal_form(&self) -> GradedMatrix {
        let ring = &self.target.ring;
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| ring::normal_form(p, ring)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::make_ring;

    #[test]
    fn graded_rank_bookkeeping() {
        let a = make_ring(2, true).unwrap();
        // A(-1) ⊕ A(-2): generators in degrees 1 and 2
        let f = FreeModule::new(a.clone(), vec![1, 2]);
        assert_eq!(f.graded_dim(0), 0);
        assert_eq!(f.graded_dim(1), 1);
        assert_eq!(f.graded_dim(2), 2); // x0*g0, g1
        assert_eq!(f.graded_dim(3), 3); // {x0^2, x1}*g0, x0*g1
    }

    #[test]
    fn koszul_composition_is_zero() {
        let a = make_ring(2, true).unwrap();
        let f0 = FreeModule::new(a.clone(), vec![0]);
        let f1 = FreeModule::new(a.clone(), vec![1, 2]);
        let f2 = FreeModule::new(a.clone(), vec![3]);
        let d1 = GradedMatrix::new(
            f1.clone(),
            f0,
            vec![vec![parse_poly("x0", &a).unwrap(), parse_poly("x1", &a).unwrap()]],
        );
        let d2 = GradedMatrix::new(
            f2,
            f1,
            vec![
                vec![parse_poly("x1", &a).unwrap()],
                vec![parse_poly("-x0", &a).unwrap()],
            ],
        );
        assert!(d1.compose(&d2).is_zero());
    }
}
