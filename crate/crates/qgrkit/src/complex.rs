//! Complexes of presented modules and exact homology vanishing tests.

use crate::freemod::FreeElement;
use crate::gb::{self, SubmoduleGb};
use crate::maps::{MapError, ModuleMap};
use crate::module::PresentedModule;

/// A finite complex `C_L -> ... -> C_1 -> C_0` of presented modules;
/// `maps[i]` is the differential `C_{i+1} -> C_i`.
#[derive(Debug, Clone)]
pub struct ModuleComplex {
    pub modules: Vec<PresentedModule>,
    pub maps: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn new(modules: Vec<PresentedModule>, maps: Vec<ModuleMap>) -> Result<Self, MapError> {
        assert_eq!(maps.len() + 1, modules.len(), "need one map per adjacent pair");
        for (i, m) in maps.iter().enumerate() {
            if m.source != modules[i + 1] || m.target != modules[i] {
                return Err(MapError::Shape(format!("map {i} does not match its modules")));
            }
        }
        let complex = ModuleComplex { modules, maps };
        for i in 0..complex.maps.len().saturating_sub(1) {
            let composite = complex.maps[i].compose(&complex.maps[i + 1])?;
            if !composite.is_zero_map() {
                return Err(MapError::Shape(format!(
                    "d∘d nonzero between positions {} and {}",
                    i + 2,
                    i
                )));
            }
        }
        Ok(complex)
    }

    pub fn length(&self) -> usize {
        self.modules.len()
    }

    /// Generators of `ker(d_pos: C_pos -> C_{pos-1})` at the free level
    /// (all generators when `pos = 0`, since `d_0 = 0`).
    fn kernel_generators(&self, pos: usize) -> Result<Vec<FreeElement>, MapError> {
        let module = &self.modules[pos];
        if pos == 0 {
            return Ok((0..module.generators.rank())
                .map(|j| module.generators.generator(j))
                .collect());
        }
        let map = &self.maps[pos - 1];
        let mut combined: Vec<FreeElement> = (0..module.generators.rank())
            .map(|j| map.matrix.column(j))
            .collect();
        let count = combined.len();
        combined.extend(map.target.relations.columns());
        let tracked = SubmoduleGb::tracked(&map.target.generators, &combined)?;
        let (_, syz) = tracked.syzygy_generators();
        Ok(syz
            .into_iter()
            .map(|s| FreeElement {
                components: s.components[..count].to_vec(),
                degree: s.degree,
            })
            .filter(|v| !v.is_zero())
            .collect())
    }

    /// Exactness at `pos`: `ker(d_pos) ⊆ im(d_{pos+1}) + relations`.
    pub fn homology_is_zero(&self, pos: usize) -> Result<bool, MapError> {
        assert!(pos < self.modules.len());
        let kernel = self.kernel_generators(pos)?;
        let module = &self.modules[pos];
        let mut span: Vec<FreeElement> = module.relations.columns();
        if pos + 1 < self.modules.len() {
            let incoming = &self.maps[pos];
            span.extend(
                (0..incoming.source.generators.rank()).map(|j| incoming.matrix.column(j)),
            );
        }
        let gb = gb::buchberger(&span, &module.generators)?;
        Ok(kernel.iter().all(|v| gb.contains(v)))
    }

    /// Exactness at every position.
    pub fn is_exact(&self) -> Result<bool, MapError> {
        for pos in 0..self.modules.len() {
            if !self.homology_is_zero(pos)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Positions where homology fails to vanish.
    pub fn failing_positions(&self) -> Result<Vec<usize>, MapError> {
        let mut out = Vec::new();
        for pos in 0..self.modules.len() {
            if !self.homology_is_zero(pos)? {
                out.push(pos);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_chi, make_q};
    use crate::parse::parse_poly;
    use crate::poly::Polynomial;
    use crate::ring::make_ring;

    #[test]
    fn short_exact_sequence_inj() {
        // 0 -> chi_j -> Q_{j+2r,j} -> Q_{j+2r,j+2} -> 0, n = 2, j = 0, r = 1
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        let q20 = make_q(&a, 0, 1).unwrap();
        let q22 = make_q(&a, 2, 0).unwrap();
        let x1 = parse_poly("x1", &a).unwrap();
        let inj = ModuleMap::from_poly(&chi, &q20, &x1).unwrap();
        let proj = ModuleMap::from_poly(&q20, &q22, &Polynomial::one(4)).unwrap();
        // complex indexed C_2 = chi, C_1 = Q_{2,0}, C_0 = Q_{2,2}
        let complex =
            ModuleComplex::new(vec![q22, q20, chi], vec![proj, inj]).unwrap();
        assert!(complex.is_exact().unwrap());
    }

    #[test]
    fn broken_complex_detected() {
        // dropping the relation x2 from chi breaks exactness of (inj)
        let a = make_ring(2, true).unwrap();
        let broken = crate::module::cyclic_quotient(
            &a,
            &[a.variable(0), a.variable(1)],
            0,
            Some("broken".into()),
        );
        let q20 = make_q(&a, 0, 1).unwrap();
        let q22 = make_q(&a, 2, 0).unwrap();
        let x1 = parse_poly("x1", &a).unwrap();
        let inj = ModuleMap::from_poly(&broken, &q20, &x1).unwrap();
        let proj = ModuleMap::from_poly(&q20, &q22, &Polynomial::one(4)).unwrap();
        let complex =
            ModuleComplex::new(vec![q22, q20, broken], vec![proj, inj]).unwrap();
        // the truncated module A/(x0,x1) has extra elements that do not
        // inject: kernel of the map at position 2 is nonzero
        assert!(!complex.is_exact().unwrap());
        assert!(!complex.failing_positions().unwrap().is_empty());
    }
}
