//! Graded free resolutions, computed stepwise by syzygies and kept
//! minimal (no unit entries in any differential).

use serde::{Deserialize, Serialize};

use crate::freemod::{FreeElement, FreeModule, GradedMatrix};
use crate::gb::{self, GbError, SubmoduleGb};
use crate::module::PresentedModule;

/// A finite run `F_L -> ... -> F_1 -> F_0` of free modules over the
/// module's ring, augmented towards the presented module it resolves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainComplexSegment {
    /// `F_0 .. F_L`.
    pub modules: Vec<FreeModule>,
    /// `d_k : F_k -> F_{k-1}` at index `k - 1`.
    pub differentials: Vec<GradedMatrix>,
    /// Inclusion of the minimized generator set into the generators of
    /// the resolved module.
    pub augmentation: GradedMatrix,
}

impl ChainComplexSegment {
    /// Homological length: the largest index with a module present.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, k: usize) -> Option<&FreeModule> {
        self.modules.get(k)
    }

    /// Betti numbers: ranks of the free modules.
    pub fn betti(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// `d_{k-1} ∘ d_k = 0` for all valid `k` (exact entry check over the
    /// quotient ring: entries are reduced to normal form).
    pub fn differentials_compose_to_zero(&self) -> bool {
        (1..self.differentials.len())
            .all(|k| self.differentials[k - 1].compose(&self.differentials[k]).is_zero())
    }

    fn assert_minimal(&self) {
        for d in &self.differentials {
            for row in &d.entries {
                for p in row {
                    debug_assert!(
                        p.is_zero() || p.degree() != 0,
                        "unit entry in a differential"
                    );
                }
            }
        }
    }

    /// Extends the segment in place through homological position
    /// `length` by continuing the syzygy iteration.
    pub fn extend_to(&mut self, length: usize) -> Result<(), GbError> {
        while self.length() < length {
            let top = self.modules.last().expect("nonempty").clone();
            if top.rank() == 0 {
                self.modules.push(FreeModule::new(top.ring.clone(), Vec::new()));
                let src = self.modules.last().unwrap().clone();
                self.differentials.push(GradedMatrix::zero(src, top));
                continue;
            }
            let cols = self.differentials.last().map(|d| d.columns()).unwrap_or_default();
            let next_cols = if self.differentials.is_empty() {
                unreachable!("segment always starts with d_1 present")
            } else {
                syzygy_step(&self.modules[self.modules.len() - 2], &cols)?
            };
            let src = FreeModule::new(
                top.ring.clone(),
                next_cols.iter().map(|c| c.degree).collect(),
            );
            let d = GradedMatrix::from_columns(src.clone(), top, &next_cols);
            self.modules.push(src);
            self.differentials.push(d);
        }
        self.assert_minimal();
        Ok(())
    }
}

/// Minimal generators of the syzygies of `cols` inside `target`.
fn syzygy_step(
    target: &FreeModule,
    cols: &[FreeElement],
) -> Result<Vec<FreeElement>, GbError> {
    let tracked = SubmoduleGb::tracked(target, cols)?;
    let (syz_ambient, syz) = tracked.syzygy_generators();
    gb::minimal_generators(&syz, &syz_ambient)
}

/// Resolves `m` through homological position `length`: the returned
/// segment has modules `F_0 ..= F_length` (zero modules once the
/// resolution terminates) and is exact at positions `< length`.
pub fn free_resolution(
    m: &PresentedModule,
    length: usize,
) -> Result<ChainComplexSegment, GbError> {
    let (minimized, embed) = m.minimize();
    let f0 = minimized.generators.clone();
    let d1_cols = gb::minimal_generators(&minimized.relations.columns(), &f0)?;
    let mut segment = ChainComplexSegment {
        modules: vec![f0.clone()],
        differentials: Vec::new(),
        augmentation: embed,
    };
    if length == 0 {
        return Ok(segment);
    }
    let src = FreeModule::new(m.ring.clone(), d1_cols.iter().map(|c| c.degree).collect());
    segment.modules.push(src.clone());
    segment
        .differentials
        .push(GradedMatrix::from_columns(src, f0, &d1_cols));
    segment.extend_to(length)?;
    Ok(segment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ModuleComplex;
    use crate::maps::ModuleMap;
    use crate::module::{make_aq01, make_chi, PresentedModule};
    use crate::ring::make_ring;

    /// Exactness of the augmented complex, checked through membership
    /// rather than the syzygy construction itself.
    fn augmented_exact(m: &PresentedModule, seg: &ChainComplexSegment, upto: usize) -> bool {
        let ring = &m.ring;
        let mut modules =
            vec![m.clone()];
        let mut maps = Vec::new();
        let free_as_module = |f: &FreeModule, tag: usize| {
            PresentedModule::free(ring.clone(), f.generator_degrees.clone(), Some(format!("F{tag}")))
        };
        for (k, f) in seg.modules.iter().enumerate() {
            modules.push(free_as_module(f, k));
        }
        // augmentation F_0 -> M
        maps.push(
            ModuleMap::new(
                modules[1].clone(),
                modules[0].clone(),
                seg.augmentation.columns(),
                0,
            )
            .unwrap(),
        );
        for (k, d) in seg.differentials.iter().enumerate() {
            maps.push(
                ModuleMap::new(
                    modules[k + 2].clone(),
                    modules[k + 1].clone(),
                    d.columns(),
                    0,
                )
                .unwrap(),
            );
        }
        let complex = ModuleComplex::new(modules, maps).unwrap();
        (0..=upto).all(|pos| complex.homology_is_zero(pos).unwrap())
    }

    #[test]
    fn koszul_resolution_of_aq01() {
        // A/(x0,x1) over A: 0 -> A(-3) -> A(-1) ⊕ A(-2) -> A
        let a = make_ring(2, true).unwrap();
        let m = make_aq01(&a, 0).unwrap();
        let seg = free_resolution(&m, 3).unwrap();
        assert_eq!(seg.modules[0].generator_degrees, vec![0]);
        assert_eq!(seg.modules[1].generator_degrees, vec![1, 2]);
        assert_eq!(seg.modules[2].generator_degrees, vec![3]);
        assert_eq!(seg.modules[3].rank(), 0);
        assert!(seg.differentials_compose_to_zero());
        assert!(augmented_exact(&m, &seg, 3));
    }

    #[test]
    fn resolution_of_free_module_is_trivial() {
        let a = make_ring(2, true).unwrap();
        let m = PresentedModule::free(a, vec![0, -2], None);
        let seg = free_resolution(&m, 2).unwrap();
        assert_eq!(seg.modules[0].rank(), 2);
        assert_eq!(seg.modules[1].rank(), 0);
        assert_eq!(seg.modules[2].rank(), 0);
    }

    #[test]
    fn chi_resolution_over_a() {
        // chi over A: F_1 = A(-1) ⊕ A(-2) ⊕ A(-2n+1), infinite pd
        for n in [2i64, 3] {
            let a = make_ring(n, true).unwrap();
            let chi = make_chi(&a, 0).unwrap();
            let seg = free_resolution(&chi, 3).unwrap();
            let mut d1 = seg.modules[1].generator_degrees.clone();
            d1.sort();
            assert_eq!(d1, vec![1, 2, 2 * n - 1], "n = {n}");
            assert!(seg.modules[2].rank() > 0);
            assert!(seg.modules[3].rank() > 0);
            assert!(seg.differentials_compose_to_zero());
            // graded-rank bookkeeping: alternating sums match dims of chi
            for k in 0..=(4 * n) {
                let mut acc: i64 = 0;
                let mut sign = 1i64;
                for f in &seg.modules {
                    acc += sign * f.graded_dim(k) as i64;
                    sign = -sign;
                }
                // the window is only valid where the cut tail cannot
                // contribute: F_3 generators start at degree >= 4
                let tail_floor =
                    seg.modules[3].generator_degrees.iter().copied().min().unwrap_or(i64::MAX);
                if k < tail_floor {
                    assert_eq!(acc, chi.graded_dim(k) as i64, "n = {n}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn chi_resolution_over_b_terminates() {
        // over B, chi = B/(x0,x1,x2) has the Koszul resolution of length 3
        let b = make_ring(2, false).unwrap();
        let chi_b = crate::module::cyclic_quotient(
            &b,
            &[b.variable(0), b.variable(1), b.variable(2)],
            0,
            Some("chiB".into()),
        );
        let seg = free_resolution(&chi_b, 4).unwrap();
        assert_eq!(seg.betti(), vec![1, 3, 3, 1, 0]);
        assert!(augmented_exact(&chi_b, &seg, 4));
    }
}
