//! Graded and qgr-level isomorphism testing with explicit witnesses.
//!
//! The graded test searches small integer combinations of a basis of
//! `Hom(M,N)_0` for a map with vanishing kernel and cokernel. The
//! qgr-level test accepts torsion kernel and cokernel instead, which
//! identifies objects that agree in the quotient category.

use num_traits::Zero;

use crate::coeff::{self, Coeff};
use crate::maps::{hom_space, MapError, ModuleMap};
use crate::module::PresentedModule;

/// Default bound on integer coefficients in witness searches.
pub const COEFFICIENT_HEIGHT: i64 = 2;

#[derive(Debug)]
pub enum IsoVerdict {
    Isomorphic { forward: ModuleMap, backward: ModuleMap },
    NotIsomorphic { degree: i64, dims: (usize, usize) },
    /// The bounded search found no witness; no claim either way.
    Undetermined,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }
}

/// Degree window on which Hilbert functions are compared first.
fn comparison_window(m: &PresentedModule, n: &PresentedModule) -> (i64, i64) {
    let a_max = m.ring.max_weight();
    let lows: Vec<i64> = m
        .min_generator_degree()
        .into_iter()
        .chain(n.min_generator_degree())
        .collect();
    let highs: Vec<i64> = [
        m.max_generator_degree(),
        n.max_generator_degree(),
        m.relations.source.generator_degrees.iter().copied().max(),
        n.relations.source.generator_degrees.iter().copied().max(),
    ]
    .into_iter()
    .flatten()
    .collect();
    let lo = lows.iter().copied().min().unwrap_or(0) - 1;
    let hi = highs.iter().copied().max().unwrap_or(0) + 3 * a_max;
    (lo, hi)
}

/// Enumerates nonzero coefficient vectors of bounded height, first
/// nonzero entry positive (scalar multiples are redundant witnesses).
fn coefficient_vectors(dim: usize, height: i64) -> Vec<Vec<Coeff>> {
    let mut out = Vec::new();
    let range: Vec<i64> = (-height..=height).collect();
    let mut current = vec![0i64; dim];
    fn rec(
        pos: usize,
        dim: usize,
        range: &[i64],
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<Coeff>>,
    ) {
        if pos == dim {
            if let Some(first) = current.iter().find(|&&v| v != 0) {
                if *first > 0 {
                    out.push(current.iter().map(|&v| coeff::from_i64(v)).collect());
                }
            }
            return;
        }
        for &v in range {
            current[pos] = v;
            rec(pos + 1, dim, range, current, out);
        }
        current[pos] = 0;
    }
    rec(0, dim, &range, &mut current, &mut out);
    // lower height first: cheaper witnesses are reported when they exist
    out.sort_by_key(|v| {
        v.iter()
            .map(|c| c.numer().to_string().trim_start_matches('-').len())
            .sum::<usize>()
    });
    out
}

fn combine(basis: &[ModuleMap], coeffs: &[Coeff]) -> Option<ModuleMap> {
    let mut acc: Option<ModuleMap> = None;
    for (map, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let scaled = map.scale(c);
        acc = Some(match acc {
            None => scaled,
            Some(prev) => prev.add(&scaled).ok()?,
        });
    }
    acc
}

/// Constructs the inverse of a bijective `map` by expressing each target
/// generator inside the image.
fn invert(map: &ModuleMap) -> Result<ModuleMap, MapError> {
    let m = &map.source;
    let n = &map.target;
    let mut list: Vec<crate::freemod::FreeElement> =
        (0..m.generators.rank()).map(|j| map.matrix.column(j)).collect();
    let img_count = list.len();
    list.extend(n.relations.columns());
    let tracked = crate::gb::SubmoduleGb::tracked(&n.generators, &list)?;
    let mut cols = Vec::new();
    for j in 0..n.generators.rank() {
        let gen = n.generators.generator(j);
        let coeffs = tracked.express(&gen).ok_or_else(|| {
            MapError::Shape("inverse witness: generator not in image".into())
        })?;
        let mut col = m.generators.zero_element(n.generators.generator_degrees[j]);
        for (i, c) in coeffs[..img_count].iter().enumerate() {
            if !c.is_zero() {
                col.components[i] = col.components[i].add(c);
            }
        }
        cols.push(col);
    }
    ModuleMap::new(n.clone(), m.clone(), cols, 0)
}

/// Graded isomorphism test with witness maps in both directions.
pub fn is_isomorphic(m: &PresentedModule, n: &PresentedModule) -> Result<IsoVerdict, MapError> {
    let (lo, hi) = comparison_window(m, n);
    for k in lo..=hi {
        let (dm, dn) = (m.graded_dim(k), n.graded_dim(k));
        if dm != dn {
            return Ok(IsoVerdict::NotIsomorphic { degree: k, dims: (dm, dn) });
        }
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(if m.is_zero_module() && n.is_zero_module() {
            IsoVerdict::Isomorphic {
                forward: ModuleMap::zero(m, n),
                backward: ModuleMap::zero(n, m),
            }
        } else {
            IsoVerdict::Undetermined
        });
    }
    for coeffs in coefficient_vectors(basis.len(), COEFFICIENT_HEIGHT) {
        let Some(candidate) = combine(&basis, &coeffs) else { continue };
        let (coker, _) = candidate.cokernel()?;
        if !coker.is_zero_module() {
            continue;
        }
        let (ker, _) = candidate.kernel()?;
        if !ker.is_zero_module() {
            continue;
        }
        let backward = invert(&candidate)?;
        return Ok(IsoVerdict::Isomorphic { forward: candidate, backward });
    }
    Ok(IsoVerdict::Undetermined)
}

#[derive(Debug)]
pub struct QgrIsoVerdict {
    pub isomorphic: bool,
    /// A degree-0 map with torsion kernel and cokernel, when found.
    pub witness: Option<ModuleMap>,
    pub note: String,
}

fn qgr_witness_search(
    m: &PresentedModule,
    n: &PresentedModule,
) -> Result<Option<ModuleMap>, MapError> {
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for coeffs in coefficient_vectors(basis.len(), COEFFICIENT_HEIGHT) {
        let Some(candidate) = combine(&basis, &coeffs) else { continue };
        let (coker, _) = candidate.cokernel()?;
        if !coker.is_torsion() {
            continue;
        }
        let (ker, _) = candidate.kernel()?;
        if !ker.is_torsion() {
            continue;
        }
        return Ok(Some(candidate));
    }
    Ok(None)
}

/// Objects are qgr-isomorphic when a degree-0 map with torsion kernel
/// and cokernel exists; truncating either side is harmless, so one
/// truncated retry is attempted in each direction.
pub fn qgr_isomorphic(
    m: &PresentedModule,
    n: &PresentedModule,
) -> Result<QgrIsoVerdict, MapError> {
    if m.is_zero_module() || m.is_torsion() {
        let other_torsion = n.is_zero_module() || n.is_torsion();
        return Ok(QgrIsoVerdict {
            isomorphic: other_torsion,
            witness: None,
            note: "torsion objects vanish in the quotient category".into(),
        });
    }
    if let Some(w) = qgr_witness_search(m, n)? {
        return Ok(QgrIsoVerdict {
            isomorphic: true,
            witness: Some(w),
            note: "direct witness".into(),
        });
    }
    if let Some(w) = qgr_witness_search(n, m)? {
        return Ok(QgrIsoVerdict {
            isomorphic: true,
            witness: Some(w),
            note: "witness in the reverse direction".into(),
        });
    }
    // truncated retries
    let a_max = m.ring.max_weight();
    let t = [m, n]
        .iter()
        .filter_map(|x| x.max_generator_degree())
        .max()
        .unwrap_or(0)
        + a_max;
    let mt = crate::module::truncate(m, t).map_err(MapError::Module)?;
    if let Some(w) = qgr_witness_search(&mt, n)? {
        return Ok(QgrIsoVerdict {
            isomorphic: true,
            witness: Some(w),
            note: format!("witness from the truncation at {t}"),
        });
    }
    let nt = crate::module::truncate(n, t).map_err(MapError::Module)?;
    if let Some(w) = qgr_witness_search(&nt, m)? {
        return Ok(QgrIsoVerdict {
            isomorphic: true,
            witness: Some(w),
            note: format!("witness from the truncation at {t}"),
        });
    }
    Ok(QgrIsoVerdict {
        isomorphic: false,
        witness: None,
        note: "no bounded-height witness in either direction".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_chi, make_q};
    use crate::ring::make_ring;

    #[test]
    fn q_jj_is_chi_j() {
        for n in [2i64, 3] {
            let a = make_ring(n, true).unwrap();
            for j in [0i64, 3, 6] {
                let q = make_q(&a, j, 0).unwrap();
                let chi = make_chi(&a, j).unwrap();
                assert!(is_isomorphic(&q, &chi).unwrap().is_isomorphic(), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn identity_is_iso() {
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        let v = is_isomorphic(&chi, &chi).unwrap();
        assert!(v.is_isomorphic());
        if let IsoVerdict::Isomorphic { forward, backward } = v {
            let round = backward.compose(&forward).unwrap();
            // acts as the identity on generators modulo relations
            let id = ModuleMap::identity(&chi);
            let diff = round.add(&id.scale(&coeff::from_i64(-1))).unwrap();
            assert!(diff.is_zero_map());
        }
    }

    #[test]
    fn chi_shift_by_period_graded_vs_qgr() {
        let a = make_ring(2, true).unwrap();
        let chi0 = make_chi(&a, 0).unwrap();
        let chi5 = make_chi(&a, 5).unwrap();
        match is_isomorphic(&chi0, &chi5).unwrap() {
            IsoVerdict::NotIsomorphic { degree, dims } => {
                assert_eq!(degree, -5);
                assert_eq!(dims, (0, 1));
            }
            other => panic!("expected graded mismatch, got {other:?}"),
        }
        let qgr = qgr_isomorphic(&chi0, &chi5).unwrap();
        assert!(qgr.isomorphic);
        assert!(qgr.witness.is_some());
    }

    #[test]
    fn different_chis_not_qgr_isomorphic() {
        let a = make_ring(2, true).unwrap();
        let chi0 = make_chi(&a, 0).unwrap();
        let chi1 = make_chi(&a, 1).unwrap();
        assert!(!qgr_isomorphic(&chi0, &chi1).unwrap().isomorphic);
    }
}
