//! Ext classes as explicit cocycles on partial resolutions of
//! truncations, with Yoneda composition by cocycle lifting.

use num_traits::Zero;

use crate::coeff::Coeff;
use crate::engine::Engine;
use crate::freemod::FreeElement;
use crate::gb::SubmoduleGb;
use crate::linalg::SpanBuilder;
use crate::maps::piece_coordinates;
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

use super::{ext_qgr, ExtError, ExtOptions};

/// A cohomology class of `Ext^p_qgr(M, N)`: a degree-0 cocycle on the
/// `p`-th step of a resolution of a truncation of `M`, remembered
/// together with the truncation level that realized it.
#[derive(Debug, Clone)]
pub struct ExtClass {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub degree: usize,
    /// Truncation level of the source (in normalized grading).
    pub truncation: i64,
    /// Twist normalization applied to the source: the resolution is of
    /// `trunc(source.twist(shift), truncation)`.
    pub shift: i64,
    /// Value on each generator of `F_p`: an element of the target of
    /// degree `generator degree + shift`.
    pub cocycle: Vec<FreeElement>,
}

/// Shared data for one truncation level of a source module.
struct LevelData {
    /// truncation level
    #[allow(dead_code)]
    t: i64,
    shift: i64,
    normalized: PresentedModule,
    #[allow(dead_code)]
    truncation: PresentedModule,
    /// Inclusion of the truncation generators into `F_0` of the
    /// normalized module.
    inclusion: Vec<FreeElement>,
    resolution: std::sync::Arc<crate::resolution::ChainComplexSegment>,
}

fn level_data(
    engine: &Engine,
    m: &PresentedModule,
    t: i64,
    length: usize,
) -> Result<LevelData, ExtError> {
    let shift = m
        .min_generator_degree()
        .ok_or_else(|| ExtError::InvalidParameter("zero module".into()))?;
    let normalized = m.twist(shift);
    let (truncation, inclusion) = {
        let pair = engine.truncation_with_inclusion(&normalized, t)?;
        (pair.0.clone(), pair.1.clone())
    };
    let resolution = engine.resolution(&truncation, length)?;
    Ok(LevelData { t, shift, normalized, truncation, inclusion, resolution })
}

impl LevelData {
    /// Columns expressing the resolution's `F_0` generators inside the
    /// free module of the normalized source.
    fn f0_in_ambient(&self) -> Vec<FreeElement> {
        let embed = &self.resolution.augmentation;
        (0..embed.source.rank())
            .map(|j| {
                let mut acc: Option<FreeElement> = None;
                for (i, incl) in self.inclusion.iter().enumerate() {
                    let coeff = &embed.entries[i][j];
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = incl.mul_poly(coeff);
                    acc = Some(match acc {
                        None => term,
                        Some(prev) => prev.add(&term),
                    });
                }
                acc.unwrap_or_else(|| {
                    self.normalized
                        .generators
                        .zero_element(embed.source.generator_degrees[j])
                })
            })
            .collect()
    }
}

/// Smallest level above `t` where the truncation of `m_norm` changes.
fn next_distinct_level(m_norm: &PresentedModule, t: i64) -> i64 {
    let mut d = t;
    while m_norm.graded_dim(d) == 0 {
        d += 1;
    }
    d + 1
}

/// Bases of the Hom-complex pieces for a resolution against `n`.
struct HomComplexData {
    bases: Vec<Vec<(usize, Monomial)>>,
    offsets: Vec<Vec<usize>>,
}

fn hom_complex_data(
    res: &crate::resolution::ChainComplexSegment,
    n: &PresentedModule,
    shift: i64,
    upto: usize,
) -> HomComplexData {
    let ngb = n.gb();
    let mut bases = Vec::new();
    let mut offsets = Vec::new();
    for p in 0..=upto {
        let degrees = res
            .module(p)
            .map(|f| f.generator_degrees.clone())
            .unwrap_or_default();
        let mut basis = Vec::new();
        let mut offs = Vec::new();
        for &b in &degrees {
            offs.push(basis.len());
            basis.extend(ngb.standard_monomials(b + shift));
        }
        bases.push(basis);
        offsets.push(offs);
    }
    HomComplexData { bases, offsets }
}

fn coords_to_values(
    level: &LevelData,
    n: &PresentedModule,
    data: &HomComplexData,
    p: usize,
    coords: &[Coeff],
) -> Vec<FreeElement> {
    let f_p = level.resolution.module(p).expect("resolution long enough");
    (0..f_p.rank())
        .map(|j| {
            let b = f_p.generator_degrees[j];
            let mut value = n.generators.zero_element(b + level.shift);
            let start = data.offsets[p][j];
            let end = if j + 1 < f_p.rank() { data.offsets[p][j + 1] } else { data.bases[p].len() };
            for (idx, (comp, mono)) in data.bases[p][start..end].iter().enumerate() {
                let c = &coords[start + idx];
                if !c.is_zero() {
                    value.components[*comp] = value.components[*comp]
                        .add(&Polynomial::from_monomial(mono.clone(), c.clone()));
                }
            }
            value
        })
        .collect()
}

fn values_to_coords(
    level: &LevelData,
    n: &PresentedModule,
    data: &HomComplexData,
    p: usize,
    values: &[FreeElement],
) -> Vec<Coeff> {
    let ngb = n.gb();
    let f_p = level.resolution.module(p).expect("resolution long enough");
    let mut coords = vec![crate::coeff::zero(); data.bases[p].len()];
    for (j, value) in values.iter().enumerate() {
        let start = data.offsets[p][j];
        let end = if j + 1 < f_p.rank() { data.offsets[p][j + 1] } else { data.bases[p].len() };
        let basis = &data.bases[p][start..end];
        for (idx, c) in piece_coordinates(&ngb, basis, value).into_iter().enumerate() {
            coords[start + idx] = c;
        }
    }
    coords
}

/// Span of the coboundaries in `C^p` (empty for `p = 0`).
fn coboundary_span(
    level: &LevelData,
    n: &PresentedModule,
    data: &HomComplexData,
    p: usize,
) -> SpanBuilder {
    let mut span = SpanBuilder::new(data.bases[p].len());
    if p == 0 {
        return span;
    }
    let Some(d) = level.resolution.differentials.get(p - 1) else { return span };
    let matrix = super::hom_complex_matrix(
        &level.resolution,
        n,
        level.shift,
        p - 1,
        &data.bases,
        &data.offsets,
        d,
    );
    for col in 0..matrix.cols {
        let v: Vec<Coeff> = (0..matrix.rows).map(|r| matrix[(r, col)].clone()).collect();
        span.try_insert(v);
    }
    span
}

/// The `index`-th basis class of `Ext^p_qgr(M, N)`.
pub fn ext_class(
    engine: &Engine,
    m: &PresentedModule,
    n: &PresentedModule,
    p: usize,
    index: usize,
    opts: &ExtOptions,
) -> Result<ExtClass, ExtError> {
    let result = ext_qgr(engine, m, n, p, opts)?;
    let dim = result.dim(p);
    if index >= dim {
        return Err(ExtError::InvalidIndex { index, dim });
    }
    let t = result
        .truncation_trace
        .last()
        .map(|(t, _)| *t)
        .ok_or_else(|| ExtError::InvalidParameter("no truncation trace".into()))?;
    let level = level_data(engine, m, t, p + 1)?;
    let data = hom_complex_data(&level.resolution, n, level.shift, p + 1);
    // cocycles: nullspace of delta^p
    let cocycles: Vec<Vec<Coeff>> = match level.resolution.differentials.get(p) {
        None => (0..data.bases[p].len())
            .map(|i| {
                let mut v = vec![crate::coeff::zero(); data.bases[p].len()];
                v[i] = crate::coeff::one();
                v
            })
            .collect(),
        Some(d) => {
            let matrix = super::hom_complex_matrix(
                &level.resolution,
                n,
                level.shift,
                p,
                &data.bases,
                &data.offsets,
                d,
            );
            if matrix.rows == 0 {
                (0..data.bases[p].len())
                    .map(|i| {
                        let mut v = vec![crate::coeff::zero(); data.bases[p].len()];
                        v[i] = crate::coeff::one();
                        v
                    })
                    .collect()
            } else {
                matrix.nullspace()
            }
        }
    };
    let mut span = coboundary_span(&level, n, &data, p);
    let mut found = 0usize;
    for z in cocycles {
        if span.try_insert(z.clone()) {
            if found == index {
                let values = coords_to_values(&level, n, &data, p, &z);
                return Ok(ExtClass {
                    source: m.clone(),
                    target: n.clone(),
                    degree: p,
                    truncation: t,
                    shift: level.shift,
                    cocycle: values,
                });
            }
            found += 1;
        }
    }
    Err(ExtError::InvalidIndex { index, dim })
}

/// Restricts a class to a deeper truncation level `t_new > t` by
/// lifting the inclusion of truncations to a chain map.
pub fn restrict_class(
    engine: &Engine,
    class: &ExtClass,
    t_new: i64,
) -> Result<ExtClass, ExtError> {
    let p = class.degree;
    let from = level_data(engine, &class.source, class.truncation, p + 1)?;
    let to = level_data(engine, &class.source, t_new, p + 1)?;
    let chain = comparison_chain(&from, &to, p)?;
    // pull back: value on F_p(to) generator = alpha applied to the
    // chain image (a combination of F_p(from) generators)
    let values: Vec<FreeElement> = (0..chain[p].len())
        .map(|j| {
            let column = &chain[p][j];
            let mut acc: Option<FreeElement> = None;
            for (i, coeff) in column.components.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let term = class.cocycle[i].mul_poly(coeff);
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term),
                });
            }
            acc.map(|v| v.normal_form(&class.target.ring)).unwrap_or_else(|| {
                let b = to.resolution.module(p).unwrap().generator_degrees[j];
                class.target.generators.zero_element(b + to.shift)
            })
        })
        .collect();
    Ok(ExtClass {
        source: class.source.clone(),
        target: class.target.clone(),
        degree: p,
        truncation: t_new,
        shift: to.shift,
        cocycle: values,
    })
}

/// A chain map `F_.(to) -> F_.(from)` over the inclusion
/// `trunc(M, t_new) ⊆ trunc(M, t_old)`; entry `p` lists, per generator
/// of `F_p(to)`, its image as an element of `F_p(from)`.
fn comparison_chain(
    from: &LevelData,
    to: &LevelData,
    upto: usize,
) -> Result<Vec<Vec<FreeElement>>, ExtError> {
    let ring = &from.normalized.ring;
    // step 0: express to-generators inside the from-span
    let from_cols = from.f0_in_ambient();
    let to_cols = to.f0_in_ambient();
    let mut list = from_cols.clone();
    let split = list.len();
    list.extend(from.normalized.relations.columns());
    let solver = SubmoduleGb::tracked(&from.normalized.generators, &list)?;
    let f0_from = from.resolution.module(0).expect("F0").clone();
    let mut chain: Vec<Vec<FreeElement>> = Vec::new();
    let mut c0 = Vec::new();
    for col in &to_cols {
        let coeffs = solver
            .express(col)
            .ok_or(ExtError::LiftFailure { t: to.t })?;
        let mut e = f0_from.zero_element(col.degree);
        for (i, c) in coeffs[..split].iter().enumerate() {
            if !c.is_zero() {
                e.components[i] = e.components[i].add(c);
            }
        }
        c0.push(e);
    }
    chain.push(c0);
    for i in 0..upto {
        let d_from = &from.resolution.differentials[i];
        let d_to = &to.resolution.differentials[i];
        let f_from_next = from.resolution.module(i + 1).expect("module").clone();
        let solver = SubmoduleGb::tracked(
            from.resolution.module(i).expect("module"),
            &d_from.columns(),
        )?;
        let mut c_next = Vec::new();
        for j in 0..d_to.source.rank() {
            // c_i(d_to(e_j)) as an element of F_i(from)
            let image = apply_columns(&chain[i], &d_to.column(j), ring);
            let coeffs = solver
                .express(&image)
                .ok_or(ExtError::LiftFailure { t: to.t })?;
            let mut e = f_from_next.zero_element(image.degree);
            for (idx, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    e.components[idx] = e.components[idx].add(c);
                }
            }
            c_next.push(e);
        }
        chain.push(c_next);
    }
    Ok(chain)
}

/// Evaluates a column map given per-generator images: `v` has poly
/// coordinates over the generators whose images are `images`.
fn apply_columns(
    images: &[FreeElement],
    v: &FreeElement,
    ring: &crate::ring::RingDescriptor,
) -> FreeElement {
    let mut acc: Option<FreeElement> = None;
    for (i, p) in v.components.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let term = images[i].mul_poly(p);
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.add(&term),
        });
    }
    match acc {
        Some(e) => e.normal_form(ring),
        None => {
            let rank = images.first().map(|e| e.components.len()).unwrap_or(0);
            FreeElement {
                components: (0..rank).map(|_| Polynomial::zero(0)).collect(),
                degree: v.degree,
            }
        }
    }
}

/// Yoneda composition `beta ∘ alpha` in `Ext^{p+q}(M, K)` for
/// `alpha ∈ Ext^p(M, N)` and `beta ∈ Ext^q(N, K)`: lifts alpha's
/// cocycle along the resolution underlying beta and composes.
pub fn yoneda_compose(
    engine: &Engine,
    beta: &ExtClass,
    alpha: &ExtClass,
    opts: &ExtOptions,
) -> Result<ExtClass, ExtError> {
    if alpha.target != beta.source {
        return Err(ExtError::InvalidParameter(
            "classes are not composable: inner target differs from outer source".into(),
        ));
    }
    let p = alpha.degree;
    let q = beta.degree;
    // beta's side: resolution of trunc(N(shift_b), t_b) of length q + 1
    let n_level = level_data(engine, &beta.source, beta.truncation, q + 1)?;
    let required = beta.truncation + n_level.shift;
    // alpha's values must land inside the truncation of N; since the
    // p-th step of a resolution of a degree-t truncation only has
    // generators in degrees >= t + p, one direct jump suffices
    let mut alpha_now = alpha.clone();
    let mut guard = 0;
    loop {
        let m_level = level_data(engine, &alpha_now.source, alpha_now.truncation, p + 1)?;
        let min_value_degree = m_level
            .resolution
            .module(p)
            .map(|f| f.generator_degrees.iter().copied().min().unwrap_or(i64::MAX))
            .unwrap_or(i64::MAX)
            + m_level.shift;
        if min_value_degree >= required {
            break;
        }
        let jump =
            (required - m_level.shift - p as i64).max(alpha_now.truncation + 1);
        let mut t_next = next_distinct_level(&m_level.normalized, jump - 1);
        if t_next <= alpha_now.truncation {
            t_next = next_distinct_level(&m_level.normalized, alpha_now.truncation);
        }
        alpha_now = restrict_class(engine, &alpha_now, t_next)?;
        guard += 1;
        if guard > 10 {
            return Err(ExtError::LiftFailure { t: alpha_now.truncation });
        }
    }
    let m_level = level_data(engine, &alpha_now.source, alpha_now.truncation, p + q + 1)?;
    // lift psi_0 .. psi_q through the N-side resolution
    let n_f0_cols = n_level.f0_in_ambient();
    let split = n_f0_cols.len();
    let mut list = n_f0_cols;
    list.extend(n_level.normalized.relations.columns());
    let aug_solver = SubmoduleGb::tracked(&n_level.normalized.generators, &list)?;
    let ring = alpha.source.ring.clone();
    let _delta = alpha_now.shift - n_level.shift;
    let f0_n = n_level.resolution.module(0).expect("F0").clone();
    let mut psi: Vec<Vec<FreeElement>> = Vec::new();
    let mut psi0 = Vec::new();
    for value in &alpha_now.cocycle {
        // value in N of degree d; as an element of N(shift_b) it has
        // degree d - shift_b and must lie in trunc(N(shift_b), t_b)
        let as_norm = FreeElement {
            components: value.components.clone(),
            degree: value.degree - n_level.shift,
        };
        let coeffs = aug_solver
            .express(&as_norm)
            .ok_or(ExtError::LiftFailure { t: beta.truncation })?;
        let mut e = f0_n.zero_element(as_norm.degree);
        for (i, c) in coeffs[..split].iter().enumerate() {
            if !c.is_zero() {
                e.components[i] = e.components[i].add(c);
            }
        }
        psi0.push(e);
    }
    psi.push(psi0);
    for i in 0..q {
        let d_n = &n_level.resolution.differentials[i];
        let solver = SubmoduleGb::tracked(
            n_level.resolution.module(i).expect("module"),
            &d_n.columns(),
        )?;
        let d_m = &m_level.resolution.differentials[p + i];
        let f_next = n_level.resolution.module(i + 1).expect("module").clone();
        let mut psi_next = Vec::new();
        for j in 0..d_m.source.rank() {
            let rhs = apply_columns(&psi[i], &d_m.column(j), &ring);
            let coeffs = solver
                .express(&rhs)
                .ok_or(ExtError::LiftFailure { t: beta.truncation })?;
            let mut e = f_next.zero_element(rhs.degree);
            for (idx, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    e.components[idx] = e.components[idx].add(c);
                }
            }
            psi_next.push(e);
        }
        psi.push(psi_next);
    }
    // composite cocycle on F_{p+q}(M): beta applied to psi_q
    let composite: Vec<FreeElement> = (0..psi[q].len())
        .map(|j| {
            let column = &psi[q][j];
            let mut acc: Option<FreeElement> = None;
            for (i, coeff) in column.components.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let term = beta.cocycle[i].mul_poly(coeff);
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term),
                });
            }
            match acc {
                Some(v) => v.normal_form(&beta.target.ring),
                None => {
                    let b = m_level.resolution.module(p + q).unwrap().generator_degrees[j];
                    beta.target.generators.zero_element(b + alpha_now.shift)
                }
            }
        })
        .collect();
    let _ = opts;
    Ok(ExtClass {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        degree: p + q,
        truncation: alpha_now.truncation,
        shift: alpha_now.shift,
        cocycle: composite,
    })
}

/// Cohomological nontriviality, decided against the coboundary space
/// and confirmed at the next distinct truncation level.
pub fn is_nonzero(engine: &Engine, class: &ExtClass) -> Result<bool, ExtError> {
    let verdict_here = nonzero_at(engine, class)?;
    let level = level_data(engine, &class.source, class.truncation, class.degree + 1)?;
    let t_next = next_distinct_level(&level.normalized, class.truncation);
    let restricted = restrict_class(engine, class, t_next)?;
    let verdict_next = nonzero_at(engine, &restricted)?;
    if verdict_here != verdict_next {
        return Err(ExtError::InvalidParameter(format!(
            "nontriviality verdict changed between truncation {} and {}",
            class.truncation, t_next
        )));
    }
    Ok(verdict_here)
}

fn nonzero_at(engine: &Engine, class: &ExtClass) -> Result<bool, ExtError> {
    let p = class.degree;
    let level = level_data(engine, &class.source, class.truncation, p + 1)?;
    let data = hom_complex_data(&level.resolution, &class.target, level.shift, p + 1);
    let coords = values_to_coords(&level, &class.target, &data, p, &class.cocycle);
    if coords.iter().all(|c| c.is_zero()) {
        return Ok(false);
    }
    let span = coboundary_span(&level, &class.target, &data, p);
    Ok(!span.contains(&coords))
}
