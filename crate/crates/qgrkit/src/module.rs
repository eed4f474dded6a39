//! Finitely presented graded modules and the named module families.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freemod::{FreeElement, FreeModule, GradedMatrix};
use crate::gb::{self, GbError, SubmoduleGb};
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

/// Structured identity of the named modules; drives oracle
/// applicability and report naming. Twisting adjusts the indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectTag {
    /// `A(k)` (or `B(k)` over the polynomial ring).
    FreeTwist(i64),
    /// `chi_j`.
    Chi(i64),
    /// `Q_{top,bottom}`.
    Q { top: i64, bottom: i64 },
    /// `(A/(x0,x1))(k)`.
    Aq01(i64),
    /// `G_j`.
    IdealG(i64),
    /// `H_j`.
    IdealH(i64),
}

impl ObjectTag {
    pub fn twist(self, c: i64) -> ObjectTag {
        match self {
            ObjectTag::FreeTwist(k) => ObjectTag::FreeTwist(k + c),
            ObjectTag::Chi(j) => ObjectTag::Chi(j + c),
            ObjectTag::Q { top, bottom } => ObjectTag::Q { top: top + c, bottom: bottom + c },
            ObjectTag::Aq01(k) => ObjectTag::Aq01(k + c),
            ObjectTag::IdealG(j) => ObjectTag::IdealG(j + c),
            ObjectTag::IdealH(j) => ObjectTag::IdealH(j + c),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ObjectTag::FreeTwist(k) => format!("A({k})"),
            ObjectTag::Chi(j) => format!("chi({j})"),
            ObjectTag::Q { top, bottom } => format!("Q({top},{bottom})"),
            ObjectTag::Aq01(k) => format!("Aq01({k})"),
            ObjectTag::IdealG(j) => format!("G({j})"),
            ObjectTag::IdealH(j) => format!("H({j})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("groebner failure: {0}")]
    Gb(#[from] GbError),
}

/// A finitely presented graded module: free generators and a homogeneous
/// relation matrix into them.
#[derive(Debug, Serialize, Deserialize)]
pub struct PresentedModule {
    pub ring: RingDescriptor,
    pub generators: FreeModule,
    pub relations: GradedMatrix,
    pub name: Option<String>,
    pub tag: Option<ObjectTag>,
    #[serde(skip)]
    gb_cache: OnceLock<Arc<SubmoduleGb>>,
}

impl Clone for PresentedModule {
    fn clone(&self) -> Self {
        let gb_cache = OnceLock::new();
        if let Some(gb) = self.gb_cache.get() {
            let _ = gb_cache.set(Arc::clone(gb));
        }
        PresentedModule {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            relations: self.relations.clone(),
            name: self.name.clone(),
            tag: self.tag,
            gb_cache,
        }
    }
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.generators == other.generators
            && self.relations == other.relations
    }
}
impl Eq for PresentedModule {}

impl PresentedModule {
    pub fn new(
        ring: RingDescriptor,
        generator_degrees: Vec<i64>,
        relation_columns: Vec<FreeElement>,
        name: Option<String>,
    ) -> Self {
        let generators = FreeModule::new(ring.clone(), generator_degrees);
        let source = FreeModule::new(
            ring.clone(),
            relation_columns.iter().map(|c| c.degree).collect(),
        );
        let relations = GradedMatrix::from_columns(source, generators.clone(), &relation_columns);
        PresentedModule { ring, generators, relations, name, tag: None, gb_cache: OnceLock::new() }
    }

    pub fn with_tag(mut self, tag: ObjectTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn free(ring: RingDescriptor, generator_degrees: Vec<i64>, name: Option<String>) -> Self {
        PresentedModule::new(ring, generator_degrees, Vec::new(), name)
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        PresentedModule::free(ring, Vec::new(), Some("0".into()))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .or_else(|| self.tag.map(|t| t.label()))
            .unwrap_or_else(|| "<module>".into())
    }

    /// Groebner basis of the relation submodule (plus relation-ideal
    /// multiples over a quotient ring); cached.
    pub fn gb(&self) -> Arc<SubmoduleGb> {
        self.gb_cache
            .get_or_init(|| {
                Arc::new(
                    SubmoduleGb::plain(&self.generators, &self.relations.columns())
                        .expect("presentation is homogeneous"),
                )
            })
            .clone()
    }

    pub fn graded_dim(&self, k: i64) -> usize {
        self.gb().quotient_graded_dim(k)
    }

    /// Normal-form representative basis of the graded piece `M_k`.
    pub fn graded_piece(&self, k: i64) -> Vec<FreeElement> {
        self.gb()
            .standard_monomials(k)
            .into_iter()
            .map(|(j, m)| {
                self.generators
                    .element_from_component(j, Polynomial::from_monomial(m, crate::coeff::one()))
            })
            .collect()
    }

    /// Twist: `M(k)_i = M_{k+i}`, generator degrees drop by `k`.
    pub fn twist(&self, k: i64) -> PresentedModule {
        let gens = self.generators.twist(k);
        let src = self.relations.source.twist(k);
        let relations = GradedMatrix::new(src, gens.clone(), self.relations.entries.clone());
        PresentedModule {
            ring: self.ring.clone(),
            generators: gens,
            relations,
            name: self.name.as_ref().map(|n| format!("{n}({k:+})")),
            tag: self.tag.map(|t| t.twist(k)),
            gb_cache: OnceLock::new(),
        }
    }

    pub fn is_zero_module(&self) -> bool {
        if self.generators.rank() == 0 {
            return true;
        }
        // all generators reduce into the relation submodule
        let gb = self.gb();
        (0..self.generators.rank()).all(|j| gb.contains(&self.generators.generator(j)))
    }

    /// Torsion test: finitely many standard monomials in every component.
    pub fn is_torsion(&self) -> bool {
        self.gb().quotient_is_finite_dimensional()
    }

    pub fn min_generator_degree(&self) -> Option<i64> {
        self.generators.generator_degrees.iter().copied().min()
    }

    pub fn max_generator_degree(&self) -> Option<i64> {
        self.generators.generator_degrees.iter().copied().max()
    }

    pub fn fingerprint(&self) -> String {
        crate::fingerprint::of(&(&self.ring, &self.generators, &self.relations))
    }

    /// Cancels unit entries in the relation matrix, producing a smaller
    /// isomorphic presentation plus the inclusion of the kept generators.
    pub fn minimize(&self) -> (PresentedModule, GradedMatrix) {
        let mut gen_degrees = self.generators.generator_degrees.clone();
        let mut kept: Vec<usize> = (0..gen_degrees.len()).collect();
        let mut rels: Vec<FreeElement> = self
            .relations
            .columns()
            .into_iter()
            .map(|c| c.normal_form(&self.ring))
            .filter(|c| !c.is_zero())
            .collect();
        loop {
            let mut cancel: Option<(usize, usize)> = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                for (gi, p) in r.components.iter().enumerate() {
                    if p.is_zero() || p.degree() != 0 {
                        continue;
                    }
                    cancel = Some((ri, gi));
                    break 'search;
                }
            }
            let Some((ri, gi)) = cancel else { break };
            let pivot = rels.remove(ri);
            let c = pivot.components[gi]
                .leading_term()
                .expect("nonzero constant entry")
                .1
                .clone();
            let cinv = crate::coeff::Coeff::new(c.denom().clone(), c.numer().clone());
            for r in rels.iter_mut() {
                let factor = r.components[gi].clone();
                if factor.is_zero() {
                    continue;
                }
                let sub = pivot.mul_poly(&factor.scale(&cinv));
                *r = r.sub(&sub).normal_form(&self.ring);
                debug_assert!(r.components[gi].is_zero());
            }
            // drop the cancelled generator row everywhere
            for r in rels.iter_mut() {
                r.components.remove(gi);
            }
            gen_degrees.remove(gi);
            kept.remove(gi);
            rels.retain(|r| !r.is_zero());
        }
        let mut minimized = PresentedModule::new(
            self.ring.clone(),
            gen_degrees,
            rels,
            self.name.clone(),
        );
        minimized.tag = self.tag;
        // inclusion of kept generators into the original generator module
        let mut embed = GradedMatrix::zero(minimized.generators.clone(), self.generators.clone());
        for (new_j, &old_j) in kept.iter().enumerate() {
            embed.entries[old_j][new_j] = Polynomial::one(self.ring.num_vars);
        }
        (minimized, embed)
    }
}

/// Presents `(span(sub) + relations) / (span(den) + relations)` inside
/// the ambient module `m`, on the generators `sub`.
pub fn subquotient(
    m: &PresentedModule,
    sub: &[FreeElement],
    den: &[FreeElement],
    name: Option<String>,
) -> Result<PresentedModule, ModuleError> {
    let ambient = &m.generators;
    let mut combined: Vec<FreeElement> = sub.to_vec();
    combined.extend_from_slice(den);
    combined.extend(m.relations.columns());
    let tracked = SubmoduleGb::tracked(ambient, &combined)?;
    let (_, syz) = tracked.syzygy_generators();
    let rel_cols: Vec<FreeElement> = syz
        .into_iter()
        .map(|s| FreeElement {
            components: s.components[..sub.len()].to_vec(),
            degree: s.degree,
        })
        .filter(|c| !c.is_zero())
        .collect();
    let sub_degrees: Vec<i64> = sub.iter().map(|s| s.degree).collect();
    let syz_ambient = FreeModule::new(m.ring.clone(), sub_degrees.clone());
    let rel_cols = gb::minimal_generators(&rel_cols, &syz_ambient)?;
    Ok(PresentedModule::new(m.ring.clone(), sub_degrees, rel_cols, name))
}

// ---------------------------------------------------------------------
// Named module constructors
// ---------------------------------------------------------------------

fn require_quotient(ring: &RingDescriptor) -> Result<(), ModuleError> {
    if !ring.has_relation() {
        return Err(ModuleError::InvalidParameter(
            "constructor needs the hypersurface quotient ring".into(),
        ));
    }
    Ok(())
}

/// The twisted free module `A(k)` (or `B(k)`), rank 1.
pub fn make_twist(ring: &RingDescriptor, k: i64) -> PresentedModule {
    let label = if ring.has_relation() { "A" } else { "B" };
    PresentedModule::free(ring.clone(), vec![-k], Some(format!("{label}({k})")))
        .with_tag(ObjectTag::FreeTwist(k))
}

/// Cyclic quotient `(A/(ideal))(twist)` presented by the ideal generators.
pub fn cyclic_quotient(
    ring: &RingDescriptor,
    ideal: &[Polynomial],
    twist: i64,
    name: Option<String>,
) -> PresentedModule {
    let gens = FreeModule::new(ring.clone(), vec![-twist]);
    let cols: Vec<FreeElement> =
        ideal.iter().map(|p| gens.element_from_component(0, p.clone())).collect();
    PresentedModule::new(ring.clone(), vec![-twist], cols, name)
}

/// `chi_j = (A/(x0,x1,x2))(j)`.
pub fn make_chi(ring: &RingDescriptor, j: i64) -> Result<PresentedModule, ModuleError> {
    require_quotient(ring)?;
    let ideal = vec![ring.variable(0), ring.variable(1), ring.variable(2)];
    Ok(cyclic_quotient(ring, &ideal, j, Some(format!("chi({j})"))).with_tag(ObjectTag::Chi(j)))
}

/// `Q_{j+2r,j} = (A/(x0, x1^{r+1}, x2))(j+2r)` for `0 <= r < 2n-1`.
pub fn make_q(ring: &RingDescriptor, j: i64, r: i64) -> Result<PresentedModule, ModuleError> {
    require_quotient(ring)?;
    let n = ring
        .n_param
        .ok_or_else(|| ModuleError::InvalidParameter("ring lacks n".into()))?;
    if r < 0 || r >= 2 * n - 1 {
        return Err(ModuleError::InvalidParameter(format!(
            "Q index r = {r} out of range 0..{}",
            2 * n - 1
        )));
    }
    let x1_pow = {
        let exps = vec![0u32, (r + 1) as u32, 0, 0];
        Polynomial::from_monomial(ring.monomial(&exps), crate::coeff::one())
    };
    let ideal = vec![ring.variable(0), x1_pow, ring.variable(2)];
    Ok(cyclic_quotient(ring, &ideal, j + 2 * r, Some(format!("Q({},{})", j + 2 * r, j)))
        .with_tag(ObjectTag::Q { top: j + 2 * r, bottom: j }))
}

/// `(A/(x0,x1))(k)`.
pub fn make_aq01(ring: &RingDescriptor, k: i64) -> Result<PresentedModule, ModuleError> {
    require_quotient(ring)?;
    let ideal = vec![ring.variable(0), ring.variable(1)];
    Ok(cyclic_quotient(ring, &ideal, k, Some(format!("Aq01({k})"))).with_tag(ObjectTag::Aq01(k)))
}

fn twisted_ideal(
    ring: &RingDescriptor,
    ideal: Vec<Polynomial>,
    j: i64,
    name: String,
) -> Result<PresentedModule, ModuleError> {
    let ambient = FreeModule::new(ring.clone(), vec![-j]);
    let elements: Vec<FreeElement> = ideal
        .iter()
        .map(|p| ambient.element_from_component(0, p.clone()))
        .collect();
    let syz = gb::syzygies(&elements, &ambient)?;
    let gen_degrees: Vec<i64> = elements.iter().map(|e| e.degree).collect();
    let mut module = PresentedModule::new(
        ring.clone(),
        gen_degrees,
        syz.columns(),
        Some(name),
    );
    debug_assert_eq!(module.generators.generator_degrees, syz.target.generator_degrees);
    module.relations = syz;
    Ok(module)
}

/// `G_j = (x0, x1^{n-1}, x2)(j)` as a presented module.
pub fn make_g(ring: &RingDescriptor, j: i64) -> Result<PresentedModule, ModuleError> {
    require_quotient(ring)?;
    let n = ring
        .n_param
        .ok_or_else(|| ModuleError::InvalidParameter("ring lacks n".into()))?;
    let x1_pow = Polynomial::from_monomial(
        ring.monomial(&[0, (n - 1) as u32, 0, 0]),
        crate::coeff::one(),
    );
    Ok(twisted_ideal(
        ring,
        vec![ring.variable(0), x1_pow, ring.variable(2)],
        j,
        format!("G({j})"),
    )?
    .with_tag(ObjectTag::IdealG(j)))
}

/// `H_j = (x0, x1, x2)(j)` as a presented module.
pub fn make_h(ring: &RingDescriptor, j: i64) -> Result<PresentedModule, ModuleError> {
    require_quotient(ring)?;
    Ok(twisted_ideal(
        ring,
        vec![ring.variable(0), ring.variable(1), ring.variable(2)],
        j,
        format!("H({j})"),
    )?
    .with_tag(ObjectTag::IdealH(j)))
}

/// Truncation `M_{>=t}`, presented on the graded pieces of a window
/// whose generation is then verified (and widened when necessary).
pub fn truncate(m: &PresentedModule, t: i64) -> Result<PresentedModule, ModuleError> {
    truncate_with_inclusion(m, t).map(|(module, _)| module)
}

/// Truncation together with the inclusion columns: the elements of
/// `F_0(M)` realizing the truncation's generators.
pub fn truncate_with_inclusion(
    m: &PresentedModule,
    t: i64,
) -> Result<(PresentedModule, Vec<FreeElement>), ModuleError> {
    let a_max = m.ring.max_weight();
    let spread = match (m.min_generator_degree(), m.max_generator_degree()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => return Ok((PresentedModule::zero(m.ring.clone()), Vec::new())),
    };
    let mut width = a_max - 1 + spread;
    for _attempt in 0..6 {
        let mut piece_elems = Vec::new();
        for k in t..=t + width {
            piece_elems.extend(m.graded_piece(k));
        }
        let gens = gb::minimal_generators_mod(
            &piece_elems,
            &m.generators,
            &m.relations.columns(),
        )?;
        // generation check: the next a_max degrees must already lie in
        // the generated submodule
        let mut check_list = gens.clone();
        check_list.extend(m.relations.columns());
        let gb = SubmoduleGb::plain(&m.generators, &check_list)?;
        let ok = (t + width + 1..=t + width + a_max)
            .all(|k| m.graded_piece(k).iter().all(|v| gb.contains(v)));
        if !ok {
            width += a_max;
            continue;
        }
        let name = m.name.as_ref().map(|n| format!("trunc({n},{t})"));
        let module = subquotient(m, &gens, &[], name)?;
        return Ok((module, gens));
    }
    Err(ModuleError::InvalidParameter(format!(
        "truncation window failed to generate {} at t = {t}",
        m.display_name()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn twist_dimensions() {
        let a = make_ring(2, true).unwrap();
        let a2 = make_twist(&a, 2);
        assert_eq!(a2.graded_dim(0), 2); // dim A_2
        assert_eq!(a2.graded_dim(-2), 1);
        let am1 = make_twist(&a, -1);
        assert_eq!(am1.graded_dim(0), 0);
        let a0 = make_twist(&a, 0);
        assert_eq!(a0.graded_dim(0), 1);
    }

    #[test]
    fn chi_graded_pieces() {
        let a = make_ring(2, true).unwrap();
        let chi0 = make_chi(&a, 0).unwrap();
        assert_eq!(chi0.graded_dim(0), 1);
        assert_eq!(chi0.graded_dim(1), 0);
        assert_eq!(chi0.graded_dim(-1), 0);
        assert_eq!(chi0.graded_dim(5), 1);
        assert_eq!(chi0.graded_dim(10), 1);
        let chi5 = make_chi(&a, 5).unwrap();
        assert_eq!(chi5.graded_dim(0), 1);
        // general description: dim = 1 iff k >= -j and k = -j mod 4n-3
        for n in [2i64, 3] {
            let ring = make_ring(n, true).unwrap();
            for j in -3..=7i64 {
                let chi = make_chi(&ring, j).unwrap();
                for k in -12..=20i64 {
                    let expected =
                        (k >= -j && (k + j).rem_euclid(4 * n - 3) == 0) as usize;
                    assert_eq!(chi.graded_dim(k), expected, "n={n} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn q_graded_pieces() {
        let a3 = make_ring(3, true).unwrap();
        let q86 = make_q(&a3, 6, 1).unwrap(); // Q_{8,6}
        assert_eq!(q86.graded_dim(-8), 1);
        assert_eq!(q86.graded_dim(-9), 0);
        // supports: k >= -8, k = -8 or -6 mod 9
        for k in -8..=20i64 {
            let expected =
                ((k + 8).rem_euclid(9) == 0 || (k + 6).rem_euclid(9) == 0) as usize;
            assert_eq!(q86.graded_dim(k), expected, "k = {k}");
        }
        assert!(make_q(&a3, 6, 5).is_err()); // r out of range (2n-1 = 5)
        assert!(make_q(&a3, 6, -1).is_err());
    }

    #[test]
    fn g_and_h_dimensions() {
        let a2 = make_ring(2, true).unwrap();
        let g4 = make_g(&a2, 4).unwrap();
        let h4 = make_h(&a2, 4).unwrap();
        // n = 2 makes x1^{n-1} = x1
        assert_eq!(g4.generators.generator_degrees, h4.generators.generator_degrees);
        for k in -6..=12 {
            assert_eq!(g4.graded_dim(k), h4.graded_dim(k), "k = {k}");
        }
        // dim (H_5)_{-4} = 1
        let h5 = make_h(&a2, 5).unwrap();
        assert_eq!(h5.graded_dim(-4), 1);
        // dim (G_{2n})_{-2n} = 0
        for n in [2i64, 3] {
            let ring = make_ring(n, true).unwrap();
            let g = make_g(&ring, 2 * n).unwrap();
            assert_eq!(g.graded_dim(-2 * n), 0, "n = {n}");
        }
    }

    #[test]
    fn g_complements_q_in_twist() {
        // dim G_j + dim Q_{j, j-2n+4} = dim A(j) in every degree
        for n in [2i64, 3] {
            let ring = make_ring(n, true).unwrap();
            let j = 2 * n;
            let g = make_g(&ring, j).unwrap();
            let q = make_q(&ring, j - 2 * (n - 2), n - 2).unwrap();
            let aj = make_twist(&ring, j);
            for k in -(2 * n + 6)..=(4 * n + 4) {
                assert_eq!(
                    g.graded_dim(k) + q.graded_dim(k),
                    aj.graded_dim(k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn truncation_dimensions() {
        let a = make_ring(2, true).unwrap();
        let a0 = make_twist(&a, 0);
        let tr = truncate(&a0, 1).unwrap();
        assert_eq!(tr.graded_dim(0), 0);
        assert_eq!(tr.graded_dim(1), 1);
        for k in 1..12 {
            assert_eq!(tr.graded_dim(k), a0.graded_dim(k), "k = {k}");
        }
        let tr0 = truncate(&a0, 0).unwrap();
        for k in -2..10 {
            assert_eq!(tr0.graded_dim(k), a0.graded_dim(k));
        }
        // chi truncated at 1: support starts at 4n-3
        let chi = make_chi(&a, 0).unwrap();
        let trc = truncate(&chi, 1).unwrap();
        for k in -2..=16i64 {
            let expected = (k >= 5 && k % 5 == 0) as usize;
            assert_eq!(trc.graded_dim(k), expected, "k = {k}");
        }
    }

    #[test]
    fn minimize_cancels_units() {
        let a = make_ring(2, true).unwrap();
        // two generators with a unit relation identifying them
        let gens = FreeModule::new(a.clone(), vec![0, 0]);
        let mut col = gens.zero_element(0);
        col.components[0] = Polynomial::one(4);
        col.components[1] = Polynomial::one(4).neg();
        let m = PresentedModule::new(a.clone(), vec![0, 0], vec![col], None);
        let (min, embed) = m.minimize();
        assert_eq!(min.generators.rank(), 1);
        assert_eq!(embed.source.rank(), 1);
        for k in 0..8 {
            assert_eq!(min.graded_dim(k), m.graded_dim(k));
        }
    }

    #[test]
    fn torsion_and_zero() {
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        assert!(!chi.is_torsion());
        let all_vars = cyclic_quotient(
            &a,
            &[a.variable(0), a.variable(1), a.variable(2), a.variable(3)],
            0,
            None,
        );
        assert!(all_vars.is_torsion());
        assert!(!all_vars.is_zero_module());
        assert!(PresentedModule::zero(a.clone()).is_zero_module());
    }
}
