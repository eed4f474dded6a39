//! Module Groebner bases over the weighted polynomial ring and over the
//! hypersurface quotient.
//!
//! Submodules of a graded free `A`-module are handled by adjoining the
//! relation multiples `f*e_j` to every basis computation over the
//! ambient polynomial ring. Syzygies and membership witnesses come from
//! one elimination-order computation in `F ⊕ R^t`, where the tracking
//! block records coordinates over the input generators.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::coeff::Coeff;
use crate::freemod::{FreeElement, FreeModule, GradedMatrix};
use crate::linalg::SpanBuilder;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{self, RingDescriptor};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GbError {
    #[error("inhomogeneous input: component {component} of element {index}")]
    Inhomogeneous { index: usize, component: usize },
    #[error("element has wrong ambient rank: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
}

/// Lead term data of a basis element (elements are kept monic).
#[derive(Debug, Clone)]
pub struct GbElement {
    pub element: FreeElement,
    pub lead_component: usize,
    pub lead_monomial: Monomial,
}

/// A Groebner basis of a graded submodule, optionally with coordinate
/// tracking for syzygies and membership witnesses.
#[derive(Debug, Clone)]
pub struct SubmoduleGb {
    /// The free module the submodule lives in.
    pub ambient: FreeModule,
    /// Number of ambient components; tracking components follow.
    split: usize,
    /// `F` for plain bases, `F ⊕ R^t` for tracked ones.
    combined: FreeModule,
    /// Degrees of the input generators (the `R^t` block).
    pub input_degrees: Vec<i64>,
    pub elements: Vec<GbElement>,
    tracked: bool,
}

/// Term order on the combined module: the ambient block beats the
/// tracking block; inside a block, the ring order on the monomial wins,
/// with lower component index breaking ties.
fn term_cmp(split: usize, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    let block_a = (a.0 >= split) as u8;
    let block_b = (b.0 >= split) as u8;
    block_b
        .cmp(&block_a)
        .then_with(|| a.1.cmp(b.1))
        .then_with(|| b.0.cmp(&a.0))
}

fn lead_term(split: usize, v: &FreeElement) -> Option<(usize, Monomial, Coeff)> {
    let mut best: Option<(usize, Monomial, Coeff)> = None;
    for (j, p) in v.components.iter().enumerate() {
        if let Some((m, c)) = p.leading_term() {
            let better = match &best {
                None => true,
                Some((bj, bm, _)) => term_cmp(split, (j, m), (*bj, bm)) == Ordering::Greater,
            };
            if better {
                best = Some((j, m.clone(), c.clone()));
            }
        }
    }
    best
}

fn make_monic(split: usize, v: &FreeElement) -> Option<(FreeElement, usize, Monomial)> {
    let (j, m, c) = lead_term(split, v)?;
    let inv = Coeff::new(c.denom().clone(), c.numer().clone());
    Some((v.scale(&inv), j, m))
}

struct Reduction {
    normal_form: FreeElement,
    quotients: Option<Vec<Polynomial>>,
}

fn reduce_full(
    split: usize,
    v: &FreeElement,
    basis: &[GbElement],
    want_quotients: bool,
) -> Reduction {
    let mut work = v.clone();
    let mut result = FreeElement {
        components: work.components.iter().map(|p| Polynomial::zero(p.degree())).collect(),
        degree: work.degree,
    };
    let mut quotients = if want_quotients {
        Some(
            basis
                .iter()
                .map(|g| Polynomial::zero(v.degree - g.element.degree))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    'outer: while let Some((j, m, c)) = lead_term(split, &work) {
        for (k, g) in basis.iter().enumerate() {
            if g.lead_component == j && g.lead_monomial.divides(&m) {
                let qm = g.lead_monomial.divide_into(&m);
                // basis elements are monic
                work = work.sub(&g.element.mul_term(&qm, &c));
                if let Some(q) = &mut quotients {
                    q[k] = q[k].add(&Polynomial::from_monomial(qm, c.clone()));
                }
                continue 'outer;
            }
        }
        work.components[j].remove_term(&m);
        result.components[j].insert_term(m, c);
    }
    Reduction { normal_form: result, quotients }
}

fn validate_homogeneous(ambient: &FreeModule, gens: &[FreeElement]) -> Result<(), GbError> {
    for (index, g) in gens.iter().enumerate() {
        if g.components.len() != ambient.rank() {
            return Err(GbError::RankMismatch {
                expected: ambient.rank(),
                got: g.components.len(),
            });
        }
        for (component, p) in g.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let expected = g.degree - ambient.generator_degrees[component];
            if p.degree() != expected
                || p.terms().keys().any(|m| m.weighted_degree() != expected)
            {
                return Err(GbError::Inhomogeneous { index, component });
            }
        }
    }
    Ok(())
}

fn buchberger_core(
    ring: &RingDescriptor,
    split: usize,
    inputs: Vec<FreeElement>,
) -> Vec<GbElement> {
    let weights = &ring.weights;
    let mut basis: Vec<GbElement> = Vec::new();
    // queue entries: (element degree of the S-pair, i, j)
    let mut queue: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let mut queued: BTreeSet<(usize, usize)> = BTreeSet::new();

    fn push_element(
        basis: &mut Vec<GbElement>,
        queue: &mut BTreeSet<(i64, usize, usize)>,
        queued: &mut BTreeSet<(usize, usize)>,
        weights: &[i64],
        split: usize,
        v: FreeElement,
    ) {
        if let Some((monic, j, m)) = make_monic(split, &v) {
            let idx = basis.len();
            let gen_offset = monic.degree - m.weighted_degree();
            for (k, g) in basis.iter().enumerate() {
                if g.lead_component == j {
                    let lcm = g.lead_monomial.lcm_with_weights(&m, weights);
                    let spair_degree = lcm.weighted_degree() + gen_offset;
                    queue.insert((spair_degree, k, idx));
                    queued.insert((k, idx));
                }
            }
            basis.push(GbElement { element: monic, lead_component: j, lead_monomial: m });
        }
    }

    for v in inputs {
        let reduced = reduce_full(split, &v, &basis, false).normal_form;
        push_element(&mut basis, &mut queue, &mut queued, weights, split, reduced);
    }

    while let Some(&(degree, i, j)) = queue.iter().next() {
        queue.remove(&(degree, i, j));
        queued.remove(&(i, j));
        let (gi, gj) = (&basis[i], &basis[j]);
        debug_assert_eq!(gi.lead_component, gj.lead_component);
        let lcm = gi.lead_monomial.lcm_with_weights(&gj.lead_monomial, weights);
        // Chain criterion: some third lead divides the lcm and both
        // companion pairs were already handled.
        let skip = basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g.lead_component == gi.lead_component
                && g.lead_monomial.divides(&lcm)
                && !queued.contains(&(i.min(k), i.max(k)))
                && !queued.contains(&(j.min(k), j.max(k)))
        });
        if skip {
            continue;
        }
        let mi = gi.lead_monomial.divide_into(&lcm);
        let mj = gj.lead_monomial.divide_into(&lcm);
        let spair = gi
            .element
            .mul_term(&mi, &crate::coeff::one())
            .sub(&gj.element.mul_term(&mj, &crate::coeff::one()));
        let reduced = reduce_full(split, &spair, &basis, false).normal_form;
        push_element(&mut basis, &mut queue, &mut queued, weights, split, reduced);
    }

    interreduce(split, &mut basis);
    basis
}

/// Fully reduces every element against the others and sorts the basis
/// into a canonical order.
fn interreduce(split: usize, basis: &mut Vec<GbElement>) {
    loop {
        let mut changed = false;
        let mut idx = 0;
        while idx < basis.len() {
            let g = basis.remove(idx);
            let reduced = reduce_full(split, &g.element, basis, false).normal_form;
            match make_monic(split, &reduced) {
                None => {
                    changed = true; // dropped a redundant element
                }
                Some((monic, j, m)) => {
                    if monic != g.element {
                        changed = true;
                    }
                    basis.insert(
                        idx,
                        GbElement { element: monic, lead_component: j, lead_monomial: m },
                    );
                    idx += 1;
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| {
        a.lead_component
            .cmp(&b.lead_component)
            .then_with(|| b.lead_monomial.cmp(&a.lead_monomial))
    });
}

impl SubmoduleGb {
    /// Basis without coordinate tracking: membership, normal forms and
    /// graded dimensions of the quotient.
    pub fn plain(ambient: &FreeModule, gens: &[FreeElement]) -> Result<Self, GbError> {
        validate_homogeneous(ambient, gens)?;
        let mut inputs: Vec<FreeElement> =
            gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        inputs.extend(relation_columns(ambient, ambient.rank()));
        let elements = buchberger_core(&ambient.ring, ambient.rank(), inputs);
        Ok(SubmoduleGb {
            ambient: ambient.clone(),
            split: ambient.rank(),
            combined: ambient.clone(),
            input_degrees: gens.iter().map(|g| g.degree).collect(),
            elements,
            tracked: false,
        })
    }

    /// Basis with a tracking block: also provides syzygies and
    /// membership witnesses over the original generators.
    pub fn tracked(ambient: &FreeModule, gens: &[FreeElement]) -> Result<Self, GbError> {
        validate_homogeneous(ambient, gens)?;
        let split = ambient.rank();
        let input_degrees: Vec<i64> = gens.iter().map(|g| g.degree).collect();
        let mut combined_degrees = ambient.generator_degrees.clone();
        combined_degrees.extend(&input_degrees);
        let combined = FreeModule::new(ambient.ring.clone(), combined_degrees);
        let mut inputs = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut e = combined.zero_element(g.degree);
            e.components[..split].clone_from_slice(&g.components);
            e.components[split + i] = Polynomial::one(ambient.ring.num_vars);
            inputs.push(e);
        }
        inputs.extend(relation_columns(ambient, combined.rank()));
        let elements = buchberger_core(&ambient.ring, split, inputs);
        Ok(SubmoduleGb {
            ambient: ambient.clone(),
            split,
            combined,
            input_degrees,
            elements,
            tracked: true,
        })
    }

    pub fn is_tracked(&self) -> bool {
        self.tracked
    }

    fn embed(&self, v: &FreeElement) -> FreeElement {
        if !self.tracked {
            return v.clone();
        }
        let mut e = self.combined.zero_element(v.degree);
        e.components[..self.split].clone_from_slice(&v.components);
        e
    }

    /// Fully reduced normal form of an ambient element, restricted back
    /// to the ambient block.
    pub fn normal_form(&self, v: &FreeElement) -> FreeElement {
        let nf = reduce_full(self.split, &self.embed(v), &self.elements, false).normal_form;
        FreeElement { components: nf.components[..self.split].to_vec(), degree: nf.degree }
    }

    /// Membership in the submodule (relation multiples included).
    pub fn contains(&self, v: &FreeElement) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Division with quotients over the basis elements:
    /// `v = Σ q_k * gb_k + remainder`.
    pub fn divide(&self, v: &FreeElement) -> (Vec<Polynomial>, FreeElement) {
        let red = reduce_full(self.split, &self.embed(v), &self.elements, true);
        let nf = FreeElement {
            components: red.normal_form.components[..self.split].to_vec(),
            degree: red.normal_form.degree,
        };
        (red.quotients.expect("quotients requested"), nf)
    }

    /// Expresses `v` as a combination of the input generators, modulo
    /// the ring relation. Requires a tracked basis.
    pub fn express(&self, v: &FreeElement) -> Option<Vec<Polynomial>> {
        assert!(self.tracked, "express needs a tracked basis");
        let nf = reduce_full(self.split, &self.embed(v), &self.elements, false).normal_form;
        if nf.components[..self.split].iter().any(|p| !p.is_zero()) {
            return None;
        }
        let ringd = &self.ambient.ring;
        Some(
            nf.components[self.split..]
                .iter()
                .map(|p| ring::normal_form(&p.neg(), ringd))
                .collect(),
        )
    }

    /// Generators of the syzygy module of the input generators, as
    /// elements of the free module on the input degrees.
    pub fn syzygy_generators(&self) -> (FreeModule, Vec<FreeElement>) {
        assert!(self.tracked, "syzygies need a tracked basis");
        let ringd = &self.ambient.ring;
        let syz_module = FreeModule::new(ringd.clone(), self.input_degrees.clone());
        let mut cols = Vec::new();
        for g in &self.elements {
            if g.lead_component < self.split {
                continue;
            }
            debug_assert!(g.element.components[..self.split].iter().all(|p| p.is_zero()));
            let comps: Vec<Polynomial> = g.element.components[self.split..]
                .iter()
                .map(|p| ring::normal_form(p, ringd))
                .collect();
            let col = FreeElement { components: comps, degree: g.element.degree };
            if !col.is_zero() {
                cols.push(col);
            }
        }
        (syz_module, cols)
    }

    /// Lead monomials per ambient component; the tracking block is
    /// excluded. These determine the standard monomials of the quotient.
    pub fn lead_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); self.split];
        for g in &self.elements {
            if g.lead_component < self.split {
                leads[g.lead_component].push(g.lead_monomial.clone());
            }
        }
        leads
    }

    /// Standard monomials `u*e_j` of degree `k` of the quotient
    /// `F / (N + f*F)`, listed as (component, monomial).
    pub fn standard_monomials(&self, k: i64) -> Vec<(usize, Monomial)> {
        let leads = self.lead_monomials();
        let ambient_ring = self.ambient.ring.ambient();
        let mut out = Vec::new();
        for (j, &b) in self.ambient.generator_degrees.iter().enumerate() {
            for u in crate::hilbert::monomial_basis(&ambient_ring, k - b) {
                if !leads[j].iter().any(|l| l.divides(&u)) {
                    out.push((j, u));
                }
            }
        }
        out
    }

    /// `dim (F/N)_k`.
    pub fn quotient_graded_dim(&self, k: i64) -> usize {
        self.standard_monomials(k).len()
    }

    /// True when the quotient `F/N` is finite-dimensional over the
    /// field: every component's lead ideal contains a pure power of
    /// every variable.
    pub fn quotient_is_finite_dimensional(&self) -> bool {
        let leads = self.lead_monomials();
        let nv = self.ambient.ring.num_vars;
        leads.iter().all(|comp| {
            comp.iter().any(|m| m.is_constant())
                || (0..nv).all(|i| {
                    comp.iter().any(|m| !m.is_constant() && m.is_pure_power_of(i))
                })
        })
    }
}

fn relation_columns(ambient: &FreeModule, combined_rank: usize) -> Vec<FreeElement> {
    let Some(f) = &ambient.ring.relation else {
        return Vec::new();
    };
    (0..ambient.rank())
        .map(|j| {
            let degree = f.degree() + ambient.generator_degrees[j];
            let mut components: Vec<Polynomial> =
                (0..combined_rank).map(|_| Polynomial::zero(0)).collect();
            components[j] = f.clone();
            FreeElement { components, degree }
        })
        .collect()
}

/// Groebner basis of the submodule generated by `gens` (relation
/// multiples are adjoined automatically over a quotient ring).
pub fn buchberger(gens: &[FreeElement], ambient: &FreeModule) -> Result<SubmoduleGb, GbError> {
    SubmoduleGb::plain(ambient, gens)
}

/// Division of `elem` by a basis: quotients and a fully reduced
/// remainder. The remainder vanishes exactly for submodule members.
pub fn divide(elem: &FreeElement, gb: &SubmoduleGb) -> (Vec<Polynomial>, FreeElement) {
    gb.divide(elem)
}

/// The full syzygy matrix of the given generators.
pub fn syzygies(gens: &[FreeElement], ambient: &FreeModule) -> Result<GradedMatrix, GbError> {
    let gb = SubmoduleGb::tracked(ambient, gens)?;
    let (syz_ambient, cols) = gb.syzygy_generators();
    let cols = minimal_generators(&cols, &syz_ambient)?;
    let source = FreeModule::new(
        syz_ambient.ring.clone(),
        cols.iter().map(|c| c.degree).collect(),
    );
    Ok(GradedMatrix::from_columns(source, syz_ambient, &cols))
}

/// A minimal generating subset of `gens`: scans degrees upward and keeps
/// exactly the elements that are independent modulo lower-degree ones.
pub fn minimal_generators(
    gens: &[FreeElement],
    ambient: &FreeModule,
) -> Result<Vec<FreeElement>, GbError> {
    minimal_generators_mod(gens, ambient, &[])
}

/// Like [`minimal_generators`], but minimality is taken modulo the span
/// of `modulo` (e.g. the relation submodule of an ambient presentation).
pub fn minimal_generators_mod(
    gens: &[FreeElement],
    ambient: &FreeModule,
    modulo: &[FreeElement],
) -> Result<Vec<FreeElement>, GbError> {
    validate_homogeneous(ambient, gens)?;
    let mut sorted: Vec<&FreeElement> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree);
    let mut kept: Vec<FreeElement> = Vec::new();
    let mut idx = 0;
    while idx < sorted.len() {
        let degree = sorted[idx].degree;
        let mut batch = Vec::new();
        while idx < sorted.len() && sorted[idx].degree == degree {
            batch.push(sorted[idx]);
            idx += 1;
        }
        let mut basis: Vec<FreeElement> = modulo.to_vec();
        basis.extend(kept.iter().cloned());
        let gb = SubmoduleGb::plain(ambient, &basis)?;
        let std_mons = gb.standard_monomials(degree);
        let index_of: std::collections::BTreeMap<(usize, &Monomial), usize> = std_mons
            .iter()
            .enumerate()
            .map(|(i, (j, m))| ((*j, m), i))
            .collect();
        let mut span = SpanBuilder::new(std_mons.len());
        for g in batch {
            let nf = gb.normal_form(g);
            if nf.is_zero() {
                continue;
            }
            let mut coords = vec![crate::coeff::zero(); std_mons.len()];
            for (j, p) in nf.components.iter().enumerate() {
                for (m, c) in p.terms() {
                    let key = (j, m);
                    let pos = index_of[&key];
                    coords[pos] = c.clone();
                }
            }
            if span.try_insert(coords) {
                kept.push(g.clone());
            }
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::make_ring;

    fn rank1(ring: &RingDescriptor) -> FreeModule {
        FreeModule::new(ring.clone(), vec![0])
    }

    fn elt(ring: &RingDescriptor, ambient: &FreeModule, texts: &[&str]) -> FreeElement {
        let polys: Vec<Polynomial> =
            texts.iter().map(|t| parse_poly(t, ring).unwrap()).collect();
        let degree = polys
            .iter()
            .zip(&ambient.generator_degrees)
            .find(|(p, _)| !p.is_zero())
            .map(|(p, &b)| p.degree() + b)
            .expect("nonzero element");
        FreeElement { components: polys, degree }
    }

    #[test]
    fn single_relation_is_its_own_basis() {
        let b = make_ring(2, false).unwrap();
        let amb = rank1(&b);
        let f = elt(&b, &amb, &["x0*x3 + x1^3 + x2^2"]);
        let gb = buchberger(&[f.clone()], &amb).unwrap();
        assert_eq!(gb.elements.len(), 1);
        assert!(gb.contains(&f));
    }

    #[test]
    fn duplicates_are_removed() {
        let b = make_ring(2, false).unwrap();
        let amb = rank1(&b);
        let x0 = elt(&b, &amb, &["x0"]);
        let gb = buchberger(&[x0.clone(), x0.clone()], &amb).unwrap();
        assert_eq!(gb.elements.len(), 1);
    }

    #[test]
    fn ideal_dims_match_chi_complement() {
        // dim (x0,x1,x2)_k = dim A_k - dim chi_k over A
        let a = make_ring(2, true).unwrap();
        let amb = rank1(&a);
        let gens: Vec<FreeElement> =
            ["x0", "x1", "x2"].iter().map(|t| elt(&a, &amb, &[t])).collect();
        let gb = buchberger(&gens, &amb).unwrap();
        for k in 0..30i64 {
            let chi_dim = if k >= 0 && k % 5 == 0 { 1 } else { 0 };
            let ideal_dim = crate::hilbert::hilbert_dim(&a, k) - gb.quotient_graded_dim(k);
            assert_eq!(
                crate::hilbert::hilbert_dim(&a, k) - ideal_dim,
                chi_dim,
                "k = {k}"
            );
        }
    }

    #[test]
    fn division_examples() {
        let b = make_ring(2, false).unwrap();
        let amb = rank1(&b);
        let f = elt(&b, &amb, &["x0*x3 + x1^3 + x2^2"]);
        let gb = buchberger(&[f], &amb).unwrap();
        // A multiple of f reduces to zero.
        let v = elt(&b, &amb, &["x0^2*x3 + x0*x1^3 + x0*x2^2"]);
        let (qs, rem) = divide(&v, &gb);
        assert!(rem.is_zero());
        assert_eq!(qs.len(), 1);
        assert_eq!(qs[0], parse_poly("x0", &b).unwrap());

        // No lead divides x1^2.
        let gbx = buchberger(&[elt(&b, &amb, &["x1^3"])], &amb).unwrap();
        let w = elt(&b, &amb, &["x1^2"]);
        let (_, rem) = divide(&w, &gbx);
        assert_eq!(rem, w);
    }

    #[test]
    fn division_in_quotient_ring_ideal() {
        // x1^3 + x2^2 = -x0*x3 lies in (x0, x1, x2) and also in (x0) over A
        let a = make_ring(2, true).unwrap();
        let amb = rank1(&a);
        let gens: Vec<FreeElement> =
            ["x0", "x1", "x2"].iter().map(|t| elt(&a, &amb, &[t])).collect();
        let gb = buchberger(&gens, &amb).unwrap();
        let v = elt(&a, &amb, &["x1^3 + x2^2"]);
        let (_, rem) = divide(&v, &gb);
        assert!(rem.is_zero());
    }

    #[test]
    fn koszul_syzygy() {
        let b = make_ring(2, false).unwrap();
        let amb = rank1(&b);
        let gens = vec![elt(&b, &amb, &["x0"]), elt(&b, &amb, &["x1"])];
        let syz = syzygies(&gens, &amb).unwrap();
        assert_eq!(syz.source.rank(), 1);
        // single Koszul syzygy in degree 3 = deg(x0) + deg(x1)
        assert_eq!(syz.source.generator_degrees, vec![3]);
        let col = syz.column(0);
        // proportional to (x1, -x0)
        let x1 = parse_poly("x1", &b).unwrap();
        let x0n = parse_poly("-x0", &b).unwrap();
        let ratio_ok = (col.components[0] == x1 && col.components[1] == x0n)
            || (col.components[0] == x1.neg() && col.components[1] == x0n.neg());
        assert!(ratio_ok, "unexpected syzygy {:?}", col);
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let b = make_ring(2, false).unwrap();
        let amb = rank1(&b);
        let syz = syzygies(&[elt(&b, &amb, &["x0"])], &amb).unwrap();
        assert_eq!(syz.source.rank(), 0);
    }

    #[test]
    fn syzygies_over_quotient_x0_x2() {
        // over A (n=2): (x0, x2) is regular, so only the Koszul syzygy
        // survives, in degree 1 + 3 = 4 = 2n.
        let a = make_ring(2, true).unwrap();
        let amb = rank1(&a);
        let gens = vec![elt(&a, &amb, &["x0"]), elt(&a, &amb, &["x2"])];
        let syz = syzygies(&gens, &amb).unwrap();
        assert_eq!(syz.source.generator_degrees, vec![4]);
        // check it really is a syzygy over A
        let gb = buchberger(&gens, &amb).unwrap();
        let col = syz.column(0);
        let combo = gens[0]
            .mul_poly(&col.components[0])
            .add(&gens[1].mul_poly(&col.components[1]))
            .normal_form(&a);
        let _ = gb;
        assert!(combo.is_zero());
    }

    #[test]
    fn express_recovers_membership_witness() {
        let a = make_ring(2, true).unwrap();
        let amb = rank1(&a);
        let gens = vec![elt(&a, &amb, &["x0"]), elt(&a, &amb, &["x2"])];
        let gb = SubmoduleGb::tracked(&amb, &gens).unwrap();
        let v = elt(&a, &amb, &["x0^3*x2 + x2^2"]);
        let coeffs = gb.express(&v).unwrap();
        let rebuilt = gens[0]
            .mul_poly(&coeffs[0])
            .add(&gens[1].mul_poly(&coeffs[1]))
            .normal_form(&a);
        assert_eq!(rebuilt, v.normal_form(&a));
        // something outside the ideal
        let w = elt(&a, &amb, &["x1"]);
        assert!(gb.express(&w).is_none());
    }

    #[test]
    fn torsion_detection_via_lead_ideal() {
        let a = make_ring(2, true).unwrap();
        let amb = rank1(&a);
        let chi_gens: Vec<FreeElement> =
            ["x0", "x1", "x2"].iter().map(|t| elt(&a, &amb, &[t])).collect();
        let gb = buchberger(&chi_gens, &amb).unwrap();
        assert!(!gb.quotient_is_finite_dimensional()); // chi = C[x3]
        let all: Vec<FreeElement> =
            ["x0", "x1", "x2", "x3"].iter().map(|t| elt(&a, &amb, &[t])).collect();
        let gb2 = buchberger(&all, &amb).unwrap();
        assert!(gb2.quotient_is_finite_dimensional());
    }

    #[test]
    fn minimal_generators_prunes() {
        let a = make_ring(2, true).unwrap();
        let amb = rank1(&a);
        let gens = vec![
            elt(&a, &amb, &["x0"]),
            elt(&a, &amb, &["x0^2"]),
            elt(&a, &amb, &["x1"]),
            elt(&a, &amb, &["2*x0"]),
        ];
        let min = minimal_generators(&gens, &amb).unwrap();
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let b = make_ring(2, false).unwrap();
        let amb = rank1(&b);
        // component degree disagrees with the element degree
        let bad = FreeElement {
            components: vec![parse_poly("x1", &b).unwrap()],
            degree: 1,
        };
        assert!(matches!(
            buchberger(&[bad], &amb),
            Err(GbError::Inhomogeneous { .. })
        ));
        let wrong_rank = FreeElement { components: vec![], degree: 0 };
        assert!(matches!(
            buchberger(&[wrong_rank], &amb),
            Err(GbError::RankMismatch { .. })
        ));
    }

    #[test]
    fn determinism_same_inputs_same_basis() {
        let a = make_ring(3, true).unwrap();
        let amb = rank1(&a);
        let gens: Vec<FreeElement> =
            ["x0", "x1^2", "x2"].iter().map(|t| elt(&a, &amb, &[t])).collect();
        let gb1 = buchberger(&gens, &amb).unwrap();
        let gb2 = buchberger(&gens, &amb).unwrap();
        let render = |gb: &SubmoduleGb| {
            gb.elements
                .iter()
                .map(|g| g.element.render(&a.var_names()))
                .collect::<Vec<_>>()
                .join(" | ")
        };
        assert_eq!(render(&gb1), render(&gb2));
    }
}
