//! Maps of presented modules: well-definedness certificates, graded Hom
//! spaces, kernels, images and cokernels.

use num_traits::Zero;
use thiserror::Error;

use crate::coeff::{self, Coeff};
use crate::freemod::{FreeElement, GradedMatrix};
use crate::gb::{self, SubmoduleGb};
use crate::linalg::QMatrix;
use crate::module::{subquotient, ModuleError, PresentedModule};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("ill-defined map: relation {relation_index} does not map into target relations")]
    IllDefined { relation_index: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Gb(#[from] gb::GbError),
}

/// A graded map of presented modules, described on generators.
/// `twist_degree` is 0 for genuine degree-preserving morphisms.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: GradedMatrix,
    pub twist_degree: i64,
}

impl ModuleMap {
    /// Builds a map and certifies well-definedness: every relation of
    /// the source must land in the relation submodule of the target.
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        columns: Vec<FreeElement>,
        twist_degree: i64,
    ) -> Result<Self, MapError> {
        if columns.len() != source.generators.rank() {
            return Err(MapError::Shape(format!(
                "expected {} columns, got {}",
                source.generators.rank(),
                columns.len()
            )));
        }
        let matrix_source = source.generators.twist(-twist_degree);
        let matrix = GradedMatrix::from_columns(matrix_source, target.generators.clone(), &columns);
        let map = ModuleMap { source, target, matrix, twist_degree };
        map.certify()?;
        Ok(map)
    }

    fn certify(&self) -> Result<(), MapError> {
        let tgb = self.target.gb();
        for (relation_index, r) in self.source.relations.columns().iter().enumerate() {
            let image = self.apply_free(r);
            if !tgb.contains(&image) {
                return Err(MapError::IllDefined { relation_index });
            }
        }
        Ok(())
    }

    pub fn identity(m: &PresentedModule) -> Self {
        let matrix = GradedMatrix::identity(&m.generators);
        ModuleMap { source: m.clone(), target: m.clone(), matrix, twist_degree: 0 }
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        let matrix = GradedMatrix::zero(source.generators.clone(), target.generators.clone());
        ModuleMap { source: source.clone(), target: target.clone(), matrix, twist_degree: 0 }
    }

    /// Multiplication map between rank-one presented modules.
    pub fn from_poly(
        source: &PresentedModule,
        target: &PresentedModule,
        p: &Polynomial,
    ) -> Result<Self, MapError> {
        if source.generators.rank() != 1 || target.generators.rank() != 1 {
            return Err(MapError::Shape("from_poly needs rank-one modules".into()));
        }
        let col = target.generators.element_from_component(0, p.clone());
        ModuleMap::new(source.clone(), target.clone(), vec![col], 0)
    }

    /// Image of a free-level element of the source.
    pub fn apply_free(&self, v: &FreeElement) -> FreeElement {
        let shifted = FreeElement { components: v.components.clone(), degree: v.degree + self.twist_degree };
        self.matrix.apply(&shifted)
    }

    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap, MapError> {
        if inner.target != self.source {
            return Err(MapError::Shape("composition mismatch".into()));
        }
        let cols: Vec<FreeElement> = (0..inner.source.generators.rank())
            .map(|j| self.apply_free(&inner.matrix.column(j)))
            .collect();
        // composed map needs no re-certification, but `new` is cheap
        ModuleMap::new(
            inner.source.clone(),
            self.target.clone(),
            cols,
            self.twist_degree + inner.twist_degree,
        )
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap, MapError> {
        if self.source != other.source
            || self.target != other.target
            || self.twist_degree != other.twist_degree
        {
            return Err(MapError::Shape("sum of incompatible maps".into()));
        }
        let cols: Vec<FreeElement> = (0..self.source.generators.rank())
            .map(|j| self.matrix.column(j).add(&other.matrix.column(j)))
            .collect();
        ModuleMap::new(self.source.clone(), self.target.clone(), cols, self.twist_degree)
    }

    pub fn scale(&self, c: &Coeff) -> ModuleMap {
        let cols: Vec<FreeElement> = (0..self.source.generators.rank())
            .map(|j| self.matrix.column(j).scale(c))
            .collect();
        let matrix = GradedMatrix::from_columns(
            self.matrix.source.clone(),
            self.matrix.target.clone(),
            &cols,
        );
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix, twist_degree: self.twist_degree }
    }

    /// Is the induced map on modules zero (all columns relations)?
    pub fn is_zero_map(&self) -> bool {
        let tgb = self.target.gb();
        (0..self.source.generators.rank())
            .all(|j| tgb.contains(&self.matrix.column(j)))
    }

    /// The kernel as a presented module with its inclusion.
    pub fn kernel(&self) -> Result<(PresentedModule, ModuleMap), MapError> {
        // preimages: {v in F0(source) : phi(v) in relations(target)}
        let mut combined: Vec<FreeElement> = (0..self.source.generators.rank())
            .map(|j| self.matrix.column(j))
            .collect();
        let image_count = combined.len();
        combined.extend(self.target.relations.columns());
        let tracked = SubmoduleGb::tracked(&self.target.generators, &combined)?;
        let (_, syz) = tracked.syzygy_generators();
        let preimages: Vec<FreeElement> = syz
            .into_iter()
            .map(|s| {
                let comps: Vec<Polynomial> = s.components[..image_count]
                    .iter()
                    .enumerate()
                    .map(|(j, p)| {
                        // re-degree to source generator offsets
                        let tgt_deg = s.degree - self.source.generators.generator_degrees[j]
                            - self.twist_degree;
                        let mut q = p.clone();
                        if q.is_zero() {
                            q = Polynomial::zero(tgt_deg);
                        }
                        q
                    })
                    .collect();
                FreeElement { components: comps, degree: s.degree - self.twist_degree }
            })
            .filter(|c| !c.is_zero())
            .collect();
        let pruned = gb::minimal_generators_mod(
            &preimages,
            &self.source.generators,
            &self.source.relations.columns(),
        )?;
        let name = Some(format!("ker({})", self.describe()));
        let kernel = subquotient(&self.source, &pruned, &[], name)?;
        let incl = ModuleMap::new(kernel.clone(), self.source.clone(), pruned, 0)?;
        Ok((kernel, incl))
    }

    /// The image as a presented module with its inclusion into the target.
    pub fn image(&self) -> Result<(PresentedModule, ModuleMap), MapError> {
        let cols: Vec<FreeElement> = (0..self.source.generators.rank())
            .map(|j| self.matrix.column(j))
            .collect();
        let pruned = gb::minimal_generators_mod(
            &cols,
            &self.target.generators,
            &self.target.relations.columns(),
        )?;
        let name = Some(format!("im({})", self.describe()));
        let image = subquotient(&self.target, &pruned, &[], name)?;
        let incl = ModuleMap::new(image.clone(), self.target.clone(), pruned, 0)?;
        Ok((image, incl))
    }

    /// The cokernel with the projection from the target.
    pub fn cokernel(&self) -> Result<(PresentedModule, ModuleMap), MapError> {
        let mut rel_cols = self.target.relations.columns();
        rel_cols.extend((0..self.source.generators.rank()).map(|j| self.matrix.column(j)));
        let rel_cols: Vec<FreeElement> = rel_cols.into_iter().filter(|c| !c.is_zero()).collect();
        let coker = PresentedModule::new(
            self.target.ring.clone(),
            self.target.generators.generator_degrees.clone(),
            rel_cols,
            Some(format!("coker({})", self.describe())),
        );
        let proj = ModuleMap::new(
            self.target.clone(),
            coker.clone(),
            (0..self.target.generators.rank())
                .map(|j| coker.generators.generator(j))
                .collect(),
            0,
        )?;
        Ok((coker, proj))
    }

    pub fn describe(&self) -> String {
        format!("{} -> {}", self.source.display_name(), self.target.display_name())
    }
}

/// Coordinates of a free element inside the standard-monomial basis of
/// the graded piece of degree `v.degree` of the quotient `F/N`.
pub fn piece_coordinates(
    gb: &SubmoduleGb,
    standard: &[(usize, Monomial)],
    v: &FreeElement,
) -> Vec<Coeff> {
    let nf = gb.normal_form(v);
    let index: std::collections::BTreeMap<(usize, &Monomial), usize> = standard
        .iter()
        .enumerate()
        .map(|(i, (j, m))| ((*j, m), i))
        .collect();
    let mut coords = vec![coeff::zero(); standard.len()];
    for (j, p) in nf.components.iter().enumerate() {
        for (m, c) in p.terms() {
            let pos = index
                .get(&(j, m))
                .copied()
                .expect("normal form expands in standard monomials");
            coords[pos] = c.clone();
        }
    }
    coords
}

/// Matrix of multiplication by `p` from `M_k` to `M_{k + deg p}` in
/// standard-monomial coordinates.
pub fn multiplication_matrix(m: &PresentedModule, p: &Polynomial, k: i64) -> QMatrix {
    let gb = m.gb();
    let from = gb.standard_monomials(k);
    let to = gb.standard_monomials(k + p.degree());
    let mut out = QMatrix::zero(to.len(), from.len());
    for (col, (j, mono)) in from.iter().enumerate() {
        let elem = m
            .generators
            .element_from_component(*j, Polynomial::from_monomial(mono.clone(), coeff::one()))
            .mul_poly(p);
        let coords = piece_coordinates(&gb, &to, &elem);
        for (row, c) in coords.into_iter().enumerate() {
            out[(row, col)] = c;
        }
    }
    out
}

/// Basis of the space of degree-0 graded maps `M -> N`.
pub fn hom_space(m: &PresentedModule, n: &PresentedModule) -> Result<Vec<ModuleMap>, MapError> {
    let ngb = n.gb();
    let gen_degrees = &m.generators.generator_degrees;
    // unknown blocks: coordinates of the image of each generator
    let blocks: Vec<Vec<(usize, Monomial)>> = gen_degrees
        .iter()
        .map(|&b| ngb.standard_monomials(b))
        .collect();
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0usize, |acc, b| {
            let off = *acc;
            *acc += b.len();
            Some(off)
        })
        .collect();
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    if total == 0 {
        return Ok(Vec::new());
    }
    // constraints: each relation column must map to zero in N
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for r in self_relations(m) {
        let c = r.degree;
        let out_basis = ngb.standard_monomials(c);
        if out_basis.is_empty() {
            continue;
        }
        let mut block_rows = vec![vec![coeff::zero(); total]; out_basis.len()];
        for (j, entry) in r.components.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let mult = multiplication_with_bases(n, &ngb, entry, &blocks[j], &out_basis);
            for row in 0..out_basis.len() {
                for col in 0..blocks[j].len() {
                    if !mult[(row, col)].is_zero() {
                        block_rows[row][offsets[j] + col] =
                            block_rows[row][offsets[j] + col].clone()
                                + mult[(row, col)].clone();
                    }
                }
            }
        }
        rows.extend(block_rows);
    }
    let solutions: Vec<Vec<Coeff>> = if rows.is_empty() {
        // no constraints: the whole space ⊕_j N_{b_j}
        (0..total)
            .map(|i| {
                let mut v = vec![coeff::zero(); total];
                v[i] = coeff::one();
                v
            })
            .collect()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    let mut maps = Vec::new();
    for sol in solutions {
        let cols: Vec<FreeElement> = (0..m.generators.rank())
            .map(|j| {
                let mut e = n.generators.zero_element(gen_degrees[j]);
                for (idx, (comp, mono)) in blocks[j].iter().enumerate() {
                    let c = sol[offsets[j] + idx].clone();
                    if !c.is_zero() {
                        e.components[*comp] = e.components[*comp]
                            .add(&Polynomial::from_monomial(mono.clone(), c));
                    }
                }
                e
            })
            .collect();
        maps.push(ModuleMap::new(m.clone(), n.clone(), cols, 0)?);
    }
    Ok(maps)
}

fn self_relations(m: &PresentedModule) -> Vec<FreeElement> {
    m.relations.columns().into_iter().filter(|c| !c.is_zero()).collect()
}

fn multiplication_with_bases(
    n: &PresentedModule,
    ngb: &SubmoduleGb,
    p: &Polynomial,
    from: &[(usize, Monomial)],
    to: &[(usize, Monomial)],
) -> QMatrix {
    let mut out = QMatrix::zero(to.len(), from.len());
    for (col, (j, mono)) in from.iter().enumerate() {
        let elem = n
            .generators
            .element_from_component(*j, Polynomial::from_monomial(mono.clone(), coeff::one()))
            .mul_poly(p);
        let coords = piece_coordinates(ngb, to, &elem);
        for (row, c) in coords.into_iter().enumerate() {
            out[(row, col)] = c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_chi, make_q, make_twist};
    use crate::parse::parse_poly;
    use crate::ring::make_ring;

    #[test]
    fn well_definedness_certificate() {
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        let chi5 = make_chi(&a, 5).unwrap();
        // x3: chi_0 -> chi_5 is a degree-0 monomorphism
        let x3 = parse_poly("x3", &a).unwrap();
        let map = ModuleMap::from_poly(&chi, &chi5, &x3).unwrap();
        assert!(!map.is_zero_map());
        // x3: chi_0 -> chi_1 is ill-defined (degrees mismatch at entry level)
        let chi1 = make_chi(&a, 1).unwrap();
        assert!(std::panic::catch_unwind(|| {
            ModuleMap::from_poly(&chi, &chi1, &x3).ok();
        })
        .is_err() || ModuleMap::from_poly(&chi, &chi1, &x3).is_err());
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let a = make_ring(2, true).unwrap();
        let chi = make_chi(&a, 0).unwrap();
        let id = ModuleMap::identity(&chi);
        let (ker, _) = id.kernel().unwrap();
        assert!(ker.is_zero_module());
    }

    #[test]
    fn q_sequence_kernel_and_cokernel() {
        // kernel(Q_{j+2r,j} -> Q_{j+2r,j+2}) = chi_j   (paper's (inj))
        let a = make_ring(3, true).unwrap();
        let q = make_q(&a, 0, 2).unwrap(); // Q_{4,0}
        let q2 = make_q(&a, 2, 1).unwrap(); // Q_{4,2}
        let one = Polynomial::one(4);
        let proj = ModuleMap::from_poly(&q, &q2, &one).unwrap();
        let (ker, _) = proj.kernel().unwrap();
        let chi = make_chi(&a, 0).unwrap();
        for k in -10..=20 {
            assert_eq!(ker.graded_dim(k), chi.graded_dim(k), "k = {k}");
        }

        // cokernel(x1^s: Q_{j+2r,j} -> Q_{j+2r+2s,j}) = Q_{j+2r+2s, j+2r+2}
        let x1 = parse_poly("x1", &a).unwrap();
        let q40 = make_q(&a, 0, 2).unwrap(); // Q_{4,0}
        let q60 = make_q(&a, 0, 3).unwrap(); // Q_{6,0}
        let mul = ModuleMap::from_poly(&q40, &q60, &x1).unwrap();
        let (coker, _) = mul.cokernel().unwrap();
        let expected = make_q(&a, 6, 0).unwrap(); // Q_{6,6}
        for k in -10..=20 {
            assert_eq!(coker.graded_dim(k), expected.graded_dim(k), "k = {k}");
        }
    }

    #[test]
    fn euler_bookkeeping() {
        // dim ker - dim M + dim N - dim coker = 0 for x1: Q_{4,0} -> Q_{6,0}
        let a = make_ring(3, true).unwrap();
        let x1 = parse_poly("x1", &a).unwrap();
        let m = make_q(&a, 0, 2).unwrap();
        let n = make_q(&a, 0, 3).unwrap();
        let map = ModuleMap::from_poly(&m, &n, &x1).unwrap();
        let (ker, _) = map.kernel().unwrap();
        let (coker, _) = map.cokernel().unwrap();
        for k in -30..=30i64 {
            let lhs = ker.graded_dim(k) as i64 - m.graded_dim(k) as i64
                + n.graded_dim(k) as i64
                - coker.graded_dim(k) as i64;
            assert_eq!(lhs, 0, "k = {k}");
        }
    }

    #[test]
    fn hom_space_of_twists() {
        let a = make_ring(2, true).unwrap();
        let a0 = make_twist(&a, 0);
        let a2 = make_twist(&a, 2);
        // graded Hom(A, A(2))_0 = A_2, two-dimensional
        let maps = hom_space(&a0, &a2).unwrap();
        assert_eq!(maps.len(), 2);
        // graded Hom(A(2), A) is zero
        let maps_back = hom_space(&a2, &a0).unwrap();
        assert!(maps_back.is_empty());
    }

    #[test]
    fn hom_space_chi_to_chi() {
        let a = make_ring(2, true).unwrap();
        let chi0 = make_chi(&a, 0).unwrap();
        let chi5 = make_chi(&a, 5).unwrap();
        assert_eq!(hom_space(&chi0, &chi0).unwrap().len(), 1);
        assert_eq!(hom_space(&chi0, &chi5).unwrap().len(), 1); // x3
        // graded Hom misses the qgr morphism in this direction
        assert!(hom_space(&chi5, &chi0).unwrap().is_empty());
        let chi1 = make_chi(&a, 1).unwrap();
        assert!(hom_space(&chi0, &chi1).unwrap().is_empty());
    }
}
