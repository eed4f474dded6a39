//! The exact sequences relating the named modules: builders for the
//! `Q`-family sequences, the `x2`-sequence through `A/(x0,x1)`, the
//! Koszul complexes, and the filtration of `Q` by `chi`'s.

use crate::complex::ModuleComplex;
use crate::maps::{MapError, ModuleMap};
use crate::module::{self, make_chi, make_q, make_twist, ModuleError, PresentedModule};
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;

#[derive(Debug, thiserror::Error)]
pub enum SequenceError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn x1_power(ring: &RingDescriptor, s: i64) -> Polynomial {
    Polynomial::from_monomial(ring.monomial(&[0, s as u32, 0, 0]), crate::coeff::one())
}

/// `0 -> Q_{j+2r,j} --x1^s--> Q_{j+2r+2s,j} -> Q_{j+2r+2s,j+2r+2} -> 0`
/// for `r >= 0, s > 0, r + s < 2n - 1`.
pub fn q_sequence(
    ring: &RingDescriptor,
    j: i64,
    r: i64,
    s: i64,
) -> Result<ModuleComplex, SequenceError> {
    let left = make_q(ring, j, r)?;
    let middle = make_q(ring, j, r + s)?;
    let right = make_q(ring, j + 2 * r + 2, s - 1)?;
    let inj = ModuleMap::from_poly(&left, &middle, &x1_power(ring, s))?;
    let proj = ModuleMap::from_poly(&middle, &right, &Polynomial::one(ring.num_vars))?;
    Ok(ModuleComplex::new(vec![right, middle, left], vec![proj, inj])?)
}

/// `0 -> Q_{j+2r-2,j} -> Q_{j+2r,j} -> chi_{j+2r} -> 0` (the `s = 1`,
/// top-quotient special case).
pub fn q_top_sequence(
    ring: &RingDescriptor,
    j: i64,
    r: i64,
) -> Result<ModuleComplex, SequenceError> {
    q_sequence(ring, j, r - 1, 1)
}

/// `0 -> chi_j -> Q_{j+2r,j} -> Q_{j+2r,j+2} -> 0` (the `r = 0` start).
pub fn q_bottom_sequence(
    ring: &RingDescriptor,
    j: i64,
    r: i64,
) -> Result<ModuleComplex, SequenceError> {
    q_sequence(ring, j, 0, r)
}

/// `0 -> chi_j --x2--> (A/(x0,x1))(j+2n-1) -> chi_{j+2n-1} -> 0`.
pub fn x2_sequence(ring: &RingDescriptor, j: i64) -> Result<ModuleComplex, SequenceError> {
    let n = ring
        .n_param
        .ok_or_else(|| ModuleError::InvalidParameter("ring lacks n".into()))?;
    let chi = make_chi(ring, j)?;
    let mid = module::make_aq01(ring, j + 2 * n - 1)?;
    let right = make_chi(ring, j + 2 * n - 1)?;
    let inj = ModuleMap::from_poly(&chi, &mid, &ring.variable(2))?;
    let proj = ModuleMap::from_poly(&mid, &right, &Polynomial::one(ring.num_vars))?;
    Ok(ModuleComplex::new(vec![right, mid, chi], vec![proj, inj])?)
}

/// The two Koszul complexes, augmented:
/// `0 -> A(-3) -> A(-1) ⊕ A(-2) -> A -> A/(x0,x1) -> 0` and
/// `0 -> A(-2n) -> A(-1) ⊕ A(-2n+1) -> A -> Q_{0,-4n+4} -> 0`.
pub fn koszul_sequence(
    ring: &RingDescriptor,
    second_variable: usize,
) -> Result<ModuleComplex, SequenceError> {
    assert!(second_variable == 1 || second_variable == 2);
    let n = ring
        .n_param
        .ok_or_else(|| ModuleError::InvalidParameter("ring lacks n".into()))?;
    let w = ring.weights[second_variable];
    let a0 = make_twist(ring, 0);
    let f1 = PresentedModule::free(ring.clone(), vec![1, w], Some("step1".into()));
    let f2 = PresentedModule::free(ring.clone(), vec![1 + w], Some("step2".into()));
    let quotient = if second_variable == 1 {
        module::make_aq01(ring, 0)?
    } else {
        make_q(ring, -4 * n + 4, 2 * n - 2)?
    };
    let x0 = ring.variable(0);
    let xi = ring.variable(second_variable);
    // d1 = [x0, xi], d2 = (xi, -x0)^T
    let d1 = ModuleMap::new(
        f1.clone(),
        a0.clone(),
        vec![
            a0.generators.element_from_component(0, x0.clone()),
            a0.generators.element_from_component(0, xi.clone()),
        ],
        0,
    )?;
    let d2 = {
        let mut col = f1.generators.zero_element(1 + w);
        col.components[0] = xi;
        col.components[1] = x0.neg();
        ModuleMap::new(f2.clone(), f1.clone(), vec![col], 0)?
    };
    let aug = ModuleMap::from_poly(&a0, &quotient, &Polynomial::one(ring.num_vars))?;
    Ok(ModuleComplex::new(vec![quotient, a0, f1, f2], vec![aug, d1, d2])?)
}

/// One step of the filtration report: identification of a subquotient.
#[derive(Debug, Clone)]
pub struct FiltrationStep {
    pub level: i64,
    pub expected: String,
    pub matches: bool,
}

/// The filtration `0 ⊂ Q_{j,j} ⊂ Q_{j+2,j} ⊂ ... ⊂ Q_{j+2k,j}` with
/// subquotients `chi_j, chi_{j+2}, ..., chi_{j+2k}`: each subquotient is
/// built inside `Q_{j+2k,j}` and compared against its expected `chi`.
pub fn filtration_report(
    ring: &RingDescriptor,
    j: i64,
    k: i64,
) -> Result<Vec<FiltrationStep>, SequenceError> {
    let big = make_q(ring, j, k)?;
    let mut steps = Vec::new();
    for level in 0..=k {
        // sub_l = image of x1^{k-l} * Q_{j+2l,j};  generated by x1^{k-l}
        let gen_l = big
            .generators
            .element_from_component(0, x1_power(ring, k - level));
        let den = if level == 0 {
            Vec::new()
        } else {
            vec![big
                .generators
                .element_from_component(0, x1_power(ring, k - level + 1))]
        };
        let sub = module::subquotient(&big, &[gen_l.clone()], &den, None)?;
        let expected = make_chi(ring, j + 2 * level)?;
        let mut matches = true;
        let lo = -(j + 2 * k) - 1;
        let hi = lo + 4 * ring.max_weight() + 8;
        for degree in lo..=hi {
            if sub.graded_dim(degree) != expected.graded_dim(degree) {
                matches = false;
                break;
            }
        }
        let matches = matches
            && crate::iso::is_isomorphic(&sub, &expected)?.is_isomorphic();
        steps.push(FiltrationStep {
            level: j + 2 * level,
            expected: expected.display_name(),
            matches,
        });
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn qqq_exact_small() {
        let a = make_ring(2, true).unwrap();
        // n = 2: r >= 0, s > 0, r+s < 3
        for (j, r, s) in [(0i64, 0i64, 1i64), (0, 0, 2), (0, 1, 1), (3, 1, 1), (-2, 0, 2)] {
            let c = q_sequence(&a, j, r, s).unwrap();
            assert!(c.is_exact().unwrap(), "j={j} r={r} s={s}");
        }
    }

    #[test]
    fn x2_sequence_exact() {
        let a = make_ring(2, true).unwrap();
        for j in [0i64, 1, 4, -3] {
            let c = x2_sequence(&a, j).unwrap();
            assert!(c.is_exact().unwrap(), "j = {j}");
        }
    }

    #[test]
    fn koszul_sequences_exact() {
        for n in [2i64, 3] {
            let a = make_ring(n, true).unwrap();
            for v in [1usize, 2] {
                let c = koszul_sequence(&a, v).unwrap();
                assert!(c.is_exact().unwrap(), "n = {n}, variable = {v}");
            }
        }
    }

    #[test]
    fn koszul_twists_match() {
        let a = make_ring(2, true).unwrap();
        let c = koszul_sequence(&a, 1).unwrap();
        // modules are [quotient, A, A(-1)⊕A(-2), A(-3)]
        assert_eq!(c.modules[2].generators.generator_degrees, vec![1, 2]);
        assert_eq!(c.modules[3].generators.generator_degrees, vec![3]);
        let c2 = koszul_sequence(&a, 2).unwrap();
        assert_eq!(c2.modules[2].generators.generator_degrees, vec![1, 3]); // A(-1)⊕A(-2n+1)
        assert_eq!(c2.modules[3].generators.generator_degrees, vec![4]); // A(-2n)
    }
}
