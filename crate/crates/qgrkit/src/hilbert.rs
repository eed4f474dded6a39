//! Hilbert functions: monomial enumeration and generating-series
//! expansion, kept independent so each can check the other.

use crate::monomial::Monomial;
use crate::ring::RingDescriptor;

/// All monomials of weighted degree `k`, sorted by the monomial order.
///
/// For a quotient ring the list is the normal-form basis: monomials not
/// divisible by the relation's lead term `x0*x3`, i.e. `e0 = 0 or e3 = 0`.
pub fn monomial_basis(ring: &RingDescriptor, k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    let lead = ring
        .relation
        .as_ref()
        .map(|f| f.leading_term().expect("nonzero relation").0.clone());
    let mut out = Vec::new();
    let mut exps = vec![0u32; ring.num_vars];
    enumerate(ring, 0, k, &mut exps, &mut out, lead.as_ref());
    out.sort();
    out
}

fn enumerate(
    ring: &RingDescriptor,
    var: usize,
    remaining: i64,
    exps: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
    lead: Option<&Monomial>,
) {
    if var == ring.num_vars {
        if remaining == 0 {
            let m = Monomial::new(exps.clone(), &ring.weights);
            if let Some(l) = lead {
                if l.divides(&m) {
                    return;
                }
            }
            out.push(m);
        }
        return;
    }
    let w = ring.weights[var];
    let max = remaining / w;
    for e in 0..=max {
        exps[var] = e as u32;
        enumerate(ring, var + 1, remaining - e * w, exps, out, lead);
    }
    exps[var] = 0;
}

/// `dim R_k` by direct enumeration.
pub fn hilbert_dim(ring: &RingDescriptor, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    monomial_basis(ring, k).len()
}

/// Coefficients of the Hilbert series up to degree `kmax`:
/// `1 / prod (1 - t^{a_i})` for a free polynomial ring, times
/// `(1 - t^d)` when a degree-`d` relation is present (valid because the
/// relation is a nonzerodivisor).
pub fn hilbert_series(ring: &RingDescriptor, kmax: i64) -> Vec<i64> {
    assert!(kmax >= 0);
    let len = (kmax + 1) as usize;
    let mut series = vec![0i64; len];
    series[0] = 1;
    for &w in &ring.weights {
        // multiply by 1/(1 - t^w): prefix sums with stride w
        let w = w as usize;
        for i in w..len {
            series[i] += series[i - w];
        }
    }
    if let Some(d) = ring.degree_d {
        let d = d as usize;
        // multiply by (1 - t^d)
        for i in (d..len).rev() {
            series[i] -= series[i - d];
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn basis_degree_two() {
        let a = make_ring(2, true).unwrap();
        let basis = monomial_basis(&a, 2);
        let rendered: Vec<String> =
            basis.iter().map(|m| m.render(&a.var_names())).collect();
        assert_eq!(basis.len(), 2);
        assert!(rendered.contains(&"x0^2".to_string()));
        assert!(rendered.contains(&"x1".to_string()));
    }

    #[test]
    fn basis_degree_zero_and_negative() {
        let a = make_ring(2, true).unwrap();
        assert_eq!(monomial_basis(&a, 0).len(), 1);
        assert!(monomial_basis(&a, -1).is_empty());
    }

    #[test]
    fn quotient_excludes_x0x3() {
        let a = make_ring(2, true).unwrap();
        for m in monomial_basis(&a, 6) {
            assert!(m.exponent(0) == 0 || m.exponent(3) == 0);
        }
        let b = make_ring(2, false).unwrap();
        assert!(monomial_basis(&b, 6).len() > monomial_basis(&a, 6).len());
    }

    #[test]
    fn degree_five_contains_x3() {
        let a = make_ring(2, true).unwrap();
        let basis = monomial_basis(&a, 5);
        assert!(basis.iter().any(|m| m.exponents() == &[0, 0, 0, 1]));
        assert_eq!(basis.len(), 6);
    }

    #[test]
    fn series_matches_enumeration() {
        for n in 2..=4 {
            for quotient in [false, true] {
                let ring = make_ring(n, quotient).unwrap();
                let series = hilbert_series(&ring, 200);
                for k in 0..=200i64 {
                    assert_eq!(
                        series[k as usize] as usize,
                        hilbert_dim(&ring, k),
                        "n={n} quotient={quotient} k={k}"
                    );
                }
            }
        }
    }
}
