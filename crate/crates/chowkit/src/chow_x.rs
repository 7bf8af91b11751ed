//! `CH(X_n)` as the cokernel of multiplication by `c1` on `CH(Y_n)`.
//!
//! The `G_m`-bundle `X_n -> Y_n` gives the exact sequence
//! `CH(Y_n) --(.c1)--> CH(Y_n) --> CH(X_n) -> 0`, so the degree-`d` part of
//! `CH(X_n)` is the cokernel of the degree-`(d-2) -> d` multiplication
//! matrix. The computed per-degree free ranks and invariant factors are
//! matched against the closed-form decomposition, which splits into four
//! cases by `n mod 4` (with `t = floor(n/4)`):
//!
//! - `n = 4t`:   `F = Z[c2]/(c2^t){1, v_{4t-4}}`,
//!               `T = Z/2[c2]/(c2^t){v_{4t-2}, v_{4t-4} v_{4t-2}}`
//! - `n = 4t+1`: `F = Z[c2]/(c2^t) + Z[c2]/(c2^(t-1)){v_{4t}}`,
//!               `T = Z/2[c2]/(c2^t){v_{4t-2}, v_{4t-2} v_{4t}} + Z/2t{c2^(t-1) v_{4t}}`
//! - `n = 4t+2`: `F = Z[c2]/(c2^t){1, v_{4t}} + Z{v_{4t-2}}`,
//!               `T = Z/2[c2]/(c2^(t-1)){c2 v_{4t-2}, c2 v_{4t-2} v_{4t}} + Z/4{v_{4t-2} v_{4t}}`
//! - `n = 4t+3`: `F = Z[c2]/(c2^t){1, v_{4t}}`,
//!               `T = Z/2[c2]/(c2^t){v_{4t+2}, v_{4t} v_{4t+2}} + Z/(2t+1){c2^t v_{4t}}`

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, GradedPoly, Int};
use crate::chow_y::{ChowError, ChowY, StructureConstants};
use crate::lattice::{cokernel, snf, AbelianGroupReport, IntMatrix, LatticeError, SmithForm};

#[derive(Debug, Error)]
pub enum ChowXError {
    #[error("n = {0} is below the range of the closed-form decomposition: the truncations c2^t, c2^(t-1) degenerate for t < 2 (needs n >= 8)")]
    BelowClosedFormRange(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// One generator of the expected decomposition: `c2^c2_power` times an
/// optional `v`-class or product of both, with its finite order (`None` for
/// free generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedGenerator {
    pub label: String,
    pub degree: u32,
    pub c2_power: u32,
    pub v1: bool,
    pub v2: bool,
    pub order: Option<u64>,
}

/// Fully expanded per-degree expectation for `CH(X_n)`.
#[derive(Clone, Debug)]
pub struct DecompositionExpectation {
    pub n: u32,
    pub t: u32,
    pub residue: u32,
    pub free: BTreeMap<u32, usize>,
    /// Invariant-factor chains per degree, ascending.
    pub torsion: BTreeMap<u32, Vec<Int>>,
    pub generators: Vec<ExpectedGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffItem {
    pub degree: u32,
    pub field: &'static str,
    pub actual: String,
    pub expected: String,
}

/// Result of annotating one expected generator against the computed group.
#[derive(Clone, Debug)]
pub struct GeneratorAnnotation {
    pub label: String,
    pub degree: u32,
    pub expected_order: Option<u64>,
    pub computed_order: Option<u64>,
    pub matched: bool,
}

/// Normalizes a multiset of cyclic orders into an ascending invariant-factor
/// chain, by taking the Smith normal form of the diagonal relation matrix.
pub fn invariant_factors_of_orders(orders: &[u64]) -> Vec<Int> {
    if orders.is_empty() {
        return Vec::new();
    }
    let k = orders.len();
    let mut diag = IntMatrix::zero(k, k);
    for (i, &o) in orders.iter().enumerate() {
        diag[(i, i)] = int(o as i64);
    }
    snf(&diag).torsion()
}

/// The closed-form expectation, fully expanded per degree. Rejects `n < 8`,
/// where the truncation exponents degenerate.
pub fn expected_decomposition(n: u32) -> Result<DecompositionExpectation, ChowXError> {
    if n < 8 {
        return Err(ChowXError::BelowClosedFormRange(n));
    }
    let t = n / 4;
    let residue = n % 4;

    let mut free: BTreeMap<u32, usize> = BTreeMap::new();
    let mut torsion_orders: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    let mut generators: Vec<ExpectedGenerator> = Vec::new();

    // v-degrees of the ambient ring of Y_n, in ascending order
    let (dv1, dv2) = {
        let even = n % 2 == 0;
        let m = if even { n / 2 } else { (n - 1) / 2 };
        if even {
            (2 * m - 4, 2 * m - 2)
        } else {
            (2 * m - 2, 2 * m)
        }
    };

    let mut push = |s: u32, v1: bool, v2: bool, order: Option<u64>| {
        let degree =
            4 * s + if v1 { dv1 } else { 0 } + if v2 { dv2 } else { 0 };
        let mut label = String::new();
        if s == 1 {
            label.push_str("c2");
        } else if s > 1 {
            label.push_str(&format!("c2^{s}"));
        }
        if v1 {
            label.push_str(&format!(" v{dv1}"));
        }
        if v2 {
            label.push_str(&format!(" v{dv2}"));
        }
        let label = if label.is_empty() {
            "1".to_string()
        } else {
            label.trim_start().to_string()
        };
        match order {
            None => *free.entry(degree).or_default() += 1,
            Some(o) => torsion_orders.entry(degree).or_default().push(o),
        }
        generators.push(ExpectedGenerator {
            label,
            degree,
            c2_power: s,
            v1,
            v2,
            order,
        });
    };

    match residue {
        0 => {
            // free: {1, v_{4t-4}} over Z[c2]/(c2^t); v_{4t-4} = v1
            for s in 0..t {
                push(s, false, false, None);
                push(s, true, false, None);
            }
            // torsion: Z/2 on {v_{4t-2}, v_{4t-4} v_{4t-2}} over Z/2[c2]/(c2^t)
            for s in 0..t {
                push(s, false, true, Some(2));
                push(s, true, true, Some(2));
            }
        }
        1 => {
            for s in 0..t {
                push(s, false, false, None);
            }
            for s in 0..t - 1 {
                push(s, false, true, None); // v_{4t} = v2
            }
            for s in 0..t {
                push(s, true, false, Some(2)); // v_{4t-2} = v1
                push(s, true, true, Some(2));
            }
            push(t - 1, false, true, Some(2 * t as u64)); // c2^(t-1) v_{4t}
        }
        2 => {
            for s in 0..t {
                push(s, false, false, None);
                push(s, false, true, None); // v_{4t} = v2
            }
            push(0, true, false, None); // v_{4t-2} = v1, a lone free generator
            for s in 0..t - 1 {
                push(s + 1, true, false, Some(2)); // c2^(s+1) v_{4t-2}
                push(s + 1, true, true, Some(2));
            }
            push(0, true, true, Some(4)); // v_{4t-2} v_{4t}
        }
        3 => {
            for s in 0..t {
                push(s, false, false, None);
                push(s, true, false, None); // v_{4t} = v1
            }
            for s in 0..t {
                push(s, false, true, Some(2)); // v_{4t+2} = v2
                push(s, true, true, Some(2));
            }
            push(t, true, false, Some(2 * t as u64 + 1)); // c2^t v_{4t}
        }
        _ => unreachable!(),
    }

    let torsion = torsion_orders
        .into_iter()
        .map(|(d, orders)| (d, invariant_factors_of_orders(&orders)))
        .collect();

    Ok(DecompositionExpectation {
        n,
        t,
        residue,
        free,
        torsion,
        generators,
    })
}

/// Computes `CH(X_n)` per degree as the cokernel of the `c1`-multiplication
/// family on the integral basis of `CH(Y_n)`.
pub fn compute_chow_x(
    chow: &ChowY,
    sc: &StructureConstants,
) -> Result<AbelianGroupReport, ChowXError> {
    let dims: BTreeMap<u32, usize> = (0..=chow.top_degree())
        .step_by(2)
        .map(|d| (d, chow.rank_at(d)))
        .collect();
    let maps = chow.c1_matrix_family(sc);
    Ok(cokernel(&dims, &maps)?)
}

/// Per-degree comparison of computed and expected free ranks and torsion
/// chains; an empty diff means the decomposition is reproduced exactly.
pub fn match_reports(
    actual: &AbelianGroupReport,
    expected: &DecompositionExpectation,
) -> Vec<DiffItem> {
    let mut diff = Vec::new();
    let mut degrees: Vec<u32> = actual.parts.iter().map(|p| p.degree).collect();
    for &d in expected.free.keys().chain(expected.torsion.keys()) {
        if !degrees.contains(&d) {
            degrees.push(d);
        }
    }
    degrees.sort_unstable();
    degrees.dedup();

    for d in degrees {
        let (a_free, a_tors) = actual
            .at(d)
            .map(|p| (p.free_rank, p.torsion.clone()))
            .unwrap_or((0, Vec::new()));
        let e_free = expected.free.get(&d).copied().unwrap_or(0);
        let e_tors = expected.torsion.get(&d).cloned().unwrap_or_default();
        if a_free != e_free {
            diff.push(DiffItem {
                degree: d,
                field: "free-rank",
                actual: a_free.to_string(),
                expected: e_free.to_string(),
            });
        }
        if a_tors != e_tors {
            diff.push(DiffItem {
                degree: d,
                field: "torsion",
                actual: format!("{a_tors:?}"),
                expected: format!("{e_tors:?}"),
            });
        }
    }
    diff
}

/// Order of the class of `x` in `Z^rows / colspan(M)` given the Smith form
/// of `M`: `None` for infinite order.
fn class_order(s: &SmithForm, rows: usize, x: &[Int]) -> Option<u64> {
    assert_eq!(x.len(), rows);
    let y = {
        let mut y = vec![Int::zero(); rows];
        for i in 0..rows {
            for (j, xv) in x.iter().enumerate() {
                if !s.u[(i, j)].is_zero() && !xv.is_zero() {
                    y[i] += &s.u[(i, j)] * xv;
                }
            }
        }
        y
    };
    let mut order = Int::one();
    for (i, yv) in y.iter().enumerate() {
        if i < s.rank {
            let d = &s.factors[i];
            let g = yv.gcd(d);
            order = order.lcm(&(d / g));
        } else if !yv.is_zero() {
            return None; // free coordinate: infinite order
        }
    }
    u64::try_from(order).ok()
}

/// Annotates the expected generators against the computed cokernel: each
/// generator is mapped into `CH(Y_n)`, projected to the cokernel at its
/// degree, and its order is computed there.
pub fn annotate_generators(
    chow: &ChowY,
    sc: &StructureConstants,
    expected: &DecompositionExpectation,
) -> Result<Vec<GeneratorAnnotation>, ChowXError> {
    let maps = chow.c1_matrix_family(sc);
    let [v1p, v2p] = chow.ring().v_polys();
    let mut smith_cache: BTreeMap<u32, SmithForm> = BTreeMap::new();
    let mut out = Vec::new();
    for g in &expected.generators {
        let mut poly = GradedPoly::c2().pow(g.c2_power);
        if g.v1 {
            poly = poly.mul(&v1p);
        }
        if g.v2 {
            poly = poly.mul(&v2p);
        }
        let nf = chow.ring().normal_form(&poly);
        let (deg, coords) = chow.integral_coords(&nf)?;
        debug_assert!(nf.is_zero() || deg == g.degree);
        let rows = chow.rank_at(g.degree);
        let computed_order = match g.degree.checked_sub(2).and_then(|d| maps.get(&d)) {
            None => {
                // no incoming map: the class is free unless it is zero
                if coords.iter().all(|c| c.is_zero()) {
                    Some(1)
                } else {
                    None
                }
            }
            Some(m) => {
                let s = smith_cache
                    .entry(g.degree)
                    .or_insert_with(|| snf(m));
                let mut x = coords.clone();
                x.resize(rows, Int::zero());
                class_order(s, rows, &x)
            }
        };
        out.push(GeneratorAnnotation {
            label: g.label.clone(),
            degree: g.degree,
            expected_order: g.order,
            computed_order,
            matched: computed_order == g.order || (g.order.is_none() && computed_order.is_none()),
        });
    }
    Ok(out)
}

/// Exactness self-test: the image of every `c1`-multiplication column must
/// project to zero in the cokernel at the target degree.
pub fn image_projects_to_zero(chow: &ChowY, sc: &StructureConstants) -> bool {
    let maps = chow.c1_matrix_family(sc);
    for (&d, m) in &maps {
        let target = d + 2;
        let rows = chow.rank_at(target);
        let s = snf(m);
        for j in 0..m.cols {
            let col = m.column(j);
            if class_order(&s, rows, &col) != Some(1) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(invariant_factors_of_orders(&[2, 4]), vec![int(2), int(4)]);
        assert_eq!(invariant_factors_of_orders(&[2, 3]), vec![int(6)]);
        assert_eq!(invariant_factors_of_orders(&[2, 2]), vec![int(2), int(2)]);
        assert!(invariant_factors_of_orders(&[1, 1]).is_empty());
    }

    #[test]
    fn expectation_rejects_small_n() {
        assert!(matches!(
            expected_decomposition(7),
            Err(ChowXError::BelowClosedFormRange(7))
        ));
    }

    #[test]
    fn expectation_n8() {
        // t = 2: free at degrees {0, 4, 4, 8}; Z/2 at 6, 10, 10, 14
        let e = expected_decomposition(8).unwrap();
        assert_eq!(e.t, 2);
        assert_eq!(e.free.get(&0), Some(&1));
        assert_eq!(e.free.get(&4), Some(&2));
        assert_eq!(e.free.get(&8), Some(&1));
        assert_eq!(e.free.values().sum::<usize>(), 4);
        assert_eq!(e.torsion.get(&6).unwrap(), &vec![int(2)]);
        assert_eq!(e.torsion.get(&10).unwrap(), &vec![int(2), int(2)]);
        assert_eq!(e.torsion.get(&14).unwrap(), &vec![int(2)]);
    }

    #[test]
    fn expectation_odd_torsion() {
        // n = 9 (t=2): Z/4 at degree 12
        let e = expected_decomposition(9).unwrap();
        assert_eq!(e.torsion.get(&12).unwrap(), &vec![int(4)]);
        // n = 10 (t=2): Z/4 at degree 14, Z/2 at 10 and 18
        let e = expected_decomposition(10).unwrap();
        assert_eq!(e.torsion.get(&14).unwrap(), &vec![int(4)]);
        assert_eq!(e.torsion.get(&10).unwrap(), &vec![int(2)]);
        assert_eq!(e.torsion.get(&18).unwrap(), &vec![int(2)]);
        // n = 11 (t=2): Z/5 at degree 16
        let e = expected_decomposition(11).unwrap();
        assert_eq!(e.torsion.get(&16).unwrap(), &vec![int(5)]);
    }

    #[test]
    fn full_pipeline_n8_and_n9() {
        for n in [8u32, 9] {
            let chow = ChowY::build(n).unwrap();
            let sc = chow.verify_closure().unwrap();
            let actual = compute_chow_x(&chow, &sc).unwrap();
            let expected = expected_decomposition(n).unwrap();
            let diff = match_reports(&actual, &expected);
            assert!(diff.is_empty(), "n={n}: {diff:?}");
            assert!(image_projects_to_zero(&chow, &sc));
            // degree 0 is Z, degree 2 kills c1
            assert_eq!(actual.at(0).unwrap().free_rank, 1);
            assert_eq!(actual.at(2).unwrap().free_rank, 0);
            assert!(actual.at(2).unwrap().torsion.is_empty());
        }
    }

    #[test]
    fn generator_annotations_n9() {
        let chow = ChowY::build(9).unwrap();
        let sc = chow.verify_closure().unwrap();
        let expected = expected_decomposition(9).unwrap();
        let ann = annotate_generators(&chow, &sc, &expected).unwrap();
        assert!(ann.iter().all(|a| a.matched), "{ann:#?}");
        // the Z/4 generator is c2 v8 at degree 12
        let z4 = ann
            .iter()
            .find(|a| a.expected_order == Some(4))
            .unwrap();
        assert_eq!(z4.degree, 12);
        assert_eq!(z4.computed_order, Some(4));
    }

    #[test]
    fn synthetic_perturbation_is_detected() {
        let chow = ChowY::build(8).unwrap();
        let sc = chow.verify_closure().unwrap();
        let actual = compute_chow_x(&chow, &sc).unwrap();
        let mut expected = expected_decomposition(8).unwrap();
        // drop one torsion factor
        let d = *expected.torsion.keys().next().unwrap();
        expected.torsion.get_mut(&d).unwrap().clear();
        let diff = match_reports(&actual, &expected);
        assert_eq!(diff.len(), 1);
        assert_eq!(diff[0].degree, d);
        assert_eq!(diff[0].field, "torsion");
    }
}
