//! Property tests for the arithmetic layer: the symmetric-roots rewrite, the
//! inhomogeneous substitution, and homogeneous decomposition.

use std::collections::BTreeMap;

use proptest::prelude::*;

use chowkit::arith::{int, rat, GradedPoly, Int, Mono, SymPoly, UniPoly};

/// Expands `q(c1, c2)` back into the roots: `c1 -> alpha + beta`,
/// `c2 -> alpha beta`. Test-side inverse of the rewrite under test.
fn substitute_roots(q: &GradedPoly) -> BTreeMap<(u32, u32), Int> {
    let mut out: BTreeMap<(u32, u32), Int> = BTreeMap::new();
    for (mono, coeff) in q.terms() {
        assert!(!mono.chi);
        assert!(coeff.denom() == &Int::from(1));
        let c = coeff.numer().clone();
        // (alpha + beta)^a (alpha beta)^b
        for s in 0..=mono.c1 {
            let term = chowkit::arith::binomial(mono.c1 as i64, s as i64) * &c;
            let key = (mono.c2 + s, mono.c2 + mono.c1 - s);
            let e = out.entry(key).or_insert_with(|| Int::from(0));
            *e += term;
            if *e == Int::from(0) {
                out.remove(&key);
            }
        }
    }
    out
}

/// A random symmetric polynomial of root-degree at most 30, as its raw
/// coefficient map.
fn symmetric_poly() -> impl Strategy<Value = BTreeMap<(u32, u32), Int>> {
    proptest::collection::vec(((0u32..=15, 0u32..=15), -20i64..=20), 0..12).prop_map(|terms| {
        let mut map: BTreeMap<(u32, u32), Int> = BTreeMap::new();
        for ((i, j), c) in terms {
            if c == 0 {
                continue;
            }
            *map.entry((i, j)).or_insert_with(|| Int::from(0)) += int(c);
            if i != j {
                *map.entry((j, i)).or_insert_with(|| Int::from(0)) += int(c);
            }
        }
        map.retain(|_, v| *v != Int::from(0));
        map
    })
}

/// A random homogeneous chi-free polynomial of the given topological degree.
fn homogeneous_poly(deg: u32) -> impl Strategy<Value = GradedPoly> {
    let monos: Vec<Mono> = (0..=deg / 4)
        .filter(|b| (deg - 4 * b) % 2 == 0)
        .map(|b| Mono::new((deg - 4 * b) / 2, b))
        .collect();
    proptest::collection::vec(-9i64..=9, monos.len()).prop_map(move |coeffs| {
        let mut p = GradedPoly::zero();
        for (m, c) in monos.iter().zip(coeffs) {
            p.add_term(*m, rat(c));
        }
        p
    })
}

proptest! {
    /// Rewriting through c1, c2 and substituting the roots back reproduces
    /// the symmetric polynomial exactly.
    #[test]
    fn sym_rewrite_round_trip(terms in symmetric_poly()) {
        let p = SymPoly::new(terms.clone()).unwrap();
        let q = chowkit::arith::sym_to_c(&p);
        prop_assert_eq!(substitute_roots(&q), terms);
    }

    /// The inhomogeneous substitution is a ring map on homogeneous pieces.
    #[test]
    fn inhomogeneous_substitution_is_multiplicative(
        d1 in (0u32..=10).prop_map(|k| 2 * k),
        d2 in (0u32..=10).prop_map(|k| 2 * k),
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut gen_poly = |deg: u32| {
            let mut p = GradedPoly::zero();
            for b in 0..=deg / 4 {
                if (deg - 4 * b) % 2 == 0 {
                    p.add_term(Mono::new((deg - 4 * b) / 2, b), rat(rng.gen_range(-9..=9)));
                }
            }
            p
        };
        let p = gen_poly(d1);
        let q = gen_poly(d2);
        let lhs = p.mul(&q).to_inhomogeneous(d1 + d2).unwrap();
        let rhs = p
            .to_inhomogeneous(d1)
            .unwrap()
            .mul(&q.to_inhomogeneous(d2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// Homogeneous parts are supported in pairwise distinct degrees and
    /// re-sum to the original polynomial.
    #[test]
    fn homogeneous_decomposition_resums(
        terms in proptest::collection::vec(((0u32..=10, 0u32..=6), -9i64..=9), 0..10)
    ) {
        let mut p = GradedPoly::zero();
        for ((a, b), c) in terms {
            p.add_term(Mono::new(a, b), rat(c));
        }
        let parts = p.homogeneous_parts();
        let mut sum = GradedPoly::zero();
        for (d, part) in &parts {
            prop_assert_eq!(part.homogeneous_degree(), Some(*d));
            prop_assert!(!part.is_zero());
            sum = sum.add(part);
        }
        prop_assert_eq!(sum, p);
    }

    /// Homogenization inverts the substitution on every homogeneous piece.
    #[test]
    fn homogenization_inverts_substitution(
        p in (0u32..=12).prop_flat_map(|k| homogeneous_poly(2 * k).prop_map(move |p| (k, p)))
    ) {
        let (k, p) = p;
        let x = p.to_inhomogeneous(2 * k).unwrap();
        prop_assert_eq!(GradedPoly::from_inhomogeneous(&x, k).unwrap(), p);
    }

    /// Palindromic profile: images of the graded pieces satisfy
    /// `x^k p(1/x) = p(x)`.
    #[test]
    fn substitution_images_are_palindromic(
        p in (1u32..=12).prop_flat_map(|k| homogeneous_poly(2 * k).prop_map(move |p| (k, p)))
    ) {
        let (k, p) = p;
        let x = p.to_inhomogeneous(2 * k).unwrap();
        let mut reversed = vec![rat(0); k as usize + 1];
        for s in 0..=k as usize {
            reversed[k as usize - s] = x.coeff(s);
        }
        prop_assert_eq!(UniPoly::new(reversed), x);
    }
}
