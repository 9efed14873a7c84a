use polygroup::calculus::{check_polynomial, check_semipolynomial, CheckOptions};
use polygroup::constructions::{builtin, classical_polynomial, ExactTerm};
use polygroup::quasipoly::{growth_probe, min_poly_degree, orbit_rank};
use polygroup::{GroupElement, GroupSpec, Rational};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orbit_rank_is_monotone(seed in any::<i64>(), cut_s in 1usize..8, cut_b in 1usize..8) {
        let spec = GroupSpec::FreeProdZZ2;
        let f = builtin("freeproduct").unwrap();
        let shifts = spec.sample(8, seed).unwrap();
        let bases = spec.sample(8, seed.wrapping_add(1)).unwrap();
        let full = orbit_rank(&f, &shifts, &bases).unwrap();
        prop_assert!(orbit_rank(&f, &shifts[..cut_s], &bases).unwrap() <= full);
        prop_assert!(orbit_rank(&f, &shifts, &bases[..cut_b]).unwrap() <= full);
    }

    #[test]
    fn growth_degree_matches_polynomial_sequences(c in prop::collection::vec(-3i64..=3, 1..6), h in 1i64..=3) {
        let spec = GroupSpec::IntVector { dim: 1 };
        let terms: Vec<ExactTerm> = c.iter().enumerate().map(|(i, &v)| ExactTerm { coeff: q(v), exps: vec![i as u32] }).collect();
        let f = classical_polynomial(&spec, terms).unwrap();
        let true_degree = c.iter().rposition(|&v| v != 0);
        let g = growth_probe(&f, &GroupElement::IntVector(vec![h]), 8).unwrap();
        match true_degree {
            Some(d) => prop_assert_eq!(g.min_poly_degree, Some(d)),
            // the zero sequence already has vanishing first differences
            None => prop_assert_eq!(g.min_poly_degree, Some(0)),
        }
    }
}

#[test]
fn min_poly_degree_of_known_sequences() {
    let squares: Vec<Rational> = (0..6).map(|k| q(k * k)).collect();
    assert_eq!(min_poly_degree(&squares), Some(2));
    let powers: Vec<Rational> = (0..8).map(|k| q(1 << k)).collect();
    assert_eq!(min_poly_degree(&powers), None);
}

/// Registry functions with a small orbit rank that pass a semipolynomial
/// check also pass a polynomial check at a degree no larger than the rank.
#[test]
fn bounded_rank_semipolynomials_are_polynomials() {
    let opts = CheckOptions::default();
    let heis = builtin("heisenberg").unwrap();
    let hs = GroupSpec::HeisenbergRational.ball(1, 1).unwrap();
    let hb = GroupSpec::HeisenbergRational.ball(2, 2).unwrap();
    let rank = orbit_rank(&heis, &hb, &hb).unwrap();
    assert_eq!(rank, 4);
    assert!(check_semipolynomial(&heis, 1, &hs, &hb, &opts).unwrap().passed());
    assert!((0..=rank).any(|n| check_polynomial(&heis, n, &hs, &hs, &opts).unwrap().passed()));

    let z2 = GroupSpec::IntVector { dim: 2 };
    let f = classical_polynomial(&z2, vec![ExactTerm { coeff: q(1), exps: vec![2, 1] }]).unwrap();
    let b = z2.ball(3, 3).unwrap();
    let rank = orbit_rank(&f, &b, &b).unwrap();
    // span of shifts of x²y is spanned by the monomials dividing it
    assert_eq!(rank, 6);
    let steps = z2.ball(1, 1).unwrap();
    assert!(check_semipolynomial(&f, 3, &steps, &b, &opts).unwrap().passed());
    assert!((0..=rank).any(|n| check_polynomial(&f, n, &steps, &b, &opts).unwrap().passed()));
}
