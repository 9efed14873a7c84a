use polygroup::group::{FpLetter, HeisenbergTriple};
use polygroup::{GroupElement, GroupSpec, Rational};
use proptest::prelude::*;

fn exact_specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::IntVector { dim: 2 },
        GroupSpec::RationalAdditive,
        GroupSpec::HeisenbergRational,
        GroupSpec::FreeProdZZ2,
        GroupSpec::IntDirectSum,
        GroupSpec::CyclicFinite { modulus: 7 },
        GroupSpec::FreeGroup { labels: vec!["x".into(), "y".into()] },
    ]
}

#[test]
fn associativity_on_small_balls() {
    for spec in exact_specs() {
        let ball = match spec {
            // the 12-index window makes the full ball too large for all triples
            GroupSpec::IntDirectSum => spec.ball(1, 1).unwrap(),
            _ => spec.ball(2, 2).unwrap(),
        };
        for x in &ball {
            for y in &ball {
                let xy = spec.multiply(x, y).unwrap();
                for z in &ball {
                    let lhs = spec.multiply(&xy, z).unwrap();
                    let rhs = spec.multiply(x, &spec.multiply(y, z).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{spec}");
                }
            }
        }
    }
}

#[test]
fn gl_products_agree_up_to_rounding() {
    let spec = GroupSpec::GLFloat { n: 3 };
    let pts = spec.sample(6, 9).unwrap();
    for x in &pts {
        let xi = spec.inverse(x).unwrap();
        let GroupElement::Gl(p) = spec.multiply(x, &xi).unwrap() else { unreachable!() };
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p.get(i, j) - want).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn free_product_relations() {
    let spec = GroupSpec::FreeProdZZ2;
    let a = spec.parse_element("a").unwrap();
    assert!(spec.multiply(&a, &a).unwrap().is_identity());
    for x in spec.ball(3, 2).unwrap() {
        for y in spec.ball(3, 2).unwrap() {
            let xy = spec.multiply(&x, &y).unwrap();
            assert!(xy.word_length().unwrap() <= x.word_length().unwrap() + y.word_length().unwrap());
            // results are normal forms: never a·a, never b^0
            let GroupElement::FreeProd(w) = &xy else { unreachable!() };
            for pair in w.windows(2) {
                assert!(!(pair[0] == FpLetter::A && pair[1] == FpLetter::A));
                assert!(!matches!(pair, [FpLetter::B(_), FpLetter::B(_)]));
            }
            assert!(!w.contains(&FpLetter::B(0)));
        }
    }
}

#[test]
fn heisenberg_center() {
    let spec = GroupSpec::HeisenbergRational;
    let z = GroupElement::Heisenberg(HeisenbergTriple::new(Rational::zero(), Rational::zero(), Rational::new(3, 2)));
    for g in spec.sample(30, 4).unwrap() {
        assert_eq!(spec.multiply(&z, &g).unwrap(), spec.multiply(&g, &z).unwrap());
    }
    let x = spec.parse_element("(1,0,0)").unwrap();
    let y = spec.parse_element("(0,1,0)").unwrap();
    assert_ne!(spec.multiply(&x, &y).unwrap(), spec.multiply(&y, &x).unwrap());
}

fn sample_one(spec: &GroupSpec, seed: i64) -> GroupElement {
    spec.sample(1, seed).unwrap().pop().unwrap()
}

proptest! {
    #[test]
    fn identity_and_inverse_laws(seed in any::<i64>(), which in 0usize..7) {
        let spec = &exact_specs()[which];
        let x = sample_one(spec, seed);
        let e = spec.identity();
        prop_assert_eq!(&spec.multiply(&x, &e).unwrap(), &x);
        prop_assert_eq!(&spec.multiply(&e, &x).unwrap(), &x);
        let xi = spec.inverse(&x).unwrap();
        prop_assert!(spec.multiply(&x, &xi).unwrap().is_identity());
        prop_assert!(spec.multiply(&xi, &x).unwrap().is_identity());
        prop_assert_eq!(&spec.inverse(&xi).unwrap(), &x);
    }

    #[test]
    fn normal_forms_are_stable(seed in any::<i64>(), which in 0usize..7) {
        let spec = &exact_specs()[which];
        let xs = spec.sample(3, seed).unwrap();
        let p = spec.multiply(&spec.multiply(&xs[0], &xs[1]).unwrap(), &xs[2]).unwrap();
        prop_assert_eq!(&p.normalize().unwrap(), &p);
        prop_assert!(spec.contains(&p));
    }

    #[test]
    fn literals_round_trip(seed in any::<i64>(), which in 0usize..7) {
        let spec = &exact_specs()[which];
        let x = sample_one(spec, seed);
        let text = spec.format_element(&x);
        prop_assert_eq!(spec.parse_element(&text).unwrap(), x);
    }

    #[test]
    fn powers_add(seed in any::<i64>(), j in -4i64..=4, k in -4i64..=4) {
        let spec = GroupSpec::FreeGroup { labels: vec!["x".into(), "y".into()] };
        let x = sample_one(&spec, seed);
        let lhs = x.pow(j + k).unwrap();
        let rhs = spec.multiply(&x.pow(j).unwrap(), &x.pow(k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<i64>(), which in 0usize..7) {
        let spec = &exact_specs()[which];
        prop_assert_eq!(spec.sample(5, seed).unwrap(), spec.sample(5, seed).unwrap());
    }
}
