//! A fast pass over the library's main invariants, behind `polygroup selftest`.

use serde::Serialize;

use crate::calculus::{check_polynomial, check_semipolynomial, estimate_degree, CheckOptions, DegreeKind};
use crate::constructions::{self, AlphaSequence};
use crate::error::Result;
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec};
use crate::montel::{self, StepSurface};
use crate::quasipoly;
use crate::rational::Rational;
use crate::rep::{self, examples, Subspace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct SelftestResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn heisenberg() -> Result<bool> {
    let f = constructions::heisenberg_example();
    let pts = GroupSpec::HeisenbergRational.ball(1, 1)?;
    let opts = CheckOptions::default();
    let sp1 = check_semipolynomial(&f, 1, &pts, &pts, &opts)?.passed();
    let p2 = check_polynomial(&f, 2, &pts, &pts, &opts)?.passed();
    let p1 = check_polynomial(&f, 1, &pts, &pts, &opts)?;
    let residual_ok = p1.witnesses.iter().all(|w| match (&w.steps[0], &w.steps[1]) {
        (GroupElement::Heisenberg(p), GroupElement::Heisenberg(h)) => {
            w.residual == Scalar::Exact(&(&p.a * &h.b) - &(&h.a * &p.b))
        }
        _ => false,
    });
    Ok(sp1 && p2 && !p1.passed() && residual_ok)
}

fn commutative_equivalence() -> Result<bool> {
    let spec = GroupSpec::IntVector { dim: 2 };
    let steps = spec.ball(1, 1)?;
    let bases = spec.ball(2, 2)?;
    for (terms, degree) in [("1@0,0", 0), ("1@1,0;2@0,1", 1), ("1@1,1", 2), ("1@2,1;-3@0,1", 3), ("1@2,2", 4)] {
        let f = constructions::classical_polynomial(&spec, constructions::parse_exact_terms(terms)?)?;
        let p = estimate_degree(&f, 5, DegreeKind::Poly, &steps, &bases)?;
        let s = estimate_degree(&f, 5, DegreeKind::Semipoly, &spec.ball(3, 3)?, &bases)?;
        if p != Some(degree) || s != Some(degree) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn representations() -> Result<bool> {
    let s3 = examples::s3_irrep();
    let u = examples::unipotent_3();
    let a = rep::delta_algebra(&u)?;
    Ok(rep::sp_subspace(&s3, 2, 4)?.space == Subspace::zero(2)
        && rep::p_subspace(&s3, 2)? == Subspace::zero(2)
        && rep::p_subspace(&u, 2)?.is_full()
        && a.power(3)?.is_empty()
        && !a.power(2)?.is_empty()
        && rep::verify_sp_equals_p(&u, 3)?.passed()
        && rep::verify_anticommutation(&examples::square_zero_3(), 3)?.passed())
}

fn freeproduct() -> Result<bool> {
    let f = constructions::freeproduct_counterexample(AlphaSequence::Factorial);
    let spec = GroupSpec::FreeProdZZ2;
    let steps = spec.parse_element_list("a; b")?;
    let second = check_semipolynomial(&f, 1, &steps, &spec.ball(4, 2)?, &CheckOptions::default())?.passed();
    let growth = quasipoly::growth_probe(&f, &spec.parse_element("a b")?, 8)?;
    Ok(second && growth.min_poly_degree.is_none())
}

fn infgen() -> Result<bool> {
    let f = constructions::infgen_counterexample();
    let spec = GroupSpec::IntDirectSum;
    let bases = spec.sample(10, 1)?;
    let e: Vec<GroupElement> = (1..=10).map(crate::group::unit_direct_sum).collect();
    let orders_ok = montel::per_generator_orders(&f, &e, &[2; 10], &bases)?.passed();
    let mut fails = true;
    for k in 0..=5u32 {
        let steps = constructions::infgen_block_steps(k);
        fails &= !check_polynomial(&f, k as usize, &steps, &[spec.identity()], &CheckOptions::default())?.passed();
    }
    Ok(orders_ok && fails)
}

fn montel_example() -> Result<bool> {
    let spec = GroupSpec::IntVector { dim: 2 };
    let f = constructions::classical_polynomial(&spec, constructions::parse_exact_terms("1@2,1")?)?;
    let e = spec.generators()?;
    let bases = spec.ball(2, 2)?;
    let surface = StepSurface { radius: 2, coeff_bound: 2, samples: 3, seed: 1 };
    let m4 = montel::montel_polynomial_check(&f, &e, 4, &surface, &bases, &CheckOptions::default())?;
    let m3 = montel::montel_polynomial_check(&f, &e, 3, &surface, &bases, &CheckOptions::default())?;
    Ok(m4.hypothesis.passed()
        && m4.conclusion.passed()
        && !m3.hypothesis.passed()
        && m3.hypothesis.witnesses[0].residual == Scalar::Exact(q(2)))
}

fn mck() -> Result<bool> {
    let spec = GroupSpec::IntVector { dim: 2 };
    let f = constructions::classical_polynomial(&spec, constructions::parse_exact_terms("1@1,1")?)?;
    Ok(montel::mck_degree_bound(&f, &spec.generators()?, &[2, 2], &spec.ball(2, 2)?, 1)?.passed())
}

fn rational_fit() -> Result<bool> {
    let f = constructions::classical_polynomial(
        &GroupSpec::RationalAdditive,
        constructions::parse_exact_terms("1@2;-1/2@1")?,
    )?;
    let r = constructions::rational_fit_check(&f, 2, 6)?;
    Ok(r.passed() && r.values == vec![Scalar::Exact(q(0)), Scalar::Exact(Rational::new(-1, 2)), Scalar::Exact(q(1))])
}

fn matrix_element() -> Result<bool> {
    let u = examples::unipotent_3();
    let f = quasipoly::matrix_element(&u, &[q(0), q(0), q(1)], &[q(1), q(0), q(0)])?;
    let spec = u.word_group();
    let steps = spec.ball(1, 1)?;
    let bases = spec.ball(2, 2)?;
    let opts = CheckOptions::default();
    Ok(quasipoly::certify_degree_via_rep(&u, 2)?
        && check_polynomial(&f, 2, &steps, &bases, &opts)?.passed()
        && !check_polynomial(&f, 1, &steps, &bases, &opts)?.passed()
        && quasipoly::orbit_rank(&f, &bases, &bases)? <= 3)
}

fn gl_demo() -> Result<bool> {
    let f = constructions::gl_polynomial_demo(2, vec![0.0, 0.0, 0.0, 1.0])?;
    let pts = GroupSpec::GLFloat { n: 2 }.sample(8, 1)?;
    let opts = CheckOptions::with_tolerance(1e-6);
    Ok(check_polynomial(&f, 3, &pts[..4], &pts, &opts)?.passed()
        && !check_polynomial(&f, 2, &pts[..4], &pts, &opts)?.passed())
}

fn finite_order() -> Result<bool> {
    for n in 2..=5 {
        if montel::cyclic_semipolynomial_space(n, n)? != Subspace::span(n, &[vec![Rational::one(); n]]) {
            return Ok(false);
        }
    }
    let modulus = 5;
    let id = GroupFunction::exact(GroupSpec::CyclicFinite { modulus }, "j", |g| match g {
        GroupElement::Cyclic { residue, .. } => Ok(Rational::from_integer(*residue as i64)),
        _ => unreachable!("membership is checked before evaluation"),
    });
    Ok(montel::finite_order_fixed_check(&id, 5)?.finding == Some(crate::report::Finding::NotSemipolynomial))
}

type Item = (&'static str, fn() -> Result<bool>);

const ITEMS: &[Item] = &[
    ("heisenberg", heisenberg),
    ("commutative-equivalence", commutative_equivalence),
    ("representations", representations),
    ("freeproduct", freeproduct),
    ("infgen", infgen),
    ("montel", montel_example),
    ("order-degree-bound", mck),
    ("rational-fit", rational_fit),
    ("matrix-element", matrix_element),
    ("gl-demo", gl_demo),
    ("finite-order", finite_order),
];

pub fn run_all() -> Vec<SelftestResult> {
    ITEMS
        .iter()
        .map(|(name, f)| match f() {
            Ok(passed) => SelftestResult { name, passed, error: None },
            Err(e) => SelftestResult { name, passed: false, error: Some(e.to_string()) },
        })
        .collect()
}
