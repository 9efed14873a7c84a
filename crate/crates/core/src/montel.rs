//! Generator-set criteria: the difference condition is checked with steps
//! from a set `E` only, and the conclusion on arbitrary steps.
//!
//! All groups here are discrete, so "topologically generates" means
//! "generates". Conclusions are tested on a ball and a seeded sample, and
//! boundedness is only ever estimated from finitely many values.

use std::collections::HashSet;

use crate::calculus::{check_polynomial, check_semipolynomial, CheckOptions};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::Matrix;
use crate::quasipoly::min_poly_degree;
use crate::rational::Rational;
use crate::rep::{sp_subspace, MatrixRep, Subspace};
use crate::report::{CheckReport, Finding, Verdict, Witness};
use crate::scalar::Scalar;

/// Conclusion steps: `ball(radius, coeff_bound)` plus `samples` seeded
/// elements (matrix groups only get the sample).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepSurface {
    pub radius: u64,
    pub coeff_bound: u64,
    pub samples: usize,
    pub seed: i64,
}

impl StepSurface {
    pub fn steps(&self, spec: &GroupSpec) -> Result<Vec<GroupElement>> {
        let mut out = match spec.ball(self.radius, self.coeff_bound) {
            Ok(b) => b,
            Err(Error::Unsupported(_)) => Vec::new(),
            Err(e) => return Err(e),
        };
        let mut seen: HashSet<GroupElement> = out.iter().cloned().collect();
        for x in spec.sample(self.samples, self.seed)? {
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MontelOutcome {
    pub hypothesis: CheckReport,
    pub conclusion: CheckReport,
}

/// Hypothesis: every `m`-fold difference with steps in `E` vanishes on
/// `bases`. Conclusion: the same with steps from `surface`.
pub fn montel_polynomial_check(
    f: &GroupFunction,
    e: &[GroupElement],
    m: usize,
    surface: &StepSurface,
    bases: &[GroupElement],
    opts: &CheckOptions,
) -> Result<MontelOutcome> {
    if e.is_empty() {
        return Err(Error::InvalidArgument("generator set E is empty".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let hypothesis = check_polynomial(f, m - 1, e, bases, opts)?;
    let steps = surface.steps(f.spec())?;
    let mut conclusion = check_polynomial(f, m - 1, &steps, bases, opts)?;
    conclusion.params.radius = Some(surface.radius);
    conclusion.params.coeff_bound = Some(surface.coeff_bound);
    conclusion.params.seed = Some(surface.seed);
    if let Some(len) = e.iter().filter_map(GroupElement::word_length).max() {
        conclusion.count("generator_word_length", len);
    }
    Ok(MontelOutcome { hypothesis, conclusion })
}

/// `Δ_h^{n(h)} f = 0` on `bases` for every `h ∈ E`.
pub fn per_generator_orders(
    f: &GroupFunction,
    e: &[GroupElement],
    orders: &[usize],
    bases: &[GroupElement],
) -> Result<CheckReport> {
    if e.is_empty() || e.len() != orders.len() {
        return Err(Error::InvalidArgument("E and orders must be nonempty and of equal length".into()));
    }
    if orders.contains(&0) {
        return Err(Error::InvalidArgument("orders must be positive".into()));
    }
    let mut report = CheckReport::new(f.spec().clone(), Verdict::Pass);
    for (h, &n) in e.iter().zip(orders) {
        let r = check_semipolynomial(f, n - 1, std::slice::from_ref(h), bases, &CheckOptions::default())?;
        report.witnesses.extend(r.witnesses);
    }
    report.verdict = Verdict::from_bool(report.witnesses.is_empty());
    report.count("generators", e.len() as u64);
    report.count("bases", bases.len() as u64);
    Ok(report)
}

/// All products of at most `radius` letters from `E ∪ E⁻¹`.
pub fn generated_ball(spec: &GroupSpec, e: &[GroupElement], radius: usize) -> Result<Vec<GroupElement>> {
    let mut letters = Vec::new();
    for h in e {
        letters.push(h.clone());
        letters.push(spec.inverse(h)?);
    }
    let mut seen: HashSet<GroupElement> = HashSet::from([spec.identity()]);
    let mut out = vec![spec.identity()];
    let mut frontier = out.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for l in &letters {
                let p = g.mul(l)?;
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// On a commutative group, per-generator orders `n(h)` verified on `bases`
/// bound the degree by `Σ n(h) − 1`; the polynomial check at that degree
/// then runs with steps from the `E`-ball of the given radius.
pub fn mck_degree_bound(
    f: &GroupFunction,
    e: &[GroupElement],
    orders: &[usize],
    bases: &[GroupElement],
    step_radius: usize,
) -> Result<CheckReport> {
    if !f.spec().is_commutative() {
        return Err(Error::Unsupported(format!("{} is not commutative", f.spec())));
    }
    let hyp = per_generator_orders(f, e, orders, bases)?;
    let m: usize = orders.iter().sum();
    if !hyp.passed() {
        let mut r = hyp.with_finding(Finding::HypothesisFails);
        r.params.degree = Some(m as u64 - 1);
        r.note("per-generator order hypothesis fails");
        return Ok(r);
    }
    let steps = generated_ball(f.spec(), e, step_radius)?;
    let mut r = check_polynomial(f, m - 1, &steps, bases, &CheckOptions::default())?;
    r.params.radius = Some(step_radius as u64);
    Ok(r)
}

/// On ℤ/n, checks exhaustively whether some `Δ_h^k f` (`k <= max_degree + 1`)
/// vanishes for all `h`; if so, `f` must be constant.
///
/// A function that is not a semipolynomial satisfies the implication
/// vacuously: the verdict is pass with [`Finding::NotSemipolynomial`].
pub fn finite_order_fixed_check(f: &GroupFunction, max_degree: usize) -> Result<CheckReport> {
    let GroupSpec::CyclicFinite { modulus } = *f.spec() else {
        return Err(Error::Unsupported("finite-order check needs a cyclic group".into()));
    };
    let all: Vec<GroupElement> = (0..modulus).map(|r| GroupElement::Cyclic { residue: r, modulus }).collect();
    let opts = CheckOptions { witness_cap: Some(1), ..Default::default() };
    let degree = (0..=max_degree).find_map(|d| match check_semipolynomial(f, d, &all, &all, &opts) {
        Ok(r) if r.passed() => Some(Ok(d)),
        Ok(_) => None,
        Err(e) => Some(Err(e)),
    });
    let mut report = CheckReport::new(f.spec().clone(), Verdict::Pass);
    report.params.degree = Some(max_degree as u64);
    match degree.transpose()? {
        None => {
            report = report.with_finding(Finding::NotSemipolynomial);
            report.note("not a semipolynomial up to the given degree");
        }
        Some(d) => {
            report.count("semipolynomial_degree", d as u64);
            let v0 = f.eval(&all[0])?;
            for g in &all[1..] {
                let diff = f.eval(g)?.sub(&v0)?;
                if !diff.is_negligible(0.0, 0.0) {
                    report.witnesses.push(Witness { steps: vec![g.clone()], base: all[0].clone(), residual: diff });
                }
            }
            report.verdict = Verdict::from_bool(report.witnesses.is_empty());
        }
    }
    Ok(report)
}

/// Basis of all functions on ℤ/n killed by every `Δ_h^{n+1}`, computed on
/// the regular representation (vectors are value tables).
pub fn cyclic_semipolynomial_space(modulus: usize, degree: usize) -> Result<Subspace> {
    let mut shift = Matrix::zeros(modulus, modulus);
    for i in 0..modulus {
        shift[(i, (i + 1) % modulus)] = Rational::one();
    }
    let rel = format!("t^{modulus}");
    let rep = MatrixRep::new(modulus, vec![("t".into(), shift)], &[rel.as_str()])?;
    // the image is finite, so the word ball saturates and the result is exact
    let r = sp_subspace(&rep, degree, modulus + 1)?;
    if !r.stabilized {
        return Err(Error::Evaluation("regular representation did not saturate".into()));
    }
    Ok(r.space)
}

/// Evidence that a bounded function is constant: with the order hypothesis
/// in place, looks at `f(g hᵏ)` for `k = 0..=window` along every direction
/// `h` of the `E`-ball of radius 2.
///
/// A nonconstant sequence is reported as [`Finding::UnboundedOrNonconstant`]
/// with the first such sequence in `values`. Pass means every observed
/// sequence was constant, which is consistent with constancy and proves
/// nothing about boundedness.
pub fn bounded_montel_check(
    f: &GroupFunction,
    e: &[GroupElement],
    orders: &[usize],
    window: usize,
    bases: &[GroupElement],
) -> Result<CheckReport> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let hyp = per_generator_orders(f, e, orders, bases)?;
    if !hyp.passed() {
        let mut r = hyp.with_finding(Finding::HypothesisFails);
        r.note("per-generator order hypothesis fails");
        return Ok(r);
    }
    let spec = f.spec();
    let directions: Vec<GroupElement> = generated_ball(spec, e, 2)?.into_iter().filter(|h| !h.is_identity()).collect();
    let mut report = CheckReport::new(spec.clone(), Verdict::Pass);
    report.params.radius = Some(window as u64);
    let mut max_abs = 0.0f64;
    for h in &directions {
        for g in bases {
            let mut seq = Vec::with_capacity(window + 1);
            let mut x = g.clone();
            for _ in 0..=window {
                seq.push(f.eval(&x)?);
                x = x.mul(h)?;
            }
            max_abs = seq.iter().map(Scalar::abs_f64).fold(max_abs, f64::max);
            let first_change = seq.windows(2).map(|w| w[1].sub(&w[0])).find(|d| match d {
                Ok(d) => !d.is_negligible(crate::scalar::DEFAULT_FLOAT_TOL, 1.0),
                Err(_) => true,
            });
            if let Some(d) = first_change {
                if report.witnesses.is_empty() {
                    let exact: Option<Vec<Rational>> = seq.iter().map(|s| s.as_exact().cloned()).collect();
                    match exact.as_deref().map(min_poly_degree) {
                        Some(Some(deg)) => report.note(format!("sequence fits a polynomial of degree {deg} in k")),
                        Some(None) => report.note("sequence fits no polynomial of degree below the window"),
                        None => {}
                    }
                    report.values = seq;
                }
                report.witnesses.push(Witness { steps: vec![h.clone()], base: g.clone(), residual: d? });
                // one witness per direction
                break;
            }
        }
    }
    report.note(format!("max |f| over the probed sequences: {max_abs}"));
    if !report.witnesses.is_empty() {
        report.verdict = Verdict::Fail;
        report.finding = Some(Finding::UnboundedOrNonconstant);
    }
    report.count("directions", directions.len() as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{builtin, freeproduct_counterexample, AlphaSequence};
    use crate::group::unit_direct_sum;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn z2_fn(label: &str, p: fn(i64, i64) -> i64) -> GroupFunction {
        GroupFunction::exact(GroupSpec::IntVector { dim: 2 }, label, move |g| match g {
            GroupElement::IntVector(v) => Ok(q(p(v[0], v[1]))),
            _ => unreachable!(),
        })
    }

    fn z_fn(label: &str, p: fn(i64) -> i64) -> GroupFunction {
        GroupFunction::exact(GroupSpec::IntVector { dim: 1 }, label, move |g| match g {
            GroupElement::IntVector(v) => Ok(q(p(v[0]))),
            _ => unreachable!(),
        })
    }

    fn cyc_fn(n: u64, p: fn(u64) -> i64) -> GroupFunction {
        GroupFunction::exact(GroupSpec::CyclicFinite { modulus: n }, "cyc", move |g| match g {
            GroupElement::Cyclic { residue, .. } => Ok(q(p(*residue))),
            _ => unreachable!(),
        })
    }

    const SURFACE: StepSurface = StepSurface { radius: 2, coeff_bound: 2, samples: 5, seed: 1 };

    #[test]
    fn montel_examples() {
        let spec = GroupSpec::IntVector { dim: 2 };
        let f = z2_fn("x^2 y", |x, y| x * x * y);
        let e = spec.generators().unwrap();
        let bases = spec.ball(3, 3).unwrap();
        let opts = CheckOptions::default();
        let m4 = montel_polynomial_check(&f, &e, 4, &SURFACE, &bases, &opts).unwrap();
        assert!(m4.hypothesis.passed() && m4.conclusion.passed());
        let m3 = montel_polynomial_check(&f, &e, 3, &SURFACE, &bases, &opts).unwrap();
        assert!(!m3.hypothesis.passed());
        let w = &m3.hypothesis.witnesses[0];
        assert_eq!(w.residual, Scalar::Exact(q(2)));
        let mut steps = w.steps.clone();
        steps.sort_by_key(|s| format!("{s:?}"));
        assert_eq!(steps, spec.parse_element_list("(0,1); (1,0); (1,0)").unwrap());
        let c = GroupFunction::constant(spec.clone(), q(3));
        let m1 = montel_polynomial_check(&c, &e, 1, &SURFACE, &bases, &opts).unwrap();
        assert!(m1.hypothesis.passed() && m1.conclusion.passed());
    }

    #[test]
    fn mck_examples() {
        let spec = GroupSpec::IntVector { dim: 2 };
        let e = spec.generators().unwrap();
        let bases = spec.ball(3, 3).unwrap();
        let r = mck_degree_bound(&z2_fn("xy", |x, y| x * y), &e, &[2, 2], &bases, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.params.degree, Some(3));
        let z = GroupSpec::IntVector { dim: 1 };
        let zb = z.ball(4, 4).unwrap();
        let cube = z_fn("x^3", |x| x * x * x);
        let r = mck_degree_bound(&cube, &z.generators().unwrap(), &[4], &zb, 1).unwrap();
        assert!(r.passed());
        assert!(!check_polynomial(&cube, 2, &z.ball(1, 1).unwrap(), &zb, &CheckOptions::default()).unwrap().passed());
        let bad = mck_degree_bound(&cube, &z.generators().unwrap(), &[3], &zb, 1).unwrap();
        assert_eq!(bad.finding, Some(Finding::HypothesisFails));
        let heis = builtin("heisenberg").unwrap();
        let hb = GroupSpec::HeisenbergRational.ball(1, 1).unwrap();
        assert!(mck_degree_bound(&heis, &hb, &vec![3; hb.len()], &hb, 1).is_err());
    }

    #[test]
    fn infgen_passes_orders_but_not_degrees() {
        let f = builtin("infgen").unwrap();
        let spec = GroupSpec::IntDirectSum;
        let e: Vec<GroupElement> = (1..=10).map(unit_direct_sum).collect();
        let bases = spec.sample(20, 3).unwrap();
        assert!(per_generator_orders(&f, &e, &[2; 10], &bases).unwrap().passed());
        for k in 0..=5u32 {
            let steps = crate::constructions::infgen_block_steps(k);
            let r = check_polynomial(&f, k as usize, &steps, &[spec.identity()], &CheckOptions::default()).unwrap();
            assert!(!r.passed(), "degree {k}");
        }
    }

    #[test]
    fn finite_order_examples() {
        let c = finite_order_fixed_check(&cyc_fn(5, |_| 4), 3).unwrap();
        assert!(c.passed() && c.finding.is_none());
        let id = finite_order_fixed_check(&cyc_fn(5, |j| j as i64), 4).unwrap();
        assert!(id.passed());
        assert_eq!(id.finding, Some(Finding::NotSemipolynomial));
        let parity = finite_order_fixed_check(&cyc_fn(4, |j| (j % 2) as i64), 5).unwrap();
        assert_eq!(parity.finding, Some(Finding::NotSemipolynomial));
    }

    #[test]
    fn parity_on_z4_has_no_vanishing_power() {
        // brute force: Δ₁^k of the value table never vanishes for k <= 6
        let mut v: Vec<i64> = vec![0, 1, 0, 1];
        for _ in 1..=6 {
            v = (0..4).map(|i| v[(i + 1) % 4] - v[i]).collect();
            assert!(v.iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn cyclic_semipolynomials_are_constants() {
        for n in 2..=5 {
            let s = cyclic_semipolynomial_space(n, n).unwrap();
            assert_eq!(s, Subspace::span(n, &[vec![Rational::one(); n]]));
        }
    }

    #[test]
    fn bounded_examples() {
        let fp = GroupSpec::FreeProdZZ2;
        let ab = fp.parse_element_list("a; b").unwrap();
        let bases = fp.ball(2, 2).unwrap();
        let c = GroupFunction::constant(fp.clone(), q(1));
        assert!(bounded_montel_check(&c, &ab, &[2, 2], 6, &bases).unwrap().passed());

        let z = GroupSpec::IntVector { dim: 1 };
        let id = z_fn("n", |n| n);
        let r = bounded_montel_check(&id, &z.generators().unwrap(), &[2], 5, &[z.identity()]).unwrap();
        assert_eq!(r.finding, Some(Finding::UnboundedOrNonconstant));
        assert_eq!(r.values, (0..=5).map(|k| Scalar::Exact(q(k))).collect::<Vec<_>>());

        let f = freeproduct_counterexample(AlphaSequence::Factorial);
        let r = bounded_montel_check(&f, &ab, &[2, 2], 6, &[fp.identity()]).unwrap();
        assert_eq!(r.finding, Some(Finding::UnboundedOrNonconstant));
        let h = fp.parse_element("a b").unwrap();
        assert!(r.witnesses.iter().any(|w| w.steps == vec![h.clone()]));
    }
}
