//! Difference operators `Δ_h = R_h - 1` and the polynomial testers.
//!
//! Order convention: `iterated_delta(f, [s0, s1, .., sk])` applies `Δ_{s0}`
//! first, i.e. it computes `Δ_{sk} ⋯ Δ_{s1} Δ_{s0} f`. Expanding the
//! operators gives
//!
//! ```text
//! (Δ_{sk} ⋯ Δ_{s0} f)(g) = Σ_{S ⊆ {0..k}} (-1)^{k+1-|S|} f(g · Π_{i ∈ S, descending} s_i)
//! ```
//!
//! which is what the testers evaluate. On non-commutative groups the order
//! is part of every reported witness.

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec};
use crate::rational::Rational;
use crate::report::{CheckReport, Verdict, Witness};
use crate::scalar::{Scalar, ScalarKind, DEFAULT_FLOAT_TOL};

/// Witnesses kept per report unless full enumeration is requested.
pub const DEFAULT_WITNESS_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    /// `None` enumerates the whole surface and keeps every witness.
    pub witness_cap: Option<usize>,
    /// Absolute tolerance for float residuals, scaled by the largest term.
    pub float_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { witness_cap: Some(DEFAULT_WITNESS_CAP), float_tol: DEFAULT_FLOAT_TOL }
    }
}

impl CheckOptions {
    pub fn with_tolerance(tol: f64) -> Self {
        CheckOptions { float_tol: tol, ..Default::default() }
    }

    pub fn exhaustive() -> Self {
        CheckOptions { witness_cap: None, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    Poly,
    Semipoly,
}

impl std::str::FromStr for DegreeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(DegreeKind::Poly),
            "semipoly" => Ok(DegreeKind::Semipoly),
            _ => Err(Error::Parse(format!("unknown check kind `{s}` (poly|semipoly)"))),
        }
    }
}

/// `g ↦ f(g·h) − f(g)`.
pub fn delta(f: &GroupFunction, h: &GroupElement) -> Result<GroupFunction> {
    f.spec().ensure_contains(h)?;
    let inner = f.clone();
    let step = h.clone();
    let label = format!("D[{}]({})", f.spec().format_element(h), f.label());
    Ok(GroupFunction::new(f.spec().clone(), f.kind(), label, move |g| inner.eval(&g.mul(&step)?)?.sub(&inner.eval(g)?)))
}

/// Composes [`delta`] over `steps`, `steps[0]` applied first.
pub fn iterated_delta(f: &GroupFunction, steps: &[GroupElement]) -> Result<GroupFunction> {
    if steps.is_empty() {
        return Err(Error::InvalidArgument("iterated_delta needs at least one step".into()));
    }
    steps.iter().try_fold(f.clone(), |acc, h| delta(&acc, h))
}

/// `g ↦ f(g⁻¹)`.
pub fn star(f: &GroupFunction) -> GroupFunction {
    let inner = f.clone();
    let label = format!("star({})", f.label());
    GroupFunction::new(f.spec().clone(), f.kind(), label, move |g| inner.eval(&g.inverse()?))
}

/// Signed products for the expanded iterated difference of one step tuple.
#[derive(Debug, Clone)]
pub struct Stencil {
    terms: Vec<(GroupElement, bool)>,
}

impl Stencil {
    pub fn new(steps: &[GroupElement], identity: &GroupElement) -> Result<Stencil> {
        let k = steps.len();
        if k >= 31 {
            return Err(Error::InvalidArgument("too many steps for one stencil".into()));
        }
        let mut products: Vec<GroupElement> = Vec::with_capacity(1 << k);
        products.push(identity.clone());
        for mask in 1usize..(1 << k) {
            let hi = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let rest = &products[mask ^ (1 << hi)];
            products.push(steps[hi].mul(rest)?);
        }
        let terms = products
            .into_iter()
            .enumerate()
            .map(|(mask, p)| (p, (k - mask.count_ones() as usize).is_multiple_of(2)))
            .collect();
        Ok(Stencil { terms })
    }

    /// Residual at `base` and the largest absolute term (for float scaling).
    pub fn apply(&self, f: &GroupFunction, base: &GroupElement) -> Result<(Scalar, f64)> {
        match f.kind() {
            ScalarKind::Exact => {
                let mut acc = Rational::zero();
                for (p, positive) in &self.terms {
                    let v = f.eval_exact(&base.mul(p)?)?;
                    if *positive {
                        acc += &v;
                    } else {
                        acc -= &v;
                    }
                }
                Ok((Scalar::Exact(acc), 0.0))
            }
            ScalarKind::Float => {
                let mut acc = 0.0;
                let mut magnitude: f64 = 0.0;
                for (p, positive) in &self.terms {
                    let v = f.eval(&base.mul(p)?)?.to_f64();
                    magnitude = magnitude.max(v.abs());
                    acc += if *positive { v } else { -v };
                }
                Ok((Scalar::Float(acc), magnitude))
            }
        }
    }
}

/// Evaluates `Δ_{steps[last]} ⋯ Δ_{steps[0]} f` at `base` by direct expansion.
pub fn difference_at(f: &GroupFunction, steps: &[GroupElement], base: &GroupElement) -> Result<Scalar> {
    for s in steps {
        f.spec().ensure_contains(s)?;
    }
    f.spec().ensure_contains(base)?;
    Ok(Stencil::new(steps, &base.identity_like())?.apply(f, base)?.0)
}

/// Enumerates index tuples of a fixed arity in lexicographic order,
/// optionally only the nondecreasing ones.
struct Tuples {
    n: usize,
    idx: Vec<usize>,
    nondecreasing: bool,
    done: bool,
}

impl Tuples {
    fn new(n: usize, arity: usize, nondecreasing: bool) -> Self {
        Tuples { n, idx: vec![0; arity], nondecreasing, done: n == 0 }
    }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.idx[pos] + 1 < self.n {
                self.idx[pos] += 1;
                let v = if self.nondecreasing { self.idx[pos] } else { 0 };
                for x in &mut self.idx[pos + 1..] {
                    *x = v;
                }
                break;
            }
        }
        Some(out)
    }
}

fn check_surface(f: &GroupFunction, steps: &[GroupElement], bases: &[GroupElement]) -> Result<()> {
    if steps.is_empty() || bases.is_empty() {
        return Err(Error::InvalidArgument("steps and bases must be nonempty".into()));
    }
    for x in steps.iter().chain(bases) {
        f.spec().ensure_contains(x)?;
    }
    Ok(())
}

fn run_tuples<I>(
    f: &GroupFunction,
    degree: usize,
    tuples: I,
    steps: &[GroupElement],
    bases: &[GroupElement],
    opts: &CheckOptions,
) -> Result<CheckReport>
where
    I: Iterator<Item = Vec<usize>>,
{
    let identity = f.spec().identity();
    let mut witnesses = Vec::new();
    let mut tuples_checked = 0u64;
    let mut evaluations = 0u64;
    'outer: for tuple in tuples {
        tuples_checked += 1;
        let chosen: Vec<GroupElement> = tuple.iter().map(|&i| steps[i].clone()).collect();
        let stencil = Stencil::new(&chosen, &identity)?;
        for base in bases {
            let (residual, magnitude) = stencil.apply(f, base)?;
            evaluations += stencil.terms.len() as u64;
            if !residual.is_negligible(opts.float_tol, magnitude) {
                witnesses.push(Witness { steps: chosen.clone(), base: base.clone(), residual });
                if opts.witness_cap.is_some_and(|k| witnesses.len() >= k) {
                    break 'outer;
                }
            }
        }
    }
    let mut report = CheckReport::new(f.spec().clone(), Verdict::from_bool(witnesses.is_empty()));
    report.witnesses = witnesses;
    report.params.degree = Some(degree as u64);
    if f.kind() == ScalarKind::Float {
        report.params.tolerance = Some(opts.float_tol);
    }
    report.count("steps", steps.len() as u64);
    report.count("bases", bases.len() as u64);
    report.count("tuples", tuples_checked);
    report.count("evaluations", evaluations);
    Ok(report)
}

/// Fréchet condition of degree `n`: every `(n+1)`-fold mixed difference with
/// steps from `steps` vanishes at every base point.
///
/// On commutative groups the operators commute, so only nondecreasing step
/// tuples are enumerated.
pub fn check_polynomial(
    f: &GroupFunction,
    n: usize,
    steps: &[GroupElement],
    bases: &[GroupElement],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_surface(f, steps, bases)?;
    let commutative = f.spec().is_commutative();
    let mut report = run_tuples(f, n, Tuples::new(steps.len(), n + 1, commutative), steps, bases, opts)?;
    if commutative {
        report.note("commutative group: step multisets enumerated once");
    }
    Ok(report)
}

/// Like [`check_polynomial`] but only with repeated steps `(h, .., h)`.
pub fn check_semipolynomial(
    f: &GroupFunction,
    n: usize,
    steps: &[GroupElement],
    bases: &[GroupElement],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_surface(f, steps, bases)?;
    let tuples = (0..steps.len()).map(|i| vec![i; n + 1]);
    run_tuples(f, n, tuples, steps, bases, opts)
}

pub fn check_degree(
    f: &GroupFunction,
    kind: DegreeKind,
    n: usize,
    steps: &[GroupElement],
    bases: &[GroupElement],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    match kind {
        DegreeKind::Poly => check_polynomial(f, n, steps, bases, opts),
        DegreeKind::Semipoly => check_semipolynomial(f, n, steps, bases, opts),
    }
}

/// Least `n <= max_n` whose check passes on the given surface, or `None`.
pub fn estimate_degree(
    f: &GroupFunction,
    max_n: usize,
    kind: DegreeKind,
    steps: &[GroupElement],
    bases: &[GroupElement],
) -> Result<Option<usize>> {
    let opts = CheckOptions { witness_cap: Some(1), ..Default::default() };
    for n in 0..=max_n {
        if check_degree(f, kind, n, steps, bases, &opts)?.passed() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Pointwise check of `Δ_{ab} = Δ_a + Δ_b + Δ_a Δ_b` and
/// `Δ_{a⁻¹} = −Δ_a − Δ_{a⁻¹} Δ_a`, evaluated through composed
/// [`delta`] functions.
pub fn verify_delta_identities(
    spec: &GroupSpec,
    f: &GroupFunction,
    pairs: &[(GroupElement, GroupElement)],
    bases: &[GroupElement],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    if f.spec() != spec {
        return Err(Error::SpecMismatch { expected: spec.to_string(), found: f.spec().to_string() });
    }
    let mut witnesses = Vec::new();
    let cap = opts.witness_cap.unwrap_or(usize::MAX);
    for (a, b) in pairs {
        let ab = spec.multiply(a, b)?;
        let a_inv = spec.inverse(a)?;
        let d_ab = delta(f, &ab)?;
        let d_a = delta(f, a)?;
        let d_b = delta(f, b)?;
        // Δ_a Δ_b: Δ_b is applied first
        let d_a_d_b = iterated_delta(f, &[b.clone(), a.clone()])?;
        let d_ainv = delta(f, &a_inv)?;
        let d_ainv_d_a = iterated_delta(f, &[a.clone(), a_inv.clone()])?;
        for g in bases {
            let lhs = d_ab.eval(g)?;
            let (x, y, z) = (d_a.eval(g)?, d_b.eval(g)?, d_a_d_b.eval(g)?);
            let rhs = x.add(&y)?.add(&z)?;
            let mag = [&lhs, &x, &y, &z].iter().map(|s| s.abs_f64()).fold(0.0, f64::max);
            let r = lhs.sub(&rhs)?;
            if !r.is_negligible(opts.float_tol, mag) && witnesses.len() < cap {
                witnesses.push(Witness { steps: vec![a.clone(), b.clone()], base: g.clone(), residual: r });
            }
            let lhs = d_ainv.eval(g)?;
            let w = d_ainv_d_a.eval(g)?;
            let rhs = x.neg().sub(&w)?;
            let mag = [&lhs, &x, &w].iter().map(|s| s.abs_f64()).fold(0.0, f64::max);
            let r = lhs.sub(&rhs)?;
            if !r.is_negligible(opts.float_tol, mag) && witnesses.len() < cap {
                witnesses.push(Witness { steps: vec![a_inv.clone(), a.clone()], base: g.clone(), residual: r });
            }
        }
    }
    let mut report = CheckReport::new(spec.clone(), Verdict::from_bool(witnesses.is_empty()));
    report.witnesses = witnesses;
    report.count("pairs", pairs.len() as u64);
    report.count("bases", bases.len() as u64);
    Ok(report)
}
