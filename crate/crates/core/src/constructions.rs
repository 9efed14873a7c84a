//! Explicit functions: the Heisenberg example, the two counterexamples,
//! the float quotient demos and the polynomial fit on ℚ.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{unit_direct_sum, FpLetter, GlMatrix, GroupElement, GroupSpec};
use crate::rational::Rational;
use crate::report::{CheckReport, Verdict, Witness};
use crate::scalar::Scalar;

/// The sequence `α_k` driving the free-product counterexample.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSequence {
    /// `α_k = k!`.
    Factorial,
    /// `α_k = base^k`.
    Geometric(Rational),
    /// Finitely many prescribed values.
    Explicit(Vec<Rational>),
}

impl AlphaSequence {
    pub fn get(&self, k: usize) -> Result<Rational> {
        match self {
            AlphaSequence::Factorial => Ok((1..=k as i64).map(Rational::from_integer).product()),
            AlphaSequence::Geometric(base) => Ok(base.pow(k as u32)),
            AlphaSequence::Explicit(values) => {
                values.get(k).cloned().ok_or_else(|| Error::Evaluation(format!("explicit α sequence has no entry {k}")))
            }
        }
    }
}

/// Triangular numbers `N_k = k(k+1)/2`, splitting `1, 2, 3, ..` into
/// blocks `{N_k + 1, ..., N_{k+1}}` of length `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIndex;

impl BlockIndex {
    pub fn n(k: u32) -> u32 {
        k * (k + 1) / 2
    }

    /// Block containing the 1-based coordinate `i`.
    pub fn block_of(i: u32) -> u32 {
        assert!(i >= 1, "coordinates start at 1");
        let mut k = 0;
        while Self::n(k + 1) < i {
            k += 1;
        }
        k
    }

    pub fn block(k: u32) -> std::ops::RangeInclusive<u32> {
        Self::n(k) + 1..=Self::n(k + 1)
    }
}

fn heisenberg_parts(g: &GroupElement) -> Result<&crate::group::HeisenbergTriple> {
    match g {
        GroupElement::Heisenberg(h) => Ok(h),
        _ => Err(Error::SpecMismatch { expected: "heisenberg".into(), found: format!("{g:?}") }),
    }
}

/// `f(a, b, c) = ab − 2c`.
pub fn heisenberg_example() -> GroupFunction {
    GroupFunction::exact(GroupSpec::HeisenbergRational, "heisenberg", |g| {
        let h = heisenberg_parts(g)?;
        Ok(&(&h.a * &h.b) - &(&h.c * &Rational::from_integer(2)))
    })
}

/// The exponents `n_1, .., n_k` of a ℤ * ℤ₂ word once a leading and a
/// trailing `a` are stripped.
fn b_exponents(word: &[FpLetter]) -> Vec<i64> {
    word.iter()
        .filter_map(|l| match l {
            FpLetter::B(n) => Some(*n),
            FpLetter::A => None,
        })
        .collect()
}

/// Value on `b^{n_1} a ⋯ a b^{n_k}` from `f(x b^n) = n α_{k−1} − (n − 1) f(x)`.
pub fn freeproduct_value(alpha: &AlphaSequence, word: &[FpLetter]) -> Result<Rational> {
    let mut v = Rational::zero();
    for (j, n) in b_exponents(word).into_iter().enumerate() {
        let n = Rational::from_integer(n);
        v = &(&n * &alpha.get(j)?) - &(&(&n - &Rational::one()) * &v);
    }
    Ok(v)
}

/// Function on ℤ * ℤ₂ with `Δ_a² f = Δ_b² f = 0` whose values along `ab`
/// reproduce `α`, so it is not a semipolynomial for fast-growing `α`.
pub fn freeproduct_counterexample(alpha: AlphaSequence) -> GroupFunction {
    let label = match &alpha {
        AlphaSequence::Factorial => "freeproduct:factorial".to_string(),
        AlphaSequence::Geometric(b) => format!("freeproduct:geometric:{b}"),
        AlphaSequence::Explicit(_) => "freeproduct:explicit".to_string(),
    };
    GroupFunction::exact(GroupSpec::FreeProdZZ2, label, move |g| match g {
        GroupElement::FreeProd(w) => freeproduct_value(&alpha, w),
        _ => Err(Error::SpecMismatch { expected: "freeproduct".into(), found: format!("{g:?}") }),
    })
    .memoized()
}

/// `f(n) = n⁽¹⁾ + n⁽²⁾n⁽³⁾ + n⁽⁴⁾n⁽⁵⁾n⁽⁶⁾ + ⋯` on the direct sum.
pub fn infgen_counterexample() -> GroupFunction {
    GroupFunction::exact(GroupSpec::IntDirectSum, "infgen", |g| {
        let GroupElement::DirectSum(m) = g else {
            return Err(Error::SpecMismatch { expected: "directsum".into(), found: format!("{g:?}") });
        };
        let blocks: BTreeSet<u32> = m.keys().map(|&i| BlockIndex::block_of(i)).collect();
        let mut total = Rational::zero();
        for k in blocks {
            let mut term = Rational::one();
            for i in BlockIndex::block(k) {
                match m.get(&i) {
                    Some(&x) => term = &term * &Rational::from_integer(x),
                    None => {
                        term = Rational::zero();
                        break;
                    }
                }
            }
            total = &total + &term;
        }
        Ok(total)
    })
}

/// Basis vectors of block `k`: the steps whose mixed difference of the
/// block term is identically 1.
pub fn infgen_block_steps(k: u32) -> Vec<GroupElement> {
    BlockIndex::block(k).map(unit_direct_sum).collect()
}

fn gl_parts(g: &GroupElement) -> Result<&GlMatrix> {
    match g {
        GroupElement::Gl(m) => Ok(m),
        _ => Err(Error::SpecMismatch { expected: "gl".into(), found: format!("{g:?}") }),
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// `f(A) = p(log|det A|)` with `p = Σ coeffs[i] tⁱ`.
pub fn gl_polynomial_demo(n: usize, coeffs: Vec<f64>) -> Result<GroupFunction> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    match coeffs.last() {
        None => return Err(Error::InvalidArgument("coefficient list is empty".into())),
        Some(&c) if c == 0.0 && coeffs.len() > 1 => {
            return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()))
        }
        _ => {}
    }
    let label = format!("gl-demo:{n}:{}", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
    Ok(GroupFunction::float(GroupSpec::GLFloat { n }, label, move |g| {
        Ok(horner(&coeffs, gl_parts(g)?.det().abs().ln()))
    }))
}

/// One term `coeff · x₁^{e₁} ⋯ x_n^{e_n}` of a multivariate polynomial.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FloatTerm {
    pub coeff: f64,
    pub exps: Vec<u32>,
}

/// `f(A) = p(log|a₁₁|, .., log|a_nn|)` on upper-triangular matrices.
pub fn triangular_polynomial_demo(n: usize, terms: Vec<FloatTerm>) -> Result<GroupFunction> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive".into()));
    }
    if terms.is_empty() {
        return Err(Error::InvalidArgument("coefficient table is empty".into()));
    }
    if let Some(t) = terms.iter().find(|t| t.exps.len() != n) {
        return Err(Error::Dimension(format!("term needs {n} exponents, got {}", t.exps.len())));
    }
    Ok(GroupFunction::float(GroupSpec::GLFloat { n }, format!("tri-demo:{n}"), move |g| {
        let m = gl_parts(g)?;
        let scale = m.entries().iter().fold(1.0f64, |s, x| s.max(x.abs()));
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j).abs() > 1e-12 * scale {
                    return Err(Error::InvalidArgument("matrix is not upper triangular".into()));
                }
            }
        }
        let logs: Vec<f64> = (0..n).map(|i| m.get(i, i).abs().ln()).collect();
        Ok(terms
            .iter()
            .map(|t| t.coeff * t.exps.iter().zip(&logs).map(|(&e, x)| x.powi(e as i32)).product::<f64>())
            .sum())
    }))
}

/// Upper-triangular samples: diagonal `|d|` in `[0.5, 2]` with random sign,
/// entries above it uniform in `[−2, 2]`.
pub fn triangular_sample(n: usize, count: usize, seed: i64) -> Result<Vec<GroupElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
    (0..count)
        .map(|_| {
            let mut entries = vec![0.0; n * n];
            for i in 0..n {
                let d: f64 = rng.gen_range(0.5..=2.0);
                entries[i * n + i] = if rng.gen_bool(0.5) { d } else { -d };
                for j in i + 1..n {
                    entries[i * n + j] = rng.gen_range(-2.0..=2.0);
                }
            }
            GlMatrix::new(n, entries).map(GroupElement::Gl)
        })
        .collect()
}

/// Coefficients (constant term first) of the degree-`≤ m` interpolant
/// through `values[0..=m]` at the nodes `0, 1, .., m`.
pub fn newton_fit(values: &[Rational]) -> Vec<Rational> {
    let m = values.len();
    // forward differences Δ^j f(0)
    let mut diffs = Vec::with_capacity(m);
    let mut row = values.to_vec();
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // Σ Δ^j f(0) · x(x−1)⋯(x−j+1)/j!
    let mut coeffs = vec![Rational::zero(); m];
    let mut falling = vec![Rational::one()];
    let mut factorial = Rational::one();
    for (j, d) in diffs.iter().enumerate() {
        if j > 0 {
            let shift = Rational::from_integer(j as i64 - 1);
            let mut next = vec![Rational::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * &shift);
            }
            falling = next;
            factorial = &factorial * &Rational::from_integer(j as i64);
        }
        let w = d / &factorial;
        for (i, c) in falling.iter().enumerate() {
            coeffs[i] = &coeffs[i] + &(c * &w);
        }
    }
    coeffs
}

pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
}

/// Rationals `p/q` with `|p| <= bound`, `1 <= q <= bound`, by denominator,
/// then absolute numerator, positive first.
pub fn rational_grid(bound: u64) -> Vec<Rational> {
    let b = bound as i64;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for q in 1..=b {
        for p in 0..=b {
            for s in [p, -p] {
                let x = Rational::new(s, q);
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Fits the degree-`≤ m` interpolant on `0..=m` and compares it with `f` on
/// [`rational_grid`]; the report's `values` carry the coefficients.
pub fn rational_fit_check(f: &GroupFunction, m: usize, denom_bound: u64) -> Result<CheckReport> {
    if f.spec() != &GroupSpec::RationalAdditive {
        return Err(Error::SpecMismatch { expected: "rational".into(), found: f.spec().to_string() });
    }
    if denom_bound == 0 {
        return Err(Error::InvalidArgument("denominator bound must be positive".into()));
    }
    let nodes: Vec<Rational> = (0..=m as i64)
        .map(|i| f.eval_exact(&GroupElement::Rational(Rational::from_integer(i))))
        .collect::<Result<_>>()?;
    let coeffs = newton_fit(&nodes);
    let grid = rational_grid(denom_bound);
    let mut witnesses = Vec::new();
    for x in &grid {
        let g = GroupElement::Rational(x.clone());
        let residual = &f.eval_exact(&g)? - &eval_poly(&coeffs, x);
        if !residual.is_zero() && witnesses.len() < crate::calculus::DEFAULT_WITNESS_CAP {
            witnesses.push(Witness { steps: Vec::new(), base: g, residual: Scalar::Exact(residual) });
        }
    }
    let mut report = CheckReport::new(GroupSpec::RationalAdditive, Verdict::from_bool(witnesses.is_empty()));
    report.witnesses = witnesses;
    report.params.degree = Some(m as u64);
    report.params.coeff_bound = Some(denom_bound);
    report.count("points", grid.len() as u64);
    report.values = coeffs.into_iter().map(Scalar::Exact).collect();
    Ok(report)
}

/// One term `coeff · x₁^{e₁} ⋯ x_d^{e_d}` of an exact polynomial.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactTerm {
    pub coeff: Rational,
    pub exps: Vec<u32>,
}

/// Classical polynomial on ℤ^d or ℚ.
pub fn classical_polynomial(spec: &GroupSpec, terms: Vec<ExactTerm>) -> Result<GroupFunction> {
    let vars = match spec {
        GroupSpec::IntVector { dim } => *dim,
        GroupSpec::RationalAdditive => 1,
        _ => return Err(Error::Unsupported(format!("coefficient tables need int:d or rational, not {spec}"))),
    };
    if let Some(t) = terms.iter().find(|t| t.exps.len() != vars) {
        return Err(Error::Dimension(format!("term needs {vars} exponents, got {}", t.exps.len())));
    }
    let label = terms
        .iter()
        .map(|t| format!("{}@{}", t.coeff, t.exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(";");
    Ok(GroupFunction::exact(spec.clone(), format!("poly:{label}"), move |g| {
        let xs: Vec<Rational> = match g {
            GroupElement::IntVector(v) => v.iter().map(|&x| Rational::from_integer(x)).collect(),
            GroupElement::Rational(x) => vec![x.clone()],
            _ => unreachable!("membership is checked before evaluation"),
        };
        Ok(terms.iter().map(|t| t.exps.iter().zip(&xs).fold(t.coeff.clone(), |acc, (&e, x)| &acc * &x.pow(e))).sum())
    }))
}

/// Parses `c@e1,e2;c@..` with rational coefficients.
pub fn parse_exact_terms(s: &str) -> Result<Vec<ExactTerm>> {
    s.split(';')
        .map(|t| {
            let (c, e) = t.split_once('@').ok_or_else(|| Error::Parse(format!("term `{t}` needs `coeff@exps`")))?;
            let coeff = c.trim().parse::<Rational>().map_err(|e| Error::Parse(e.to_string()))?;
            let exps = e
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent `{x}`"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(ExactTerm { coeff, exps })
        })
        .collect()
}

/// Finite table of values with a default elsewhere.
pub fn value_table(
    spec: &GroupSpec,
    entries: Vec<(GroupElement, Rational)>,
    default: Rational,
) -> Result<GroupFunction> {
    let mut map = std::collections::HashMap::new();
    for (g, v) in entries {
        spec.ensure_contains(&g)?;
        if map.insert(g.clone(), v).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate table entry {}", spec.format_element(&g))));
        }
    }
    let label = format!("table[{} entries, default {default}]", map.len());
    Ok(GroupFunction::exact(spec.clone(), label, move |g| Ok(map.get(g).cloned().unwrap_or_else(|| default.clone()))))
}

/// Exact builtins, used wherever "every registry function" is quantified.
pub const EXACT_BUILTINS: &[&str] = &["heisenberg", "freeproduct", "infgen"];

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))).collect()
}

/// `c@e1,e2,..;c@..` into terms.
fn parse_terms(s: &str, n: usize) -> Result<Vec<FloatTerm>> {
    s.split(';')
        .map(|t| {
            let (c, e) = t.split_once('@').ok_or_else(|| Error::Parse(format!("term `{t}` needs `coeff@exps`")))?;
            let coeff = c.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            let exps = e
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent `{x}`"))))
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != n {
                return Err(Error::Dimension(format!("term `{t}` needs {n} exponents")));
            }
            Ok(FloatTerm { coeff, exps })
        })
        .collect()
}

/// Resolves a registry name:
/// `heisenberg`, `freeproduct[:factorial|:geometric:<base>]`, `infgen`,
/// `gl-demo:<n>:<c0,c1,..>`, `tri-demo:<n>[:<c@e1,..;..>]`.
///
/// `tri-demo:<n>` without a table is `log|a₁₁| ⋯ log|a_nn|`.
pub fn builtin(name: &str) -> Result<GroupFunction> {
    let parts: Vec<&str> = name.splitn(3, ':').collect();
    let size = |s: &str| -> Result<usize> {
        s.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| Error::Parse(format!("bad matrix size `{s}`")))
    };
    match parts.as_slice() {
        ["heisenberg"] => Ok(heisenberg_example()),
        ["infgen"] => Ok(infgen_counterexample()),
        ["freeproduct"] | ["freeproduct", "factorial"] => Ok(freeproduct_counterexample(AlphaSequence::Factorial)),
        ["freeproduct", "geometric", base] => {
            let b = base.parse::<Rational>().map_err(|e| Error::Parse(e.to_string()))?;
            Ok(freeproduct_counterexample(AlphaSequence::Geometric(b)))
        }
        ["gl-demo", n, coeffs] => gl_polynomial_demo(size(n)?, parse_f64_list(coeffs)?),
        ["tri-demo", n] => {
            let n = size(n)?;
            triangular_polynomial_demo(n, vec![FloatTerm { coeff: 1.0, exps: vec![1; n] }])
        }
        ["tri-demo", n, table] => {
            let n = size(n)?;
            triangular_polynomial_demo(n, parse_terms(table, n)?)
        }
        _ => Err(Error::Parse(format!("unknown builtin `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_polynomial, check_semipolynomial, difference_at, CheckOptions};
    use crate::group::HeisenbergTriple;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn heis(a: i64, b: i64, c: i64) -> GroupElement {
        GroupElement::Heisenberg(HeisenbergTriple::from_ints(a, b, c))
    }

    #[test]
    fn heisenberg_values_and_commutator() {
        let f = heisenberg_example();
        assert_eq!(f.eval_exact(&heis(0, 0, 0)).unwrap(), q(0));
        assert_eq!(f.eval_exact(&heis(1, 1, 1)).unwrap(), q(-1));
        let spec = GroupSpec::HeisenbergRational;
        let pts = spec.sample(6, 3).unwrap();
        for p in &pts {
            for h in &pts {
                let (GroupElement::Heisenberg(pp), GroupElement::Heisenberg(hh)) = (p, h) else { unreachable!() };
                let want = &(&pp.a * &hh.b) - &(&hh.a * &pp.b);
                for base in &pts {
                    let got = difference_at(&f, &[p.clone(), h.clone()], base).unwrap();
                    assert_eq!(got, Scalar::Exact(want.clone()));
                }
            }
        }
    }

    #[test]
    fn alpha_and_blocks() {
        assert_eq!(AlphaSequence::Factorial.get(0).unwrap(), q(1));
        assert_eq!(AlphaSequence::Factorial.get(5).unwrap(), q(120));
        assert_eq!(AlphaSequence::Geometric(q(3)).get(4).unwrap(), q(81));
        assert!(AlphaSequence::Explicit(vec![q(1)]).get(1).is_err());
        assert_eq!((0..5).map(BlockIndex::n).collect::<Vec<_>>(), vec![0, 1, 3, 6, 10]);
        for k in 0..6 {
            assert_eq!(BlockIndex::n(k + 1) - BlockIndex::n(k), k + 1);
            for i in BlockIndex::block(k) {
                assert_eq!(BlockIndex::block_of(i), k);
            }
        }
    }

    /// Independent reading of the defining rules: reduce the last block
    /// with `f(x b^n) = n f(x b) − (n − 1) f(x)`, where `f(x b)` is `α` of
    /// the number of blocks in `x`.
    fn freeproduct_oracle(alpha: &AlphaSequence, exps: &[i64]) -> Rational {
        match exps.split_last() {
            None => q(0),
            Some((&n, rest)) => {
                let fx = freeproduct_oracle(alpha, rest);
                let fxb = alpha.get(rest.len()).unwrap();
                &(&q(n) * &fxb) - &(&q(n - 1) * &fx)
            }
        }
    }

    #[test]
    fn freeproduct_values() {
        let alpha = AlphaSequence::Factorial;
        let f = freeproduct_counterexample(alpha.clone());
        let spec = GroupSpec::FreeProdZZ2;
        assert_eq!(f.eval_exact(&spec.identity()).unwrap(), q(0));
        for m in -3..=3 {
            let g = spec.parse_element(&format!("b^{m}")).unwrap();
            assert_eq!(f.eval_exact(&g).unwrap(), q(m));
        }
        for g in spec.ball(6, 3).unwrap() {
            let GroupElement::FreeProd(w) = &g else { unreachable!() };
            assert_eq!(f.eval_exact(&g).unwrap(), freeproduct_oracle(&alpha, &b_exponents(w)));
        }
        // stripping rules
        let x = spec.parse_element("b^2 a b^-1").unwrap();
        let a = spec.parse_element("a").unwrap();
        let fx = f.eval_exact(&x).unwrap();
        assert_eq!(f.eval_exact(&a.mul(&x).unwrap()).unwrap(), fx);
        assert_eq!(f.eval_exact(&x.mul(&a).unwrap()).unwrap(), fx);
        // along ab the values are α shifted by one
        let ab = spec.parse_element("a b").unwrap();
        for k in 1..8 {
            assert_eq!(f.eval_exact(&ab.pow(k).unwrap()).unwrap(), alpha.get(k as usize - 1).unwrap());
        }
    }

    #[test]
    fn freeproduct_second_differences_vanish() {
        let f = freeproduct_counterexample(AlphaSequence::Factorial);
        let spec = GroupSpec::FreeProdZZ2;
        let steps = spec.parse_element_list("a; b").unwrap();
        let bases = spec.ball(5, 3).unwrap();
        assert!(check_semipolynomial(&f, 1, &steps, &bases, &CheckOptions::default()).unwrap().passed());
        // f(x b²) = 2 f(x b) − f(x) and f(x a) = f(x)
        let b = spec.parse_element("b").unwrap();
        let a = spec.parse_element("a").unwrap();
        for x in &bases {
            let xb = x.mul(&b).unwrap();
            let lhs = f.eval_exact(&xb.mul(&b).unwrap()).unwrap();
            let rhs = &(&q(2) * &f.eval_exact(&xb).unwrap()) - &f.eval_exact(x).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(f.eval_exact(&x.mul(&a).unwrap()).unwrap(), f.eval_exact(x).unwrap());
        }
    }

    #[test]
    fn infgen_values_and_blocks() {
        let f = infgen_counterexample();
        let spec = GroupSpec::IntDirectSum;
        assert_eq!(f.eval_exact(&spec.identity()).unwrap(), q(0));
        assert_eq!(f.eval_exact(&spec.parse_element("{1:5}").unwrap()).unwrap(), q(5));
        assert_eq!(f.eval_exact(&spec.parse_element("{2:2, 3:3}").unwrap()).unwrap(), q(6));
        assert_eq!(f.eval_exact(&spec.parse_element("{2:2}").unwrap()).unwrap(), q(0));
        assert_eq!(f.eval_exact(&spec.parse_element("{1:1, 4:2, 5:3, 6:-1}").unwrap()).unwrap(), q(-5));
        let bases = spec.sample(20, 5).unwrap();
        for i in 1..=10 {
            let e = vec![unit_direct_sum(i)];
            assert!(check_semipolynomial(&f, 1, &e, &bases, &CheckOptions::default()).unwrap().passed());
        }
        for k in 0..=3 {
            let steps = infgen_block_steps(k);
            for base in &bases {
                assert_eq!(difference_at(&f, &steps, base).unwrap(), Scalar::Exact(q(1)));
            }
        }
    }

    #[test]
    fn gl_demo_behaviour() {
        let spec = GroupSpec::GLFloat { n: 2 };
        let pts = spec.sample(20, 7).unwrap();
        let opts = CheckOptions::with_tolerance(1e-6);
        let c = gl_polynomial_demo(2, vec![2.5]).unwrap();
        assert!(check_polynomial(&c, 0, &pts[..4], &pts, &opts).unwrap().passed());
        let log = gl_polynomial_demo(2, vec![0.0, 1.0]).unwrap();
        for h in &pts[..5] {
            let GroupElement::Gl(hm) = h else { unreachable!() };
            for g in &pts {
                let d = difference_at(&log, std::slice::from_ref(h), g).unwrap().to_f64();
                assert!((d - hm.det().abs().ln()).abs() < 1e-9);
            }
        }
        let cubic = gl_polynomial_demo(2, vec![1.0, -0.5, 0.25, 1.0]).unwrap();
        assert!(check_polynomial(&cubic, 3, &pts[..6], &pts, &opts).unwrap().passed());
        assert!(!check_polynomial(&cubic, 2, &pts[..6], &pts, &opts).unwrap().passed());
        assert!(gl_polynomial_demo(2, vec![]).is_err());
        assert!(gl_polynomial_demo(2, vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn triangular_demo_behaviour() {
        let pts = triangular_sample(2, 12, 4).unwrap();
        let opts = CheckOptions::with_tolerance(1e-6);
        let xy = builtin("tri-demo:2").unwrap();
        assert!(check_polynomial(&xy, 2, &pts[..5], &pts, &opts).unwrap().passed());
        assert!(!check_polynomial(&xy, 1, &pts[..5], &pts, &opts).unwrap().passed());
        let one = builtin("tri-demo:2:1@0,0").unwrap();
        assert!(check_polynomial(&one, 0, &pts[..5], &pts, &opts).unwrap().passed());
        let full = GroupElement::Gl(GlMatrix::new(2, vec![1.0, 0.0, 1.0, 1.0]).unwrap());
        assert!(xy.eval(&full).is_err());
    }

    #[test]
    fn newton_fit_examples() {
        let poly = |x: &Rational| &(x * x) - &(x * &Rational::new(1, 2));
        let f = GroupFunction::exact(GroupSpec::RationalAdditive, "x^2-x/2", move |g| match g {
            GroupElement::Rational(x) => Ok(poly(x)),
            _ => unreachable!(),
        });
        let r = rational_fit_check(&f, 2, 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.values, vec![Scalar::Exact(q(0)), Scalar::Exact(Rational::new(-1, 2)), Scalar::Exact(q(1))]);

        let indicator = GroupFunction::exact(GroupSpec::RationalAdditive, "1_Z", |g| match g {
            GroupElement::Rational(x) => Ok(if x.is_integer() { q(1) } else { q(0) }),
            _ => unreachable!(),
        });
        let r = rational_fit_check(&indicator, 0, 6).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].base, GroupElement::Rational(Rational::new(1, 2)));

        let c = GroupFunction::constant(GroupSpec::RationalAdditive, q(7));
        assert!(rational_fit_check(&c, 0, 6).unwrap().passed());
    }

    #[test]
    fn newton_fit_recovers_random_polynomials() {
        // oracle: evaluate the known coefficients directly
        let coeffs = vec![Rational::new(3, 4), q(-2), Rational::new(1, 3), q(5)];
        let values: Vec<Rational> = (0..4).map(|i| eval_poly(&coeffs, &q(i))).collect();
        assert_eq!(newton_fit(&values), coeffs);
    }

    #[test]
    fn classical_polynomials_and_tables() {
        let spec = GroupSpec::IntVector { dim: 2 };
        let f = classical_polynomial(&spec, parse_exact_terms("1@2,1;-1/2@0,1").unwrap()).unwrap();
        assert_eq!(f.eval_exact(&GroupElement::IntVector(vec![3, 2])).unwrap(), q(17));
        assert!(classical_polynomial(&spec, parse_exact_terms("1@2").unwrap()).is_err());
        assert!(classical_polynomial(&GroupSpec::FreeProdZZ2, vec![]).is_err());
        let r = classical_polynomial(&GroupSpec::RationalAdditive, parse_exact_terms("2@3").unwrap()).unwrap();
        assert_eq!(r.eval_exact(&GroupElement::Rational(Rational::new(1, 2))).unwrap(), Rational::new(1, 4));
        let t = value_table(&spec, vec![(GroupElement::IntVector(vec![1, 0]), q(4))], q(-1)).unwrap();
        assert_eq!(t.eval_exact(&GroupElement::IntVector(vec![1, 0])).unwrap(), q(4));
        assert_eq!(t.eval_exact(&GroupElement::IntVector(vec![0, 0])).unwrap(), q(-1));
        let dup = vec![(GroupElement::IntVector(vec![1, 0]), q(4)), (GroupElement::IntVector(vec![1, 0]), q(5))];
        assert!(value_table(&spec, dup, q(0)).is_err());
    }

    #[test]
    fn registry_resolves_names() {
        for name in EXACT_BUILTINS {
            assert!(builtin(name).unwrap().spec().is_exact());
        }
        assert_eq!(builtin("freeproduct:geometric:2").unwrap().label(), "freeproduct:geometric:2");
        assert_eq!(builtin("gl-demo:3:0,1").unwrap().spec(), &GroupSpec::GLFloat { n: 3 });
        for bad in ["nope", "gl-demo:0:1", "gl-demo:2", "tri-demo:2:1@1", "freeproduct:geometric:x"] {
            assert!(builtin(bad).is_err(), "{bad}");
        }
    }
}
