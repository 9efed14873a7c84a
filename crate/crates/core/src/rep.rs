//! Finite-dimensional representations given by generator matrices.
//!
//! Write `δ(g) = π(g) − I`. The fixed space, the semipolynomial spaces
//! `⋂_h ker δ(h)^{n+1}` and the polynomial spaces
//! `⋂ ker δ(h_{n+1})⋯δ(h_1)` are computed with exact elimination.
//!
//! The polynomial spaces are exact: `δ(gh) = δ(g)δ(h) + δ(g) + δ(h)` makes
//! the span `𝒜` of all `δ(w)` an algebra generated by the `δ` of the
//! generators and their inverses, so `(P_n)_π = ⋂ ker 𝒜^{n+1}`. The
//! semipolynomial spaces are intersected over a growing word ball until
//! two consecutive lengths agree; that stopping rule is a heuristic and the
//! length used is always reported.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, Syllable};
use crate::linalg::{EchelonBasis, Matrix};
use crate::rational::Rational;
use crate::report::{CheckReport, Finding, Verdict, Witness};
use crate::scalar::Scalar;

/// Default word length bound for the ball-based computations.
pub const DEFAULT_MAX_WORD_LENGTH: usize = 4;

/// A representation of the free group on `labels`, given by invertible
/// rational matrices, optionally with relations that must map to `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    dim: usize,
    labels: Vec<String>,
    generators: Vec<Matrix>,
    inverses: Vec<Matrix>,
    relations: Vec<GroupElement>,
}

impl MatrixRep {
    /// Validates shapes, invertibility and every relation.
    pub fn new(dim: usize, generators: Vec<(String, Matrix)>, relations: &[&str]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("representation dimension must be >= 1".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidArgument("representation needs at least one generator".into()));
        }
        let labels: Vec<String> = generators.iter().map(|(l, _)| l.clone()).collect();
        GroupSpec::FreeGroup { labels: labels.clone() }.validate()?;
        let mut mats = Vec::new();
        let mut inverses = Vec::new();
        for (label, m) in generators {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!("generator `{label}` is not {dim}x{dim}")));
            }
            if m.determinant()?.is_zero() {
                return Err(Error::InvalidArgument(format!("generator `{label}` is singular")));
            }
            inverses.push(m.inverse()?);
            mats.push(m);
        }
        let mut rep = MatrixRep { dim, labels, generators: mats, inverses, relations: Vec::new() };
        let spec = rep.word_group();
        for r in relations {
            let w = spec.parse_element(r)?;
            if rep.eval_word(&w)? != Matrix::identity(dim) {
                return Err(Error::Relation(r.to_string()));
            }
            rep.relations.push(w);
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn relations(&self) -> &[GroupElement] {
        &self.relations
    }

    /// The free group on the generator labels; words in it map through π.
    pub fn word_group(&self) -> GroupSpec {
        GroupSpec::FreeGroup { labels: self.labels.clone() }
    }

    /// Generators followed by their inverses.
    fn letters(&self) -> impl Iterator<Item = (GroupElement, &Matrix)> {
        let n = self.generators.len() as u32;
        (0..n).flat_map(move |g| {
            [
                (GroupElement::Word(vec![Syllable { generator: g, exp: 1 }]), &self.generators[g as usize]),
                (GroupElement::Word(vec![Syllable { generator: g, exp: -1 }]), &self.inverses[g as usize]),
            ]
        })
    }

    pub fn eval_word(&self, w: &GroupElement) -> Result<Matrix> {
        let GroupElement::Word(syllables) = w else {
            return Err(Error::SpecMismatch { expected: self.word_group().to_string(), found: format!("{w:?}") });
        };
        let mut acc = Matrix::identity(self.dim);
        for s in syllables {
            let g = s.generator as usize;
            if g >= self.generators.len() {
                return Err(Error::InvalidArgument(format!("word uses unknown generator index {g}")));
            }
            let m = if s.exp > 0 { &self.generators[g] } else { &self.inverses[g] };
            for _ in 0..s.exp.unsigned_abs() {
                acc = acc.mul(m)?;
            }
        }
        Ok(acc)
    }

    /// Distinct images of words, grouped by the word length at which each
    /// matrix first appears: `layers[L]` holds images of length exactly `L`.
    pub fn word_layers(&self, max_len: usize) -> Result<Vec<Vec<(GroupElement, Matrix)>>> {
        let id = Matrix::identity(self.dim);
        let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
        let mut layers = vec![vec![(self.word_group().identity(), id)]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, m) in layers.last().expect("nonempty") {
                for (letter, lm) in self.letters() {
                    let prod = m.mul(lm)?;
                    if seen.insert(prod.clone()) {
                        next.push((w.mul(&letter)?, prod));
                    }
                }
            }
            layers.push(next);
        }
        Ok(layers)
    }

    /// Parses the line-oriented rep format:
    ///
    /// ```text
    /// # comment
    /// dim 2
    /// gen x
    /// 1 1
    /// 0 1
    /// rel x^3 y^-1     (optional, any number)
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines =
            text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).peekable();
        let mut dim = None;
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        while let Some(line) = lines.next() {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match key {
                "dim" => {
                    dim = Some(rest.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad dim `{rest}`")))?);
                }
                "gen" => {
                    let d = dim.ok_or_else(|| Error::Parse("`dim` must precede `gen`".into()))?;
                    let mut rows = Vec::with_capacity(d);
                    for _ in 0..d {
                        let row =
                            lines.next().ok_or_else(|| Error::Parse(format!("generator `{rest}` is truncated")))?;
                        let entries = row
                            .split_whitespace()
                            .map(|t| t.parse::<Rational>().map_err(|e| Error::Parse(e.to_string())))
                            .collect::<Result<Vec<_>>>()?;
                        if entries.len() != d {
                            return Err(Error::Dimension(format!("row `{row}` of `{rest}` needs {d} entries")));
                        }
                        rows.push(entries);
                    }
                    gens.push((rest.trim().to_string(), Matrix::from_rows(rows)?));
                }
                "rel" => rels.push(rest.trim().to_string()),
                _ => return Err(Error::Parse(format!("unexpected line `{line}`"))),
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("missing `dim`".into()))?;
        let rel_refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        MatrixRep::new(dim, gens, &rel_refs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for (l, m) in self.labels.iter().zip(&self.generators) {
            let _ = writeln!(out, "gen {l}");
            for row in m.row_vecs() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        let spec = self.word_group();
        for r in &self.relations {
            let _ = writeln!(out, "rel {}", spec.format_element(r));
        }
        out
    }
}

/// A linear subspace of `Q^dim`, stored as a reduced echelon basis so that
/// equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: EchelonBasis,
}

impl Subspace {
    pub fn full(dim: usize) -> Self {
        let mut basis = EchelonBasis::new(dim);
        for i in 0..dim {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            basis.insert(&v);
        }
        Subspace { basis }
    }

    pub fn zero(dim: usize) -> Self {
        Subspace { basis: EchelonBasis::new(dim) }
    }

    pub fn span(dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let mut basis = EchelonBasis::new(dim);
        for v in vectors {
            basis.insert(v);
        }
        Subspace { basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.vector_len()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// Basis vectors, in reduced echelon form.
    pub fn vectors(&self) -> &[Vec<Rational>] {
        self.basis.rows()
    }

    /// `dim × k` matrix whose columns are the basis (reduced column echelon form).
    pub fn basis_matrix(&self) -> Matrix {
        let n = self.ambient_dim();
        let k = self.dim();
        let mut m = Matrix::zeros(n, k);
        for (j, v) in self.vectors().iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.basis.contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.vectors().iter().all(|v| other.contains(v))
    }

    /// `self ∩ ker m`.
    pub fn intersect_kernel(&self, m: &Matrix) -> Result<Subspace> {
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        let b = self.basis_matrix();
        let coeffs = m.mul(&b)?.nullspace();
        let vectors: Vec<Vec<Rational>> = coeffs.iter().map(|c| b.mul_vec(c)).collect::<Result<_>>()?;
        Ok(Subspace::span(self.ambient_dim(), &vectors))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        // other = ker(annihilator), annihilator rows span other^⊥
        let n = self.ambient_dim();
        let ann =
            Matrix::from_rows(other.basis_matrix().transpose().nullspace()).unwrap_or_else(|_| Matrix::zeros(0, n));
        if ann.rows() == 0 {
            return Ok(self.clone());
        }
        self.intersect_kernel(&ann)
    }

    /// Rows of the echelon basis as `"p/q"` strings.
    pub fn to_rows(&self) -> Vec<Vec<String>> {
        self.vectors().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// The linear span of matrices, with products computed on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorAlgebra {
    dim: usize,
    basis: Vec<Matrix>,
}

fn matrix_span(dim: usize, mats: impl IntoIterator<Item = Matrix>) -> Vec<Matrix> {
    let mut span = EchelonBasis::new(dim * dim);
    for m in mats {
        span.insert(m.as_slice());
    }
    span.rows()
        .iter()
        .map(|r| Matrix::from_rows(r.chunks(dim).map(<[Rational]>::to_vec).collect()).expect("square chunks"))
        .collect()
}

impl OperatorAlgebra {
    pub fn from_span(dim: usize, mats: impl IntoIterator<Item = Matrix>) -> Self {
        OperatorAlgebra { dim, basis: matrix_span(dim, mats) }
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Span of all `k`-fold products of elements (`k >= 1`).
    pub fn power(&self, k: usize) -> Result<Vec<Matrix>> {
        assert!(k >= 1, "power index starts at 1");
        let mut current = self.basis.clone();
        for _ in 1..k {
            if current.is_empty() {
                break;
            }
            let mut prods = Vec::new();
            for x in &current {
                for y in &self.basis {
                    prods.push(x.mul(y)?);
                }
            }
            current = matrix_span(self.dim, prods);
        }
        Ok(current)
    }

    /// Least `N >= 1` with `𝒜^N = 0`, `0` for the zero algebra, `None` if
    /// the algebra is not nilpotent.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        if self.is_zero() {
            return Ok(Some(0));
        }
        let mut current = self.basis.clone();
        // a nilpotent algebra of n×n matrices has 𝒜^n = 0
        for n in 1..=self.dim + 1 {
            if current.is_empty() {
                return Ok(Some(n - 1));
            }
            let mut prods = Vec::new();
            for x in &current {
                for y in &self.basis {
                    prods.push(x.mul(y)?);
                }
            }
            current = matrix_span(self.dim, prods);
        }
        Ok(None)
    }

    /// Restriction to an invariant subspace, in the coordinates of its
    /// echelon basis.
    pub fn restrict(&self, space: &Subspace) -> Result<OperatorAlgebra> {
        let k = space.dim();
        let b = space.basis_matrix();
        let pivots: Vec<usize> = space
            .vectors()
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect();
        let mut restricted = Vec::new();
        for t in &self.basis {
            let tb = t.mul(&b)?;
            for j in 0..k {
                if !space.contains(&tb.column(j)) {
                    return Err(Error::InvalidArgument("subspace is not invariant".into()));
                }
            }
            // the echelon basis has e_j in its pivot rows, so coordinates
            // can be read off directly
            let mut r = Matrix::zeros(k, k);
            for (i, &p) in pivots.iter().enumerate() {
                for j in 0..k {
                    r[(i, j)] = tb[(p, j)].clone();
                }
            }
            restricted.push(r);
        }
        Ok(OperatorAlgebra::from_span(k, restricted))
    }
}

fn delta_of(m: &Matrix) -> Matrix {
    m.sub(&Matrix::identity(m.rows())).expect("square")
}

/// `⋂ ker(π(g) − I)` over generators and inverses.
pub fn fixed_subspace(rep: &MatrixRep) -> Result<Subspace> {
    let mut space = Subspace::full(rep.dim);
    for (_, m) in rep.letters() {
        space = space.intersect_kernel(&delta_of(m))?;
    }
    Ok(space)
}

/// Closes `span{δ(g), δ(g⁻¹)}` under products until the dimension is
/// stable; the result is `span{δ(w)}` over all words.
pub fn delta_algebra(rep: &MatrixRep) -> Result<OperatorAlgebra> {
    let n = rep.dim;
    let mut span = EchelonBasis::new(n * n);
    let mut elems: Vec<Matrix> = Vec::new();
    for (_, m) in rep.letters() {
        let d = delta_of(m);
        if span.insert(d.as_slice()) {
            elems.push(d);
        }
    }
    let mut frontier = elems.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for x in &frontier {
            for y in elems.clone().iter() {
                for p in [x.mul(y)?, y.mul(x)?] {
                    if span.insert(p.as_slice()) {
                        elems.push(p.clone());
                        fresh.push(p);
                    }
                }
            }
        }
        frontier = fresh;
    }
    Ok(OperatorAlgebra::from_span(n, elems))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpResult {
    pub space: Subspace,
    /// Word length at which the intersection was taken.
    pub used_length: usize,
    /// Two consecutive lengths agreed (or the image group was exhausted).
    pub stabilized: bool,
}

/// `⋂ ker δ(w)^{n+1}` over words of growing length `L = 1, 2, ..` until two
/// consecutive lengths agree or `max_word_length` is reached.
pub fn sp_subspace(rep: &MatrixRep, n: usize, max_word_length: usize) -> Result<SpResult> {
    if max_word_length == 0 {
        return Err(Error::InvalidArgument("max_word_length must be positive".into()));
    }
    let layers = rep.word_layers(max_word_length)?;
    let mut space = Subspace::full(rep.dim);
    let mut previous: Option<Subspace> = None;
    for (len, layer) in layers.iter().enumerate().skip(1) {
        for (_, m) in layer {
            space = space.intersect_kernel(&delta_of(m).pow(n as u32 + 1)?)?;
        }
        // an empty layer means every image has been seen: the result is exact
        if layer.is_empty() || previous.as_ref() == Some(&space) {
            return Ok(SpResult { space, used_length: len, stabilized: true });
        }
        previous = Some(space.clone());
    }
    Ok(SpResult { space, used_length: max_word_length, stabilized: false })
}

/// `⋂ ker 𝒜^{n+1}`, exact.
pub fn p_subspace(rep: &MatrixRep, n: usize) -> Result<Subspace> {
    let algebra = delta_algebra(rep)?;
    let mut space = Subspace::full(rep.dim);
    for t in algebra.power(n + 1)? {
        space = space.intersect_kernel(&t)?;
    }
    Ok(space)
}

/// π-invariance under every generator and inverse.
pub fn invariance_check(rep: &MatrixRep, space: &Subspace) -> Result<bool> {
    if space.ambient_dim() != rep.dim {
        return Err(Error::Dimension("subspace lives in a different space".into()));
    }
    for (_, m) in rep.letters() {
        for v in space.vectors() {
            if !space.contains(&m.mul_vec(v)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn first_nonzero(m: &Matrix) -> Rational {
    m.as_slice().iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Rational::zero)
}

fn rep_report(rep: &MatrixRep, verdict: Verdict, max_word_length: Option<usize>) -> CheckReport {
    let mut r = CheckReport::new(rep.word_group(), verdict);
    r.params.max_word_length = max_word_length.map(|l| l as u64);
    r
}

/// Compares `(SP)_π` and `(P)_π` (both at `n = dim`, where the increasing
/// unions have stabilised) and bounds the nilpotency index of `𝒜` on
/// `(SP)_π` by its dimension.
pub fn verify_sp_equals_p(rep: &MatrixRep, max_word_length: usize) -> Result<CheckReport> {
    let dim = rep.dim;
    let mut sp_chain = Vec::new();
    let mut p_chain = Vec::new();
    for n in 0..=dim {
        sp_chain.push(sp_subspace(rep, n, max_word_length)?);
        p_chain.push(p_subspace(rep, n)?);
    }
    let sp = sp_chain.last().expect("nonempty").clone();
    let p = p_chain.last().expect("nonempty").clone();
    let algebra = delta_algebra(rep)?;
    let index = algebra.restrict(&sp.space)?.nilpotency_index()?;

    let mut witnesses = Vec::new();
    let id = rep.word_group().identity();
    if sp.space != p {
        let gap = sp.space.dim() as i64 - p.dim() as i64;
        witnesses.push(Witness { steps: Vec::new(), base: id.clone(), residual: Scalar::Exact(gap.into()) });
    }
    let index_ok = index.is_some_and(|i| i <= sp.space.dim());
    if !index_ok {
        let shown = index.map_or(-1, |i| i as i64);
        witnesses.push(Witness { steps: Vec::new(), base: id, residual: Scalar::Exact(shown.into()) });
    }
    let mut report = rep_report(rep, Verdict::from_bool(witnesses.is_empty()), Some(sp.used_length));
    report.witnesses = witnesses;
    report.params.degree = Some(dim as u64);
    report.count("sp_dim", sp.space.dim() as u64);
    report.count("p_dim", p.dim() as u64);
    report.count("algebra_dim", algebra.dimension() as u64);
    if let Some(i) = index {
        report.count("nilpotency_index", i as u64);
    }
    if !sp.stabilized {
        report.note("semipolynomial intersection hit the word-length bound before stabilising");
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct OneRepClass {
    /// `δ(w)^{n+1} = 0` on the word ball.
    pub is_1n: bool,
    /// `𝒜^{n+1} = 0`, exact.
    pub is_1n_plus: bool,
    /// Every `δ(w)` on the word ball is nilpotent.
    pub is_one_rep: bool,
    pub used_length: usize,
}

pub fn classify_one_rep(rep: &MatrixRep, n: usize, max_word_length: usize) -> Result<OneRepClass> {
    let is_1n_plus = delta_algebra(rep)?.power(n + 1)?.is_empty();
    let mut is_1n = true;
    let mut is_one_rep = true;
    for layer in rep.word_layers(max_word_length)? {
        for (_, m) in &layer {
            let d = delta_of(m);
            is_1n &= d.pow(n as u32 + 1)?.is_zero();
            is_one_rep &= d.pow(rep.dim as u32)?.is_zero();
        }
    }
    Ok(OneRepClass { is_1n, is_1n_plus, is_one_rep, used_length: max_word_length })
}

/// Under the hypothesis `δ(w)² = 0` on the word ball, checks
/// `δ_g δ_h + δ_h δ_g = 0` on the ball and on a basis of `𝒜`, and that
/// every triple product of basis elements of `𝒜` vanishes.
pub fn verify_anticommutation(rep: &MatrixRep, max_word_length: usize) -> Result<CheckReport> {
    let words: Vec<(GroupElement, Matrix)> =
        rep.word_layers(max_word_length)?.into_iter().flatten().map(|(w, m)| (w, delta_of(&m))).collect();
    for (w, d) in &words {
        let sq = d.mul(d)?;
        if !sq.is_zero() {
            let mut report =
                rep_report(rep, Verdict::Fail, Some(max_word_length)).with_finding(Finding::HypothesisFails);
            report.witnesses.push(Witness {
                steps: vec![w.clone(), w.clone()],
                base: rep.word_group().identity(),
                residual: Scalar::Exact(first_nonzero(&sq)),
            });
            report.note("hypothesis fails: some δ(w)² is nonzero");
            return Ok(report);
        }
    }
    let id = rep.word_group().identity();
    let mut witnesses = Vec::new();
    for (i, (g, dg)) in words.iter().enumerate() {
        for (h, dh) in &words[i + 1..] {
            let s = dg.mul(dh)?.add(&dh.mul(dg)?)?;
            if !s.is_zero() && witnesses.len() < crate::calculus::DEFAULT_WITNESS_CAP {
                witnesses.push(Witness {
                    steps: vec![g.clone(), h.clone()],
                    base: id.clone(),
                    residual: Scalar::Exact(first_nonzero(&s)),
                });
            }
        }
    }
    let algebra = delta_algebra(rep)?;
    let basis = algebra.basis();
    let mut anti_ok = true;
    for a in basis {
        for b in basis {
            anti_ok &= a.mul(b)?.add(&b.mul(a)?)?.is_zero();
        }
    }
    let triple_zero = algebra.power(3)?.is_empty();
    let mut report =
        rep_report(rep, Verdict::from_bool(witnesses.is_empty() && anti_ok && triple_zero), Some(max_word_length));
    if report.verdict == Verdict::Fail && witnesses.is_empty() {
        witnesses.push(Witness { steps: Vec::new(), base: id, residual: Scalar::Exact(Rational::one()) });
        report.note("algebra basis fails anticommutation or has a nonzero triple product");
    }
    report.witnesses = witnesses;
    report.count("words", words.len() as u64);
    report.count("algebra_dim", algebra.dimension() as u64);
    Ok(report)
}

/// Sample representations used across tests and the self test.
pub mod examples {
    use super::*;

    fn gens(list: &[(&str, Matrix)]) -> Vec<(String, Matrix)> {
        list.iter().map(|(l, m)| (l.to_string(), m.clone())).collect()
    }

    /// All generators equal to `I`.
    pub fn trivial(dim: usize) -> MatrixRep {
        MatrixRep::new(dim, gens(&[("x", Matrix::identity(dim))]), &[]).expect("valid")
    }

    /// ℤ acting by `[[1,1],[0,1]]`.
    pub fn unipotent_2() -> MatrixRep {
        MatrixRep::new(2, gens(&[("b", Matrix::from_i64(&[&[1, 1], &[0, 1]]))]), &[]).expect("valid")
    }

    /// The 2-dimensional irreducible representation of S₃ over ℚ.
    pub fn s3_irrep() -> MatrixRep {
        MatrixRep::new(
            2,
            gens(&[("r", Matrix::from_i64(&[&[0, -1], &[1, -1]])), ("s", Matrix::from_i64(&[&[0, 1], &[1, 0]]))]),
            &["r^3", "s^2", "s r s r"],
        )
        .expect("valid")
    }

    /// Generators `I + E₁₂`, `I + E₂₃`.
    pub fn unipotent_3() -> MatrixRep {
        let id = Matrix::identity(3);
        MatrixRep::new(
            3,
            gens(&[("x", id.add(&Matrix::unit(3, 0, 1)).unwrap()), ("y", id.add(&Matrix::unit(3, 1, 2)).unwrap())]),
            &[],
        )
        .expect("valid")
    }

    /// Commuting generators `I + E₁₃`, `I + E₂₃` with all `δ² = 0`.
    pub fn square_zero_3() -> MatrixRep {
        let id = Matrix::identity(3);
        MatrixRep::new(
            3,
            gens(&[("u", id.add(&Matrix::unit(3, 0, 2)).unwrap()), ("v", id.add(&Matrix::unit(3, 1, 2)).unwrap())]),
            &["u v u^-1 v^-1"],
        )
        .expect("valid")
    }

    /// Single generator `I + E₁₂ + E₂₃`, whose `δ²` is `E₁₃`.
    pub fn jordan_3() -> MatrixRep {
        let id = Matrix::identity(3);
        let m = id.add(&Matrix::unit(3, 0, 1)).unwrap().add(&Matrix::unit(3, 1, 2)).unwrap();
        MatrixRep::new(3, gens(&[("j", m)]), &[]).expect("valid")
    }

    /// Regular representation of ℤ/n (the shift permutation on `Q^n`).
    pub fn cyclic_regular(n: usize) -> MatrixRep {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[((i + 1) % n, i)] = Rational::one();
        }
        let rel = format!("t^{n}");
        MatrixRep::new(n, gens(&[("t", m)]), &[rel.as_str()]).expect("valid")
    }
}
