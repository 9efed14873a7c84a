//! Concrete groups with canonical normal forms.
//!
//! Every [`GroupElement`] is stored in normal form, so structural equality
//! is group equality and elements can key memo tables directly. The float
//! matrix group is the one exception to exactness and is only used by the
//! demo constructions.

mod enumerate;
mod syntax;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use enumerate::{DIRECT_SUM_WINDOW, GL_SAMPLE_MIN_DET};

/// Determinant threshold below which a float matrix counts as singular.
pub const GL_DET_EPS: f64 = 1e-9;

/// Which group an element lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// ℤ^d under addition.
    IntVector { dim: usize },
    /// ℚ under addition.
    RationalAdditive,
    /// Upper unitriangular 3×3 rational matrices.
    HeisenbergRational,
    /// ℤ * ℤ₂ = ⟨a, b | a² = e⟩.
    FreeProdZZ2,
    /// Finitely supported integer sequences indexed from 1.
    IntDirectSum,
    /// ℤ/nℤ.
    CyclicFinite { modulus: u64 },
    /// Invertible n×n binary64 matrices.
    GLFloat { n: usize },
    /// Free group on the given generator labels.
    FreeGroup { labels: Vec<String> },
}

/// One letter of a ℤ * ℤ₂ word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FpLetter {
    A,
    /// `b^n` with `n != 0`.
    B(i64),
}

/// A maximal block `g^exp` of a free-group word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: u32,
    pub exp: i64,
}

/// Element (a, b, c) of the Heisenberg group, i.e. the matrix
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergTriple {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HeisenbergTriple {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        HeisenbergTriple { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        HeisenbergTriple::new(a.into(), b.into(), c.into())
    }
}

/// Row-major float matrix with `|det| > GL_DET_EPS`.
#[derive(Debug, Clone)]
pub struct GlMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl GlMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("matrix entries must be finite".into()));
        }
        // -0.0 and 0.0 must compare and hash equal
        let entries = entries.into_iter().map(|x| if x == 0.0 { 0.0 } else { x }).collect();
        let m = GlMatrix { n, entries };
        if m.det().abs() <= GL_DET_EPS {
            return Err(Error::Singular(GL_DET_EPS));
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        GlMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs())).unwrap();
            if m[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for k in 0..n {
                    m.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            let p = m[col * n + col];
            det *= p;
            for r in col + 1..n {
                let factor = m[r * n + col] / p;
                for k in col..n {
                    m[r * n + k] -= factor * m[col * n + k];
                }
            }
        }
        det
    }

    fn mul(&self, other: &GlMatrix) -> Result<GlMatrix> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        GlMatrix::new(n, out)
    }

    fn inverse(&self) -> Result<GlMatrix> {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut inv = GlMatrix::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs())).unwrap();
            if m[pivot * n + col] == 0.0 {
                return Err(Error::Singular(GL_DET_EPS));
            }
            for k in 0..n {
                m.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
            let p = m[col * n + col];
            for k in 0..n {
                m[col * n + k] /= p;
                inv[col * n + k] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m[r * n + col];
                if factor == 0.0 {
                    continue;
                }
                for k in 0..n {
                    m[r * n + k] -= factor * m[col * n + k];
                    inv[r * n + k] -= factor * inv[col * n + k];
                }
            }
        }
        GlMatrix::new(n, inv)
    }
}

impl PartialEq for GlMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Eq for GlMatrix {}

impl Hash for GlMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for x in &self.entries {
            x.to_bits().hash(state);
        }
    }
}

/// An element of one of the supported groups, always in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    IntVector(Vec<i64>),
    Rational(Rational),
    Heisenberg(HeisenbergTriple),
    /// Alternating letters, never `a·a` and never `b^0`.
    FreeProd(Vec<FpLetter>),
    /// Nonzero entries only.
    DirectSum(BTreeMap<u32, i64>),
    Cyclic {
        residue: u64,
        modulus: u64,
    },
    Gl(GlMatrix),
    /// Reduced word: adjacent syllables have distinct generators.
    Word(Vec<Syllable>),
}

impl GroupElement {
    fn kind_name(&self) -> String {
        match self {
            GroupElement::IntVector(v) => format!("int:{}", v.len()),
            GroupElement::Rational(_) => "rational".into(),
            GroupElement::Heisenberg(_) => "heisenberg".into(),
            GroupElement::FreeProd(_) => "freeprod".into(),
            GroupElement::DirectSum(_) => "directsum".into(),
            GroupElement::Cyclic { modulus, .. } => format!("cyclic:{modulus}"),
            GroupElement::Gl(m) => format!("gl:{}", m.n),
            GroupElement::Word(_) => "free".into(),
        }
    }

    fn mismatch(&self, other: &GroupElement) -> Error {
        Error::SpecMismatch { expected: self.kind_name(), found: other.kind_name() }
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        use GroupElement::*;
        Ok(match (self, other) {
            (IntVector(x), IntVector(y)) if x.len() == y.len() => IntVector(
                x.iter().zip(y).map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow)).collect::<Result<_>>()?,
            ),
            (Rational(x), Rational(y)) => Rational(x + y),
            (Heisenberg(x), Heisenberg(y)) => {
                Heisenberg(HeisenbergTriple { a: &x.a + &y.a, b: &x.b + &y.b, c: &(&x.c + &y.c) + &(&x.a * &y.b) })
            }
            (FreeProd(x), FreeProd(y)) => {
                let mut word = x.clone();
                for letter in y {
                    push_fp_letter(&mut word, *letter)?;
                }
                FreeProd(word)
            }
            (DirectSum(x), DirectSum(y)) => {
                let mut out = x.clone();
                for (&i, &v) in y {
                    let entry = out.entry(i).or_insert(0);
                    *entry = entry.checked_add(v).ok_or(Error::Overflow)?;
                    if *entry == 0 {
                        out.remove(&i);
                    }
                }
                DirectSum(out)
            }
            (Cyclic { residue: r, modulus: m }, Cyclic { residue: s, modulus: n }) if m == n => {
                Cyclic { residue: ((*r as u128 + *s as u128) % *m as u128) as u64, modulus: *m }
            }
            (Gl(x), Gl(y)) if x.n == y.n => Gl(x.mul(y)?),
            (Word(x), Word(y)) => {
                let mut word = x.clone();
                for s in y {
                    push_syllable(&mut word, *s)?;
                }
                Word(word)
            }
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        use GroupElement::*;
        Ok(match self {
            IntVector(x) => IntVector(x.iter().map(|a| a.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?),
            Rational(x) => Rational(-x),
            // (a,b,c)^-1 = (-a, -b, ab - c)
            Heisenberg(x) => Heisenberg(HeisenbergTriple { a: -&x.a, b: -&x.b, c: &(&x.a * &x.b) - &x.c }),
            FreeProd(x) => FreeProd(
                x.iter()
                    .rev()
                    .map(|l| match l {
                        FpLetter::A => Ok(FpLetter::A),
                        FpLetter::B(n) => n.checked_neg().map(FpLetter::B).ok_or(Error::Overflow),
                    })
                    .collect::<Result<_>>()?,
            ),
            DirectSum(x) => DirectSum(
                x.iter()
                    .map(|(&i, &v)| v.checked_neg().map(|v| (i, v)).ok_or(Error::Overflow))
                    .collect::<Result<_>>()?,
            ),
            Cyclic { residue, modulus } => Cyclic { residue: (modulus - residue) % modulus, modulus: *modulus },
            Gl(m) => Gl(m.inverse()?),
            Word(x) => Word(
                x.iter()
                    .rev()
                    .map(|s| {
                        s.exp.checked_neg().map(|exp| Syllable { generator: s.generator, exp }).ok_or(Error::Overflow)
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }

    /// `self^k` for any integer `k` by repeated squaring.
    pub fn pow(&self, k: i64) -> Result<GroupElement> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The identity of the group this element belongs to.
    pub fn identity_like(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            IntVector(v) => IntVector(vec![0; v.len()]),
            Rational(_) => Rational(crate::rational::Rational::zero()),
            Heisenberg(_) => Heisenberg(HeisenbergTriple::from_ints(0, 0, 0)),
            FreeProd(_) => FreeProd(Vec::new()),
            DirectSum(_) => DirectSum(BTreeMap::new()),
            Cyclic { modulus, .. } => Cyclic { residue: 0, modulus: *modulus },
            Gl(m) => Gl(GlMatrix::identity(m.n)),
            Word(_) => Word(Vec::new()),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// Word length in the standard generators for the word groups
    /// (`b^n` and `g^n` cost `|n|`); `None` for the other groups.
    pub fn word_length(&self) -> Option<u64> {
        match self {
            GroupElement::FreeProd(w) => Some(
                w.iter()
                    .map(|l| match l {
                        FpLetter::A => 1,
                        FpLetter::B(n) => n.unsigned_abs(),
                    })
                    .sum(),
            ),
            GroupElement::Word(w) => Some(w.iter().map(|s| s.exp.unsigned_abs()).sum()),
            _ => None,
        }
    }

    /// Re-derives the normal form from scratch; a no-op for well-formed
    /// elements.
    pub fn normalize(&self) -> Result<GroupElement> {
        use GroupElement::*;
        Ok(match self {
            FreeProd(w) => {
                let mut out = Vec::new();
                for l in w {
                    push_fp_letter(&mut out, *l)?;
                }
                FreeProd(out)
            }
            Word(w) => {
                let mut out = Vec::new();
                for s in w {
                    push_syllable(&mut out, *s)?;
                }
                Word(out)
            }
            DirectSum(m) => DirectSum(m.iter().filter(|(_, v)| **v != 0).map(|(k, v)| (*k, *v)).collect()),
            Cyclic { residue, modulus } => Cyclic { residue: residue % modulus, modulus: *modulus },
            other => other.clone(),
        })
    }
}

fn push_fp_letter(word: &mut Vec<FpLetter>, letter: FpLetter) -> Result<()> {
    match (word.last().copied(), letter) {
        (_, FpLetter::B(0)) => {}
        (Some(FpLetter::A), FpLetter::A) => {
            word.pop();
        }
        (Some(FpLetter::B(m)), FpLetter::B(n)) => {
            let s = m.checked_add(n).ok_or(Error::Overflow)?;
            word.pop();
            if s != 0 {
                word.push(FpLetter::B(s));
            }
        }
        _ => word.push(letter),
    }
    Ok(())
}

fn push_syllable(word: &mut Vec<Syllable>, s: Syllable) -> Result<()> {
    if s.exp == 0 {
        return Ok(());
    }
    match word.last().copied() {
        Some(last) if last.generator == s.generator => {
            let e = last.exp.checked_add(s.exp).ok_or(Error::Overflow)?;
            word.pop();
            if e != 0 {
                word.push(Syllable { generator: s.generator, exp: e });
            }
        }
        _ => word.push(s),
    }
    Ok(())
}

impl GroupSpec {
    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::IntVector { dim } => GroupElement::IntVector(vec![0; *dim]),
            GroupSpec::RationalAdditive => GroupElement::Rational(Rational::zero()),
            GroupSpec::HeisenbergRational => GroupElement::Heisenberg(HeisenbergTriple::from_ints(0, 0, 0)),
            GroupSpec::FreeProdZZ2 => GroupElement::FreeProd(Vec::new()),
            GroupSpec::IntDirectSum => GroupElement::DirectSum(BTreeMap::new()),
            GroupSpec::CyclicFinite { modulus } => GroupElement::Cyclic { residue: 0, modulus: *modulus },
            GroupSpec::GLFloat { n } => GroupElement::Gl(GlMatrix::identity(*n)),
            GroupSpec::FreeGroup { .. } => GroupElement::Word(Vec::new()),
        }
    }

    /// Checks the structural invariants of the spec itself.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::IntVector { dim: 0 } => Err(Error::InvalidArgument("dimension must be >= 1".into())),
            GroupSpec::CyclicFinite { modulus } if *modulus < 2 => {
                Err(Error::InvalidArgument("cyclic modulus must be >= 2".into()))
            }
            GroupSpec::GLFloat { n: 0 } => Err(Error::InvalidArgument("matrix size must be >= 1".into())),
            GroupSpec::FreeGroup { labels } => {
                if labels.is_empty() {
                    return Err(Error::InvalidArgument("free group needs at least one generator".into()));
                }
                for (i, l) in labels.iter().enumerate() {
                    let ok = l.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && l.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        && l != "e";
                    if !ok {
                        return Err(Error::InvalidArgument(format!("bad generator label `{l}`")));
                    }
                    if labels[..i].contains(l) {
                        return Err(Error::InvalidArgument(format!("duplicate generator label `{l}`")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Whether `x` is a well-formed element of this group.
    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (GroupSpec::IntVector { dim }, GroupElement::IntVector(v)) => v.len() == *dim,
            (GroupSpec::RationalAdditive, GroupElement::Rational(_)) => true,
            (GroupSpec::HeisenbergRational, GroupElement::Heisenberg(_)) => true,
            (GroupSpec::FreeProdZZ2, GroupElement::FreeProd(_)) => true,
            (GroupSpec::IntDirectSum, GroupElement::DirectSum(m)) => !m.contains_key(&0),
            (GroupSpec::CyclicFinite { modulus }, GroupElement::Cyclic { residue, modulus: m }) => {
                m == modulus && residue < modulus
            }
            (GroupSpec::GLFloat { n }, GroupElement::Gl(m)) => m.n == *n,
            (GroupSpec::FreeGroup { labels }, GroupElement::Word(w)) => {
                w.iter().all(|s| (s.generator as usize) < labels.len())
            }
            _ => false,
        }
    }

    pub fn ensure_contains(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::SpecMismatch { expected: self.to_string(), found: x.kind_name() })
        }
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.ensure_contains(x)?;
        self.ensure_contains(y)?;
        x.mul(y)
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement> {
        self.ensure_contains(x)?;
        x.inverse()
    }

    /// True for the abelian groups, where difference operators commute.
    pub fn is_commutative(&self) -> bool {
        match self {
            GroupSpec::IntVector { .. }
            | GroupSpec::RationalAdditive
            | GroupSpec::IntDirectSum
            | GroupSpec::CyclicFinite { .. } => true,
            GroupSpec::GLFloat { n } => *n == 1,
            GroupSpec::FreeGroup { labels } => labels.len() == 1,
            GroupSpec::HeisenbergRational | GroupSpec::FreeProdZZ2 => false,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, GroupSpec::GLFloat { .. })
    }

    /// Standard generators: unit vectors, `1`, `x`/`y` of the Heisenberg
    /// group, `a`/`b`, the free generators, or the shift `1 mod n`.
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        Ok(match self {
            GroupSpec::IntVector { dim } => (0..*dim)
                .map(|i| {
                    let mut v = vec![0; *dim];
                    v[i] = 1;
                    GroupElement::IntVector(v)
                })
                .collect(),
            GroupSpec::RationalAdditive => vec![GroupElement::Rational(Rational::one())],
            GroupSpec::HeisenbergRational => vec![
                GroupElement::Heisenberg(HeisenbergTriple::from_ints(1, 0, 0)),
                GroupElement::Heisenberg(HeisenbergTriple::from_ints(0, 1, 0)),
            ],
            GroupSpec::FreeProdZZ2 => {
                vec![GroupElement::FreeProd(vec![FpLetter::A]), GroupElement::FreeProd(vec![FpLetter::B(1)])]
            }
            GroupSpec::IntDirectSum => (1..=DIRECT_SUM_WINDOW).map(unit_direct_sum).collect(),
            GroupSpec::CyclicFinite { modulus } => {
                vec![GroupElement::Cyclic { residue: 1 % modulus, modulus: *modulus }]
            }
            GroupSpec::FreeGroup { labels } => {
                (0..labels.len() as u32).map(|g| GroupElement::Word(vec![Syllable { generator: g, exp: 1 }])).collect()
            }
            GroupSpec::GLFloat { .. } => {
                return Err(Error::Unsupported("GL(n) has no finite generating set; use sample".into()))
            }
        })
    }
}

/// The basis vector `e_i` of the direct sum (indices start at 1).
pub fn unit_direct_sum(i: u32) -> GroupElement {
    GroupElement::DirectSum(BTreeMap::from([(i, 1)]))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::IntVector { dim } => write!(f, "int:{dim}"),
            GroupSpec::RationalAdditive => f.write_str("rational"),
            GroupSpec::HeisenbergRational => f.write_str("heisenberg"),
            GroupSpec::FreeProdZZ2 => f.write_str("freeprod"),
            GroupSpec::IntDirectSum => f.write_str("directsum"),
            GroupSpec::CyclicFinite { modulus } => write!(f, "cyclic:{modulus}"),
            GroupSpec::GLFloat { n } => write!(f, "gl:{n}"),
            GroupSpec::FreeGroup { labels } => write!(f, "free:{}", labels.join(",")),
        }
    }
}

/// Parses the group descriptors `int:<d>`, `rational`, `heisenberg`,
/// `freeprod`, `directsum`, `cyclic:<n>`, `gl:<n>` and `free:<l1>,<l2>,..`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<u64> {
            a.ok_or_else(|| Error::Parse(format!("group `{s}` needs a size argument")))?
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad size in group `{s}`")))
        };
        let spec = match head {
            "int" | "intvec" | "z" => GroupSpec::IntVector { dim: num(arg)? as usize },
            "rational" | "q" => GroupSpec::RationalAdditive,
            "heisenberg" => GroupSpec::HeisenbergRational,
            "freeprod" => GroupSpec::FreeProdZZ2,
            "directsum" => GroupSpec::IntDirectSum,
            "cyclic" => GroupSpec::CyclicFinite { modulus: num(arg)? },
            "gl" => GroupSpec::GLFloat { n: num(arg)? as usize },
            "free" => GroupSpec::FreeGroup {
                labels: arg
                    .ok_or_else(|| Error::Parse("free group needs labels, e.g. free:x,y".into()))?
                    .split(',')
                    .map(|l| l.trim().to_string())
                    .collect(),
            },
            _ => return Err(Error::Parse(format!("unknown group `{s}`"))),
        };
        if arg.is_some() && matches!(head, "rational" | "q" | "heisenberg" | "freeprod" | "directsum") {
            return Err(Error::Parse(format!("group `{head}` takes no argument")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl serde::Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(s: &str) -> GroupElement {
        GroupSpec::FreeProdZZ2.parse_element(s).unwrap()
    }

    fn heis(a: i64, b: i64, c: i64) -> GroupElement {
        GroupElement::Heisenberg(HeisenbergTriple::from_ints(a, b, c))
    }

    #[test]
    fn identities() {
        assert_eq!(GroupSpec::IntVector { dim: 2 }.identity(), GroupElement::IntVector(vec![0, 0]));
        assert_eq!(GroupSpec::FreeProdZZ2.identity(), GroupElement::FreeProd(vec![]));
        assert_eq!(GroupSpec::HeisenbergRational.identity(), heis(0, 0, 0));
    }

    #[test]
    fn heisenberg_product_and_inverse() {
        assert_eq!(heis(1, 0, 0).mul(&heis(0, 1, 0)).unwrap(), heis(1, 1, 1));
        assert_eq!(heis(0, 1, 0).mul(&heis(1, 0, 0)).unwrap(), heis(1, 1, 0));
        let g = GroupElement::Heisenberg(HeisenbergTriple::new(
            Rational::new(1, 2),
            Rational::from_integer(-3),
            Rational::new(2, 5),
        ));
        let inv = g.inverse().unwrap();
        // (-a, -b, ab - c) = (-1/2, 3, -3/2 - 2/5)
        assert_eq!(
            inv,
            GroupElement::Heisenberg(HeisenbergTriple::new(
                Rational::new(-1, 2),
                Rational::from_integer(3),
                Rational::new(-19, 10),
            ))
        );
        assert!(g.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn free_product_rewriting() {
        assert_eq!(fp("b a").mul(&fp("a b^2")).unwrap(), fp("b^3"));
        assert_eq!(fp("a").mul(&fp("a")).unwrap(), fp("e"));
        assert_eq!(fp("a b^2 a").inverse().unwrap(), fp("a b^-2 a"));
        assert_eq!(fp("a b^2 a b^-1").mul(&fp("b a b^-2 a")).unwrap(), fp("e"));
        assert_eq!(fp("b^0"), fp("e"));
        assert_eq!(fp("a a b"), fp("b"));
    }

    #[test]
    fn cyclic_and_direct_sum() {
        let c = GroupSpec::CyclicFinite { modulus: 7 };
        let x = c.parse_element("4 mod 7").unwrap();
        assert_eq!(x.mul(&x).unwrap(), c.parse_element("1 mod 7").unwrap());
        assert!(x.mul(&x.inverse().unwrap()).unwrap().is_identity());
        let d = GroupSpec::IntDirectSum;
        let u = d.parse_element("{1:2, 6:-1}").unwrap();
        let v = d.parse_element("{6:1}").unwrap();
        assert_eq!(u.mul(&v).unwrap(), d.parse_element("{1:2}").unwrap());
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let err = heis(1, 0, 0).mul(&fp("a")).unwrap_err();
        assert!(matches!(err, Error::SpecMismatch { .. }));
        let z2 = GroupSpec::IntVector { dim: 2 };
        assert!(z2.multiply(&GroupElement::IntVector(vec![1]), &z2.identity()).is_err());
        let c5 = GroupElement::Cyclic { residue: 1, modulus: 5 };
        let c7 = GroupElement::Cyclic { residue: 1, modulus: 7 };
        assert!(c5.mul(&c7).is_err());
    }

    #[test]
    fn gl_rejects_singular() {
        assert!(matches!(GlMatrix::new(2, vec![1.0, 2.0, 2.0, 4.0]), Err(Error::Singular(_))));
        let m = GlMatrix::new(2, vec![2.0, 1.0, 1.0, 1.0]).unwrap();
        let g = GroupElement::Gl(m);
        let prod = g.mul(&g.inverse().unwrap()).unwrap();
        let GroupElement::Gl(p) = prod else { unreachable!() };
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p.get(i, j) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pow_matches_repeated_products() {
        let h = fp("a b");
        let mut acc = fp("e");
        for k in 0..6 {
            assert_eq!(h.pow(k).unwrap(), acc);
            assert_eq!(h.pow(-k).unwrap(), acc.inverse().unwrap());
            acc = acc.mul(&h).unwrap();
        }
    }

    #[test]
    fn descriptors_round_trip() {
        for s in ["int:3", "rational", "heisenberg", "freeprod", "directsum", "cyclic:7", "gl:2", "free:x,y"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("cyclic:1".parse::<GroupSpec>().is_err());
        assert!("int:0".parse::<GroupSpec>().is_err());
        assert!("free:x,x".parse::<GroupSpec>().is_err());
        assert!("heisenberg:2".parse::<GroupSpec>().is_err());
    }
}
