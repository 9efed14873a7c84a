//! Text syntax for elements.
//!
//! | group       | example            |
//! |-------------|--------------------|
//! | int:d       | `(1,-2)` (or `3` when d = 1) |
//! | rational    | `3/4`              |
//! | heisenberg  | `(1/2, -1, 0)`     |
//! | freeprod    | `a b^2 a b^-1`, `e` |
//! | directsum   | `{1:2, 6:-1}`, `{}` |
//! | cyclic:n    | `4 mod 7` (or `4`)  |
//! | gl:n        | `[[1,0],[0,1]]`     |
//! | free:x,y    | `x y^2 x^-1`, `e`   |

use std::collections::BTreeMap;
use std::fmt;

use super::{FpLetter, GlMatrix, GroupElement, GroupSpec, HeisenbergTriple, Syllable};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn parse_err(what: &str, s: &str) -> Error {
    Error::Parse(format!("invalid {what} literal `{s}`"))
}

fn strip_delims(s: &str, open: char, close: char) -> Option<&str> {
    let t = s.trim();
    t.strip_prefix(open)?.strip_suffix(close)
}

fn split_list(inner: &str) -> Vec<&str> {
    if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::trim).collect()
    }
}

/// Splits `x^-2` into `("x", -2)`; a bare token has exponent 1.
fn split_power(tok: &str) -> Result<(&str, i64)> {
    match tok.split_once('^') {
        Some((base, exp)) => {
            let e = exp.trim().parse::<i64>().map_err(|_| parse_err("exponent", tok))?;
            Ok((base.trim(), e))
        }
        None => Ok((tok, 1)),
    }
}

fn word_tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty())
}

impl GroupSpec {
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let elem = match self {
            GroupSpec::IntVector { dim } => {
                let parts: Vec<&str> = match strip_delims(s, '(', ')') {
                    Some(inner) => split_list(inner),
                    None => vec![s.trim()],
                };
                let v = parts
                    .iter()
                    .map(|p| p.parse::<i64>().map_err(|_| parse_err("integer vector", s)))
                    .collect::<Result<Vec<_>>>()?;
                if v.len() != *dim {
                    return Err(Error::Dimension(format!("`{s}` has {} coordinates, expected {dim}", v.len())));
                }
                GroupElement::IntVector(v)
            }
            GroupSpec::RationalAdditive => {
                GroupElement::Rational(s.parse::<Rational>().map_err(|_| parse_err("rational", s))?)
            }
            GroupSpec::HeisenbergRational => {
                let inner = strip_delims(s, '(', ')').ok_or_else(|| parse_err("heisenberg", s))?;
                let parts = split_list(inner);
                if parts.len() != 3 {
                    return Err(parse_err("heisenberg", s));
                }
                let r = |p: &str| p.parse::<Rational>().map_err(|_| parse_err("heisenberg", s));
                GroupElement::Heisenberg(HeisenbergTriple::new(r(parts[0])?, r(parts[1])?, r(parts[2])?))
            }
            GroupSpec::FreeProdZZ2 => {
                let mut letters = Vec::new();
                for tok in word_tokens(s) {
                    if tok == "e" || tok == "1" {
                        continue;
                    }
                    let (base, exp) = split_power(tok)?;
                    match base {
                        "a" if exp.rem_euclid(2) == 1 => letters.push(FpLetter::A),
                        "a" => {}
                        "b" => letters.push(FpLetter::B(exp)),
                        _ => return Err(parse_err("free product word", s)),
                    }
                }
                GroupElement::FreeProd(letters).normalize()?
            }
            GroupSpec::IntDirectSum => {
                let inner = strip_delims(s, '{', '}').ok_or_else(|| parse_err("direct sum", s))?;
                let mut map = BTreeMap::new();
                for entry in split_list(inner) {
                    let (k, v) = entry.split_once(':').ok_or_else(|| parse_err("direct sum", s))?;
                    let k = k.trim().parse::<u32>().map_err(|_| parse_err("direct sum", s))?;
                    let v = v.trim().parse::<i64>().map_err(|_| parse_err("direct sum", s))?;
                    if k == 0 {
                        return Err(Error::Parse("direct sum indices start at 1".into()));
                    }
                    if map.insert(k, v).is_some() {
                        return Err(Error::Parse(format!("duplicate index {k} in `{s}`")));
                    }
                }
                GroupElement::DirectSum(map).normalize()?
            }
            GroupSpec::CyclicFinite { modulus } => {
                let t = s.trim();
                let (r, m) = match t.split_once("mod") {
                    Some((r, m)) => (r.trim(), Some(m.trim())),
                    None => (t, None),
                };
                if let Some(m) = m {
                    let m = m.parse::<u64>().map_err(|_| parse_err("cyclic", s))?;
                    if m != *modulus {
                        return Err(Error::SpecMismatch { expected: self.to_string(), found: format!("cyclic:{m}") });
                    }
                }
                let r = r.parse::<i64>().map_err(|_| parse_err("cyclic", s))?;
                GroupElement::Cyclic { residue: r.rem_euclid(*modulus as i64) as u64, modulus: *modulus }
            }
            GroupSpec::GLFloat { n } => {
                let inner = strip_delims(s, '[', ']').ok_or_else(|| parse_err("matrix", s))?;
                let mut entries = Vec::new();
                let mut rows = 0;
                for row in inner.split(']') {
                    let row = row.trim().trim_start_matches(',').trim();
                    if row.is_empty() {
                        continue;
                    }
                    let row = row.strip_prefix('[').ok_or_else(|| parse_err("matrix", s))?;
                    for x in split_list(row) {
                        entries.push(x.parse::<f64>().map_err(|_| parse_err("matrix", s))?);
                    }
                    rows += 1;
                }
                if rows != *n || entries.len() != n * n {
                    return Err(Error::Dimension(format!("`{s}` is not a {n}x{n} matrix")));
                }
                GroupElement::Gl(GlMatrix::new(*n, entries)?)
            }
            GroupSpec::FreeGroup { labels } => {
                let mut word = Vec::new();
                for tok in word_tokens(s) {
                    if tok == "e" || tok == "1" {
                        continue;
                    }
                    let (base, exp) = split_power(tok)?;
                    let g = labels
                        .iter()
                        .position(|l| l == base)
                        .ok_or_else(|| Error::Parse(format!("unknown generator `{base}` in `{s}`")))?;
                    word.push(Syllable { generator: g as u32, exp });
                }
                GroupElement::Word(word).normalize()?
            }
        };
        self.ensure_contains(&elem)?;
        Ok(elem)
    }

    /// Parses a `;`-separated element list.
    pub fn parse_element_list(&self, s: &str) -> Result<Vec<GroupElement>> {
        s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| self.parse_element(t)).collect()
    }

    pub fn format_element(&self, x: &GroupElement) -> String {
        match (self, x) {
            (GroupSpec::FreeGroup { labels }, GroupElement::Word(w)) => {
                format_word(w, |g| labels.get(g as usize).cloned().unwrap_or_else(|| format!("g{g}")))
            }
            _ => x.to_string(),
        }
    }
}

fn format_word(w: &[Syllable], label: impl Fn(u32) -> String) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|s| if s.exp == 1 { label(s.generator) } else { format!("{}^{}", label(s.generator), s.exp) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text form; free-group generators print as `g0, g1, ..` here,
/// use [`GroupSpec::format_element`] for labelled output.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::IntVector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Rational(r) => write!(f, "{r}"),
            GroupElement::Heisenberg(h) => write!(f, "({}, {}, {})", h.a, h.b, h.c),
            GroupElement::FreeProd(w) => {
                if w.is_empty() {
                    return f.write_str("e");
                }
                let parts: Vec<String> = w
                    .iter()
                    .map(|l| match l {
                        FpLetter::A => "a".to_string(),
                        FpLetter::B(1) => "b".to_string(),
                        FpLetter::B(n) => format!("b^{n}"),
                    })
                    .collect();
                f.write_str(&parts.join(" "))
            }
            GroupElement::DirectSum(m) => {
                let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            GroupElement::Cyclic { residue, modulus } => write!(f, "{residue} mod {modulus}"),
            GroupElement::Gl(m) => {
                let n = m.n();
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        let r: Vec<String> = (0..n).map(|j| format!("{:?}", m.get(i, j))).collect();
                        format!("[{}]", r.join(","))
                    })
                    .collect();
                write!(f, "[{}]", rows.join(","))
            }
            GroupElement::Word(w) => f.write_str(&format_word(w, |g| format!("g{g}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_documented_literal() {
        let cases = [
            ("int:2", "(1,-2)", "(1,-2)"),
            ("int:1", "3", "(3)"),
            ("rational", "6/8", "3/4"),
            ("heisenberg", "(1/2, -1, 0)", "(1/2, -1, 0)"),
            ("freeprod", "a b^2 a b^-1", "a b^2 a b^-1"),
            ("freeprod", "b^1 a a b", "b^2"),
            ("directsum", "{6:-1, 1:2}", "{1:2, 6:-1}"),
            ("directsum", "{3:0}", "{}"),
            ("cyclic:7", "4 mod 7", "4 mod 7"),
            ("cyclic:7", "-1", "6 mod 7"),
            ("gl:2", "[[1,0],[0,2]]", "[[1.0,0.0],[0.0,2.0]]"),
            ("free:x,y", "x y y^-1 x", "x^2"),
        ];
        for (g, lit, want) in cases {
            let spec: GroupSpec = g.parse().unwrap();
            let x = spec.parse_element(lit).unwrap();
            let shown = spec.format_element(&x);
            assert_eq!(shown, want, "{g} {lit}");
            assert_eq!(spec.parse_element(&shown).unwrap(), x);
        }
    }

    #[test]
    fn rejects_malformed_literals() {
        let bad = [
            ("int:2", "(1,2,3)"),
            ("int:2", "(1,x)"),
            ("heisenberg", "(1,2)"),
            ("freeprod", "c"),
            ("directsum", "{0:1}"),
            ("directsum", "{1:1, 1:2}"),
            ("cyclic:7", "3 mod 5"),
            ("gl:2", "[[1,2],[2,4]]"),
            ("free:x,y", "z"),
        ];
        for (g, lit) in bad {
            let spec: GroupSpec = g.parse().unwrap();
            assert!(spec.parse_element(lit).is_err(), "{g} {lit}");
        }
    }
}
