//! Finite test surfaces: deterministic balls and seeded samples.
//!
//! Ball conventions, per group (`r` = radius, `B` = coeff_bound):
//!
//! * `int:d`: lattice points with `|x|_1 <= r` and every `|x_i| <= B`,
//!   lexicographic order.
//! * `rational`: reduced `p/q` with `1 <= q <= B`, `|p| <= B` and
//!   `|p/q| <= r`, ascending.
//! * `heisenberg`: integer triples `(a, b, c)` with `|a|+|b|+|c| <= r` and
//!   each coordinate at most `B` in absolute value, together with their
//!   inverses, lexicographic.
//! * `freeprod`, `free:..`: normal forms of word length `<= r` in the
//!   generators and their inverses (`b^n` has length `|n|`) with every block
//!   exponent at most `B`. Ordered by length, then lexicographically on the
//!   expanded letters with `a < b < b^-1` (resp. `g0 < g0^-1 < g1 < ..`).
//! * `directsum`: support inside indices `1..=DIRECT_SUM_WINDOW`, then as for
//!   `int:d`.
//! * `cyclic:n`: residues within word distance `r` of 0, ascending.
//!
//! Every ball contains the identity and is closed under inverses.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FpLetter, GlMatrix, GroupElement, GroupSpec, HeisenbergTriple, Syllable};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Direct-sum balls and samples only touch indices `1..=12`.
pub const DIRECT_SUM_WINDOW: u32 = 12;

/// Smallest `|det|` of a sampled GL(n) matrix.
pub const GL_SAMPLE_MIN_DET: f64 = 0.25;

/// All integer vectors of length `dim` with l1 norm `<= radius` and
/// entries bounded by `bound`, in lexicographic order.
fn lattice_points(dim: usize, radius: u64, bound: u64) -> Vec<Vec<i64>> {
    fn rec(dim: usize, budget: u64, bound: u64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == dim {
            out.push(prefix.clone());
            return;
        }
        let m = budget.min(bound) as i64;
        for x in -m..=m {
            prefix.push(x);
            rec(dim, budget - x.unsigned_abs(), bound, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, radius, bound, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Sort key: expanded generator letters, each mapped to a small integer.
fn free_prod_key(w: &[FpLetter]) -> (u64, Vec<u8>) {
    let mut key = Vec::new();
    for l in w {
        match *l {
            FpLetter::A => key.push(0),
            FpLetter::B(n) if n > 0 => key.extend(std::iter::repeat_n(1, n as usize)),
            FpLetter::B(n) => key.extend(std::iter::repeat_n(2, n.unsigned_abs() as usize)),
        }
    }
    (key.len() as u64, key)
}

fn free_prod_ball(radius: u64, bound: u64) -> Vec<GroupElement> {
    fn rec(budget: u64, bound: u64, word: &mut Vec<FpLetter>, out: &mut Vec<Vec<FpLetter>>) {
        out.push(word.clone());
        match word.last() {
            Some(FpLetter::A) => {}
            _ if budget >= 1 => {
                word.push(FpLetter::A);
                rec(budget - 1, bound, word, out);
                word.pop();
            }
            _ => {}
        }
        if !matches!(word.last(), Some(FpLetter::B(_))) {
            for m in 1..=budget.min(bound) as i64 {
                for n in [m, -m] {
                    word.push(FpLetter::B(n));
                    rec(budget - m as u64, bound, word, out);
                    word.pop();
                }
            }
        }
    }
    let mut words = Vec::new();
    rec(radius, bound, &mut Vec::new(), &mut words);
    words.sort_by_cached_key(|w| free_prod_key(w));
    words.into_iter().map(GroupElement::FreeProd).collect()
}

fn free_group_key(w: &[Syllable]) -> (u64, Vec<u64>) {
    let mut key = Vec::new();
    for s in w {
        let letter = 2 * s.generator as u64 + u64::from(s.exp < 0);
        key.extend(std::iter::repeat_n(letter, s.exp.unsigned_abs() as usize));
    }
    (key.len() as u64, key)
}

fn free_group_ball(rank: u32, radius: u64, bound: u64) -> Vec<GroupElement> {
    fn rec(rank: u32, budget: u64, bound: u64, word: &mut Vec<Syllable>, out: &mut Vec<Vec<Syllable>>) {
        out.push(word.clone());
        let last = word.last().map(|s| s.generator);
        for g in 0..rank {
            if Some(g) == last {
                continue;
            }
            for m in 1..=budget.min(bound) as i64 {
                for exp in [m, -m] {
                    word.push(Syllable { generator: g, exp });
                    rec(rank, budget - m as u64, bound, word, out);
                    word.pop();
                }
            }
        }
    }
    let mut words = Vec::new();
    rec(rank, radius, bound, &mut Vec::new(), &mut words);
    words.sort_by_cached_key(|w| free_group_key(w));
    words.into_iter().map(GroupElement::Word).collect()
}

fn nonzero_in(rng: &mut ChaCha8Rng, m: i64) -> i64 {
    let x = rng.gen_range(1..=m);
    if rng.gen_bool(0.5) {
        x
    } else {
        -x
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

impl GroupSpec {
    /// Deterministic, duplicate-free ball around the identity; see the
    /// module docs for the per-group conventions.
    pub fn ball(&self, radius: u64, coeff_bound: u64) -> Result<Vec<GroupElement>> {
        if coeff_bound == 0 {
            return Err(Error::InvalidArgument("coeff_bound must be positive".into()));
        }
        Ok(match self {
            GroupSpec::IntVector { dim } => {
                lattice_points(*dim, radius, coeff_bound).into_iter().map(GroupElement::IntVector).collect()
            }
            GroupSpec::RationalAdditive => {
                let mut vals = Vec::new();
                for q in 1..=coeff_bound as i64 {
                    for p in -(coeff_bound as i64)..=coeff_bound as i64 {
                        let x = Rational::new(p, q);
                        if x.abs() <= Rational::from_integer(radius as i64) {
                            vals.push(x);
                        }
                    }
                }
                vals.sort();
                vals.dedup();
                vals.into_iter().map(GroupElement::Rational).collect()
            }
            GroupSpec::HeisenbergRational => {
                // (a,b,c)^-1 = (-a,-b,ab-c) can leave the l1 ball, so close it up
                let mut pts = Vec::new();
                for v in lattice_points(3, radius, coeff_bound) {
                    pts.push((v[0], v[1], v[2]));
                    pts.push((-v[0], -v[1], v[0] * v[1] - v[2]));
                }
                pts.sort();
                pts.dedup();
                pts.into_iter()
                    .map(|(a, b, c)| GroupElement::Heisenberg(HeisenbergTriple::from_ints(a, b, c)))
                    .collect()
            }
            GroupSpec::FreeProdZZ2 => free_prod_ball(radius, coeff_bound),
            GroupSpec::FreeGroup { labels } => free_group_ball(labels.len() as u32, radius, coeff_bound),
            GroupSpec::IntDirectSum => lattice_points(DIRECT_SUM_WINDOW as usize, radius, coeff_bound)
                .into_iter()
                .map(|v| {
                    GroupElement::DirectSum(
                        v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i as u32 + 1, *x)).collect(),
                    )
                })
                .collect(),
            GroupSpec::CyclicFinite { modulus } => (0..*modulus)
                .filter(|&j| j.min(modulus - j) <= radius)
                .map(|j| GroupElement::Cyclic { residue: j, modulus: *modulus })
                .collect(),
            GroupSpec::GLFloat { .. } => {
                return Err(Error::Unsupported("ball is not defined for GL(n); use sample".into()))
            }
        })
    }

    /// `count` pseudo-random elements, fully determined by `seed`.
    ///
    /// Windows: integer coordinates in `[-5, 5]`; rationals `p/q` with
    /// `|p| <= 9`, `1 <= q <= 6`; words of at most 6 blocks with exponents in
    /// `[-3, 3]`; direct-sum supports inside `1..=12` with 1 to 4 entries in
    /// `[-3, 3]`; matrix entries uniform in `[-2, 2]`, resampled until
    /// `|det| >= GL_SAMPLE_MIN_DET` so that short products stay well
    /// conditioned.
    pub fn sample(&self, count: usize, seed: i64) -> Result<Vec<GroupElement>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let x = match self {
                GroupSpec::IntVector { dim } => {
                    GroupElement::IntVector((0..*dim).map(|_| rng.gen_range(-5..=5)).collect())
                }
                GroupSpec::RationalAdditive => GroupElement::Rational(random_rational(&mut rng)),
                GroupSpec::HeisenbergRational => GroupElement::Heisenberg(HeisenbergTriple::new(
                    random_rational(&mut rng),
                    random_rational(&mut rng),
                    random_rational(&mut rng),
                )),
                GroupSpec::FreeProdZZ2 => {
                    let blocks = rng.gen_range(0..=6);
                    let mut w = Vec::new();
                    if rng.gen_bool(0.5) {
                        w.push(FpLetter::A);
                    }
                    for i in 0..blocks {
                        if i > 0 {
                            w.push(FpLetter::A);
                        }
                        w.push(FpLetter::B(nonzero_in(&mut rng, 3)));
                    }
                    if blocks > 0 && rng.gen_bool(0.5) {
                        w.push(FpLetter::A);
                    }
                    GroupElement::FreeProd(w).normalize()?
                }
                GroupSpec::FreeGroup { labels } => {
                    let rank = labels.len() as u32;
                    let blocks = rng.gen_range(0..=6);
                    let mut w = Vec::new();
                    for _ in 0..blocks {
                        let g = rng.gen_range(0..rank);
                        w.push(Syllable { generator: g, exp: nonzero_in(&mut rng, 3) });
                    }
                    GroupElement::Word(w).normalize()?
                }
                GroupSpec::IntDirectSum => {
                    let k = rng.gen_range(1..=4);
                    let mut m = BTreeMap::new();
                    for _ in 0..k {
                        m.insert(rng.gen_range(1..=DIRECT_SUM_WINDOW), nonzero_in(&mut rng, 3));
                    }
                    GroupElement::DirectSum(m)
                }
                GroupSpec::CyclicFinite { modulus } => {
                    GroupElement::Cyclic { residue: rng.gen_range(0..*modulus), modulus: *modulus }
                }
                GroupSpec::GLFloat { n } => loop {
                    let entries: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-2.0..=2.0)).collect();
                    match GlMatrix::new(*n, entries) {
                        Ok(m) if m.det().abs() >= GL_SAMPLE_MIN_DET => break GroupElement::Gl(m),
                        Ok(_) | Err(Error::Singular(_)) => continue,
                        Err(e) => return Err(e),
                    }
                },
            };
            out.push(x);
        }
        debug_assert!(out.iter().all(|x| match x {
            GroupElement::Gl(m) => m.det().abs() >= GL_SAMPLE_MIN_DET,
            _ => true,
        }));
        Ok(out)
    }
}
