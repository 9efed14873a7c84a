//! Orbit rank, growth along cyclic subgroups, and matrix elements of
//! representations.
//!
//! Every quantity here is computed on a finite window. An orbit rank is a
//! lower bound for `dim span{R_h f}`, and a window can never certify that a
//! function is a quasipolynomial.

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::GroupElement;
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::rep::{delta_algebra, MatrixRep};

/// Rank of `M[i][j] = f(bases[j] · shifts[i])`.
pub fn orbit_rank(f: &GroupFunction, shifts: &[GroupElement], bases: &[GroupElement]) -> Result<usize> {
    if shifts.is_empty() || bases.is_empty() {
        return Err(Error::InvalidArgument("shifts and bases must be nonempty".into()));
    }
    let rows = shifts
        .iter()
        .map(|h| bases.iter().map(|x| f.eval_exact(&x.mul(h)?)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?.rank())
}

/// Least `d <= len − 2` whose `(d+1)`-th differences all vanish.
pub fn min_poly_degree(values: &[Rational]) -> Option<usize> {
    let mut row = values.to_vec();
    for d in 0..values.len().saturating_sub(1) {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        if row.iter().all(Rational::is_zero) {
            return Some(d);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProbe {
    /// `f(h^k)` for `k = 0..=K`.
    pub values: Vec<Rational>,
    pub min_poly_degree: Option<usize>,
}

pub fn growth_probe(f: &GroupFunction, h: &GroupElement, k: usize) -> Result<GrowthProbe> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    f.spec().ensure_contains(h)?;
    let mut values = Vec::with_capacity(k + 1);
    let mut power = f.spec().identity();
    for _ in 0..=k {
        values.push(f.eval_exact(&power)?);
        power = power.mul(h)?;
    }
    let min_poly_degree = min_poly_degree(&values);
    Ok(GrowthProbe { values, min_poly_degree })
}

/// `w ↦ ζ · π(w) · x` on the free group over the generator labels.
pub fn matrix_element(rep: &MatrixRep, x: &[Rational], zeta: &[Rational]) -> Result<GroupFunction> {
    if x.len() != rep.dim() || zeta.len() != rep.dim() {
        return Err(Error::Dimension(format!(
            "vector lengths {} and {} do not match dimension {}",
            x.len(),
            zeta.len(),
            rep.dim()
        )));
    }
    let rep_c = rep.clone();
    let x = x.to_vec();
    let zeta = zeta.to_vec();
    let label = format!(
        "matelem[{}|{}]",
        zeta.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
        x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(GroupFunction::exact(rep.word_group(), label, move |w| {
        let px = rep_c.eval_word(w)?.mul_vec(&x)?;
        Ok(zeta.iter().zip(&px).map(|(a, b)| a * b).sum())
    })
    .memoized())
}

/// Whether every `(n+1)`-fold product in the δ-algebra vanishes; then
/// every matrix element is a polynomial of degree `<= n`.
pub fn certify_degree_via_rep(rep: &MatrixRep, n: usize) -> Result<bool> {
    Ok(delta_algebra(rep)?.power(n + 1)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_polynomial, CheckOptions};
    use crate::group::GroupSpec;
    use crate::rep::examples::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn int_fn(label: &str, p: fn(i64) -> i64) -> GroupFunction {
        GroupFunction::exact(GroupSpec::IntVector { dim: 1 }, label, move |g| match g {
            GroupElement::IntVector(v) => Ok(q(p(v[0]))),
            _ => unreachable!(),
        })
    }

    fn ints(r: std::ops::RangeInclusive<i64>) -> Vec<GroupElement> {
        r.map(|i| GroupElement::IntVector(vec![i])).collect()
    }

    #[test]
    fn orbit_rank_examples() {
        let sq = int_fn("n^2", |n| n * n);
        assert_eq!(orbit_rank(&sq, &ints(0..=5), &ints(0..=5)).unwrap(), 3);
        assert_eq!(orbit_rank(&int_fn("7", |_| 7), &ints(0..=3), &ints(0..=3)).unwrap(), 1);
        assert_eq!(orbit_rank(&int_fn("0", |_| 0), &ints(0..=3), &ints(0..=3)).unwrap(), 0);
        assert!(orbit_rank(&sq, &[], &ints(0..=3)).is_err());
        let float = crate::constructions::builtin("gl-demo:2:1").unwrap();
        let id = GroupSpec::GLFloat { n: 2 }.identity();
        assert!(orbit_rank(&float, std::slice::from_ref(&id), std::slice::from_ref(&id)).is_err());
    }

    #[test]
    fn growth_examples() {
        let one = GroupElement::IntVector(vec![1]);
        let cube = growth_probe(&int_fn("n^3", |n| n * n * n), &one, 8).unwrap();
        assert_eq!(cube.min_poly_degree, Some(3));
        assert_eq!(cube.values[2], q(8));
        assert_eq!(growth_probe(&int_fn("5", |_| 5), &one, 8).unwrap().min_poly_degree, Some(0));
        let f = crate::constructions::builtin("freeproduct").unwrap();
        let ab = GroupSpec::FreeProdZZ2.parse_element("a b").unwrap();
        assert_eq!(growth_probe(&f, &ab, 8).unwrap().min_poly_degree, None);
        assert_eq!(min_poly_degree(&[q(1)]), None);
    }

    #[test]
    fn matrix_element_examples() {
        let t = trivial(2);
        let c = matrix_element(&t, &[q(2), q(3)], &[q(5), q(-1)]).unwrap();
        for w in t.word_group().ball(3, 2).unwrap() {
            assert_eq!(c.eval_exact(&w).unwrap(), q(7));
        }
        let u = unipotent_2();
        let f = matrix_element(&u, &[q(0), q(1)], &[q(1), q(0)]).unwrap();
        for k in -4..=4 {
            let w = u.word_group().parse_element(&format!("b^{k}")).unwrap();
            assert_eq!(f.eval_exact(&w).unwrap(), q(k));
        }
        assert!(matrix_element(&u, &[q(1)], &[q(1), q(0)]).is_err());
    }

    #[test]
    fn unipotent_matrix_element_has_degree_two() {
        let u = unipotent_3();
        let f = matrix_element(&u, &[q(0), q(0), q(1)], &[q(1), q(0), q(0)]).unwrap();
        let spec = u.word_group();
        let steps = spec.ball(1, 1).unwrap();
        let bases = spec.ball(3, 2).unwrap();
        let opts = CheckOptions::default();
        assert!(check_polynomial(&f, 2, &steps, &bases, &opts).unwrap().passed());
        assert!(!check_polynomial(&f, 1, &steps, &bases, &opts).unwrap().passed());
    }

    #[test]
    fn certification_examples() {
        assert!(certify_degree_via_rep(&trivial(2), 0).unwrap());
        assert!(certify_degree_via_rep(&unipotent_3(), 2).unwrap());
        assert!(!certify_degree_via_rep(&unipotent_3(), 1).unwrap());
        assert!(certify_degree_via_rep(&unipotent_2(), 1).unwrap());
        assert!(!certify_degree_via_rep(&s3_irrep(), 5).unwrap());
    }
}
