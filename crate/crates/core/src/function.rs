//! Scalar-valued functions on a group.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::rational::Rational;
use crate::scalar::{Scalar, ScalarKind};

type EvalFn = dyn Fn(&GroupElement) -> Result<Scalar> + Send + Sync;

/// A deterministic map `G -> Q` (or `G -> R` for the float demos) with an
/// optional memo table keyed by normal form.
///
/// Cloning is cheap and clones share the memo table. The table sits behind a
/// mutex, so concurrent evaluation from several threads returns the same
/// values as sequential evaluation.
#[derive(Clone)]
pub struct GroupFunction {
    spec: GroupSpec,
    kind: ScalarKind,
    label: String,
    eval: Arc<EvalFn>,
    cache: Option<Arc<Mutex<HashMap<GroupElement, Scalar>>>>,
}

impl fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupFunction")
            .field("spec", &self.spec)
            .field("kind", &self.kind)
            .field("label", &self.label)
            .field("memoized", &self.cache.is_some())
            .finish()
    }
}

impl GroupFunction {
    pub fn new<F>(spec: GroupSpec, kind: ScalarKind, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Result<Scalar> + Send + Sync + 'static,
    {
        GroupFunction { spec, kind, label: label.into(), eval: Arc::new(eval), cache: None }
    }

    pub fn exact<F>(spec: GroupSpec, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Result<Rational> + Send + Sync + 'static,
    {
        Self::new(spec, ScalarKind::Exact, label, move |g| eval(g).map(Scalar::Exact))
    }

    pub fn float<F>(spec: GroupSpec, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Result<f64> + Send + Sync + 'static,
    {
        Self::new(spec, ScalarKind::Float, label, move |g| eval(g).map(Scalar::Float))
    }

    pub fn constant(spec: GroupSpec, value: Rational) -> Self {
        let label = format!("const {value}");
        Self::exact(spec, label, move |_| Ok(value.clone()))
    }

    /// Same function with a memo table attached.
    pub fn memoized(mut self) -> Self {
        self.cache = Some(Arc::new(Mutex::new(HashMap::new())));
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_memoized(&self) -> bool {
        self.cache.is_some()
    }

    pub fn eval(&self, g: &GroupElement) -> Result<Scalar> {
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.lock().expect("memo table poisoned").get(g) {
                return Ok(v.clone());
            }
            let v = self.eval_uncached(g)?;
            cache.lock().expect("memo table poisoned").insert(g.clone(), v.clone());
            return Ok(v);
        }
        self.eval_uncached(g)
    }

    /// Evaluates without touching the memo table.
    pub fn eval_uncached(&self, g: &GroupElement) -> Result<Scalar> {
        self.spec.ensure_contains(g)?;
        let v = (self.eval)(g)?;
        if v.kind() != self.kind {
            return Err(Error::Evaluation(format!("`{}` produced a {:?} value", self.label, v.kind())));
        }
        Ok(v)
    }

    /// Exact value or an error for float-valued functions.
    pub fn eval_exact(&self, g: &GroupElement) -> Result<Rational> {
        match self.eval(g)? {
            Scalar::Exact(r) => Ok(r),
            Scalar::Float(_) => Err(Error::Unsupported(format!("`{}` is float-valued", self.label))),
        }
    }

    pub fn clear_cache(&self) {
        if let Some(cache) = &self.cache {
            cache.lock().expect("memo table poisoned").clear();
        }
    }

    pub fn cache_len(&self) -> usize {
        self.cache.as_ref().map_or(0, |c| c.lock().expect("memo table poisoned").len())
    }

    /// `sum c_i f_i` over functions on the same group and of the same kind.
    pub fn linear_combination(terms: &[(Rational, GroupFunction)]) -> Result<GroupFunction> {
        let (_, first) = terms.first().ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
        let spec = first.spec.clone();
        let kind = first.kind;
        for (_, f) in terms {
            if f.spec != spec {
                return Err(Error::SpecMismatch { expected: spec.to_string(), found: f.spec.to_string() });
            }
            if f.kind != kind {
                return Err(Error::Evaluation("exact and float scalars cannot be mixed".into()));
            }
        }
        let label = terms.iter().map(|(c, f)| format!("{c}*[{}]", f.label)).collect::<Vec<_>>().join(" + ");
        let terms = terms.to_vec();
        Ok(GroupFunction::new(spec, kind, label, move |g| {
            let mut acc = Scalar::zero(kind);
            for (c, f) in &terms {
                acc = acc.add(&f.eval(g)?.scale(c))?;
            }
            Ok(acc)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_is_transparent() {
        let spec = GroupSpec::IntVector { dim: 1 };
        let f = GroupFunction::exact(spec.clone(), "n^2", |g| match g {
            GroupElement::IntVector(v) => Ok(Rational::from_integer(v[0] * v[0])),
            _ => unreachable!(),
        })
        .memoized();
        let ball = spec.ball(4, 4).unwrap();
        let cached: Vec<Scalar> = ball.iter().map(|g| f.eval(g).unwrap()).collect();
        assert_eq!(f.cache_len(), ball.len());
        f.clear_cache();
        assert_eq!(f.cache_len(), 0);
        let fresh: Vec<Scalar> = ball.iter().map(|g| f.eval_uncached(g).unwrap()).collect();
        assert_eq!(cached, fresh);
    }

    #[test]
    fn rejects_foreign_elements_and_mixed_kinds() {
        let f = GroupFunction::constant(GroupSpec::RationalAdditive, Rational::one());
        assert!(matches!(f.eval(&GroupSpec::FreeProdZZ2.identity()), Err(Error::SpecMismatch { .. })));
        let liar =
            GroupFunction::new(GroupSpec::RationalAdditive, ScalarKind::Exact, "liar", |_| Ok(Scalar::Float(1.0)));
        assert!(liar.eval(&GroupSpec::RationalAdditive.identity()).is_err());
    }

    #[test]
    fn concurrent_evaluation_matches_sequential() {
        let spec = GroupSpec::HeisenbergRational;
        let f = GroupFunction::exact(spec.clone(), "a+b*c", |g| match g {
            GroupElement::Heisenberg(h) => Ok(&h.a + &(&h.b * &h.c)),
            _ => unreachable!(),
        })
        .memoized();
        let ball = spec.ball(3, 3).unwrap();
        let sequential: Vec<Scalar> = ball.iter().map(|g| f.eval_uncached(g).unwrap()).collect();
        let results: Vec<Vec<Scalar>> = std::thread::scope(|s| {
            let handles: Vec<_> =
                (0..4).map(|_| s.spawn(|| ball.iter().map(|g| f.eval(g).unwrap()).collect())).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for r in results {
            assert_eq!(r, sequential);
        }
    }
}
