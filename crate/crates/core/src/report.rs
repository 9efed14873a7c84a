//! The uniform result type of every tester.
//!
//! A pass only means no violation was found on the finite surface recorded
//! in [`CheckParams`]; it is never a proof of membership on the whole group.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::group::{GroupElement, GroupSpec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Qualifies a verdict when the tester found something other than a plain
/// counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Finding {
    /// The precondition of an implication does not hold.
    HypothesisFails,
    /// The function is not a semipolynomial on the tested surface.
    NotSemipolynomial,
    /// Values along some cyclic direction follow a nonconstant polynomial
    /// or no polynomial at all.
    UnboundedOrNonconstant,
}

/// A failing difference: `Δ_{steps[last]} … Δ_{steps[0]} f (base) = residual`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub steps: Vec<GroupElement>,
    pub base: GroupElement,
    pub residual: Scalar,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeff_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_word_length: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub counts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub finding: Option<Finding>,
    /// Group the witness elements belong to.
    pub group: GroupSpec,
    pub witnesses: Vec<Witness>,
    pub params: CheckParams,
    /// Auxiliary sequence: probed values, fitted coefficients, ...
    pub values: Vec<Scalar>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(group: GroupSpec, verdict: Verdict) -> Self {
        CheckReport {
            verdict,
            finding: None,
            group,
            witnesses: Vec::new(),
            params: CheckParams::default(),
            values: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_finding(mut self, finding: Finding) -> Self {
        self.finding = Some(finding);
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn count(&mut self, key: &str, value: u64) {
        self.params.counts.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> Value {
        let fmt = |x: &GroupElement| self.group.format_element(x);
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "steps": w.steps.iter().map(fmt).collect::<Vec<_>>(),
                    "base": fmt(&w.base),
                    "residual": w.residual,
                })
            })
            .collect();
        let mut out = json!({
            "verdict": self.verdict,
            "group": self.group.to_string(),
            "witnesses": witnesses,
            "params": self.params,
        });
        let obj = out.as_object_mut().expect("object");
        if let Some(f) = self.finding {
            obj.insert("finding".into(), json!(f));
        }
        if !self.values.is_empty() {
            obj.insert("values".into(), json!(self.values));
        }
        if !self.notes.is_empty() {
            obj.insert("notes".into(), json!(self.notes));
        }
        out
    }
}
