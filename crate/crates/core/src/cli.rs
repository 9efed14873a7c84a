//! Command-line front end: experiment configs, subcommands and JSON reports.
//!
//! Exit codes: 0 pass, 1 fail with witnesses, 2 usage, config or evaluation
//! error.

use std::collections::{BTreeMap, HashSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::calculus::{check_degree, estimate_degree, CheckOptions, DegreeKind};
use crate::constructions::{self, builtin, classical_polynomial, triangular_sample, value_table, ExactTerm};
use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{GroupElement, GroupSpec};
use crate::montel::{self, StepSurface};
use crate::quasipoly;
use crate::rational::Rational;
use crate::rep::{self, MatrixRep, Subspace};
use crate::report::{CheckReport, Verdict};

/// How a config names its function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionSpec {
    /// A registry name, see [`constructions::builtin`].
    Builtin(String),
    /// Classical polynomial on `int:d` or `rational`.
    Poly(Vec<ExactTerm>),
    /// Element literal ↦ value, `default` elsewhere.
    Table { entries: BTreeMap<String, Rational>, default: Rational },
}

impl FunctionSpec {
    /// `poly:<terms>` selects a coefficient table, anything else a builtin.
    pub fn from_flag(s: &str) -> Result<FunctionSpec> {
        match s.strip_prefix("poly:") {
            Some(terms) => Ok(FunctionSpec::Poly(constructions::parse_exact_terms(terms)?)),
            None => Ok(FunctionSpec::Builtin(s.to_string())),
        }
    }

    pub fn build(&self, group: &GroupSpec) -> Result<GroupFunction> {
        let f = match self {
            FunctionSpec::Builtin(name) => builtin(name)?,
            FunctionSpec::Poly(terms) => classical_polynomial(group, terms.clone())?,
            FunctionSpec::Table { entries, default } => {
                let parsed = entries
                    .iter()
                    .map(|(k, v)| Ok((group.parse_element(k)?, v.clone())))
                    .collect::<Result<Vec<_>>>()?;
                value_table(group, parsed, default.clone())?
            }
        };
        if f.spec() != group {
            return Err(Error::Config(format!("function `{}` lives on {}, not {group}", f.label(), f.spec())));
        }
        Ok(f)
    }
}

fn default_radius() -> u64 {
    2
}
fn default_coeff_bound() -> u64 {
    2
}
fn default_seed() -> i64 {
    1
}
fn default_base_samples() -> usize {
    10
}
fn is_false(b: &bool) -> bool {
    !*b
}

/// Which differences to test and on which finite surface.
///
/// Default surface: steps `ball(radius, coeff_bound)`, bases the same ball
/// plus `base_samples` seeded elements. Matrix groups have no ball and use
/// 20 seeded matrices as bases and the first 8 as steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub kind: DegreeKind,
    pub degree: usize,
    #[serde(default = "default_radius")]
    pub radius: u64,
    #[serde(default = "default_coeff_bound")]
    pub coeff_bound: u64,
    #[serde(default = "default_seed")]
    pub seed: i64,
    #[serde(default = "default_base_samples")]
    pub base_samples: usize,
    /// Explicit step literals, replacing the ball.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<String>>,
    /// Explicit base literals, replacing ball and sample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Sample upper-triangular matrices instead of general ones.
    #[serde(default, skip_serializing_if = "is_false")]
    pub triangular: bool,
    /// Enumerate the whole surface instead of stopping at 5 witnesses.
    #[serde(default, skip_serializing_if = "is_false")]
    pub all_witnesses: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupSpec,
    pub function: FunctionSpec,
    pub check: CheckConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn options(&self) -> CheckOptions {
        let mut o = CheckOptions::default();
        if let Some(t) = self.check.tolerance {
            o.float_tol = t;
        }
        if self.check.all_witnesses {
            o.witness_cap = None;
        }
        o
    }

    /// Steps and bases of the configured surface.
    pub fn surface(&self) -> Result<(Vec<GroupElement>, Vec<GroupElement>)> {
        let g = &self.group;
        let c = &self.check;
        let parse = |list: &Vec<String>| list.iter().map(|s| g.parse_element(s)).collect::<Result<Vec<_>>>();
        let (default_steps, default_bases) = match g {
            GroupSpec::GLFloat { n } => {
                let pts = if c.triangular { triangular_sample(*n, 20, c.seed)? } else { g.sample(20, c.seed)? };
                (pts[..8].to_vec(), pts)
            }
            _ => {
                let ball = g.ball(c.radius, c.coeff_bound)?;
                let mut bases = ball.clone();
                let mut seen: HashSet<GroupElement> = ball.iter().cloned().collect();
                for x in g.sample(c.base_samples, c.seed)? {
                    if seen.insert(x.clone()) {
                        bases.push(x);
                    }
                }
                (ball, bases)
            }
        };
        let steps = match &c.steps {
            Some(s) => parse(s)?,
            None => default_steps,
        };
        let bases = match &c.bases {
            Some(b) => parse(b)?,
            None => default_bases,
        };
        Ok((steps, bases))
    }
}

#[derive(Debug, Parser)]
#[command(name = "polygroup", version, about = "Polynomial and semipolynomial tests on groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct SurfaceArgs {
    /// JSON experiment config; replaces the group, function and surface flags.
    #[arg(long, conflicts_with_all = ["group", "function"])]
    pub config: Option<PathBuf>,
    /// Group descriptor: int:d, rational, heisenberg, freeprod, directsum, cyclic:n, gl:n, free:x,y.
    #[arg(long)]
    pub group: Option<String>,
    /// Builtin name or `poly:<coeff@exps;..>`.
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub radius: u64,
    #[arg(long, default_value_t = 2)]
    pub coeff_bound: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: i64,
    #[arg(long, default_value_t = 10)]
    pub base_samples: usize,
    /// `;`-separated step literals.
    #[arg(long)]
    pub steps: Option<String>,
    /// `;`-separated base literals.
    #[arg(long)]
    pub bases: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub triangular: bool,
    #[arg(long)]
    pub all_witnesses: bool,
}

#[derive(Debug, Args, Clone)]
pub struct OutArgs {
    /// Report path, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MontelMode {
    Poly,
    Mck,
    Bounded,
    FiniteOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RepOp {
    Fixed,
    Sp,
    P,
    SpEqualsP,
    Classify,
    Anticommute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Heisenberg,
    Freeproduct,
    Infgen,
    Gl,
    Triangular,
    RationalFit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test one degree on a finite surface.
    Check {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<DegreeKind>,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Least passing degree on a finite surface.
    Degree {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<DegreeKind>,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Generator-set criteria.
    Montel {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, value_enum, default_value = "poly")]
        mode: MontelMode,
        /// `;`-separated generator literals (default: the standard generators).
        #[arg(long)]
        generators: Option<String>,
        /// Number of differences for `poly` mode.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Comma-separated per-generator orders for `mck` and `bounded`.
        #[arg(long)]
        orders: Option<String>,
        /// Conclusion sample size for `poly` mode.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Sequence length for `bounded`, maximal degree for `finite-order`.
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Invariant subspaces of a matrix representation.
    Rep {
        /// Representation file.
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_enum)]
        op: RepOp,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, default_value_t = rep::DEFAULT_MAX_WORD_LENGTH)]
        max_word_length: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rank of the evaluation matrix `f(x·h)`.
    OrbitRank {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// `;`-separated shift literals.
        #[arg(long)]
        shifts: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Values `f(h^k)` and the least degree they fit.
    Growth {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Polynomial check of a matrix element `ζ·π(w)·x`.
    Matelem {
        #[arg(long)]
        rep: PathBuf,
        /// Comma-separated vector.
        #[arg(long)]
        x: String,
        /// Comma-separated covector.
        #[arg(long)]
        zeta: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Word length of the base points.
        #[arg(long, default_value_t = 3)]
        radius: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Canonical demonstrations of the explicit constructions.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Quick run of the invariant suite.
    Selftest {
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_kind(s: &str) -> std::result::Result<DegreeKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// The finished document plus its exit code.
struct Outcome {
    doc: Value,
    code: i32,
}

fn report_doc(module: &str, property: &str, report: &CheckReport, extra: Value) -> Outcome {
    let mut doc = report.to_json();
    let obj = doc.as_object_mut().expect("object");
    obj.insert("module".into(), json!(module));
    obj.insert("property".into(), json!(property));
    if let Value::Object(m) = extra {
        obj.extend(m);
    }
    Outcome { doc, code: if report.passed() { 0 } else { 1 } }
}

fn plain_doc(module: &str, property: &str, ok: bool, extra: Value) -> Outcome {
    let mut doc = json!({
        "module": module,
        "property": property,
        "verdict": Verdict::from_bool(ok),
    });
    if let Value::Object(m) = extra {
        doc.as_object_mut().expect("object").extend(m);
    }
    Outcome { doc, code: if ok { 0 } else { 1 } }
}

fn experiment(s: &SurfaceArgs, kind: Option<DegreeKind>, degree: Option<usize>) -> Result<ExperimentConfig> {
    if let Some(path) = &s.config {
        return ExperimentConfig::load(path);
    }
    let group = s.group.as_deref().ok_or_else(|| Error::Config("--group or --config is required".into()))?;
    let function = s.function.as_deref().ok_or_else(|| Error::Config("--function or --config is required".into()))?;
    let group: GroupSpec = group.parse()?;
    let split = |v: &Option<String>| v.as_ref().map(|t| t.split(';').map(|x| x.trim().to_string()).collect());
    Ok(ExperimentConfig {
        group,
        function: FunctionSpec::from_flag(function)?,
        check: CheckConfig {
            kind: kind.unwrap_or(DegreeKind::Poly),
            degree: degree.unwrap_or(1),
            radius: s.radius,
            coeff_bound: s.coeff_bound,
            seed: s.seed,
            base_samples: s.base_samples,
            steps: split(&s.steps),
            bases: split(&s.bases),
            tolerance: s.tolerance,
            triangular: s.triangular,
            all_witnesses: s.all_witnesses,
        },
        output: None,
    })
}

fn params_doc(cfg: &ExperimentConfig, report: &mut CheckReport) {
    report.params.radius = Some(cfg.check.radius);
    report.params.coeff_bound = Some(cfg.check.coeff_bound);
    report.params.seed = Some(cfg.check.seed);
}

fn parse_vector(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|t| t.trim().parse::<Rational>().map_err(|e| Error::Parse(e.to_string()))).collect()
}

fn parse_orders(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad order `{t}`")))).collect()
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.to_rows() })
}

fn load_rep(path: &Path) -> Result<MatrixRep> {
    MatrixRep::parse(&std::fs::read_to_string(path)?)
}

fn execute(cmd: &Command) -> Result<(Outcome, String)> {
    match cmd {
        Command::Check { surface, kind, degree, out } => {
            let cfg = experiment(surface, *kind, *degree)?;
            let f = cfg.function.build(&cfg.group)?;
            let (steps, bases) = cfg.surface()?;
            let mut report = check_degree(&f, cfg.check.kind, cfg.check.degree, &steps, &bases, &cfg.options())?;
            params_doc(&cfg, &mut report);
            let property = match cfg.check.kind {
                DegreeKind::Poly => "polynomial",
                DegreeKind::Semipoly => "semipolynomial",
            };
            let extra = json!({ "function": f.label() });
            let target = cfg.output.clone().unwrap_or_else(|| out.out.clone());
            Ok((report_doc("func-calc", property, &report, extra), target))
        }
        Command::Degree { surface, kind, max_degree, out } => {
            let cfg = experiment(surface, *kind, None)?;
            let f = cfg.function.build(&cfg.group)?;
            let (steps, bases) = cfg.surface()?;
            let d = estimate_degree(&f, *max_degree, cfg.check.kind, &steps, &bases)?;
            let extra = json!({
                "function": f.label(),
                "kind": cfg.check.kind,
                "max_degree": max_degree,
                "degree": d,
                "params": { "radius": cfg.check.radius, "coeff_bound": cfg.check.coeff_bound, "seed": cfg.check.seed },
            });
            Ok((plain_doc("func-calc", "degree-estimate", d.is_some(), extra), out.out.clone()))
        }
        Command::Montel { surface, mode, generators, m, orders, samples, window, out } => {
            let cfg = experiment(surface, None, None)?;
            let f = cfg.function.build(&cfg.group)?;
            let (_, bases) = cfg.surface()?;
            let e = match generators {
                Some(list) => cfg.group.parse_element_list(list)?,
                None => cfg.group.generators()?,
            };
            let orders = || -> Result<Vec<usize>> {
                orders.as_deref().map(parse_orders).unwrap_or_else(|| Ok(vec![2; e.len()]))
            };
            let outcome = match mode {
                MontelMode::Poly => {
                    let st = StepSurface {
                        radius: cfg.check.radius,
                        coeff_bound: cfg.check.coeff_bound,
                        samples: *samples,
                        seed: cfg.check.seed,
                    };
                    let r = montel::montel_polynomial_check(&f, &e, *m, &st, &bases, &cfg.options())?;
                    // the implication fails only if the hypothesis holds and the conclusion does not
                    let ok = !r.hypothesis.passed() || r.conclusion.passed();
                    let extra = json!({
                        "function": f.label(),
                        "hypothesis": r.hypothesis.to_json(),
                        "conclusion": r.conclusion.to_json(),
                    });
                    plain_doc("montel", "generator-set-polynomial", ok, extra)
                }
                MontelMode::Mck => {
                    let r = montel::mck_degree_bound(&f, &e, &orders()?, &bases, 1)?;
                    report_doc("montel", "order-degree-bound", &r, json!({ "function": f.label() }))
                }
                MontelMode::Bounded => {
                    let r = montel::bounded_montel_check(&f, &e, &orders()?, *window, &bases)?;
                    report_doc("montel", "bounded-constant", &r, json!({ "function": f.label() }))
                }
                MontelMode::FiniteOrder => {
                    let r = montel::finite_order_fixed_check(&f, *window)?;
                    report_doc("montel", "finite-order-constant", &r, json!({ "function": f.label() }))
                }
            };
            Ok((outcome, out.out.clone()))
        }
        Command::Rep { rep: path, op, degree, max_word_length, out } => {
            let r = load_rep(path)?;
            let outcome = match op {
                RepOp::Fixed => plain_doc(
                    "rep-analysis",
                    "fixed-subspace",
                    true,
                    json!({ "subspace": subspace_json(&rep::fixed_subspace(&r)?) }),
                ),
                RepOp::Sp => {
                    let s = rep::sp_subspace(&r, *degree, *max_word_length)?;
                    let extra = json!({
                        "degree": degree,
                        "subspace": subspace_json(&s.space),
                        "used_length": s.used_length,
                        "stabilized": s.stabilized,
                    });
                    plain_doc("rep-analysis", "semipolynomial-subspace", true, extra)
                }
                RepOp::P => {
                    let s = rep::p_subspace(&r, *degree)?;
                    plain_doc(
                        "rep-analysis",
                        "polynomial-subspace",
                        true,
                        json!({ "degree": degree, "subspace": subspace_json(&s) }),
                    )
                }
                RepOp::SpEqualsP => report_doc(
                    "rep-analysis",
                    "sp-equals-p",
                    &rep::verify_sp_equals_p(&r, *max_word_length)?,
                    json!({}),
                ),
                RepOp::Classify => {
                    let c = rep::classify_one_rep(&r, *degree, *max_word_length)?;
                    plain_doc("rep-analysis", "one-rep-classification", true, json!({ "degree": degree, "class": c }))
                }
                RepOp::Anticommute => report_doc(
                    "rep-analysis",
                    "anticommutation",
                    &rep::verify_anticommutation(&r, *max_word_length)?,
                    json!({}),
                ),
            };
            Ok((outcome, out.out.clone()))
        }
        Command::OrbitRank { surface, shifts, out } => {
            let cfg = experiment(surface, None, None)?;
            let f = cfg.function.build(&cfg.group)?;
            let (_, bases) = cfg.surface()?;
            let shifts = cfg.group.parse_element_list(shifts)?;
            let rank = quasipoly::orbit_rank(&f, &shifts, &bases)?;
            let extra = json!({
                "function": f.label(),
                "rank_lower_bound": rank,
                "shifts": shifts.len(),
                "bases": bases.len(),
                "note": format!("rank >= {rank} on this window"),
            });
            Ok((plain_doc("quasipoly", "orbit-rank", true, extra), out.out.clone()))
        }
        Command::Growth { surface, h, k, out } => {
            let cfg = experiment(surface, None, None)?;
            let f = cfg.function.build(&cfg.group)?;
            let h = cfg.group.parse_element(h)?;
            let g = quasipoly::growth_probe(&f, &h, *k)?;
            let extra = json!({
                "function": f.label(),
                "h": cfg.group.format_element(&h),
                "values": g.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "min_poly_degree": g.min_poly_degree,
            });
            Ok((plain_doc("quasipoly", "growth", g.min_poly_degree.is_some(), extra), out.out.clone()))
        }
        Command::Matelem { rep: path, x, zeta, degree, radius, out } => {
            let r = load_rep(path)?;
            let f = quasipoly::matrix_element(&r, &parse_vector(x)?, &parse_vector(zeta)?)?;
            let spec = r.word_group();
            let steps = spec.ball(1, 1)?;
            let bases = spec.ball(*radius, *radius)?;
            let mut report = crate::calculus::check_polynomial(&f, *degree, &steps, &bases, &CheckOptions::default())?;
            report.params.max_word_length = Some(*radius);
            let extra = json!({
                "function": f.label(),
                "certified": quasipoly::certify_degree_via_rep(&r, *degree)?,
            });
            Ok((report_doc("quasipoly", "matrix-element-polynomial", &report, extra), out.out.clone()))
        }
        Command::Demo { name, out } => Ok((run_demo(*name)?, out.out.clone())),
        Command::Selftest { out } => {
            let results = crate::selftest::run_all();
            let ok = results.iter().all(|r| r.passed);
            let extra = json!({ "results": results });
            Ok((plain_doc("cli", "selftest", ok, extra), out.out.clone()))
        }
    }
}

fn run_demo(name: Demo) -> Result<Outcome> {
    use constructions::*;
    Ok(match name {
        Demo::Heisenberg => {
            let f = heisenberg_example();
            let spec = GroupSpec::HeisenbergRational;
            let steps = spec.ball(2, 2)?;
            let opts = CheckOptions::default();
            let sp1 = check_degree(&f, DegreeKind::Semipoly, 1, &steps, &steps, &opts)?;
            let p1 = check_degree(&f, DegreeKind::Poly, 1, &steps, &steps, &opts)?;
            let ok = sp1.passed() && !p1.passed();
            plain_doc(
                "constructions",
                "heisenberg-semipolynomial-not-polynomial",
                ok,
                json!({ "semipoly_1": sp1.to_json(), "poly_1": p1.to_json() }),
            )
        }
        Demo::Freeproduct => {
            let f = freeproduct_counterexample(AlphaSequence::Factorial);
            let spec = GroupSpec::FreeProdZZ2;
            let steps = spec.parse_element_list("a; b")?;
            let sp = check_degree(&f, DegreeKind::Semipoly, 1, &steps, &spec.ball(4, 3)?, &CheckOptions::default())?;
            let g = quasipoly::growth_probe(&f, &spec.parse_element("a b")?, 8)?;
            let ok = sp.passed() && g.min_poly_degree.is_none();
            let extra = json!({
                "second_differences": sp.to_json(),
                "values_along_ab": g.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "min_poly_degree": g.min_poly_degree,
            });
            plain_doc("constructions", "freeproduct-not-semipolynomial", ok, extra)
        }
        Demo::Infgen => {
            let f = infgen_counterexample();
            let spec = GroupSpec::IntDirectSum;
            let identity = [spec.identity()];
            let mut fails = Vec::new();
            for k in 0..=5u32 {
                let r = check_degree(
                    &f,
                    DegreeKind::Poly,
                    k as usize,
                    &infgen_block_steps(k),
                    &identity,
                    &CheckOptions::default(),
                )?;
                fails.push(!r.passed());
            }
            let ok = fails.iter().all(|&b| b);
            plain_doc("constructions", "infgen-not-polynomial", ok, json!({ "degree_0_to_5_fail": fails }))
        }
        Demo::Gl | Demo::Triangular => {
            let (f, pts) = if name == Demo::Gl {
                (gl_polynomial_demo(2, vec![0.5, -1.0, 0.25, 1.0])?, GroupSpec::GLFloat { n: 2 }.sample(20, 1)?)
            } else {
                let terms =
                    vec![FloatTerm { coeff: 1.0, exps: vec![2, 1] }, FloatTerm { coeff: -0.5, exps: vec![0, 1] }];
                (triangular_polynomial_demo(2, terms)?, triangular_sample(2, 20, 1)?)
            };
            let opts = CheckOptions::with_tolerance(1e-6);
            let p3 = check_degree(&f, DegreeKind::Poly, 3, &pts[..8], &pts, &opts)?;
            let p2 = check_degree(&f, DegreeKind::Poly, 2, &pts[..8], &pts, &opts)?;
            let ok = p3.passed() && !p2.passed();
            plain_doc(
                "constructions",
                "matrix-group-polynomial",
                ok,
                json!({ "function": f.label(), "poly_3": p3.to_json(), "poly_2": p2.to_json() }),
            )
        }
        Demo::RationalFit => {
            let f =
                classical_polynomial(&GroupSpec::RationalAdditive, constructions::parse_exact_terms("1@2;-1/2@1")?)?;
            report_doc("constructions", "rational-polynomial-fit", &rational_fit_check(&f, 2, 6)?, json!({}))
        }
    })
}

fn write_doc(doc: &Value, target: &str) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("report serializes") + "\n";
    if target == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
    } else {
        std::fs::write(target, text)?;
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command).and_then(|(o, target)| write_doc(&o.doc, &target).map(|_| o.code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
