//! Job files and reports.
//!
//! A job is a JSON object:
//!
//! ```json
//! {
//!   "variables": ["x", "y", "z"],
//!   "task": "link-euler-odd",
//!   "polynomials": { "P": "z*x^2 + z*y^2 + y^3" },
//!   "weights": [1, 1, 1],
//!   "weighted_degree": 3
//! }
//! ```
//!
//! `weights` and `weighted_degree` either apply to every polynomial or are
//! objects keyed by polynomial name. Other optional keys: `delta_sign`
//! (`"+"` or `"-"`), `milnor_ab_asserted`, `k_max`, `oracle`, `chi_MF` and
//! `oracle_radius` (a rational string such as `"1/4"`).
//!
//! A report echoes the task and the canonical form of every input, then
//! lists outputs, consistency rows and notes. Keys are emitted in a fixed
//! order so that two runs differ at most in `timing_ms`.

use std::time::Instant;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use realdeg_core::degree::{germ_algebra, jacobian_determinant, local_degree_with, Functional, MapGerm};
use realdeg_core::link::{link_euler, link_euler_odd, szafraniec_setup, variety_link_euler, DEFAULT_K_MAX};
use realdeg_core::milnor::{
    aoki_semibranches, collect_witnesses, euler_mod2, fukui_d, isolated_milnor_chi, khimshiashvili_chi, link_table,
    milnor_chi_from_link, verify_all, DeltaSign, LinkMethod, MilnorInvariants, VerifyInput,
};
use realdeg_core::{gradient, parse_polynomial, parse_rational, variables, Polynomial, TermOrder, WeightedType};

use crate::oracle::{oracle_degree, OracleConfig};

pub const ENGINE: &str = concat!("realdeg ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Degree,
    LinkEuler,
    LinkEulerOdd,
    VarietyLink,
    Khimshiashvili,
    IsolatedMilnor,
    Fukui,
    Aoki,
    Mod2,
    Verify,
}

impl Task {
    pub const ALL: [Task; 10] = [
        Task::Degree,
        Task::LinkEuler,
        Task::LinkEulerOdd,
        Task::VarietyLink,
        Task::Khimshiashvili,
        Task::IsolatedMilnor,
        Task::Fukui,
        Task::Aoki,
        Task::Mod2,
        Task::Verify,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Task::Degree => "degree",
            Task::LinkEuler => "link-euler",
            Task::LinkEulerOdd => "link-euler-odd",
            Task::VarietyLink => "variety-link",
            Task::Khimshiashvili => "khimshiashvili",
            Task::IsolatedMilnor => "isolated-milnor",
            Task::Fukui => "fukui",
            Task::Aoki => "aoki",
            Task::Mod2 => "mod2",
            Task::Verify => "verify",
        }
    }

    pub fn parse(s: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

/// Malformed job: bad JSON, a missing or mistyped key, or a polynomial that
/// does not parse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobError {
    pub code: &'static str,
    pub message: String,
    pub polynomial: Option<String>,
    pub column: Option<usize>,
}

impl JobError {
    fn malformed(message: impl Into<String>) -> Self {
        JobError { code: "MALFORMED_JOB", message: message.into(), polynomial: None, column: None }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("code".into(), json!(self.code));
        m.insert("message".into(), json!(self.message));
        if let Some(p) = &self.polynomial {
            m.insert("polynomial".into(), json!(p));
        }
        if let Some(c) = self.column {
            m.insert("column".into(), json!(c));
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub variables: Vec<String>,
    pub task: Task,
    /// Name and text, in file order.
    pub polynomials: Vec<(String, String)>,
    pub weights: Vec<(String, Vec<u32>)>,
    pub weighted_degree: Vec<(String, u32)>,
    pub delta_sign: Option<DeltaSign>,
    pub milnor_ab_asserted: bool,
    pub k_max: u32,
    pub oracle: bool,
    pub chi_mf: Option<i64>,
    pub oracle_radius: Option<String>,
}

const KEYS: [&str; 12] = [
    "variables",
    "task",
    "polynomials",
    "weights",
    "weighted_degree",
    "delta_sign",
    "milnor_ab_asserted",
    "k_max",
    "oracle",
    "chi_MF",
    "oracle_radius",
    "comment",
];

fn as_u32(v: &Value, what: &str) -> Result<u32, JobError> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| JobError::malformed(format!("{} must be a non-negative integer", what)))
}

fn weight_list(v: &Value, what: &str) -> Result<Vec<u32>, JobError> {
    let arr = v.as_array().ok_or_else(|| JobError::malformed(format!("{} must be an array", what)))?;
    arr.iter().map(|x| as_u32(x, what)).collect()
}

/// Either one value for every polynomial or an object keyed by name.
fn per_polynomial<T>(
    v: Option<&Value>,
    names: &[String],
    key: &str,
    one: impl Fn(&Value, &str) -> Result<T, JobError>,
    is_shared: impl Fn(&Value) -> bool,
) -> Result<Vec<(String, T)>, JobError>
where
    T: Clone,
{
    let Some(v) = v else { return Ok(Vec::new()) };
    if is_shared(v) {
        let t = one(v, key)?;
        return Ok(names.iter().map(|n| (n.clone(), t.clone())).collect());
    }
    let obj = v.as_object().ok_or_else(|| JobError::malformed(format!("`{}` has the wrong type", key)))?;
    obj.iter()
        .map(|(name, x)| {
            if !names.contains(name) {
                return Err(JobError::malformed(format!("`{}` names unknown polynomial `{}`", key, name)));
            }
            Ok((name.clone(), one(x, key)?))
        })
        .collect()
}

impl JobSpec {
    pub fn from_json_str(text: &str) -> Result<JobSpec, JobError> {
        let v: Value = serde_json::from_str(text).map_err(|e| JobError::malformed(format!("invalid JSON: {}", e)))?;
        JobSpec::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<JobSpec, JobError> {
        let obj = v.as_object().ok_or_else(|| JobError::malformed("a job must be a JSON object"))?;
        if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(JobError::malformed(format!("unknown key `{}`", k)));
        }
        let variables: Vec<String> = obj
            .get("variables")
            .and_then(Value::as_array)
            .ok_or_else(|| JobError::malformed("`variables` must be an array of names"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| JobError::malformed("variable names must be strings")))
            .collect::<Result<_, _>>()?;
        if variables.is_empty() {
            return Err(JobError::malformed("`variables` is empty"));
        }
        for (i, name) in variables.iter().enumerate() {
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(JobError::malformed(format!("`{}` is not a valid variable name", name)));
            }
            if variables[..i].contains(name) {
                return Err(JobError::malformed(format!("variable `{}` is declared twice", name)));
            }
        }
        let task_name =
            obj.get("task").and_then(Value::as_str).ok_or_else(|| JobError::malformed("`task` must be a string"))?;
        let task = Task::parse(task_name).ok_or_else(|| JobError {
            code: "UNKNOWN_TASK",
            message: format!("unknown task `{}`", task_name),
            polynomial: None,
            column: None,
        })?;
        let polys = obj
            .get("polynomials")
            .and_then(Value::as_object)
            .ok_or_else(|| JobError::malformed("`polynomials` must be an object of named strings"))?;
        if polys.is_empty() {
            return Err(JobError::malformed("`polynomials` is empty"));
        }
        let polynomials: Vec<(String, String)> = polys
            .iter()
            .map(|(k, x)| {
                x.as_str()
                    .map(|s| (k.clone(), s.to_string()))
                    .ok_or_else(|| JobError::malformed(format!("polynomial `{}` must be a string", k)))
            })
            .collect::<Result<_, _>>()?;
        let names: Vec<String> = polynomials.iter().map(|(n, _)| n.clone()).collect();
        let weights = per_polynomial(obj.get("weights"), &names, "weights", weight_list, Value::is_array)?;
        let weighted_degree =
            per_polynomial(obj.get("weighted_degree"), &names, "weighted_degree", as_u32, Value::is_number)?;
        let delta_sign = match obj.get("delta_sign") {
            None => None,
            Some(x) => Some(match x.as_str() {
                Some("+") | Some("positive") => DeltaSign::Positive,
                Some("-") | Some("negative") => DeltaSign::Negative,
                _ => return Err(JobError::malformed("`delta_sign` must be \"+\" or \"-\"")),
            }),
        };
        let flag = |key: &str| -> Result<bool, JobError> {
            match obj.get(key) {
                None => Ok(false),
                Some(x) => x.as_bool().ok_or_else(|| JobError::malformed(format!("`{}` must be a boolean", key))),
            }
        };
        let k_max = match obj.get("k_max") {
            None => DEFAULT_K_MAX,
            Some(x) => as_u32(x, "`k_max`")?,
        };
        let chi_mf = match obj.get("chi_MF") {
            None => None,
            Some(x) => Some(x.as_i64().ok_or_else(|| JobError::malformed("`chi_MF` must be an integer"))?),
        };
        let oracle_radius = match obj.get("oracle_radius") {
            None => None,
            Some(x) => Some(
                x.as_str().ok_or_else(|| JobError::malformed("`oracle_radius` must be a string \"p/q\""))?.to_string(),
            ),
        };
        Ok(JobSpec {
            variables,
            task,
            polynomials,
            weights,
            weighted_degree,
            delta_sign,
            milnor_ab_asserted: flag("milnor_ab_asserted")?,
            k_max,
            oracle: flag("oracle")?,
            chi_mf,
            oracle_radius,
        })
    }
}

/// Run-time switches from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Also run the geometric oracle, whatever the job says.
    pub oracle: bool,
    /// Term order for the `degree` task; the global order is for debugging.
    pub order: TermOrder,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { oracle: false, order: TermOrder::LocalNegDegRevLex }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Malformed,
    EngineError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Malformed => 1,
            Status::EngineError => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Malformed => "malformed_input",
            Status::EngineError => "engine_error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub body: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The report without its timing field.
    pub fn without_timing(&self) -> Value {
        let mut v = self.body.clone();
        if let Some(o) = v.as_object_mut() {
            o.remove("timing_ms");
        }
        v
    }
}

struct Parsed {
    vars: Vec<String>,
    polys: Vec<(String, Polynomial)>,
}

impl Parsed {
    fn only(&self, task: Task) -> Result<&Polynomial, JobError> {
        match self.polys.as_slice() {
            [(_, p)] => Ok(p),
            _ => Err(JobError::malformed(format!("task `{}` takes exactly one polynomial", task.as_str()))),
        }
    }

    fn all(&self) -> Vec<Polynomial> {
        self.polys.iter().map(|(_, p)| p.clone()).collect()
    }
}

fn parse_inputs(job: &JobSpec) -> Result<Parsed, JobError> {
    let vars = variables(&job.variables);
    let polys = job
        .polynomials
        .iter()
        .map(|(name, text)| {
            parse_polynomial(text, &vars).map(|p| (name.clone(), p)).map_err(|e| JobError {
                code: e.code(),
                message: e.to_string(),
                polynomial: Some(name.clone()),
                column: syntax_column(&e),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(Parsed { vars: job.variables.clone(), polys })
}

fn syntax_column(e: &realdeg_core::Error) -> Option<usize> {
    use realdeg_core::Error as E;
    match e {
        E::Syntax { column, .. }
        | E::UnknownVariable { column, .. }
        | E::NonIntegerExponent { column }
        | E::NegativeExponent { column } => Some(*column),
        _ => None,
    }
}

/// The weighted type declared for `name`. A missing degree is read off the
/// first term; missing weights default to one.
fn weighted_type(job: &JobSpec, name: &str, p: &Polynomial) -> Result<Option<WeightedType>, JobError> {
    let w = job.weights.iter().find(|(n, _)| n == name).map(|(_, w)| w.clone());
    let d = job.weighted_degree.iter().find(|(n, _)| n == name).map(|(_, d)| *d);
    let (w, d) = match (w, d) {
        (None, None) => return Ok(None),
        (Some(w), Some(d)) => (w, d),
        (None, Some(d)) => (vec![1; p.nvars()], d),
        (Some(w), None) => {
            if w.len() != p.nvars() {
                return Err(JobError::malformed(format!("weights of `{}` do not match the variables", name)));
            }
            let Some((m, _)) = p.terms().next() else {
                return Err(JobError::malformed(format!("cannot infer the weighted degree of `{}` = 0", name)));
            };
            let d = u32::try_from(m.weighted_degree(&w))
                .map_err(|_| JobError::malformed(format!("weighted degree of `{}` is too large", name)))?;
            (w, d)
        }
    };
    if w.len() != p.nvars() {
        return Err(JobError::malformed(format!(
            "weights of `{}` have {} entries for {} variables",
            name,
            w.len(),
            p.nvars()
        )));
    }
    WeightedType::new(w, d).map(Some).map_err(|e| JobError::malformed(e.to_string()))
}

fn require_weighted_type(job: &JobSpec, name: &str, p: &Polynomial) -> Result<WeightedType, JobError> {
    weighted_type(job, name, p)?
        .ok_or_else(|| JobError::malformed(format!("task `{}` needs weights or a weighted degree", job.task.as_str())))
}

fn strings(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.to_string())).collect())
}

fn delta_str(d: DeltaSign) -> &'static str {
    match d {
        DeltaSign::Positive => "+",
        DeltaSign::Negative => "-",
    }
}

enum Failure {
    Job(JobError),
    Engine(realdeg_core::Error),
}

impl From<JobError> for Failure {
    fn from(e: JobError) -> Self {
        Failure::Job(e)
    }
}

impl From<realdeg_core::Error> for Failure {
    fn from(e: realdeg_core::Error) -> Self {
        Failure::Engine(e)
    }
}

struct Outcome {
    outputs: Map<String, Value>,
    consistency: Option<Vec<Value>>,
    notes: Vec<String>,
}

struct Runner<'a> {
    job: &'a JobSpec,
    opts: RunOptions,
    oracle_cfg: OracleConfig,
    notes: Vec<String>,
}

impl Runner<'_> {
    fn oracle_wanted(&self) -> bool {
        self.job.oracle || self.opts.oracle
    }

    /// Oracle entry for a germ whose engine degree is `engine`.
    fn oracle_entry(&mut self, label: &str, h: &MapGerm, engine: i64) -> Option<Value> {
        if !self.oracle_wanted() {
            return None;
        }
        if !(2..=3).contains(&h.nvars()) {
            self.notes.push(format!("oracle skipped for {}: only 2 and 3 variables are supported", label));
            return None;
        }
        Some(match oracle_degree(h, &self.oracle_cfg) {
            Ok(d) => {
                if d != engine {
                    self.notes.push(format!("oracle disagrees for {}: engine {}, oracle {}", label, engine, d));
                }
                json!({ "degree": d, "agrees": d == engine })
            }
            Err(e) => json!({ "error": { "code": e.code(), "message": e.to_string() } }),
        })
    }

    fn run(&mut self, parsed: &Parsed) -> Result<Outcome, Failure> {
        let job = self.job;
        let mut out = Map::new();
        let mut consistency = None;
        match job.task {
            Task::Degree => {
                let h = MapGerm::new(parsed.all())?;
                let alg = germ_algebra(&h, self.opts.order)?;
                let deg = local_degree_with(&h, self.opts.order, Functional::Standard)?;
                out.insert("order".into(), json!(if self.opts.order.is_local() { "local" } else { "global" }));
                out.insert("degree".into(), json!(deg));
                out.insert("multiplicity".into(), json!(alg.dimension()));
                out.insert("jacobian".into(), json!(jacobian_determinant(&h).to_string()));
                if let Some(o) = self.oracle_entry("H", &h, deg) {
                    out.insert("oracle".into(), o);
                }
            }
            Task::LinkEuler | Task::LinkEulerOdd => {
                let (name, f) = &parsed.polys[0];
                parsed.only(job.task)?;
                let w = require_weighted_type(job, name, f)?;
                let data = szafraniec_setup(f, &w)?;
                let r = if job.task == Task::LinkEuler { link_euler(f, &w)? } else { link_euler_odd(f, &w)? };
                out.insert("weights".into(), json!(w.weights()));
                out.insert("weighted_degree".into(), json!(w.degree()));
                out.insert("p".into(), json!(data.p));
                out.insert("a".into(), json!(data.a));
                out.insert("omega".into(), json!(data.omega.to_string()));
                out.insert("H1".into(), strings(data.h1.components()));
                out.insert("H2".into(), strings(data.h2.components()));
                out.insert("deg1".into(), json!(r.deg1));
                out.insert("deg2".into(), json!(r.deg2));
                out.insert("sphere_chi".into(), json!(r.sphere_chi));
                out.insert("chi".into(), json!(r.chi));
                if let Some(o) = self.oracle_entry("H1", &data.h1, r.deg1) {
                    out.insert("oracle_H1".into(), o);
                }
                if let Some(o) = self.oracle_entry("H2", &data.h2, r.deg2) {
                    out.insert("oracle_H2".into(), o);
                }
            }
            Task::VarietyLink => {
                let r = variety_link_euler(&parsed.all(), job.k_max)?;
                out.insert("chi".into(), json!(r.chi));
                out.insert("k".into(), json!(r.k));
                out.insert("degree".into(), json!(r.degree));
            }
            Task::Khimshiashvili => {
                let f = parsed.only(job.task)?;
                let delta =
                    job.delta_sign.ok_or_else(|| JobError::malformed("task `khimshiashvili` needs `delta_sign`"))?;
                let h = gradient(f)?;
                let deg = realdeg_core::local_degree(&h)?;
                out.insert("delta_sign".into(), json!(delta_str(delta)));
                out.insert("gradient_degree".into(), json!(deg));
                out.insert("chi".into(), json!(khimshiashvili_chi(f, delta)?));
                if let Some(o) = self.oracle_entry("grad f", &h, deg) {
                    out.insert("oracle".into(), o);
                }
            }
            Task::IsolatedMilnor => {
                out.insert("chi".into(), json!(isolated_milnor_chi(&parsed.all())?));
            }
            Task::Fukui => {
                let f = parsed.only(job.task)?;
                let delta = job.delta_sign.ok_or_else(|| JobError::malformed("task `fukui` needs `delta_sign`"))?;
                out.insert("delta_sign".into(), json!(delta_str(delta)));
                out.insert("D".into(), json!(fukui_d(f, delta)?));
            }
            Task::Aoki => {
                let f_n = parsed.polys.iter().find(|(n, _)| n == "f_n").map(|(_, p)| p);
                let phi: Vec<Polynomial> =
                    parsed.polys.iter().filter(|(n, _)| n != "f_n").map(|(_, p)| p.clone()).collect();
                if phi.is_empty() {
                    return Err(JobError::malformed("task `aoki` needs at least one component besides `f_n`").into());
                }
                out.insert("f_n".into(), json!(if f_n.is_some() { "given" } else { "sum of squares" }));
                out.insert("semibranches".into(), json!(aoki_semibranches(&phi, f_n)?));
            }
            Task::Mod2 => {
                out.insert("value".into(), json!(euler_mod2(&parsed.all())?));
            }
            Task::Verify => {
                let rows = self.verify(parsed, &mut out)?;
                consistency = Some(rows);
            }
        }
        Ok(Outcome { outputs: out, consistency, notes: std::mem::take(&mut self.notes) })
    }

    fn verify(&mut self, parsed: &Parsed, out: &mut Map<String, Value>) -> Result<Vec<Value>, Failure> {
        let job = self.job;
        let comps = parsed.all();
        let n = parsed.vars.len();
        let k = comps.len();
        let weights =
            parsed.polys.iter().map(|(name, p)| weighted_type(job, name, p)).collect::<Result<Vec<_>, _>>()?;
        if comps.iter().any(|f| !f.constant_term().is_zero()) {
            let j = comps.iter().position(|f| !f.constant_term().is_zero()).unwrap_or(0);
            return Err(realdeg_core::Error::ConstantTerm { component: j }.into());
        }
        let (links, fibres, notes) = collect_witnesses(&comps, &weights, job.k_max);
        self.notes.extend(notes);
        let name = |j: usize| parsed.polys[j].0.clone();

        let chi_mf = job.chi_mf.or_else(|| links.first().and_then(|w| milnor_chi_from_link(w.chi, n).ok()));
        out.insert("n".into(), json!(n));
        out.insert("k".into(), json!(k));
        out.insert("milnor_ab_asserted".into(), json!(job.milnor_ab_asserted));
        out.insert("chi_MF".into(), chi_mf.map_or(Value::Null, |c| json!(c)));
        out.insert(
            "chi_MF_source".into(),
            json!(match (job.chi_mf, chi_mf) {
                (Some(_), _) => "job",
                (None, Some(_)) => "derived from the first link",
                (None, None) => "unknown",
            }),
        );
        let link_rows: Vec<Value> = links
            .iter()
            .map(|w| {
                let mut m = Map::new();
                m.insert("polynomial".into(), json!(name(w.component)));
                m.insert("chi".into(), json!(w.chi));
                match &w.method {
                    LinkMethod::SmoothSphere => {
                        m.insert("method".into(), json!("smooth"));
                    }
                    LinkMethod::Szafraniec { deg1, deg2 } => {
                        m.insert("method".into(), json!("weighted-homogeneous"));
                        m.insert("deg1".into(), json!(deg1));
                        m.insert("deg2".into(), json!(deg2));
                    }
                    LinkMethod::SumOfSquares { k, degree } => {
                        m.insert("method".into(), json!("sum-of-squares"));
                        m.insert("k".into(), json!(k));
                        m.insert("degree".into(), json!(degree));
                    }
                }
                Value::Object(m)
            })
            .collect();
        out.insert("links".into(), Value::Array(link_rows));
        out.insert(
            "fibres".into(),
            Value::Array(
                fibres
                    .iter()
                    .map(|w| json!({ "polynomial": name(w.component), "delta_sign": delta_str(w.delta), "chi": w.chi }))
                    .collect(),
            ),
        );
        if let (true, Some(c)) = (job.milnor_ab_asserted, chi_mf) {
            let inv = MilnorInvariants { n, k, chi_mf: c, milnor_ab_asserted: true };
            if let Ok(t) = link_table(&inv) {
                out.insert(
                    "link_table".into(),
                    Value::Array((0..=k).map(|l| json!({ "l": l, "chi": t.chi(l) })).collect()),
                );
            }
        }

        let report = verify_all(&VerifyInput {
            n,
            k,
            chi_mf: job.chi_mf,
            milnor_ab_asserted: job.milnor_ab_asserted,
            links,
            fibres,
        });
        self.notes.extend(report.notes.iter().cloned());
        out.insert("all_pass".into(), json!(report.all_pass()));
        out.insert("hypothesis_failure".into(), json!(report.has_hypothesis_failure()));
        Ok(report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "relation": r.relation,
                    "expected": r.expected,
                    "computed": r.computed,
                    "verdict": r.verdict.as_str(),
                })
            })
            .collect())
    }
}

fn header(task: Option<Task>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("engine".into(), json!(ENGINE));
    m.insert("task".into(), task.map_or(Value::Null, |t| json!(t.as_str())));
    m
}

fn finish(mut body: Map<String, Value>, status: Status, start: Instant) -> Report {
    body.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    Report { status, body: Value::Object(body) }
}

fn malformed(task: Option<Task>, e: JobError, start: Instant) -> Report {
    let mut body = header(task);
    body.insert("status".into(), json!(Status::Malformed.as_str()));
    body.insert("error".into(), e.to_json());
    finish(body, Status::Malformed, start)
}

/// Runs a job given as JSON text.
pub fn run_job_text(text: &str, opts: RunOptions) -> Report {
    let start = Instant::now();
    match JobSpec::from_json_str(text) {
        Ok(job) => run_job_from(&job, opts, start),
        Err(e) => malformed(None, e, start),
    }
}

pub fn run_job(job: &JobSpec, opts: RunOptions) -> Report {
    run_job_from(job, opts, Instant::now())
}

fn run_job_from(job: &JobSpec, opts: RunOptions, start: Instant) -> Report {
    let parsed = match parse_inputs(job) {
        Ok(p) => p,
        Err(e) => return malformed(Some(job.task), e, start),
    };
    let mut oracle_cfg = OracleConfig::default();
    if let Some(r) = &job.oracle_radius {
        match parse_rational(r) {
            Ok(q) if q > realdeg_core::rational::int(0) => oracle_cfg.radius = q,
            _ => {
                return malformed(
                    Some(job.task),
                    JobError::malformed("`oracle_radius` must be a positive rational"),
                    start,
                )
            }
        }
    }
    let mut body = header(Some(job.task));
    body.insert("variables".into(), json!(parsed.vars));
    let mut inputs = Map::new();
    for (name, p) in &parsed.polys {
        inputs.insert(name.clone(), json!(p.to_string()));
    }
    body.insert("inputs".into(), Value::Object(inputs));

    let mut runner = Runner { job, opts, oracle_cfg, notes: Vec::new() };
    match runner.run(&parsed) {
        Ok(o) => {
            body.insert("status".into(), json!(Status::Ok.as_str()));
            body.insert("outputs".into(), Value::Object(o.outputs));
            if let Some(rows) = o.consistency {
                body.insert("consistency".into(), Value::Array(rows));
            }
            body.insert("notes".into(), json!(o.notes));
            finish(body, Status::Ok, start)
        }
        Err(Failure::Job(e)) => malformed(Some(job.task), e, start),
        Err(Failure::Engine(e)) => {
            body.insert("status".into(), json!(Status::EngineError.as_str()));
            body.insert("error".into(), json!({ "code": e.code(), "message": e.to_string() }));
            body.insert("notes".into(), json!(runner.notes));
            finish(body, Status::EngineError, start)
        }
    }
}

/// Jobs shipped with the crate, runnable with `--fixture NAME`.
pub const FIXTURES: &[(&str, &str)] = &[
    ("example_9_4", include_str!("../fixtures/example_9_4.json")),
    ("example_9_4_verify", include_str!("../fixtures/example_9_4_verify.json")),
    ("example_9_5", include_str!("../fixtures/example_9_5.json")),
    ("example_9_5_verify", include_str!("../fixtures/example_9_5_verify.json")),
    ("example_9_6", include_str!("../fixtures/example_9_6.json")),
    ("example_9_6_verify", include_str!("../fixtures/example_9_6_verify.json")),
];

/// Fixture text by name, with or without the `.json` suffix.
pub fn fixture(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    FIXTURES.iter().find(|(n, _)| *n == stem).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Report {
        run_job_text(text, RunOptions::default())
    }

    #[test]
    fn degree_job() {
        let r =
            run(r#"{"variables": ["x", "y"], "task": "degree", "polynomials": {"h1": "x^2 - y^2", "h2": "2*x*y"}}"#);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.body["outputs"]["degree"], 2);
        assert_eq!(r.body["outputs"]["multiplicity"], 4);
        assert_eq!(r.body["inputs"]["h1"], "x^2 - y^2");
    }

    #[test]
    fn parse_error_has_column() {
        let r = run(r#"{"variables": ["x", "y"], "task": "degree", "polynomials": {"h": "x +* y"}}"#);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.body["error"]["code"], "SYNTAX_ERROR");
        assert_eq!(r.body["error"]["column"], 4);
        assert_eq!(r.body["error"]["polynomial"], "h");
    }

    #[test]
    fn engine_error_is_structured() {
        let r = run(r#"{"variables": ["x", "y"], "task": "degree", "polynomials": {"a": "x^2", "b": "x*y"}}"#);
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.body["error"]["code"], "NON_ISOLATED_ZERO");
    }

    #[test]
    fn malformed_jobs() {
        for text in [
            "not json",
            "[]",
            r#"{"task": "degree", "polynomials": {"a": "x"}}"#,
            r#"{"variables": ["x"], "task": "degree", "polynomials": {}}"#,
            r#"{"variables": ["x"], "task": "degree", "polynomials": {"a": "x"}, "extra": 1}"#,
            r#"{"variables": ["x"], "task": "khimshiashvili", "polynomials": {"a": "x^2"}}"#,
            r#"{"variables": ["x", "x"], "task": "degree", "polynomials": {"a": "x"}}"#,
            r#"{"variables": ["x"], "task": "link-euler", "polynomials": {"a": "x^2"}}"#,
            r#"{"variables": ["x"], "task": "degree", "polynomials": {"a": "x"}, "weights": {"b": [1]}}"#,
        ] {
            let r = run(text);
            assert_eq!(r.exit_code(), 1, "{}", text);
            assert_eq!(r.body["error"]["code"], "MALFORMED_JOB", "{}", text);
        }
        let r = run(r#"{"variables": ["x"], "task": "nope", "polynomials": {"a": "x"}}"#);
        assert_eq!(r.body["error"]["code"], "UNKNOWN_TASK");
    }

    #[test]
    fn weight_inference() {
        let r = run(r#"{"variables": ["x", "y", "z"], "task": "link-euler-odd",
                "polynomials": {"P": "z*x^2 + z*y^2 + y^3"}, "weights": [1, 1, 1]}"#);
        assert_eq!(r.body["outputs"]["weighted_degree"], 3);
        assert_eq!(r.body["outputs"]["chi"], 2);
        let r = run(r#"{"variables": ["x", "y", "z"], "task": "link-euler-odd",
                "polynomials": {"P": "z*x^2 + z*y^2 + y^3"}, "weighted_degree": 3}"#);
        assert_eq!(r.body["outputs"]["weights"], json!([1, 1, 1]));
    }

    #[test]
    fn fixtures_parse() {
        for (name, text) in FIXTURES {
            JobSpec::from_json_str(text).unwrap_or_else(|e| panic!("{}: {:?}", name, e));
        }
        assert!(fixture("example_9_5.json").is_some());
        assert!(fixture("example_9_7").is_none());
    }
}
