//! Input documents, JSON output and the command implementations behind the
//! `toric-lagrangian` binary.
//!
//! Commands return a [`CommandOutput`] instead of printing so they can be
//! tested directly. Exit codes: 0 success, 1 mathematical failure, 2 input
//! error.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construction::{build_construction, report_text, ConstructionReport, SystemVerdict};
use crate::delzant::{DelzantVerdict, FailureKind};
use crate::exactlin::Rational;
use crate::quadrics::{stack, validate, QuadricError, QuadricSystem, ValidationVerdict};
use crate::sampler::{verify_batch, SamplerError, Tolerances};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid rational {0:?}: expected p, -p or p/q with q > 0")]
    Rational(String),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{system}: {source}")]
    System { system: &'static str, source: QuadricError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Parses `"p"`, `"-p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational, InputError> {
    let err = || InputError::Rational(s.to_string());
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(err());
    }
    let p: BigInt = num.parse().map_err(|_| err())?;
    let q: BigInt = match den {
        Some(q) if digits(q) => q.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::from(1),
    };
    if q == BigInt::from(0) {
        return Err(err());
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    rows: Vec<Vec<String>>,
    rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<RawSystem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<RawSystem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

/// A Γ/Δ pair in `C^m`. A missing system is the empty system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub m: usize,
    pub gamma: Option<SystemSpec>,
    pub delta: Option<SystemSpec>,
}

fn parse_system(raw: RawSystem) -> Result<SystemSpec, InputError> {
    let rows = raw
        .rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect::<Result<_, _>>()?;
    let rhs = raw.rhs.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
    Ok(SystemSpec { rows, rhs })
}

fn raw_system(spec: &SystemSpec) -> RawSystem {
    RawSystem {
        rows: spec.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        rhs: spec.rhs.iter().map(format_rational).collect(),
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        let doc = InputDocument {
            m: raw.m,
            gamma: raw.gamma.map(parse_system).transpose()?,
            delta: raw.delta.map(parse_system).transpose()?,
        };
        doc.gamma_system()?;
        doc.delta_system()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            m: self.m,
            gamma: self.gamma.as_ref().map(raw_system),
            delta: self.delta.as_ref().map(raw_system),
        };
        serde_json::to_string_pretty(&raw).expect("documents always serialize") + "\n"
    }

    fn system(&self, spec: &Option<SystemSpec>, name: &'static str) -> Result<QuadricSystem, InputError> {
        match spec {
            None => Ok(QuadricSystem::empty(self.m)),
            Some(s) => QuadricSystem::new(self.m, s.rows.clone(), s.rhs.clone())
                .map_err(|source| InputError::System { system: name, source }),
        }
    }

    pub fn gamma_system(&self) -> Result<QuadricSystem, InputError> {
        self.system(&self.gamma, "gamma")
    }

    pub fn delta_system(&self) -> Result<QuadricSystem, InputError> {
        self.system(&self.delta, "delta")
    }
}

/// The ready-made documents for the three special families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Δ only: Lagrangians in `C^m`.
    Cm,
    /// Γ only: the real locus of `CP^{m−1}`.
    Real,
    /// Γ the all-ones quadric, Δ = (1,…,1,0) with rhs 1/2: a Lagrangian in `CP^{m−1}`.
    Projective,
}

fn ones_row(m: usize) -> Vec<Rational> {
    vec![Rational::from_integer(1.into()); m]
}

pub fn example_document(name: ExampleName, m: usize) -> InputDocument {
    let sphere = SystemSpec { rows: vec![ones_row(m)], rhs: vec![Rational::from_integer(1.into())] };
    match name {
        ExampleName::Cm => InputDocument { m, gamma: None, delta: Some(sphere) },
        ExampleName::Real => InputDocument { m, gamma: Some(sphere), delta: None },
        ExampleName::Projective => {
            let mut row = ones_row(m);
            if let Some(last) = row.last_mut() {
                *last = Rational::from_integer(0.into());
            }
            let half = SystemSpec {
                rows: vec![row],
                rhs: vec![Rational::new(1.into(), 2.into())],
            };
            InputDocument { m, gamma: Some(sphere), delta: Some(half) }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn input_error(e: impl std::fmt::Display) -> Self {
        CommandOutput { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Gamma,
    Delta,
    Stacked,
}

fn rats(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn ints(v: &[BigInt]) -> Value {
    Value::from(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

pub fn validation_json(v: &ValidationVerdict) -> Value {
    let lattice = v.cond_c.lattice.as_ref();
    json!({
        "cond_a": { "pass": v.cond_a.pass, "witness": v.cond_a.witness.as_deref().map(rats) },
        "cond_b": { "pass": v.cond_b.pass, "violating_subset": v.cond_b.violating_subset },
        "cond_c": {
            "pass": v.cond_c.pass,
            "rank": v.cond_c.rank,
            "lattice_basis": lattice.map(|l| l.lattice.basis().iter().map(|b| rats(b)).collect::<Vec<_>>()),
            "dual_basis": lattice.map(|l| l.dual_basis.iter().map(|b| rats(b)).collect::<Vec<_>>()),
            "torus_rank": lattice.map(|l| l.torus_rank),
            "two_group_order": lattice.map(|l| l.two_group_order.to_string()),
        },
        "smooth_dim_z": v.smooth_dim_z,
    })
}

pub fn delzant_json(d: &DelzantVerdict) -> Value {
    let failures: Vec<Value> = d
        .failures
        .iter()
        .map(|f| {
            let (kind, abs_det, ratio) = match &f.kind {
                FailureKind::NonSimple => ("non_simple", None, None),
                FailureKind::Determinant { abs_det, ratio } => {
                    ("determinant", Some(abs_det.to_string()), Some(format_rational(ratio)))
                }
            };
            json!({
                "point": rats(&f.point),
                "active_set": f.active_set,
                "normals": f.normals.iter().map(|n| ints(n)).collect::<Vec<_>>(),
                "kind": kind,
                "abs_det": abs_det,
                "ratio": ratio,
            })
        })
        .collect();
    json!({
        "is_delzant": d.is_delzant,
        "lambda_covolume": d.lambda_covolume.to_string(),
        "vertex_ratios": rats(&d.vertex_ratios),
        "failures": failures,
    })
}

fn system_json(v: &SystemVerdict) -> Value {
    json!({
        "validation": validation_json(&v.validation),
        "delzant": v.delzant.as_ref().map(delzant_json),
        "bounded": v.is_bounded,
    })
}

pub fn report_json(rep: &ConstructionReport) -> Value {
    json!({
        "m": rep.m,
        "n": rep.n,
        "ell": rep.ell,
        "valid": rep.is_valid(),
        "special_case": rep.special_case.name(),
        "failures": rep.failures.iter().map(|f| json!({
            "system": f.system.name(),
            "check": f.check.to_string(),
        })).collect::<Vec<_>>(),
        "verdicts": {
            "gamma": system_json(&rep.gamma),
            "delta": system_json(&rep.delta),
            "stacked": rep.stacked.as_ref().map(system_json),
        },
        "dims": rep.dims.map(|d| json!({
            "Z_gamma": d.z_gamma,
            "V": d.v,
            "S": d.s,
            "N": d.n,
            "V_hat": d.v_hat,
            "N_hat": d.n_hat,
        })),
        "torus": {
            "T_gamma_rank": rep.torus.t_gamma_rank,
            "T_delta_rank": rep.torus.t_delta_rank,
            "D_gamma_order": rep.torus.d_gamma_order.to_string(),
            "D_delta_order": rep.torus.d_delta_order.to_string(),
        },
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn validation_text(name: &str, v: &ValidationVerdict) -> String {
    let mut s = format!("{name}:");
    let mark = |b: bool| if b { "pass" } else { "FAIL" };
    let _ = write!(s, " condition (a) {}", mark(v.cond_a.pass));
    let _ = write!(s, ", condition (b) {}", mark(v.cond_b.pass));
    if let Some(sub) = &v.cond_b.violating_subset {
        let cols: Vec<String> = sub.iter().map(|i| (i + 1).to_string()).collect();
        let _ = write!(s, " (rhs in cone of columns {{{}}})", cols.join(", "));
    }
    let _ = write!(s, ", condition (c) {} (rank {})", mark(v.cond_c.pass), v.cond_c.rank);
    if let Some(d) = v.smooth_dim_z {
        let _ = write!(s, "; dim Z = {d}");
    }
    s
}

pub fn cmd_validate(text: &str, as_json: bool) -> CommandOutput {
    let doc = match InputDocument::parse(text) {
        Ok(d) => d,
        Err(e) => return CommandOutput::input_error(e),
    };
    let gamma = doc.gamma_system().expect("checked at parse");
    let delta = doc.delta_system().expect("checked at parse");
    let g = validate(&gamma);
    let d = validate(&delta);
    let stacked = stack(&gamma, &delta).map(|s| validate(&s));
    let ok = g.all_pass() && d.all_pass() && stacked.as_ref().is_ok_and(|s| s.all_pass());

    let mut stderr = String::new();
    for (name, v) in [("gamma", Some(&g)), ("delta", Some(&d)), ("stacked", stacked.as_ref().ok())] {
        if let Some(v) = v {
            for c in v.failed_conditions() {
                let _ = writeln!(stderr, "{name} fails {c}");
            }
        }
    }
    if let Err(e) = &stacked {
        let _ = writeln!(stderr, "stacked system not formed: {e}");
    }

    let stdout = if as_json {
        pretty(&json!({
            "valid": ok,
            "gamma": validation_json(&g),
            "delta": validation_json(&d),
            "stacked": stacked.as_ref().ok().map(validation_json),
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{}", validation_text("gamma", &g));
        let _ = writeln!(s, "{}", validation_text("delta", &d));
        match &stacked {
            Ok(v) => {
                let _ = writeln!(s, "{}", validation_text("stacked", v));
            }
            Err(e) => {
                let _ = writeln!(s, "stacked: not formed ({e})");
            }
        }
        let _ = writeln!(s, "{}", if ok { "all systems valid" } else { "validation failed" });
        s
    };
    CommandOutput { code: if ok { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr }
}

fn delzant_text(d: &DelzantVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "covolume of Lambda: {}", d.lambda_covolume);
    for f in &d.failures {
        let point: Vec<String> = f.point.iter().map(format_rational).collect();
        let active: Vec<String> = f.active_set.iter().map(|i| (i + 1).to_string()).collect();
        let _ = write!(s, "vertex ({}) facets {{{}}}: ", point.join(", "), active.join(", "));
        match &f.kind {
            FailureKind::NonSimple => {
                let _ = writeln!(s, "non-simple ({} facets meet)", f.active_set.len());
            }
            FailureKind::Determinant { abs_det, ratio } => {
                let _ = writeln!(s, "|det| = {abs_det}, |det|/covolume = {ratio}");
            }
        }
    }
    let _ = writeln!(s, "{}", if d.is_delzant { "Delzant" } else { "not Delzant" });
    s
}

pub fn cmd_delzant(text: &str, which: Which, as_json: bool) -> CommandOutput {
    let doc = match InputDocument::parse(text) {
        Ok(d) => d,
        Err(e) => return CommandOutput::input_error(e),
    };
    let gamma = doc.gamma_system().expect("checked at parse");
    let delta = doc.delta_system().expect("checked at parse");
    let (name, sys) = match which {
        Which::Gamma => ("gamma", gamma),
        Which::Delta => ("delta", delta),
        Which::Stacked => match stack(&gamma, &delta) {
            Ok(s) => ("stacked", s),
            Err(e) => {
                return CommandOutput {
                    code: EXIT_FAILURE,
                    stdout: String::new(),
                    stderr: format!("stacked system not formed: {e}\n"),
                }
            }
        },
    };
    match crate::delzant::embedding_criterion(&sys) {
        Err(e) => CommandOutput {
            code: EXIT_FAILURE,
            stdout: if as_json {
                pretty(&json!({ "system": name, "validation": validation_json(&e.verdict) }))
            } else {
                format!("{}\n", validation_text(name, &e.verdict))
            },
            stderr: format!("{name} fails {}\n", e.condition),
        },
        Ok((ok, verdict)) => CommandOutput {
            code: if ok { EXIT_OK } else { EXIT_FAILURE },
            stdout: if as_json {
                pretty(&json!({ "system": name, "delzant": delzant_json(&verdict) }))
            } else {
                format!("{name}:\n{}", delzant_text(&verdict))
            },
            stderr: String::new(),
        },
    }
}

pub fn cmd_report(text: &str, as_json: bool) -> CommandOutput {
    let doc = match InputDocument::parse(text) {
        Ok(d) => d,
        Err(e) => return CommandOutput::input_error(e),
    };
    let gamma = doc.gamma_system().expect("checked at parse");
    let delta = doc.delta_system().expect("checked at parse");
    let rep = build_construction(&gamma, &delta).expect("systems share m");
    let stdout = if as_json { pretty(&report_json(&rep)) } else { report_text(&rep) };
    let stderr: String = rep
        .failures
        .iter()
        .map(|f| format!("{} system fails {}\n", f.system, f.check))
        .collect();
    CommandOutput { code: if rep.is_valid() { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr }
}

pub fn cmd_sample(text: &str, count: usize, seed: u64, tol: &Tolerances, as_json: bool) -> CommandOutput {
    let doc = match InputDocument::parse(text) {
        Ok(d) => d,
        Err(e) => return CommandOutput::input_error(e),
    };
    let gamma = doc.gamma_system().expect("checked at parse");
    let delta = doc.delta_system().expect("checked at parse");
    match verify_batch(&gamma, &delta, count, seed, tol) {
        Err(e) => {
            let code = match e {
                SamplerError::Quadric(_) => EXIT_INPUT,
                _ => EXIT_FAILURE,
            };
            CommandOutput { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
        Ok(s) => {
            let stdout = if as_json {
                pretty(&json!({
                    "count": s.count,
                    "passed": s.passed,
                    "pass_fraction": s.pass_fraction,
                    "worst_pairing": s.worst_pairing,
                    "worst_rank_ratio": s.worst_rank_ratio,
                    "seed": seed,
                    "tol_omega": tol.tol_omega,
                    "tol_rank": tol.tol_rank,
                    "margin": tol.margin,
                }))
            } else {
                format!(
                    "samples: {}\npassed: {}\npass_fraction: {}\nworst symplectic pairing: {:e}\nworst singular value ratio: {:e}\n",
                    s.count, s.passed, s.pass_fraction, s.worst_pairing, s.worst_rank_ratio
                )
            };
            let ok = s.passed == s.count;
            CommandOutput { code: if ok { EXIT_OK } else { EXIT_FAILURE }, stdout, stderr: String::new() }
        }
    }
}

pub fn cmd_examples(name: ExampleName, m: usize) -> CommandOutput {
    if m == 0 || (name == ExampleName::Projective && m < 2) {
        return CommandOutput::input_error(format!("m = {m} is too small for this example"));
    }
    CommandOutput { code: EXIT_OK, stdout: example_document(name, m).to_json(), stderr: String::new() }
}

#[derive(Debug, Parser)]
#[command(name = "toric-lagrangian", version, about = "Quadric systems, Delzant checks and Lagrangian certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check conditions (a)-(c) for gamma, delta and the stacked system.
    Validate {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an associated polyhedron is Delzant.
    Delzant {
        file: String,
        #[arg(long, value_enum, default_value = "gamma")]
        system: Which,
        #[arg(long)]
        json: bool,
    },
    /// Full construction report with all dimensions.
    Report {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample points and certify the Lagrangian and immersion properties.
    Sample {
        file: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol_omega: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol_rank: f64,
        #[arg(long, default_value_t = 1e-3)]
        margin: f64,
        #[arg(long)]
        json: bool,
    },
    /// Print a ready-made input document.
    Examples {
        #[arg(long, value_enum)]
        name: ExampleName,
        #[arg(short, default_value_t = 3)]
        m: usize,
    },
}

fn read_input(path: &str) -> Result<String, InputError> {
    let res = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|source| InputError::Io { path: path.to_string(), source })
}

pub fn run(cli: &Cli) -> CommandOutput {
    let load = |file: &str| read_input(file);
    match &cli.command {
        Command::Validate { file, json } => match load(file) {
            Ok(t) => cmd_validate(&t, *json),
            Err(e) => CommandOutput::input_error(e),
        },
        Command::Delzant { file, system, json } => match load(file) {
            Ok(t) => cmd_delzant(&t, *system, *json),
            Err(e) => CommandOutput::input_error(e),
        },
        Command::Report { file, json } => match load(file) {
            Ok(t) => cmd_report(&t, *json),
            Err(e) => CommandOutput::input_error(e),
        },
        Command::Sample { file, count, seed, tol_omega, tol_rank, margin, json } => match load(file) {
            Ok(t) => {
                let tol = Tolerances { tol_omega: *tol_omega, tol_rank: *tol_rank, margin: *margin };
                cmd_sample(&t, *count, *seed, &tol, *json)
            }
            Err(e) => CommandOutput::input_error(e),
        },
        Command::Examples { name, m } => cmd_examples(*name, *m),
    }
}
