//! The `oqa` command line: structure checks, invariants, skein polynomials and the single-block
//! comparison, with JSON or text output.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a structure is rejected,
//! 2 on unreadable or malformed input.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use oqa_scalar::{Scalar, SymbolTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::diagram::{builtin, builtin_names, parse_diagram, MorseDiagram};
use crate::error::{OqaError, Result};
use crate::homfly::{conway, homfly, Branch, SingleBlock, SkeinTriple};
use crate::invariant::Evaluator;
use crate::io::{algebra_name, builtin_structure, builtin_structure_names, element_terms, Bindings, StructureFile};
use crate::oqa::blocks::{random_params, Tamper};
use crate::oqa::{check_axioms, check_axioms_full, classify_blocks};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "oqa", version, about = "Oriented quantum algebras and their link invariants, in exact arithmetic")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Substitute a parameter: `name=value`, or `name=symbolic` to keep it free.
    #[arg(long = "bind", global = true, value_name = "NAME=VALUE")]
    pub bind: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a structure.
    CheckAxioms {
        /// A structure file, or `builtin:<name>`.
        #[arg(long)]
        structure: String,
        /// List every failing slot instead of the first per axiom.
        #[arg(long)]
        full: bool,
    },
    /// Evaluate the invariant of a diagram.
    Invariant {
        #[arg(long)]
        structure: String,
        /// A diagram file, or `builtin:<name>`.
        #[arg(long)]
        diagram: String,
    },
    /// HOMFLY polynomial of a closed diagram.
    Homfly {
        #[arg(long)]
        diagram: String,
    },
    /// Conway polynomial of a closed diagram.
    Conway {
        #[arg(long)]
        diagram: String,
    },
    /// Compare a single-block structure's invariants with the skein polynomials.
    #[command(name = "verify-section6")]
    VerifySingleBlock {
        #[arg(long)]
        structure: String,
        /// Diagrams to check; defaults to a fixed list of builtins.
        #[arg(long)]
        diagram: Vec<String>,
    },
    /// Compare the block classification with the axiom checker on seeded random tables.
    Classify {
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Print a structure in explicit JSON form.
    ExportStructure {
        #[arg(long)]
        structure: String,
    },
    /// List builtin diagrams and structures.
    Builtins,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for an error: 2 for unreadable input, 1 otherwise.
pub fn exit_code(e: &OqaError) -> i32 {
    match e {
        OqaError::Format(_) | OqaError::Syntax { .. } | OqaError::UnknownBuiltin(_) | OqaError::Scalar(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cfg)
}

pub fn execute(cfg: &RunConfig) -> Outcome {
    match dispatch(cfg) {
        Ok((passed, stdout)) => Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut bindings = Bindings::new();
    for b in &cfg.bind {
        bindings.push_spec(b)?;
    }
    let json = cfg.format == Format::Json;
    match &cfg.command {
        Command::CheckAxioms { structure, full } => check_axioms_cmd(&load_structure(structure, &bindings)?, *full, json),
        Command::Invariant { structure, diagram } => {
            invariant_cmd(&load_structure(structure, &bindings)?, &load_diagram(diagram)?, json)
        }
        Command::Homfly { diagram } => polynomial_cmd("homfly", &load_diagram(diagram)?, json),
        Command::Conway { diagram } => polynomial_cmd("conway", &load_diagram(diagram)?, json),
        Command::VerifySingleBlock { structure, diagram } => {
            let file = load_structure(structure, &bindings)?;
            let diagrams = if diagram.is_empty() {
                DEFAULT_DIAGRAMS.iter().map(|n| Ok((n.to_string(), builtin(n)?))).collect::<Result<Vec<_>>>()?
            } else {
                diagram.iter().map(|d| Ok((d.clone(), load_diagram(d)?))).collect::<Result<Vec<_>>>()?
            };
            verify_cmd(&file, &diagrams, json)
        }
        Command::Classify { count } => classify_cmd(*count, cfg.seed, json),
        Command::ExportStructure { structure } => {
            Ok((true, format!("{}\n", load_structure(structure, &bindings)?.to_json_string())))
        }
        Command::Builtins => Ok((true, builtins_listing(json))),
    }
}

const DEFAULT_DIAGRAMS: &[&str] = &[
    "unknot_ccw",
    "unknot_cw",
    "hopf",
    "trefoil_knot",
    "figure8_knot",
    "c_r_plus(2)",
    "c_l_minus(1)",
    "curl",
    "curl_op",
    "trefoil_tangle",
];

fn read_input(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| OqaError::Format(format!("cannot read `{path}`: {e}")))
}

/// A structure from a file or `builtin:<name>`.
pub fn load_structure(arg: &str, bindings: &Bindings) -> Result<StructureFile> {
    let text = match arg.strip_prefix("builtin:") {
        Some(name) => builtin_structure(name)
            .ok_or_else(|| OqaError::UnknownBuiltin(name.to_string()))?
            .to_string(),
        None => read_input(arg)?,
    };
    StructureFile::from_json_str(&text, bindings)
}

/// A diagram from a file or `builtin:<name>`.
pub fn load_diagram(arg: &str) -> Result<MorseDiagram> {
    match arg.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => parse_diagram(&read_input(arg)?),
    }
}

fn pretty(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn check_axioms_cmd(file: &StructureFile, full: bool, json: bool) -> Result<(bool, String)> {
    let s = &file.structure;
    let report = if full { check_axioms_full(s) } else { check_axioms(s) };
    let holds = report.holds();
    let out = if json {
        let witnesses: Vec<Value> = report
            .witnesses
            .iter()
            .map(|w| json!({"axiom": w.axiom, "slot": w.slot, "detail": w.detail}))
            .collect();
        pretty(&json!({
            "algebra": algebra_name(s.algebra()),
            "qa1": report.qa1,
            "qa2": report.qa2,
            "qa3": report.qa3,
            "automorphisms": report.automorphisms,
            "holds": holds,
            "witnesses": witnesses,
        }))
    } else {
        let mut out = format!("algebra: {}\n", algebra_name(s.algebra()));
        for (name, ok) in [("qa.1", report.qa1), ("qa.2", report.qa2), ("qa.3", report.qa3), ("automorphisms", report.automorphisms)] {
            let _ = writeln!(out, "{name}: {}", pass(ok));
        }
        for w in &report.witnesses {
            let _ = writeln!(out, "witness: {} at ({}): {}", w.axiom, w.slot.join(", "), w.detail);
        }
        let _ = writeln!(out, "result: {}", pass(holds));
        out
    };
    Ok((holds, out))
}

fn invariant_cmd(file: &StructureFile, d: &MorseDiagram, json: bool) -> Result<(bool, String)> {
    let s = &file.structure;
    let t = &file.symbols;
    let stats = d.stats();
    let (value_json, value_text) = if d.boundary().is_open() {
        let w = Evaluator::new(s).tangle(d)?;
        let terms = element_terms(s.algebra(), t, &w);
        let text = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.iter().map(|x| format!("({}) {}", x.c, x.k)).collect::<Vec<_>>().join(" + ")
        };
        (serde_json::to_value(&terms).expect("terms serialize"), text)
    } else {
        if s.twist().is_none() {
            return Err(OqaError::MissingTwist);
        }
        let trace = file
            .effective_trace()
            .ok_or_else(|| OqaError::Trace("no default trace for this algebra; give one in the structure file".into()))?;
        let v = Evaluator::with_trace(s, trace)?.link(d)?;
        let text = t.format(&v);
        (Value::String(text.clone()), text)
    };
    let out = if json {
        pretty(&json!({
            "diagram": d.word(),
            "algebra": algebra_name(s.algebra()),
            "value": value_json,
            "writhe": stats.writhe,
            "whitney": stats.whitney,
        }))
    } else {
        format!(
            "diagram: {}\nalgebra: {}\nwrithe: {}\nwhitney: {:?}\nvalue: {value_text}\n",
            d.word(),
            algebra_name(s.algebra()),
            stats.writhe,
            stats.whitney
        )
    };
    Ok((true, out))
}

fn polynomial_cmd(which: &str, d: &MorseDiagram, json: bool) -> Result<(bool, String)> {
    let p = if which == "homfly" { homfly(d)? } else { conway(d)? };
    let out = if json {
        pretty(&json!({"diagram": d.word(), "invariant": which, "polynomial": p.to_string()}))
    } else {
        format!("{p}\n")
    };
    Ok((true, out))
}

/// Whether `x` is a free symbol, returning its index.
fn free_symbol(x: &Scalar) -> Option<usize> {
    match x.support()[..] {
        [i] if *x == Scalar::var(i) => Some(i),
        _ => None,
    }
}

struct DiagramReport {
    name: String,
    identify_passes: bool,
    f_value: String,
    predicted: String,
    polynomial: String,
    /// `(passed, checked)` skein triples.
    skein: Option<(usize, usize)>,
    homogeneous: Option<bool>,
}

impl DiagramReport {
    fn passes(&self) -> bool {
        self.identify_passes
            && self.skein.map_or(true, |(p, c)| p == c)
            && self.homogeneous.unwrap_or(true)
    }
}

fn verify_one(ctx: &SingleBlock, file: &StructureFile, t: &SymbolTable, name: &str, d: &MorseDiagram) -> Result<DiagramReport> {
    let s = &file.structure;
    let vars: Option<Vec<usize>> = [&ctx.a, &ctx.sbc].into_iter().map(free_symbol).collect();
    let ev = Evaluator::new(s);
    let (id, f, skein) = if d.boundary().is_open() {
        let w = ev.tangle(d)?;
        (ctx.identify_open(d, &w)?, w.coeffs()[0].clone(), None)
    } else {
        let f = ev.link(d)?;
        let crossings: Vec<usize> = (0..d.len()).filter(|&i| d.slices()[i].kind.is_crossing()).collect();
        let mut passed = 0;
        for &i in &crossings {
            if ctx.skein_triple(s, &SkeinTriple::at(d, i)?)?.passes {
                passed += 1;
            }
        }
        (ctx.identify(d, &f)?, f, Some((passed, crossings.len())))
    };
    let homogeneous = match vars {
        Some(v) => Some(f.laurent_homogeneous_degree(&v)? == Some(d.writhe()) || f.is_zero()),
        None => None,
    };
    Ok(DiagramReport {
        name: name.to_string(),
        identify_passes: id.passes,
        f_value: t.format(&id.f_value),
        predicted: t.format(&id.predicted),
        polynomial: id.polynomial.to_string(),
        skein,
        homogeneous,
    })
}

fn verify_cmd(file: &StructureFile, diagrams: &[(String, MorseDiagram)], json: bool) -> Result<(bool, String)> {
    let ctx = match &file.single_block {
        Some(c) => c.clone(),
        None => SingleBlock::from_structure(&file.structure)?,
    };
    let file = StructureFile { structure: ctx.structure()?, ..file.clone() };
    let t = &file.symbols;
    let branch = if ctx.is_alexander_branch() { Branch::Alexander } else { Branch::Homfly };
    let closed_forms = ctx.consistency();
    let reports = diagrams
        .iter()
        .map(|(n, d)| verify_one(&ctx, &file, t, n, d))
        .collect::<Result<Vec<_>>>()?;
    let all = closed_forms.is_ok() && reports.iter().all(DiagramReport::passes);
    let out = if json {
        let rows: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "diagram": r.name,
                    "identify": {"passes": r.identify_passes, "invariant": r.f_value, "predicted": r.predicted, "polynomial": r.polynomial},
                    "skein": r.skein.map(|(p, c)| json!({"passed": p, "checked": c})),
                    "homogeneous": r.homogeneous,
                    "passes": r.passes(),
                })
            })
            .collect();
        pretty(&json!({
            "n": ctx.n,
            "signs": ctx.signs,
            "branch": branch.to_string(),
            "eta": ctx.eta,
            "trace_g": t.format(&ctx.tr_g),
            "closed_forms": closed_forms.as_ref().err(),
            "diagrams": rows,
            "passes": all,
        }))
    } else {
        let mut out = format!("n: {}\nbranch: {branch}\neta: {}\nTr(G): {}\n", ctx.n, ctx.eta, t.format(&ctx.tr_g));
        let _ = writeln!(out, "closed forms: {}", closed_forms.as_ref().map_or_else(|e| format!("fail ({e})"), |_| "pass".into()));
        for r in &reports {
            let skein = r.skein.map_or("n/a".to_string(), |(p, c)| format!("{p}/{c}"));
            let homog = r.homogeneous.map_or("n/a", pass);
            let _ = writeln!(
                out,
                "{}: identify={} skein={skein} homogeneous={homog}",
                r.name,
                pass(r.identify_passes)
            );
            if !r.identify_passes {
                let _ = writeln!(out, "  invariant: {}\n  predicted: {}", r.f_value, r.predicted);
            }
        }
        let _ = writeln!(out, "result: {}", pass(all));
        out
    };
    Ok((all, out))
}

fn classify_cmd(count: usize, seed: u64, json: bool) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    for case in 0..count {
        let n = 2 + case % 2;
        let tamper = if case % 3 == 0 { None } else { Some(Tamper::ALL[case % Tamper::ALL.len()]) };
        let (params, _) = random_params(&mut rng, n, tamper);
        let report = classify_blocks(&params);
        let axioms = params.axioms_hold();
        rows.push((case, n, tamper, report.passes(), axioms, report.first_failure()));
    }
    let all = rows.iter().all(|r| r.3 == r.4);
    let out = if json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(case, n, tamper, c, a, fail)| {
                json!({
                    "case": case,
                    "n": n,
                    "tamper": tamper.map(|t| format!("{t:?}")),
                    "classification": c,
                    "axioms": a,
                    "agree": c == a,
                    "first_failure": fail.as_ref().map(|(cl, d)| format!("{cl}: {d}")),
                })
            })
            .collect();
        pretty(&json!({"seed": seed, "cases": list, "agree": all}))
    } else {
        let mut out = String::new();
        for (case, n, tamper, c, a, _) in &rows {
            let tamper = tamper.map_or("none".to_string(), |t| format!("{t:?}"));
            let _ = writeln!(out, "case {case}: n={n} tamper={tamper} classification={} axioms={}", pass(*c), pass(*a));
        }
        let agreeing = rows.iter().filter(|r| r.3 == r.4).count();
        let _ = writeln!(out, "agree: {agreeing}/{count}");
        out
    };
    Ok((all, out))
}

fn builtins_listing(json: bool) -> String {
    let diagrams = builtin_names();
    let structures = builtin_structure_names();
    if json {
        pretty(&json!({"diagrams": diagrams, "structures": structures}))
    } else {
        format!("diagrams: {}\nstructures: {}\n", diagrams.join(", "), structures.join(", "))
    }
}
