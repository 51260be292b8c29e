//! The `circuitcat` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code together
//! with everything that would be printed, so the binary is a thin shell and
//! tests can drive the command line in-process.
//!
//! Exit codes: `0` success, `1` invalid input (message carries a stable
//! `E_*` code), `2` a verification failed (witness printed as JSON).

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::amodel1d;
use crate::amodelrec::{build_acategory, verify_iso, IsoReport};
use crate::balgebra::{build_bcategory, quiver, Arrow};
use crate::circuit::{balanced_nus, enumerate_circuits, parse_list, Circuit};
use crate::error::{Error, Result};
use crate::mutation::{
    self, format_poincare, gram_of_collection, koszul_duality_report, mutate_left, mutate_right,
    poincare_of_collection, GramMatrix, Mode,
};

pub const MAX_WEIGHT_VAR: &str = "CIRCUITCAT_MAX_WEIGHT";
const DEFAULT_MAX_WEIGHT: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "circuitcat",
    version,
    about = "Directed categories of circuits and their mirrors"
)]
struct Cli {
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CircuitArgs {
    /// Entries of a, comma separated, e.g. --a=1,2,3,-1,-5
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Entries of nu (default all zero).
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Text form "a=...;nu=...".
    #[arg(long, allow_hyphen_values = true)]
    circuit: Option<String>,
}

impl CircuitArgs {
    fn resolve(&self) -> Result<Circuit> {
        match (&self.circuit, &self.a) {
            (Some(text), None) => Circuit::parse(text),
            (None, Some(a)) => {
                let a = parse_list(a)?;
                let nu = match &self.nu {
                    Some(nu) => parse_list(nu)?,
                    None => vec![0; a.len()],
                };
                crate::circuit::validate_circuit(&a, &nu)
            }
            (Some(_), Some(_)) => Err(Error::Parse(
                "give either --a or --circuit, not both".into(),
            )),
            (None, None) => Err(Error::Parse("missing --a".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature, volume and cobordism type.
    Info {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long, default_value = "text")]
        mode: String,
    },
    /// Hom bases of the B-side category.
    Bmodel {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        mode: String,
    },
    /// Hom bases of the A-side category with their spectral decomposition.
    Amodel {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        mode: String,
    },
    /// Check the mirror isomorphism for one circuit or a sweep.
    Verify {
        #[command(flatten)]
        circuit: CircuitArgs,
        /// Object count; every n below the volume when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 3)]
        max_d: usize,
        #[arg(long, default_value_t = 5)]
        max_entry: i64,
        #[arg(long, default_value_t = 1)]
        nu_bound: i64,
    },
    /// Gram matrix, mutations and the half-twist duality check.
    Mutate {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "euler")]
        mode: String,
        /// Mutation word such as "L1,L2,R1"; the half twist when omitted.
        #[arg(long)]
        word: Option<String>,
    },
    /// Quiver of single-generator morphisms in DOT.
    EmitDot {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        n: usize,
    },
    /// Full B-side category (bases and composition table) as JSON.
    EmitJson {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        n: usize,
    },
    /// Intersection indices of two lifted paths against the exact geometry.
    Oracle {
        #[arg(long)]
        a0: i64,
        #[arg(long)]
        a1: i64,
        #[arg(long, default_value_t = 0)]
        j: i64,
        /// Single target path; a table of k = j..j+span otherwise.
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, default_value_t = 12)]
        span: i64,
        #[arg(long, default_value = "text")]
        mode: String,
    },
}

enum Failure {
    Invalid(Error),
    Verification(Value, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let out = cli.out.clone();
    match dispatch(cli.command) {
        Ok(text) => match out {
            None => Outcome {
                code: 0,
                stdout: text,
                stderr: String::new(),
            },
            Some(path) => match std::fs::write(&path, &text) {
                Ok(()) => Outcome {
                    code: 0,
                    stdout: format!("wrote {path}\n"),
                    stderr: String::new(),
                },
                Err(e) => invalid(Error::Io(format!("{path}: {e}"))),
            },
        },
        Err(Failure::Invalid(e)) => invalid(e),
        Err(Failure::Verification(report, summary)) => {
            let text = pretty(&report);
            if let Some(path) = out {
                let _ = std::fs::write(path, &text);
            }
            Outcome {
                code: 2,
                stdout: text,
                stderr: format!("verification failed: {summary}\n"),
            }
        }
    }
}

fn invalid(e: Error) -> Outcome {
    Outcome {
        code: 1,
        stdout: String::new(),
        stderr: format!("error[{}]: {e}\n", e.code()),
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn weight_cap() -> Result<u64> {
    match std::env::var(MAX_WEIGHT_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "{MAX_WEIGHT_VAR}={v:?} is not a nonnegative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_WEIGHT),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::out_of_range("n must be at least 1"));
    }
    let cap = weight_cap()?;
    if (n - 1) as u64 > cap {
        return Err(Error::WeightCap {
            weight: (n - 1) as u64,
            cap,
        });
    }
    Ok(())
}

fn text_or_json(mode: &str) -> Result<bool> {
    match mode {
        "text" => Ok(false),
        "json" => Ok(true),
        other => Err(Error::Parse(format!(
            "unknown mode {other:?}, expected text or json"
        ))),
    }
}

fn dispatch(command: Command) -> std::result::Result<String, Failure> {
    match command {
        Command::Info { circuit, mode } => {
            let json = text_or_json(&mode)?;
            Ok(info(&circuit.resolve()?, json))
        }
        Command::Bmodel { circuit, n, mode } => {
            let json = text_or_json(&mode)?;
            let c = circuit.resolve()?;
            check_n(n)?;
            Ok(bmodel(&c, n, json)?)
        }
        Command::Amodel { circuit, n, mode } => {
            let json = text_or_json(&mode)?;
            let c = circuit.resolve()?;
            check_n(n)?;
            Ok(amodel(&c, n, json)?)
        }
        Command::Verify {
            circuit,
            n,
            sweep,
            max_d,
            max_entry,
            nu_bound,
        } => {
            if sweep {
                let summary = verify_sweep(max_d, max_entry, nu_bound)?;
                let failed = summary.failed;
                let v = serde_json::to_value(&summary).expect("summary serializes");
                if failed > 0 {
                    return Err(Failure::Verification(v, format!("{failed} instances")));
                }
                return Ok(pretty(&v));
            }
            let c = circuit.resolve()?;
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (1..c.volume().max(1) as usize).collect(),
            };
            if ns.is_empty() {
                return Err(Error::VolumeBound {
                    n: 1,
                    volume: c.volume(),
                }
                .into());
            }
            let mut reports = Vec::new();
            for n in ns {
                check_n(n)?;
                reports.push(verify_iso(&c, n)?);
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let v = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(&reports)
            }
            .expect("reports serialize");
            if failed > 0 {
                return Err(Failure::Verification(
                    v,
                    format!("{failed} of {} reports", reports.len()),
                ));
            }
            Ok(pretty(&v))
        }
        Command::Mutate {
            circuit,
            n,
            mode,
            word,
        } => {
            let c = circuit.resolve()?;
            check_n(n)?;
            let mode: Mode = mode.parse()?;
            mutate(&c, n, mode, word.as_deref())
        }
        Command::EmitDot { circuit, n } => {
            let c = circuit.resolve()?;
            check_n(n)?;
            Ok(emit_dot(n, &quiver(&c, n)?))
        }
        Command::EmitJson { circuit, n } => {
            let c = circuit.resolve()?;
            check_n(n)?;
            Ok(pretty(&build_bcategory(&c, n)?.to_json()))
        }
        Command::Oracle {
            a0,
            a1,
            j,
            k,
            span,
            mode,
        } => {
            let json = text_or_json(&mode)?;
            let ks: Vec<i64> = match k {
                Some(k) => vec![k],
                None => (j..=j + span).collect(),
            };
            oracle(a0, a1, j, &ks, json)
        }
    }
}

fn info(c: &Circuit, json: bool) -> String {
    let kind = c.classify();
    let (p, q) = c.signature();
    if json {
        return pretty(&json!({
            "circuit": c.to_string(),
            "perm": c.perm(),
            "d": c.d(),
            "signature": [p, q],
            "volume": c.volume(),
            "kind": kind.kind,
            "mu": kind.mu,
            "x_plus": kind.x_plus,
            "x_minus": kind.x_minus,
        }));
    }
    let mut s = String::new();
    let _ = writeln!(s, "circuit    {c}");
    let _ = writeln!(s, "d          {}", c.d());
    let _ = writeln!(s, "signature  ({p},{q})");
    let _ = writeln!(s, "Vol        {}", c.volume());
    let _ = writeln!(s, "kind       {}", kind.kind);
    let _ = writeln!(s, "mu         {}", kind.mu);
    let _ = writeln!(s, "X+         {}", kind.x_plus);
    let _ = writeln!(s, "X-         {}", kind.x_minus);
    s
}

fn bmodel(c: &Circuit, n: usize, json: bool) -> Result<String> {
    let b = build_bcategory(c, n)?;
    if json {
        return Ok(pretty(&b.to_json()));
    }
    let mut s = format!("B-model of {c}, n = {n}\n");
    for j in 0..n {
        for k in j..n {
            let basis: Vec<String> = b
                .hom(j, k)?
                .iter()
                .map(|g| format!("{}[{}]", g.value.name('v'), g.degree))
                .collect();
            let _ = writeln!(
                s,
                "Hom(R{j},R{k})  dim {}  {}",
                basis.len(),
                basis.join(" ")
            );
        }
    }
    Ok(s)
}

fn amodel(c: &Circuit, n: usize, json: bool) -> Result<String> {
    let a = build_acategory(c, n)?;
    let mut chain = Vec::new();
    let mut level = Some(a.level());
    while let Some(l) = level {
        chain.push((l.circuit().to_string(), l.kind_name()));
        level = l.lower();
    }
    if json {
        let mut homs = Vec::new();
        for j in 0..n {
            for k in j..n {
                let basis: Vec<Value> = a
                    .hom(j, k)?
                    .iter()
                    .map(|g| json!({ "name": g.value.name(), "m": g.value.spectral_index(), "deg": g.degree }))
                    .collect();
                homs.push(json!({ "src": j, "dst": k, "basis": basis }));
            }
        }
        let levels: Vec<Value> = chain
            .iter()
            .map(|(c, k)| json!({ "circuit": c, "kind": k }))
            .collect();
        return Ok(pretty(
            &json!({ "objects": n, "levels": levels, "homs": homs }),
        ));
    }
    let mut s = format!("A-model of {c}, n = {n}\n");
    let chain: Vec<String> = chain.iter().map(|(c, k)| format!("{c} ({k})")).collect();
    let _ = writeln!(s, "levels  {}", chain.join(" -> "));
    for j in 0..n {
        for k in j..n {
            let basis: Vec<String> = a
                .hom(j, k)?
                .iter()
                .map(|g| format!("{}[{}]", g.value.name(), g.degree))
                .collect();
            let _ = writeln!(
                s,
                "Hom(L{j},L{k})  dim {}  {}",
                basis.len(),
                basis.join(" ")
            );
        }
    }
    Ok(s)
}

fn parse_word(word: &str) -> Result<Vec<(bool, usize)>> {
    word.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| {
            let (side, pos) = w.split_at(1);
            let left = match side {
                "L" | "l" => true,
                "R" | "r" => false,
                _ => {
                    return Err(Error::Parse(format!(
                        "bad mutation {w:?}, expected L<i> or R<i>"
                    )))
                }
            };
            let pos = pos
                .parse()
                .map_err(|_| Error::Parse(format!("bad mutation position in {w:?}")))?;
            Ok((left, pos))
        })
        .collect()
}

fn format_matrix(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| format!("{x:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect()
}

fn show_gram(g: &GramMatrix) -> String {
    let rows: Vec<Vec<String>> = g
        .rows()
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect())
        .collect();
    format_matrix(&rows)
}

fn mutate(
    c: &Circuit,
    n: usize,
    mode: Mode,
    word: Option<&str>,
) -> std::result::Result<String, Failure> {
    if mode == Mode::Poincare {
        let p = poincare_of_collection(c, n)?;
        let rows: Vec<Vec<String>> = p
            .iter()
            .map(|r| r.iter().map(format_poincare).collect())
            .collect();
        return Ok(format!(
            "Poincare series of {c}, n = {n}\n{}",
            format_matrix(&rows)
        ));
    }
    if let Some(word) = word {
        let steps = parse_word(word)?;
        let mut g = gram_of_collection(c, n)?;
        for (left, i) in steps {
            g = if left {
                mutate_left(&g, i)?
            } else {
                mutate_right(&g, i)?
            };
        }
        return Ok(format!(
            "{word} applied to the Gram matrix of {c}\n{}",
            show_gram(&g)
        ));
    }
    let report = koszul_duality_report(c, n)?;
    let mut s = String::new();
    let _ = writeln!(s, "Gram matrix of {c}, n = {n}");
    s += &show_gram(&report.gram);
    let _ = writeln!(s, "after half twist {:?}", mutation::half_twist_word(n));
    s += &show_gram(&report.twisted);
    let _ = writeln!(s, "Gram matrix of {}", c.negate());
    s += &show_gram(&report.dual);
    let _ = writeln!(
        s,
        "duality {}",
        if report.holds { "holds" } else { "FAILS" }
    );
    if !report.holds {
        let v = serde_json::to_value(&report).expect("report serializes");
        return Err(Failure::Verification(
            v,
            "half twist does not match the dual collection".into(),
        ));
    }
    Ok(s)
}

/// DOT digraph with nodes `R0..R{n-1}` and one labelled edge per arrow.
pub fn emit_dot(n: usize, arrows: &[Arrow]) -> String {
    let mut s = String::from("digraph quiver {\n  rankdir=LR;\n");
    for i in 0..n {
        let _ = writeln!(s, "  R{i};");
    }
    for a in arrows {
        let _ = writeln!(
            s,
            "  R{} -> R{} [label=\"{}\"];",
            a.source, a.target, a.label
        );
    }
    s.push_str("}\n");
    s
}

fn oracle(
    a0: i64,
    a1: i64,
    j: i64,
    ks: &[i64],
    json: bool,
) -> std::result::Result<String, Failure> {
    let mut rows = Vec::new();
    let mut all_agree = true;
    for &k in ks {
        let indices = amodel1d::intersection_indices(a0, a1, j, k)?;
        let count = amodel1d::intersection_count(a0, a1, j, k)?;
        let geometric = amodel1d::geometric_oracle(a0, a1, j, k)?;
        let agree = geometric == indices && count == indices.len() as i64;
        all_agree &= agree;
        rows.push(json!({
            "j": j,
            "k": k,
            "count": count,
            "indices": indices,
            "geometric": geometric,
            "agree": agree,
        }));
    }
    let v = json!({ "a0": a0, "a1": a1, "rows": rows });
    if !all_agree {
        return Err(Failure::Verification(
            v,
            "intersection formula disagrees with geometry".into(),
        ));
    }
    if json {
        return Ok(pretty(&v));
    }
    let mut s = format!("intersections for a0 = {a0}, a1 = {a1}\n");
    let _ = writeln!(s, "{:>4} {:>4} {:>6}  indices", "j", "k", "count");
    for r in &rows {
        let idx: Vec<String> = r["indices"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|x| x.to_string())
            .collect();
        let _ = writeln!(
            s,
            "{:>4} {:>4} {:>6}  {}",
            r["j"].as_i64().unwrap_or_default(),
            r["k"].as_i64().unwrap_or_default(),
            r["count"].as_i64().unwrap_or_default(),
            idx.join(",")
        );
    }
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub max_d: usize,
    pub max_entry: i64,
    pub nu_bound: i64,
    pub circuits: usize,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// Instances whose recursion ended in a B-side leaf.
    pub dual_leaf_instances: usize,
    pub failures: Vec<IsoReport>,
}

/// Runs [`verify_iso`] on every circuit with `d <= max_d` and entries in
/// `[-max_entry, max_entry]`, every balanced `nu` with entries in
/// `[-nu_bound, nu_bound]`, and every `n` below the volume.
pub fn verify_sweep(max_d: usize, max_entry: i64, nu_bound: i64) -> Result<SweepSummary> {
    let circuits = enumerate_circuits(max_d, max_entry);
    let mut jobs = Vec::new();
    for c in &circuits {
        for nu in balanced_nus(c.len(), nu_bound) {
            let charged = c.with_nu(&nu)?;
            for n in 1..c.volume() as usize {
                jobs.push((charged.clone(), n));
            }
        }
    }
    let reports: Vec<IsoReport> = jobs
        .par_iter()
        .map(|(c, n)| verify_iso(c, *n))
        .collect::<Result<_>>()?;
    let failures: Vec<IsoReport> = reports.iter().filter(|r| !r.passed()).cloned().collect();
    Ok(SweepSummary {
        max_d,
        max_entry,
        nu_bound,
        circuits: circuits.len(),
        instances: reports.len(),
        passed: reports.len() - failures.len(),
        failed: failures.len(),
        dual_leaf_instances: reports.iter().filter(|r| !r.dual_leaves.is_empty()).count(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &str) -> Outcome {
        run(std::iter::once("circuitcat").chain(args.split_whitespace()))
    }

    #[test]
    fn info_weighted_projective() {
        let out = run_str("info --a=2,3,-5");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("signature  (1,0)"));
        assert!(out.stdout.contains("Vol        5"));
        assert!(out.stdout.contains("kind       weighted-projective"));
        assert!(out.stdout.contains("mu         5"));
    }

    #[test]
    fn validation_exit_code() {
        let out = run_str("info --a=2,3,-4");
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("E_UNBALANCED_A"));
        let out = run_str("bogus");
        assert_eq!(out.code, 1);
    }

    #[test]
    fn verify_single() {
        let out = run_str("verify --a=1,1,1,-3 --n=2");
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["dims_match"], true);
        assert_eq!(v["witness"], Value::Null);
    }

    #[test]
    fn dot_output() {
        let out = run_str("emit-dot --a=1,1,-2 --n=2");
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.matches(" -> ").count(), 2);
        assert!(out.stdout.contains("R0 -> R1 [label=\"v0\"];"));
        assert!(out.stdout.contains("R0 -> R1 [label=\"v1\"];"));
        let single = run_str("emit-dot --a=1,1,-2 --n=1");
        assert!(!single.stdout.contains("->"));
    }

    #[test]
    fn mutate_reports_duality() {
        let out = run_str("mutate --a=1,1,-2 --n=2");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("duality holds"));
        let out = run_str("mutate --a=1,1,-2 --n=2 --word=L1,R1");
        assert!(out.stdout.ends_with("1 2\n0 1\n"), "{}", out.stdout);
        let out = run_str("mutate --a=1,2,3,-1,-5 --n=3 --mode=poincare");
        assert!(out.stdout.contains("2 + t^1"));
    }

    #[test]
    fn oracle_table() {
        let out = run_str("oracle --a0=2 --a1=3 --k=5");
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("-2,-1,0,1"));
    }
}
