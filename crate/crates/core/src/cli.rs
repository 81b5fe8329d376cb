//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the captured output, so the binary is a thin wrapper and the
//! commands are testable in-process.
//!
//! Exit codes: 0 success or consistent, 2 inconsistent, 1 usage, parse or
//! precondition error. Reports are pretty-printed JSON with sorted keys.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cline::{ClineContext, ClineProblem};
use crate::gen_inverse::{all_one_inverses, index, one_inverse, Construction, OneInverseCertificate};
use crate::generator::{AffineGenerator, ReproVerdict};
use crate::kcomm::{find_kcomm_inverse, KCommContext, KCommProblem};
use crate::matrix::Matrix;
use crate::oracle::{AffineSolutionSet, DEFAULT_ENUMERATION_CAP};
use crate::penrose::{PenroseContext, PenroseProblem};
use crate::problem::{to_block, to_pretty_json, GeneratorFile, MatrixFile, Problem, ProblemFile};
use crate::report::{ClauseCheck, ConsistencyReport, EquationError, LemmaReport, PowerPolicy};
use crate::scalar::FieldSpec;
use crate::sweep::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "repro-matrix",
    version,
    about = "Exact consistency checks and reproductive general solutions of matrix equations"
)]
pub struct Cli {
    /// Field override: Q, GF(p) or GFp. Entries are re-read in this field.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Consistency verdict and general solution of a cline, penrose or kcomm problem.
    Solve {
        file: String,
        /// Use this particular solution as the constant (key X0, or the only matrix).
        #[arg(long)]
        with_x0: Option<String>,
        /// {1}-inverses to use: keys G and G' (cline, penrose) or Abar (kcomm).
        #[arg(long)]
        one_inverse: Option<String>,
        /// Accept m or n below the index of the matrix it is applied to.
        #[arg(long)]
        allow_small_power: bool,
    },
    /// Decide whether a generator file describes a reproductive map.
    CheckRepro { file: String },
    /// A {1}-inverse of matrix A and the dimension of all of them.
    Oneinv {
        file: String,
        /// Verify this matrix (key G, or the only matrix) instead of constructing one.
        #[arg(long)]
        one_inverse: Option<String>,
    },
    /// Index of the square matrix A.
    Index { file: String },
    /// Solve the problem's linear matrix system directly.
    Oracle { file: String },
    /// List every solution over a finite field.
    Enumerate {
        file: String,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Run an exhaustive or randomized suite: cline, penrose, kcomm, repro, witness, primitives or all.
    Sweep {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: crate::scalar::FieldError| e.to_string())
}

/// Exit code plus what would have been written to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> CliOutput {
        CliOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> CliOutput {
        CliOutput {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }

    fn report(value: Value, consistent: bool) -> CliOutput {
        CliOutput {
            code: if consistent { EXIT_OK } else { EXIT_INCONSISTENT },
            stdout: pretty(&value),
            stderr: String::new(),
        }
    }
}

fn pretty(value: &Value) -> String {
    to_pretty_json(value)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutput::ok(e.to_string()),
            _ => CliOutput {
                code: EXIT_ERROR,
                stdout: String::new(),
                stderr: e.to_string(),
            },
        },
    }
}

pub fn execute(cli: &Cli) -> CliOutput {
    let result = match &cli.command {
        Command::Solve {
            file,
            with_x0,
            one_inverse,
            allow_small_power,
        } => {
            let policy = if *allow_small_power {
                PowerPolicy::AllowSmall
            } else {
                PowerPolicy::Strict
            };
            load(file, cli.field).and_then(|p| solve(&p, with_x0.as_deref(), one_inverse.as_deref(), policy))
        }
        Command::CheckRepro { file } => check_repro(file, cli.field),
        Command::Oneinv { file, one_inverse } => load(file, cli.field).and_then(|p| oneinv(&p, one_inverse.as_deref())),
        Command::Index { file } => load(file, cli.field).and_then(|p| index_command(&p)),
        Command::Oracle { file } => load(file, cli.field).and_then(|p| oracle(&p)),
        Command::Enumerate { file, cap } => load(file, cli.field).and_then(|p| enumerate(&p, *cap)),
        Command::Sweep { suite, seed } => sweep(suite, *seed),
    };
    result.unwrap_or_else(CliOutput::error)
}

type CmdResult = Result<CliOutput, String>;

fn load(path: &str, field: Option<FieldSpec>) -> Result<Problem, String> {
    ProblemFile::read(path)
        .and_then(|f| f.validate(field))
        .map_err(|e| format!("{path}: {e}"))
}

fn equation_error(e: EquationError) -> String {
    match e {
        EquationError::IndexTooSmall { .. } => format!("{e}; pass --allow-small-power to proceed anyway"),
        other => other.to_string(),
    }
}

fn matrix_file(path: Option<&str>) -> Result<Option<MatrixFile>, String> {
    path.map(|p| MatrixFile::read(p).map_err(|e| format!("{p}: {e}"))).transpose()
}

fn clause_json(c: &ClauseCheck) -> Value {
    json!({"name": c.name, "holds": c.holds, "defect": to_block(&c.defect)})
}

fn consistency_json(r: &ConsistencyReport) -> Value {
    json!({
        "consistent": r.consistent,
        "clauses": r.clauses.iter().map(clause_json).collect::<Vec<_>>(),
    })
}

fn lemma_json(r: &LemmaReport) -> Value {
    json!({"all_hold": r.all_hold(), "checks": r.checks.iter().map(clause_json).collect::<Vec<_>>()})
}

fn certificate_json(of: &str, c: &OneInverseCertificate) -> Value {
    json!({"of": of, "construction": c.construction.as_str(), "rank": c.input_rank, "matrix": to_block(&c.g)})
}

fn verdict_json(v: &ReproVerdict) -> Value {
    json!({
        "reproductive": v.reproductive,
        "linear_idempotent": v.linear_idempotent,
        "constant_fixed": v.constant_fixed,
        "defect": to_block(&v.defect),
    })
}

/// Generator file plus its reproductivity verdict.
fn generator_json(h: &AffineGenerator) -> Result<(Value, ReproVerdict), String> {
    let verdict = h.is_reproductive().map_err(|e| e.to_string())?;
    let file = serde_json::to_value(GeneratorFile::from_generator(h)).expect("generator files serialize");
    Ok((file, verdict))
}

fn set_json(set: &AffineSolutionSet) -> Value {
    json!({
        "consistent": set.is_consistent(),
        "dimension": set.dimension(),
        "cardinality": set.cardinality(),
        "particular": set.particular().map(to_block),
        "basis": set.basis().iter().map(to_block).collect::<Vec<_>>(),
    })
}

/// Adds the generator, its verdict and, for `--with-x0`, the comparison of
/// `x0` with the canonical particular solution.
fn attach_solution(
    report: &mut Value,
    f: Result<AffineGenerator, EquationError>,
    g: Option<(&Matrix, Result<AffineGenerator, EquationError>)>,
    canonical: &Matrix,
) -> Result<(), String> {
    let h = match g {
        None => f.map_err(equation_error)?,
        Some((x0, g)) => {
            let g = g.map_err(equation_error)?;
            let is_canonical = x0 == canonical;
            report["x0"] = json!(to_block(x0));
            report["x0_is_canonical"] = json!(is_canonical);
            g
        }
    };
    let (file, verdict) = generator_json(&h)?;
    report["generator"] = file;
    report["reproductive"] = json!(verdict.reproductive);
    report["reproductivity"] = verdict_json(&verdict);
    if let Some(is_canonical) = report.get("x0_is_canonical").and_then(Value::as_bool) {
        report["classification_agrees"] = json!(is_canonical == verdict.reproductive);
    }
    Ok(())
}

fn x0_matrix(file: &Option<MatrixFile>, field: FieldSpec) -> Result<Option<Matrix>, String> {
    file.as_ref().map(|f| f.get_or_only("X0", field).map_err(|e| e.to_string())).transpose()
}

fn named(file: &Option<MatrixFile>, name: &str, field: FieldSpec) -> Result<Option<Matrix>, String> {
    match file {
        Some(f) => f.get(name, field).map_err(|e| e.to_string()),
        None => Ok(None),
    }
}

fn power_warnings(small: bool, pairs: &[(&str, u32, usize)]) -> Vec<String> {
    if !small {
        return Vec::new();
    }
    pairs
        .iter()
        .filter(|(_, power, idx)| (*power as usize) < *idx)
        .map(|(name, power, idx)| format!("power {power} of {name} is below its index {idx}; the closed forms are not guaranteed"))
        .collect()
}

fn solve(problem: &Problem, x0_path: Option<&str>, inv_path: Option<&str>, policy: PowerPolicy) -> CmdResult {
    let x0_file = matrix_file(x0_path)?;
    let inv_file = matrix_file(inv_path)?;
    let field = problem.field();
    let x0 = x0_matrix(&x0_file, field)?;
    match problem {
        Problem::Cline(p) => solve_cline(p, x0.as_ref(), named(&inv_file, "G", field)?, named(&inv_file, "G'", field)?, policy),
        Problem::Penrose(p) => {
            solve_penrose(p, x0.as_ref(), named(&inv_file, "G", field)?, named(&inv_file, "G'", field)?, policy)
        }
        Problem::KComm(p) => solve_kcomm(p, x0.as_ref(), named(&inv_file, "Abar", field)?),
        other => Err(format!("solve needs a cline, penrose or kcomm problem, got {}", other.kind())),
    }
}

fn solve_cline(p: &ClineProblem, x0: Option<&Matrix>, g: Option<Matrix>, h: Option<Matrix>, policy: PowerPolicy) -> CmdResult {
    let ctx = ClineContext::new(p, g, h, policy).map_err(equation_error)?;
    let consistency = ctx.consistency();
    let mut report = json!({
        "problem": "cline",
        "field": p.field().to_string(),
        "params": {"m": p.m, "n": p.n},
        "index": {"A": ctx.index_a, "B": ctx.index_b},
        "small_power": ctx.small_power,
        "warnings": power_warnings(ctx.small_power, &[("A", p.m, ctx.index_a), ("B", p.n, ctx.index_b)]),
        "one_inverses": [
            certificate_json(&format!("A^{}", p.m), &ctx.g_am),
            certificate_json(&format!("B^{}", p.n), &ctx.g_bn),
        ],
        "consistency": consistency_json(&consistency),
    });
    if !consistency.consistent {
        return Ok(CliOutput::report(report, false));
    }
    let canonical = ctx.canonical_particular();
    report["particular"] = json!(to_block(&canonical));
    attach_solution(&mut report, ctx.f_generator(), x0.map(|x| (x, ctx.g_generator(x))), &canonical)?;
    Ok(CliOutput::report(report, true))
}

fn solve_penrose(p: &PenroseProblem, x0: Option<&Matrix>, g: Option<Matrix>, h: Option<Matrix>, policy: PowerPolicy) -> CmdResult {
    let ctx = PenroseContext::new(p, g, h, policy).map_err(equation_error)?;
    let consistency = ctx.consistency();
    let literal = ctx.x1_literal();
    let mut report = json!({
        "problem": "penrose",
        "field": p.field().to_string(),
        "params": {"m": p.m, "n": p.n},
        "index": {"A": ctx.index_a, "D": ctx.index_d},
        "small_power": ctx.small_power,
        "warnings": power_warnings(ctx.small_power, &[("A", p.m, ctx.index_a), ("D", p.n, ctx.index_d)]),
        "one_inverses": [
            certificate_json(&format!("A^{}", p.m), &ctx.g_am),
            certificate_json(&format!("D^{}", p.n), &ctx.g_dn),
        ],
        "consistency": consistency_json(&consistency),
        "x1_literal": {
            "formula": "G B + E G' - G A^m A E G'",
            "matrix": to_block(&literal),
            "differs": ctx.literal_x1_differs(),
            "solves": p.is_solution(&literal),
        },
    });
    if !consistency.consistent {
        return Ok(CliOutput::report(report, false));
    }
    report["particular"] = json!(to_block(&ctx.x1));
    attach_solution(&mut report, ctx.f_generator(), x0.map(|x| (x, ctx.g_generator(x))), &ctx.x1)?;
    Ok(CliOutput::report(report, true))
}

fn solve_kcomm(p: &KCommProblem, x0: Option<&Matrix>, abar: Option<Matrix>) -> CmdResult {
    let ctx = match abar {
        Some(abar) => Some(KCommContext::with_inverse(p, abar, Construction::UserSupplied).map_err(equation_error)?),
        None => find_kcomm_inverse(p).map_err(equation_error)?,
    };
    let mut report = json!({
        "problem": "kcomm",
        "field": p.field().to_string(),
        "params": {"k": p.k},
        "singular": p.is_singular(),
        "consistent": ctx.is_some(),
    });
    let Some(ctx) = ctx else {
        return Ok(CliOutput::report(report, false));
    };
    report["abar"] = json!({"construction": ctx.construction.as_str(), "matrix": to_block(&ctx.abar)});
    report["particular"] = json!(to_block(ctx.xhat()));
    let lemmas = ctx.lemma_report(x0).map_err(equation_error)?;
    report["lemmas"] = lemma_json(&lemmas);
    attach_solution(&mut report, Ok(ctx.f_generator()), x0.map(|x| (x, ctx.g_generator(x))), ctx.xhat())?;
    Ok(CliOutput::report(report, true))
}

fn check_repro(path: &str, field: Option<FieldSpec>) -> CmdResult {
    let h = GeneratorFile::read(path)
        .and_then(|f| f.to_generator(field))
        .map_err(|e| format!("{path}: {e}"))?;
    let verdict = h.is_reproductive().map_err(|e| e.to_string())?;
    Ok(CliOutput::ok(pretty(&verdict_json(&verdict))))
}

fn matrix_a(problem: &Problem) -> Result<&Matrix, String> {
    match problem {
        Problem::Cline(p) => Ok(&p.a),
        Problem::Penrose(p) => Ok(&p.a),
        Problem::KComm(p) => Ok(&p.a),
        Problem::OneInverse(a) | Problem::Index(a) => Ok(a),
        Problem::Oracle(_) => Err("oracle problems have no matrix A".into()),
    }
}

fn oneinv(problem: &Problem, supplied: Option<&str>) -> CmdResult {
    let a = matrix_a(problem)?;
    let cert = match matrix_file(supplied)? {
        Some(f) => {
            let g = f.get_or_only("G", a.field()).map_err(|e| e.to_string())?;
            OneInverseCertificate::verify(a, g, Construction::UserSupplied)
                .ok_or("supplied matrix G does not satisfy A G A = A")?
        }
        None => one_inverse(a),
    };
    let all = all_one_inverses(a).map_err(|e| e.to_string())?;
    let report = json!({
        "field": a.field().to_string(),
        "one_inverse": certificate_json("A", &cert),
        "all_one_inverses": set_json(&all),
    });
    Ok(CliOutput::ok(pretty(&report)))
}

fn index_command(problem: &Problem) -> CmdResult {
    let a = matrix_a(problem)?;
    let k = index(a).map_err(|e| e.to_string())?;
    Ok(CliOutput::ok(format!("{k}\n")))
}

fn oracle(problem: &Problem) -> CmdResult {
    let set = problem.system().solve().map_err(|e| e.to_string())?;
    let mut report = set_json(&set);
    report["problem"] = json!(problem.kind().as_str());
    report["field"] = json!(problem.field().to_string());
    Ok(CliOutput::report(report, set.is_consistent()))
}

fn enumerate(problem: &Problem, cap: u64) -> CmdResult {
    let field = problem.field();
    if !field.is_finite() {
        return Err(format!("enumerate needs a finite field, the problem is over {field}"));
    }
    let set = problem.system().solve().map_err(|e| e.to_string())?;
    let solutions: Vec<_> = set.enumerate(cap).map_err(|e| e.to_string())?.map(|m| to_block(&m)).collect();
    let report = json!({
        "problem": problem.kind().as_str(),
        "field": field.to_string(),
        "count": solutions.len(),
        "solutions": solutions,
    });
    Ok(CliOutput::report(report, set.is_consistent()))
}

fn sweep(name: &str, seed: u64) -> CmdResult {
    let suites = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse::<Suite>()?]
    };
    let mut stderr = String::new();
    let mut reports = Vec::new();
    for s in suites {
        let r = s.run(seed);
        stderr.push_str(&format!("{}: {} in {:.2?}\n", r.suite, if r.passed { "pass" } else { "FAIL" }, r.elapsed));
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(&reports)
    }
    .expect("suite reports serialize");
    Ok(CliOutput {
        code: if passed { EXIT_OK } else { EXIT_ERROR },
        stdout: pretty(&value),
        stderr,
    })
}
