//! `simonzx`: synthesize Simon oracles, run the protocol, compile to MBQC
//! patterns, export cluster topologies and run the verification sweep.
//!
//! Exit codes: 0 success, 1 malformed input, 2 unrealizable function,
//! 3 pipeline stuck or a stage failing `--check`, 4 verification failure.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use simonzx::mbqc::{
    build_raw_translation, extract_pattern, instantiate, simplify_stages, topology, Form,
    OracleSettings, Stage, STAGES,
};
use simonzx::protocol::{outcome_distribution, run_simon_protocol, Backend};
use simonzx::verify::{all_passed, stage_residuals, verify_rules, verify_simon_n2};
use simonzx::zx::{to_dot, ZxDiagram};
use simonzx::{synthesize_oracle, Error, FunctionTable};

/// Largest width compiled in full.
const MAX_COMPILE_N: usize = 4;
/// Settings checked by `compile --adaptive --check` when there are more.
const CHECK_SAMPLE: usize = 64;

#[derive(Parser)]
#[command(
    name = "simonzx",
    version,
    about = "Simon oracles, ZX rewriting and MBQC patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    tol: f64,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Circuit,
    Mbqc,
}

impl From<Mode> for Backend {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Circuit => Backend::Circuit,
            Mode::Mbqc => Backend::Mbqc,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gate list for a function table (JSON file, `-` for stdin).
    Synthesize {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the Simon protocol on a function table.
    Simulate {
        input: String,
        #[arg(long, value_enum, default_value = "circuit")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        rounds: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Raw diagram, MBQC diagram and pattern for a function, the unbound
    /// adaptive form, or a given state diagram.
    Compile {
        #[arg(required_unless_present_any = ["adaptive", "diagram"], conflicts_with_all = ["adaptive", "diagram"])]
        input: Option<String>,
        #[arg(long, conflicts_with = "diagram")]
        adaptive: Option<usize>,
        /// A raw state diagram in JSON to simplify directly.
        #[arg(long)]
        diagram: Option<String>,
        /// Check every stage against its predecessor by tensor contraction.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Cluster topology of the width-`n` oracle.
    Topology {
        n: usize,
        #[arg(long)]
        expanded: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Rule soundness and the full n=2 sweep.
    Verify {
        /// Random instances per rewrite rule.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

enum Failure {
    Malformed(String),
    Unrealizable {
        residual: String,
        report: Value,
    },
    Stuck {
        stage: String,
        reason: String,
        report: Option<Value>,
    },
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unrealizable { residual } => {
                let report = json!({"status": "unrealizable", "residual": residual});
                Failure::Unrealizable { residual, report }
            }
            Error::PipelineStuck { stage, reason } => Failure::Stuck {
                stage,
                reason,
                report: None,
            },
            other => Failure::Malformed(other.to_string()),
        }
    }
}

type CmdResult = Result<Emit, Failure>;

/// What a successful command writes.
enum Emit {
    Json(Value),
    Text(String),
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_table(path: &str) -> Result<FunctionTable, Failure> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Failure::Malformed(format!("{path}: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn synthesize(input: &str, common: &Common) -> CmdResult {
    let f = read_table(input)?;
    match synthesize_oracle(&f) {
        Ok(g) => Ok(Emit::Json(
            json!({"seed": common.seed, "n": g.n, "gates": g.gates}),
        )),
        Err(Error::Unrealizable { residual }) => {
            let report = json!({"seed": common.seed, "n": f.n(), "status": "unrealizable", "residual": residual});
            Err(Failure::Unrealizable { residual, report })
        }
        Err(e) => Err(e.into()),
    }
}

fn simulate(input: &str, mode: Mode, rounds: usize, common: &Common) -> CmdResult {
    let f = read_table(input)?;
    let report = run_simon_protocol(&f, common.seed, rounds, mode.into())?;
    let other = match mode {
        Mode::Circuit => Backend::Mbqc,
        Mode::Mbqc => Backend::Circuit,
    };
    let cross = outcome_distribution(&synthesize_oracle(&f)?, other)?;
    let gap = report
        .distribution
        .iter()
        .map(|(m, p)| (p - cross.get(m).copied().unwrap_or(f64::NAN)).abs())
        .fold(0.0, f64::max);
    let mut v = to_value(&report);
    v["cross_check"] = json!({"mode": other, "max_gap": gap, "agree": gap < common.tol});
    Ok(Emit::Json(v))
}

fn stage_json(stages: &[Stage]) -> Value {
    stages
        .iter()
        .map(|s| json!({"stage": s.name, "diagram": s.diagram}))
        .collect()
}

/// Per-stage worst residual over `runs`, each a full list of stages.
fn check_report(runs: &[Vec<Stage>], tol: f64) -> Result<(Value, Option<String>), Failure> {
    let mut worst = vec![0.0f64; STAGES.len()];
    for stages in runs {
        for (w, r) in worst.iter_mut().zip(stage_residuals(stages)?) {
            *w = if r.is_nan() { f64::INFINITY } else { w.max(r) };
        }
    }
    let first_bad = STAGES
        .iter()
        .zip(&worst)
        .find(|(_, &r)| r >= tol)
        .map(|(s, _)| s.to_string());
    let entries: Vec<Value> = STAGES
        .iter()
        .zip(&worst)
        .map(|(s, &r)| {
            let status = if r < tol { "pass" } else { "fail" };
            json!({"stage": s, "status": status, "max_residual": if r.is_finite() { json!(r) } else { json!("inf") }})
        })
        .collect();
    Ok((
        json!({"settings_checked": runs.len(), "stages": entries}),
        first_bad,
    ))
}

struct CompileArgs<'a> {
    input: Option<&'a str>,
    adaptive: Option<usize>,
    diagram: Option<&'a str>,
    check: bool,
    format: Format,
}

fn compile(args: CompileArgs, common: &Common) -> CmdResult {
    let width_ok = |n: usize| {
        if (1..=MAX_COMPILE_N).contains(&n) {
            Ok(())
        } else {
            Err(Failure::Malformed(format!(
                "compile supports 1 <= n <= {MAX_COMPILE_N}, got {n}"
            )))
        }
    };
    let (n, source, raw, check_runs) = if let Some(path) = args.diagram {
        let d: ZxDiagram = serde_json::from_str(&read_input(path)?)
            .map_err(|e| Failure::Malformed(format!("{path}: {e}")))?;
        let n = d.outputs().len() / 2;
        (n, json!({"diagram": path}), d, None)
    } else if let Some(n) = args.adaptive {
        width_ok(n)?;
        let a = build_raw_translation(n)?;
        let runs = if args.check {
            let all: Vec<OracleSettings> = OracleSettings::all(n).collect();
            let picked: Vec<OracleSettings> = if all.len() <= CHECK_SAMPLE {
                all
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
                let mut idx = sample(&mut rng, all.len(), CHECK_SAMPLE).into_vec();
                idx.sort_unstable();
                idx.into_iter().map(|i| all[i].clone()).collect()
            };
            let runs = picked
                .iter()
                .map(|s| simplify_stages(&instantiate(&a, s)?))
                .collect::<simonzx::Result<Vec<_>>>()?;
            Some(runs)
        } else {
            None
        };
        (n, json!({"adaptive": n}), a.base, runs)
    } else {
        let path = args.input.expect("clap requires one source");
        let f = read_table(path)?;
        width_ok(f.n())?;
        let gates = synthesize_oracle(&f)?;
        let settings = OracleSettings::from_gates(&gates)?;
        let a = build_raw_translation(f.n())?;
        (
            f.n(),
            json!({"function": f, "gates": gates.gates}),
            instantiate(&a, &settings)?,
            None,
        )
    };

    let stages = simplify_stages(&raw)?;
    let mbqc = &stages.last().expect("nonempty").diagram;
    if args.format == Format::Dot {
        return Ok(Emit::Text(to_dot(mbqc)));
    }
    let pattern = extract_pattern(mbqc)?;
    let mut report = json!({
        "seed": common.seed,
        "n": n,
        "source": source,
        "raw": raw,
        "mbqc": mbqc,
        "spiders": mbqc.spiders().count(),
        "pattern": pattern,
        "measured": pattern.measured_count(),
        "outputs": pattern.outputs.len(),
        "stages": stage_json(&stages),
    });
    if args.check {
        let runs = check_runs.unwrap_or_else(|| vec![stages.clone()]);
        let (check, bad) = check_report(&runs, common.tol)?;
        report["check"] = check;
        if let Some(stage) = bad {
            return Err(Failure::Stuck {
                stage,
                reason: "stage not proportional to its predecessor".into(),
                report: Some(report),
            });
        }
    }
    Ok(Emit::Json(report))
}

fn cmd_topology(n: usize, expanded: bool, format: Format, common: &Common) -> CmdResult {
    let form = if expanded {
        Form::Expanded
    } else {
        Form::Compact
    };
    let t = topology(n, form)?;
    Ok(match format {
        Format::Dot => Emit::Text(t.to_dot()),
        Format::Json => {
            let mut v = to_value(&t);
            v["seed"] = json!(common.seed);
            v["counts"] = json!({
                "nodes": t.nodes.len(),
                "gadget_edges": t.gadget_edge_count(),
                "hadamard_edges": t.hadamard_edge_count(),
                "legs": t.legs.len(),
            });
            Emit::Json(v)
        }
    })
}

fn cmd_verify(instances: usize, common: &Common) -> CmdResult {
    let mut cases = verify_rules(common.seed, instances, common.tol)?;
    cases.extend(verify_simon_n2(common.seed, common.tol)?);
    let passed = all_passed(&cases);
    let report = json!({"seed": common.seed, "tol": common.tol, "passed": passed, "cases": cases});
    if passed {
        Ok(Emit::Json(report))
    } else {
        Err(Failure::Verification(report))
    }
}

fn emit(common: &Common, e: &Emit) -> io::Result<()> {
    let mut text = match e {
        Emit::Json(v) => serde_json::to_string_pretty(v).expect("json values serialize"),
        Emit::Text(t) => t.clone(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result) = match &cli.command {
        Command::Synthesize { input, common } => (common, synthesize(input, common)),
        Command::Simulate {
            input,
            mode,
            rounds,
            common,
        } => (common, simulate(input, *mode, *rounds, common)),
        Command::Compile {
            input,
            adaptive,
            diagram,
            check,
            format,
            common,
        } => {
            let args = CompileArgs {
                input: input.as_deref(),
                adaptive: *adaptive,
                diagram: diagram.as_deref(),
                check: *check,
                format: *format,
            };
            (common, compile(args, common))
        }
        Command::Topology {
            n,
            expanded,
            format,
            common,
        } => (common, cmd_topology(*n, *expanded, *format, common)),
        Command::Verify { instances, common } => (common, cmd_verify(*instances, common)),
    };
    let (code, payload) = match result {
        Ok(e) => (0, Some(e)),
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            (1, None)
        }
        Err(Failure::Unrealizable { residual, report }) => {
            eprintln!("unrealizable: residual characteristic {residual}");
            (2, Some(Emit::Json(report)))
        }
        Err(Failure::Stuck {
            stage,
            reason,
            report,
        }) => {
            eprintln!("pipeline stuck at stage {stage}: {reason}");
            (3, report.map(Emit::Json))
        }
        Err(Failure::Verification(report)) => {
            eprintln!("verification failed");
            (4, Some(Emit::Json(report)))
        }
    };
    if let Some(p) = payload {
        if let Err(e) = emit(common, &p) {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
