//! `nccremona`: batch verification front end.
//!
//! Every command prints one JSON report on standard output. The exit code is
//! 0 when the report contains no distinct or failed verdict, 1 when it does,
//! and 2 for usage errors (bad flags, unreadable files, malformed input).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nccremona::commrat::commutativize;
use nccremona::cremona::{act_stepwise, classical_word, verify_relation_suite, SuiteSizes};
use nccremona::ncexpr::Normalizer;
use nccremona::repeq::{eq_nc, represent, EqConfig, EqVerdict, RepEnv};
use nccremona::syntax::{parse_nc, parse_vmatrix_json, parse_word, print_comm, print_nc, print_word, VMatrixFile};
use nccremona::vmatrix::{closure_inverse, closure_product, closure_sum, decompose, Decomposition, VMatrix};
use nccremona::{Error, ExprStore, NcExpr};
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 1;
const SEED_VAR: &str = "NC_SEED";

#[derive(Parser)]
#[command(name = "nccremona", version, about = "Noncommutative Cremona relations and the V-matrix calculus")]
struct Cli {
    /// Add the wall time in milliseconds to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Commutative image of an expression.
    Comm { expr: String },
    /// Matrix-series representation of an expression.
    Eval {
        expr: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Entries of the random S, T lie in [-bound, bound].
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long)]
        seed: Option<u64>,
        /// JSON file {"k", "N", "seed", "S", "T"} overriding the random draw.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Three-tier equality test.
    Eq {
        e1: String,
        e2: String,
        #[command(flatten)]
        eq: EqFlags,
    },
    /// Cremona group words.
    Cremona {
        #[command(subcommand)]
        command: CremonaCommand,
    },
    /// Designated element of a V-matrix.
    Delta {
        #[arg(long)]
        matrix: PathBuf,
        /// Zero-based pivots "r1,c1;r2,c2;..." (k or k-1 of them).
        #[arg(long)]
        pivots: Option<String>,
    },
    /// Closure constructions on designated elements.
    Closure {
        op: ClosureOp,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: Option<PathBuf>,
        #[command(flatten)]
        eq: EqFlags,
    },
}

#[derive(Subcommand)]
enum CremonaCommand {
    /// Image of an expression under a word, applied left to right.
    Apply {
        #[arg(long)]
        word: String,
        #[arg(long)]
        to: String,
    },
    /// Run a relation suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        eq: EqFlags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureOp {
    Inv,
    Prod,
    Sum,
}

#[derive(Args)]
struct EqFlags {
    /// Matrix sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long)]
    seed: Option<u64>,
    /// Compare coefficients as exact rational functions.
    #[arg(long)]
    exact: bool,
}

impl EqFlags {
    fn config(&self) -> Result<EqConfig, Failure> {
        if self.sizes.is_empty() || self.sizes.contains(&0) || self.order == 0 || self.trials == 0 || self.bound < 1 {
            return Err(Failure::Usage("sizes, order, trials and bound must be positive".into()));
        }
        Ok(EqConfig {
            sizes: self.sizes.clone(),
            order: self.order,
            trials: self.trials,
            bound: self.bound,
            seed: resolve_seed(self.seed)?,
            exact: self.exact,
            ..EqConfig::default()
        })
    }
}

enum Failure {
    /// Malformed input: exit code 2.
    Usage(String),
    /// A well-formed request the algebra rejects: exit code 1.
    Rejected(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Dimension(_) | Error::InvalidPivots(_) => Failure::Usage(e.to_string()),
            e => Failure::Rejected(e),
        }
    }
}

/// Flag, then `NC_SEED`, then the default.
fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_matrix(path: &PathBuf) -> Result<VMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_vmatrix_json(&text)?)
}

fn parse_pivots(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (r, c) = p.split_once(',').ok_or_else(|| Failure::Usage(format!("pivot {p:?} is not 'row,col'")))?;
            let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad pivot index {s:?}")));
            Ok((parse(r)?, parse(c)?))
        })
        .collect()
}

fn grid(store: &ExprStore, m: &[Vec<NcExpr>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|&e| print_nc(store, e)).collect()).collect()
}

fn decomposition_json(store: &ExprStore, d: &Decomposition) -> Result<Value, Failure> {
    Ok(json!({
        "pivots": d.pivots(),
        "delta": print_nc(store, d.delta),
        "comm": print_comm(&commutativize(store, d.delta)?),
        "det": d.det.to_string(),
        "minor_det": d.minor_det.to_string(),
        "U": grid(store, &d.u),
        "T": grid(store, &d.t),
    }))
}

/// Runs a command, returning its report and whether it passed.
fn run(command: &Command) -> Result<(Value, bool), Failure> {
    let store = ExprStore::new();
    match command {
        Command::Comm { expr } => {
            let e = parse_nc(&store, expr)?;
            let phi = commutativize(&store, e)?;
            Ok((json!({"command": "comm", "expr": print_nc(&store, e), "comm": print_comm(&phi)}), true))
        }
        Command::Eval { expr, k, order, bound, seed, rep } => {
            let e = parse_nc(&store, expr)?;
            let env = match rep {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|err| Failure::Usage(format!("{}: {err}", path.display())))?;
                    let env: RepEnv = serde_json::from_str(&text).map_err(|err| Failure::Usage(format!("{}: {err}", path.display())))?;
                    env.validate()?;
                    env
                }
                None => {
                    if *k == 0 || *order == 0 || *bound < 0 {
                        return Err(Failure::Usage("k and order must be positive, bound non-negative".into()));
                    }
                    RepEnv::random(*k, *order, *bound, resolve_seed(*seed)?)
                }
            };
            let m = represent(&store, e, &env)?;
            let coefficients: Vec<Vec<Vec<String>>> = (0..=m.order())
                .map(|d| m.coeff_matrix(d).iter().map(|r| r.iter().map(|c| c.reduce().to_string()).collect()).collect())
                .collect();
            let report = json!({
                "command": "eval",
                "expr": print_nc(&store, e),
                "env": env,
                "comm": print_comm(&commutativize(&store, e)?),
                "coefficients": coefficients,
            });
            Ok((report, true))
        }
        Command::Eq { e1, e2, eq } => {
            let cfg = eq.config()?;
            let a = parse_nc(&store, e1)?;
            let b = parse_nc(&store, e2)?;
            let verdict = eq_nc(&store, a, b, &cfg)?;
            let report = json!({
                "command": "eq",
                "e1": print_nc(&store, a),
                "e2": print_nc(&store, b),
                "config": cfg,
                "result": verdict,
            });
            Ok((report, !verdict.is_distinct()))
        }
        Command::Cremona { command: CremonaCommand::Apply { word, to } } => {
            let w = parse_word(&store, word)?;
            let e = parse_nc(&store, to)?;
            let image = act_stepwise(&store, &w, e)?;
            let (fx, fy) = classical_word(&store, &w)?;
            let report = json!({
                "command": "cremona apply",
                "word": print_word(&store, &w),
                "expr": print_nc(&store, e),
                "image": print_nc(&store, image),
                "comm": print_comm(&commutativize(&store, image)?),
                "classical": [print_comm(&fx.reduce()), print_comm(&fy.reduce())],
            });
            Ok((report, true))
        }
        Command::Cremona { command: CremonaCommand::Verify { suite: Suite::Paper, eq } } => {
            let cfg = eq.config()?;
            let report = verify_relation_suite(&store, &cfg, cfg.seed, &SuiteSizes::default())?;
            let passed = report.passed;
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value.as_object_mut().expect("object").insert("command".into(), json!("cremona verify"));
            Ok((value, passed))
        }
        Command::Delta { matrix, pivots } => {
            let m = read_matrix(matrix)?;
            let pivots = pivots.as_deref().map(parse_pivots).transpose()?;
            let d = decompose(&store, &m, pivots.as_deref())?;
            let report = json!({
                "command": "delta",
                "matrix": VMatrixFile::from_matrix(&m),
                "decomposition": decomposition_json(&store, &d)?,
                "delta": print_nc(&store, d.delta),
                "comm": print_comm(&commutativize(&store, d.delta)?),
            });
            Ok((report, true))
        }
        Command::Closure { op, m, n, eq } => closure(&store, *op, m, n.as_ref(), eq),
    }
}

fn closure(store: &ExprStore, op: ClosureOp, m: &PathBuf, n: Option<&PathBuf>, eq: &EqFlags) -> Result<(Value, bool), Failure> {
    let cfg = eq.config()?;
    let norm = Normalizer::new(store);
    let mm = read_matrix(m)?;
    let dm = decompose(store, &mm, None)?;
    let second = || -> Result<(VMatrix, Decomposition), Failure> {
        let path = n.ok_or_else(|| Failure::Usage("this closure needs --n".into()))?;
        let nn = read_matrix(path)?;
        let dn = decompose(store, &nn, None)?;
        Ok((nn, dn))
    };
    let (name, (p, dp), target) = match op {
        ClosureOp::Inv => ("inv", closure_inverse(store, &mm, &dm)?, norm.inv(dm.delta)?),
        ClosureOp::Prod => {
            let (nn, dn) = second()?;
            let target = norm.neg(norm.mul(dn.delta, dm.delta)?)?;
            ("prod", closure_product(store, &mm, &nn, &dm, &dn)?, target)
        }
        ClosureOp::Sum => {
            let (nn, dn) = second()?;
            let target = norm.add(dm.delta, dn.delta)?;
            ("sum", closure_sum(store, &mm, &nn, &dm, &dn)?, target)
        }
    };
    let comm = commutativize(store, dp.delta)?;
    let comm_ok = comm.equals(&commutativize(store, target)?);
    let verdict: EqVerdict = eq_nc(store, dp.delta, target, &cfg)?;
    let passed = comm_ok && !verdict.is_distinct();
    let report = json!({
        "command": format!("closure {name}"),
        "P": VMatrixFile::from_matrix(&p),
        "decomposition": decomposition_json(store, &dp)?,
        "delta": print_nc(store, dp.delta),
        "target": print_nc(store, target),
        "comm": print_comm(&comm),
        "comm_check": comm_ok,
        "config": cfg,
        "eq": verdict,
        "passed": passed,
    });
    Ok((report, passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok((mut report, passed)) => {
            if cli.timing {
                report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Rejected(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
