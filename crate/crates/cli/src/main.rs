use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use auditgame::arith::{self, Rational};
use auditgame::game_model::{generate_random, parse_instance, serialize_instance, MAX_GENERATED_K};
use auditgame::oracle::game_oracle;
use auditgame::stackelberg_solver::SolveError;
use auditgame::{solve_game, AuditGameInstance, Execution, GameSolution, PrecFamily, SolverConfig};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const PREC_ENV: &str = "AUDITGAME_PREC_FAMILY";
const DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "auditgame", version, about = "Approximate Stackelberg equilibria of audit games")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file and print the strategy as JSON.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Report wall-clock time on stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Write a random instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long = "K")]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add the zero-utility dummy target.
        #[arg(long)]
        dummy: bool,
        /// Output path; stdout when omitted.
        out: Option<PathBuf>,
    },
    /// Solve and check the result against the naive grid method.
    Compare {
        instance: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value = "1e-4")]
        grid_step: String,
        /// Shift the solver value down before checking (exercises the
        /// failure path).
        #[arg(long, hide = true)]
        corrupt_solver: bool,
    },
    /// Time the solver on random instances of growing size.
    Bench {
        /// Comma-separated target counts.
        #[arg(long, default_value = "2,5,10,20,30,40,50", value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long = "K", default_value_t = 16)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Additive accuracy: `p/q`, an integer, or a decimal such as 1e-6.
    #[arg(long, default_value = "1e-6")]
    epsilon: String,
    /// Root bound family; AUDITGAME_PREC_FAMILY takes precedence.
    #[arg(long, default_value = "tight")]
    prec_family: String,
    /// Worker threads for the parallel path.
    #[arg(long)]
    threads: Option<usize>,
    /// Run every subproblem on the calling thread.
    #[arg(long)]
    sequential: bool,
}

enum Failure {
    Input(String),
    Breach(String),
    Sandwich(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Sandwich(_) => 1,
            Failure::Input(_) => 2,
            Failure::Breach(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Breach(m) | Failure::Sandwich(m) => m,
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        match e {
            SolveError::Model(_) | SolveError::NonPositiveEpsilon => Failure::Input(e.to_string()),
            _ => Failure::Breach(e.to_string()),
        }
    }
}

struct Settings {
    eps: Rational,
    cfg: SolverConfig,
    threads: Option<usize>,
}

impl SolverArgs {
    fn settings(&self) -> Result<Settings, Failure> {
        let eps = arith::parse_rational(&self.epsilon).map_err(|m| Failure::Input(format!("--epsilon: {m}")))?;
        if eps <= Rational::from_integer(0.into()) {
            return Err(Failure::Input("--epsilon must be positive".into()));
        }
        let family_text = std::env::var(PREC_ENV).unwrap_or_else(|_| self.prec_family.clone());
        let family: PrecFamily = family_text.parse().map_err(Failure::Input)?;
        let exec = if self.sequential { Execution::Sequential } else { Execution::Parallel };
        if self.threads == Some(0) {
            return Err(Failure::Input("--threads must be at least 1".into()));
        }
        Ok(Settings { eps, cfg: SolverConfig { family, exec }, threads: self.threads })
    }
}

/// Runs `f` inside a pool of the requested size.
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Failure::Breach(format!("thread pool: {e}")))?;
        return Ok(pool.install(f));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(f())
}

fn load(path: &PathBuf) -> Result<AuditGameInstance, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_instance(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn num(r: &Rational) -> Value {
    json!({ "exact": arith::format_rational(r), "decimal": arith::to_decimal(r, DIGITS) })
}

fn render(inst: &AuditGameInstance, sol: &GameSolution) -> Value {
    let probs: Vec<Value> = sol.strategy.probs.iter().map(num).collect();
    let per_star: Vec<Value> = sol
        .per_star_values()
        .iter()
        .map(|(s, v)| json!({ "star": s.label(), "value": v.as_ref().map(num) }))
        .collect();
    let mut out = json!({
        "best_star": sol.best_star.label(),
        "x": num(&sol.strategy.x),
        "probs": probs,
    });
    if inst.has_dummy {
        let p0 = sol.strategy.dummy.clone().unwrap_or_default();
        out["dummy_prob"] = num(&p0);
    }
    out["defender_value"] = num(&sol.defender_value);
    out["epsilon"] = num(&sol.epsilon);
    out["per_star_values"] = Value::Array(per_star);
    out
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn solve(inst: &AuditGameInstance, s: &Settings) -> Result<GameSolution, Failure> {
    with_threads(s.threads, || solve_game(inst, &s.eps, &s.cfg))?.map_err(Failure::from)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Solve { instance, solver, timing } => {
            let s = solver.settings()?;
            let inst = load(&instance)?;
            let t0 = Instant::now();
            let sol = solve(&inst, &s)?;
            if timing {
                eprintln!("solve: {:.3} s", t0.elapsed().as_secs_f64());
            }
            print(&render(&inst, &sol));
        }
        Cmd::Generate { n, k, seed, dummy, out } => {
            if n == 0 {
                return Err(Failure::Input("--n must be at least 1".into()));
            }
            if !(1..=MAX_GENERATED_K).contains(&k) {
                return Err(Failure::Input(format!("--K must be in 1..={MAX_GENERATED_K}")));
            }
            let mut inst = generate_random(n, k, seed);
            inst.has_dummy = dummy;
            let bytes = serialize_instance(&inst);
            match out {
                Some(p) => std::fs::write(&p, bytes).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => print!("{}", String::from_utf8(bytes).expect("utf-8")),
            }
        }
        Cmd::Compare { instance, solver, grid_step, corrupt_solver } => {
            let s = solver.settings()?;
            let step = arith::parse_rational(&grid_step).map_err(|m| Failure::Input(format!("--grid-step: {m}")))?;
            if step <= Rational::from_integer(0.into()) || step > Rational::from_integer(1.into()) {
                return Err(Failure::Input("--grid-step must lie in (0, 1]".into()));
            }
            let inst = load(&instance)?;
            let t0 = Instant::now();
            let sol = solve(&inst, &s)?;
            let solver_secs = t0.elapsed().as_secs_f64();
            let t1 = Instant::now();
            let orc = with_threads(s.threads, || game_oracle(&inst, &step, s.cfg.exec))?;
            let oracle_secs = t1.elapsed().as_secs_f64();
            let mut value = sol.defender_value.clone();
            if corrupt_solver {
                value = value - &s.eps - &orc.error_bound - Rational::from_integer(1.into());
            }
            let oracle_value = orc.defender_value.clone().ok_or_else(|| Failure::Breach("grid method found no feasible point".into()))?;
            let lower_ok = value >= &oracle_value - &s.eps;
            let upper_ok = oracle_value >= &value - &orc.error_bound;
            let pass = lower_ok && upper_ok;
            print(&json!({
                "solver_value": num(&value),
                "oracle_value": num(&oracle_value),
                "gap": num(&(&oracle_value - &value)),
                "error_bound": num(&orc.error_bound),
                "epsilon": num(&s.eps),
                "grid_step": num(&step),
                "verdict": if pass { "pass" } else { "fail" },
                "solver_seconds": solver_secs,
                "oracle_seconds": oracle_secs,
            }));
            if !pass {
                return Err(Failure::Sandwich(format!(
                    "sandwich failed: solver >= oracle - eps is {lower_ok}, oracle >= solver - bound is {upper_ok}"
                )));
            }
        }
        Cmd::Bench { sizes, k, seed, solver } => {
            let s = solver.settings()?;
            if !(1..=MAX_GENERATED_K).contains(&k) {
                return Err(Failure::Input(format!("--K must be in 1..={MAX_GENERATED_K}")));
            }
            let mut prev: Option<f64> = None;
            let mut monotone = true;
            for n in sizes {
                if n == 0 {
                    return Err(Failure::Input("sizes must be positive".into()));
                }
                let inst = generate_random(n, k, seed);
                let t0 = Instant::now();
                solve(&inst, &s)?;
                let secs = t0.elapsed().as_secs_f64();
                monotone &= prev.is_none_or(|p| secs >= p);
                prev = Some(secs);
                println!("{}", json!({ "n": n, "K": k, "seconds": secs }));
            }
            println!("{}", json!({ "monotone": monotone }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
