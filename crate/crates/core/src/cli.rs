//! Command-line front end. Exit codes: 0 success, 1 usage or input error,
//! 2 verification failure, 3 internal error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::benchgen::{gen_bernstein_vazirani, gen_random_uniform, BenchSpec};
use crate::frontend::{circuit_qasm, load_config, parse_qasm_named, schedule_qasm, ArchConfig};
use crate::ir::interaction_graph;
use crate::metrics::{overhead_report, FidelityMap};
use crate::pipeline::{compile_circuit, Artifact, EQUIV_THRESHOLD};
use crate::sweep::{run_sweep, write_csv, SweepRange, SweepSpec};
use crate::verifier::{verify, DEFAULT_EQUIV_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable overriding the configured seed.
pub const SEED_ENV: &str = "SPINQ_SEED";

#[derive(Parser, Debug)]
#[command(name = "crossbar-mapper", version, about = "Map quantum circuits onto a shared-control spin-qubit crossbar")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a QASM circuit into a crossbar schedule.
    Compile(CompileArgs),
    /// Re-verify a compiled artifact.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Print overhead and ESP metrics of a compiled artifact.
    Stats {
        #[arg(short, long)]
        input: PathBuf,
        /// Write the interaction graph (DOT, or a JSON edge list for *.json).
        #[arg(long)]
        qig: Option<PathBuf>,
    },
    /// Generate a benchmark circuit.
    Benchgen(BenchArgs),
    /// Run a generate-compile-verify sweep into a CSV file.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    /// OpenQASM 2.0 source.
    #[arg(short, long)]
    pub input: PathBuf,
    /// JSON architecture configuration.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// JSON artifact to write.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Also write the cycle-annotated instruction listing.
    #[arg(long)]
    pub emit_qasm: Option<PathBuf>,
    /// Skip replay and equivalence checking.
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, conflicts_with = "bv")]
    pub qubits: Option<usize>,
    #[arg(long, requires = "qubits")]
    pub gates: Option<usize>,
    /// Two-qubit gates per 100 single-qubit gates.
    #[arg(long, default_value_t = 50.0)]
    pub twoq: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bernstein–Vazirani instance with this many qubits (ancilla included).
    #[arg(long)]
    pub bv: Option<usize>,
    #[arg(long, requires = "bv")]
    pub secret: Option<String>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Qubit counts, `start:stop:step` or a single value.
    #[arg(long)]
    pub qubits: SweepRange,
    /// Gate counts, `start:stop:step` or a single value.
    #[arg(long)]
    pub gates: SweepRange,
    /// Two-qubit ratios, `start:stop:step` or a single value.
    #[arg(long)]
    pub twoq: SweepRange,
    /// Seeds per grid point.
    #[arg(long, default_value_t = 1)]
    pub seeds: usize,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// Run grid points concurrently.
    #[arg(long)]
    pub parallel: bool,
}

/// Prints to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Loads the configuration file (or defaults) and applies the seed
/// override from the environment.
pub fn resolve_config(text: Option<&str>, seed_env: Option<&str>) -> Result<ArchConfig, String> {
    let mut cfg = match text {
        Some(t) => load_config(t).map_err(|e| e.to_string())?,
        None => ArchConfig::default(),
    };
    if let Some(s) = seed_env {
        cfg.seed = s.trim().parse().map_err(|_| format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))?;
    }
    Ok(cfg)
}

fn config_from(path: Option<&Path>) -> Result<ArchConfig, Failure> {
    let text = path.map(read).transpose()?;
    let env = std::env::var(SEED_ENV).ok();
    resolve_config(text.as_deref(), env.as_deref()).map_err(usage)
}

fn compile(a: &CompileArgs) -> Result<i32, Failure> {
    let cfg = config_from(a.config.as_deref())?;
    let name = a.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "circuit".into());
    let parsed = parse_qasm_named(&read(&a.input)?, &name).map_err(|e| usage(e.to_string()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let out = compile_circuit(&parsed.circuit, &cfg).map_err(|e| Failure {
        code: if e.is_internal() { EXIT_INTERNAL } else { EXIT_USAGE },
        msg: e.to_string(),
    })?;
    let verification = (!a.no_verify).then(|| out.verify(&cfg));
    let metrics = out.metrics(&cfg).ok();
    let art = Artifact {
        schedule: out.schedule.clone(),
        decomposed: out.decomposed.clone(),
        config: cfg,
        metrics: metrics.clone(),
        verification: verification.clone(),
        warnings: parsed.warnings,
    };
    write(&a.output, &art.to_json())?;
    if let Some(p) = &a.emit_qasm {
        write(p, &schedule_qasm(&out.schedule))?;
    }
    if let Some(m) = metrics {
        say!(
            "{}: {} -> {} instructions ({:+.2}%), depth {} -> {} ({:+.2}%), esp {:.6}, {:.3} ms",
            m.name,
            m.n_decomposed,
            m.n_final,
            m.gate_overhead_pct,
            m.d_dependency,
            m.d_final,
            m.depth_overhead_pct,
            m.esp,
            m.compile_time_ms
        );
    }
    match verification {
        Some(v) if !v.ok(EQUIV_THRESHOLD) => {
            eprintln!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            Err(Failure { code: EXIT_VERIFY, msg: "verification failed".into() })
        }
        _ => Ok(EXIT_OK),
    }
}

fn load_artifact(path: &Path) -> Result<Artifact, Failure> {
    Artifact::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verify_cmd(input: &Path) -> Result<i32, Failure> {
    let art = load_artifact(input)?;
    let r = verify(Some(&art.decomposed), &art.schedule, DEFAULT_EQUIV_CAP, art.config.seed);
    say!("{}", serde_json::to_string_pretty(&r).unwrap_or_default());
    Ok(if r.ok(EQUIV_THRESHOLD) { EXIT_OK } else { EXIT_VERIFY })
}

fn stats(input: &Path, qig: Option<&Path>) -> Result<i32, Failure> {
    let art = load_artifact(input)?;
    let fmap = FidelityMap::build(art.schedule.grid, &art.config);
    let mut m = overhead_report(&art.decomposed, &art.schedule, &fmap).map_err(|e| usage(e.to_string()))?;
    m.compile_time_ms = art.metrics.as_ref().map_or(0.0, |r| r.compile_time_ms);
    let doc = serde_json::json!({
        "metrics": m,
        "instructions_by_cycle_type": art.schedule.counts(),
    });
    say!("{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
    if let Some(p) = qig {
        let g = interaction_graph(&art.decomposed);
        let text = if p.extension().is_some_and(|e| e == "json") { g.to_json() } else { g.to_dot(&art.decomposed.name) };
        write(p, &text)?;
    }
    Ok(EXIT_OK)
}

fn benchgen(a: &BenchArgs) -> Result<i32, Failure> {
    let circuit = match (a.bv, a.qubits) {
        (Some(n), _) => {
            let secret = a.secret.clone().unwrap_or_else(|| crate::benchgen::sparse_secret(n.saturating_sub(1)));
            gen_bernstein_vazirani(n, &secret)
        }
        (None, Some(n)) => {
            let gates = a.gates.ok_or_else(|| usage("--gates is required with --qubits"))?;
            gen_random_uniform(&BenchSpec { n_qubits: n, n_gates: gates, twoq_pct: a.twoq, seed: a.seed })
        }
        (None, None) => return Err(usage("either --qubits/--gates or --bv is required")),
    }
    .map_err(|e| usage(e.to_string()))?;
    write(&a.output, &circuit_qasm(&circuit))?;
    Ok(EXIT_OK)
}

fn sweep(a: &SweepArgs) -> Result<i32, Failure> {
    let cfg = config_from(a.config.as_deref())?;
    let spec = SweepSpec::from_ranges(a.qubits, a.gates, a.twoq, a.seeds, cfg.seed);
    let rows = run_sweep(&spec, &cfg, a.parallel);
    let file = fs::File::create(&a.csv).map_err(|e| usage(format!("{}: {e}", a.csv.display())))?;
    write_csv(&rows, file).map_err(|e| usage(e.to_string()))?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    say!("{} points, {} with errors -> {}", rows.len(), failed, a.csv.display());
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Compile(a) => compile(a),
        Command::Verify { input } => verify_cmd(input),
        Command::Stats { input, qig } => stats(input, qig.as_deref()),
        Command::Benchgen(a) => benchgen(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}
