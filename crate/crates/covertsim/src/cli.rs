//! Command-line interface.
//!
//! Subcommands: `theory` (exponent tables), `simulate` (single run, full
//! slot dump), `sweep` (n-grid regression experiments), `validate`
//! (invariant suites), `calibrate` (transmit-power search report).
//!
//! Exit codes: 0 success, 1 validation/runtime failure, 2 usage error.
//! Flags mirror the configuration fields; a flat `key=value` config file may
//! supply them, with flags taking precedence.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::config::{LedgerMode, NetworkConfig, Pairing, PowerRule};
use crate::emit::{self, Format};
use crate::error::{Error, Result};
use crate::scheme::{self, LedgerSummary, SlotMetrics};
use crate::stats;
use crate::sweep::{run_sweep, Metric, SweepSpec};
use crate::theory::{
    achievable_exponent_dense, achievable_exponent_sparse, converse_exponents,
    warden_power_exponent, RegimeParams,
};
use crate::validate::run_validation;

#[derive(Debug, Parser)]
#[command(
    name = "covertsim",
    version,
    about = "Monte Carlo simulator and scaling-law analysis for covert communication \
             over a mobile wireless ad hoc network",
    subcommand_required = true,
    arg_required_else_help = true
)]
pub struct Cli {
    /// Worker threads for the rayon pool (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print closed-form scaling exponents over an (alpha, s, lambda) grid.
    Theory(TheoryArgs),
    /// Run a single configuration and dump per-slot metrics as JSON.
    Simulate(SimulateArgs),
    /// Run an n-grid sweep, fit scaling exponents, and emit CSV/JSON.
    Sweep(SweepArgs),
    /// Run the invariant suites (distance laws, Pinsker, log-sandwich,
    /// KL chain, ring sandwich).
    Validate(ValidateArgs),
    /// Report the calibrated transmit power for one configuration.
    Calibrate(CalibrateArgs),
}

/// Flags mirroring [`NetworkConfig`]; unset flags fall back to the config
/// file and then to defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Flat key=value config file (one `field = value` per line, `#` comments).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Testing window length in channel uses (mutually exclusive with --lambda).
    #[arg(long)]
    pub l: Option<u64>,
    /// Testing window exponent, l = n^lambda (mutually exclusive with --l).
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub n0: Option<f64>,
    #[arg(long)]
    pub gain: Option<f64>,
    #[arg(long)]
    pub c_w: Option<f64>,
    #[arg(long)]
    pub c_p: Option<f64>,
    #[arg(long)]
    pub eps_p: Option<f64>,
    #[arg(long)]
    pub eps_tx: Option<f64>,
    #[arg(long)]
    pub warden_mobile: Option<bool>,
    #[arg(long, value_enum)]
    pub centric: Option<Pairing>,
    #[arg(long, value_enum)]
    pub power_rule: Option<PowerRule>,
    #[arg(long)]
    pub c_tx: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<LedgerMode>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    /// Path-loss exponents to tabulate.
    #[arg(long, value_delimiter = ',', default_value = "3.0,4.0")]
    pub alpha: Vec<f64>,
    /// Warden-count exponents to tabulate.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.25,0.5,0.75,1.0,1.5,2.0"
    )]
    pub s: Vec<f64>,
    /// Testing-window exponents to tabulate.
    #[arg(long, value_delimiter = ',', default_value = "0.0,1.0,2.0")]
    pub lambda: Vec<f64>,
    /// Sub-polynomial margin epsilon.
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 100)]
    pub slots: u64,
    /// Slots excluded from throughput accounting at the start of the run.
    #[arg(long, default_value_t = 0)]
    pub warmup: u64,
    /// Output path for the JSON document (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Strictly increasing node-count grid, at least 4 points.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "256,512,1024,2048,4096,8192"
    )]
    pub n_grid: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub slots: u64,
    #[arg(long, default_value_t = 8)]
    pub trials: u64,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "warden-power"
    )]
    pub metrics: Vec<Metric>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Shrink suite sizes for a seconds-scale smoke run.
    #[arg(long)]
    pub quick: bool,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Optional path for the JSON calibration report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit code for an error: usage problems are 2, everything else 1.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidConfig(_) | Error::GridTooShort(_) => 2,
        _ => 1,
    }
}

fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path)?;
    let mut kvs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::InvalidConfig(format!(
                "{}:{}: expected key = value, got {raw:?}",
                path.display(),
                idx + 1
            )));
        };
        kvs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(kvs)
}

fn parse_enum<T: clap::ValueEnum>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true)
        .map_err(|_| Error::InvalidConfig(format!("bad value for {key}: {value}")))
}

fn parse_val<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad value for {key}: {value}")))
}

fn apply_kv(over: &mut ConfigArgs, key: &str, value: &str) -> Result<()> {
    match key {
        "n" => over.n = Some(parse_val(key, value)?),
        "s" => over.s = Some(parse_val(key, value)?),
        "alpha" => over.alpha = Some(parse_val(key, value)?),
        "theta" => over.theta = Some(parse_val(key, value)?),
        "delta" => over.delta = Some(parse_val(key, value)?),
        "l" => over.l = Some(parse_val(key, value)?),
        "lambda" => over.lambda = Some(parse_val(key, value)?),
        "n0" => over.n0 = Some(parse_val(key, value)?),
        "gain" => over.gain = Some(parse_val(key, value)?),
        "c_w" => over.c_w = Some(parse_val(key, value)?),
        "c_p" => over.c_p = Some(parse_val(key, value)?),
        "eps_p" => over.eps_p = Some(parse_val(key, value)?),
        "eps_tx" => over.eps_tx = Some(parse_val(key, value)?),
        "warden_mobile" => over.warden_mobile = Some(parse_val(key, value)?),
        "centric" => over.centric = Some(parse_enum(key, value)?),
        "power_rule" => over.power_rule = Some(parse_enum(key, value)?),
        "c_tx" => over.c_tx = Some(parse_val(key, value)?),
        "mode" => over.mode = Some(parse_enum(key, value)?),
        "seed" => over.seed = Some(parse_val(key, value)?),
        _ => return Err(Error::InvalidConfig(format!("unknown config key: {key}"))),
    }
    Ok(())
}

/// Resolve defaults < config file < flags into a validated config.
pub fn build_config(args: &ConfigArgs) -> Result<NetworkConfig> {
    let mut over = ConfigArgs::default();
    if let Some(path) = &args.config {
        for (k, v) in parse_config_file(path)? {
            apply_kv(&mut over, &k, &v)?;
        }
    }
    // Flags win over file values.
    macro_rules! overlay {
        ($($field:ident),*) => {
            $(if args.$field.is_some() { over.$field = args.$field.clone(); })*
        };
    }
    overlay!(
        n,
        s,
        alpha,
        theta,
        delta,
        l,
        lambda,
        n0,
        gain,
        c_w,
        c_p,
        eps_p,
        eps_tx,
        warden_mobile,
        centric,
        power_rule,
        c_tx,
        mode,
        seed
    );

    let mut cfg = NetworkConfig::default();
    macro_rules! set {
        ($($field:ident),*) => {
            $(if let Some(v) = over.$field { cfg.$field = v; })*
        };
    }
    set!(
        n,
        s,
        alpha,
        theta,
        delta,
        n0,
        gain,
        c_w,
        c_p,
        eps_p,
        eps_tx,
        warden_mobile,
        centric,
        power_rule,
        c_tx,
        mode,
        seed
    );
    // The testing window is a single choice: an explicit l or lambda
    // replaces the default pair entirely.
    match (over.l, over.lambda) {
        (Some(l), None) => {
            cfg.l = Some(l);
            cfg.lambda = None;
        }
        (None, Some(lambda)) => {
            cfg.l = None;
            cfg.lambda = Some(lambda);
        }
        (Some(l), Some(lambda)) => {
            cfg.l = Some(l);
            cfg.lambda = Some(lambda); // validate() rejects the pair
        }
        (None, None) => {}
    }
    cfg.validate()?;
    Ok(cfg)
}

/// JSON document produced by `simulate`.
#[derive(Debug, Serialize)]
struct SimulateDocument<'a> {
    config: &'a NetworkConfig,
    slots: u64,
    warmup: u64,
    p_tx: f64,
    ledger: &'a LedgerSummary,
    flow_throughput_min: f64,
    flow_throughput_median: f64,
    flow_throughput_max: f64,
    metrics: &'a [SlotMetrics],
}

/// Dispatch a parsed command line. Returns the process exit code.
pub fn run(cli: Cli) -> Result<u8> {
    if cli.workers > 0 {
        // Ignore the error if a pool already exists (e.g. repeated calls in
        // one process); the configured pool only matters for fresh runs.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global();
    }
    match cli.command {
        Command::Theory(args) => run_theory(&args),
        Command::Simulate(args) => run_simulate(&args),
        Command::Sweep(args) => run_sweep_cmd(&args),
        Command::Validate(args) => run_validate_cmd(&args),
        Command::Calibrate(args) => run_calibrate(&args),
    }
}

fn run_theory(args: &TheoryArgs) -> Result<u8> {
    println!(
        "{:>6} {:>6} {:>7} {:>5}  {:>10} {:>17} {:>13}  {:>10} {:>12}  {:>12}",
        "alpha",
        "s",
        "lambda",
        "eps",
        "achievable",
        "law",
        "branch",
        "ub-trivial",
        "ub-eq-power",
        "warden-slope"
    );
    for &alpha in &args.alpha {
        for &s in &args.s {
            for &lambda in &args.lambda {
                let p = RegimeParams::new(alpha, s, lambda, args.eps)?;
                let ach = if s < 1.0 {
                    achievable_exponent_sparse(&p)?
                } else {
                    achievable_exponent_dense(&p)?
                };
                let ubs = converse_exponents(&p)?;
                let warden = warden_power_exponent(&p, 0.0, 0.0);
                let log_note = if warden.log_factor_exponent > 0 {
                    format!("{:+.4}*log^{}", warden.slope, warden.log_factor_exponent)
                } else {
                    format!("{:+.4}", warden.slope)
                };
                println!(
                    "{:>6.2} {:>6.2} {:>7.2} {:>5.2}  {:>10.4} {:>17} {:>13}  {:>10.4} {:>12.4}  {:>12}",
                    alpha,
                    s,
                    lambda,
                    args.eps,
                    ach.throughput_exponent,
                    format!("{:?}", ach.regime),
                    format!("{:?}", ach.min_branch),
                    ubs.trivial.throughput_exponent,
                    ubs.assumed_equal_power.throughput_exponent,
                    log_note,
                );
            }
        }
    }
    Ok(0)
}

fn run_simulate(args: &SimulateArgs) -> Result<u8> {
    let cfg = build_config(&args.config)?;
    let out = scheme::simulate(&cfg, args.slots, args.warmup)?;
    let doc = SimulateDocument {
        config: &cfg,
        slots: args.slots,
        warmup: args.warmup,
        p_tx: out.p_tx,
        ledger: &out.ledger,
        flow_throughput_min: out
            .per_flow_throughput
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min),
        flow_throughput_median: stats::median(&out.per_flow_throughput),
        flow_throughput_max: out
            .per_flow_throughput
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max),
        metrics: &out.metrics,
    };
    let bytes = emit::to_json_bytes(&doc)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &bytes)?;
            println!(
                "simulate: n={} slots={} p_tx={:e} aggregate_throughput={:e} -> {}",
                cfg.n,
                args.slots,
                out.p_tx,
                out.ledger.aggregate_throughput,
                path.display()
            );
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(0)
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<u8> {
    let cfg = build_config(&args.config)?;
    let spec = SweepSpec {
        n_grid: args.n_grid.clone(),
        slots_per_n: args.slots,
        trials_per_n: args.trials,
        metrics: args.metrics.iter().copied().collect::<BTreeSet<_>>(),
    };
    let result = run_sweep(&spec, &cfg)?;
    emit::emit(&result, &cfg, &spec, args.format, &args.out)?;
    println!(
        "sweep: {} points over n-grid {:?} -> {}",
        result.points.len(),
        spec.n_grid,
        args.out.display()
    );
    let mut low_r2 = false;
    for fit in &result.fits {
        println!(
            "fit {}: slope={:+.4} predicted={:+.4} abs_error={:.4} r2={:.4}",
            fit.metric.name(),
            fit.slope,
            fit.predicted_slope,
            fit.abs_error,
            fit.r_squared
        );
        if fit.r_squared < 0.9 {
            low_r2 = true;
        }
    }
    if low_r2 {
        eprintln!("sweep: flagged: a fit compared against an oracle slope has r2 < 0.9");
        return Ok(1);
    }
    Ok(0)
}

fn run_validate_cmd(args: &ValidateArgs) -> Result<u8> {
    let cfg = build_config(&args.config)?;
    let outcomes = run_validation(&cfg, args.quick)?;
    let mut all_ok = true;
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        all_ok &= o.passed;
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn run_calibrate(args: &CalibrateArgs) -> Result<u8> {
    let cfg = build_config(&args.config)?;
    let report = scheme::calibrate(&cfg)?;
    println!(
        "calibrate: n={} l={} delta={}",
        cfg.n,
        cfg.window_len(),
        cfg.delta
    );
    println!("  rho_max_sufficient = {:e}", report.rho_max_sufficient);
    println!("  target (with margin) = {:e}", report.target);
    println!(
        "  pilot unit max warden power = {:e} over {} slots",
        report.unit_max_warden_power, report.pilot_slots
    );
    println!("  chosen power = {:e}", report.chosen_power);
    println!("  c_tx equivalent = {:e}", report.c_tx_equivalent);
    println!(
        "  grid: [{:e}, {:e}] at {} points/decade",
        report.grid_min, report.grid_max, report.points_per_decade
    );
    if let Some(path) = &args.out {
        fs::write(path, emit::to_json_bytes(&report)?)?;
    }
    Ok(0)
}
