//! Command-line front end: eight batch subcommands, each a thin adapter
//! that parses flags into a serializable `RunConfig`, calls one module
//! pipeline, and writes a CSV or JSON report plus a one-line summary.
//!
//! Exit codes: 0 success, 1 contract/domain violation, 2 capacity error,
//! 64 usage error. The report goes to `--out` when given, stdout otherwise;
//! the summary goes to the other stream so the report stays machine-clean.
//! Identical configs (seed included) produce byte-identical reports.

use crate::bits::format_bits;
use crate::error::{Error, Result};
use crate::evolution::{
    closed_form_search_delay, integrate, make_adaptive_schedule, make_constant_schedule, run_doc,
};
use crate::hamiltonian::{family_from_doc, Backend, FamilyTag, ProblemFamily};
use crate::satquery::{
    compute_table, decide_sat, query_low_weight, report_to_csv, verification_report, Formula3CNF,
};
use crate::spectral::{
    closed_form_search_gap, closed_form_weight_gap, gap_curve, gap_function,
    lower_bound_diagnostic, min_gap, spike_gap_bound,
};
use crate::trotter::{lemma1_check, sweep_to_csv, trotter_error_sweep};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Once;

/// One fully resolved run: everything a subcommand needs, and nothing that
/// depends on the process environment. Two runs with an identical config
/// write byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<(usize, usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_values: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify_all: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub json: bool,
}

impl RunConfig {
    fn new(command: &str) -> Self {
        RunConfig {
            command: command.into(),
            family: None,
            n_range: None,
            grid: None,
            backend: None,
            tol_s: None,
            schedule: None,
            t: None,
            c: None,
            steps: None,
            r_values: None,
            delta: None,
            trials: None,
            n: None,
            formula: None,
            verify_all: None,
            seed: None,
            json: false,
        }
    }

    fn family(&self) -> Result<ProblemFamily> {
        let doc = self
            .family
            .as_ref()
            .ok_or_else(|| Error::Contract("config has no family".into()))?;
        family_from_doc(doc)
    }

    fn backend(&self) -> Result<Backend> {
        match self.backend.as_deref() {
            Some("dense") | None => Ok(Backend::Dense),
            Some("dicke") => Ok(Backend::Dicke),
            Some(other) => Err(Error::Parse(format!(
                "unknown backend {other:?}, want dense or dicke"
            ))),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "adiabatic-lab",
    version,
    about = "Interpolated-Hamiltonian spectra, schedules, evolutions, and query reconstruction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two lowest eigenvalues and the gap of H(s) over an s grid
    #[command(name = "gap-scan")]
    GapScan(GapScanArgs),
    /// Refined minimum gap as a function of n, with the spike-family ceiling
    #[command(name = "min-gap-scaling")]
    MinGapScaling(MinGapScalingArgs),
    /// Integrate the interpolated evolution under a delay schedule
    #[command(name = "evolve")]
    Evolve(EvolveArgs),
    /// Adaptive-schedule total delay for the search family vs the closed form
    #[command(name = "search-delay")]
    SearchDelay(SearchDelayArgs),
    /// Split-step error against the converged integrator across step counts
    #[command(name = "trotter-sweep")]
    TrotterSweep(TrotterSweepArgs),
    /// Random-perturbation trials of the √(2Tδ) path-distance bound
    #[command(name = "lemma1-check")]
    Lemma1Check(Lemma1CheckArgs),
    /// Rank-one crossing diagnostic at the critical s for the spike family
    #[command(name = "lower-bound")]
    LowerBound(LowerBoundArgs),
    /// Reconstruct the unsatisfied-clause oracle from weight-≤3 queries
    #[command(name = "sat-reconstruct")]
    SatReconstruct(SatReconstructArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// Problem family: hamming | search | perturbed-spike | perturbed
    #[arg(long)]
    family: String,
    /// Marked bit string for the search family (default 0ⁿ)
    #[arg(long)]
    u: Option<String>,
    /// Threshold offset ε for the perturbed family
    #[arg(long)]
    epsilon: Option<f64>,
    /// Decreasing cost table for weights above (½+ε)·n, ending at −1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Option<Vec<f64>>,
}

impl FamilyArgs {
    fn doc(&self, n: usize) -> Value {
        let mut params = serde_json::Map::new();
        if self.family == "search" {
            let u = self.u.clone().unwrap_or_else(|| "0".repeat(n));
            params.insert("u".into(), Value::String(u));
        }
        if let Some(e) = self.epsilon {
            params.insert("epsilon".into(), json!(e));
        }
        if let Some(p) = &self.p {
            params.insert("p".into(), json!(p));
        }
        json!({"family": self.family, "n": n, "params": Value::Object(params)})
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV (JSON-only commands ignore this)
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GapScanArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    /// Number of evenly spaced grid points on [0, 1]
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// dense (full 2ⁿ) or dicke (symmetric-subspace) eigensolver
    #[arg(long, default_value = "dense")]
    backend: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MinGapScalingArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Single size or inclusive range, e.g. 12 or 8..24
    #[arg(long)]
    n: String,
    /// Stride through the n range
    #[arg(long, default_value_t = 1)]
    step: usize,
    /// dense or dicke; dicke reaches any n for weight-symmetric families
    #[arg(long, default_value = "dicke")]
    backend: String,
    /// Golden-section window width at which refinement stops
    #[arg(long, default_value_t = 1e-7)]
    tol_s: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    /// constant or adaptive
    #[arg(long, default_value = "constant")]
    schedule: String,
    /// Total delay T for the constant schedule
    #[arg(long)]
    t: Option<f64>,
    /// Adiabaticity constant c for the adaptive schedule τ = c/g²
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value = "dense")]
    backend: String,
    /// Initial step count for the doubling integrator
    #[arg(long, default_value_t = 256)]
    steps: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SearchDelayArgs {
    /// Single size or inclusive range, e.g. 1..12
    #[arg(long)]
    n: String,
    #[arg(long, default_value_t = 1)]
    step: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TrotterSweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    /// Total delay T
    #[arg(long)]
    t: f64,
    /// Comma-separated slice counts, e.g. 64,128,256
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct Lemma1CheckArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    /// Total delay T
    #[arg(long)]
    t: f64,
    /// Perturbation operator norm δ
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LowerBoundArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SatReconstructArgs {
    /// DIMACS-style formula file
    #[arg(long)]
    formula: PathBuf,
    /// Compare the reconstruction against direct counting on all 2ⁿ rows
    #[arg(long)]
    verify_all: bool,
    #[command(flatten)]
    output: OutputArgs,
}

/// "8..24" → (8, 24); "12" → (12, 12).
fn parse_n_range(text: &str) -> Result<(usize, usize)> {
    let parse_one = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size {s:?}")))
    };
    match text.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse_one(lo)?, parse_one(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(Error::Parse(format!("empty range {text:?}")));
            }
            Ok((lo, hi))
        }
        None => {
            let n = parse_one(text)?;
            Ok((n, n))
        }
    }
}

fn range_values(range: (usize, usize, usize)) -> Vec<usize> {
    let (lo, hi, step) = range;
    (lo..=hi).step_by(step.max(1)).collect()
}

static THREAD_POOL: Once = Once::new();

fn configure_threads() {
    THREAD_POOL.call_once(|| {
        if let Ok(text) = std::env::var("ADIABATIC_LAB_THREADS") {
            if let Ok(k) = text.trim().parse::<usize>() {
                if k >= 1 {
                    // Ignore failure: a pool may already exist in-process.
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
                }
            }
        }
    });
}

/// Parse argv and run one subcommand; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                _ => {
                    let _ = e.print();
                    64
                }
            };
        }
    };
    configure_threads();
    let (config, out_path) = match build_config(cli.command) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match execute(&config) {
        Ok(output) => {
            let mut report = output.report;
            if !report.ends_with('\n') {
                report.push('\n');
            }
            match &out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &report) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 1;
                    }
                    println!("{}", output.summary);
                }
                None => {
                    print!("{report}");
                    eprintln!("{}", output.summary);
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn build_config(command: Command) -> Result<(RunConfig, Option<PathBuf>)> {
    Ok(match command {
        Command::GapScan(a) => {
            let mut c = RunConfig::new("gap-scan");
            c.family = Some(a.family.doc(a.n));
            c.n = Some(a.n);
            c.grid = Some(a.grid);
            c.backend = Some(a.backend);
            c.json = a.output.json;
            (c, a.output.out)
        }
        Command::MinGapScaling(a) => {
            let (lo, hi) = parse_n_range(&a.n)?;
            let mut c = RunConfig::new("min-gap-scaling");
            c.family = Some(a.family.doc(lo));
            c.n_range = Some((lo, hi, a.step));
            c.backend = Some(a.backend);
            c.tol_s = Some(a.tol_s);
            c.json = a.output.json;
            (c, a.output.out)
        }
        Command::Evolve(a) => {
            let mut c = RunConfig::new("evolve");
            c.family = Some(a.family.doc(a.n));
            c.n = Some(a.n);
            c.schedule = Some(a.schedule);
            c.t = a.t;
            c.c = a.c;
            c.backend = Some(a.backend);
            c.steps = Some(a.steps);
            c.json = true;
            (c, a.output.out)
        }
        Command::SearchDelay(a) => {
            let (lo, hi) = parse_n_range(&a.n)?;
            let mut c = RunConfig::new("search-delay");
            c.n_range = Some((lo, hi, a.step));
            c.json = a.output.json;
            (c, a.output.out)
        }
        Command::TrotterSweep(a) => {
            let mut c = RunConfig::new("trotter-sweep");
            c.family = Some(a.family.doc(a.n));
            c.n = Some(a.n);
            c.t = Some(a.t);
            c.r_values = Some(a.r);
            c.seed = Some(a.seed);
            c.json = a.output.json;
            (c, a.output.out)
        }
        Command::Lemma1Check(a) => {
            let mut c = RunConfig::new("lemma1-check");
            c.family = Some(a.family.doc(a.n));
            c.n = Some(a.n);
            c.t = Some(a.t);
            c.delta = Some(a.delta);
            c.trials = Some(a.trials);
            c.seed = Some(a.seed);
            c.json = a.output.json;
            (c, a.output.out)
        }
        Command::LowerBound(a) => {
            let mut c = RunConfig::new("lower-bound");
            c.n = Some(a.n);
            c.json = true;
            (c, a.output.out)
        }
        Command::SatReconstruct(a) => {
            let mut c = RunConfig::new("sat-reconstruct");
            c.formula = Some(a.formula.display().to_string());
            c.verify_all = Some(a.verify_all);
            c.json = a.output.json;
            (c, a.output.out)
        }
    })
}

/// A finished run: the report body and its one-line summary.
pub struct RunOutput {
    pub report: String,
    pub summary: String,
}

#[derive(Serialize)]
struct MinGapRow {
    n: usize,
    s_star: f64,
    g_min: f64,
    bound: Option<f64>,
}

#[derive(Serialize)]
struct SearchDelayRow {
    n: usize,
    quadrature: f64,
    closed_form: f64,
    rel_err: f64,
}

#[derive(Serialize)]
struct SweepDoc<'a> {
    seed: u64,
    rows: &'a [crate::trotter::TrotterSweepRow],
}

#[derive(Serialize)]
struct Lemma1Doc<'a> {
    seed: u64,
    t: f64,
    delta: f64,
    trials: &'a [crate::trotter::Lemma1Trial],
}

/// Run one configured command; pure given the config and the filesystem
/// content behind `formula`.
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    match config.command.as_str() {
        "gap-scan" => gap_scan(config),
        "min-gap-scaling" => min_gap_scaling(config),
        "evolve" => evolve(config),
        "search-delay" => search_delay(config),
        "trotter-sweep" => trotter_sweep(config),
        "lemma1-check" => lemma1(config),
        "lower-bound" => lower_bound(config),
        "sat-reconstruct" => sat_reconstruct(config),
        other => Err(Error::Contract(format!("unknown command {other:?}"))),
    }
}

fn need<T: Copy>(v: &Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Contract(format!("config is missing {what}")))
}

fn gap_scan(config: &RunConfig) -> Result<RunOutput> {
    let family = config.family()?;
    let backend = config.backend()?;
    let points = need(&config.grid, "grid")?;
    if points < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {points}")));
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| i as f64 / (points - 1) as f64)
        .collect();
    let report = gap_curve(&family, &grid, backend)?;
    let summary = format!(
        "gap-scan: family={} n={} g_min={:.6e} at s_star={:.6} ({} points, {:?} backend)",
        family.to_doc()["family"].as_str().unwrap_or("?"),
        family.n(),
        report.g_min,
        report.s_star,
        points,
        backend,
    );
    let body = if config.json { report.to_json() } else { report.to_csv() };
    Ok(RunOutput { report: body, summary })
}

fn min_gap_scaling(config: &RunConfig) -> Result<RunOutput> {
    let range = config
        .n_range
        .ok_or_else(|| Error::Contract("config is missing n range".into()))?;
    let backend = config.backend()?;
    let tol_s = need(&config.tol_s, "tol_s")?;
    let base_doc = config
        .family
        .as_ref()
        .ok_or_else(|| Error::Contract("config has no family".into()))?;
    let mut rows = Vec::new();
    for n in range_values(range) {
        let mut doc = base_doc.clone();
        doc["n"] = json!(n);
        let family = family_from_doc(&doc)?;
        let (s_star, g_min) = min_gap(&family, backend, tol_s)?;
        let bound = match family.cost().family_tag() {
            FamilyTag::Perturbed { .. } => Some(spike_gap_bound(n)),
            _ => None,
        };
        rows.push(MinGapRow { n, s_star, g_min, bound });
    }
    let body = if config.json {
        crate::fmt::to_json_g17(&rows)
    } else {
        let mut out = String::from("n,s_star,g_min,bound\n");
        for row in &rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                crate::fmt::g17(row.s_star),
                crate::fmt::g17(row.g_min),
                row.bound.map(crate::fmt::g17).unwrap_or_default(),
            ));
        }
        out
    };
    let last = rows.last().expect("range is non-empty");
    let summary = format!(
        "min-gap-scaling: {} sizes up to n={}, g_min(n_max)={:.6e}",
        rows.len(),
        last.n,
        last.g_min,
    );
    Ok(RunOutput { report: body, summary })
}

fn evolve(config: &RunConfig) -> Result<RunOutput> {
    let family = config.family()?;
    let backend = config.backend()?;
    let steps = need(&config.steps, "steps")?;
    let schedule = match config.schedule.as_deref() {
        Some("constant") => {
            let t = config
                .t
                .ok_or_else(|| Error::Contract("constant schedule needs --t".into()))?;
            make_constant_schedule(t)?
        }
        Some("adaptive") => {
            let c = config
                .c
                .ok_or_else(|| Error::Contract("adaptive schedule needs --c".into()))?;
            // Closed forms where they exist; otherwise a per-point eigensolve.
            let n = family.n();
            match family.cost().family_tag() {
                FamilyTag::Search { .. } => make_adaptive_schedule(
                    move |s| closed_form_search_gap(n, s).expect("s stays in [0,1]"),
                    c,
                )?,
                FamilyTag::HammingWeight => make_adaptive_schedule(
                    |s| closed_form_weight_gap(s).expect("s stays in [0,1]"),
                    c,
                )?,
                _ => make_adaptive_schedule(gap_function(&family, backend)?, c)?,
            }
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown schedule {other:?}, want constant or adaptive"
            )))
        }
    };
    let result = integrate(&family, &schedule, backend, steps)?;
    let doc = run_doc(&family, &schedule, &result);
    let summary = format!(
        "evolve: family={} n={} total_delay={:.6e} overlap_ground={:.6} steps={}",
        family.to_doc()["family"].as_str().unwrap_or("?"),
        family.n(),
        schedule.total_delay(),
        result.overlap_ground,
        result.steps,
    );
    Ok(RunOutput { report: crate::fmt::to_json_g17(&doc), summary })
}

fn search_delay(config: &RunConfig) -> Result<RunOutput> {
    let range = config
        .n_range
        .ok_or_else(|| Error::Contract("config is missing n range".into()))?;
    let mut rows = Vec::new();
    for n in range_values(range) {
        let quadrature =
            make_adaptive_schedule(move |s| closed_form_search_gap(n, s).expect("s in [0,1]"), 1.0)?
                .total_delay();
        let closed_form = closed_form_search_delay(n)?;
        let rel_err = (quadrature - closed_form).abs() / closed_form;
        rows.push(SearchDelayRow { n, quadrature, closed_form, rel_err });
    }
    let body = if config.json {
        crate::fmt::to_json_g17(&rows)
    } else {
        let mut out = String::from("n,quadrature,closed_form,rel_err\n");
        for row in &rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                crate::fmt::g17(row.quadrature),
                crate::fmt::g17(row.closed_form),
                crate::fmt::g17(row.rel_err),
            ));
        }
        out
    };
    let worst = rows.iter().map(|r| r.rel_err).fold(0.0f64, f64::max);
    let summary = format!(
        "search-delay: {} sizes, worst relative quadrature error {:.3e}",
        rows.len(),
        worst,
    );
    Ok(RunOutput { report: body, summary })
}

fn trotter_sweep(config: &RunConfig) -> Result<RunOutput> {
    let family = config.family()?;
    let t = need(&config.t, "t")?;
    let seed = need(&config.seed, "seed")?;
    let r_values = config
        .r_values
        .as_ref()
        .ok_or_else(|| Error::Contract("config is missing r values".into()))?;
    let rows = trotter_error_sweep(&family, t, r_values, seed)?;
    let body = if config.json {
        crate::fmt::to_json_g17(&SweepDoc { seed, rows: &rows })
    } else {
        format!("# seed={seed}\n{}", sweep_to_csv(&rows))
    };
    let worst = rows
        .iter()
        .map(|r| r.error_vs_reference)
        .fold(0.0f64, f64::max);
    let summary = format!(
        "trotter-sweep: family={} n={} T={} over {} step counts, max error {:.3e}",
        family.to_doc()["family"].as_str().unwrap_or("?"),
        family.n(),
        t,
        rows.len(),
        worst,
    );
    Ok(RunOutput { report: body, summary })
}

fn lemma1(config: &RunConfig) -> Result<RunOutput> {
    let family = config.family()?;
    let t = need(&config.t, "t")?;
    let delta = need(&config.delta, "delta")?;
    let trials = need(&config.trials, "trials")?;
    let seed = need(&config.seed, "seed")?;
    let report = lemma1_check(&family, t, delta, trials, seed)?;
    let body = if config.json {
        crate::fmt::to_json_g17(&Lemma1Doc {
            seed,
            t,
            delta,
            trials: &report.trials,
        })
    } else {
        format!("# seed={seed}\n{}", report.to_csv())
    };
    let bound = (2.0 * t * delta).sqrt();
    let summary = format!(
        "lemma1-check: {} trials, max distance {:.6e} ≤ bound {:.6e}",
        trials,
        report.max_distance(),
        bound,
    );
    Ok(RunOutput { report: body, summary })
}

fn lower_bound(config: &RunConfig) -> Result<RunOutput> {
    let n = need(&config.n, "n")?;
    let diag = lower_bound_diagnostic(n)?;
    let summary = format!(
        "lower-bound: n={} s_c={:.6} gap_at_sc={:.6e} ≤ 2·norm_AB={:.6e}, ceiling {:.6e}",
        diag.n,
        diag.s_c,
        diag.gap_at_sc,
        2.0 * diag.norm_ab,
        diag.bound,
    );
    Ok(RunOutput { report: crate::fmt::to_json_g17(&diag), summary })
}

fn sat_reconstruct(config: &RunConfig) -> Result<RunOutput> {
    let path = config
        .formula
        .as_ref()
        .ok_or_else(|| Error::Contract("config is missing the formula path".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))?;
    let phi = Formula3CNF::from_dimacs(&text)?;
    let transcript = query_low_weight(
        |b| phi.count_unsatisfied(b).expect("probe in range"),
        phi.n(),
    );
    let table = compute_table(&transcript)?;
    let (satisfiable, witness) = decide_sat(&table)?;
    let witness_text = witness
        .map(|w| format_bits(w, phi.n()))
        .unwrap_or_else(|| "-".into());
    let summary = format!(
        "sat-reconstruct: n={} clauses={} queries={} satisfiable={} witness={}",
        phi.n(),
        phi.clause_count(),
        transcript.query_count(),
        satisfiable,
        witness_text,
    );
    let verify_all = config.verify_all.unwrap_or(false);
    if verify_all {
        let rows = verification_report(&phi)?;
        let all_match = rows.iter().all(|r| r.is_match);
        let body = if config.json {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "b": format_bits(r.b, phi.n()),
                        "F_reconstructed": r.f_reconstructed,
                        "F_direct": r.f_direct,
                        "match": r.is_match,
                    })
                })
                .collect();
            serde_json::to_string(&items).expect("plain integers and strings")
        } else {
            report_to_csv(&rows, phi.n())
        };
        let summary = format!("{summary} all_match={all_match} rows={}", rows.len());
        return Ok(RunOutput { report: body, summary });
    }
    let witness_json = match witness {
        Some(w) => format!("\"{}\"", format_bits(w, phi.n())),
        None => "null".into(),
    };
    let body = format!(
        "{{\"n\":{},\"clauses\":{},\"query_count\":{},\"satisfiable\":{},\"witness\":{},\"transcript\":{},\"table\":{}}}",
        phi.n(),
        phi.clause_count(),
        transcript.query_count(),
        satisfiable,
        witness_json,
        transcript.to_json(),
        table.to_json(),
    );
    Ok(RunOutput { report: body, summary })
}
