//! The `pstar` command line.
//!
//! Every subcommand computes its outputs first, appends a [`RunRecord`] to
//! the `--log` file, and only then writes output files and stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::estimators::{self, EstimateResult, GradientAscentConfig};
use crate::exact;
use crate::experiments;
use crate::io::{self, GraphFileFormat};
use crate::mean_field::{self, NewtonConfig, Phase, PhaseDiagnostic};
use crate::model::{HamiltonianParams, MomentsVector, NaturalParams};
use crate::sampler::{self, InitialState, SampleSet, SamplerConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LOW_TEMPERATURE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pstar",
    version,
    about = "Parameter estimation for the three-parameter p-star model"
)]
pub struct Cli {
    /// Append a JSON-lines run record to this file.
    #[arg(long, global = true)]
    log: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Edge, 2-star and triangle counts of a graph file.
    Stats(StatsArgs),
    /// High/low-temperature diagnostic of the scalar mean-field map.
    Phase(PhaseArgs),
    /// Draw graphs with the Metropolis-Hastings sampler (JSON-lines output).
    Sample(SampleArgs),
    /// Estimate parameters from a graph, a sample file or a moment vector.
    Estimate(EstimateArgs),
    /// Exact quantities by full enumeration (small n only).
    Oracle(OracleArgs),
    /// Re-run the reference experiments.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Edge parameter θ1 (or θ with --hamiltonian).
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    /// 2-star parameter θ2 (or σ with --hamiltonian).
    #[arg(long, allow_hyphen_values = true)]
    theta2: f64,
    /// Triangle parameter θ3 (or α with --hamiltonian).
    #[arg(long, allow_hyphen_values = true)]
    theta3: f64,
    /// Read the three values as Hamiltonian (θ, σ, α) instead of natural.
    #[arg(long)]
    hamiltonian: bool,
}

impl ParamArgs {
    fn natural(&self) -> Result<NaturalParams> {
        if self.hamiltonian {
            HamiltonianParams::new(self.theta, self.theta2, self.theta3).to_natural()
        } else {
            let p = NaturalParams::new(self.theta, self.theta2, self.theta3);
            p.check_finite()?;
            Ok(p)
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Adjacency,
    EdgeList,
}

impl From<FormatArg> for GraphFileFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Adjacency => GraphFileFormat::AdjacencyMatrix,
            FormatArg::EdgeList => GraphFileFormat::EdgeList,
        }
    }
}

#[derive(Args, Debug)]
struct StatsArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "adjacency")]
    format: FormatArg,
    /// Vertex count for edge-list input.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct PhaseArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: usize,
    /// Number of scan cells on [0, 1].
    #[arg(long, default_value_t = mean_field::DEFAULT_GRID)]
    grid: usize,
    /// Print the full diagnostic as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: usize,
    /// Number of kept samples per chain.
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    burn_in: Option<u64>,
    #[arg(long)]
    thinning: Option<u64>,
    #[arg(long, env = "PSTAR_SEED", default_value_t = 0)]
    seed: u64,
    /// `empty`, `random` / `random:P`, or a path to an adjacency file.
    #[arg(long, default_value = "random")]
    init: String,
    #[arg(long, default_value_t = 1)]
    chains: usize,
    /// Output JSON-lines file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse parameters outside the high-temperature phase.
    #[arg(long)]
    strict: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq)]
enum MethodArg {
    Mf,
    Mple,
    Exact,
}

#[derive(Args, Debug)]
struct EstimateArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    /// A single observed graph.
    #[arg(long, conflicts_with_all = ["samples", "moments"])]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "adjacency")]
    format: FormatArg,
    /// A JSON-lines sample file written by `sample`.
    #[arg(long, conflicts_with = "moments")]
    samples: Option<PathBuf>,
    /// Empirical moments `m1,m2,m3` (mf and exact only); needs --n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    moments: Option<Vec<f64>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[arg(long, default_value_t = 1e-3)]
    gamma: f64,
    #[arg(long)]
    grad_tol: Option<f64>,
    /// Starting point `t1,t2,t3` (natural convention).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    init: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1)]
    trace_every: usize,
    /// Write the result JSON here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-iteration trace CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Exit with status 2 when the solution is not in the high-temperature phase.
    #[arg(long)]
    strict: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OracleKind {
    Moments,
    Partition,
    Distribution,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(value_enum)]
    kind: OracleKind,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Experiment {
    Florentine,
    Table1,
    Bench,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(value_enum)]
    experiment: Experiment,
    /// Vertex counts (table1 defaults to 10; bench to 20,40,80).
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long, env = "PSTAR_SEED", default_value_t = 0)]
    seed: u64,
    /// Samples per dataset (table1 default 950, bench default 100).
    #[arg(long)]
    samples: Option<usize>,
    /// Also run MPLE on each table1 dataset.
    #[arg(long)]
    with_mple: bool,
    /// Directory for result JSON and trace CSV files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub argv: Vec<String>,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub start_unix_s: f64,
    pub end_unix_s: f64,
    pub outputs: Vec<String>,
}

/// What a command produced, written only after the run record.
struct Outcome {
    stdout: String,
    stderr: String,
    files: Vec<(PathBuf, Vec<u8>)>,
    config: serde_json::Value,
    seed: Option<u64>,
    exit: i32,
}

impl Outcome {
    fn new(stdout: String, config: serde_json::Value) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            files: Vec::new(),
            config,
            seed: None,
            exit: EXIT_OK,
        }
    }
}

fn unix_now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

/// Six significant digits.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn fmt_params(a: [f64; 3]) -> String {
    format!("({}, {}, {})", fmt6(a[0]), fmt6(a[1]), fmt6(a[2]))
}

pub fn phase_line(d: &PhaseDiagnostic) -> String {
    let pts: Vec<String> = d.fixed_points.iter().map(|&p| fmt6(p)).collect();
    match pts.len() {
        0 => format!("{}, no interior fixed point", d.phase),
        1 => format!("{}, p*≈{}", d.phase, pts[0]),
        _ => format!("{}, p*≈{{{}}}", d.phase, pts.join(", ")),
    }
}

fn exit_code(e: &Error, strict: bool) -> i32 {
    match e {
        Error::LowTemperatureEncountered { .. } | Error::LowTemperatureSuspected if strict => {
            EXIT_LOW_TEMPERATURE
        }
        e if e.is_numerical() => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (including the program name) and runs it, writing to the
/// given streams. Returns the process exit code.
pub fn dispatch_to<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let strict = match &cli.command {
        Command::Sample(a) => a.strict,
        Command::Estimate(a) => a.strict,
        _ => false,
    };
    let start = unix_now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e, strict);
        }
    };

    if let Some(log) = &cli.log {
        let record = RunRecord {
            command: command_name(&cli.command).into(),
            argv: argv
                .iter()
                .map(|a| a.to_string_lossy().into_owned())
                .collect(),
            config: outcome.config.clone(),
            seed: outcome.seed,
            start_unix_s: start,
            end_unix_s: unix_now(),
            outputs: outcome
                .files
                .iter()
                .map(|(p, _)| p.display().to_string())
                .collect(),
        };
        if let Err(e) = append_record(log, &record) {
            let _ = writeln!(err, "error: cannot write run log: {e}");
            return EXIT_USAGE;
        }
    }
    for (path, bytes) in &outcome.files {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            if let Err(e) = std::fs::create_dir_all(dir) {
                let _ = writeln!(err, "error: {}: {e}", dir.display());
                return EXIT_USAGE;
            }
        }
        if let Err(e) = std::fs::write(path, bytes) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.exit
}

pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch_to(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn append_record(path: &Path, record: &RunRecord) -> Result<()> {
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    let mut line = serde_json::to_vec(record)?;
    line.push(b'\n');
    f.write_all(&line)?;
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Stats(_) => "stats",
        Command::Phase(_) => "phase",
        Command::Sample(_) => "sample",
        Command::Estimate(_) => "estimate",
        Command::Oracle(_) => "oracle",
        Command::Reproduce(_) => "reproduce",
    }
}

fn run(c: &Command) -> Result<Outcome> {
    match c {
        Command::Stats(a) => run_stats(a),
        Command::Phase(a) => run_phase(a),
        Command::Sample(a) => run_sample(a),
        Command::Estimate(a) => run_estimate(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Reproduce(a) => run_reproduce(a),
    }
}

fn run_stats(a: &StatsArgs) -> Result<Outcome> {
    let g = io::read_graph(&a.file, a.format.into(), a.n)?;
    let s = g.suff_stats();
    Ok(Outcome::new(
        format!("{}\n", serde_json::to_string(&s)?),
        json!({ "file": a.file, "n": g.n() }),
    ))
}

fn run_phase(a: &PhaseArgs) -> Result<Outcome> {
    let p = a.params.natural()?;
    let d = mean_field::find_fixed_points_with_grid(&p.to_hamiltonian()?, a.n, a.grid)?;
    let text = if a.json {
        format!("{}\n", serde_json::to_string(&d)?)
    } else {
        format!("{}\n", phase_line(&d))
    };
    Ok(Outcome::new(
        text,
        json!({ "params": p, "n": a.n, "grid": a.grid }),
    ))
}

fn parse_init(spec: &str) -> Result<InitialState> {
    match spec {
        "empty" => Ok(InitialState::Empty),
        "random" => Ok(InitialState::Random(0.5)),
        s if s.starts_with("random:") => s["random:".len()..]
            .parse::<f64>()
            .map(InitialState::Random)
            .map_err(|_| Error::InvalidConfig(format!("bad initial edge probability in {s:?}"))),
        path => Ok(InitialState::Given(io::read_graph(
            Path::new(path),
            GraphFileFormat::AdjacencyMatrix,
            None,
        )?)),
    }
}

fn run_sample(a: &SampleArgs) -> Result<Outcome> {
    let p = a.params.natural()?;
    let mut cfg = SamplerConfig::new(a.n, a.samples, a.seed);
    if let Some(b) = a.burn_in {
        cfg.burn_in = b;
    }
    if let Some(m) = a.thinning {
        cfg.thinning = m;
    }
    cfg.initial = parse_init(&a.init)?;
    cfg.validate()?;

    let mut stderr = String::new();
    if a.n >= 3 {
        let d = mean_field::phase_of(&p, a.n)?;
        if d.phase != Phase::High {
            stderr = format!(
                "warning: parameters are not in the high-temperature phase ({}); the chain may mix very slowly\n",
                phase_line(&d)
            );
            if a.strict {
                return Err(Error::LowTemperatureSuspected);
            }
        }
    }
    let set = sampler::run_chains(&p, &cfg, a.chains)?;
    let mut buf = Vec::new();
    sampler::write_jsonl(&set, &mut buf)?;
    let config = json!({ "params": p, "sampler": cfg, "chains": a.chains });
    let mut o = match &a.out {
        Some(path) => {
            let mut o = Outcome::new(String::new(), config);
            o.files.push((path.clone(), buf));
            o
        }
        None => Outcome::new(String::from_utf8(buf).expect("JSON is UTF-8"), config),
    };
    o.stderr = stderr;
    o.seed = Some(a.seed);
    Ok(o)
}

fn three(v: &[f64], what: &str) -> Result<[f64; 3]> {
    <[f64; 3]>::try_from(v).map_err(|_| {
        Error::InvalidConfig(format!("{what} needs exactly three comma-separated values"))
    })
}

fn run_estimate(a: &EstimateArgs) -> Result<Outcome> {
    let mut cfg = GradientAscentConfig::new(a.gamma, a.iters);
    cfg.grad_tol = a.grad_tol;
    cfg.trace_every = a.trace_every;
    if let Some(init) = &a.init {
        cfg.init = NaturalParams::from_array(three(init, "--init")?);
    }

    let dataset: Option<SampleSet> = if let Some(path) = &a.graph {
        let g = io::read_graph(path, a.format.into(), a.n)?;
        Some(SampleSet::from_graphs(vec![g])?)
    } else if let Some(path) = &a.samples {
        let f = std::fs::File::open(path)?;
        Some(sampler::read_jsonl(std::io::BufReader::new(f))?)
    } else {
        None
    };
    let (moments, n) = match (&dataset, &a.moments) {
        (Some(d), _) => (estimators::empirical_moments(d)?, d.n()),
        (None, Some(m)) => {
            let n =
                a.n.ok_or_else(|| Error::InvalidConfig("--moments needs --n".into()))?;
            (MomentsVector::from_array(three(m, "--moments")?), n)
        }
        (None, None) => {
            return Err(Error::InvalidConfig(
                "one of --graph, --samples or --moments is required".into(),
            ))
        }
    };

    let result: EstimateResult = match a.method {
        MethodArg::Mf => estimators::mf_mlle(&moments, n, &cfg, &NewtonConfig::default())?,
        MethodArg::Exact => exact::mlle_exact(&moments, n, &cfg)?,
        MethodArg::Mple => {
            let d = dataset.as_ref().ok_or_else(|| {
                Error::InvalidConfig("mple needs graph data (--graph or --samples)".into())
            })?;
            estimators::mple(d, &cfg)?
        }
    };

    let json = serde_json::to_string(&result.to_json())?;
    let mut o = Outcome::new(
        format!("{json}\n"),
        json!({
            "method": format!("{:?}", a.method).to_lowercase(),
            "n": n,
            "moments": moments,
            "ascent": cfg,
        }),
    );
    if let Some(path) = &a.out {
        o.files
            .push((path.clone(), format!("{json}\n").into_bytes()));
    }
    if let Some(path) = &a.trace {
        let mut buf = Vec::new();
        result.write_trace_csv(&mut buf)?;
        o.files.push((path.clone(), buf));
    }
    let phase = match &result.phase_at_solution {
        Some(d) => Some(d.clone()),
        None if n >= 3 => Some(mean_field::phase_of(&result.theta_star, n)?),
        None => None,
    };
    if let Some(d) = phase.filter(|d| d.phase != Phase::High) {
        o.stderr = format!(
            "warning: estimate is not in the high-temperature phase ({})\n",
            phase_line(&d)
        );
        if a.strict {
            o.exit = EXIT_LOW_TEMPERATURE;
        }
    }
    Ok(o)
}

fn run_oracle(a: &OracleArgs) -> Result<Outcome> {
    let p = a.params.natural()?;
    let text = match a.kind {
        OracleKind::Moments => serde_json::to_string(&exact::exact_moments(&p, a.n)?)?,
        OracleKind::Partition => {
            let r = exact::log_partition(&p, a.n)?;
            serde_json::to_string(&json!({ "log_partition": r.log_partition, "n": r.n }))?
        }
        OracleKind::Distribution => {
            let probs = exact::exact_distribution(&p, a.n)?;
            let rows: Vec<_> = probs
                .iter()
                .enumerate()
                .map(|(mask, &pr)| {
                    let g = crate::graph::Graph::from_pair_mask(a.n, mask as u64);
                    json!({ "mask": mask, "edge_list": g.edges(), "probability": pr })
                })
                .collect();
            serde_json::to_string(&rows)?
        }
    };
    Ok(Outcome::new(
        format!("{text}\n"),
        json!({ "kind": format!("{:?}", a.kind).to_lowercase(), "params": p, "n": a.n }),
    ))
}

fn run_reproduce(a: &ReproduceArgs) -> Result<Outcome> {
    let mut o = Outcome::new(
        String::new(),
        json!({ "experiment": format!("{:?}", a.experiment).to_lowercase() }),
    );
    o.seed = Some(a.seed);
    let out_file = |name: &str| a.out_dir.as_ref().map(|d| d.join(name));
    match a.experiment {
        Experiment::Florentine => {
            let run = experiments::reproduce_florentine()?;
            let mut s = String::new();
            s += &format!(
                "MF-MLLE  {}  (reported {})  {:.1} s\n",
                fmt_params(run.mf.theta_star.as_array()),
                fmt_params(experiments::FLORENTINE_MF),
                run.mf.total_time_ms / 1e3
            );
            s += &format!(
                "MPLE     {}  (reported {})  {:.1} s\n",
                fmt_params(run.mple.theta_star.as_array()),
                fmt_params(experiments::FLORENTINE_MPLE),
                run.mple.total_time_ms / 1e3
            );
            if let Some(d) = &run.mf.phase_at_solution {
                s += &format!("phase at MF estimate: {}\n", phase_line(d));
            }
            o.stdout = s;
            for (name, r) in [("florentine_mf", &run.mf), ("florentine_mple", &run.mple)] {
                if let Some(p) = out_file(&format!("{name}.json")) {
                    o.files.push((p, format!("{}\n", r.to_json()).into_bytes()));
                }
                if let Some(p) = out_file(&format!("{name}_trace.csv")) {
                    let mut buf = Vec::new();
                    r.write_trace_csv(&mut buf)?;
                    o.files.push((p, buf));
                }
            }
        }
        Experiment::Table1 => {
            let sizes = a.sizes.clone().unwrap_or_else(|| vec![10]);
            let samples = a.samples.unwrap_or(950);
            let mut s =
                String::from("n\tN_it\tgamma\ttheta (true)\ttheta* (MF)\ttheta* (reported)\n");
            let mut all = Vec::new();
            for n in sizes {
                let row = experiments::table1_row(n)
                    .ok_or_else(|| Error::InvalidConfig(format!("no table row for n = {n}")))?;
                let r = experiments::recover(row, samples, a.seed, a.with_mple)?;
                s += &format!(
                    "{}\t{}\t{:e}\t{}\t{}\t{}\n",
                    n,
                    row.iterations,
                    row.step,
                    fmt_params(r.truth.as_array()),
                    fmt_params(r.estimate.as_array()),
                    fmt_params(row.reported)
                );
                if let Some(m) = r.mple_estimate {
                    s += &format!("\t\t\tMPLE on same data: {}\n", fmt_params(m.as_array()));
                }
                all.push(r);
            }
            o.stdout = s;
            if let Some(p) = out_file("table1.json") {
                o.files.push((p, serde_json::to_vec_pretty(&all)?));
            }
        }
        Experiment::Bench => {
            let sizes = a.sizes.clone().unwrap_or_else(|| vec![20, 40, 80]);
            let rows = experiments::bench(&sizes, a.samples.unwrap_or(100), 2000, 20, a.seed)?;
            let mut s = String::from("n,mf_iter_ms,mple_iter_ms\n");
            for r in &rows {
                s += &format!("{},{},{}\n", r.n, r.mf_iter_ms, r.mple_iter_ms);
            }
            if let Some(p) = out_file("bench.csv") {
                o.files.push((p, s.clone().into_bytes()));
            }
            o.stdout = s;
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt6(0.16660368268), "0.166604");
        assert_eq!(fmt6(-1.5553), "-1.55530");
        assert_eq!(fmt6(120.0), "120.000");
        assert_eq!(fmt6(0.0), "0");
    }

    #[test]
    fn parses_negative_parameters() {
        let cli = Cli::try_parse_from([
            "pstar",
            "phase",
            "--theta",
            "-1.6",
            "--theta2",
            "-0.011111",
            "--theta3",
            "0.111111",
            "--n",
            "18",
        ])
        .unwrap();
        match cli.command {
            Command::Phase(a) => {
                assert_eq!(a.params.theta, -1.6);
                assert_eq!(a.n, 18);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn hamiltonian_flag_converts() {
        let p = ParamArgs {
            theta: 1.6,
            theta2: 0.02,
            theta3: 0.2,
            hamiltonian: true,
        };
        assert_eq!(p.natural().unwrap(), NaturalParams::new(-1.6, -0.02, 0.2));
    }

    #[test]
    fn init_specs() {
        assert_eq!(parse_init("empty").unwrap(), InitialState::Empty);
        assert_eq!(parse_init("random:0.2").unwrap(), InitialState::Random(0.2));
        assert!(parse_init("random:x").is_err());
    }
}
