use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semirandom::bounds::{self, Regime};
use semirandom::edgelog;
use semirandom::experiment::{self, Axis, ExperimentConfig, Horizon};
use semirandom::metrics;
use semirandom::ode;
use semirandom::{Error, ProcessState, Result, VertexId};

#[derive(Parser)]
#[command(
    name = "semirandom",
    version,
    about = "Semi-random graph process experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded replications of one strategy.
    Simulate(SimulateArgs),
    /// Run a grid of configurations and aggregate per grid point.
    Sweep(SweepArgs),
    /// Theoretical bounds for given n and t.
    Bounds(BoundsArgs),
    /// Phase boundaries and degree profile of the greedy fluid limit.
    Ode(OdeArgs),
    /// Bound coefficients over a log grid of gamma.
    Figures(FiguresArgs),
    /// Measure an edge log and check a clique certificate.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct HorizonArgs {
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
}

impl HorizonArgs {
    fn n(&self) -> Result<Option<usize>> {
        self.n.as_deref().map(|s| num(s, "n")).transpose()
    }

    fn horizon(&self) -> Result<Option<Horizon>> {
        let t = self.t.as_deref().map(|s| num(s, "t")).transpose()?;
        if t.is_none() && self.gamma.is_none() && self.beta.is_none() && self.omega.is_none() {
            return Ok(None);
        }
        Horizon::from_options(t, self.gamma, self.beta, self.omega).map(Some)
    }
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    experiment::parse_number(s).map_err(|e| Error::InvalidArgument(format!("--{what}: {e}")))
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    horizon: HorizonArgs,
    /// Key=value or JSON config; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<String>,
    /// Strategy parameter, e.g. `--param half=3`.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<u64>,
    /// Comma-separated: clique, max_squares, degeneracy, caro_wei,
    /// rare_pairs, profile; or all / none.
    #[arg(long)]
    metrics: Option<String>,
    /// Record wall time per run (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

impl RunArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(p) => Some(ExperimentConfig::parse(&std::fs::read_to_string(p)?)?),
            None => None,
        };
        let n = self.horizon.n()?;
        let horizon = self.horizon.horizon()?;
        let mut cfg = match file {
            Some(mut c) => {
                if let Some(n) = n {
                    c.n = n;
                }
                if let Some(h) = horizon {
                    c.horizon = h;
                }
                if let Some(s) = &self.strategy {
                    c.strategy = s.clone();
                }
                c
            }
            None => ExperimentConfig::new(
                n.ok_or_else(|| Error::Config("--n is required".into()))?,
                horizon.ok_or_else(|| {
                    Error::Config("one of --t, --gamma, --beta, --omega is required".into())
                })?,
                self.strategy
                    .as_deref()
                    .ok_or_else(|| Error::Config("--strategy is required".into()))?,
            ),
        };
        for p in &self.params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--param expects KEY=VALUE, got {p:?}")))?;
            cfg.params
                .insert(k.trim().to_string(), v.trim().to_string());
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(r) = self.reps {
            cfg.reps = r;
        }
        if let Some(m) = &self.metrics {
            cfg.metrics = experiment::parse_metrics(m)?;
        }
        cfg.timing |= self.timing;
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Also write the edge log of the first replication.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Varied key and values, e.g. `--vary n=1e4,1e5`; repeat for a grid.
    #[arg(long, required = true)]
    vary: Vec<String>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    horizon: HorizonArgs,
    /// small, log or vlarge; detected from n and t when omitted.
    #[arg(long)]
    regime: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OdeArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = ode::DEFAULT_STEP)]
    step: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FiguresArgs {
    #[arg(long, default_value_t = 1e-4)]
    gamma_min: f64,
    #[arg(long, default_value_t = 1e2)]
    gamma_max: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    edges: PathBuf,
    /// Comma-separated vertex list to check as a clique.
    #[arg(long)]
    clique: Option<String>,
    /// Vertex count; defaults to the smallest that fits the log.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = metrics::EXACT_LIMIT)]
    exact_limit: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_csv(out: &Option<PathBuf>, text: &str, config: &impl serde::Serialize) -> Result<()> {
    emit(out, text)?;
    if let Some(p) = out {
        experiment::write_meta(p, config)?;
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let cfg = a.run.config()?;
    let rows = experiment::simulate(&cfg)?;
    if let Some(path) = &a.edges {
        let first = experiment::run_one(&cfg, cfg.seed)?;
        edgelog::write_edge_log(File::create(path)?, first.state.edge_log())?;
    }
    if a.run.json {
        emit(
            &cfg.out,
            &pretty(&experiment::envelope(&cfg, "rows", &rows)),
        )
    } else {
        emit_csv(&cfg.out, &experiment::rows_csv(&rows), &cfg)
    }
}

fn sweep(a: SweepArgs) -> Result<()> {
    let cfg = a.run.config()?;
    let axes: Vec<Axis> = a.vary.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    let rows = experiment::sweep(&cfg, &axes)?;
    let meta = serde_json::json!({ "base": cfg, "vary": axes });
    if a.run.json {
        emit(
            &cfg.out,
            &pretty(&experiment::envelope(&meta, "rows", &rows)),
        )
    } else {
        emit_csv(&cfg.out, &experiment::sweep_csv(&rows), &meta)
    }
}

fn bounds_cmd(a: BoundsArgs) -> Result<()> {
    let n = a
        .horizon
        .n()?
        .ok_or_else(|| Error::Config("--n is required".into()))?;
    let horizon = a
        .horizon
        .horizon()?
        .ok_or_else(|| Error::Config("one of --t, --gamma, --beta, --omega is required".into()))?;
    let regime: Option<Regime> = a.regime.as_deref().map(str::parse).transpose()?;
    let b = match (horizon, regime) {
        (Horizon::Gamma(g), None | Some(Regime::Log)) => bounds::large_t_bounds(n, g)?,
        _ => bounds::regime_bounds(n, horizon.rounds(n)?, regime)?,
    };
    for w in &b.warnings {
        eprintln!("warning: {w}");
    }
    let config = serde_json::json!({ "n": n, "horizon": horizon, "regime": a.regime });
    if a.json {
        emit(
            &a.out,
            &pretty(&experiment::envelope(&config, "bounds", &b)),
        )
    } else {
        emit_csv(&a.out, &experiment::bounds_csv(&b), &config)
    }
}

fn ode_cmd(a: OdeArgs) -> Result<()> {
    let sol = ode::integrate_phases(a.lambda, a.step)?;
    for w in &sol.warnings {
        eprintln!("warning: {w}");
    }
    let config = serde_json::json!({ "lambda": a.lambda, "step": a.step });
    if a.json {
        let body = serde_json::json!({
            "r": sol.r,
            "boundaries": sol.boundaries,
            "phase_at_lambda": sol.phase_at_lambda,
            "coefficient": sol.lower_bound_coeff,
            "poisson_tail_coefficient": sol.poisson_tail_coeff,
            "profile": sol.profile(),
        });
        emit(
            &a.out,
            &pretty(&experiment::envelope(&config, "solution", &body)),
        )
    } else {
        let bounds: Vec<String> = sol.boundaries.iter().map(|&x| bounds::fmt_sig(x)).collect();
        eprintln!("phase boundaries: {}", bounds.join(" "));
        eprintln!("phase at lambda: {}", sol.phase_at_lambda);
        eprintln!("coefficient: {}", bounds::fmt_sig(sol.lower_bound_coeff));
        emit_csv(&a.out, &experiment::ode_csv(&sol), &config)
    }
}

fn figures_cmd(a: FiguresArgs) -> Result<()> {
    let curve = experiment::figures(a.gamma_min, a.gamma_max, a.points)?;
    let config = serde_json::json!({
        "gamma_min": a.gamma_min,
        "gamma_max": a.gamma_max,
        "points": a.points,
    });
    if a.json {
        emit(
            &a.out,
            &pretty(&experiment::envelope(&config, "curve", &curve)),
        )
    } else {
        emit_csv(&a.out, &experiment::figures_csv(&curve), &config)
    }
}

fn verify_cmd(a: VerifyArgs) -> Result<()> {
    let records = edgelog::read_edge_log(BufReader::new(File::open(&a.edges)?))?;
    let n = a.n.unwrap_or_else(|| edgelog::min_vertex_count(&records));
    let state = ProcessState::replay(n, &records)?;
    let clique: Option<Vec<VertexId>> = a
        .clique
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(|v| num::<u32>(v, "clique").map(VertexId::new))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let report = metrics::metrics_report(&state, clique.as_deref(), a.exact_limit)?;
    let config = serde_json::json!({ "edges": a.edges, "n": n, "exact_limit": a.exact_limit });
    emit(
        &a.out,
        &pretty(&experiment::envelope(&config, "report", &report)),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => sweep(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Ode(a) => ode_cmd(a),
        Command::Figures(a) => figures_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
