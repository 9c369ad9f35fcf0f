//! Seeded replication runs, parameter sweeps and table output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, fmt_sig};
use crate::error::{Error, Result};
use crate::metrics::{self, SimpleView};
use crate::process::{self, Certificate, ProcessState, RngConfig, Strategy, VertexId};
use crate::strategies::{
    self, CirculantStrategy, CliqueGrowth, ConstantStrategy, GreedyMinDegree, PartitionStrategy,
};

/// Version of the JSON and CSV layouts written by this module.
pub const SCHEMA_VERSION: u32 = 1;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Number of rounds, given directly or through a regime parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Horizon {
    /// `t` itself.
    Rounds(u64),
    /// `t = γ n log n`.
    Gamma(f64),
    /// `t = n log n / β`.
    Beta(f64),
    /// `t = ω n log n`.
    Omega(f64),
}

impl Horizon {
    /// Rounds for `n` vertices, rounded to the nearest integer.
    pub fn rounds(self, n: usize) -> Result<u64> {
        let nl = n as f64 * (n as f64).ln();
        let t = match self {
            Horizon::Rounds(t) => return positive(t),
            Horizon::Gamma(g) => g * nl,
            Horizon::Beta(b) => nl / b,
            Horizon::Omega(w) => w * nl,
        };
        if !t.is_finite() || t < 0.5 {
            return Err(Error::Config(format!(
                "{self:?} gives no rounds for n = {n}"
            )));
        }
        positive(t.round() as u64)
    }

    /// Exactly one of the four may be set.
    pub fn from_options(
        t: Option<u64>,
        gamma: Option<f64>,
        beta: Option<f64>,
        omega: Option<f64>,
    ) -> Result<Self> {
        let given = [
            t.is_some(),
            gamma.is_some(),
            beta.is_some(),
            omega.is_some(),
        ];
        match given.iter().filter(|&&g| g).count() {
            1 => {}
            0 => {
                return Err(Error::Config(
                    "one of t, gamma, beta, omega is required".into(),
                ))
            }
            _ => {
                return Err(Error::Config(
                    "only one of t, gamma, beta, omega may be given".into(),
                ))
            }
        }
        Ok(if let Some(t) = t {
            Horizon::Rounds(t)
        } else if let Some(g) = gamma {
            Horizon::Gamma(g)
        } else if let Some(b) = beta {
            Horizon::Beta(b)
        } else {
            Horizon::Omega(omega.unwrap())
        })
    }
}

fn positive(t: u64) -> Result<u64> {
    if t == 0 {
        Err(Error::Config("t must be at least 1".into()))
    } else {
        Ok(t)
    }
}

/// Strategy name plus its parameters, validated.
#[derive(Debug, Clone, PartialEq)]
pub enum StrategyChoice {
    /// `target`: stop at this clique order.
    CliqueGrowth {
        target: Option<usize>,
    },
    /// `half`: circulant on `2·half + 1` vertices.
    Circulant {
        half: usize,
    },
    /// `part_size`: overrides the size derived from `t / n`.
    Partition {
        part_size: Option<usize>,
        first: bool,
    },
    Greedy,
    RoundRobin,
    Offline,
    Constant {
        vertex: u32,
    },
}

pub const STRATEGY_NAMES: &[&str] = &[
    "alg1",
    "alg2",
    "partition",
    "partition-first",
    "greedy",
    "obs2",
    "offline",
    "constant",
];

impl StrategyChoice {
    pub fn parse(name: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let allowed: &[&str] = match name {
            "alg1" => &["target"],
            "alg2" => &["half"],
            "partition" | "partition-first" => &["part_size"],
            "constant" => &["vertex"],
            "greedy" | "obs2" | "offline" => &[],
            other => {
                return Err(Error::Config(format!(
                    "unknown strategy {other:?}; expected one of {}",
                    STRATEGY_NAMES.join(", ")
                )))
            }
        };
        if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Config(format!(
                "strategy {name} takes no parameter {bad:?} (allowed: {allowed:?})"
            )));
        }
        let get = |key: &str| -> Result<Option<usize>> {
            params
                .get(key)
                .map(|v| {
                    v.parse::<usize>()
                        .map_err(|e| Error::Config(format!("{name}.{key} = {v:?}: {e}")))
                })
                .transpose()
        };
        Ok(match name {
            "alg1" => StrategyChoice::CliqueGrowth {
                target: get("target")?,
            },
            "alg2" => StrategyChoice::Circulant {
                half: get("half")?
                    .ok_or_else(|| Error::Config("alg2 needs parameter half".into()))?,
            },
            "partition" | "partition-first" => StrategyChoice::Partition {
                part_size: get("part_size")?,
                first: name == "partition-first",
            },
            "greedy" => StrategyChoice::Greedy,
            "obs2" => StrategyChoice::RoundRobin,
            "offline" => StrategyChoice::Offline,
            _ => StrategyChoice::Constant {
                vertex: get("vertex")?.unwrap_or(0) as u32,
            },
        })
    }

    /// The online strategy for `n` vertices and `t` rounds; `None` for the
    /// offline placement.
    pub fn build(&self, n: usize, t: u64) -> Result<Option<Box<dyn Strategy>>> {
        let s: Box<dyn Strategy> = match *self {
            StrategyChoice::CliqueGrowth { target } => match target {
                Some(k) => Box::new(CliqueGrowth::with_target(n, k)),
                None => Box::new(CliqueGrowth::new(n)),
            },
            StrategyChoice::Circulant { half } => Box::new(CirculantStrategy::new(n, half)?),
            StrategyChoice::Partition { part_size, first } => {
                let p = match part_size {
                    Some(k) => PartitionStrategy::with_part_size(n, k)?,
                    None => PartitionStrategy::new(n, t)?,
                };
                Box::new(if first { p.first_success() } else { p })
            }
            StrategyChoice::Greedy => Box::new(GreedyMinDegree::new(n)),
            StrategyChoice::RoundRobin => Box::new(CirculantStrategy::round_robin(n, t)?),
            StrategyChoice::Offline => return Ok(None),
            StrategyChoice::Constant { vertex } => {
                if vertex as usize >= n {
                    return Err(Error::Config(format!(
                        "constant vertex {vertex} >= n = {n}"
                    )));
                }
                Box::new(ConstantStrategy(VertexId::new(vertex)))
            }
        };
        Ok(Some(s))
    }
}

/// Optional measurements per run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Check the strategy's clique certificate.
    Clique,
    MaxSquares,
    /// Degeneracy and colouring size.
    Degeneracy,
    CaroWei,
    RarePairs,
    /// Per-degree vertex counts.
    Profile,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Clique,
        Metric::MaxSquares,
        Metric::Degeneracy,
        Metric::CaroWei,
        Metric::RarePairs,
        Metric::Profile,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Clique => "clique",
            Metric::MaxSquares => "max_squares",
            Metric::Degeneracy => "degeneracy",
            Metric::CaroWei => "caro_wei",
            Metric::RarePairs => "rare_pairs",
            Metric::Profile => "profile",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown metric {s:?}")))
    }
}

fn default_metrics() -> Vec<Metric> {
    vec![
        Metric::Clique,
        Metric::MaxSquares,
        Metric::Degeneracy,
        Metric::CaroWei,
        Metric::RarePairs,
    ]
}

fn default_reps() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub horizon: Horizon,
    pub strategy: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_reps")]
    pub reps: u64,
    #[serde(default = "default_metrics")]
    pub metrics: Vec<Metric>,
    /// Record wall time; off by default so tables are reproducible.
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(n: usize, horizon: Horizon, strategy: &str) -> Self {
        ExperimentConfig {
            n,
            horizon,
            strategy: strategy.to_string(),
            params: BTreeMap::new(),
            seed: 0,
            reps: 1,
            metrics: default_metrics(),
            timing: false,
            out: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn reps(mut self, reps: u64) -> Self {
        self.reps = reps;
        self
    }

    pub fn metrics(mut self, metrics: &[Metric]) -> Self {
        self.metrics = metrics.to_vec();
        self
    }

    pub fn has(&self, m: Metric) -> bool {
        self.metrics.contains(&m)
    }

    pub fn rounds(&self) -> Result<u64> {
        self.horizon.rounds(self.n)
    }

    /// Checks everything that can fail before a run starts.
    pub fn validate(&self) -> Result<(StrategyChoice, u64)> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if u32::try_from(self.n).is_err() {
            return Err(Error::Config(format!(
                "n = {} exceeds the u32 vertex range",
                self.n
            )));
        }
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        let t = self.rounds()?;
        let choice = StrategyChoice::parse(&self.strategy, &self.params)?;
        choice.build(self.n, t)?;
        Ok((choice, t))
    }

    /// Reads `key = value` lines (`#` starts a comment) or, when the text
    /// starts with `{`, JSON.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()));
        }
        let mut kv = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected key = value, got {line:?}"),
            })?;
            if kv
                .insert(k.trim().to_string(), v.trim().to_string())
                .is_some()
            {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("duplicate key {:?}", k.trim()),
                });
            }
        }
        Self::from_pairs(&kv)
    }

    /// Builds a config from flat keys; strategy parameters are written
    /// `param.<name>`.
    pub fn from_pairs(kv: &BTreeMap<String, String>) -> Result<Self> {
        fn num<T: std::str::FromStr>(kv: &BTreeMap<String, String>, key: &str) -> Result<Option<T>>
        where
            T::Err: std::fmt::Display,
        {
            kv.get(key)
                .map(|v| parse_number::<T>(v).map_err(|e| Error::Config(format!("{key}: {e}"))))
                .transpose()
        }
        let mut params = BTreeMap::new();
        for (k, v) in kv {
            match k.as_str() {
                "n" | "t" | "gamma" | "beta" | "omega" | "strategy" | "seed" | "reps"
                | "metrics" | "timing" | "out" => {}
                other => match other.strip_prefix("param.") {
                    Some(p) => {
                        params.insert(p.to_string(), v.clone());
                    }
                    None => return Err(Error::Config(format!("unknown key {other:?}"))),
                },
            }
        }
        let n: usize = num(kv, "n")?.ok_or_else(|| Error::Config("n is required".into()))?;
        let horizon = Horizon::from_options(
            num(kv, "t")?,
            num(kv, "gamma")?,
            num(kv, "beta")?,
            num(kv, "omega")?,
        )?;
        let strategy = kv
            .get("strategy")
            .ok_or_else(|| Error::Config("strategy is required".into()))?;
        let mut cfg = ExperimentConfig::new(n, horizon, strategy);
        cfg.params = params;
        cfg.seed = num(kv, "seed")?.unwrap_or(0);
        cfg.reps = num(kv, "reps")?.unwrap_or(1);
        if let Some(m) = kv.get("metrics") {
            cfg.metrics = parse_metrics(m)?;
        }
        if let Some(t) = kv.get("timing") {
            cfg.timing = t
                .parse()
                .map_err(|_| Error::Config(format!("timing must be true or false, got {t:?}")))?;
        }
        cfg.out = kv.get("out").map(PathBuf::from);
        Ok(cfg)
    }
}

/// Comma-separated metric names; `all` and `none` are accepted.
pub fn parse_metrics(s: &str) -> Result<Vec<Metric>> {
    match s.trim() {
        "all" => Ok(Metric::ALL.to_vec()),
        "none" | "" => Ok(Vec::new()),
        list => list.split(',').map(|m| m.trim().parse()).collect(),
    }
}

/// Integers may be written with an exponent, e.g. `1e6`.
pub fn parse_number<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let s = s.trim();
    match s.parse::<T>() {
        Ok(v) => Ok(v),
        Err(e) => {
            let f: f64 = s.parse().map_err(|_| format!("cannot parse {s:?}: {e}"))?;
            if f.fract() == 0.0 && f.abs() < 9.0e15 {
                format!("{}", f as i64)
                    .parse::<T>()
                    .map_err(|e| e.to_string())
            } else {
                Err(format!("cannot parse {s:?}: {e}"))
            }
        }
    }
}

/// One replication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub seed: u64,
    pub n: usize,
    pub t: u64,
    pub strategy: String,
    pub clique_order: Option<usize>,
    pub clique_verified: Option<bool>,
    pub completion_round: Option<u64>,
    pub max_squares: Option<u32>,
    pub degeneracy: Option<usize>,
    pub coloring_size: Option<usize>,
    pub caro_wei: Option<f64>,
    pub rare_pair_max: Option<u64>,
    pub failed_parts: Option<usize>,
    pub alpha_upper: Option<usize>,
    pub wall_ms: u64,
    pub degree_profile: Option<Vec<u64>>,
}

pub const CSV_HEADER: &str = "seed,n,t,strategy,clique_order,clique_verified,completion_round,\
max_squares,degeneracy,coloring_size,caro_wei,rare_pair_max,failed_parts,alpha_upper,wall_ms,\
degree_profile";

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

impl ResultRow {
    pub fn csv_line(&self) -> String {
        [
            self.seed.to_string(),
            self.n.to_string(),
            self.t.to_string(),
            self.strategy.clone(),
            cell(&self.clique_order),
            cell(&self.clique_verified),
            cell(&self.completion_round),
            cell(&self.max_squares),
            cell(&self.degeneracy),
            cell(&self.coloring_size),
            self.caro_wei.map(fmt_sig).unwrap_or_default(),
            cell(&self.rare_pair_max),
            cell(&self.failed_parts),
            cell(&self.alpha_upper),
            self.wall_ms.to_string(),
            self.degree_profile
                .as_ref()
                .map(|p| {
                    p.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default(),
        ]
        .join(",")
    }
}

/// A finished replication: the table row plus the final state.
pub struct RunResult {
    pub row: ResultRow,
    pub state: ProcessState,
    pub certificate: Option<Certificate>,
}

/// Runs one replication with the given seed.
pub fn run_one(cfg: &ExperimentConfig, seed: u64) -> Result<RunResult> {
    let (choice, t) = cfg.validate()?;
    run_validated(cfg, &choice, t, seed)
}

fn run_validated(
    cfg: &ExperimentConfig,
    choice: &StrategyChoice,
    t: u64,
    seed: u64,
) -> Result<RunResult> {
    let start = Instant::now();
    let mut state = ProcessState::new(cfg.n, RngConfig::new(seed))?;
    let outcome = match choice.build(cfg.n, t)? {
        Some(mut s) => process::run(&mut state, &mut s, t)?,
        None => strategies::run_offline(&mut state, t)?,
    };
    let mut row = ResultRow {
        seed,
        n: cfg.n,
        t,
        strategy: cfg.strategy.clone(),
        clique_order: None,
        clique_verified: None,
        completion_round: None,
        max_squares: None,
        degeneracy: None,
        coloring_size: None,
        caro_wei: None,
        rare_pair_max: None,
        failed_parts: None,
        alpha_upper: None,
        wall_ms: 0,
        degree_profile: None,
    };
    let needs_view =
        cfg.has(Metric::Clique) || cfg.has(Metric::Degeneracy) || cfg.has(Metric::CaroWei);
    let view = needs_view.then(|| SimpleView::from_state(&state));
    match &outcome.certificate {
        Some(Certificate::Clique {
            vertices,
            completed_at,
        }) => {
            row.clique_order = Some(vertices.len());
            row.completion_round = *completed_at;
            if let (true, Some(v)) = (cfg.has(Metric::Clique), &view) {
                row.clique_verified = Some(metrics::verify_clique(v, vertices));
            }
        }
        Some(Certificate::FirstCompletion {
            round, vertices, ..
        }) => {
            row.clique_order = Some(vertices.len());
            row.completion_round = Some(*round);
            if let (true, Some(v)) = (cfg.has(Metric::Clique), &view) {
                row.clique_verified = Some(metrics::verify_clique(v, vertices));
            }
        }
        Some(Certificate::Partition(p)) => {
            row.failed_parts = Some(p.failed);
            row.alpha_upper = Some(p.alpha_upper);
        }
        Some(Certificate::DegreeProfile { .. }) | None => {}
    }
    if cfg.has(Metric::MaxSquares) {
        row.max_squares = Some(metrics::max_squares(&state).0);
    }
    if let Some(v) = &view {
        if cfg.has(Metric::Degeneracy) {
            let c = metrics::degeneracy_and_coloring(v);
            row.degeneracy = Some(c.degeneracy);
            row.coloring_size = Some(c.color_count);
        }
        if cfg.has(Metric::CaroWei) {
            row.caro_wei = Some(metrics::caro_wei(v));
        }
    }
    if cfg.has(Metric::RarePairs) {
        row.rare_pair_max = Some(metrics::count_rare_pairs_scan(state.n(), state.edge_log()).max);
    }
    if cfg.has(Metric::Profile) {
        row.degree_profile = Some(strategies::degree_histogram(state.degree()));
    }
    if cfg.timing {
        row.wall_ms = start.elapsed().as_millis() as u64;
    }
    Ok(RunResult {
        row,
        state,
        certificate: outcome.certificate,
    })
}

/// All replications, seeds `seed .. seed + reps`, in seed order.
pub fn simulate(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let (choice, t) = cfg.validate()?;
    (0..cfg.reps)
        .into_par_iter()
        .map(|i| run_validated(cfg, &choice, t, cfg.seed + i).map(|r| r.row))
        .collect()
}

pub fn write_rows<W: Write>(mut out: W, rows: &[ResultRow]) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.csv_line())?;
    }
    out.flush()?;
    Ok(())
}

pub fn rows_csv(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_rows(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("utf-8 output")
}

/// JSON envelope carrying the schema version, crate version and config.
pub fn envelope<T: Serialize>(
    config: &impl Serialize,
    body_key: &str,
    body: &T,
) -> serde_json::Value {
    let mut v = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "version": VERSION,
        "config": config,
    });
    v[body_key] = serde_json::to_value(body).expect("serialisable body");
    v
}

/// Writes `<path>.meta.json` next to a CSV output.
pub fn write_meta(path: &Path, config: &impl Serialize) -> Result<PathBuf> {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    let meta = PathBuf::from(name);
    let v = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "version": VERSION,
        "config": config,
    });
    std::fs::write(
        &meta,
        serde_json::to_string_pretty(&v).expect("json") + "\n",
    )?;
    Ok(meta)
}

/// One varied key and its values, e.g. `n=1e4,1e5`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub key: String,
    pub values: Vec<String>,
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (k, vs) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=v1,v2,..., got {s:?}")))?;
        let values: Vec<String> = vs
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if values.is_empty() {
            return Err(Error::Config(format!("no values for {k:?}")));
        }
        Ok(Axis {
            key: k.trim().to_string(),
            values,
        })
    }
}

/// Aggregate over the replications of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub point: Vec<(String, String)>,
    pub n: usize,
    pub t: u64,
    pub reps: u64,
    /// Fraction of runs with a completion round.
    pub success: f64,
    pub clique_order: Option<Summary>,
    pub max_squares: Option<Summary>,
    pub degeneracy: Option<Summary>,
    pub coloring_size: Option<Summary>,
    pub caro_wei: Option<Summary>,
    pub failed_parts: Option<Summary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    fn of(values: impl Iterator<Item = Option<f64>>) -> Option<Summary> {
        let v: Vec<f64> = values.collect::<Option<Vec<_>>>()?;
        if v.is_empty() {
            return None;
        }
        Some(Summary {
            mean: v.iter().sum::<f64>() / v.len() as f64,
            min: v.iter().copied().fold(f64::INFINITY, f64::min),
            max: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

fn apply(base: &ExperimentConfig, point: &[(String, String)]) -> Result<ExperimentConfig> {
    let mut kv = BTreeMap::new();
    kv.insert("n".to_string(), base.n.to_string());
    let (hk, hv) = match base.horizon {
        Horizon::Rounds(t) => ("t", t.to_string()),
        Horizon::Gamma(g) => ("gamma", g.to_string()),
        Horizon::Beta(b) => ("beta", b.to_string()),
        Horizon::Omega(w) => ("omega", w.to_string()),
    };
    kv.insert(hk.to_string(), hv);
    kv.insert("strategy".to_string(), base.strategy.clone());
    for (k, v) in &base.params {
        kv.insert(format!("param.{k}"), v.clone());
    }
    for (k, v) in point {
        if ["t", "gamma", "beta", "omega"].contains(&k.as_str()) {
            for h in ["t", "gamma", "beta", "omega"] {
                kv.remove(h);
            }
        }
        kv.insert(k.clone(), v.clone());
    }
    let mut cfg = ExperimentConfig::from_pairs(&kv)?;
    cfg.seed = base.seed;
    cfg.reps = base.reps;
    cfg.metrics = base.metrics.clone();
    cfg.timing = base.timing;
    Ok(cfg)
}

/// Cross product of the axes; every point runs the base replications.
/// All points are validated before any run starts.
pub fn sweep(base: &ExperimentConfig, axes: &[Axis]) -> Result<Vec<SweepRow>> {
    if axes.is_empty() {
        return Err(Error::Config("sweep needs at least one axis".into()));
    }
    for a in axes {
        if !matches!(
            a.key.as_str(),
            "n" | "t" | "gamma" | "beta" | "omega" | "strategy"
        ) && !a.key.starts_with("param.")
        {
            return Err(Error::Config(format!("cannot vary {:?}", a.key)));
        }
    }
    let mut points: Vec<Vec<(String, String)>> = vec![Vec::new()];
    for a in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                a.values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push((a.key.clone(), v.clone()));
                    q
                })
            })
            .collect();
    }
    let configs: Vec<ExperimentConfig> = points
        .iter()
        .map(|p| apply(base, p))
        .collect::<Result<_>>()?;
    for c in &configs {
        c.validate()?;
    }
    configs
        .iter()
        .zip(points)
        .map(|(cfg, point)| {
            let rows = simulate(cfg)?;
            let f = |get: fn(&ResultRow) -> Option<f64>| Summary::of(rows.iter().map(get));
            Ok(SweepRow {
                point,
                n: cfg.n,
                t: cfg.rounds()?,
                reps: cfg.reps,
                success: rows.iter().filter(|r| r.completion_round.is_some()).count() as f64
                    / rows.len() as f64,
                clique_order: f(|r| r.clique_order.map(|x| x as f64)),
                max_squares: f(|r| r.max_squares.map(f64::from)),
                degeneracy: f(|r| r.degeneracy.map(|x| x as f64)),
                coloring_size: f(|r| r.coloring_size.map(|x| x as f64)),
                caro_wei: f(|r| r.caro_wei),
                failed_parts: f(|r| r.failed_parts.map(|x| x as f64)),
            })
        })
        .collect()
}

pub const SWEEP_METRICS: [&str; 6] = [
    "clique_order",
    "max_squares",
    "degeneracy",
    "coloring_size",
    "caro_wei",
    "failed_parts",
];

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("point,n,t,reps,success");
    for m in SWEEP_METRICS {
        out.push_str(&format!(",{m}_mean,{m}_min,{m}_max"));
    }
    out.push('\n');
    for r in rows {
        let point: Vec<String> = r.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{},{},{},{},{}",
            point.join(";"),
            r.n,
            r.t,
            r.reps,
            fmt_sig(r.success)
        ));
        for s in [
            r.clique_order,
            r.max_squares,
            r.degeneracy,
            r.coloring_size,
            r.caro_wei,
            r.failed_parts,
        ] {
            match s {
                Some(s) => out.push_str(&format!(
                    ",{},{},{}",
                    fmt_sig(s.mean),
                    fmt_sig(s.min),
                    fmt_sig(s.max)
                )),
                None => out.push_str(",,,"),
            }
        }
        out.push('\n');
    }
    out
}

pub const FIGURES_HEADER: &str = "gamma,xi,lower,upper,ratio,chi_lower,chi_upper,chi_ratio";

/// Curve data over a log grid of `γ`.
pub fn figures(lo: f64, hi: f64, points: usize) -> Result<Vec<bounds::CurvePoint>> {
    bounds::log_grid(lo, hi, points)?
        .into_iter()
        .map(bounds::curve_point)
        .collect()
}

pub fn figures_csv(curve: &[bounds::CurvePoint]) -> String {
    let mut out = format!("{FIGURES_HEADER}\n");
    for p in curve {
        let cells = [
            p.gamma,
            p.xi,
            p.lower,
            p.upper,
            p.ratio,
            p.chi_lower,
            p.chi_upper,
            p.chi_ratio,
        ];
        let cells: Vec<String> = cells.iter().map(|&x| fmt_sig(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// `key,value` table of the bounds.
pub fn bounds_csv(b: &bounds::RegimeBounds) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in b.entries() {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

/// `k,w` table of the rewound profile.
pub fn ode_csv(sol: &crate::ode::PhaseSolution) -> String {
    let mut out = String::from("k,w\n");
    for (k, w) in sol.profile() {
        out.push_str(&format!("{k},{}\n", fmt_sig(w)));
    }
    out
}
