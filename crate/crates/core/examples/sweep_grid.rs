//! Sweep the circulant half-width and the horizon, 8 seeds per grid point,
//! and print the aggregate table.
//!
//!     cargo run --release --example sweep_grid

use semirandom::experiment::{self, Axis, ExperimentConfig, Horizon, Metric};

fn main() -> semirandom::Result<()> {
    let base = ExperimentConfig::new(20_000, Horizon::Gamma(1.0), "alg2")
        .param("half", 2)
        .reps(8)
        .metrics(&[Metric::Clique, Metric::MaxSquares]);
    let axes: Vec<Axis> = ["param.half=1,2,3", "gamma=0.5,1,2"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let rows = experiment::sweep(&base, &axes)?;
    print!("{}", experiment::sweep_csv(&rows));
    Ok(())
}
