//! Run replications from a key=value config and write the per-run CSV plus
//! its metadata sidecar.
//!
//!     cargo run --release --example simulate_config -- runs.csv

use semirandom::experiment::{self, ExperimentConfig};

const CONFIG: &str = "\
n = 50000
beta = 20
strategy = alg1
seed = 100
reps = 4
metrics = clique,max_squares,degeneracy,caro_wei
";

fn main() -> semirandom::Result<()> {
    let cfg = ExperimentConfig::parse(CONFIG)?;
    let rows = experiment::simulate(&cfg)?;
    match std::env::args().nth(1) {
        Some(path) => {
            let path = std::path::PathBuf::from(path);
            std::fs::write(&path, experiment::rows_csv(&rows))?;
            let meta = experiment::write_meta(&path, &cfg)?;
            println!("wrote {} and {}", path.display(), meta.display());
        }
        None => print!("{}", experiment::rows_csv(&rows)),
    }
    Ok(())
}
