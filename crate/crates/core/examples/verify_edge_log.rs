//! Save a run as an edge log, read it back and recompute every metric from
//! the log alone.
//!
//!     cargo run --release --example verify_edge_log

use semirandom::edgelog;
use semirandom::metrics;
use semirandom::strategies::CliqueGrowth;
use semirandom::{process, ProcessState, RngConfig};

fn main() -> semirandom::Result<()> {
    let n = 2_000;
    let mut state = ProcessState::new(n, RngConfig::new(42))?;
    let mut strategy = CliqueGrowth::new(n);
    process::run(&mut state, &mut strategy, 3 * n as u64)?;

    let text = edgelog::edge_log_string(state.edge_log());
    println!(
        "edge log: {} lines, first: {}",
        state.edge_log().len(),
        text.lines().next().unwrap_or("")
    );
    let records = edgelog::read_edge_log(text.as_bytes())?;
    let replayed = ProcessState::replay(n, &records)?;
    assert_eq!(replayed.degree(), state.degree());

    let report = metrics::metrics_report(&replayed, Some(strategy.clique()), 40)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    Ok(())
}
