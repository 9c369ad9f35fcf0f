//! Count rare pairs (a circle on w followed later by a square on w) and
//! remove them from a vertex set by deleting the vertices with the most.
//!
//!     cargo run --release --example rare_pairs -- 50000

use semirandom::metrics;
use semirandom::strategies::CliqueGrowth;
use semirandom::{process, ProcessState, RngConfig, VertexId};

fn main() -> semirandom::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(50_000, |s| s.parse().expect("n"));
    let mut state = ProcessState::new(n, RngConfig::new(9))?;
    let mut strategy = CliqueGrowth::new(n);
    process::run(&mut state, &mut strategy, n as u64)?;

    let by_host = metrics::count_rare_pairs(&state)?;
    let by_source = metrics::count_rare_pairs_by_source(n, state.edge_log());
    println!("total rare pairs {}", by_host.total);
    println!(
        "max per host vertex {}, max per source vertex {}",
        by_host.max, by_source.max
    );

    let clique: Vec<VertexId> = strategy.clique().to_vec();
    let d = metrics::destroy_rare_pairs(&state, &clique);
    println!(
        "clique of order {}: removed {} vertices (budget {}), {} rare pairs left",
        clique.len(),
        d.removed,
        d.budget,
        d.remaining
    );
    Ok(())
}
