//! Put every circle on a minimum-degree vertex and compare the final degree
//! fractions with the fluid limit.
//!
//!     cargo run --release --example greedy_vs_ode -- 200000 2

use semirandom::metrics::{self, SimpleView};
use semirandom::ode;
use semirandom::strategies::{degree_histogram, GreedyMinDegree};
use semirandom::{process, ProcessState, RngConfig};

fn main() -> semirandom::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(200_000, |s| s.parse().expect("n"));
    let lambda: f64 = args.next().map_or(2.0, |s| s.parse().expect("lambda"));
    let t = (lambda * n as f64).round() as u64;

    let mut state = ProcessState::new(n, RngConfig::new(11))?;
    process::run(&mut state, &mut GreedyMinDegree::new(n), t)?;
    let hist = degree_histogram(state.degree());
    let sol = ode::integrate_phases(lambda, ode::DEFAULT_STEP)?;

    println!(
        "phase at lambda: {}, boundaries {:?}",
        sol.phase_at_lambda, sol.boundaries
    );
    println!("{:>3} {:>10} {:>10}", "k", "sim", "fluid");
    for k in 0..hist.len().max(sol.top + 1).min(12) {
        let sim = hist.get(k).copied().unwrap_or(0) as f64 / n as f64;
        println!("{k:>3} {sim:>10.5} {:>10.5}", sol.w(k));
    }
    let cw = metrics::caro_wei(&SimpleView::from_state(&state)) / n as f64;
    println!(
        "caro-wei / n: sim {cw:.5}, fluid {:.5}",
        sol.lower_bound_coeff
    );
    Ok(())
}
