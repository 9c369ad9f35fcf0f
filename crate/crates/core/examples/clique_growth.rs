//! Grow a clique one vertex at a time for t = n rounds and check it against
//! the bounds for that horizon.
//!
//!     cargo run --release --example clique_growth -- 100000 7

use semirandom::bounds;
use semirandom::metrics::{self, SimpleView};
use semirandom::strategies::CliqueGrowth;
use semirandom::{process, ProcessState, RngConfig};

fn main() -> semirandom::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(100_000, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));
    let t = n as u64;

    let mut state = ProcessState::new(n, RngConfig::new(seed))?;
    let mut strategy = CliqueGrowth::new(n);
    process::run(&mut state, &mut strategy, t)?;

    let view = SimpleView::from_state(&state);
    let b = bounds::regime_bounds(n, t, None)?;
    println!("n = {n}, t = {t}, regime {}", b.regime.as_str());
    println!(
        "clique order {} (verified: {})",
        strategy.order(),
        metrics::verify_clique(&view, strategy.clique())
    );
    for k in 2..=strategy.order() {
        if let Some(round) = strategy.reached_at(k) {
            println!("  K{k} at round {round}");
        }
    }
    println!(
        "a.a.s. reachable order k = {:.3}, unreachable k' = {:.3}",
        b.k, b.k_prime
    );
    let (max_sq, v) = metrics::max_squares(&state);
    println!(
        "max squares {max_sq} (vertex {}), threshold l = {:.3}",
        v.index(),
        b.ell.unwrap_or(f64::NAN)
    );
    Ok(())
}
