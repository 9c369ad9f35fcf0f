//! Place every circle after all squares are known, level by level, and
//! compare with the closed-form profile.
//!
//!     cargo run --release --example offline_profile -- 200000 1.5

use semirandom::bounds;
use semirandom::strategies::{degree_histogram, run_offline};
use semirandom::{ProcessState, RngConfig};

fn main() -> semirandom::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(200_000, |s| s.parse().expect("n"));
    let lambda: f64 = args.next().map_or(1.5, |s| s.parse().expect("lambda"));
    let t = (lambda * n as f64).round() as u64;

    let mut state = ProcessState::new(n, RngConfig::new(5))?;
    run_offline(&mut state, t)?;
    let hist = degree_histogram(state.degree());
    let p = bounds::offline_profile(lambda)?;

    println!("level M = {}, g(M) = {:.5}", p.m, p.g_m);
    println!("{:>3} {:>10} {:>10}", "k", "sim", "h(k)");
    for (k, h) in p.h.iter().enumerate().take(12) {
        let sim = hist.get(k).copied().unwrap_or(0) as f64 / n as f64;
        println!("{k:>3} {sim:>10.5} {h:>10.5}");
    }
    println!("mass {:.6}, mean degree {:.6}", p.mass(), p.mean_degree());
    println!("independence lower coefficient {:.5}", p.lower_bound_coeff);
    Ok(())
}
