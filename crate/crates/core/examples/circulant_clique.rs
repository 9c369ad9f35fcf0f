//! Build a K_m on fixed targets by routing squares round the circulant, then
//! print how many squares each target needed.
//!
//!     cargo run --release --example circulant_clique -- 100000 3

use semirandom::experiment::Horizon;
use semirandom::metrics::{self, SimpleView};
use semirandom::strategies::CirculantStrategy;
use semirandom::{process, ProcessState, RngConfig};

fn main() -> semirandom::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(100_000, |s| s.parse().expect("n"));
    let half: usize = args.next().map_or(3, |s| s.parse().expect("half"));
    let t = Horizon::Gamma(1.0).rounds(n)?;

    let mut state = ProcessState::new(n, RngConfig::new(1))?;
    let mut strategy = CirculantStrategy::new(n, half)?;
    process::run(&mut state, &mut strategy, t)?;

    let c = strategy.circulant();
    let view = SimpleView::from_state(&state);
    println!(
        "K{} on targets {:?}",
        c.order(),
        c.targets().iter().map(|v| v.index()).collect::<Vec<_>>()
    );
    for pos in 0..c.order() {
        println!(
            "  target {pos}: {} of {} squares used",
            c.square_counts()[pos].min(c.need(pos)),
            c.need(pos)
        );
    }
    match c.completed_at() {
        Some(r) => println!("complete at round {r} of {t}"),
        None => println!("incomplete after {t} rounds"),
    }
    println!(
        "clique verified: {}",
        metrics::verify_clique(&view, c.targets())
    );
    Ok(())
}
