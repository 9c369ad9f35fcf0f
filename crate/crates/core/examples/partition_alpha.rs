//! Upper-bound the independence number by splitting the vertices into parts
//! and trying to complete a clique inside every part.
//!
//!     cargo run --release --example partition_alpha -- 20000 1000000

use semirandom::bounds;
use semirandom::metrics::{self, SimpleView};
use semirandom::process::Certificate;
use semirandom::strategies::PartitionStrategy;
use semirandom::{process, ProcessState, RngConfig};

fn main() -> semirandom::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(20_000, |s| s.parse().expect("n"));
    let t: u64 = args.next().map_or(50 * n as u64, |s| s.parse().expect("t"));

    let mut state = ProcessState::new(n, RngConfig::new(3))?;
    let mut strategy = PartitionStrategy::new(n, t)?;
    let outcome = process::run(&mut state, &mut strategy, t)?;

    let a = bounds::alpha_bounds(n, t)?;
    println!(
        "lambda = {:.3}, l = {:.3}, part size {}",
        a.lambda,
        a.ell,
        strategy.part_size()
    );
    if let Some(Certificate::Partition(cert)) = outcome.certificate {
        println!("{} parts, {} failed", cert.parts, cert.failed);
        println!("certified alpha <= {}", cert.alpha_upper);
    }
    println!(
        "bound range [{:.1}, {:.1}] ({:?})",
        a.lower, a.upper, a.case
    );
    let view = SimpleView::from_state(&state);
    println!("caro-wei lower estimate {:.1}", metrics::caro_wei(&view));
    Ok(())
}
