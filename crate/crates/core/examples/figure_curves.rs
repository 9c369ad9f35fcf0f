//! Write the leading-coefficient curves for the clique and chromatic number
//! as CSV, one row per gamma on a log grid.
//!
//!     cargo run --example figure_curves -- curves.csv

use semirandom::experiment;

fn main() -> semirandom::Result<()> {
    let curve = experiment::figures(1e-4, 1e2, 200)?;
    let csv = experiment::figures_csv(&curve);
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, csv)?;
            let worst = curve.iter().map(|p| p.ratio).fold(0.0, f64::max);
            println!(
                "wrote {} rows to {path}; worst clique ratio {worst:.4}",
                curve.len()
            );
        }
        None => print!("{csv}"),
    }
    Ok(())
}
