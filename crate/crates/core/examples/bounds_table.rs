//! Print the clique, chromatic and independence bounds across the three
//! horizon regimes for one n.
//!
//!     cargo run --example bounds_table -- 1000000

use semirandom::bounds::{self, fmt_sig};

fn main() -> semirandom::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(1_000_000, |s| s.parse().expect("n"));
    let nl = n as f64 * (n as f64).ln();
    let horizons = [
        n as u64 / 10,
        n as u64,
        (0.5 * nl) as u64,
        (2.0 * nl) as u64,
        (nl * (n as f64).ln()) as u64,
    ];
    for t in horizons {
        let b = bounds::regime_bounds(n, t, None)?;
        println!("t = {t} ({})", b.regime.as_str());
        println!(
            "  clique order in [{}, {}]",
            fmt_sig(b.k),
            fmt_sig(b.k_prime)
        );
        println!(
            "  chromatic number in [{}, {}]",
            fmt_sig(b.chi_lower),
            fmt_sig(b.chi_upper)
        );
        if let Some(a) = &b.alpha {
            println!(
                "  independence number in [{}, {}]",
                fmt_sig(a.lower),
                fmt_sig(a.upper)
            );
        }
        for w in &b.warnings {
            println!("  warning: {w}");
        }
    }
    println!("xi(1) = {}", fmt_sig(bounds::solve_xi(1.0)?));
    println!(
        "gamma switches: {} and {}",
        fmt_sig(bounds::gamma_lower_switch()),
        fmt_sig(bounds::gamma_upper_switch())
    );
    Ok(())
}
