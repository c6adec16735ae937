//! The dimension-ratio series `log n_hat(k) / (k log n)` and its values on
//! the two scale families `k_N = p^N` and `k'_N = ceil(p^(N - 1/2))`.
//!
//!     cargo run --release --example ratio_series -- 2

use std::time::Instant;

use boxgap::boxdim::{gap_report, paper_scales};
use boxgap::shift_model::{Budget, GridConfig};

fn main() -> anyhow::Result<()> {
    let nmax: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let cfg = GridConfig::paper();
    let (high, low) = paper_scales(nmax, &cfg);
    println!("k_N  = {high:?}");
    println!("k'_N = {low:?}");

    let t = Instant::now();
    let report = gap_report(nmax, None, &cfg, &Budget::from_env())?;
    println!("computed {} scales in {:.1}s\n", report.series.len(), t.elapsed().as_secs_f64());

    for (hi, lo) in report.high_scales.iter().zip(&report.low_scales) {
        println!(
            "r({:>5}) = {:.6}    r({:>5}) = {:.6}",
            hi.k, hi.ratio, lo.k, lo.ratio
        );
    }
    if let Some((d_high, d_low)) = report.constants {
        println!("\nlimits: D_high = {d_high:.6}, D_low = {d_low:.6}");
    }
    for c in &report.lower_bound_checks {
        println!("n_hat({}) >= 10^{} 2^(l - {}): {}", c.k, c.k, 2 * c.k, c.holds);
    }
    Ok(())
}
