//! Compares the symbolic covering estimate with a grid box count computed
//! from the cylinder rectangles directly.
//!
//!     cargo run --release --example grid_oracle -- tiny 10

use std::time::Instant;

use boxgap::boxdim::n_hat;
use boxgap::geometry::grid_box_count;
use boxgap::shift_model::{Budget, GridConfig};
use num_traits::ToPrimitive;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "tiny".into());
    let kmax: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(8);
    let cfg = GridConfig::preset(&preset)?;
    let budget = Budget::from_env();

    println!("{:>3} {:>16} {:>16} {:>8} {:>8}", "k", "n_hat", "grid", "ratio", "secs");
    for k in 1..=kmax {
        let t = Instant::now();
        let est = n_hat(k, &cfg, &budget)?;
        let grid = grid_box_count(k, &cfg, &budget)?;
        let q = est.to_f64().unwrap() / grid.to_f64().unwrap();
        println!("{k:>3} {est:>16} {grid:>16} {q:>8.4} {:>8.2}", t.elapsed().as_secs_f64());
    }
    Ok(())
}
