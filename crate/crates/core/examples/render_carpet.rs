//! Writes the depth-d approximation of the carpet as a binary PBM.
//!
//! `cargo run --release --example render_carpet -- out.pbm [preset] [depth] [size]`

use boxgap::geometry::{coverage, rasterize, write_pnm};
use boxgap::shift_model::Budget;
use boxgap::GridConfig;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = args.first().map_or("carpet.pbm", String::as_str);
    let cfg = GridConfig::preset(args.get(1).map_or("paper", String::as_str))?;
    let depth: usize = args.get(2).map_or(Ok(4), |s| s.parse())?;
    let size: usize = args.get(3).map_or(Ok(864), |s| s.parse())?;

    let raster = rasterize(depth, size, size, &cfg, &Budget::default())?;
    write_pnm(&raster, out)?;
    println!("{out}: {size}x{size}, {:.4}% of pixels set", 100.0 * coverage(&raster));
    Ok(())
}
