//! The two limiting dimension ratios and the first few scales of each family.

use boxgap::boxdim::{dimension_constants, paper_scales};
use boxgap::GridConfig;

fn main() -> anyhow::Result<()> {
    let cfg = GridConfig::paper();
    let (high, low) = dimension_constants(&cfg)?;
    println!("D_high = {high:.10}");
    println!("D_low  = {low:.10}");
    println!("gap    = {:.4}", high - low);
    let (ks, ks_low) = paper_scales(4, &cfg);
    println!("high scales k: {ks:?}");
    println!("low scales k:  {ks_low:?}");
    Ok(())
}
