//! Exact counts of the four word families for small N.
//!
//! `cargo run --example count_families -- [preset] [nmax]`

use boxgap::combinatorics::{CountTable, Family};
use boxgap::shift_model::Budget;
use boxgap::GridConfig;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cfg = GridConfig::preset(args.first().map_or("paper", String::as_str))?;
    let nmax: usize = args.get(1).map_or(Ok(12), |s| s.parse())?;
    let budget = Budget::default();

    let families = [Family::Sigma, Family::Loops, Family::EndsAtHub, Family::StartsAtHub];
    let tables = families
        .iter()
        .map(|&f| CountTable::build(f, nmax, &cfg, &budget))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{:>4}", "N");
    for f in &families {
        print!(" {:>22}", f.to_string());
    }
    println!();
    for n in 0..=nmax {
        print!("{n:>4}");
        for t in &tables {
            print!(" {:>22}", t.values[n]);
        }
        println!();
    }
    Ok(())
}
