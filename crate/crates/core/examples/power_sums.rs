//! Compositions of c into powers of p, and the multinomial reorder counts
//! that sum to them.

use boxgap::combinatorics::{brute, ordered_power_sums_table, reorder_count};
use boxgap::GridConfig;
use num_bigint::BigUint;

fn main() -> anyhow::Result<()> {
    let p: u32 = std::env::args().nth(1).map_or(Ok(2), |s| s.parse())?;
    let cfg = GridConfig::new(2, 14, p)?;
    let table = ordered_power_sums_table(64, &cfg);
    println!("S_c for p = {p}");
    for c in (0..=64).step_by(8) {
        let ratio = if c > 0 { format!("{:.4}", (table[c].bits() as f64) / c as f64) } else { "-".into() };
        println!("  c = {c:>2}: {:>20}  (bits per unit {ratio})", table[c]);
    }

    let c = 10u64;
    println!("\nmultisets of powers of {p} summing to {c}:");
    let mut total = BigUint::default();
    for mults in brute::power_partitions(c, p as u64) {
        let r = reorder_count(&mults)?;
        println!("  nonzero multiplicities {mults:?}: {r} orderings");
        total += r;
    }
    println!("  total {total} = S_{c} = {}", table[c as usize]);
    Ok(())
}
