//! Growth rates `(1/N) ln #G_N`, `(1/N) ln #I_N` and `(1/N) ln #Σ_N`.
//!
//! `cargo run --release --example entropy -- [preset] [nmax]`

use boxgap::combinatorics::{ln, loops_table, WordCounter};
use boxgap::GridConfig;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cfg = GridConfig::preset(args.first().map_or("paper", String::as_str))?;
    let nmax: usize = args.get(1).map_or(Ok(2000), |s| s.parse())?;

    let loops = loops_table(nmax, &cfg);
    let counter = WordCounter::new(nmax, &cfg);
    let g = cfg.g() as f64;
    // loops with length-1 blocks: G_N ~ (m/2 + sqrt(m^2/4 + g))^N as N grows
    let limit = (cfg.m as f64 / 2.0 + (cfg.m as f64 * cfg.m as f64 / 4.0 + g).sqrt()).ln();
    println!("{cfg:?}, ln 4 = {:.6}, ln of the dominant root = {limit:.6}", 4f64.ln());
    println!("{:>6} {:>10} {:>10} {:>10}", "N", "G", "I", "Sigma");
    let mut n = 1;
    while n <= nmax {
        let rate = |x: &num_bigint::BigUint| ln(x).map_or(f64::NAN, |v| v / n as f64);
        println!(
            "{n:>6} {:>10.6} {:>10.6} {:>10.6}",
            rate(&loops[n]),
            rate(counter.ends_at_hub(n)),
            rate(&counter.count_sigma(n))
        );
        n = if n < 10 { n + 1 } else { n * 2 };
    }
    for n in [500, 1000, 2000].into_iter().filter(|&n| n <= nmax) {
        println!(
            "N = {n}: G {:.9}, I {:.9}",
            ln(&loops[n]).unwrap() / n as f64,
            ln(counter.ends_at_hub(n)).unwrap() / n as f64
        );
    }
    Ok(())
}
