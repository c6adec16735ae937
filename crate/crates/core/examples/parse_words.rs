//! Legality, forced distance and class of a few words, checked against the
//! graph presentation.
//!
//! `cargo run --example parse_words -- "(1,3)(1,2)(2,1)"`

use boxgap::shift_model::{forced_distance_brute, parse, Word};
use boxgap::GridConfig;

fn main() -> anyhow::Result<()> {
    let cfg = GridConfig::paper();
    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = [
            "(2,1)(1,1)",
            "(1,2)(1,2)(1,1)",
            "(1,5)",
            "(1,1)(1,5)",
            "(1,1)(1,5)(1,2)",
            "(1,4)(1,2)(1,2)",
            "(1,1)(1,5)(1,6)",
            "(2,3)",
        ]
        .map(String::from)
        .to_vec();
    }
    println!("{:<24} {:>6} {:>7} {:>9} {:>6}", "word", "legal", "forced", "oracle", "class");
    for text in &words {
        let word: Word = text.parse()?;
        let out = parse(&word, &cfg);
        let show = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        println!(
            "{:<24} {:>6} {:>7} {:>9} {:>6}",
            word.to_string(),
            out.legal,
            show(out.forced),
            show(forced_distance_brute(&word, &cfg)),
            out.class.map_or("-".to_string(), |c| c.to_string())
        );
    }
    Ok(())
}
