//! Column counts M(i, l) from the forced distance, compared with direct
//! enumeration of the projected extensions.

use boxgap::boxdim::{column_count_brute, column_count_closed};
use boxgap::shift_model::{forced_distance, Budget, Word};
use boxgap::GridConfig;

fn main() -> anyhow::Result<()> {
    let cfg = GridConfig::paper();
    let budget = Budget::default();
    let words = ["(1,1)(2,1)", "(1,3)(1,4)", "(1,1)(1,3)(1,2)", "(1,2)(1,2)", "(1,9)"];
    for text in words {
        let word: Word = text.parse()?;
        let f = forced_distance(&word, &cfg)?;
        let k = word.len() as u64;
        print!("{text:<18} forced {f:>2}:");
        for l in word.len()..=word.len() + 5 {
            let closed = column_count_closed(f, k, l as u64, &cfg)?;
            let brute = column_count_brute(&word, l, &cfg, &budget)?;
            assert_eq!(closed, brute);
            print!(" {closed:>3}");
        }
        println!();
    }
    Ok(())
}
