//! Randomised invariants of the language, the counts and the geometry.

use boxgap::boxdim::{column_count, column_count_brute};
use boxgap::combinatorics::{brute, loops_table, ordered_power_sums, reorder_count, WordCounter};
use boxgap::format::sig10;
use boxgap::geometry::{cylinder_rect, export_csv, read_csv};
use boxgap::shift_model::{
    classify, forced_distance, forced_distance_brute, is_legal, Budget, GridConfig, Symbol, Word, WordClass,
};
use num_bigint::BigUint;
use num_traits::Pow;
use proptest::prelude::*;

fn config() -> impl Strategy<Value = GridConfig> {
    prop_oneof![Just(GridConfig::tiny()), Just(GridConfig::small()), Just(GridConfig::paper())]
}

#[derive(Debug, Clone)]
enum Piece {
    Hub(u16),
    Block(u32, Vec<u16>),
}

/// A concatenation of code words, then a random factor of it.
fn legal_word(cfg: GridConfig, max_len: usize) -> impl Strategy<Value = Word> {
    let m = cfg.m as u16;
    let n = cfg.n as u16;
    let p = cfg.p as usize;
    let piece = prop_oneof![
        (1..=m).prop_map(Piece::Hub),
        (0u32..3).prop_flat_map(move |r| {
            let len = p.pow(r).min(40);
            proptest::collection::vec(3..=n, len).prop_map(move |bs| Piece::Block(r, bs))
        }),
    ];
    (proptest::collection::vec(piece, 1..6), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(
        move |(pieces, a, b)| {
            let mut word = Word::empty();
            for piece in pieces {
                match piece {
                    Piece::Hub(a) => word.push(Symbol::new(a, 1)),
                    Piece::Block(r, bs) => {
                        let len = cfg.p.pow(r) as usize;
                        // long blocks are truncated in the factor anyway
                        if len > bs.len() {
                            for &b in &bs {
                                word.push(Symbol::new(1, b));
                            }
                            break;
                        }
                        for &b in &bs {
                            word.push(Symbol::new(1, b));
                        }
                        for _ in 0..len {
                            word.push(Symbol::new(1, 2));
                        }
                    }
                }
            }
            let start = a.index(word.len());
            let end = (start + 1 + b.index(max_len)).min(word.len());
            Word::new(word.symbols()[start..end].to_vec())
        },
    )
}

fn config_and_word(max_len: usize) -> impl Strategy<Value = (GridConfig, Word)> {
    config().prop_flat_map(move |cfg| (Just(cfg), legal_word(cfg, max_len)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_words_are_legal((cfg, w) in config_and_word(30)) {
        prop_assert!(is_legal(&w, &cfg), "{w}");
    }

    #[test]
    fn factors_of_legal_words_are_legal((cfg, w) in config_and_word(30), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (i, j) = {
            let (i, j) = (i.index(w.len() + 1), j.index(w.len() + 1));
            (i.min(j), i.max(j))
        };
        let factor = Word::new(w.symbols()[i..j].to_vec());
        prop_assert!(is_legal(&factor, &cfg), "{factor} in {w}");
    }

    #[test]
    fn forced_matches_graph_oracle((cfg, w) in config_and_word(14)) {
        prop_assert_eq!(forced_distance(&w, &cfg).ok(), forced_distance_brute(&w, &cfg), "{}", w);
    }

    #[test]
    fn forced_drops_by_at_most_one((cfg, w) in config_and_word(20)) {
        let f = forced_distance(&w, &cfg).unwrap();
        let mut extensions = 0;
        for s in cfg.legal_alphabet() {
            let mut ws = w.clone();
            ws.push(s);
            let Ok(fs) = forced_distance(&ws, &cfg) else { continue };
            extensions += 1;
            prop_assert!(fs + 1 >= f, "{ws}: {fs} after {f}");
            if f > 0 {
                prop_assert_eq!(s.a, 1, "free choice inside a forced stretch after {}", w);
            }
        }
        prop_assert!(extensions > 0, "{w} has no legal extension");
    }

    #[test]
    fn hub_endings_force_nothing((cfg, w) in config_and_word(20), a in 1u16..=2) {
        prop_assume!(forced_distance(&w, &cfg).unwrap() == 0);
        let mut w = w;
        w.push(Symbol::new(a, 1));
        prop_assert_eq!(forced_distance(&w, &cfg).unwrap(), 0);
    }

    #[test]
    fn tail_runs_are_free(cfg in config(), len in 1usize..40) {
        let w = Word::repeat(cfg.tail_symbol(), len);
        prop_assert_eq!(forced_distance(&w, &cfg).unwrap(), 0);
    }

    #[test]
    fn class_agrees_with_forced((cfg, w) in config_and_word(30)) {
        let class = classify(&w, &cfg).unwrap();
        let f = forced_distance(&w, &cfg).unwrap();
        match class {
            WordClass::A | WordClass::HubPure => prop_assert_eq!(f, 0, "{}", w),
            WordClass::B | WordClass::C | WordClass::D => prop_assert!(f > 0, "{w}"),
            WordClass::E => {}
        }
        if f > 0 {
            prop_assert!(class != WordClass::A && class != WordClass::HubPure);
        }
        let all_blocks = w.symbols().iter().all(|s| s.a == 1 && s.b >= 3);
        if class == WordClass::C {
            prop_assert!(all_blocks, "{w}");
        }
        let all_hubs = !w.is_empty() && w.symbols().iter().all(|s| s.b == 1);
        prop_assert_eq!(class == WordClass::HubPure, all_hubs);
    }

    #[test]
    fn runs_rebuild_the_word((cfg, w) in config_and_word(30)) {
        let runs = w.runs(&cfg).unwrap();
        prop_assert_eq!(runs.iter().map(|r| r.len).sum::<usize>(), w.len());
        let mut pos = 0;
        for r in &runs {
            prop_assert_eq!(r.start, pos);
            pos += r.len;
        }
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Word>().unwrap(), w);
    }

    #[test]
    fn column_counts_bounded((cfg, w) in config_and_word(4), extra in 0usize..4) {
        let l = w.len() + extra;
        let fast = column_count(&w, l, &cfg).unwrap();
        prop_assert!(fast >= BigUint::from(1u32));
        prop_assert!(fast <= BigUint::from(cfg.m).pow(extra as u32));
        prop_assert_eq!(fast, column_count_brute(&w, l, &cfg, &Budget::default()).unwrap());
    }

    #[test]
    fn cylinders_nest_and_tile((cfg, w) in config_and_word(8)) {
        let outer = cylinder_rect(&w, &cfg).unwrap();
        let children: Vec<_> = cfg
            .legal_alphabet()
            .into_iter()
            .filter_map(|s| {
                let mut ws = w.clone();
                ws.push(s);
                is_legal(&ws, &cfg).then(|| cylinder_rect(&ws, &cfg).unwrap())
            })
            .collect();
        for (i, c) in children.iter().enumerate() {
            prop_assert!(outer.contains(c));
            for d in &children[i + 1..] {
                prop_assert!(!c.interiors_overlap(d));
            }
        }
    }

    #[test]
    fn power_sums_match_compositions(c in 0usize..26, p in 2u32..6) {
        let cfg = GridConfig::new(2, 4, p).unwrap();
        prop_assert_eq!(ordered_power_sums(c, &cfg), BigUint::from(brute::compositions(c as u64, p as u64)));
    }

    #[test]
    fn reorder_counts_sum_to_power_sums(c in 0u64..60, p in 2u64..5) {
        let cfg = GridConfig::new(2, 4, p as u32).unwrap();
        let total: BigUint = brute::power_partitions(c, p).iter().map(|m| reorder_count(m).unwrap()).sum();
        prop_assert_eq!(total, ordered_power_sums(c as usize, &cfg));
    }

    #[test]
    fn sig10_roundtrips(x in -1e12f64..1e12) {
        let back: f64 = sig10(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-9 * x.abs().max(1e-300));
    }
}

#[test]
fn loops_are_supermultiplicative_and_nested() {
    for cfg in [GridConfig::tiny(), GridConfig::small(), GridConfig::paper()] {
        let nmax = 60;
        let loops = loops_table(nmax, &cfg);
        let counter = WordCounter::new(nmax, &cfg);
        for a in 0..=nmax {
            for b in 0..=nmax - a {
                assert!(loops[a + b] >= &loops[a] * &loops[b], "{cfg:?} G at {a} + {b}");
            }
            assert!(loops[a] <= *counter.ends_at_hub(a));
            assert!(*counter.ends_at_hub(a) <= counter.count_sigma(a));
        }
    }
}

#[test]
fn scale_csv_roundtrip() {
    let cfg = GridConfig::paper();
    let records = boxgap::boxdim::ratio_series(30, &cfg, &Budget::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    export_csv(&records, &path).unwrap();
    let back = read_csv(&path).unwrap();
    assert_eq!(back.len(), records.len());
    for (a, b) in records.iter().zip(&back) {
        assert_eq!((a.k, a.l, &a.n_hat), (b.k, b.l, &b.n_hat));
        assert!((a.ratio - b.ratio).abs() <= 1e-9 * a.ratio);
    }
}
