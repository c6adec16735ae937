//! Left-to-right legality scan over the run decomposition.
//!
//! A finite word is legal when it is a factor of some concatenation of code
//! words: hub symbols, and `w (1,2)^L` with `w` a block word of length
//! `L = p^r`. The leftmost run may continue a code word that started before
//! the window (a hidden prefix), the rightmost run may be unfinished. Every
//! run in between is pinned down exactly.

use std::fmt;

use crate::error::{Error, Result};

use super::config::GridConfig;
use super::symbol::{Role, Run, Word};

/// Shape classes for words at a fixed length, by trailing structure.
///
/// `u` is a word ending at the hub, `w` a block run, `z` a tail run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordClass {
    /// `u`: ends at the hub.
    A,
    /// `u w`: trailing block run whose start is visible.
    B,
    /// `w`: nothing but block symbols.
    C,
    /// `w (1,2)^z`: a leading block run followed by an unfinished tail.
    D,
    /// `u w (1,2)^z` with `z <= w`.
    E,
    /// Non-empty and made of hub symbols only (a refinement of `A`).
    HubPure,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WordClass::A => "a",
            WordClass::B => "b",
            WordClass::C => "c",
            WordClass::D => "d",
            WordClass::E => "e",
            WordClass::HubPure => "hub-pure",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOutcome {
    pub legal: bool,
    /// Minimal forced distance; `None` for illegal words.
    pub forced: Option<u64>,
    pub class: Option<WordClass>,
}

impl ParseOutcome {
    const ILLEGAL: ParseOutcome = ParseOutcome {
        legal: false,
        forced: None,
        class: None,
    };

    fn legal(forced: u64, class: WordClass) -> Self {
        ParseOutcome {
            legal: true,
            forced: Some(forced),
            class: Some(class),
        }
    }
}

pub fn parse(word: &Word, cfg: &GridConfig) -> ParseOutcome {
    match word.runs(cfg) {
        Some(runs) => scan(&runs, cfg).unwrap_or(ParseOutcome::ILLEGAL),
        None => ParseOutcome::ILLEGAL,
    }
}

pub fn is_legal(word: &Word, cfg: &GridConfig) -> bool {
    parse(word, cfg).legal
}

/// Minimal number of symbols that must follow `word` before a hub symbol
/// may legally occur, minimised over all parses.
pub fn forced_distance(word: &Word, cfg: &GridConfig) -> Result<u64> {
    parse(word, cfg)
        .forced
        .ok_or_else(|| Error::Domain(format!("forced distance of illegal word {word}")))
}

pub fn classify(word: &Word, cfg: &GridConfig) -> Result<WordClass> {
    parse(word, cfg)
        .class
        .ok_or_else(|| Error::Domain(format!("classification of illegal word {word}")))
}

fn tau(cfg: &GridConfig, x: usize) -> u64 {
    // run lengths are bounded by memory, far below where tau overflows
    cfg.tau(x as u64).expect("tau overflow")
}

fn scan(runs: &[Run], cfg: &GridConfig) -> Option<ParseOutcome> {
    let Some(first) = runs.first() else {
        return Some(ParseOutcome::legal(0, WordClass::A));
    };
    if runs.iter().all(|r| r.role == Role::Hub) {
        return Some(ParseOutcome::legal(0, WordClass::HubPure));
    }

    let mut i = match first.role {
        Role::Hub => 0,
        // a leading tail run is always the end of some hidden block
        Role::Tail => {
            if runs.len() == 1 {
                return Some(ParseOutcome::legal(0, WordClass::A));
            }
            1
        }
        Role::Block => {
            let w = first.len;
            if runs.len() == 1 {
                return Some(ParseOutcome::legal(tau(cfg, w), WordClass::C));
            }
            let second = runs[1];
            if second.role != Role::Tail {
                return None;
            }
            let z = second.len;
            if runs.len() == 2 {
                // hidden block length L = p^r >= max(w, z), tail still open
                let forced = tau(cfg, w.max(z)) - z as u64;
                let class = if forced == 0 { WordClass::A } else { WordClass::D };
                return Some(ParseOutcome::legal(forced, class));
            }
            if !(cfg.is_block_length(z as u64) && z >= w) {
                return None;
            }
            2
        }
    };

    // from here on we sit at the hub with every block start visible
    while i < runs.len() {
        let run = runs[i];
        match run.role {
            Role::Hub => i += 1,
            Role::Tail => return None,
            Role::Block => {
                let w = run.len;
                if i + 1 == runs.len() {
                    let forced = 2 * tau(cfg, w) - w as u64;
                    return Some(ParseOutcome::legal(forced, WordClass::B));
                }
                let tail = runs[i + 1];
                if tail.role != Role::Tail || !cfg.is_block_length(w as u64) || tail.len > w {
                    return None;
                }
                if i + 2 == runs.len() {
                    return Some(ParseOutcome::legal((w - tail.len) as u64, WordClass::E));
                }
                if tail.len != w {
                    return None;
                }
                i += 2;
            }
        }
    }
    Some(ParseOutcome::legal(0, WordClass::A))
}
