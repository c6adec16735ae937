//! Alphabet, legal words and the forced-distance semantics.

mod config;
mod parse;
pub mod presentation;
mod symbol;

pub use config::{Budget, GridConfig, DEFAULT_ENUMERATION_CAP, DEFAULT_MEMORY_CAP};
pub use parse::{classify, forced_distance, is_legal, parse, ParseOutcome, WordClass};
pub use presentation::{enumerate_words, forced_distance_brute, Presentation};
pub use symbol::{Role, Run, Symbol, Word};
