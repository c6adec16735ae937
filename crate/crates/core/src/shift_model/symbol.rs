use std::fmt;
use std::str::FromStr;

use crate::error::Error;

use super::config::GridConfig;

/// Role a symbol plays in the presentation graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// `(a, 1)`: a loop at the hub vertex.
    Hub,
    /// `(1, 2)`: closes a block.
    Tail,
    /// `(1, b)` with `b >= 3`.
    Block,
}

/// A digit pair `(a, b)`; `a` selects the column, `b` the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub a: u16,
    pub b: u16,
}

impl Symbol {
    pub const fn new(a: u16, b: u16) -> Self {
        Symbol { a, b }
    }

    /// `None` for symbols of the full alphabet that label no edge
    /// (`a >= 2` and `b >= 2`) or that fall outside `[1..m] x [1..n]`.
    pub fn role(&self, cfg: &GridConfig) -> Option<Role> {
        if self.a == 0 || self.b == 0 || self.a as u32 > cfg.m || self.b as u32 > cfg.n {
            return None;
        }
        match (self.a, self.b) {
            (_, 1) => Some(Role::Hub),
            (1, 2) => Some(Role::Tail),
            (1, _) => Some(Role::Block),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A maximal run of symbols sharing one role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub role: Role,
    pub start: usize,
    pub len: usize,
}

/// A finite word over the alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `symbol^count`.
    pub fn repeat(symbol: Symbol, count: usize) -> Self {
        Word(vec![symbol; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.0.len() - len..].to_vec())
    }

    /// First coordinates `a_1 a_2 ...`.
    pub fn projection(&self) -> Vec<u16> {
        self.0.iter().map(|s| s.a).collect()
    }

    /// Maximal runs by role, or `None` if some symbol labels no edge.
    pub fn runs(&self, cfg: &GridConfig) -> Option<Vec<Run>> {
        let mut runs: Vec<Run> = Vec::new();
        for (i, s) in self.0.iter().enumerate() {
            let role = s.role(cfg)?;
            match runs.last_mut() {
                Some(last) if last.role == role => last.len += 1,
                _ => runs.push(Run {
                    role,
                    start: i,
                    len: 1,
                }),
            }
        }
        Some(runs)
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses `(1,3)(1,2)(2,1)`; whitespace is ignored and `ε` or an empty
/// string is the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "ε" {
            return Ok(Word::empty());
        }
        let bad = || Error::Domain(format!("cannot parse word `{text}`"));
        let body = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut out = Vec::new();
        for pair in body.split(")(") {
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            let a = a.parse::<u16>().map_err(|_| bad())?;
            let b = b.parse::<u16>().map_err(|_| bad())?;
            out.push(Symbol::new(a, b));
        }
        Ok(Word(out))
    }
}
