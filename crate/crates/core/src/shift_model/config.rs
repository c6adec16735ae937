use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::symbol::Symbol;

/// Construction parameters: horizontal base `m`, vertical base `n` and the
/// block-length base `p`.
///
/// Hub symbols are `(a, 1)` for `1 <= a <= m`, the tail symbol is `(1, 2)`
/// and the block symbols are `(1, b)` for `3 <= b <= n`. Blocks always have
/// length `p^r` for some `r >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub m: u32,
    pub n: u32,
    pub p: u32,
}

impl GridConfig {
    pub fn new(m: u32, n: u32, p: u32) -> Result<Self> {
        let cfg = GridConfig { m, n, p };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `(2, 12, 13)`.
    pub fn paper() -> Self {
        GridConfig { m: 2, n: 12, p: 13 }
    }

    /// `(2, 4, 2)`: small enough for exhaustive oracles at moderate lengths.
    pub fn tiny() -> Self {
        GridConfig { m: 2, n: 4, p: 2 }
    }

    /// `(2, 6, 3)`.
    pub fn small() -> Self {
        GridConfig { m: 2, n: 6, p: 3 }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "paper" => Ok(Self::paper()),
            "tiny" => Ok(Self::tiny()),
            "small" => Ok(Self::small()),
            other => Err(Error::InvalidConfig(format!(
                "unknown preset `{other}` (expected paper, tiny or small)"
            ))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: GridConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidConfig(format!("m >= 2 violated (m = {})", self.m)));
        }
        if self.n <= self.m {
            return Err(Error::InvalidConfig(format!(
                "n > m violated (m = {}, n = {})",
                self.m, self.n
            )));
        }
        if self.p < 2 {
            return Err(Error::InvalidConfig(format!("p >= 2 violated (p = {})", self.p)));
        }
        // n > m >= 2 already forces g = n - 2 >= 1.
        if self.m > u16::MAX as u32 || self.n > u16::MAX as u32 {
            return Err(Error::InvalidConfig("m and n must fit in 16 bits".into()));
        }
        Ok(())
    }

    /// Number of block symbols, `n - 2`.
    pub fn g(&self) -> u32 {
        self.n - 2
    }

    pub fn is_paper_instance(&self) -> bool {
        *self == Self::paper()
    }

    pub fn hub_symbols(&self) -> impl Iterator<Item = Symbol> {
        (1..=self.m as u16).map(|a| Symbol::new(a, 1))
    }

    pub fn tail_symbol(&self) -> Symbol {
        Symbol::new(1, 2)
    }

    pub fn block_symbols(&self) -> impl Iterator<Item = Symbol> {
        (3..=self.n as u16).map(|b| Symbol::new(1, b))
    }

    /// Every symbol that labels an edge of the presentation, in
    /// lexicographic `(a, b)` order.
    pub fn legal_alphabet(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .hub_symbols()
            .chain(std::iter::once(self.tail_symbol()))
            .chain(self.block_symbols())
            .collect();
        out.sort();
        out
    }

    /// Smallest power of `p` that is `>= x`.
    pub fn tau(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::Domain("tau is defined for x >= 1 only".into()));
        }
        let p = self.p as u64;
        let mut q = 1u64;
        while q < x {
            q = q
                .checked_mul(p)
                .ok_or_else(|| Error::Domain(format!("tau({x}) overflows u64")))?;
        }
        Ok(q)
    }

    /// Whether `x` is an admissible block length `p^r`.
    pub fn is_block_length(&self, x: u64) -> bool {
        x >= 1 && self.tau(x).is_ok_and(|q| q == x)
    }

    /// Admissible block lengths `1, p, p^2, ...` not exceeding `limit`.
    pub fn block_lengths(&self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut q = 1u64;
        while q <= limit {
            out.push(q);
            match q.checked_mul(self.p as u64) {
                Some(next) => q = next,
                None => break,
            }
        }
        out
    }
}

/// Resource limits shared by the brute-force oracles and the DP tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of enumerated objects an oracle may visit.
    pub enumeration_cap: u64,
    /// Maximum bytes a dense DP table may occupy.
    pub memory_cap: u128,
}

pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;
pub const DEFAULT_MEMORY_CAP: u128 = 2 << 30;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

impl Budget {
    /// Default budget with `BOXGAP_BUDGET` overriding the enumeration cap.
    pub fn from_env() -> Self {
        let mut budget = Budget::default();
        if let Some(cap) = std::env::var("BOXGAP_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            budget.enumeration_cap = cap;
        }
        budget
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        let paper = GridConfig::paper();
        assert_eq!(paper.tau(1).unwrap(), 1);
        assert_eq!(paper.tau(13).unwrap(), 13);
        assert_eq!(paper.tau(14).unwrap(), 169);
        assert_eq!(GridConfig::tiny().tau(5).unwrap(), 8);
        assert!(paper.tau(0).is_err());
    }

    #[test]
    fn validation_names_the_invariant() {
        let err = GridConfig::new(3, 3, 2).unwrap_err().to_string();
        assert!(err.contains("n > m"), "{err}");
        let err = GridConfig::new(1, 3, 2).unwrap_err().to_string();
        assert!(err.contains("m >= 2"), "{err}");
        let err = GridConfig::new(2, 3, 1).unwrap_err().to_string();
        assert!(err.contains("p >= 2"), "{err}");
    }

    #[test]
    fn json_config() {
        let cfg = GridConfig::from_json(r#"{"m": 2, "n": 12, "p": 13}"#).unwrap();
        assert!(cfg.is_paper_instance());
        assert!(!GridConfig::tiny().is_paper_instance());
        assert!(GridConfig::from_json(r#"{"m": 2, "n": 2, "p": 13}"#).is_err());
        assert!(GridConfig::from_json(r#"{"m": 2, "n": 5}"#).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(GridConfig::preset("tiny").unwrap(), GridConfig { m: 2, n: 4, p: 2 });
        assert_eq!(GridConfig::preset("small").unwrap(), GridConfig { m: 2, n: 6, p: 3 });
        assert!(GridConfig::preset("huge").is_err());
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(GridConfig::paper().legal_alphabet().len(), 13);
        assert_eq!(GridConfig::tiny().legal_alphabet().len(), 5);  // 2 hubs, the tail, blocks (1,3) and (1,4)
        assert_eq!(GridConfig::paper().block_lengths(200), vec![1, 13, 169]);
        assert!(GridConfig::tiny().is_block_length(8));
        assert!(!GridConfig::tiny().is_block_length(6));
    }
}
