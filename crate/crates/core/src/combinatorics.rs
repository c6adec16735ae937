//! Exact word counts by dynamic programming.
//!
//! A legal word of length `k` splits uniquely into a prefix that ends at the
//! hub and a trailing piece that is still inside a code word. The prefix
//! counts `#I_j` obey a one-dimensional recurrence and the trailing pieces
//! come in three shapes, each with a closed-form forced distance. That gives
//! every count here, and the forced-distance histogram in [`crate::boxdim`],
//! from one table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::shift_model::{Budget, GridConfig};

/// Word families with dedicated counting routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// All legal words, `#Σ_N`.
    Sigma,
    /// Labels of hub-to-hub paths, `#G_N`.
    Loops,
    /// Words that can end at the hub, `#I_N`.
    EndsAtHub,
    /// Prefixes of concatenations of code words (no hidden prefix).
    StartsAtHub,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "sigma" => Ok(Family::Sigma),
            "loops" => Ok(Family::Loops),
            "ends_at_hub" => Ok(Family::EndsAtHub),
            "starts_at_hub" => Ok(Family::StartsAtHub),
            other => Err(Error::Domain(format!(
                "unknown family `{other}` (expected sigma, loops, ends_at_hub or starts_at_hub)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sigma => "sigma",
            Family::Loops => "loops",
            Family::EndsAtHub => "ends_at_hub",
            Family::StartsAtHub => "starts_at_hub",
        })
    }
}

/// Rough size of a table of counts up to `nmax`, in bytes.
fn table_bytes(nmax: usize, cfg: &GridConfig) -> u128 {
    let bits_per_symbol = (cfg.n as f64).log2().ceil() as u128 + 1;
    let n = nmax as u128 + 1;
    n * (n * bits_per_symbol / 8 + 32)
}

fn check_memory(nmax: usize, cfg: &GridConfig, budget: &Budget) -> Result<()> {
    let needed = table_bytes(nmax, cfg);
    if needed > budget.memory_cap {
        return Err(Error::MemoryBudget {
            needed,
            cap: budget.memory_cap,
        });
    }
    Ok(())
}

/// `base^0 ..= base^max`.
pub(crate) fn powers(base: u32, max: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(max + 1);
    let mut cur = BigUint::one();
    let b = BigUint::from(base);
    for _ in 0..=max {
        out.push(cur.clone());
        cur *= &b;
    }
    out
}

/// Prefix counts `#I_j` for `j <= nmax` plus the powers of `g` the trailing
/// shapes need. Immutable once built.
#[derive(Debug, Clone)]
pub struct WordCounter {
    cfg: GridConfig,
    ends_at_hub: Vec<BigUint>,
    g_pow: Vec<BigUint>,
}

impl WordCounter {
    pub fn new(nmax: usize, cfg: &GridConfig) -> Self {
        let g_pow = powers(cfg.g(), nmax);
        let ends_at_hub = ends_at_hub_table(nmax, cfg, &g_pow);
        WordCounter {
            cfg: *cfg,
            ends_at_hub,
            g_pow,
        }
    }

    pub fn with_budget(nmax: usize, cfg: &GridConfig, budget: &Budget) -> Result<Self> {
        check_memory(nmax, cfg, budget)?;
        Ok(Self::new(nmax, cfg))
    }

    pub fn config(&self) -> &GridConfig {
        &self.cfg
    }

    pub fn nmax(&self) -> usize {
        self.ends_at_hub.len() - 1
    }

    pub fn ends_at_hub(&self, n: usize) -> &BigUint {
        &self.ends_at_hub[n]
    }

    fn tau(&self, x: usize) -> u64 {
        self.cfg.tau(x as u64).expect("tau overflow")
    }

    /// Number of legal words of length `k` by minimal forced distance.
    pub fn forced_histogram(&self, k: usize) -> BTreeMap<u64, BigUint> {
        assert!(k <= self.nmax(), "k = {k} beyond table size {}", self.nmax());
        let mut buckets: BTreeMap<u64, BigUint> = BTreeMap::new();
        let mut add = |f: u64, v: BigUint| {
            if !v.is_zero() {
                *buckets.entry(f).or_default() += v;
            }
        };
        add(0, self.ends_at_hub[k].clone());
        if k == 0 {
            return buckets;
        }
        let g = &self.g_pow;
        let ends = &self.ends_at_hub;

        // prefix ending at the hub, then an open block run with visible start
        for w in 1..k {
            add(2 * self.tau(w) - w as u64, &g[w] * &ends[k - w]);
        }
        // prefix ending at the hub, then a complete block and an open tail
        for l in self.cfg.block_lengths(k as u64) {
            let l = l as usize;
            for z in 1..l {
                if l + z >= k {
                    break;
                }
                add((l - z) as u64, &g[l] * &ends[k - l - z]);
            }
        }
        // the whole word is the end of one code word with a hidden start
        add(self.tau(k), g[k].clone());
        for w in 1..k {
            let z = k - w;
            let f = self.tau(w.max(z)) - z as u64;
            if f > 0 {
                add(f, g[w].clone());
            }
        }
        buckets
    }

    pub fn count_sigma(&self, k: usize) -> BigUint {
        self.forced_histogram(k).into_values().sum()
    }
}

fn ends_at_hub_table(nmax: usize, cfg: &GridConfig, g_pow: &[BigUint]) -> Vec<BigUint> {
    let m = BigUint::from(cfg.m);
    let lengths = cfg.block_lengths(nmax as u64);
    let mut table: Vec<BigUint> = Vec::with_capacity(nmax + 1);
    table.push(BigUint::one());
    for n in 1..=nmax {
        // last symbol a hub
        let mut v = &m * &table[n - 1];
        for &l in &lengths {
            let l = l as usize;
            // a complete block + tail after a non-empty prefix
            if 2 * l < n {
                v += &g_pow[l] * &table[n - 2 * l];
            }
            // w blocks (hidden start) then a complete tail of length z >= w
            if l < n && 2 * l >= n {
                v += &g_pow[n - l];
            }
        }
        // pure tail word
        v += 1u32;
        table.push(v);
    }
    table
}

/// `#G_N` for `N <= nmax`: `L(N) = m L(N-1) + sum_{2p^r <= N} g^{p^r} L(N - 2p^r)`.
pub fn loops_table(nmax: usize, cfg: &GridConfig) -> Vec<BigUint> {
    let m = BigUint::from(cfg.m);
    let g_pow = powers(cfg.g(), nmax / 2);
    let lengths = cfg.block_lengths(nmax as u64 / 2);
    let mut table: Vec<BigUint> = Vec::with_capacity(nmax + 1);
    table.push(BigUint::one());
    for n in 1..=nmax {
        let mut v = &m * &table[n - 1];
        for &l in &lengths {
            let l = l as usize;
            if 2 * l <= n {
                v += &g_pow[l] * &table[n - 2 * l];
            }
        }
        table.push(v);
    }
    table
}

pub fn count_loops(n: usize, cfg: &GridConfig) -> BigUint {
    loops_table(n, cfg).pop().unwrap()
}

pub fn count_ends_at_hub(n: usize, cfg: &GridConfig) -> BigUint {
    WordCounter::new(n, cfg).ends_at_hub(n).clone()
}

pub fn count_sigma(n: usize, cfg: &GridConfig) -> BigUint {
    WordCounter::new(n, cfg).count_sigma(n)
}

fn starts_at_hub_from_loops(n: usize, cfg: &GridConfig, loops: &[BigUint], g: &[BigUint]) -> BigUint {
    let mut v = loops[n].clone();
    for w in 1..=n {
        v += &g[w] * &loops[n - w];
    }
    for l in cfg.block_lengths(n as u64) {
        let l = l as usize;
        for z in 1..l {
            if l + z > n {
                break;
            }
            v += &g[l] * &loops[n - l - z];
        }
    }
    v
}

pub fn count_starts_at_hub(n: usize, cfg: &GridConfig) -> BigUint {
    let loops = loops_table(n, cfg);
    let g = powers(cfg.g(), n);
    starts_at_hub_from_loops(n, cfg, &loops, &g)
}

/// Exact counts of one family for `0 <= N <= nmax`.
#[derive(Debug, Clone)]
pub struct CountTable {
    pub family: Family,
    pub cfg: GridConfig,
    pub values: Vec<BigUint>,
}

impl CountTable {
    pub fn build(family: Family, nmax: usize, cfg: &GridConfig, budget: &Budget) -> Result<Self> {
        check_memory(nmax, cfg, budget)?;
        let values = match family {
            Family::Loops => loops_table(nmax, cfg),
            Family::EndsAtHub => WordCounter::new(nmax, cfg).ends_at_hub,
            Family::Sigma => {
                let counter = WordCounter::new(nmax, cfg);
                (0..=nmax).map(|n| counter.count_sigma(n)).collect()
            }
            Family::StartsAtHub => {
                let loops = loops_table(nmax, cfg);
                let g = powers(cfg.g(), nmax);
                (0..=nmax)
                    .map(|n| starts_at_hub_from_loops(n, cfg, &loops, &g))
                    .collect()
            }
        };
        Ok(CountTable {
            family,
            cfg: *cfg,
            values,
        })
    }

    pub fn nmax(&self) -> usize {
        self.values.len() - 1
    }
}

/// Natural log of a big integer from its bit length and leading 64 bits.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(N, ln(value_N) / N)` for `1 <= N <= nmax`, skipping zero counts.
pub fn entropy_series(table: &CountTable, nmax: usize) -> Vec<(usize, f64)> {
    (1..=nmax.min(table.nmax()))
        .filter(|&n| !table.values[n].is_zero())
        .map(|n| (n, ln_big(&table.values[n]) / n as f64))
        .collect()
}

/// Natural log of a positive big integer; `None` for zero.
pub fn ln(x: &BigUint) -> Option<f64> {
    (!x.is_zero()).then(|| ln_big(x))
}

/// `S_c` for `c <= cmax`: ordered sums of powers of `p` equal to `c`.
pub fn ordered_power_sums_table(cmax: usize, cfg: &GridConfig) -> Vec<BigUint> {
    let parts = cfg.block_lengths(cmax as u64);
    let mut table: Vec<BigUint> = Vec::with_capacity(cmax + 1);
    table.push(BigUint::one());
    for c in 1..=cmax {
        let mut v = BigUint::zero();
        for &q in &parts {
            let q = q as usize;
            if q > c {
                break;
            }
            v += &table[c - q];
        }
        table.push(v);
    }
    table
}

pub fn ordered_power_sums(c: usize, cfg: &GridConfig) -> BigUint {
    ordered_power_sums_table(c, cfg).pop().unwrap()
}

/// Multinomial `(m_1 + ... + m_k)! / (m_1! ... m_k!)`; 1 for an empty list.
pub fn reorder_count(multiplicities: &[u64]) -> Result<BigUint> {
    if multiplicities.contains(&0) {
        return Err(Error::Domain("reorder multiplicities must be >= 1".into()));
    }
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &mi in multiplicities {
        total += mi;
        acc *= binomial(total, mi);
    }
    Ok(acc)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc = acc.div_floor(&BigUint::from(i + 1));
    }
    acc
}

/// Enumeration oracles for the counting identities.
pub mod brute {
    /// Counts compositions of `c` into parts `p^r` by explicit recursion.
    pub fn compositions(c: u64, p: u64) -> u64 {
        fn go(rest: u64, parts: &[u64]) -> u64 {
            if rest == 0 {
                return 1;
            }
            parts
                .iter()
                .take_while(|&&q| q <= rest)
                .map(|&q| go(rest - q, parts))
                .sum()
        }
        let mut parts = vec![1u64];
        while parts.last().unwrap() * p <= c.max(1) {
            let next = parts.last().unwrap() * p;
            parts.push(next);
        }
        go(c, &parts)
    }

    /// Every multiset `{(m_i, M_i)}` with `sum m_i p^{M_i} = c`, each given
    /// as its list of multiplicities in increasing exponent order.
    pub fn power_partitions(c: u64, p: u64) -> Vec<Vec<u64>> {
        let mut parts = vec![1u64];
        while parts.last().unwrap() * p <= c.max(1) {
            let next = parts.last().unwrap() * p;
            parts.push(next);
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        // largest part first, recording non-zero multiplicities
        fn go(rest: u64, idx: usize, parts: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if idx == 0 {
                // only the part 1 is left, it takes the remainder
                let mut mults = cur.clone();
                if rest > 0 {
                    mults.push(rest);
                }
                mults.reverse();
                out.push(mults);
                return;
            }
            let q = parts[idx];
            for k in 0..=rest / q {
                if k > 0 {
                    cur.push(k);
                }
                go(rest - k * q, idx - 1, parts, cur, out);
                if k > 0 {
                    cur.pop();
                }
            }
        }
        go(c, parts.len() - 1, &parts, &mut current, &mut out);
        out
    }
}
