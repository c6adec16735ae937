//! The presentation graph with every block loop unrolled into a chain of
//! `2L` edges, used as a brute-force oracle.
//!
//! Nothing here looks at run structure: legality is reachability in the
//! unrolled graph, a hidden prefix is a start vertex inside a chain, and the
//! forced distance of a word is the graph distance back to the hub.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::combinatorics;
use crate::error::{Error, Result};

use super::config::{Budget, GridConfig};
use super::symbol::{Role, Symbol, Word};

/// A set of vertices of the unrolled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSet(Vec<u64>);

impl StateSet {
    fn empty(n: usize) -> Self {
        StateSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn clear(&mut self) {
        self.0.iter_mut().for_each(|w| *w = 0);
    }

    fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut s = StateSet::empty(n);
        s.insert(i);
        s
    }
}

/// Where a path may start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    /// Any vertex: factors of infinite legal sequences.
    Anywhere,
    /// The hub only: prefixes of concatenations of code words.
    Hub,
}

/// Where a path must end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Anywhere,
    Hub,
}

const HUB: usize = 0;

/// The unrolled presentation. Vertex 0 is the hub; a chain for block length
/// `L` has vertices for positions `1..2L` inside the code word.
#[derive(Debug, Clone)]
pub struct Presentation {
    cfg: GridConfig,
    /// `(L, index of position 1)` per chain.
    chains: Vec<(u64, usize)>,
    n_states: usize,
    /// Forced distance of each vertex: steps until the hub is reached.
    distance: Vec<u64>,
    /// Successors per role, indexed `[role][state]`.
    succ: [Vec<Vec<usize>>; 3],
}

fn role_index(role: Role) -> usize {
    match role {
        Role::Hub => 0,
        Role::Tail => 1,
        Role::Block => 2,
    }
}

impl Presentation {
    /// Builds chains for every block length up to `p * tau(horizon)`.
    ///
    /// Chains with `L >= horizon` all produce the same windows of length
    /// `<= horizon`, so the cut-off loses no words; the extra factor `p`
    /// keeps one redundant chain as a margin.
    pub fn new(cfg: &GridConfig, horizon: usize) -> Self {
        let top = cfg.tau(horizon.max(1) as u64).expect("horizon overflow") * cfg.p as u64;
        let lengths = cfg.block_lengths(top);
        let mut chains = Vec::new();
        let mut next = 1usize;
        for &l in &lengths {
            chains.push((l, next));
            next += (2 * l - 1) as usize;
        }
        let n_states = next;
        let mut distance = vec![0u64; n_states];
        let mut succ: [Vec<Vec<usize>>; 3] = std::array::from_fn(|_| vec![Vec::new(); n_states]);

        succ[role_index(Role::Hub)][HUB].push(HUB);
        for &(l, base) in &chains {
            succ[role_index(Role::Block)][HUB].push(base);
            for pos in 1..2 * l {
                let idx = base + (pos - 1) as usize;
                distance[idx] = 2 * l - pos;
                let target = if pos + 1 == 2 * l { HUB } else { idx + 1 };
                if pos < l {
                    succ[role_index(Role::Block)][idx].push(target);
                } else {
                    succ[role_index(Role::Tail)][idx].push(target);
                }
            }
        }
        Presentation {
            cfg: *cfg,
            chains,
            n_states,
            distance,
            succ,
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn block_lengths(&self) -> Vec<u64> {
        self.chains.iter().map(|c| c.0).collect()
    }

    pub fn start_set(&self, start: Start) -> StateSet {
        match start {
            Start::Hub => StateSet::singleton(self.n_states, HUB),
            Start::Anywhere => {
                let mut s = StateSet::empty(self.n_states);
                (0..self.n_states).for_each(|i| s.insert(i));
                s
            }
        }
    }

    pub fn at_hub(&self, set: &StateSet) -> bool {
        set.contains(HUB)
    }

    fn step_role_into(&self, set: &StateSet, role: Role, out: &mut StateSet) {
        out.clear();
        let table = &self.succ[role_index(role)];
        for s in set.iter() {
            for &t in &table[s] {
                out.insert(t);
            }
        }
    }

    pub fn step(&self, set: &StateSet, symbol: Symbol) -> StateSet {
        let mut out = StateSet::empty(self.n_states);
        if let Some(role) = symbol.role(&self.cfg) {
            self.step_role_into(set, role, &mut out);
        }
        out
    }

    pub fn run(&self, start: Start, word: &Word) -> StateSet {
        let mut set = self.start_set(start);
        for &s in word.symbols() {
            set = self.step(&set, s);
        }
        set
    }

    pub fn accepts(&self, word: &Word) -> bool {
        !self.run(Start::Anywhere, word).is_empty()
    }

    /// Distance from one vertex back to the hub.
    pub fn state_distance(&self, state: usize) -> u64 {
        self.distance[state]
    }

    /// Minimal distance to the hub over a non-empty set.
    pub fn forced(&self, set: &StateSet) -> Option<u64> {
        set.iter().map(|s| self.distance[s]).min()
    }

    /// Depth-first enumeration of every word of length `len` readable from
    /// `start` and ending per `end`, in lexicographic order. The callback
    /// sees the word and its final vertex set.
    pub fn for_each_word<F>(&self, len: usize, start: Start, end: End, mut f: F)
    where
        F: FnMut(&[Symbol], &StateSet),
    {
        let alphabet = self.cfg.legal_alphabet();
        let roles: Vec<Role> = alphabet.iter().map(|s| s.role(&self.cfg).unwrap()).collect();
        let mut scratch: Vec<[StateSet; 3]> = (0..len)
            .map(|_| std::array::from_fn(|_| StateSet::empty(self.n_states)))
            .collect();
        let mut word = Vec::with_capacity(len);
        let start_set = self.start_set(start);
        self.dfs(
            &start_set, len, end, &alphabet, &roles, &mut scratch, &mut word, &mut f,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs<F>(
        &self,
        set: &StateSet,
        remaining: usize,
        end: End,
        alphabet: &[Symbol],
        roles: &[Role],
        scratch: &mut [[StateSet; 3]],
        word: &mut Vec<Symbol>,
        f: &mut F,
    ) where
        F: FnMut(&[Symbol], &StateSet),
    {
        if remaining == 0 {
            if end == End::Anywhere || self.at_hub(set) {
                f(word, set);
            }
            return;
        }
        let (head, rest) = scratch.split_first_mut().unwrap();
        for role in [Role::Hub, Role::Tail, Role::Block] {
            self.step_role_into(set, role, &mut head[role_index(role)]);
        }
        for (sym, role) in alphabet.iter().zip(roles) {
            let next = &head[role_index(*role)];
            if next.is_empty() {
                continue;
            }
            word.push(*sym);
            self.dfs(next, remaining - 1, end, alphabet, roles, rest, word, f);
            word.pop();
        }
    }

    /// Number of words of length `len` from `start` ending per `end`.
    pub fn count_words(&self, len: usize, start: Start, end: End) -> u64 {
        let mut count = 0u64;
        self.for_each_word(len, start, end, |_, _| count += 1);
        count
    }

    /// Vertex set reached by reading any symbol whose first coordinate is `a`.
    fn step_column(&self, set: &StateSet, a: u16, out: &mut StateSet, tmp: &mut StateSet) {
        self.step_role_into(set, Role::Hub, out);
        if a == 1 {
            for role in [Role::Tail, Role::Block] {
                self.step_role_into(set, role, tmp);
                out.union_with(tmp);
            }
        }
    }

    /// Calls `f` once for every distinct first-coordinate string of length
    /// `len` that some legal continuation from `set` projects to.
    ///
    /// Walks the projected strings themselves, carrying the set of vertices
    /// compatible with each, so the result is the deduplicated projection of
    /// the full extension set.
    pub fn for_each_projection<F>(&self, set: &StateSet, len: usize, mut f: F)
    where
        F: FnMut(&[u16]),
    {
        let mut scratch: Vec<(StateSet, StateSet)> = (0..len)
            .map(|_| (StateSet::empty(self.n_states), StateSet::empty(self.n_states)))
            .collect();
        let mut prefix = Vec::with_capacity(len);
        self.projection_dfs(set, len, &mut scratch, &mut prefix, &mut f);
    }

    fn projection_dfs<F>(
        &self,
        set: &StateSet,
        remaining: usize,
        scratch: &mut [(StateSet, StateSet)],
        prefix: &mut Vec<u16>,
        f: &mut F,
    ) where
        F: FnMut(&[u16]),
    {
        if remaining == 0 {
            f(prefix);
            return;
        }
        let (head, rest) = scratch.split_first_mut().unwrap();
        for a in 1..=self.cfg.m as u16 {
            let (next, tmp) = head;
            self.step_column(set, a, next, tmp);
            if next.is_empty() {
                continue;
            }
            let next = next.clone();
            prefix.push(a);
            self.projection_dfs(&next, remaining - 1, rest, prefix, f);
            prefix.pop();
        }
    }

    pub fn count_projections(&self, set: &StateSet, len: usize) -> u64 {
        let mut count = 0u64;
        self.for_each_projection(set, len, |_| count += 1);
        count
    }

    pub fn projections(&self, set: &StateSet, len: usize) -> BTreeSet<Vec<u16>> {
        let mut out = BTreeSet::new();
        self.for_each_projection(set, len, |p| {
            out.insert(p.to_vec());
        });
        out
    }
}

/// Refuses when `projected` exceeds the enumeration cap.
pub(crate) fn check_budget(projected: &BigUint, budget: &Budget) -> Result<()> {
    match projected.to_u64() {
        Some(v) if v <= budget.enumeration_cap => Ok(()),
        _ => Err(Error::OracleInfeasible {
            projected: projected.clone(),
            budget: budget.enumeration_cap,
        }),
    }
}

/// Every legal word of length `len`, sorted lexicographically, produced by
/// walking the unrolled presentation from every vertex.
pub fn enumerate_words(len: usize, cfg: &GridConfig, budget: &Budget) -> Result<Vec<Word>> {
    check_budget(&combinatorics::count_sigma(len, cfg), budget)?;
    let pres = Presentation::new(cfg, len);
    let mut out = Vec::new();
    pres.for_each_word(len, Start::Anywhere, End::Anywhere, |w, _| {
        out.push(Word::new(w.to_vec()))
    });
    Ok(out)
}

/// Forced distance read off the unrolled graph, independent of the run scan.
pub fn forced_distance_brute(word: &Word, cfg: &GridConfig) -> Option<u64> {
    let pres = Presentation::new(cfg, word.len());
    pres.forced(&pres.run(Start::Anywhere, word))
}
