//! Matching and counting for patterns with at most two non-wildcard symbols.
//!
//! With one solid symbol the question is a range lookup in its occurrence
//! set. With two solids `a` at `i` and `b` at `j`, an occurrence is a pair of
//! text positions at gap `d = j - i - 1`, which is a Range-Pair query over
//! the text remapped so that rare symbols read as 0, `?` as 1 and each
//! frequent symbol as its own code. Rare endpoints are scanned directly.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::convolution::Convolution;
use crate::error::{Error, Result};
use crate::hashing::{check_symbol, HashContext};
use crate::range_pair::{RangePair, RangePairConfig};
use crate::text_index::TextIndex;
use crate::{MatchVerdict, WILDCARD};

/// Code held permanently by text wildcards.
pub const WILDCARD_CODE: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TwoConfig {
    /// Defaults to `ceil(n^(4/5))`.
    pub tau: Option<usize>,
    /// Defaults to `ceil(n^(4/5))`.
    pub block_size: Option<usize>,
    /// Defaults to `ceil(n^(3/5))`, capped at the block size.
    pub rebuild_threshold: Option<usize>,
    pub seed: u64,
    pub convolution: Convolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternEdit {
    Substitute(usize, u8),
    Insert(usize, u8),
    Delete(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCounters {
    pub text_updates: u64,
    pub pattern_updates: u64,
    pub queries: u64,
    pub promotions: u64,
    pub demotions: u64,
    pub retag_updates: u64,
    pub rare_scans: u64,
    pub range_pair_queries: u64,
    /// Smallest count change seen between consecutive reclassifications of
    /// one symbol.
    pub min_reclass_gap: Option<u64>,
}

/// Assignment of Range-Pair codes to text symbols.
#[derive(Debug, Clone)]
pub struct SymbolMap {
    codes: [u32; 256],
    pool: Vec<u32>,
    max_code: u32,
}

impl SymbolMap {
    fn new(max_code: u32) -> Self {
        let mut codes = [0; 256];
        codes[WILDCARD as usize] = WILDCARD_CODE;
        // popped from the back, so the smallest code goes first
        let pool = (2..=max_code).rev().collect();
        Self {
            codes,
            pool,
            max_code,
        }
    }

    pub fn code(&self, sym: u8) -> u32 {
        self.codes[sym as usize]
    }

    pub fn is_coded(&self, sym: u8) -> bool {
        sym != WILDCARD && self.codes[sym as usize] != 0
    }

    pub fn max_code(&self) -> u32 {
        self.max_code
    }

    /// Symbols currently holding a nonzero, non-wildcard code.
    pub fn coded(&self) -> impl Iterator<Item = (u8, u32)> + '_ {
        (0..=255u8)
            .filter(|&c| self.is_coded(c))
            .map(|c| (c, self.codes[c as usize]))
    }
}

#[derive(Debug, Clone)]
pub struct TwoMatcher {
    index: TextIndex,
    map: SymbolMap,
    rp: RangePair,
    tau: usize,
    /// Non-wildcard pattern positions, ascending.
    solids: Vec<(usize, u8)>,
    m: usize,
    last_reclass: HashMap<u8, usize>,
    counters: TwoCounters,
}

fn ceil_pow(n: usize, e: f64) -> usize {
    ((n.max(1) as f64).powf(e).ceil() as usize).max(1)
}

impl TwoMatcher {
    pub fn new(text: &[u8], pattern: &[u8], config: TwoConfig) -> Result<Self> {
        let n = text.len();
        let tau = config.tau.unwrap_or_else(|| ceil_pow(n, 0.8));
        if tau == 0 {
            return Err(Error::Parameter("threshold must be at least 1".into()));
        }
        let block = config.block_size.unwrap_or_else(|| ceil_pow(n, 0.8));
        let delta = config
            .rebuild_threshold
            .unwrap_or_else(|| ceil_pow(n, 0.6).min(block));
        let mut solids = Vec::new();
        for (j, &c) in pattern.iter().enumerate() {
            check_symbol(c)?;
            if c != WILDCARD {
                solids.push((j, c));
            }
        }
        if solids.len() > 2 {
            return Err(Error::TooManySolids(solids.len()));
        }

        let ctx = Arc::new(HashContext::choose(n.max(1), config.seed)?);
        let index = TextIndex::build(text, tau, ctx)?;
        let max_code = (2 * n).div_ceil(tau).max(1) as u32;
        let mut map = SymbolMap::new(max_code);
        for c in 0..=255u8 {
            if c != WILDCARD && index.count(c) > tau {
                let code = map
                    .pool
                    .pop()
                    .expect("code pool sized for every frequent symbol");
                map.codes[c as usize] = code;
            }
        }
        let mapped: Vec<u32> = text.iter().map(|&c| map.code(c)).collect();
        let rp = RangePair::new(
            &mapped,
            max_code + 1,
            RangePairConfig {
                block_size: block,
                rebuild_threshold: delta,
                convolution: config.convolution,
            },
        )?;
        Ok(Self {
            index,
            map,
            rp,
            tau,
            solids,
            m: pattern.len(),
            last_reclass: HashMap::new(),
            counters: TwoCounters::default(),
        })
    }

    pub fn text(&self) -> &[u8] {
        self.index.text()
    }

    pub fn pattern_len(&self) -> usize {
        self.m
    }

    /// The pattern as `?`s with the solid symbols filled in.
    pub fn pattern(&self) -> Vec<u8> {
        let mut p = vec![WILDCARD; self.m];
        for &(j, c) in &self.solids {
            p[j] = c;
        }
        p
    }

    pub fn solids(&self) -> &[(usize, u8)] {
        &self.solids
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn symbol_map(&self) -> &SymbolMap {
        &self.map
    }

    pub fn range_pair(&self) -> &RangePair {
        &self.rp
    }

    pub fn index(&self) -> &TextIndex {
        &self.index
    }

    pub fn counters(&self) -> &TwoCounters {
        &self.counters
    }

    pub fn edit_pattern(&mut self, edit: PatternEdit) -> Result<()> {
        let mut solids = self.solids.clone();
        let mut m = self.m;
        match edit {
            PatternEdit::Substitute(i, c) => {
                check_symbol(c)?;
                if i >= m {
                    return Err(Error::OutOfRange { pos: i, len: m });
                }
                solids.retain(|&(j, _)| j != i);
                if c != WILDCARD {
                    solids.push((i, c));
                }
            }
            PatternEdit::Insert(i, c) => {
                check_symbol(c)?;
                if i > m {
                    return Err(Error::OutOfRange { pos: i, len: m + 1 });
                }
                for s in solids.iter_mut().filter(|s| s.0 >= i) {
                    s.0 += 1;
                }
                if c != WILDCARD {
                    solids.push((i, c));
                }
                m += 1;
            }
            PatternEdit::Delete(i) => {
                if i >= m {
                    return Err(Error::OutOfRange { pos: i, len: m });
                }
                solids.retain(|&(j, _)| j != i);
                for s in solids.iter_mut().filter(|s| s.0 > i) {
                    s.0 -= 1;
                }
                m -= 1;
            }
        }
        if solids.len() > 2 {
            return Err(Error::TooManySolids(solids.len()));
        }
        solids.sort_unstable();
        self.solids = solids;
        self.m = m;
        self.counters.pattern_updates += 1;
        Ok(())
    }

    pub fn update_text(&mut self, i: usize, sym: u8) -> Result<()> {
        check_symbol(sym)?;
        let n = self.index.len();
        let old = *self
            .index
            .text()
            .get(i)
            .ok_or(Error::OutOfRange { pos: i, len: n })?;
        self.counters.text_updates += 1;
        if old == sym {
            return Ok(());
        }
        self.index.substitute(i, sym)?;
        if self.map.is_coded(old) && self.index.count(old) <= self.tau / 2 {
            self.demote(old);
        }
        if sym != WILDCARD && !self.map.is_coded(sym) && self.index.count(sym) > self.tau {
            self.promote(sym);
        }
        self.rp.update(i, self.map.code(sym))?;
        Ok(())
    }

    fn note_reclass(&mut self, sym: u8) {
        let now = self.index.count(sym);
        if let Some(prev) = self.last_reclass.insert(sym, now) {
            let gap = prev.abs_diff(now) as u64;
            let best = self.counters.min_reclass_gap.get_or_insert(gap);
            *best = (*best).min(gap);
        }
    }

    fn retag(&mut self, sym: u8, code: u32) {
        for j in self.index.occurrences(sym).to_vec() {
            self.rp
                .update(j, code)
                .expect("codes stay inside the alphabet");
            self.counters.retag_updates += 1;
        }
    }

    fn demote(&mut self, sym: u8) {
        let code = self.map.codes[sym as usize];
        self.map.codes[sym as usize] = 0;
        self.map.pool.push(code);
        self.counters.demotions += 1;
        self.note_reclass(sym);
        self.retag(sym, 0);
    }

    fn promote(&mut self, sym: u8) {
        if self.map.pool.is_empty() {
            // Coded symbols normally keep more than tau/2 occurrences each, so
            // this only triggers if that slack is exhausted.
            let victim = self
                .map
                .coded()
                .map(|(c, _)| c)
                .filter(|&c| self.index.count(c) <= self.tau / 2)
                .min_by_key(|&c| self.index.count(c))
                .expect("code pool exhausted with no demotable symbol");
            self.demote(victim);
        }
        let code = self.map.pool.pop().expect("pool refilled above");
        self.map.codes[sym as usize] = code;
        self.counters.promotions += 1;
        self.note_reclass(sym);
        self.retag(sym, code);
    }

    /// Existence and number of occurrences of the pattern.
    pub fn query(&mut self) -> MatchVerdict {
        self.counters.queries += 1;
        let n = self.index.len();
        let m = self.m;
        if m > n {
            return MatchVerdict::counted(0);
        }
        let count = match self.solids[..] {
            [] => (n - m + 1) as u64,
            [(i, a)] => {
                let hi = n - m + i;
                (self.index.occurrences(a).count_in(i, hi)
                    + self.index.occurrences(WILDCARD).count_in(i, hi)) as u64
            }
            [(i, a), (j, b)] => {
                let d = j - i - 1;
                let hi = n - m + i;
                let mut total = 0;
                for x in [a, WILDCARD] {
                    for y in [b, WILDCARD] {
                        total += self.count_pairs(x, y, i, hi, d);
                    }
                }
                total
            }
            _ => unreachable!("at most two solids"),
        };
        MatchVerdict::counted(count)
    }

    /// Left endpoints `p` in `[lo, hi]` with `T[p] = x` and `T[p+d+1] = y`.
    fn count_pairs(&mut self, x: u8, y: u8, lo: usize, hi: usize, d: usize) -> u64 {
        let text = self.index.text();
        let rare = |c: u8| c != WILDCARD && !self.map.is_coded(c);
        if rare(x) {
            self.counters.rare_scans += 1;
            return self
                .index
                .occurrences(x)
                .range(lo, hi)
                .into_iter()
                .filter(|&p| text[p + d + 1] == y)
                .count() as u64;
        }
        if rare(y) {
            self.counters.rare_scans += 1;
            return self
                .index
                .occurrences(y)
                .range(lo + d + 1, hi + d + 1)
                .into_iter()
                .filter(|&q| text[q - d - 1] == x)
                .count() as u64;
        }
        self.counters.range_pair_queries += 1;
        let (cx, cy) = (self.map.code(x), self.map.code(y));
        self.rp
            .query(lo, hi + d + 1, cx, cy, d)
            .expect("window range lies inside the text")
    }

    pub fn substitute_pattern(&mut self, i: usize, sym: u8) -> Result<()> {
        self.edit_pattern(PatternEdit::Substitute(i, sym))
    }

    pub fn insert_pattern(&mut self, i: usize, sym: u8) -> Result<()> {
        self.edit_pattern(PatternEdit::Insert(i, sym))
    }

    pub fn delete_pattern(&mut self, i: usize) -> Result<()> {
        self.edit_pattern(PatternEdit::Delete(i))
    }
}
