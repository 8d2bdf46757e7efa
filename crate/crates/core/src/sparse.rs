//! Matching when the pattern's wildcard positions are fixed for good.
//!
//! Every text window of length `m` is hashed with the wildcard coordinates
//! deleted. The window hashes live in an ordered multiset, so a query is a
//! single membership test for the pattern's masked hash. A symbol change
//! moves each affected hash by one coefficient delta.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hashing::{check_solid, check_symbol, symbol_code, HashContext, RangeHashTree};
use crate::{MatchVerdict, WILDCARD};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseCounters {
    pub text_updates: u64,
    pub pattern_updates: u64,
    pub queries: u64,
    pub window_refreshes: u64,
    /// Windows touched by the most recent text update, in refresh order.
    pub last_refreshed: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SparseMatcher {
    ctx: HashContext,
    text: Vec<u8>,
    pattern: Vec<u8>,
    wildcards: Vec<usize>,
    /// Non-wildcard pattern positions with their hash exponent.
    solids: Vec<(usize, usize)>,
    /// `exponent[j]` for solid `j`, `usize::MAX` on wildcard slots.
    exponent: Vec<usize>,
    intervals: usize,
    windows: Vec<u64>,
    multiset: BTreeMap<u64, u32>,
    pattern_hash: u64,
    counters: SparseCounters,
}

impl SparseMatcher {
    pub fn new(text: &[u8], pattern: &[u8], seed: u64) -> Result<Self> {
        let ctx = HashContext::choose(text.len().max(1), seed)?;
        Self::with_context(text, pattern, ctx)
    }

    pub fn with_context(text: &[u8], pattern: &[u8], ctx: HashContext) -> Result<Self> {
        let (n, m) = (text.len(), pattern.len());
        if m > n {
            return Err(Error::PatternTooLong { m, n });
        }
        ctx.check_len(n)?;
        for &c in text {
            check_solid(c)?;
        }
        for &c in pattern {
            check_symbol(c)?;
        }
        let wildcards: Vec<usize> = (0..m).filter(|&j| pattern[j] == WILDCARD).collect();
        let omega = m - wildcards.len();
        let mut exponent = vec![usize::MAX; m];
        let mut solids = Vec::with_capacity(omega);
        for (rank, j) in (0..m).filter(|&j| pattern[j] != WILDCARD).enumerate() {
            exponent[j] = omega - 1 - rank;
            solids.push((j, exponent[j]));
        }

        // maximal wildcard-free intervals of the pattern
        let mut intervals = Vec::new();
        let mut start = 0;
        for &w in wildcards.iter().chain(std::iter::once(&m)) {
            if w > start {
                intervals.push((start, w));
            }
            start = w + 1;
        }

        let tree = RangeHashTree::build(text, &ctx);
        let windows: Vec<u64> = (0..=n - m)
            .map(|s| {
                intervals.iter().fold(0, |acc, &(a, b)| {
                    let h = tree.range_hash_unchecked(s + a, s + b, &ctx);
                    ctx.concat(acc, h, b - a)
                })
            })
            .collect();
        let mut multiset = BTreeMap::new();
        for &h in &windows {
            *multiset.entry(h).or_insert(0) += 1;
        }
        let pattern_hash = ctx.masked_hash(pattern, &wildcards);
        Ok(Self {
            ctx,
            text: text.to_vec(),
            pattern: pattern.to_vec(),
            wildcards,
            solids,
            exponent,
            intervals: intervals.len(),
            windows,
            multiset,
            pattern_hash,
            counters: SparseCounters::default(),
        })
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn wildcards(&self) -> &[usize] {
        &self.wildcards
    }

    /// Number of maximal solid intervals in the pattern.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn windows(&self) -> &[u64] {
        &self.windows
    }

    pub fn pattern_hash(&self) -> u64 {
        self.pattern_hash
    }

    pub fn context(&self) -> &HashContext {
        &self.ctx
    }

    pub fn counters(&self) -> &SparseCounters {
        &self.counters
    }

    /// Multiplicity of `hash` among the window hashes.
    pub fn multiplicity(&self, hash: u64) -> u32 {
        self.multiset.get(&hash).copied().unwrap_or(0)
    }

    pub fn update_pattern(&mut self, i: usize, sym: u8) -> Result<()> {
        check_solid(sym)?;
        let m = self.pattern.len();
        if i >= m {
            return Err(Error::OutOfRange { pos: i, len: m });
        }
        if self.pattern[i] == WILDCARD {
            return Err(Error::WildcardSlot(i));
        }
        let old = std::mem::replace(&mut self.pattern[i], sym);
        let ctx = &self.ctx;
        let delta = ctx.sub(symbol_code(sym), symbol_code(old));
        self.pattern_hash = ctx.add(
            self.pattern_hash,
            ctx.mul(delta, ctx.power(self.exponent[i])),
        );
        self.counters.pattern_updates += 1;
        Ok(())
    }

    pub fn update_text(&mut self, j: usize, sym: u8) -> Result<()> {
        check_solid(sym)?;
        let n = self.text.len();
        if j >= n {
            return Err(Error::OutOfRange { pos: j, len: n });
        }
        self.counters.text_updates += 1;
        self.counters.last_refreshed.clear();
        let old = std::mem::replace(&mut self.text[j], sym);
        if old == sym {
            return Ok(());
        }
        let ctx = &self.ctx;
        let delta = ctx.sub(symbol_code(sym), symbol_code(old));
        for &(q, e) in &self.solids {
            // window s aligns pattern slot q with text position j
            let Some(s) = j.checked_sub(q) else { continue };
            if s >= self.windows.len() {
                continue;
            }
            let before = self.windows[s];
            let after = ctx.add(before, ctx.mul(delta, ctx.power(e)));
            self.windows[s] = after;
            if let Some(c) = self.multiset.get_mut(&before) {
                *c -= 1;
                if *c == 0 {
                    self.multiset.remove(&before);
                }
            }
            *self.multiset.entry(after).or_insert(0) += 1;
            self.counters.window_refreshes += 1;
            self.counters.last_refreshed.push(s);
        }
        Ok(())
    }

    pub fn query(&mut self) -> MatchVerdict {
        self.counters.queries += 1;
        if self.multiset.contains_key(&self.pattern_hash) {
            MatchVerdict::matched()
        } else {
            MatchVerdict::no_match()
        }
    }
}
