//! Dynamic substring-containment oracles for completed (wildcard-free)
//! pattern/text pairs.
//!
//! The joint-completion search only needs to know whether the completed
//! pattern occurs in the completed text after each single-symbol change, so
//! any structure answering that question can stand in here.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hashing::{symbol_code, HashContext};

pub trait SubstringOracle {
    fn set_pattern(&mut self, i: usize, sym: u8);
    fn set_text(&mut self, i: usize, sym: u8);
    /// Does the pattern occur in the text as a contiguous substring?
    fn contains(&mut self) -> bool;
    /// Hash probes or window refreshes performed so far.
    fn work(&self) -> u64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum OracleKind {
    /// Rolling-hash scan of every window per query.
    NaiveScan,
    /// Window hashes kept in an ordered multiset, refreshed per change.
    #[default]
    WindowMultiset,
}

impl OracleKind {
    pub fn make(
        self,
        ctx: Arc<HashContext>,
        pattern: &[u8],
        text: &[u8],
    ) -> Box<dyn SubstringOracle> {
        match self {
            OracleKind::NaiveScan => Box::new(NaiveScan::new(ctx, pattern, text)),
            OracleKind::WindowMultiset => Box::new(WindowMultiset::new(ctx, pattern, text)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NaiveScan {
    ctx: Arc<HashContext>,
    pattern: Vec<u8>,
    text: Vec<u8>,
    probes: u64,
}

impl NaiveScan {
    pub fn new(ctx: Arc<HashContext>, pattern: &[u8], text: &[u8]) -> Self {
        Self {
            ctx,
            pattern: pattern.to_vec(),
            text: text.to_vec(),
            probes: 0,
        }
    }
}

impl SubstringOracle for NaiveScan {
    fn set_pattern(&mut self, i: usize, sym: u8) {
        self.pattern[i] = sym;
    }

    fn set_text(&mut self, i: usize, sym: u8) {
        self.text[i] = sym;
    }

    fn contains(&mut self) -> bool {
        let (m, n) = (self.pattern.len(), self.text.len());
        if m > n {
            return false;
        }
        if m == 0 {
            return true;
        }
        let ctx = &*self.ctx;
        let target = ctx.hash(&self.pattern);
        let lead = ctx.power(m - 1);
        let mut h = ctx.hash(&self.text[..m]);
        for s in 0..=n - m {
            self.probes += 1;
            if h == target {
                return true;
            }
            if s + m < n {
                let out = ctx.mul(symbol_code(self.text[s]), lead);
                h = ctx.add(
                    ctx.mul(ctx.sub(h, out), ctx.base()),
                    symbol_code(self.text[s + m]),
                );
            }
        }
        false
    }

    fn work(&self) -> u64 {
        self.probes
    }
}

#[derive(Debug, Clone)]
pub struct WindowMultiset {
    ctx: Arc<HashContext>,
    pattern: Vec<u8>,
    text: Vec<u8>,
    pattern_hash: u64,
    windows: Vec<u64>,
    counts: BTreeMap<u64, u32>,
    refreshed: u64,
}

impl WindowMultiset {
    pub fn new(ctx: Arc<HashContext>, pattern: &[u8], text: &[u8]) -> Self {
        let (m, n) = (pattern.len(), text.len());
        let pattern_hash = ctx.hash(pattern);
        let mut windows = Vec::new();
        if m <= n {
            let mut h = ctx.hash(&text[..m]);
            let lead = if m > 0 { ctx.power(m - 1) } else { 0 };
            for s in 0..=n - m {
                windows.push(h);
                if m > 0 && s + m < n {
                    let out = ctx.mul(symbol_code(text[s]), lead);
                    h = ctx.add(
                        ctx.mul(ctx.sub(h, out), ctx.base()),
                        symbol_code(text[s + m]),
                    );
                }
            }
        }
        let mut counts = BTreeMap::new();
        for &h in &windows {
            *counts.entry(h).or_insert(0) += 1;
        }
        Self {
            ctx,
            pattern: pattern.to_vec(),
            text: text.to_vec(),
            pattern_hash,
            windows,
            counts,
            refreshed: 0,
        }
    }
}

impl SubstringOracle for WindowMultiset {
    fn set_pattern(&mut self, i: usize, sym: u8) {
        let old = std::mem::replace(&mut self.pattern[i], sym);
        let m = self.pattern.len();
        let ctx = &*self.ctx;
        let delta = ctx.sub(symbol_code(sym), symbol_code(old));
        self.pattern_hash = ctx.add(self.pattern_hash, ctx.mul(delta, ctx.power(m - 1 - i)));
    }

    fn set_text(&mut self, i: usize, sym: u8) {
        let old = std::mem::replace(&mut self.text[i], sym);
        if old == sym || self.windows.is_empty() {
            return;
        }
        let m = self.pattern.len();
        let ctx = &*self.ctx;
        let delta = ctx.sub(symbol_code(sym), symbol_code(old));
        let first = (i + 1).saturating_sub(m);
        let last = i.min(self.windows.len() - 1);
        for s in first..=last {
            let before = self.windows[s];
            let after = ctx.add(before, ctx.mul(delta, ctx.power(m - 1 - (i - s))));
            self.windows[s] = after;
            if let Some(c) = self.counts.get_mut(&before) {
                *c -= 1;
                if *c == 0 {
                    self.counts.remove(&before);
                }
            }
            *self.counts.entry(after).or_insert(0) += 1;
            self.refreshed += 1;
        }
    }

    fn contains(&mut self) -> bool {
        self.counts.contains_key(&self.pattern_hash)
    }

    fn work(&self) -> u64 {
        self.refreshed
    }
}
