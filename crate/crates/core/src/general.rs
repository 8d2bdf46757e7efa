//! Fully dynamic matching for patterns and texts carrying up to `k`
//! wildcards in total.
//!
//! Queries split on whether the pattern holds a rare symbol. If it does,
//! only windows aligning that symbol with one of its few text occurrences
//! (or with a text wildcard) can match, and each is verified by block
//! hashing. Otherwise every non-wildcard of the pattern is frequent, and the
//! search enumerates joint completions of all wildcard slots over the
//! frequent symbols plus `#`, asking a containment oracle after each
//! single-slot change.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gray::GrayEnumerator;
use crate::hashing::{check_symbol, HashContext, RangeHashTree};
use crate::oracle::OracleKind;
use crate::ordered_set::OrderedSet;
use crate::text_index::TextIndex;
use crate::{MatchVerdict, PLACEHOLDER, WILDCARD};

/// `(n^k * log2(n)^7)^(1/(k+1))` before rounding and clamping.
pub fn tau_formula(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    ((k as f64 * nf.ln() + 7.0 * nf.log2().ln()) / (k as f64 + 1.0)).exp()
}

/// `ceil(tau_formula(n, k))`, clamped to `[1, n]`.
pub fn default_tau(n: usize, k: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let tau = tau_formula(n, k).ceil();
    if tau >= n as f64 {
        n
    } else {
        (tau as usize).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralConfig {
    /// Total wildcard budget across pattern and text.
    pub k: usize,
    /// Rare/frequent cutoff; `None` uses [`default_tau`].
    pub tau: Option<usize>,
    pub seed: u64,
    pub oracle: OracleKind,
}

impl Default for GeneralConfig {
    fn default() -> Self {
        Self {
            k: 3,
            tau: None,
            seed: 0,
            oracle: OracleKind::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralCounters {
    pub text_updates: u64,
    pub pattern_updates: u64,
    pub queries: u64,
    pub case1_queries: u64,
    pub case2_queries: u64,
    pub candidates: u64,
    pub block_checks: u64,
    pub completions: u64,
    pub oracle_work: u64,
}

#[derive(Debug, Clone)]
pub struct GeneralMatcher {
    ctx: Arc<HashContext>,
    index: TextIndex,
    pattern: Vec<u8>,
    pattern_occ: Vec<OrderedSet>,
    pattern_tree: RangeHashTree,
    budget: usize,
    oracle: OracleKind,
    counters: GeneralCounters,
}

impl GeneralMatcher {
    pub fn new(text: &[u8], pattern: &[u8], config: GeneralConfig) -> Result<Self> {
        for &c in pattern {
            check_symbol(c)?;
        }
        let wildcards = count_wild(text) + count_wild(pattern);
        if wildcards > config.k {
            return Err(Error::WildcardBudget {
                count: wildcards,
                budget: config.k,
            });
        }
        let tau = config
            .tau
            .unwrap_or_else(|| default_tau(text.len(), config.k));
        let ctx = Arc::new(HashContext::choose(
            text.len().max(pattern.len()).max(1),
            config.seed,
        )?);
        let index = TextIndex::build(text, tau, ctx.clone())?;
        let mut pattern_occ = vec![OrderedSet::new(); 256];
        for (j, &c) in pattern.iter().enumerate() {
            pattern_occ[c as usize].insert(j);
        }
        let pattern_tree = RangeHashTree::build(pattern, &ctx);
        Ok(Self {
            ctx,
            index,
            pattern: pattern.to_vec(),
            pattern_occ,
            pattern_tree,
            budget: config.k,
            oracle: config.oracle,
            counters: GeneralCounters::default(),
        })
    }

    pub fn text(&self) -> &[u8] {
        self.index.text()
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn index(&self) -> &TextIndex {
        &self.index
    }

    pub fn tau(&self) -> usize {
        self.index.tau()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn counters(&self) -> &GeneralCounters {
        &self.counters
    }

    pub fn wildcards(&self) -> usize {
        self.index.count(WILDCARD) + self.pattern_occ[WILDCARD as usize].len()
    }

    fn check_budget(&self, old: u8, new: u8) -> Result<()> {
        if new == WILDCARD && old != WILDCARD && self.wildcards() + 1 > self.budget {
            return Err(Error::WildcardBudget {
                count: self.wildcards() + 1,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn substitute_text(&mut self, i: usize, sym: u8) -> Result<()> {
        check_symbol(sym)?;
        let old = *self.index.text().get(i).ok_or(Error::OutOfRange {
            pos: i,
            len: self.index.len(),
        })?;
        self.check_budget(old, sym)?;
        self.index.substitute(i, sym)?;
        self.counters.text_updates += 1;
        Ok(())
    }

    pub fn substitute_pattern(&mut self, i: usize, sym: u8) -> Result<()> {
        check_symbol(sym)?;
        let old = *self.pattern.get(i).ok_or(Error::OutOfRange {
            pos: i,
            len: self.pattern.len(),
        })?;
        self.check_budget(old, sym)?;
        if old != sym {
            self.pattern_occ[old as usize].remove(i);
            self.pattern_occ[sym as usize].insert(i);
            self.pattern[i] = sym;
            self.pattern_tree.update(i, sym, &self.ctx)?;
        }
        self.counters.pattern_updates += 1;
        Ok(())
    }

    /// Compares `P[p_start .. p_start+len]` with `T[t_start .. t_start+len]`,
    /// treating `?` on either side as matching anything.
    ///
    /// Both slices are cut at the union of their wildcard offsets; the
    /// wildcard columns are dropped and the remaining blocks are hashed and
    /// concatenated on each side. A true match is always reported.
    pub fn is_match(&self, p_start: usize, t_start: usize, len: usize) -> Result<bool> {
        if p_start + len > self.pattern.len() {
            return Err(Error::LengthMismatch {
                left: p_start + len,
                right: self.pattern.len(),
            });
        }
        if t_start + len > self.index.len() {
            return Err(Error::LengthMismatch {
                left: t_start + len,
                right: self.index.len(),
            });
        }
        Ok(self.is_match_unchecked(p_start, t_start, len))
    }

    fn is_match_unchecked(&self, p_start: usize, t_start: usize, len: usize) -> bool {
        if len == 0 {
            return true;
        }
        let hi = len - 1;
        let mut cuts: Vec<usize> = self.pattern_occ[WILDCARD as usize]
            .range(p_start, p_start + hi)
            .into_iter()
            .map(|j| j - p_start)
            .chain(
                self.index
                    .occurrences(WILDCARD)
                    .range(t_start, t_start + hi)
                    .into_iter()
                    .map(|j| j - t_start),
            )
            .collect();
        cuts.sort_unstable();
        cuts.dedup();
        cuts.push(len);

        let ctx = &*self.ctx;
        let text_tree = self.index.text_tree();
        let (mut hp, mut ht) = (0u64, 0u64);
        let mut start = 0;
        for cut in cuts {
            if cut > start {
                let w = cut - start;
                let bp =
                    self.pattern_tree
                        .range_hash_unchecked(p_start + start, p_start + cut, ctx);
                let bt = text_tree.range_hash_unchecked(t_start + start, t_start + cut, ctx);
                hp = ctx.concat(hp, bp, w);
                ht = ctx.concat(ht, bt, w);
            }
            start = cut + 1;
        }
        hp == ht
    }

    /// Rare non-wildcard symbol of the pattern with the fewest text
    /// occurrences.
    fn rarest_pattern_symbol(&self) -> Option<u8> {
        (0..=255u8)
            .filter(|&c| c != WILDCARD && !self.pattern_occ[c as usize].is_empty())
            .filter(|&c| !self.index.is_frequent(c))
            .min_by_key(|&c| self.index.count(c))
    }

    pub fn query(&mut self) -> MatchVerdict {
        self.counters.queries += 1;
        let (n, m) = (self.index.len(), self.pattern.len());
        if m > n {
            return MatchVerdict::no_match();
        }
        match self.rarest_pattern_symbol() {
            Some(c) => self.query_rare(c),
            None => self.query_completions(),
        }
    }

    /// Candidate windows align the rare symbol `c` with one of its text
    /// occurrences or with a text wildcard.
    pub fn query_rare(&mut self, c: u8) -> MatchVerdict {
        self.counters.case1_queries += 1;
        let (n, m) = (self.index.len(), self.pattern.len());
        let Some(pos) = self.pattern_occ[c as usize].min() else {
            return MatchVerdict::no_match();
        };
        let occ = self.index.occurrences(c).to_vec();
        let wild = self.index.occurrences(WILDCARD).to_vec();
        for i in occ.into_iter().chain(wild) {
            if i < pos || i - pos + m > n {
                continue;
            }
            let s = i - pos;
            self.counters.candidates += 1;
            self.counters.block_checks += 1;
            if self.is_match_unchecked(0, s, m) {
                return MatchVerdict::found(s);
            }
        }
        MatchVerdict::no_match()
    }

    /// Joint completions of every pattern and text wildcard over the
    /// frequent symbols and `#`, walked in Gray order against `T'`.
    pub fn query_completions(&mut self) -> MatchVerdict {
        self.counters.case2_queries += 1;
        let mut alphabet: Vec<u8> = self.index.frequent().collect();
        alphabet.push(PLACEHOLDER);
        let pattern_slots = self.pattern_occ[WILDCARD as usize].to_vec();
        let text_slots = self.index.occurrences(WILDCARD).to_vec();
        let k = pattern_slots.len() + text_slots.len();

        let mut pattern = self.pattern.clone();
        let mut text = self.index.masked().to_vec();
        for &j in &pattern_slots {
            pattern[j] = alphabet[0];
        }
        for &j in &text_slots {
            text[j] = alphabet[0];
        }
        let mut oracle = self.oracle.make(self.ctx.clone(), &pattern, &text);
        let mut gray = GrayEnumerator::new(alphabet, k);
        let mut found = false;
        loop {
            self.counters.completions += 1;
            if oracle.contains() {
                found = true;
                break;
            }
            match gray.advance() {
                Some((slot, sym)) if slot < pattern_slots.len() => {
                    oracle.set_pattern(pattern_slots[slot], sym)
                }
                Some((slot, sym)) => oracle.set_text(text_slots[slot - pattern_slots.len()], sym),
                None => break,
            }
        }
        self.counters.oracle_work += oracle.work();
        if found {
            MatchVerdict::matched()
        } else {
            MatchVerdict::no_match()
        }
    }
}

fn count_wild(s: &[u8]) -> usize {
    s.iter().filter(|&&c| c == WILDCARD).count()
}
