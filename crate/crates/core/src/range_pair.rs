//! Dynamic Range-Pair counting.
//!
//! Counts positions `i` in `[l, r - d - 1]` with `X[i] = a` and
//! `X[i + d + 1] = b` while `X` changes under point updates.
//!
//! The sequence is cut into blocks of `B` positions. Short gaps (`d < B`) are
//! served from per-block `Near` tables that are kept exact on every update.
//! Long gaps use `Pair` tables indexed by block pair and local distance
//! `(end_i - u) + (v - start_j)`; these are computed by multiplying indicator
//! polynomials of a snapshot of the sequence and are only refreshed when a
//! block accumulates `Δ` pending positions. Queries patch the stale counts by
//! looking at the pending positions only.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::convolution::{model_cost, Convolution};
use crate::error::{Error, Result};

type Counts = HashMap<(u32, u32), Vec<u32>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangePairConfig {
    pub block_size: usize,
    pub rebuild_threshold: usize,
    pub convolution: Convolution,
}

impl RangePairConfig {
    pub fn new(block_size: usize, rebuild_threshold: usize) -> Self {
        Self {
            block_size,
            rebuild_threshold,
            convolution: Convolution::default(),
        }
    }

    /// `B = ceil(n^(4/5))`, `Δ = ceil(n^(3/5))`.
    pub fn for_length(n: usize) -> Self {
        let n = n.max(1) as f64;
        let b = n.powf(0.8).ceil().max(1.0) as usize;
        let delta = (n.powf(0.6).ceil().max(1.0) as usize).min(b);
        Self::new(b, delta)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangePairCounters {
    pub updates: u64,
    pub rebuilds: u64,
    pub near_touches: u64,
    pub max_near_touches: u64,
    pub convolutions: u64,
    pub convolution_cost: u64,
    pub queries: u64,
    pub boundary_scans: u64,
    pub corrections: u64,
}

#[derive(Debug, Clone)]
pub struct RangePair {
    x: Vec<u32>,
    applied: Vec<u32>,
    alphabet: u32,
    block: usize,
    delta: usize,
    num_blocks: usize,
    pending: Vec<BTreeSet<usize>>,
    near: Vec<Counts>,
    /// Row-major over `(i, j)`, only `i < j` populated.
    pair: Vec<Counts>,
    left_polys: Vec<Vec<(u32, Vec<u32>)>>,
    right_polys: Vec<Vec<(u32, Vec<u32>)>>,
    conv: Convolution,
    counters: RangePairCounters,
}

impl RangePair {
    pub fn new(x: &[u32], alphabet: u32, config: RangePairConfig) -> Result<Self> {
        let (block, delta) = (config.block_size, config.rebuild_threshold);
        if block == 0 || delta == 0 {
            return Err(Error::Parameter(
                "block size and rebuild threshold must be positive".into(),
            ));
        }
        if delta > block {
            return Err(Error::Parameter(format!(
                "rebuild threshold {delta} exceeds block size {block}"
            )));
        }
        if let Some(&s) = x.iter().find(|&&s| s >= alphabet) {
            return Err(Error::UnknownSymbol {
                symbol: s,
                alphabet,
            });
        }
        let n = x.len();
        let num_blocks = n.div_ceil(block);
        let mut rp = Self {
            x: x.to_vec(),
            applied: x.to_vec(),
            alphabet,
            block,
            delta,
            num_blocks,
            pending: vec![BTreeSet::new(); num_blocks],
            near: vec![Counts::new(); num_blocks],
            pair: vec![Counts::new(); num_blocks * num_blocks],
            left_polys: vec![Vec::new(); num_blocks],
            right_polys: vec![Vec::new(); num_blocks],
            conv: config.convolution,
            counters: RangePairCounters::default(),
        };
        for u in 0..n {
            for d in 0..block {
                let v = u + d + 1;
                if v >= n {
                    break;
                }
                rp.near_add(u / block, rp.x[u], rp.x[v], d, 1);
            }
        }
        for i in 0..num_blocks {
            rp.refresh_polys(i);
        }
        for i in 0..num_blocks {
            for j in i + 1..num_blocks {
                rp.build_pair(i, j);
            }
        }
        Ok(rp)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn rebuild_threshold(&self) -> usize {
        self.delta
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn sequence(&self) -> &[u32] {
        &self.x
    }

    pub fn applied(&self) -> &[u32] {
        &self.applied
    }

    pub fn pending(&self, block: usize) -> &BTreeSet<usize> {
        &self.pending[block]
    }

    pub fn counters(&self) -> &RangePairCounters {
        &self.counters
    }

    #[inline]
    fn start(&self, i: usize) -> usize {
        i * self.block
    }

    #[inline]
    fn end(&self, i: usize) -> usize {
        ((i + 1) * self.block).min(self.x.len()) - 1
    }

    pub fn near_entry(&self, i: usize, a: u32, b: u32, d: usize) -> u32 {
        self.near[i].get(&(a, b)).map_or(0, |v| v[d])
    }

    pub fn pair_entry(&self, i: usize, j: usize, a: u32, b: u32, local: usize) -> u32 {
        self.pair[i * self.num_blocks + j]
            .get(&(a, b))
            .and_then(|v| v.get(local).copied())
            .unwrap_or(0)
    }

    fn near_add(&mut self, i: usize, a: u32, b: u32, d: usize, delta: i32) {
        let block = self.block;
        let slot = &mut self.near[i].entry((a, b)).or_insert_with(|| vec![0; block])[d];
        *slot = slot
            .checked_add_signed(delta)
            .expect("near count underflow");
    }

    /// Indicator polynomials of the snapshot: left ones carry `x^(end - u)`,
    /// right ones `x^(v - start)`.
    fn refresh_polys(&mut self, i: usize) {
        let (s, e) = (self.start(i), self.end(i));
        let len = e - s + 1;
        let mut left: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut right: HashMap<u32, Vec<u32>> = HashMap::new();
        for u in s..=e {
            let c = self.applied[u];
            left.entry(c).or_insert_with(|| vec![0; len])[e - u] = 1;
            right.entry(c).or_insert_with(|| vec![0; len])[u - s] = 1;
        }
        let mut left: Vec<_> = left.into_iter().collect();
        let mut right: Vec<_> = right.into_iter().collect();
        left.sort_unstable_by_key(|p| p.0);
        right.sort_unstable_by_key(|p| p.0);
        self.left_polys[i] = left;
        self.right_polys[i] = right;
    }

    fn build_pair(&mut self, i: usize, j: usize) {
        let width = 2 * self.block - 1;
        let mut table = Counts::new();
        for (a, p) in &self.left_polys[i] {
            for (b, q) in &self.right_polys[j] {
                let mut prod = self.conv.multiply(p, q);
                self.counters.convolutions += 1;
                self.counters.convolution_cost += model_cost(p.len(), q.len());
                prod.resize(width, 0);
                table.insert((*a, *b), prod);
            }
        }
        self.pair[i * self.num_blocks + j] = table;
    }

    fn rebuild(&mut self, blk: usize) {
        self.counters.rebuilds += 1;
        for p in self.pending[blk].iter().copied().collect::<Vec<_>>() {
            self.applied[p] = self.x[p];
        }
        self.pending[blk].clear();
        self.refresh_polys(blk);
        for i in 0..blk {
            self.build_pair(i, blk);
        }
        for j in blk + 1..self.num_blocks {
            self.build_pair(blk, j);
        }
    }

    /// Synchronizes every block with the live sequence.
    pub fn rebuild_all(&mut self) {
        for blk in 0..self.num_blocks {
            if !self.pending[blk].is_empty() {
                self.rebuild(blk);
            }
        }
    }

    pub fn update(&mut self, pos: usize, c: u32) -> Result<()> {
        let n = self.x.len();
        if pos >= n {
            return Err(Error::OutOfRange { pos, len: n });
        }
        if c >= self.alphabet {
            return Err(Error::UnknownSymbol {
                symbol: c,
                alphabet: self.alphabet,
            });
        }
        self.counters.updates += 1;
        let old = self.x[pos];
        if old == c {
            return Ok(());
        }
        let mut touches = 0u64;
        for d in 0..self.block {
            let v = pos + d + 1;
            if v >= n {
                break;
            }
            let xv = self.x[v];
            self.near_add(pos / self.block, old, xv, d, -1);
            self.near_add(pos / self.block, c, xv, d, 1);
            touches += 1;
        }
        for d in 0..self.block.min(pos) {
            let u = pos - d - 1;
            let xu = self.x[u];
            self.near_add(u / self.block, xu, old, d, -1);
            self.near_add(u / self.block, xu, c, d, 1);
            touches += 1;
        }
        self.counters.near_touches += touches;
        self.counters.max_near_touches = self.counters.max_near_touches.max(touches);

        self.x[pos] = c;
        let blk = pos / self.block;
        if self.x[pos] != self.applied[pos] {
            self.pending[blk].insert(pos);
        } else {
            self.pending[blk].remove(&pos);
        }
        if self.pending[blk].len() >= self.delta {
            self.rebuild(blk);
        }
        Ok(())
    }

    /// Number of `i` in `[l, r - d - 1]` with `X[i] = a` and `X[i + d + 1] = b`
    /// (0-based, `r` inclusive).
    pub fn query(&mut self, l: usize, r: usize, a: u32, b: u32, d: usize) -> Result<u64> {
        let n = self.x.len();
        if l > r || r >= n {
            return Err(Error::InvalidRange { l, r, len: n });
        }
        self.counters.queries += 1;
        if a >= self.alphabet || b >= self.alphabet || r < l + d + 1 {
            return Ok(0);
        }
        let hi = r - d - 1;
        let bs = self.block;
        let first_full = l.div_ceil(bs);
        let last_full = (hi + 1) / bs; // exclusive
        let mut cnt: i64 = 0;

        let scan = |x: &[u32], from: usize, to: usize| -> i64 {
            (from..to)
                .filter(|&i| x[i] == a && x[i + d + 1] == b)
                .count() as i64
        };
        if first_full >= last_full {
            cnt += scan(&self.x, l, hi + 1);
            self.counters.boundary_scans += (hi + 1 - l) as u64;
            return Ok(cnt as u64);
        }
        cnt += scan(&self.x, l, first_full * bs);
        cnt += scan(&self.x, last_full * bs, hi + 1);
        self.counters.boundary_scans += (first_full * bs - l + hi + 1 - last_full * bs) as u64;

        if d < bs {
            for i in first_full..last_full {
                cnt += self.near_entry(i, a, b, d) as i64;
            }
            return Ok(cnt as u64);
        }

        let mut corrections = 0u64;
        for i in first_full..last_full {
            let j = (self.start(i) + d + 1) / bs;
            cnt += self.pair_entry(i, j, a, b, d - (j - i - 1) * bs) as i64;
            let has_next = !(d + 1).is_multiple_of(bs) && j + 1 < self.num_blocks;
            if has_next {
                cnt += self.pair_entry(i, j + 1, a, b, d - (j - i) * bs) as i64;
            }

            // Pairs whose left endpoint is stale.
            for &u in &self.pending[i] {
                let v = u + d + 1;
                if v >= n {
                    continue;
                }
                corrections += 1;
                cnt += self.fix(u, v, a, b);
            }
            // Pairs whose right endpoint alone is stale.
            let right_blocks = if has_next { j..j + 2 } else { j..j + 1 };
            for jb in right_blocks {
                for &v in &self.pending[jb] {
                    let Some(u) = v.checked_sub(d + 1) else {
                        continue;
                    };
                    if u / bs != i || self.pending[i].contains(&u) {
                        continue;
                    }
                    corrections += 1;
                    cnt += self.fix(u, v, a, b);
                }
            }
        }
        self.counters.corrections += corrections;
        debug_assert!(cnt >= 0);
        Ok(cnt as u64)
    }

    /// Live-minus-snapshot contribution of the pair `(u, v)`.
    #[inline]
    fn fix(&self, u: usize, v: usize, a: u32, b: u32) -> i64 {
        let was = self.applied[u] == a && self.applied[v] == b;
        let now = self.x[u] == a && self.x[v] == b;
        now as i64 - was as i64
    }
}
