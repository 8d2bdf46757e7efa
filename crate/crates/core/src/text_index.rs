use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hashing::{check_symbol, HashContext, RangeHashTree};
use crate::ordered_set::OrderedSet;
use crate::{PLACEHOLDER, WILDCARD};

/// Dynamic text with per-symbol occurrence sets and the masked text `T'`,
/// where every rare symbol (fewer than `tau` occurrences) reads as `#`.
///
/// Wildcards are indexed like any other byte but never classified.
#[derive(Debug, Clone)]
pub struct TextIndex {
    ctx: Arc<HashContext>,
    text: Vec<u8>,
    masked: Vec<u8>,
    occ: Vec<OrderedSet>,
    tau: usize,
    frequent: BTreeSet<u8>,
    text_tree: RangeHashTree,
    masked_tree: RangeHashTree,
    retagged: u64,
}

impl TextIndex {
    pub fn build(text: &[u8], tau: usize, ctx: Arc<HashContext>) -> Result<Self> {
        if tau == 0 {
            return Err(Error::Parameter("threshold must be at least 1".into()));
        }
        for &c in text {
            check_symbol(c)?;
        }
        ctx.check_len(text.len())?;
        let mut occ = vec![OrderedSet::new(); 256];
        for (i, &c) in text.iter().enumerate() {
            occ[c as usize].insert(i);
        }
        let frequent: BTreeSet<u8> = (0..=255u8)
            .filter(|&c| c != WILDCARD && occ[c as usize].len() >= tau)
            .collect();
        let masked: Vec<u8> = text.iter().map(|&c| mask(c, &frequent)).collect();
        let text_tree = RangeHashTree::build(text, &ctx);
        let masked_tree = RangeHashTree::build(&masked, &ctx);
        Ok(Self {
            ctx,
            text: text.to_vec(),
            masked,
            occ,
            tau,
            frequent,
            text_tree,
            masked_tree,
            retagged: 0,
        })
    }

    pub fn substitute(&mut self, i: usize, sym: u8) -> Result<()> {
        check_symbol(sym)?;
        let n = self.text.len();
        if i >= n {
            return Err(Error::OutOfRange { pos: i, len: n });
        }
        let old = self.text[i];
        if old == sym {
            return Ok(());
        }
        self.occ[old as usize].remove(i);
        self.occ[sym as usize].insert(i);
        self.text[i] = sym;
        self.text_tree.update(i, sym, &self.ctx)?;

        if old != WILDCARD && self.occ[old as usize].len() + 1 == self.tau {
            self.frequent.remove(&old);
            for j in self.occ[old as usize].to_vec() {
                self.set_masked(j, PLACEHOLDER);
            }
        }
        if sym != WILDCARD && self.occ[sym as usize].len() == self.tau {
            self.frequent.insert(sym);
            for j in self.occ[sym as usize].to_vec() {
                self.set_masked(j, sym);
            }
        }
        let cell = mask(sym, &self.frequent);
        self.set_masked(i, cell);
        Ok(())
    }

    fn set_masked(&mut self, j: usize, c: u8) {
        if self.masked[j] != c {
            self.masked[j] = c;
            self.retagged += 1;
            self.masked_tree
                .update(j, c, &self.ctx)
                .expect("position checked by caller");
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn ctx(&self) -> &Arc<HashContext> {
        &self.ctx
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// `T'`: rare symbols replaced by `#`.
    pub fn masked(&self) -> &[u8] {
        &self.masked
    }

    pub fn text_tree(&self) -> &RangeHashTree {
        &self.text_tree
    }

    pub fn masked_tree(&self) -> &RangeHashTree {
        &self.masked_tree
    }

    pub fn occurrences(&self, c: u8) -> &OrderedSet {
        &self.occ[c as usize]
    }

    pub fn count(&self, c: u8) -> usize {
        self.occ[c as usize].len()
    }

    pub fn is_frequent(&self, c: u8) -> bool {
        self.frequent.contains(&c)
    }

    /// Frequent symbols in byte order.
    pub fn frequent(&self) -> impl Iterator<Item = u8> + '_ {
        self.frequent.iter().copied()
    }

    pub fn frequent_count(&self) -> usize {
        self.frequent.len()
    }

    pub fn lower_bound(&self, c: u8, from: usize) -> Option<usize> {
        self.occ[c as usize].lower_bound(from)
    }

    /// Number of `T'` cells rewritten so far.
    pub fn retagged(&self) -> u64 {
        self.retagged
    }
}

fn mask(c: u8, frequent: &BTreeSet<u8>) -> u8 {
    if c == WILDCARD || frequent.contains(&c) {
        c
    } else {
        PLACEHOLDER
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index(text: &[u8], tau: usize) -> TextIndex {
        let ctx = Arc::new(HashContext::choose(text.len().max(1), 1).unwrap());
        TextIndex::build(text, tau, ctx).unwrap()
    }

    #[test]
    fn worked_example() {
        let mut idx = index(b"aabbccba", 3);
        assert_eq!(idx.occurrences(b'a').to_vec(), vec![0, 1, 7]);
        assert_eq!(idx.occurrences(b'b').to_vec(), vec![2, 3, 6]);
        assert_eq!(idx.occurrences(b'c').to_vec(), vec![4, 5]);
        assert!(idx.is_frequent(b'a') && idx.is_frequent(b'b') && !idx.is_frequent(b'c'));
        assert_eq!(idx.masked(), b"aabb##ba");

        idx.substitute(0, b'b').unwrap();
        assert_eq!(idx.text(), b"babbccba");
        assert_eq!(idx.occurrences(b'b').to_vec(), vec![0, 2, 3, 6]);
        assert_eq!(idx.occurrences(b'a').to_vec(), vec![1, 7]);
        // a drops to 2 < 3 and is masked everywhere
        assert_eq!(idx.masked(), b"b#bb##b#");
    }

    #[test]
    fn empty_and_all_rare() {
        let idx = index(b"", 4);
        assert!(idx.is_empty());
        assert_eq!(idx.frequent_count(), 0);
        let idx = index(b"zzzz", 5);
        assert_eq!(idx.masked(), b"####");
    }

    #[test]
    fn promotion_and_emptied_symbol() {
        let mut idx = index(b"aab", 2);
        idx.substitute(2, b'a').unwrap();
        assert!(idx.is_frequent(b'a'));
        assert_eq!(idx.count(b'b'), 0);
        assert_eq!(idx.masked(), b"aaa");
    }

    #[test]
    fn same_symbol_is_noop() {
        let mut idx = index(b"abca", 2);
        let before = (idx.text().to_vec(), idx.masked().to_vec(), idx.retagged());
        idx.substitute(1, b'b').unwrap();
        assert_eq!(
            before,
            (idx.text().to_vec(), idx.masked().to_vec(), idx.retagged())
        );
    }

    #[test]
    fn wildcards_are_not_classified() {
        let idx = index(b"????a", 2);
        assert_eq!(idx.masked(), b"????#");
        assert!(!idx.is_frequent(WILDCARD));
        assert_eq!(idx.count(WILDCARD), 4);
    }

    #[test]
    fn errors() {
        let ctx = Arc::new(HashContext::choose(8, 1).unwrap());
        assert!(TextIndex::build(b"a#b", 2, ctx.clone()).is_err());
        assert!(TextIndex::build(b"ab", 0, ctx.clone()).is_err());
        let mut idx = TextIndex::build(b"ab", 1, ctx).unwrap();
        assert!(idx.substitute(2, b'a').is_err());
        assert!(idx.substitute(0, b'#').is_err());
    }

    #[test]
    fn lower_bound_queries() {
        let idx = index(b"aabbccba", 3);
        assert_eq!(idx.lower_bound(b'b', 4), Some(6));
        assert_eq!(idx.lower_bound(b'b', 7), None);
        assert_eq!(idx.lower_bound(b'b', 0), Some(2));
    }
}
