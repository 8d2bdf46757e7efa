//! Order-statistic treap over `usize` keys.
//!
//! Backs the per-symbol occurrence sets: membership, lower bound and rank all
//! run in expected `O(log n)`.

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    key: usize,
    prio: u64,
    size: u32,
    left: u32,
    right: u32,
}

#[derive(Debug, Clone)]
pub struct OrderedSet {
    nodes: Vec<Node>,
    free: Vec<u32>,
    root: u32,
    rng: u64,
}

impl Default for OrderedSet {
    fn default() -> Self {
        Self::new()
    }
}

impl OrderedSet {
    pub fn new() -> Self {
        Self {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            rng: 0x9E37_79B9_7F4A_7C15,
        }
    }

    fn next_prio(&mut self) -> u64 {
        // splitmix64
        self.rng = self.rng.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.rng;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    #[inline]
    fn size_of(&self, t: u32) -> u32 {
        if t == NIL {
            0
        } else {
            self.nodes[t as usize].size
        }
    }

    #[inline]
    fn pull(&mut self, t: u32) {
        let (l, r) = {
            let n = &self.nodes[t as usize];
            (n.left, n.right)
        };
        self.nodes[t as usize].size = 1 + self.size_of(l) + self.size_of(r);
    }

    /// Splits `t` into keys `< key` and keys `>= key`.
    fn split(&mut self, t: u32, key: usize) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        if self.nodes[t as usize].key < key {
            let (a, b) = self.split(self.nodes[t as usize].right, key);
            self.nodes[t as usize].right = a;
            self.pull(t);
            (t, b)
        } else {
            let (a, b) = self.split(self.nodes[t as usize].left, key);
            self.nodes[t as usize].left = b;
            self.pull(t);
            (a, t)
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].prio > self.nodes[b as usize].prio {
            let r = self.merge(self.nodes[a as usize].right, b);
            self.nodes[a as usize].right = r;
            self.pull(a);
            a
        } else {
            let l = self.merge(a, self.nodes[b as usize].left);
            self.nodes[b as usize].left = l;
            self.pull(b);
            b
        }
    }

    pub fn len(&self) -> usize {
        self.size_of(self.root) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.root == NIL
    }

    pub fn contains(&self, key: usize) -> bool {
        let mut t = self.root;
        while t != NIL {
            let n = &self.nodes[t as usize];
            if key == n.key {
                return true;
            }
            t = if key < n.key { n.left } else { n.right };
        }
        false
    }

    /// Returns `false` if the key was already present.
    pub fn insert(&mut self, key: usize) -> bool {
        if self.contains(key) {
            return false;
        }
        let node = Node {
            key,
            prio: self.next_prio(),
            size: 1,
            left: NIL,
            right: NIL,
        };
        let id = match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = node;
                id
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        };
        let (a, b) = self.split(self.root, key);
        let left = self.merge(a, id);
        self.root = self.merge(left, b);
        true
    }

    /// Returns `false` if the key was absent.
    pub fn remove(&mut self, key: usize) -> bool {
        if !self.contains(key) {
            return false;
        }
        let (a, b) = self.split(self.root, key);
        let (mid, c) = self.split(b, key + 1);
        debug_assert_eq!(self.size_of(mid), 1);
        self.free.push(mid);
        self.root = self.merge(a, c);
        true
    }

    /// Smallest key `>= from`.
    pub fn lower_bound(&self, from: usize) -> Option<usize> {
        let mut t = self.root;
        let mut best = None;
        while t != NIL {
            let n = &self.nodes[t as usize];
            if n.key >= from {
                best = Some(n.key);
                t = n.left;
            } else {
                t = n.right;
            }
        }
        best
    }

    /// Number of keys `< key`.
    pub fn rank(&self, key: usize) -> usize {
        let mut t = self.root;
        let mut acc = 0;
        while t != NIL {
            let n = &self.nodes[t as usize];
            if n.key < key {
                acc += 1 + self.size_of(n.left) as usize;
                t = n.right;
            } else {
                t = n.left;
            }
        }
        acc
    }

    /// Number of keys in the inclusive range `[lo, hi]`.
    pub fn count_in(&self, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        self.rank(hi + 1) - self.rank(lo)
    }

    pub fn min(&self) -> Option<usize> {
        self.lower_bound(0)
    }

    /// In-order keys within `[lo, hi]`.
    pub fn range(&self, lo: usize, hi: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if lo <= hi {
            self.collect(self.root, lo, hi, &mut out);
        }
        out
    }

    fn collect(&self, t: u32, lo: usize, hi: usize, out: &mut Vec<usize>) {
        if t == NIL {
            return;
        }
        let n = &self.nodes[t as usize];
        if n.key > lo {
            self.collect(n.left, lo, hi, out);
        }
        if n.key >= lo && n.key <= hi {
            out.push(n.key);
        }
        if n.key < hi {
            self.collect(n.right, lo, hi, out);
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.range(0, usize::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn basic_ops() {
        let mut s = OrderedSet::new();
        for k in [3, 4, 7] {
            assert!(s.insert(k));
        }
        assert!(!s.insert(4));
        assert_eq!(s.lower_bound(5), Some(7));
        assert_eq!(s.lower_bound(8), None);
        assert_eq!(s.lower_bound(0), Some(3));
        assert_eq!(s.count_in(3, 6), 2);
        assert!(s.remove(4));
        assert!(!s.remove(4));
        assert_eq!(s.to_vec(), vec![3, 7]);
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(ops in proptest::collection::vec((any::<bool>(), 0usize..64), 0..300),
                                probe in 0usize..70) {
            let mut s = OrderedSet::new();
            let mut oracle = BTreeSet::new();
            for (ins, k) in ops {
                if ins {
                    prop_assert_eq!(s.insert(k), oracle.insert(k));
                } else {
                    prop_assert_eq!(s.remove(k), oracle.remove(&k));
                }
            }
            prop_assert_eq!(s.len(), oracle.len());
            prop_assert_eq!(s.to_vec(), oracle.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(s.lower_bound(probe), oracle.range(probe..).next().copied());
            prop_assert_eq!(s.rank(probe), oracle.range(..probe).count());
            prop_assert_eq!(s.range(probe / 2, probe), oracle.range(probe / 2..=probe).copied().collect::<Vec<_>>());
        }
    }
}
