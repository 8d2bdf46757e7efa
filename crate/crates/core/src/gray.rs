//! Reflected mixed-radix Gray enumeration of `alphabet^k`.

/// Walks every vector in `alphabet^k` so that consecutive vectors differ in
/// exactly one coordinate. The last coordinate sweeps fastest; a coordinate
/// reverses direction each time it hits an end of the alphabet.
#[derive(Debug, Clone)]
pub struct GrayEnumerator<T> {
    alphabet: Vec<T>,
    digits: Vec<usize>,
    forward: Vec<bool>,
    exhausted: bool,
}

impl<T: Clone> GrayEnumerator<T> {
    /// Starts at `(alphabet[0], ..., alphabet[0])`. An empty alphabet with
    /// `k > 0` has no vectors; `k = 0` has exactly one (empty) vector.
    pub fn new(alphabet: Vec<T>, k: usize) -> Self {
        let exhausted = alphabet.is_empty() && k > 0;
        Self {
            alphabet,
            digits: vec![0; k],
            forward: vec![true; k],
            exhausted,
        }
    }

    pub fn k(&self) -> usize {
        self.digits.len()
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// `|alphabet|^k`, saturating.
    pub fn total(&self) -> u128 {
        (self.alphabet.len() as u128).saturating_pow(self.k() as u32)
    }

    pub fn current(&self) -> Option<Vec<T>> {
        if self.exhausted {
            return None;
        }
        Some(
            self.digits
                .iter()
                .map(|&d| self.alphabet[d].clone())
                .collect(),
        )
    }

    /// Moves to the next vector and reports `(coordinate, new symbol)`, or
    /// `None` once the space is exhausted.
    pub fn advance(&mut self) -> Option<(usize, T)> {
        if self.exhausted {
            return None;
        }
        let q = self.alphabet.len();
        for i in (0..self.digits.len()).rev() {
            let d = self.digits[i];
            if self.forward[i] && d + 1 < q {
                self.digits[i] = d + 1;
                return Some((i, self.alphabet[d + 1].clone()));
            }
            if !self.forward[i] && d > 0 {
                self.digits[i] = d - 1;
                return Some((i, self.alphabet[d - 1].clone()));
            }
            self.forward[i] = !self.forward[i];
        }
        self.exhausted = true;
        None
    }

    /// Every vector in enumeration order.
    pub fn into_vectors(mut self) -> Vec<Vec<T>> {
        let mut out = Vec::new();
        while let Some(v) = self.current() {
            out.push(v);
            self.advance();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn two_coordinates_three_symbols() {
        let seq = GrayEnumerator::new(vec!['a', 'b', 'c'], 2).into_vectors();
        let expect: Vec<Vec<char>> = ["aa", "ab", "ac", "bc", "bb", "ba", "ca", "cb", "cc"]
            .iter()
            .map(|s| s.chars().collect())
            .collect();
        assert_eq!(seq, expect);

        let mut e = GrayEnumerator::new(vec!['a', 'b', 'c'], 2);
        let changed: Vec<usize> = std::iter::from_fn(|| e.advance().map(|(i, _)| i)).collect();
        assert_eq!(changed, vec![1, 1, 0, 1, 1, 0, 1, 1]);
    }

    #[test]
    fn single_coordinate_is_a_sweep() {
        let seq = GrayEnumerator::new(vec![1, 2, 3, 4], 1).into_vectors();
        assert_eq!(seq, vec![vec![1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(
            GrayEnumerator::new(vec!['x'], 0).into_vectors(),
            vec![Vec::<char>::new()]
        );
        assert!(GrayEnumerator::<char>::new(vec![], 2)
            .into_vectors()
            .is_empty());
        assert_eq!(GrayEnumerator::new(vec!['x'], 3).into_vectors().len(), 1);
    }

    #[test]
    fn covers_product_space_once() {
        for q in 1..=4usize {
            for k in 0..=3usize {
                let seq = GrayEnumerator::new((0..q).collect(), k).into_vectors();
                assert_eq!(seq.len(), q.pow(k as u32));
                let distinct: HashSet<_> = seq.iter().cloned().collect();
                assert_eq!(distinct.len(), seq.len());
                for w in seq.windows(2) {
                    let diff = w[0].iter().zip(&w[1]).filter(|(x, y)| x != y).count();
                    assert_eq!(diff, 1);
                }
            }
        }
    }
}
