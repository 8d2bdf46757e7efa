//! Orthogonal Vectors through dynamic wildcard matching.
//!
//! The text lists every vector between delimiters. For vector `v_i` the
//! pattern is `# v'_i #`, where each 1 of `v_i` becomes `0` and each 0 becomes
//! `?`; it matches slot `j` exactly when `v_i . v_j = 0`. Walking `i` from
//! first to last costs at most `d` pattern substitutions per step and one
//! existence query.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::general::{GeneralConfig, GeneralMatcher};
use crate::{PLACEHOLDER, WILDCARD};

/// Delimiter used in the printed reduction.
pub const DELIMITER: u8 = PLACEHOLDER;
/// Delimiter fed to matchers, which reserve `#` for their own use.
pub const MATCHER_DELIMITER: u8 = b'$';

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvInstance {
    vectors: Vec<Vec<bool>>,
    dim: usize,
}

impl OvInstance {
    pub fn new(vectors: Vec<Vec<bool>>) -> Result<Self> {
        let dim = vectors.first().map_or(1, Vec::len);
        if dim == 0 {
            return Err(Error::Parameter(
                "vectors must have dimension at least 1".into(),
            ));
        }
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::Parameter("vectors differ in dimension".into()));
        }
        Ok(Self { vectors, dim })
    }

    /// Parses lines of `0`/`1` characters, one vector per non-empty line.
    pub fn parse(input: &str) -> Result<Self> {
        let vectors = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.bytes()
                    .map(|b| match b {
                        b'0' => Ok(false),
                        b'1' => Ok(true),
                        _ => Err(Error::Parameter(format!("bad vector line {l:?}"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    pub fn vectors(&self) -> &[Vec<bool>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub text: Vec<u8>,
    pub templates: Vec<Vec<u8>>,
}

fn reduce_with(inst: &OvInstance, delim: u8) -> Reduction {
    let mut text = vec![delim];
    for v in &inst.vectors {
        text.extend(v.iter().map(|&x| if x { b'1' } else { b'0' }));
        text.push(delim);
    }
    let templates = inst
        .vectors
        .iter()
        .map(|v| {
            let mut t = vec![delim];
            t.extend(v.iter().map(|&x| if x { b'0' } else { WILDCARD }));
            t.push(delim);
            t
        })
        .collect();
    Reduction { text, templates }
}

/// Text `#v_1#v_2#...#v_n#` and one template per vector.
pub fn reduce(inst: &OvInstance) -> Reduction {
    reduce_with(inst, DELIMITER)
}

/// Is there a pair `i != j` with `v_i . v_j = 0`?
pub fn brute_force(inst: &OvInstance) -> bool {
    let v = &inst.vectors;
    (0..v.len()).any(|i| (i + 1..v.len()).any(|j| v[i].iter().zip(&v[j]).all(|(&a, &b)| !(a && b))))
}

/// A matcher that can be driven through the reduction.
pub trait OvBackend {
    fn substitute_pattern(&mut self, i: usize, sym: u8) -> Result<()>;
    fn exists(&mut self) -> bool;
}

impl OvBackend for GeneralMatcher {
    fn substitute_pattern(&mut self, i: usize, sym: u8) -> Result<()> {
        GeneralMatcher::substitute_pattern(self, i, sym)
    }

    fn exists(&mut self) -> bool {
        self.query().matched
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvOutcome {
    pub answer: bool,
    pub queries: u64,
    pub substitutions: u64,
    /// Queries whose only matching slot was the template's own vector.
    pub self_only: u64,
}

/// Does template `i` match some slot other than its own?
fn matches_other_slot(red: &Reduction, i: usize, dim: usize) -> bool {
    let t = &red.templates[i];
    (0..red.templates.len()).filter(|&j| j != i).any(|j| {
        let slot = &red.text[j * (dim + 1)..j * (dim + 1) + dim + 2];
        slot.iter().zip(t).all(|(&x, &p)| p == WILDCARD || p == x)
    })
}

/// Runs the reduction against a backend built from the text and the first
/// template. Issues exactly one query per vector.
pub fn solve_with<B, F>(inst: &OvInstance, build: F) -> Result<OvOutcome>
where
    B: OvBackend,
    F: FnOnce(&[u8], &[u8]) -> Result<B>,
{
    let mut out = OvOutcome::default();
    if inst.is_empty() {
        return Ok(out);
    }
    let red = reduce_with(inst, MATCHER_DELIMITER);
    let mut backend = build(&red.text, &red.templates[0])?;
    for i in 0..red.templates.len() {
        if i > 0 {
            let (prev, next) = (&red.templates[i - 1], &red.templates[i]);
            // fill solids before opening wildcards so the wildcard count
            // never exceeds either template's
            let changed: Vec<usize> = (0..next.len()).filter(|&p| prev[p] != next[p]).collect();
            for &p in changed.iter().filter(|&&p| next[p] != WILDCARD) {
                backend.substitute_pattern(p, next[p])?;
                out.substitutions += 1;
            }
            for &p in changed.iter().filter(|&&p| next[p] == WILDCARD) {
                backend.substitute_pattern(p, WILDCARD)?;
                out.substitutions += 1;
            }
        }
        out.queries += 1;
        if backend.exists() {
            if matches_other_slot(&red, i, inst.dim()) {
                out.answer = true;
            } else {
                out.self_only += 1;
            }
        }
    }
    Ok(out)
}

/// [`solve_with`] over the general matcher with wildcard budget `d`.
pub fn solve_via_matcher(inst: &OvInstance, seed: u64) -> Result<OvOutcome> {
    let config = GeneralConfig {
        k: inst.dim(),
        seed,
        ..GeneralConfig::default()
    };
    solve_with(inst, |text, pattern| {
        GeneralMatcher::new(text, pattern, config)
    })
}
