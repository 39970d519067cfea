//! The rank-one Heisenberg Fock space `Q[h(-1), h(-2), ...]` with its
//! partition-indexed monomial basis.

use std::fmt;

use crate::linear::{Combination, Monomial};
use crate::scalar::{NormExponent, Rational};

/// A weakly decreasing list of positive parts; `[2, 2, 1]` is `h(-2)^2 h(-1) |0>`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts; panics on a zero part.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Multiplies by `h(-part)`.
    pub fn with_part(&self, part: u32) -> Partition {
        let at = self.0.partition_point(|&p| p > part);
        let mut parts = self.0.clone();
        parts.insert(at, part);
        Partition(parts)
    }

    /// Removes one copy of `part`, if present.
    pub fn without_part(&self, part: u32) -> Option<Partition> {
        let at = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts.remove(at);
        Some(Partition(parts))
    }

    /// Largest part and the remaining partition.
    pub fn split_first(&self) -> Option<(u32, Partition)> {
        let (&k, rest) = self.0.split_first()?;
        Some((k, Partition(rest.to_vec())))
    }
}

impl Monomial for Partition {
    fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    fn vacuum() -> Self {
        Partition::empty()
    }
}

pub(crate) fn fmt_word(f: &mut fmt::Formatter<'_>, generator: char, parts: &[u32]) -> fmt::Result {
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        write!(f, "{generator}(-{})", parts[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        f.write_str(" ")?;
        i = j;
    }
    f.write_str("|0>")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, 'h', &self.0)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type HeisenbergState = Combination<Partition>;

/// Monomial `h(-k1) ... h(-kr) |0>` with unit coefficient.
pub fn monomial(parts: &[u32]) -> HeisenbergState {
    HeisenbergState::monomial(Partition::new(parts.to_vec()))
}

/// A truncation of an element of the completed space: every grade above
/// `grade_cutoff` has been dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedState {
    pub state: HeisenbergState,
    pub grade_cutoff: u32,
}

impl TruncatedState {
    pub fn new(state: &HeisenbergState, grade_cutoff: u32) -> Self {
        TruncatedState { state: state.truncate(grade_cutoff), grade_cutoff }
    }
}

/// Partitions of `n` with every part at least `min_part`, lexicographically sorted.
pub fn partitions_with_min_part(n: u32, min_part: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (min..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The monomial basis of the grade-`n` piece, in lexicographic order.
pub fn grade_basis(n: u32) -> Vec<Partition> {
    partitions_with_min_part(n, 1).into_iter().map(Partition).collect()
}

pub fn sup_norm_exponent(a: &HeisenbergState, p: u64) -> NormExponent {
    a.sup_norm_exponent(p)
}

pub fn r_norm_exponent(a: &HeisenbergState, p: u64, e: i64) -> NormExponent {
    a.r_norm_exponent(p, e)
}

/// Coefficient-wise scaling, `lambda * a`.
pub fn state_scale(lambda: &Rational, a: &HeisenbergState) -> HeisenbergState {
    a.scale(lambda)
}
