//! Integer partitions (Young diagrams in English convention).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    /// Builds a partition from arbitrary nonnegative parts: zeros are dropped and the rest sorted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The hook `(size - arm_leg, 1^arm_leg)`; `leg` is the number of boxes below the first row.
    pub fn hook(size: usize, leg: usize) -> Result<Self> {
        if leg >= size {
            return Err(Error::InvalidPartition(format!("hook ({size}, leg {leg}) needs leg < size")));
        }
        let mut parts = vec![size - leg];
        parts.extend(std::iter::repeat_n(1, leg));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `λ_k` with 1-based `k`; zero past the length.
    pub fn part(&self, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// `Σ (k-1) λ_k`.
    pub fn kappa(&self) -> usize {
        self.0.iter().enumerate().map(|(k, &p)| k * p).sum()
    }

    /// `Σ i(i-1)/2 · λ_i`, the shift matching the staircase specialization `x_k = q^{k(k-1)/2}`.
    pub fn sigma_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(k, &p)| k * (k + 1) / 2 * p).sum()
    }

    /// Shapes `(a, 1^b)`; the empty partition is not a hook.
    pub fn is_hook(&self) -> bool {
        !self.0.is_empty() && self.0.iter().skip(1).all(|&p| p == 1)
    }

    /// Shapes with at most two columns.
    pub fn is_two_column(&self) -> bool {
        !self.0.is_empty() && self.0[0] <= 2
    }

    /// For a hook `(N-m, 1^m)` returns `m`.
    pub fn hook_leg(&self) -> Option<usize> {
        self.is_hook().then(|| self.0.len() - 1)
    }

    /// Dominance order `self ⊵ other` on partitions of the same size.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for k in 1..=self.length().max(other.length()) {
            a += self.part(k);
            b += other.part(k);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `3,3,1`. The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// All partitions of `size`, in reverse lexicographic order (`(size)` first).
pub fn partitions_of(size: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `size` with at most `max_len` parts.
pub fn partitions_with_length(size: usize, max_len: usize) -> Vec<Partition> {
    partitions_of(size).into_iter().filter(|p| p.length() <= max_len).collect()
}
