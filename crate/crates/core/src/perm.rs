//! Permutations of a finite carrier given by image indices, with cycle analysis.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `lcm` of an iterator, with `lcm(∅) = 1`.
pub fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1, lcm)
}

/// A bijection of `{0, …, len-1}` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Checks that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for (i, &j) in images.iter().enumerate() {
            let j = j as usize;
            if j >= images.len() {
                return Err(Error::NotABijection(format!("element {i} maps outside the carrier")));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotABijection(format!("element {j} has two preimages")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(len: usize) -> Self {
        Self { images: (0..len as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut images = vec![0u32; self.len()];
        for cycle in self.cycles() {
            let len = cycle.len();
            let shift = (k % len as u64) as usize;
            for (pos, &i) in cycle.iter().enumerate() {
                images[i] = cycle[(pos + shift) % len] as u32;
            }
        }
        Permutation { images }
    }

    /// Cycles, each starting at its smallest index, sorted by that index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// The order: lcm of the cycle lengths (1 for the empty permutation).
    pub fn order(&self) -> u64 {
        lcm_all(self.cycle_lengths().into_iter().map(|l| l as u64))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i == j as usize).count()
    }

    /// Restriction to a subset closed under the permutation; `subset` lists carrier indices.
    pub fn restrict(&self, subset: &[usize]) -> Result<Permutation> {
        let mut position = std::collections::HashMap::with_capacity(subset.len());
        for (k, &i) in subset.iter().enumerate() {
            position.insert(i, k as u32);
        }
        let images = subset
            .iter()
            .map(|&i| {
                position
                    .get(&self.apply(i))
                    .copied()
                    .ok_or_else(|| Error::NotABijection(format!("subset not closed at element {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}
