//! The `U_q(sl_n)`-crystal structure on `SST_n(λ)`.
//!
//! Kashiwara operators use the signature rule on the row reading word (rows bottom to
//! top, each left to right). In the `{i, i+1}` subword every `i+1` is matched with the
//! nearest later unmatched `i`, like an opening and a closing bracket. What remains
//! reads `i^φ (i+1)^ε`. `f̃_i` turns the rightmost unmatched `i` into `i+1`, `ẽ_i` turns
//! the leftmost unmatched `i+1` into `i`.
//!
//! Weights are kept in ε-coordinates, i.e. as content vectors.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::TableauSet;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::LaurentPoly;
use crate::tableau::{Cell, Entry, Tableau};

/// A weight `c_1 ε_1 + … + c_n ε_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn of(t: &Tableau) -> Self {
        Self(t.content().0.iter().map(|&c| c as i64).collect())
    }

    /// `wt(λ) = Σ_k ϖ_{λ'_k}`, which in ε-coordinates is `λ` padded to length `n`.
    pub fn highest(shape: &Partition, n: usize) -> Self {
        Self(shape.padded(n).into_iter().take(n).map(|p| p as i64).collect())
    }

    /// The simple root `α_i = ε_i - ε_{i+1}`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        v[i] = -1;
        Self(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `⟨h_i, wt⟩ = c_i - c_{i+1}`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1] - self.0[i]
    }

    /// The simple reflection `s_i`.
    pub fn reflect(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Self(v)
    }

    /// The Coxeter element `c = s_1 ⋯ s_{n-1}`: `ε_k ↦ ε_{k+1}`, `ε_n ↦ ε_1`.
    pub fn coxeter(&self) -> Self {
        let mut v = self.0.clone();
        v.rotate_right(1);
        Self(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_in_root_lattice(&self) -> bool {
        self.0.iter().sum::<i64>() == 0
    }

    /// Root-lattice coordinates `b_i` with `β = Σ b_i α_i` (partial sums).
    pub fn root_coordinates(&self) -> Result<Vec<i64>> {
        if !self.is_in_root_lattice() {
            return Err(Error::NotInRootLattice(self.0.clone()));
        }
        let n = self.0.len();
        Ok(self.0[..n.saturating_sub(1)]
            .iter()
            .scan(0, |acc, &d| {
                *acc += d;
                Some(*acc)
            })
            .collect())
    }
}

/// `ev(β) = Σ b_i` for `β = Σ b_i α_i` in the root lattice.
pub fn ev(beta: &WeightVector) -> Result<i64> {
    Ok(beta.root_coordinates()?.iter().sum())
}

/// `ev(Λ - wt(T))`, the degree of `T` in the q-dimension.
pub fn ev_of(t: &Tableau) -> i64 {
    let n = t.alphabet_bound();
    let lambda = WeightVector::highest(t.shape(), n);
    ev(&lambda.sub(&WeightVector::of(t))).expect("Λ - wt(T) lies in the root lattice")
}

/// A tableau together with its cached weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrystalElement {
    tableau: Tableau,
    weight: WeightVector,
}

impl CrystalElement {
    pub fn new(tableau: Tableau) -> Self {
        let weight = WeightVector::of(&tableau);
        Self { tableau, weight }
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn f(&self, i: usize) -> Option<Self> {
        f_op(&self.tableau, i).map(Self::new)
    }

    pub fn e(&self, i: usize) -> Option<Self> {
        e_op(&self.tableau, i).map(Self::new)
    }
}

/// Result of the signature rule for one index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub epsilon: usize,
    pub phi: usize,
    /// Cell changed by `ẽ_i` (leftmost unmatched `i+1`).
    pub raise_cell: Option<Cell>,
    /// Cell changed by `f̃_i` (rightmost unmatched `i`).
    pub lower_cell: Option<Cell>,
}

fn check_index(t: &Tableau, i: usize) {
    let n = t.alphabet_bound();
    assert!(i >= 1 && i < n, "crystal index {i} outside 1..={}", n.saturating_sub(1));
}

pub fn signature_stats(t: &Tableau, i: usize) -> Signature {
    check_index(t, i);
    let (lo, hi) = (i as Entry, (i + 1) as Entry);
    let mut open: Vec<Cell> = Vec::new();
    let mut unmatched_lo: Vec<Cell> = Vec::new();
    for (cell, e) in t.reading_word() {
        if e == hi {
            open.push(cell);
        } else if e == lo && open.pop().is_none() {
            unmatched_lo.push(cell);
        }
    }
    Signature {
        epsilon: open.len(),
        phi: unmatched_lo.len(),
        raise_cell: open.first().copied(),
        lower_cell: unmatched_lo.last().copied(),
    }
}

fn set_entry(t: &Tableau, (r, c): Cell, value: Entry) -> Tableau {
    let mut out = t.clone();
    out.rows_mut()[r][c] = value;
    out
}

/// `f̃_i T`, or `None` when `φ_i(T) = 0`.
pub fn f_op(t: &Tableau, i: usize) -> Option<Tableau> {
    let cell = signature_stats(t, i).lower_cell?;
    Some(set_entry(t, cell, (i + 1) as Entry))
}

/// `ẽ_i T`, or `None` when `ε_i(T) = 0`.
pub fn e_op(t: &Tableau, i: usize) -> Option<Tableau> {
    let cell = signature_stats(t, i).raise_cell?;
    Some(set_entry(t, cell, i as Entry))
}

/// The Weyl-group reflection `𝕤_i`: `f̃_i^k` if `k = ⟨h_i, wt⟩ ≥ 0`, else `ẽ_i^{-k}`.
pub fn s_op(t: &Tableau, i: usize) -> Tableau {
    check_index(t, i);
    let k = WeightVector::of(t).pairing(i);
    let mut cur = t.clone();
    for _ in 0..k.unsigned_abs() {
        let next = if k > 0 { f_op(&cur, i) } else { e_op(&cur, i) };
        cur = next.expect("the i-string through T is long enough for the reflection");
    }
    cur
}

/// The Coxeter operator `𝕔 = 𝕤_1 𝕤_2 ⋯ 𝕤_{n-1}` (`𝕤_{n-1}` acts first).
pub fn c_op(t: &Tableau) -> Tableau {
    let n = t.alphabet_bound();
    let mut cur = t.clone();
    for i in (1..n).rev() {
        cur = s_op(&cur, i);
    }
    cur
}

/// `𝕔^k T`.
pub fn c_power(t: &Tableau, k: usize) -> Tableau {
    (0..k).fold(t.clone(), |cur, _| c_op(&cur))
}

/// `qdim B(wt λ) = Σ_T q^{ev(Λ - wt T)}` over `SST_n(λ)`.
pub fn qdim(shape: &Partition, n: usize) -> Result<LaurentPoly> {
    Ok(qdim_of(&TableauSet::new(shape, n)?))
}

pub fn qdim_of(set: &TableauSet) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for e in set.map(ev_of) {
        p.add_term(1, e);
    }
    p
}

/// An orbit of `ℂ = ⟨𝕔⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitC {
    pub representative: Tableau,
    /// `[T, 𝕔T, 𝕔²T, …]` starting at the canonical representative.
    pub elements: Vec<Tableau>,
    pub stabilizer_order: usize,
    /// `ev(Λ - wt(S))` for each element, in orbit order.
    pub ev_values: Vec<i64>,
}

impl OrbitC {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.stabilizer_order == 1
    }

    /// Whether the ev values are pairwise incongruent modulo `n` and number `n`.
    pub fn is_complete_residue_system(&self, n: usize) -> bool {
        let residues: HashSet<i64> = self.ev_values.iter().map(|e| e.rem_euclid(n as i64)).collect();
        residues.len() == n && self.ev_values.len() == n
    }
}

/// Decomposes `SST_n(λ)` into `ℂ`-orbits.
pub fn orbit_decomposition_c(shape: &Partition, n: usize) -> Result<Vec<OrbitC>> {
    coxeter_orbits(&TableauSet::new(shape, n)?)
}

/// `ℂ`-orbits of an enumerated carrier, ordered by canonical representative.
pub fn coxeter_orbits(set: &TableauSet) -> Result<Vec<OrbitC>> {
    let n = set.alphabet_bound();
    let perm = set.permutation(c_op)?;
    Ok(perm
        .cycles()
        .into_iter()
        .map(|cycle| {
            let elements: Vec<Tableau> = cycle.iter().map(|&i| set.get(i).clone()).collect();
            OrbitC {
                representative: elements[0].clone(),
                ev_values: elements.iter().map(ev_of).collect(),
                stabilizer_order: n / elements.len(),
                elements,
            }
        })
        .collect())
}
