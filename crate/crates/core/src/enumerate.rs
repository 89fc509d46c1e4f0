//! Enumeration of `SST_n(λ)` and content-restricted subsets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::tableau::{Content, Entry, Tableau};

/// Default cardinality cap for a single enumeration.
pub const DEFAULT_CAP: usize = 10_000_000;

struct Filler<'a> {
    shape: &'a Partition,
    n: usize,
    heights: Vec<usize>,
    cells: Vec<(usize, usize)>,
    rows: Vec<Vec<Entry>>,
    remaining: Option<Vec<u32>>,
    cap: usize,
    out: Vec<Tableau>,
}

impl Filler<'_> {
    fn fill(&mut self, k: usize) -> Result<()> {
        if k == self.cells.len() {
            if self.out.len() == self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            self.out.push(Tableau::from_rows_unchecked(self.shape.clone(), self.n, self.rows.clone()));
            return Ok(());
        }
        let (r, c) = self.cells[k];
        let left = if c > 0 { self.rows[r][c - 1] } else { 1 };
        let above = if r > 0 { self.rows[r - 1][c] + 1 } else { 1 };
        let lo = left.max(above) as usize;
        // leave room for a strictly increasing run below in this column
        let hi = self.n - (self.heights[c] - 1 - r);
        for v in lo..=hi {
            if let Some(rem) = self.remaining.as_mut() {
                if rem[v - 1] == 0 {
                    continue;
                }
                rem[v - 1] -= 1;
            }
            self.rows[r][c] = v as Entry;
            let res = self.fill(k + 1);
            if let Some(rem) = self.remaining.as_mut() {
                rem[v - 1] += 1;
            }
            res?;
        }
        Ok(())
    }
}

fn enumerate(shape: &Partition, n: usize, content: Option<&Content>, cap: usize) -> Result<Vec<Tableau>> {
    if n > Entry::MAX as usize {
        return Err(Error::InvalidTableau(format!("alphabet bound {n} too large")));
    }
    if let Some(alpha) = content {
        if alpha.len() != n {
            return Err(Error::InvalidConfig(format!("content {alpha} does not have length {n}")));
        }
        if alpha.total() != shape.size() {
            return Ok(Vec::new());
        }
    }
    if shape.length() > n {
        return Ok(Vec::new());
    }
    let heights = shape.conjugate().parts().to_vec();
    let cells = heights.iter().enumerate().flat_map(|(c, &h)| (0..h).map(move |r| (r, c))).collect();
    let mut filler = Filler {
        shape,
        n,
        heights,
        cells,
        rows: shape.parts().iter().map(|&len| vec![0; len]).collect(),
        remaining: content.map(|a| a.0.clone()),
        cap,
        out: Vec::new(),
    };
    filler.fill(0)?;
    let mut out = filler.out;
    out.sort_unstable();
    Ok(out)
}

/// `SST_n(λ)` in canonical order, failing once more than `cap` tableaux are produced.
///
/// Empty when `ℓ(λ) > n`; the empty shape has exactly one (empty) tableau.
pub fn enumerate_sst_capped(shape: &Partition, n: usize, cap: usize) -> Result<Vec<Tableau>> {
    enumerate(shape, n, None, cap)
}

pub fn enumerate_sst(shape: &Partition, n: usize) -> Result<Vec<Tableau>> {
    enumerate_sst_capped(shape, n, DEFAULT_CAP)
}

/// `SST_n(λ, α)`: tableaux of the given content.
pub fn enumerate_sst_with_content(shape: &Partition, n: usize, content: &Content) -> Result<Vec<Tableau>> {
    enumerate(shape, n, Some(content), DEFAULT_CAP)
}

/// `(cont(λ), cont⁺(λ))`: all realized contents and the weakly decreasing ones.
pub fn cont_sets(shape: &Partition, n: usize) -> Result<(BTreeSet<Content>, BTreeSet<Content>)> {
    let all: BTreeSet<Content> = enumerate_sst(shape, n)?.iter().map(Tableau::content).collect();
    let dominant = all.iter().filter(|c| c.is_weakly_decreasing()).cloned().collect();
    Ok((all, dominant))
}

/// An enumerated carrier `SST_n(λ)` (or a subset of it) with index lookup.
#[derive(Clone, Debug)]
pub struct TableauSet {
    shape: Partition,
    n: usize,
    tableaux: Vec<Tableau>,
    exec: Execution,
}

impl TableauSet {
    pub fn new(shape: &Partition, n: usize) -> Result<Self> {
        Self::with_options(shape, n, DEFAULT_CAP, Execution::default())
    }

    pub fn with_options(shape: &Partition, n: usize, cap: usize, exec: Execution) -> Result<Self> {
        Ok(Self { shape: shape.clone(), n, tableaux: enumerate_sst_capped(shape, n, cap)?, exec })
    }

    /// A carrier made of the given tableaux (sorted and deduplicated).
    pub fn from_tableaux(shape: &Partition, n: usize, mut tableaux: Vec<Tableau>, exec: Execution) -> Self {
        tableaux.sort_unstable();
        tableaux.dedup();
        Self { shape: shape.clone(), n, tableaux, exec }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn alphabet_bound(&self) -> usize {
        self.n
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn set_execution(&mut self, exec: Execution) {
        self.exec = exec;
    }

    pub fn len(&self) -> usize {
        self.tableaux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tableaux.is_empty()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn get(&self, i: usize) -> &Tableau {
        &self.tableaux[i]
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.tableaux.binary_search(t).ok()
    }

    /// Images of every element under `op`, computed with this set's execution mode.
    pub fn map<R: Send>(&self, op: impl Fn(&Tableau) -> R + Sync + Send) -> Vec<R> {
        self.exec.map(&self.tableaux, op)
    }

    /// The permutation of the carrier induced by `op`; errors if `op` leaves the carrier
    /// or is not injective.
    pub fn permutation(&self, op: impl Fn(&Tableau) -> Tableau + Sync + Send) -> Result<Permutation> {
        let images = self
            .map(|t| {
                let image = op(t);
                self.index_of(&image).map(|j| j as u32).ok_or_else(|| {
                    Error::NotABijection(format!("image {} of {} is outside the carrier", image.compact(), t.compact()))
                })
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    /// Indices of the tableaux with content `alpha`.
    pub fn content_class(&self, alpha: &Content) -> Vec<usize> {
        (0..self.len()).filter(|&i| &self.tableaux[i].content() == alpha).collect()
    }

    pub fn contents(&self) -> BTreeSet<Content> {
        self.tableaux.iter().map(Tableau::content).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Oracle: every filling of the shape with entries in 1..=n, filtered by the SST conditions.
    fn brute_force(shape: &Partition, n: usize) -> Vec<Tableau> {
        let boxes = shape.size();
        let mut out = Vec::new();
        let total = n.pow(boxes as u32);
        for code in 0..total {
            let mut c = code;
            let mut rows = Vec::new();
            for &len in shape.parts() {
                let mut row = Vec::new();
                for _ in 0..len {
                    row.push((c % n + 1) as Entry);
                    c /= n;
                }
                rows.push(row);
            }
            if let Ok(t) = Tableau::new(rows, n) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_sst(&p(&[2, 1]), 3).unwrap().len(), 8);
        let col = enumerate_sst(&p(&[1, 1]), 2).unwrap();
        assert_eq!(col.len(), 1);
        assert_eq!(col[0].to_string(), "1\n2");
        assert_eq!(enumerate_sst(&p(&[2, 1, 1, 1]), 5).unwrap().len(), 24);
        assert_eq!(enumerate_sst(&p(&[1, 1, 1]), 2).unwrap().len(), 0);
        assert_eq!(enumerate_sst(&Partition::empty(), 3).unwrap().len(), 1);
    }

    #[test]
    fn agrees_with_brute_force() {
        for (shape, n) in [(p(&[2, 1]), 3), (p(&[3, 2]), 3), (p(&[2, 2, 1]), 4), (p(&[4]), 3), (p(&[1, 1, 1]), 4)] {
            assert_eq!(enumerate_sst(&shape, n).unwrap(), brute_force(&shape, n), "{shape} n={n}");
        }
    }

    #[test]
    fn content_restricted() {
        let l = p(&[2, 2, 2, 1]);
        assert_eq!(enumerate_sst_with_content(&l, 6, &Content(vec![2, 2, 2, 1, 0, 0])).unwrap().len(), 1);
        assert_eq!(enumerate_sst_with_content(&l, 6, &Content(vec![2, 2, 1, 1, 1, 0])).unwrap().len(), 2);
        assert!(enumerate_sst_with_content(&p(&[2, 1]), 3, &Content(vec![3, 0, 0])).unwrap().is_empty());
    }

    #[test]
    fn content_sets() {
        let (_, plus) = cont_sets(&p(&[2, 2, 2, 1]), 6).unwrap();
        let expected: BTreeSet<Content> =
            [vec![2, 2, 2, 1, 0, 0], vec![2, 2, 1, 1, 1, 0], vec![2, 1, 1, 1, 1, 1]].into_iter().map(Content).collect();
        assert_eq!(plus, expected);

        let (all, plus) = cont_sets(&p(&[1]), 2).unwrap();
        assert_eq!(all, [Content(vec![1, 0]), Content(vec![0, 1])].into_iter().collect());
        assert_eq!(plus, [Content(vec![1, 0])].into_iter().collect());

        let (_, plus) = cont_sets(&p(&[2, 1]), 3).unwrap();
        assert_eq!(plus, [Content(vec![2, 1, 0]), Content(vec![1, 1, 1])].into_iter().collect());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_sst_capped(&p(&[2, 1]), 3, 7), Err(Error::CapExceeded { cap: 7 })));
        assert_eq!(enumerate_sst_capped(&p(&[2, 1]), 3, 8).unwrap().len(), 8);
    }

    #[test]
    fn every_enumerated_tableau_is_valid() {
        for t in enumerate_sst(&p(&[3, 2, 1]), 4).unwrap() {
            assert!(t.is_semistandard());
            assert_eq!(t.content().total(), 6);
        }
    }
}
