//! Semistandard Young tableaux with entries in `{1..n}` and their contents.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Entry of a tableau; alphabets are bounded by `u8::MAX`.
pub type Entry = u8;

/// A box position `(row, column)`, both 0-based.
pub type Cell = (usize, usize);

/// Multiplicity vector `(c_1, …, c_n)`, always of full length `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Content(pub Vec<u32>);

impl Content {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    /// Number of nonzero coordinates.
    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Swap coordinates `i` and `i+1` (1-based `i`), the action of `s_i`.
    pub fn reflect(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Self(v)
    }

    /// The n-cycle sending coordinate `k` to `k+1` (mod n).
    pub fn rotate(&self) -> Self {
        let mut v = self.0.clone();
        v.rotate_right(1);
        Self(v)
    }

    /// The partition obtained by sorting the coordinates.
    pub fn sorted_partition(&self) -> Partition {
        Partition::from_unsorted(self.0.iter().map(|&c| c as usize).collect())
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A semistandard tableau of shape `shape` with entries bounded by `n`.
///
/// Rows are stored top to bottom. Ordering is lexicographic on the row-reading word
/// (top row first) once shape and bound agree, which is the canonical order used for
/// orbit representatives and counterexample reporting.
/// Tableaux are ordered by shape, then alphabet bound, then lexicographically on the
/// row reading word; this is the canonical order used for representatives and witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    n: usize,
    rows: Vec<Vec<Entry>>,
}

impl Tableau {
    /// Validates row lengths, entry bounds, and row/column conditions.
    pub fn new(rows: Vec<Vec<Entry>>, n: usize) -> Result<Self> {
        if n > Entry::MAX as usize {
            return Err(Error::InvalidTableau(format!("alphabet bound {n} too large")));
        }
        let shape =
            Partition::new(rows.iter().map(Vec::len).collect()).map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let t = Self { shape, n, rows };
        t.validate()?;
        Ok(t)
    }

    /// Builds without validation; callers guarantee semistandardness.
    pub(crate) fn from_rows_unchecked(shape: Partition, n: usize, rows: Vec<Vec<Entry>>) -> Self {
        debug_assert_eq!(rows.iter().map(Vec::len).collect::<Vec<_>>(), shape.parts());
        Self { shape, n, rows }
    }

    /// The highest-weight tableau: row `k` filled with `k`.
    pub fn highest_weight(shape: &Partition, n: usize) -> Result<Self> {
        if shape.length() > n {
            return Err(Error::TooManyParts { partition: shape.to_string(), n });
        }
        let rows = shape.parts().iter().enumerate().map(|(k, &len)| vec![(k + 1) as Entry; len]).collect();
        Ok(Self { shape: shape.clone(), n, rows })
    }

    fn validate(&self) -> Result<()> {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e as usize > self.n {
                    return Err(Error::InvalidTableau(format!("entry {e} at ({r},{c}) outside 1..={}", self.n)));
                }
                if c > 0 && row[c - 1] > e {
                    return Err(Error::InvalidTableau(format!("row {r} decreases at column {c}")));
                }
                if r > 0 && self.rows[r - 1][c] >= e {
                    return Err(Error::InvalidTableau(format!("column {c} not strict at row {r}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_semistandard(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn alphabet_bound(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [Vec<Entry>] {
        &mut self.rows
    }

    pub fn get(&self, (r, c): Cell) -> Option<Entry> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    pub fn content(&self) -> Content {
        let mut counts = vec![0u32; self.n];
        for &e in self.rows.iter().flatten() {
            counts[e as usize - 1] += 1;
        }
        Content(counts)
    }

    /// Row reading word: rows from bottom to top, each left to right, with cell positions.
    pub fn reading_word(&self) -> impl Iterator<Item = (Cell, Entry)> + '_ {
        self.rows.iter().enumerate().rev().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &e)| ((r, c), e)))
    }

    /// The same tableau regarded over a different alphabet bound.
    pub fn with_bound(&self, n: usize) -> Result<Self> {
        Self::new(self.rows.clone(), n)
    }

    /// Parses the text form: one row per line, entries separated by whitespace.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|t| t.parse::<Entry>().map_err(|e| Error::Parse(format!("entry {t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, n)
    }

    /// Parses the compact one-line form `1 1 2 / 3 3 4 / 4`.
    pub fn parse_compact(text: &str, n: usize) -> Result<Self> {
        Self::parse(&text.replace('/', "\n"), n)
    }
}

impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.shape
            .cmp(&other.shape)
            .then(self.n.cmp(&other.n))
            .then_with(|| self.rows.iter().rev().flatten().cmp(other.rows.iter().rev().flatten()))
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl Tableau {
    /// One-line form with rows separated by ` / `.
    pub fn compact(&self) -> String {
        self.to_string().replace('\n', " / ")
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Tableau", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("rows", &self.rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            rows: Vec<Vec<Entry>>,
        }
        let raw = Raw::deserialize(d)?;
        Tableau::new(raw.rows, raw.n).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_of_the_displayed_tableau() {
        let t = Tableau::parse("1 1 2 2 2 4 5 5\n2 3 3 3 5\n3 4", 5).unwrap();
        assert_eq!(t.shape().parts(), &[8, 5, 2]);
        assert_eq!(t.content(), Content(vec![2, 4, 4, 2, 3]));
    }

    #[test]
    fn content_of_promotion_example() {
        let t = Tableau::parse_compact("1 1 2 / 3 3 4 / 4", 4).unwrap();
        assert_eq!(t.content(), Content(vec![2, 1, 2, 2]));
    }

    #[test]
    fn single_column_content() {
        let t = Tableau::parse("1\n2\n3\n4", 4).unwrap();
        assert_eq!(t.content(), Content(vec![1, 1, 1, 1]));
    }

    #[test]
    fn validation() {
        assert!(Tableau::parse("2 1", 3).is_err());
        assert!(Tableau::parse("1 2\n1", 3).is_err());
        assert!(Tableau::parse("1 4", 3).is_err());
        assert!(Tableau::parse("1 0", 3).is_err());
        assert!(Tableau::parse("1\n2 3", 3).is_err());
    }

    #[test]
    fn text_round_trip() {
        let text = "1 1 2\n3 3 4\n4";
        let t = Tableau::parse(text, 4).unwrap();
        assert_eq!(t.to_string(), text);
        assert_eq!(t.compact(), "1 1 2 / 3 3 4 / 4");
        let empty = Tableau::parse("", 3).unwrap();
        assert_eq!(empty.to_string(), "");
        assert!(empty.shape().is_empty());
    }

    #[test]
    fn reading_word_is_bottom_row_first() {
        let t = Tableau::parse_compact("1 1 4 / 2 3 / 3", 4).unwrap();
        let word: Vec<Entry> = t.reading_word().map(|(_, e)| e).collect();
        assert_eq!(word, vec![3, 2, 3, 1, 1, 4]);
    }

    #[test]
    fn serde_round_trip() {
        let t = Tableau::parse_compact("1 2 / 3", 3).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: Tableau = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tableau>(r#"{"n":3,"rows":[[2,1]]}"#).is_err());
    }
}
