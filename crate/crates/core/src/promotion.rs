//! Bender–Knuth involutions, jeu-de-taquin promotion, and promotion orders.

use serde::{Deserialize, Serialize};

use crate::crystal::{f_op, s_op};
use crate::enumerate::{enumerate_sst_with_content, TableauSet};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::partition::Partition;
use crate::perm::{lcm_all, Permutation};
use crate::tableau::{Content, Entry, Tableau};

/// The Bender–Knuth involution `σ_i`.
///
/// An `i` is free unless an `i+1` sits directly below it; an `i+1` is free unless an
/// `i` sits directly above it. In each row the free letters form one contiguous block
/// `i^a (i+1)^b`, which is rewritten as `i^b (i+1)^a`.
pub fn bender_knuth(t: &Tableau, i: usize) -> Tableau {
    let n = t.alphabet_bound();
    assert!(i >= 1 && i < n, "Bender–Knuth index {i} outside 1..={}", n.saturating_sub(1));
    let (lo, hi) = (i as Entry, (i + 1) as Entry);
    let mut out = t.clone();
    for r in 0..t.rows().len() {
        let row = &t.rows()[r];
        let mut free = Vec::new();
        let mut free_lo = 0;
        for (c, &e) in row.iter().enumerate() {
            let is_free = if e == lo {
                t.get((r + 1, c)) != Some(hi)
            } else if e == hi {
                r == 0 || t.get((r - 1, c)) != Some(lo)
            } else {
                false
            };
            if is_free {
                free.push(c);
                if e == lo {
                    free_lo += 1;
                }
            }
        }
        let free_hi = free.len() - free_lo;
        for (k, &c) in free.iter().enumerate() {
            out.rows_mut()[r][c] = if k < free_hi { lo } else { hi };
        }
    }
    out
}

/// `σ_1 σ_2 ⋯ σ_{n-1}` (`σ_{n-1}` acts first).
pub fn promote_via_bender_knuth(t: &Tableau) -> Tableau {
    let n = t.alphabet_bound();
    (1..n).rev().fold(t.clone(), |cur, i| bender_knuth(&cur, i))
}

/// One picture of a promotion in progress; `None` marks a dot.
pub type Frame = Vec<Vec<Option<Entry>>>;

fn slide_frames(t: &Tableau, record: bool) -> (Tableau, Vec<Frame>) {
    let n = t.alphabet_bound() as Entry;
    let mut grid: Frame = t.rows().iter().map(|row| row.iter().map(|&e| Some(e)).collect()).collect();
    let mut frames = Vec::new();
    if record {
        frames.push(grid.clone());
    }
    // the n's form a horizontal strip, so columns are distinct; leftmost dot slides first
    let mut dots: Vec<(usize, usize)> = Vec::new();
    for (r, row) in grid.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            if *cell == Some(n) {
                *cell = None;
                dots.push((r, c));
            }
        }
    }
    dots.sort_by_key(|&(r, c)| (c, r));
    if record && !dots.is_empty() {
        frames.push(grid.clone());
    }
    for &(mut r, mut c) in &dots {
        loop {
            let above = if r > 0 { grid[r - 1][c] } else { None };
            let left = if c > 0 { grid[r][c - 1] } else { None };
            match (above, left) {
                (None, None) => break,
                (Some(a), Some(l)) if a >= l => {
                    grid[r][c] = Some(a);
                    grid[r - 1][c] = None;
                    r -= 1;
                }
                (Some(a), None) => {
                    grid[r][c] = Some(a);
                    grid[r - 1][c] = None;
                    r -= 1;
                }
                (_, Some(l)) => {
                    grid[r][c] = Some(l);
                    grid[r][c - 1] = None;
                    c -= 1;
                }
            }
        }
        if record {
            frames.push(grid.clone());
        }
    }
    let rows: Vec<Vec<Entry>> = grid.iter().map(|row| row.iter().map(|e| e.map_or(1, |v| v + 1)).collect()).collect();
    let out = Tableau::from_rows_unchecked(t.shape().clone(), t.alphabet_bound(), rows);
    debug_assert!(out.is_semistandard(), "promotion produced {out:?}");
    if record {
        frames.push(out.rows().iter().map(|row| row.iter().map(|&e| Some(e)).collect()).collect());
    }
    (out, frames)
}

/// Promotion `pr`: dot out the `n`s, slide the dots to the northwest corner by jeu de
/// taquin (left to right), then fill the dots with 1 and increment everything else.
pub fn promote(t: &Tableau) -> Tableau {
    slide_frames(t, false).0
}

/// The successive pictures of `promote`: `T`, the dotted tableau (when `T` contains
/// an `n`), one frame per completed slide, and `pr(T)`.
pub fn promotion_frames(t: &Tableau) -> Vec<Frame> {
    slide_frames(t, true).1
}

pub fn render_frame(frame: &Frame) -> String {
    frame
        .iter()
        .map(|row| {
            row.iter().map(|e| e.map_or_else(|| "•".to_string(), |v| v.to_string())).collect::<Vec<_>>().join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn promote_power(t: &Tableau, k: usize) -> Tableau {
    (0..k).fold(t.clone(), |cur, _| promote(&cur))
}

/// The permutation of an enumerated carrier induced by `pr`.
pub fn promotion_permutation(set: &TableauSet) -> Result<Permutation> {
    set.permutation(promote)
}

/// Orbit `𝕆_pr(T)` data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromotionOrbit {
    pub representative: Tableau,
    pub length: usize,
}

pub fn promotion_orbits(set: &TableauSet) -> Result<Vec<PromotionOrbit>> {
    let perm = promotion_permutation(set)?;
    Ok(perm
        .cycles()
        .into_iter()
        .map(|cycle| PromotionOrbit { representative: set.get(cycle[0]).clone(), length: cycle.len() })
        .collect())
}

/// `𝔬_λ(α)`: the order of `pr^n` restricted to `SST_n(λ, α)`.
pub fn order_of_prn_on_content(shape: &Partition, n: usize, alpha: &Content) -> Result<u64> {
    let class = enumerate_sst_with_content(shape, n, alpha)?;
    if class.is_empty() {
        return Err(Error::EmptyContentClass(alpha.0.clone()));
    }
    let set = TableauSet::from_tableaux(shape, n, class, Execution::default());
    Ok(set.permutation(|t| promote_power(t, n))?.order())
}

/// Brute-force order of `pr` on `SST_n(λ)`: the lcm of its orbit lengths.
pub fn order_of_pr(shape: &Partition, n: usize) -> Result<u64> {
    Ok(promotion_permutation(&TableauSet::new(shape, n)?)?.order())
}

/// Order of `pr` on a hook `(N-m, 1^m)` from the closed formula: `n` when `n = m+1`,
/// else `n · lcm{m+1, …, min(n, N) - 1}`.
///
/// The formula is stated for hooks with a leg (`m ≥ 1`) and returns `None` for one-row
/// shapes. There `pr` rotates the content, so its order is `n`, which the formula
/// misses as soon as `min(n, N) ≥ 3`.
pub fn hook_order_formula(size: usize, leg: usize, n: usize) -> Option<u64> {
    assert!(n > leg, "hook with leg {leg} needs n >= {}", leg + 1);
    if leg == 0 {
        return None;
    }
    if n == leg + 1 {
        return Some(n as u64);
    }
    Some(n as u64 * lcm_all((leg + 1..n.min(size)).map(|k| k as u64)))
}

/// Closed-form order of `pr^n|_α` on a hook with leg `m ≥ 1`: 1 if `nz(α) = m+1`, else
/// `nz(α) - 1`. `None` for one-row shapes, whose content classes are single tableaux.
pub fn hook_class_order_formula(leg: usize, nonzero: usize) -> Option<u64> {
    if leg == 0 {
        None
    } else if nonzero == leg + 1 {
        Some(1)
    } else {
        Some(nonzero as u64 - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContentOrder {
    pub content: Content,
    pub order: u64,
}

/// Orders of `pr`, of `pr^n`, and of `pr^n` on each content class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    /// `𝔬_λ(α)` for every `α ∈ cont(λ)`, in content order.
    pub per_content: Vec<ContentOrder>,
    pub total_order_pr: u64,
    pub total_order_prn: u64,
    /// `n · lcm{𝔬_λ(α) | α ∈ cont⁺(λ)}`.
    pub factored_order: u64,
}

impl OrderReport {
    pub fn order_for(&self, alpha: &Content) -> Option<u64> {
        self.per_content.iter().find(|c| &c.content == alpha).map(|c| c.order)
    }
}

pub fn order_report(set: &TableauSet) -> Result<OrderReport> {
    let n = set.alphabet_bound();
    let pr = promotion_permutation(set)?;
    let prn = pr.pow(n as u64);
    let contents: Vec<Content> = set.map(Tableau::content);
    let mut classes: std::collections::BTreeMap<Content, Vec<usize>> = Default::default();
    for (i, c) in contents.into_iter().enumerate() {
        classes.entry(c).or_default().push(i);
    }
    let per_content = classes
        .iter()
        .map(|(content, idx)| Ok(ContentOrder { content: content.clone(), order: prn.restrict(idx)?.order() }))
        .collect::<Result<Vec<_>>>()?;
    let factored_order =
        n as u64 * lcm_all(per_content.iter().filter(|c| c.content.is_weakly_decreasing()).map(|c| c.order));
    Ok(OrderReport { per_content, total_order_pr: pr.order(), total_order_prn: prn.order(), factored_order })
}

/// A failed commutation instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub tableau: Tableau,
    /// The crystal index involved, when the check ranges over several.
    pub index: Option<usize>,
    pub lhs: Option<Tableau>,
    pub rhs: Option<Tableau>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub holds: bool,
    pub checked: usize,
    pub mismatches: usize,
    /// First failure in canonical order.
    pub counterexample: Option<Counterexample>,
}

/// Compares two partial operators elementwise; both `None` agree, exactly one `None` does not.
fn compare_on<F>(set: &TableauSet, indices: &[Option<usize>], sides: F) -> CommutationReport
where
    F: Fn(&Tableau, Option<usize>) -> (Option<Tableau>, Option<Tableau>) + Sync + Send,
{
    let jobs: Vec<(usize, Option<usize>)> = (0..set.len()).flat_map(|t| indices.iter().map(move |&i| (t, i))).collect();
    let results = set.execution().map(&jobs, |&(t, i)| {
        let (lhs, rhs) = sides(set.get(t), i);
        (lhs != rhs).then(|| Counterexample { tableau: set.get(t).clone(), index: i, lhs, rhs })
    });
    let mismatches = results.iter().filter(|r| r.is_some()).count();
    CommutationReport {
        holds: mismatches == 0,
        checked: jobs.len(),
        mismatches,
        counterexample: results.into_iter().flatten().next(),
    }
}

/// `𝕤_1 ∘ pr² = pr² ∘ 𝕤_{n-1}` on every element.
pub fn check_pr2_commutation_on(set: &TableauSet) -> CommutationReport {
    let n = set.alphabet_bound();
    assert!(n >= 2, "needs n >= 2");
    compare_on(set, &[None], |t, _| (Some(s_op(&promote_power(t, 2), 1)), Some(promote_power(&s_op(t, n - 1), 2))))
}

pub fn check_pr2_commutation(shape: &Partition, n: usize) -> Result<CommutationReport> {
    Ok(check_pr2_commutation_on(&TableauSet::new(shape, n)?))
}

/// `f̃_1 ∘ pr²` against `pr² ∘ f̃_{n-1}`.
pub fn check_f_pr2_commutation_on(set: &TableauSet) -> CommutationReport {
    let n = set.alphabet_bound();
    assert!(n >= 2, "needs n >= 2");
    compare_on(set, &[None], |t, _| (f_op(&promote_power(t, 2), 1), f_op(t, n - 1).map(|u| promote_power(&u, 2))))
}

pub fn check_f_pr2_commutation(shape: &Partition, n: usize) -> Result<CommutationReport> {
    Ok(check_f_pr2_commutation_on(&TableauSet::new(shape, n)?))
}

/// `𝕤_i ∘ pr^n = pr^n ∘ 𝕤_i` for every `i ∈ 1..n`.
pub fn check_prn_si_commutation_on(set: &TableauSet) -> CommutationReport {
    let n = set.alphabet_bound();
    let indices: Vec<Option<usize>> = (1..n).map(Some).collect();
    compare_on(set, &indices, |t, i| {
        let i = i.expect("index");
        (Some(s_op(&promote_power(t, n), i)), Some(promote_power(&s_op(t, i), n)))
    })
}

pub fn check_prn_si_commutation(shape: &Partition, n: usize) -> Result<CommutationReport> {
    Ok(check_prn_si_commutation_on(&TableauSet::new(shape, n)?))
}

/// `𝕤_{i+1} ∘ pr = pr ∘ 𝕤_i` for `i ∈ 1..n-1`.
pub fn check_pr_shift_commutation_on(set: &TableauSet) -> CommutationReport {
    let n = set.alphabet_bound();
    let indices: Vec<Option<usize>> = (1..n.saturating_sub(1)).map(Some).collect();
    compare_on(set, &indices, |t, i| {
        let i = i.expect("index");
        (Some(s_op(&promote(t), i + 1)), Some(promote(&s_op(t, i))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(s: &str, n: usize) -> Tableau {
        Tableau::parse_compact(s, n).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn promotion_example() {
        let t = tab("1 1 2 / 3 3 4 / 4", 4);
        assert_eq!(promote(&t), tab("1 1 3 / 2 2 4 / 4", 4));
        let frames: Vec<String> = promotion_frames(&t).iter().map(render_frame).collect();
        assert_eq!(
            frames,
            vec!["1 1 2\n3 3 4\n4", "1 1 2\n3 3 •\n•", "• 1 2\n1 3 •\n3", "• • 2\n1 1 3\n3", "1 1 3\n2 2 4\n4",]
        );
    }

    #[test]
    fn promotion_without_top_letter_increments() {
        assert_eq!(promote(&tab("1 2 / 3", 4)), tab("2 3 / 4", 4));
    }

    #[test]
    fn bender_knuth_examples() {
        assert_eq!(bender_knuth(&tab("1 1 2", 3), 1), tab("1 2 2", 3));
        let col = tab("1 / 2", 2);
        assert_eq!(bender_knuth(&col, 1), col);
        let t = tab("1 1 2 / 2", 2);
        assert_eq!(bender_knuth(&t, 1), t);
        assert_eq!(bender_knuth(&tab("1 1 1 / 2", 2), 1), tab("1 2 2 / 2", 2));
    }

    #[test]
    fn bender_knuth_composite_matches_promotion() {
        for (shape, n) in [(p(&[3, 3, 1]), 4), (p(&[2, 1]), 3), (p(&[3, 2, 1]), 5), (p(&[2, 2, 2, 1]), 6)] {
            for t in TableauSet::new(&shape, n).unwrap().tableaux() {
                assert_eq!(promote(t), promote_via_bender_knuth(t), "{}", t.compact());
                assert_eq!(bender_knuth(&bender_knuth(t, 1), 1), *t);
            }
        }
    }

    #[test]
    fn non_commutation_witnesses() {
        let t = tab("1 2 / 2", 3);
        let f2 = f_op(&t, 2).unwrap();
        assert_eq!(promote_power(&f2, 2), tab("1 3 / 2", 3));
        assert_eq!(f_op(&promote_power(&t, 2), 1), Some(tab("1 2 / 3", 3)));
    }

    #[test]
    fn example_cycles_under_pr_n() {
        let t = tab("1 1 / 2 2 / 3 4 / 5", 6);
        assert_eq!(promote_power(&t, 6), tab("1 1 / 2 2 / 3 5 / 4", 6));
        assert_eq!(promote_power(&t, 12), t);
        let u = tab("1 1 / 2 3 / 4 5 / 6", 6);
        assert_eq!(promote_power(&u, 6), tab("1 1 / 2 4 / 3 6 / 5", 6));
        assert_eq!(promote_power(&u, 12), u);
        assert_eq!(promote_power(&u, 0), u);
    }

    #[test]
    fn content_class_orders() {
        let l = p(&[2, 2, 2, 1]);
        assert_eq!(order_of_prn_on_content(&l, 6, &Content(vec![2, 2, 2, 1, 0, 0])).unwrap(), 1);
        assert_eq!(order_of_prn_on_content(&l, 6, &Content(vec![2, 2, 1, 1, 1, 0])).unwrap(), 2);
        assert_eq!(order_of_prn_on_content(&l, 6, &Content(vec![2, 1, 1, 1, 1, 1])).unwrap(), 6);
        assert!(order_of_prn_on_content(&l, 6, &Content(vec![7, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(order_of_pr(&p(&[2, 2, 2, 1]), 6).unwrap(), 36);
        assert_eq!(order_of_pr(&p(&[3, 1]), 3).unwrap(), 6);
        assert_eq!(hook_order_formula(4, 1, 3), Some(6));
        assert_eq!(hook_order_formula(3, 0, 4), None);
        assert_eq!(order_of_pr(&p(&[3]), 4).unwrap(), 4);
        assert_eq!(order_of_pr(&p(&[2, 1, 1]), 3).unwrap(), 3);
        assert_eq!(hook_order_formula(4, 2, 3), Some(3));
        let report = order_report(&TableauSet::new(&p(&[2, 2, 2, 1]), 6).unwrap()).unwrap();
        assert_eq!(report.total_order_pr, 36);
        assert_eq!(report.total_order_prn, 6);
        assert_eq!(report.factored_order, 36);
    }

    #[test]
    fn pr2_commutation_examples() {
        assert!(check_pr2_commutation(&p(&[3, 1]), 4).unwrap().holds);
        assert!(check_pr2_commutation(&p(&[2, 2, 1]), 4).unwrap().holds);
        let report = check_pr2_commutation(&p(&[3, 2, 1]), 4).unwrap();
        assert!(!report.holds);
        let cx = report.counterexample.unwrap();
        assert_eq!(cx.tableau, tab("1 1 4 / 2 3 / 3", 4));
        assert_eq!(cx.lhs, Some(tab("1 2 3 / 2 3 / 4", 4)));
        assert_eq!(cx.rhs, Some(tab("1 2 3 / 2 4 / 3", 4)));
    }

    #[test]
    fn f_commutation_examples() {
        let report = check_f_pr2_commutation(&p(&[2, 1]), 3).unwrap();
        assert!(!report.holds);
        assert!(check_f_pr2_commutation(&p(&[1]), 2).unwrap().holds);
    }

    #[test]
    fn prn_commutation_examples() {
        assert!(check_prn_si_commutation(&p(&[3, 1]), 4).unwrap().holds);
        assert!(check_prn_si_commutation(&p(&[2, 2, 1]), 5).unwrap().holds);
        assert!(check_prn_si_commutation(&p(&[2, 2, 2, 1]), 6).unwrap().holds);
    }
}
