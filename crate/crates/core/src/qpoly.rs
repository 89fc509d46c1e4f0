//! Specializations of Schur and monomial polynomials, q-binomials, Kostka–Foulkes
//! polynomials via charge, and the bivariate sieving polynomial for hooks.

use std::collections::BTreeMap;

use crate::enumerate::{enumerate_sst_with_content, TableauSet};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::poly::{BivariatePoly, LaurentPoly};
use crate::tableau::{Content, Entry, Tableau};

/// `s_λ(q^{e_1}, …, q^{e_n})` summed over an enumerated carrier.
pub fn schur_specialization(set: &TableauSet, exponents: &[i64]) -> LaurentPoly {
    assert_eq!(exponents.len(), set.alphabet_bound(), "one exponent per variable");
    let mut p = LaurentPoly::zero();
    for e in set.map(|t| t.content().0.iter().zip(exponents).map(|(&c, &x)| c as i64 * x).sum::<i64>()) {
        p.add_term(1, e);
    }
    p
}

pub fn principal_exponents(n: usize) -> Vec<i64> {
    (0..n as i64).collect()
}

/// `x_k = q^{k(k-1)/2}`.
pub fn staircase_exponents(n: usize) -> Vec<i64> {
    (0..n as i64).map(|k| k * (k + 1) / 2).collect()
}

/// `s_λ(1, q, …, q^{n-1})`.
pub fn schur_principal(shape: &Partition, n: usize) -> Result<LaurentPoly> {
    Ok(schur_specialization(&TableauSet::new(shape, n)?, &principal_exponents(n)))
}

/// `s_λ(1, q, q^3, q^6, …)`.
pub fn schur_staircase(shape: &Partition, n: usize) -> Result<LaurentPoly> {
    Ok(schur_specialization(&TableauSet::new(shape, n)?, &staircase_exponents(n)))
}

/// Distinct rearrangements of `values`, in lexicographic order.
pub fn distinct_permutations(values: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = values.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `m_μ(1, q, …, q^{n-1})`.
pub fn monomial_principal(mu: &Partition, n: usize) -> Result<LaurentPoly> {
    if mu.length() > n {
        return Err(Error::TooManyParts { partition: mu.to_string(), n });
    }
    let mut p = LaurentPoly::zero();
    for beta in distinct_permutations(&mu.padded(n)) {
        p.add_term(1, beta.iter().enumerate().map(|(k, &b)| (k * b) as i64).sum());
    }
    Ok(p)
}

/// The Gaussian binomial `[a choose b]_q`; zero when `b > a`.
pub fn q_binomial(a: usize, b: usize) -> LaurentPoly {
    if b > a {
        return LaurentPoly::zero();
    }
    // row[k] = [r choose k]_q, built with [r k] = [r-1 k-1] + q^k [r-1 k]
    let mut row = vec![LaurentPoly::one()];
    for r in 1..=a {
        let mut next = Vec::with_capacity(r + 1);
        for k in 0..=r {
            let mut entry = LaurentPoly::zero();
            if k >= 1 {
                entry += &row[k - 1];
            }
            if k < r {
                entry += &row[k].shift(k as i64);
            }
            next.push(entry);
        }
        row = next;
    }
    row.swap_remove(b)
}

/// Lascoux–Schützenberger charge of a word whose content is a partition.
///
/// Standard subwords are extracted repeatedly: starting from the right end, scan
/// leftward for a 1, then continue leftward (cyclically) for a 2, and so on. Each
/// wrap-around raises the index by one; the charge is the sum of indices.
pub fn charge(word: &[Entry]) -> usize {
    let mut used = vec![false; word.len()];
    let mut remaining = word.len();
    let mut total = 0;
    while remaining > 0 {
        let mut pos = word.len();
        let mut index = 0;
        let mut letter: Entry = 1;
        loop {
            let found = (0..pos).rev().find(|&p| !used[p] && word[p] == letter).map(|p| (p, false)).or_else(|| {
                (pos.min(word.len())..word.len()).rev().find(|&p| !used[p] && word[p] == letter).map(|p| (p, true))
            });
            let Some((p, wrapped)) = found else { break };
            if wrapped {
                index += 1;
            }
            total += index;
            used[p] = true;
            remaining -= 1;
            pos = p;
            letter += 1;
        }
        assert!(letter > 1, "word content is not a partition");
    }
    total
}

/// Charge of a tableau's row reading word.
pub fn tableau_charge(t: &Tableau) -> usize {
    let word: Vec<Entry> = t.reading_word().map(|(_, e)| e).collect();
    charge(&word)
}

/// `K_{λ,μ}(t) = Σ_{T ∈ SST(λ, μ)} t^{charge(T)}`.
pub fn kostka_foulkes(shape: &Partition, mu: &Partition) -> Result<LaurentPoly> {
    if shape.size() != mu.size() {
        return Err(Error::SizeMismatch { left: shape.to_string(), right: mu.to_string() });
    }
    let n = mu.length();
    let alpha = Content(mu.parts().iter().map(|&p| p as u32).collect());
    let mut p = LaurentPoly::zero();
    for t in enumerate_sst_with_content(shape, n, &alpha)? {
        p.add_term(1, tableau_charge(&t) as i64);
    }
    Ok(p)
}

/// Exponent `-κ(μ) + m·μ'_1 - m(m+1)/2` relating the q-binomial of a hook content class
/// to its Kostka–Foulkes polynomial.
pub fn hook_kostka_shift(leg: usize, mu: &Partition) -> i64 {
    let m = leg as i64;
    -(mu.kappa() as i64) + m * mu.length() as i64 - m * (m + 1) / 2
}

/// Orders feeding the bivariate sieving polynomial of a hook.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HookOrders {
    /// `𝔬`, the order of `pr^n` on `SST_n(λ)`.
    pub group_order: u64,
    /// `𝔬_μ` for every partition content `μ` with `SST_n(λ, μ)` nonempty.
    pub class_orders: BTreeMap<Partition, u64>,
}

/// `S_λ(q,t) = q^{-κ(λ)} Σ_μ t^{A_μ} K_{λ,μ}(t^{𝔬/𝔬_μ}) m_μ(1, q, …, q^{n-1})`.
pub fn sieving_poly_bivariate(shape: &Partition, n: usize, orders: &HookOrders) -> Result<BivariatePoly> {
    sieving_poly_bivariate_with(shape, n, orders, kostka_foulkes)
}

/// As [`sieving_poly_bivariate`], with a caller-supplied Kostka–Foulkes source.
pub fn sieving_poly_bivariate_with(
    shape: &Partition,
    n: usize,
    orders: &HookOrders,
    kostka: impl Fn(&Partition, &Partition) -> Result<LaurentPoly>,
) -> Result<BivariatePoly> {
    let leg = shape.hook_leg().ok_or_else(|| Error::HypothesisNotMet(format!("{shape} is not a hook")))?;
    let size = shape.size() as u64;
    if crate::perm::gcd(n as u64, size) != 1 {
        return Err(Error::HypothesisNotMet(format!("gcd({n}, {size}) != 1")));
    }
    let mut total = BivariatePoly::zero();
    for mu in partitions_of(shape.size()) {
        if mu.length() > n {
            continue;
        }
        let k = kostka(shape, &mu)?;
        if k.is_zero() {
            continue;
        }
        let class_order = *orders
            .class_orders
            .get(&mu)
            .ok_or_else(|| Error::HypothesisNotMet(format!("no class order supplied for content {mu}")))?;
        if class_order == 0 || !orders.group_order.is_multiple_of(class_order) {
            return Err(Error::OrderNotDivisible { order: orders.group_order, class_order });
        }
        let d = (orders.group_order / class_order) as i64;
        let t_part = k.substitute_power(d).shift(d * hook_kostka_shift(leg, &mu));
        let q_part = monomial_principal(&mu, n)?.shift(-(shape.kappa() as i64));
        total = &total + &BivariatePoly::product(&q_part, &t_part);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn poly(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn principal_specializations() {
        let s = schur_principal(&p(&[2, 1, 1, 1]), 5).unwrap().shift(-6);
        assert_eq!(s, poly(&[1, 2, 3, 4, 4, 4, 3, 2, 1]));
        assert_eq!(schur_principal(&p(&[1]), 2).unwrap(), poly(&[1, 1]));
        assert_eq!(schur_principal(&p(&[2, 1]), 3).unwrap(), poly(&[0, 1, 2, 2, 2, 1]));
    }

    #[test]
    fn staircase_specializations() {
        let s = schur_staircase(&p(&[2, 1, 1, 1]), 5).unwrap().shift(-10);
        let expected = poly(&[1, 1, 0, 1, 1, 1, 1, 2, 1, 1, 4, 1, 1, 2, 1, 1, 1, 1, 0, 1, 1]);
        assert_eq!(s, expected);
        assert_eq!(schur_staircase(&p(&[1]), 2).unwrap(), poly(&[1, 1]));
        assert_eq!(schur_staircase(&p(&[1, 1]), 3).unwrap(), poly(&[0, 1, 0, 1, 1]));
    }

    #[test]
    fn monomial_specializations() {
        assert_eq!(monomial_principal(&p(&[1]), 2).unwrap(), poly(&[1, 1]));
        assert_eq!(monomial_principal(&p(&[2, 1]), 3).unwrap(), poly(&[0, 1, 2, 0, 2, 1]));
        assert_eq!(monomial_principal(&p(&[3]), 3).unwrap(), poly(&[1, 0, 0, 1, 0, 0, 1]));
        assert!(monomial_principal(&p(&[1, 1, 1]), 2).is_err());
        assert_eq!(distinct_permutations(&[1, 0, 1]).len(), 3);
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial(2, 1), poly(&[1, 1]));
        assert_eq!(q_binomial(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(5, 0), LaurentPoly::one());
        assert!(q_binomial(2, 3).is_zero());
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&[1, 2]), 1);
        assert_eq!(charge(&[2, 1]), 0);
        assert_eq!(charge(&[3, 1, 2]), 2);
        assert_eq!(charge(&[2, 1, 3]), 1);
        assert_eq!(charge(&[1, 1, 2]), 1);
    }

    #[test]
    fn kostka_foulkes_examples() {
        assert_eq!(kostka_foulkes(&p(&[3, 1]), &p(&[3, 1])).unwrap(), LaurentPoly::one());
        assert_eq!(kostka_foulkes(&p(&[2]), &p(&[1, 1])).unwrap(), poly(&[0, 1]));
        assert_eq!(kostka_foulkes(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), poly(&[0, 1, 1]));
        assert!(kostka_foulkes(&p(&[1, 1]), &p(&[2])).unwrap().is_zero());
        assert!(kostka_foulkes(&p(&[2]), &p(&[1])).is_err());
    }
}
