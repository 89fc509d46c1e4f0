//! Exact arithmetic in `Z[ξ_L]`, elements reduced modulo the cyclotomic polynomial `Φ_L`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::perm::{gcd, lcm};
use crate::poly::{BivariatePoly, LaurentPoly};

/// Dense integer polynomial, lowest degree first.
type Dense = Vec<i64>;

fn trim(mut p: Dense) -> Dense {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial; panics if the remainder is nonzero.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Dense {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
        return vec![];
    }
    let mut quot = vec![0; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

fn compute_cyclotomic(order: u64) -> Dense {
    // x^L - 1 = Π_{d | L} Φ_d
    let mut p = vec![0i64; order as usize + 1];
    p[0] = -1;
    p[order as usize] = 1;
    for d in 1..order {
        if order.is_multiple_of(d) {
            p = div_exact_monic(&p, &cyclotomic_poly(d));
        }
    }
    trim(p)
}

/// Coefficients of `Φ_L`, lowest degree first (cached).
pub fn cyclotomic_poly(order: u64) -> Dense {
    static CACHE: OnceLock<Mutex<HashMap<u64, Dense>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&order) {
        return p.clone();
    }
    assert!(order >= 1, "cyclotomic polynomial of order 0");
    let p = compute_cyclotomic(order);
    cache.lock().expect("cyclotomic cache poisoned").insert(order, p.clone());
    p
}

/// Euler's totient, the degree of `Φ_L`.
pub fn totient(order: u64) -> u64 {
    (1..=order).filter(|&k| gcd(k, order) == 1).count() as u64
}

/// An element of `Z[ξ_L]` in its unique reduced form of length `φ(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicValue {
    order: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicValue {
    /// `Σ c · ξ_L^e` for `(e, c)` pairs; exponents are taken mod `L`.
    pub fn from_powers(order: u64, powers: impl IntoIterator<Item = (i64, i64)>) -> Self {
        assert!(order >= 1, "root of unity of order 0");
        let mut dense = vec![0i64; order as usize];
        for (e, c) in powers {
            dense[e.rem_euclid(order as i64) as usize] += c;
        }
        Self::reduce(order, dense)
    }

    pub fn integer(order: u64, value: i64) -> Self {
        Self::from_powers(order, [(0, value)])
    }

    fn reduce(order: u64, mut dense: Dense) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        for k in (deg..dense.len()).rev() {
            let c = dense[k];
            if c != 0 {
                for (j, &d) in phi.iter().enumerate() {
                    dense[k - deg + j] -= c * d;
                }
            }
        }
        dense.truncate(deg);
        dense.resize(deg, 0);
        Self { order, coeffs: dense }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `Some(v)` when the element is the rational integer `v`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs.iter().skip(1).all(|&c| c == 0) {
            Some(self.coeffs.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// The same element viewed in `Z[ξ_M]` for a multiple `M` of the order.
    pub fn lift(&self, order: u64) -> Self {
        assert_eq!(order % self.order, 0, "can only lift to a multiple of the order");
        let step = (order / self.order) as i64;
        Self::from_powers(order, self.coeffs.iter().enumerate().map(|(e, &c)| (e as i64 * step, c)))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.order, other.order);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Self { order: a.order, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut dense = vec![0i64; a.order as usize];
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                dense[(i + j) % a.order as usize] += x * y;
            }
        }
        Self::reduce(a.order, dense)
    }
}

/// `f(ξ_d)` for a primitive `d`-th root of unity `ξ_d`.
pub fn eval_at_root_of_unity(f: &LaurentPoly, order: u64) -> CyclotomicValue {
    CyclotomicValue::from_powers(order, f.terms())
}

/// `f(ω^a)` where `ω` is a primitive `n`-th root of unity, computed in the smallest
/// cyclotomic ring containing `ω^a`.
pub fn eval_at_power_of_root(f: &LaurentPoly, n: u64, a: u64) -> CyclotomicValue {
    let g = gcd(a % n, n);
    let order = n / g;
    let step = ((a % n) / g) as i64;
    CyclotomicValue::from_powers(order, f.terms().map(|(e, c)| (e * step, c)))
}

/// `f(ω_n^a, ω_o^b)` with fixed primitive roots `ω_n = ξ_M^{M/n}`, `ω_o = ξ_M^{M/o}`,
/// `M = lcm(n, o)`; the value is reduced into `Z[ξ_L]` for the minimal `L`.
pub fn eval_bivariate_at_roots(f: &BivariatePoly, (n, a): (u64, u64), (o, b): (u64, u64)) -> CyclotomicValue {
    let m = lcm(n, o);
    let eq = (a % n) * (m / n);
    let et = (b % o) * (m / o);
    let g = gcd(gcd(eq, et), m);
    let order = m / g;
    let (sq, st) = ((eq / g) as i64, (et / g) as i64);
    CyclotomicValue::from_powers(order, f.terms().map(|(qa, tb, c)| (qa * sq + tb * st, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for l in 1..40 {
            assert_eq!(cyclotomic_poly(l).len() as u64 - 1, totient(l));
        }
    }

    #[test]
    fn geometric_sum_vanishes() {
        for n in 2..10 {
            let f = LaurentPoly::from_coeffs(&vec![1; n as usize]);
            assert_eq!(eval_at_root_of_unity(&f, n).as_integer(), Some(0));
        }
    }

    #[test]
    fn order_one_is_coefficient_sum() {
        let f = LaurentPoly::from_coeffs(&[3, -1, 4, 1, 5]).shift(-2);
        assert_eq!(eval_at_root_of_unity(&f, 1).as_integer(), Some(12));
    }

    #[test]
    fn non_integer_values_are_detected() {
        // 1 + q at a primitive cube root is -ξ², not an integer
        let f = LaurentPoly::from_coeffs(&[1, 1]);
        assert_eq!(eval_at_root_of_unity(&f, 3).as_integer(), None);
        // q^2 at i is -1
        assert_eq!(eval_at_root_of_unity(&LaurentPoly::monomial(1, 2), 4).as_integer(), Some(-1));
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let f = LaurentPoly::from_coeffs(&[1, 2, 0, -1]);
        let g = LaurentPoly::from_coeffs(&[0, 1, 1, 3, 1]).shift(-1);
        for d in 1..13 {
            let lhs = eval_at_root_of_unity(&(&f * &g), d);
            let rhs = eval_at_root_of_unity(&f, d).mul(&eval_at_root_of_unity(&g, d));
            assert_eq!(lhs, rhs, "d = {d}");
            let sum = eval_at_root_of_unity(&(&f + &g), d);
            assert_eq!(sum, eval_at_root_of_unity(&f, d).add(&eval_at_root_of_unity(&g, d)));
        }
    }

    #[test]
    fn power_of_root_uses_minimal_order() {
        let f = LaurentPoly::from_coeffs(&[1, 1, 1, 1, 1, 1]);
        let v = eval_at_power_of_root(&f, 6, 2);
        assert_eq!(v.order(), 3);
        assert_eq!(v.as_integer(), Some(0));
        assert_eq!(eval_at_power_of_root(&f, 6, 0).as_integer(), Some(6));
    }

    #[test]
    fn bivariate_evaluation() {
        // (1 + q)(1 + t) at q = -1, t = anything gives 0
        let f = BivariatePoly::product(&LaurentPoly::from_coeffs(&[1, 1]), &LaurentPoly::from_coeffs(&[1, 1]));
        assert_eq!(eval_bivariate_at_roots(&f, (2, 1), (3, 1)).as_integer(), Some(0));
        assert_eq!(eval_bivariate_at_roots(&f, (2, 0), (2, 1)).as_integer(), Some(0));
        assert_eq!(eval_bivariate_at_roots(&f, (2, 0), (3, 0)).as_integer(), Some(4));
    }

    #[test]
    fn reduction_mod_qn_minus_1_preserves_values() {
        let f = LaurentPoly::from_coeffs(&[2, 0, 5, 1, 1, 7, 3, 0, 1]).shift(-3);
        for n in 1..8u64 {
            let r = f.reduce_mod_qn_minus_1(n);
            for a in 0..n {
                assert_eq!(eval_at_power_of_root(&f, n, a), eval_at_power_of_root(&r, n, a));
            }
        }
    }
}
