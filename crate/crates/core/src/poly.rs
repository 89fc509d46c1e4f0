//! Exact integer Laurent polynomials in `q`, and in `q, t`.
//!
//! Text form: terms in ascending exponent order joined by ` + ` / ` - `, each written
//! `c`, `c*q` or `c*q^e` with an explicit coefficient (`1 + 2*q + 1*q^2`). Bivariate
//! terms order by `(q, t)` exponent and add `*t` / `*t^k` factors. The zero polynomial
//! prints as `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `Σ c_e q^e` with integer exponents; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    /// From a dense coefficient list starting at `q^0`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(c, e as i64);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Dense coefficients from `q^0` to the top degree; `None` if a negative exponent occurs.
    pub fn to_coeffs(&self) -> Option<Vec<i64>> {
        if self.min_degree().is_some_and(|e| e < 0) {
            return None;
        }
        let top = match self.max_degree() {
            Some(d) => d as usize,
            None => return Some(Vec::new()),
        };
        let mut v = vec![0; top + 1];
        for (e, c) in self.terms() {
            v[e as usize] = c;
        }
        Some(v)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `q ↦ q^d`.
    pub fn substitute_power(&self, d: i64) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.add_term(c, e * d);
        }
        p
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Representative modulo `q^n - 1` with exponents in `[0, n)`.
    pub fn reduce_mod_qn_minus_1(&self, n: u64) -> Self {
        assert!(n >= 1, "modulus q^n - 1 needs n >= 1");
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.add_term(c, e.rem_euclid(n as i64));
        }
        p
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);
forward_owned!(BivariatePoly, Add add, Mul mul);

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: i64, factors: &[(&str, i64)]) -> fmt::Result {
    if first {
        if coeff < 0 {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if coeff < 0 { " - " } else { " + " })?;
    }
    write!(f, "{}", coeff.unsigned_abs())?;
    for &(var, e) in factors {
        match e {
            0 => {}
            1 => write!(f, "*{var}")?,
            e => write!(f, "*{var}^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            write_term(f, k == 0, c, &[("q", e)])?;
        }
        Ok(())
    }
}

/// Splits a signed sum `a + b - c` into `(sign, term)` pieces.
fn split_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    let mut expecting_term = true;
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            '+' | '-' if expecting_term => {
                if ch == '-' {
                    sign = -sign;
                }
            }
            '+' | '-' if cur.ends_with('^') => cur.push(ch),
            '+' | '-' => {
                out.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
                expecting_term = true;
            }
            c if c.is_whitespace() => {}
            c => {
                cur.push(c);
                expecting_term = false;
            }
        }
        i += 1;
    }
    if expecting_term {
        return Err(Error::Parse(format!("dangling operator in {s:?}")));
    }
    out.push((sign, cur));
    Ok(out)
}

/// Parses `c*q^a*t^b`-style monomials; returns the coefficient and per-variable exponents.
fn parse_monomial(term: &str, vars: &[char]) -> Result<(i64, Vec<i64>)> {
    let mut coeff: i64 = 1;
    let mut exps = vec![0i64; vars.len()];
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {term:?}")));
        }
        let first = factor.chars().next().unwrap();
        if let Some(slot) = vars.iter().position(|&v| v == first) {
            let rest = &factor[first.len_utf8()..];
            let e = if rest.is_empty() {
                1
            } else if let Some(num) = rest.strip_prefix('^') {
                num.parse::<i64>().map_err(|e| Error::Parse(format!("exponent {num:?}: {e}")))?
            } else {
                return Err(Error::Parse(format!("bad factor {factor:?}")));
            };
            exps[slot] += e;
        } else {
            let c = factor.parse::<i64>().map_err(|e| Error::Parse(format!("coefficient {factor:?}: {e}")))?;
            coeff *= c;
        }
    }
    Ok((coeff, exps))
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Self::zero();
        for (sign, term) in split_terms(s)? {
            let (c, e) = parse_monomial(&term, &['q'])?;
            p.add_term(sign * c, e[0]);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `Σ c_{a,b} q^a t^b`; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(i64, i64), i64>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, coeff: i64, q_exp: i64, t_exp: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((q_exp, t_exp)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&(q_exp, t_exp));
        }
    }

    /// `f(q) · g(t)`.
    pub fn product(f_q: &LaurentPoly, g_t: &LaurentPoly) -> Self {
        let mut p = Self::zero();
        for (a, c1) in f_q.terms() {
            for (b, c2) in g_t.terms() {
                p.add_term(c1 * c2, a, b);
            }
        }
        p
    }

    pub fn coeff(&self, q_exp: i64, t_exp: i64) -> i64 {
        self.terms.get(&(q_exp, t_exp)).copied().unwrap_or(0)
    }

    /// Terms as `(q exponent, t exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The specialization `t = 1`.
    pub fn at_t_one(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (a, _, c) in self.terms() {
            p.add_term(c, a);
        }
        p
    }

    /// The specialization `q = 1`, as a polynomial in `t`.
    pub fn at_q_one(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (_, b, c) in self.terms() {
            p.add_term(c, b);
        }
        p
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut p = self.clone();
        for (a, b, c) in rhs.terms() {
            p.add_term(c, a, b);
        }
        p
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                p.add_term(c1 * c2, a1 + a2, b1 + b2);
            }
        }
        p
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (a, b, c)) in self.terms().enumerate() {
            write_term(f, k == 0, c, &[("q", a), ("t", b)])?;
        }
        Ok(())
    }
}

impl FromStr for BivariatePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Self::zero();
        for (sign, term) in split_terms(s)? {
            let (c, e) = parse_monomial(&term, &['q', 't'])?;
            p.add_term(sign * c, e[0], e[1]);
        }
        Ok(p)
    }
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_text() {
        let p = LaurentPoly::from_coeffs(&[1, 2, 0, 1]);
        assert_eq!(p.to_string(), "1 + 2*q + 1*q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let m = &LaurentPoly::monomial(-3, -2) + &LaurentPoly::monomial(1, 1);
        assert_eq!(m.to_string(), "-3*q^-2 + 1*q");
        assert_eq!("-3*q^-2 + 1*q".parse::<LaurentPoly>().unwrap(), m);
        assert_eq!("q^2 - 2 + q".parse::<LaurentPoly>().unwrap(), LaurentPoly::from_coeffs(&[-2, 1, 1]));
    }

    #[test]
    fn bivariate_text() {
        let mut p = BivariatePoly::zero();
        p.add_term(2, 0, 1);
        p.add_term(1, 3, 0);
        p.add_term(-1, 3, 2);
        assert_eq!(p.to_string(), "2*t + 1*q^3 - 1*q^3*t^2");
        assert_eq!(p.to_string().parse::<BivariatePoly>().unwrap(), p);
        assert_eq!(p.at_t_one(), LaurentPoly::from_coeffs(&[2]));
    }

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::from_coeffs(&[1, 1]);
        let b = &a * &a;
        assert_eq!(b, LaurentPoly::from_coeffs(&[1, 2, 1]));
        assert!((&b - &b).is_zero());
        assert_eq!(a.substitute_power(3), LaurentPoly::from_coeffs(&[1, 0, 0, 1]));
        assert_eq!(b.at_one(), 4);
    }

    #[test]
    fn reduction_mod_qn_minus_1() {
        assert_eq!(LaurentPoly::monomial(1, 5).reduce_mod_qn_minus_1(5), LaurentPoly::one());
        assert_eq!(LaurentPoly::monomial(1, -1).reduce_mod_qn_minus_1(5), LaurentPoly::monomial(1, 4));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-50i64..50, -6i64..12), 0..8).prop_map(|terms| {
            let mut p = LaurentPoly::zero();
            for (c, e) in terms {
                p.add_term(c, e);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_poly()) {
            prop_assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        }

        #[test]
        fn reduction_is_idempotent(p in arb_poly(), n in 1u64..9) {
            let r = p.reduce_mod_qn_minus_1(n);
            prop_assert_eq!(r.reduce_mod_qn_minus_1(n), r.clone());
            prop_assert!(r.terms().all(|(e, _)| (0..n as i64).contains(&e)));
            prop_assert_eq!(r.at_one(), p.at_one());
        }
    }
}
