//! Exact verifiers for the cyclic and bicyclic sieving phenomena on tableaux.
//!
//! A CSP triple `(X, C, f)` is checked two independent ways. The primary route
//! reduces `f` modulo `q^n - 1` and compares it with `Σ a_l q^l`, where `a_l` counts
//! orbits whose stabilizer order divides `l`. The second route counts the fixed points of
//! every group element and compares them with `f` evaluated exactly at roots of unity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::crystal::{c_op, s_op};
use crate::cyclotomic::{eval_at_power_of_root, eval_bivariate_at_roots, CyclotomicValue};
use crate::enumerate::TableauSet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::partition::Partition;
use crate::perm::{gcd, Permutation};
use crate::poly::{BivariatePoly, LaurentPoly};
use crate::promotion::{hook_class_order_formula, promote, promote_power, promotion_permutation};
use crate::qpoly::{
    distinct_permutations, principal_exponents, q_binomial, schur_specialization, sieving_poly_bivariate_with,
    staircase_exponents, HookOrders,
};
use crate::tableau::{Content, Tableau};

/// The generator of a cyclic action on tableaux.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// The Coxeter operator `𝕔`.
    Coxeter,
    /// Promotion `pr`.
    Promotion,
    /// `pr^k`.
    PromotionPower(usize),
}

impl Generator {
    pub fn apply(self, t: &Tableau) -> Tableau {
        match self {
            Generator::Coxeter => c_op(t),
            Generator::Promotion => promote(t),
            Generator::PromotionPower(k) => promote_power(t, k),
        }
    }
}

/// A finite carrier with a cyclic group of the declared order acting through `generator`.
#[derive(Clone, Debug)]
pub struct CyclicActionSpec {
    pub carrier: TableauSet,
    pub generator: Generator,
    pub declared_order: u64,
}

impl CyclicActionSpec {
    pub fn new(carrier: TableauSet, generator: Generator, declared_order: u64) -> Self {
        Self { carrier, generator, declared_order }
    }

    /// The generator as a permutation, checked to be a bijection of order dividing the
    /// declared order.
    pub fn permutation(&self) -> Result<Permutation> {
        let generator = self.generator;
        let perm = self.carrier.permutation(move |t| generator.apply(t))?;
        if self.declared_order == 0 || !perm.pow(self.declared_order).is_identity() {
            return Err(Error::WrongOrder { declared: self.declared_order, actual: perm.order() });
        }
        Ok(perm)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub orbit_size: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointEntry {
    /// The group element `g^power`.
    pub power: u64,
    pub fixed_points: usize,
    /// `f(ω^power)` when it is a rational integer.
    pub evaluation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SievingReport {
    /// Orbit-census congruence verdict.
    pub verdict: bool,
    pub carrier_size: usize,
    pub declared_order: u64,
    pub orbit_census: Vec<CensusEntry>,
    /// `a_l` for `l = 0, …, n-1`.
    pub a_l: Vec<usize>,
    pub residue_poly: LaurentPoly,
    pub candidate_poly_reduced: LaurentPoly,
    pub fixed_point_table: Option<Vec<FixedPointEntry>>,
    /// Fixed-point / cyclotomic-evaluation verdict, when that route ran.
    pub fixed_point_verdict: Option<bool>,
}

impl SievingReport {
    /// Whether the two verification routes reached the same verdict.
    pub fn routes_agree(&self) -> bool {
        self.fixed_point_verdict.is_none_or(|v| v == self.verdict)
    }
}

fn census(perm: &Permutation) -> Vec<CensusEntry> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for len in perm.cycle_lengths() {
        *counts.entry(len).or_default() += 1;
    }
    counts.into_iter().map(|(orbit_size, count)| CensusEntry { orbit_size, count }).collect()
}

/// Checks a CSP triple through both routes.
pub fn verify_csp(spec: &CyclicActionSpec, f: &LaurentPoly) -> Result<SievingReport> {
    verify_csp_with(spec, f, true)
}

pub fn verify_csp_with(spec: &CyclicActionSpec, f: &LaurentPoly, cross_check: bool) -> Result<SievingReport> {
    let perm = spec.permutation()?;
    Ok(sieve_permutation(&perm, spec.declared_order, f, cross_check, spec.carrier.execution()))
}

/// Both CSP routes for a permutation generating a cyclic group of order `order`.
pub fn sieve_permutation(
    perm: &Permutation,
    order: u64,
    f: &LaurentPoly,
    cross_check: bool,
    exec: Execution,
) -> SievingReport {
    let orbit_census = census(perm);
    let a_l: Vec<usize> = (0..order)
        .map(|l| orbit_census.iter().filter(|e| l % (order / e.orbit_size as u64) == 0).map(|e| e.count).sum())
        .collect();
    let mut residue_poly = LaurentPoly::zero();
    for (l, &a) in a_l.iter().enumerate() {
        residue_poly.add_term(a as i64, l as i64);
    }
    let candidate_poly_reduced = f.reduce_mod_qn_minus_1(order);
    let verdict = residue_poly == candidate_poly_reduced;

    let (fixed_point_table, fixed_point_verdict) = if cross_check {
        let powers: Vec<u64> = (0..order).collect();
        let table: Vec<FixedPointEntry> = exec.map(&powers, |&k| FixedPointEntry {
            power: k,
            fixed_points: perm.pow(k).fixed_points(),
            evaluation: eval_at_power_of_root(f, order, k).as_integer(),
        });
        let ok = table.iter().all(|e| e.evaluation == Some(e.fixed_points as i64));
        (Some(table), Some(ok))
    } else {
        (None, None)
    };

    SievingReport {
        verdict,
        carrier_size: perm.len(),
        declared_order: order,
        orbit_census,
        a_l,
        residue_poly,
        candidate_poly_reduced,
        fixed_point_table,
        fixed_point_verdict,
    }
}

/// `q^{-κ(λ)} s_λ(1, q, …, q^{n-1})`.
pub fn principal_candidate(set: &TableauSet) -> LaurentPoly {
    let n = set.alphabet_bound();
    schur_specialization(set, &principal_exponents(n)).shift(-(set.shape().kappa() as i64))
}

/// `q^{-σ(λ)} s_λ(1, q, q^3, q^6, …)`.
pub fn staircase_candidate(set: &TableauSet) -> LaurentPoly {
    let n = set.alphabet_bound();
    schur_specialization(set, &staircase_exponents(n)).shift(-(set.shape().sigma_stat() as i64))
}

/// The hypothesis `ℓ(λ) < n` and `gcd(n, |λ|) = 1`, with a description of any failure.
pub fn coprime_hypothesis(shape: &Partition, n: usize) -> std::result::Result<(), String> {
    if shape.length() >= n {
        return Err(format!("ℓ({shape}) = {} is not < n = {n}", shape.length()));
    }
    if gcd(n as u64, shape.size() as u64) != 1 {
        return Err(format!("gcd({n}, {}) != 1", shape.size()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeOrbitReport {
    pub hypothesis_met: bool,
    pub hypothesis_note: Option<String>,
    pub all_free: bool,
    pub orbit_count: usize,
    pub census: Vec<CensusEntry>,
}

pub fn verify_free_orbits_on(set: &TableauSet) -> Result<FreeOrbitReport> {
    let n = set.alphabet_bound();
    let hyp = coprime_hypothesis(set.shape(), n);
    let perm = set.permutation(c_op)?;
    let census = census(&perm);
    Ok(FreeOrbitReport {
        hypothesis_met: hyp.is_ok(),
        hypothesis_note: hyp.err(),
        all_free: census.iter().all(|e| e.orbit_size == n),
        orbit_count: census.iter().map(|e| e.count).sum(),
        census,
    })
}

/// Whether every `ℂ`-orbit on `SST_n(λ)` has size `n`; the coprimality hypothesis is
/// reported alongside rather than enforced.
pub fn verify_free_orbits(shape: &Partition, n: usize) -> Result<FreeOrbitReport> {
    verify_free_orbits_on(&TableauSet::new(shape, n)?)
}

/// CSP for `(SST_n(λ), ℂ, f)`.
pub fn verify_coxeter_csp(set: &TableauSet, f: &LaurentPoly) -> Result<SievingReport> {
    let n = set.alphabet_bound() as u64;
    verify_csp(&CyclicActionSpec::new(set.clone(), Generator::Coxeter, n), f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContentClassReport {
    pub content: Content,
    pub class_size: usize,
    pub nonzero: usize,
    /// Brute-force order of `pr^n` on the class.
    pub order: u64,
    /// The closed-form order; `None` for one-row shapes, where it does not apply.
    pub formula_order: Option<u64>,
    /// Whether the order agrees with the closed form, or for a one-row shape, is 1.
    pub order_matches: bool,
    pub csp: SievingReport,
}

/// CSP for `(SST_n(λ, α), pr^n|_α, [nz(α)-1 choose m]_q)` on a hook.
pub fn verify_csp_content_class(shape: &Partition, n: usize, alpha: &Content) -> Result<ContentClassReport> {
    let leg = shape.hook_leg().ok_or_else(|| Error::HypothesisNotMet(format!("{shape} is not a hook")))?;
    if gcd(n as u64, shape.size() as u64) != 1 {
        return Err(Error::HypothesisNotMet(format!("gcd({n}, {}) != 1", shape.size())));
    }
    let class = crate::enumerate::enumerate_sst_with_content(shape, n, alpha)?;
    if class.is_empty() {
        return Err(Error::EmptyContentClass(alpha.0.clone()));
    }
    let set = TableauSet::from_tableaux(shape, n, class, Execution::default());
    let perm = set.permutation(|t| promote_power(t, n))?;
    let order = perm.order();
    let nonzero = alpha.nonzero_count();
    let formula_order = hook_class_order_formula(leg, nonzero);
    let f = q_binomial(nonzero - 1, leg);
    Ok(ContentClassReport {
        content: alpha.clone(),
        class_size: set.len(),
        nonzero,
        order,
        formula_order,
        order_matches: order == formula_order.unwrap_or(1),
        csp: sieve_permutation(&perm, order, &f, true, set.execution()),
    })
}

/// `f(q) ↦ f(q^d)`, lifting a CSP along a surjection of cyclic groups with index `d`.
pub fn pullback_rescale(f: &LaurentPoly, d: u64) -> LaurentPoly {
    assert!(d >= 1, "rescaling factor must be positive");
    f.substitute_power(d as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiSievingReport {
    /// Every evaluation is an integer equal to the matching fixed-point count.
    pub verdict: bool,
    pub coxeter_order: u64,
    /// `𝔬`, the order of `pr^n`.
    pub promotion_order: u64,
    pub polynomial: BivariatePoly,
    /// `S_λ(q, 1) = q^{-κ(λ)} s_λ(1, q, …, q^{n-1})`.
    pub t_one_matches: bool,
    /// `fixed_point_matrix[a][b] = |X^{(𝕔^a, pr^{bn})}|`.
    pub fixed_point_matrix: Vec<Vec<usize>>,
    pub evaluation_matrix: Vec<Vec<CyclotomicValue>>,
    /// All entries with `a ≠ 0` vanish.
    pub off_identity_rows_vanish: bool,
    /// `𝕔 ∘ pr^n = pr^n ∘ 𝕔`.
    pub generators_commute: bool,
    /// `|𝕆_pr(T)| = |𝕆_{ℂ×ℙ}(T)|` for every `T`.
    pub orbit_sizes_match: bool,
}

/// Orbit of `start` under the group generated by `gens`.
fn orbit_under(gens: &[&Permutation], start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Orders `𝔬` and `𝔬_μ` for a carrier, computed from the promotion permutation.
pub fn hook_orders(set: &TableauSet, pr: &Permutation) -> Result<HookOrders> {
    let n = set.alphabet_bound();
    let prn = pr.pow(n as u64);
    let mut classes: BTreeMap<Content, Vec<usize>> = BTreeMap::new();
    for (i, t) in set.tableaux().iter().enumerate() {
        let c = t.content();
        if c.is_weakly_decreasing() {
            classes.entry(c).or_default().push(i);
        }
    }
    let class_orders = classes
        .into_iter()
        .map(|(c, idx)| Ok((c.sorted_partition(), prn.restrict(&idx)?.order())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(HookOrders { group_order: prn.order(), class_orders })
}

/// Bicyclic sieving for `(SST_n(λ), ℂ × ℙ, S_λ(q, t))` on a hook `λ`.
pub fn verify_bicsp_hook(shape: &Partition, n: usize) -> Result<BiSievingReport> {
    verify_bicsp_hook_on(&TableauSet::new(shape, n)?, crate::qpoly::kostka_foulkes)
}

pub fn verify_bicsp_hook_on(
    set: &TableauSet,
    kostka: impl Fn(&Partition, &Partition) -> Result<LaurentPoly>,
) -> Result<BiSievingReport> {
    let shape = set.shape();
    let n = set.alphabet_bound();
    if !shape.is_hook() {
        return Err(Error::HypothesisNotMet(format!("{shape} is not a hook")));
    }
    coprime_hypothesis(shape, n).map_err(Error::HypothesisNotMet)?;

    let cox = set.permutation(c_op)?;
    let pr = promotion_permutation(set)?;
    let prn = pr.pow(n as u64);
    let orders = hook_orders(set, &pr)?;
    let o = orders.group_order;
    let polynomial = sieving_poly_bivariate_with(shape, n, &orders, kostka)?;
    let t_one_matches = polynomial.at_t_one() == principal_candidate(set);

    let cox_powers: Vec<Permutation> = (0..n as u64).map(|a| cox.pow(a)).collect();
    let prn_powers: Vec<Permutation> = (0..o).map(|b| prn.pow(b)).collect();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..o as usize).map(move |b| (a, b))).collect();
    let entries = set.execution().map(&cells, |&(a, b)| {
        let g = cox_powers[a].compose(&prn_powers[b]);
        let value = eval_bivariate_at_roots(&polynomial, (n as u64, a as u64), (o, b as u64));
        (g.fixed_points(), value)
    });
    let mut fixed_point_matrix = vec![vec![0; o as usize]; n];
    let mut evaluation_matrix = vec![Vec::with_capacity(o as usize); n];
    let mut verdict = true;
    for (&(a, b), (fixed, value)) in cells.iter().zip(entries) {
        verdict &= value.as_integer() == Some(fixed as i64);
        fixed_point_matrix[a][b] = fixed;
        evaluation_matrix[a].push(value);
    }
    let off_identity_rows_vanish = fixed_point_matrix.iter().skip(1).all(|row| row.iter().all(|&x| x == 0));
    let generators_commute = cox.compose(&prn) == prn.compose(&cox);
    let orbit_sizes_match = pr.cycles().iter().all(|cycle| orbit_under(&[&cox, &prn], cycle[0]).len() == cycle.len());

    Ok(BiSievingReport {
        verdict,
        coxeter_order: n as u64,
        promotion_order: o,
        polynomial,
        t_one_matches,
        fixed_point_matrix,
        evaluation_matrix,
        off_identity_rows_vanish,
        generators_commute,
        orbit_sizes_match,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylOrbitReport {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// Checks `𝕤_i · SST_n(λ, α) = SST_n(λ, s_i α)` for all `i, α`, and that the orbit of
/// every dominant-content tableau under the `𝕤_i` has `|W(μ)|` elements.
pub fn check_weyl_orbit_structure(set: &TableauSet) -> Result<WeylOrbitReport> {
    let n = set.alphabet_bound();
    let mut failures = Vec::new();
    let reflections = (1..n).map(|i| set.permutation(move |t| s_op(t, i))).collect::<Result<Vec<_>>>()?;
    for (k, refl) in reflections.iter().enumerate() {
        let i = k + 1;
        for (x, t) in set.tableaux().iter().enumerate() {
            if set.get(refl.apply(x)).content() != t.content().reflect(i) {
                failures.push(format!("𝕤_{i} does not map the content class of {} correctly", t.compact()));
            }
        }
    }
    let gens: Vec<&Permutation> = reflections.iter().collect();
    for (x, t) in set.tableaux().iter().enumerate() {
        let c = t.content();
        if !c.is_weakly_decreasing() {
            continue;
        }
        let orbit = orbit_under(&gens, x).len();
        let expected = distinct_permutations(&c.0.iter().map(|&v| v as usize).collect::<Vec<_>>()).len();
        if orbit != expected {
            failures.push(format!("orbit of {} has {orbit} elements, |W(μ)| = {expected}", t.compact()));
        }
    }
    Ok(WeylOrbitReport { holds: failures.is_empty(), failures })
}
