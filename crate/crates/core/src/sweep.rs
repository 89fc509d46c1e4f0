//! Sweep configuration, case-by-case execution, and line-delimited JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cache::KostkaCache;
use crate::enumerate::{TableauSet, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::exec::{with_jobs, Execution};
use crate::partition::{partitions_of, Partition};
use crate::perm::gcd;
use crate::poly::{BivariatePoly, LaurentPoly};
use crate::promotion::{
    check_pr2_commutation_on, check_prn_si_commutation_on, hook_order_formula, order_report, CommutationReport,
    ContentOrder,
};
use crate::sieving::{
    principal_candidate, staircase_candidate, verify_bicsp_hook_on, verify_coxeter_csp, verify_free_orbits_on,
    CensusEntry,
};

pub const TOOL_NAME: &str = "tabsieve";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    FreeOrbits,
    CspPrincipal,
    CspStaircase,
    PrOrders,
    Pr2Commutation,
    PrnCommutation,
    Bicsp,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::FreeOrbits,
        Check::CspPrincipal,
        Check::CspStaircase,
        Check::PrOrders,
        Check::Pr2Commutation,
        Check::PrnCommutation,
        Check::Bicsp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FreeOrbits => "free-orbits",
            Check::CspPrincipal => "csp-principal",
            Check::CspStaircase => "csp-staircase",
            Check::PrOrders => "pr-orders",
            Check::Pr2Commutation => "pr2-commutation",
            Check::PrnCommutation => "prn-commutation",
            Check::Bicsp => "bicsp",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// Which shapes a sweep visits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ShapeFamily {
    Explicit {
        shapes: Vec<Partition>,
    },
    /// Every partition with `size_min ≤ |λ| ≤ size_max`.
    All {
        size_min: usize,
        size_max: usize,
    },
    /// Every hook `(N-m, 1^m)` with `size_min ≤ N ≤ size_max`.
    Hooks {
        size_min: usize,
        size_max: usize,
    },
    /// Every partition with `λ_1 ≤ 2` and `size_min ≤ |λ| ≤ size_max`.
    TwoColumn {
        size_min: usize,
        size_max: usize,
    },
}

impl ShapeFamily {
    pub fn shapes(&self) -> Vec<Partition> {
        let sized = |lo: usize, hi: usize, keep: &dyn Fn(&Partition) -> bool| -> Vec<Partition> {
            (lo..=hi).flat_map(partitions_of).filter(|p| keep(p)).collect()
        };
        match self {
            ShapeFamily::Explicit { shapes } => shapes.clone(),
            ShapeFamily::All { size_min, size_max } => sized(*size_min, *size_max, &|_| true),
            ShapeFamily::Hooks { size_min, size_max } => sized(*size_min, *size_max, &Partition::is_hook),
            ShapeFamily::TwoColumn { size_min, size_max } => sized(*size_min, *size_max, &Partition::is_two_column),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ShapeFamily::Explicit { shapes } if shapes.is_empty() => {
                Err(Error::InvalidConfig("explicit shape list is empty".into()))
            }
            ShapeFamily::All { size_min, size_max }
            | ShapeFamily::Hooks { size_min, size_max }
            | ShapeFamily::TwoColumn { size_min, size_max }
                if size_min > size_max =>
            {
                Err(Error::InvalidConfig(format!("empty size range {size_min}..={size_max}")))
            }
            _ => Ok(()),
        }
    }
}

/// An expected verdict; unset `shape` or `n` match every case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Partition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub check: Check,
    pub verdict: bool,
}

impl Expectation {
    fn matches(&self, shape: &Partition, n: usize, check: Check) -> bool {
        self.check == check && self.shape.as_ref().is_none_or(|s| s == shape) && self.n.is_none_or(|m| m == n)
    }
}

fn default_n_min() -> usize {
    1
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

fn default_checks() -> Vec<Check> {
    vec![Check::FreeOrbits, Check::CspPrincipal]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub shapes: ShapeFamily,
    #[serde(default = "default_n_min")]
    pub n_min: usize,
    pub n_max: usize,
    #[serde(default)]
    pub coprime_only: bool,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub execution: Option<Execution>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expectations: Vec<Expectation>,
}

impl SweepConfig {
    pub fn new(shapes: ShapeFamily, n_min: usize, n_max: usize) -> Self {
        Self {
            shapes,
            n_min,
            n_max,
            coprime_only: false,
            checks: default_checks(),
            cap: DEFAULT_CAP,
            jobs: None,
            execution: None,
            expectations: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.shapes.validate()?;
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidConfig(format!("empty or invalid n range {}..={}", self.n_min, self.n_max)));
        }
        if self.n_max > crate::tableau::Entry::MAX as usize {
            return Err(Error::InvalidConfig(format!("n = {} exceeds the supported alphabet", self.n_max)));
        }
        if self.cap == 0 {
            return Err(Error::InvalidConfig("cap must be positive".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::InvalidConfig("no checks selected".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidConfig("jobs must be positive".into()));
        }
        Ok(())
    }

    /// `(λ, n)` pairs in sweep order: shapes as listed, then increasing `n`.
    pub fn cases(&self) -> Vec<(Partition, usize)> {
        let mut out = Vec::new();
        for shape in self.shapes.shapes() {
            for n in self.n_min.max(shape.length()).max(1)..=self.n_max {
                if self.coprime_only && gcd(n as u64, shape.size() as u64) != 1 {
                    continue;
                }
                out.push((shape.clone(), n));
            }
        }
        out
    }

    fn expected(&self, shape: &Partition, n: usize, check: Check, hypothesis: Option<bool>) -> Option<bool> {
        self.expectations
            .iter()
            .rev()
            .find(|e| e.matches(shape, n, check))
            .map(|e| e.verdict)
            .or((hypothesis == Some(true)).then_some(true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckDetail {
    FreeOrbits {
        census: Vec<CensusEntry>,
    },
    Csp {
        candidate: LaurentPoly,
        candidate_reduced: LaurentPoly,
        residue: LaurentPoly,
        census: Vec<CensusEntry>,
        routes_agree: bool,
    },
    Orders {
        order_pr: u64,
        order_prn: u64,
        factored_order: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hook_formula: Option<u64>,
        per_content: Vec<ContentOrder>,
    },
    Commutation(CommutationReport),
    Bicsp {
        promotion_order: u64,
        polynomial: BivariatePoly,
        t_one_matches: bool,
        off_identity_rows_vanish: bool,
        generators_commute: bool,
        orbit_sizes_match: bool,
    },
    Skipped {
        reason: String,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    /// Whether the case satisfies the hypotheses of the result behind the check; `None`
    /// when no general statement applies.
    pub hypothesis: Option<bool>,
    pub verdict: Option<bool>,
    pub expected: Option<bool>,
    pub unexpected: bool,
    pub detail: CheckDetail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub shape: Partition,
    pub n: usize,
    pub carrier_size: Option<usize>,
    pub coprime: bool,
    pub outcomes: Vec<CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_us: u64,
}

impl CaseRecord {
    pub fn key(&self) -> String {
        format!("{}|{}", self.shape, self.n)
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.check == check)
    }

    /// The record without its timing, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_us: 0, ..self.clone() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub checks_run: usize,
    pub verdicts_true: usize,
    pub verdicts_false: usize,
    pub hypothesis_not_met: usize,
    pub errors: usize,
    pub unexpected: usize,
    pub per_check: BTreeMap<Check, CheckTally>,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
    pub not_run: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub config: SweepConfig,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
enum ReportLine {
    Header { tool: String, version: String, config: SweepConfig },
    Case(CaseRecord),
    Summary(Summary),
}

impl ReportEnvelope {
    pub fn all_as_expected(&self) -> bool {
        self.summary.unexpected == 0
    }

    /// One header line, one line per case, one summary line.
    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = serde_json::to_string(&ReportLine::Header {
            tool: self.tool.clone(),
            version: self.version.clone(),
            config: self.config.clone(),
        })?;
        out.push('\n');
        for case in &self.cases {
            out.push_str(&serde_json::to_string(&ReportLine::Case(case.clone()))?);
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&ReportLine::Summary(self.summary.clone()))?);
        out.push('\n');
        Ok(out)
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut header = None;
        let mut cases = Vec::new();
        let mut summary = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            match serde_json::from_str(line)? {
                ReportLine::Header { tool, version, config } => header = Some((tool, version, config)),
                ReportLine::Case(c) => cases.push(c),
                ReportLine::Summary(s) => summary = Some(s),
            }
        }
        let (tool, version, config) = header.ok_or_else(|| Error::Parse("report has no header line".into()))?;
        let summary = summary.ok_or_else(|| Error::Parse("report has no summary line".into()))?;
        Ok(Self { tool, version, config, cases, summary })
    }

    /// Case records with timings zeroed.
    pub fn without_timings(&self) -> Vec<CaseRecord> {
        self.cases.iter().map(CaseRecord::without_timing).collect()
    }
}

struct Ctx<'a> {
    config: &'a SweepConfig,
    cache: &'a KostkaCache,
    inner: Execution,
}

fn outcome(
    ctx: &Ctx,
    shape: &Partition,
    n: usize,
    check: Check,
    hypothesis: Option<bool>,
    verdict: Option<bool>,
    detail: CheckDetail,
) -> CheckOutcome {
    let expected = ctx.config.expected(shape, n, check, hypothesis);
    let routes_disagree = matches!(detail, CheckDetail::Csp { routes_agree: false, .. });
    CheckOutcome {
        check,
        hypothesis,
        verdict,
        expected,
        unexpected: routes_disagree || expected.is_some_and(|e| verdict != Some(e)),
        detail,
    }
}

fn run_check(ctx: &Ctx, set: &TableauSet, check: Check) -> CheckOutcome {
    let shape = set.shape();
    let n = set.alphabet_bound();
    let size = shape.size() as u64;
    let coprime = gcd(n as u64, size) == 1;
    let short = shape.length() < n;
    let hook_or_two_column = shape.is_hook() || shape.is_two_column();
    let err = |e: Error, hypothesis| {
        outcome(ctx, shape, n, check, hypothesis, None, CheckDetail::Error { message: e.to_string() })
    };
    let skipped =
        |reason: String, hypothesis| outcome(ctx, shape, n, check, hypothesis, None, CheckDetail::Skipped { reason });

    match check {
        Check::FreeOrbits => {
            let hyp = Some(coprime && short);
            match verify_free_orbits_on(set) {
                Ok(r) => {
                    outcome(ctx, shape, n, check, hyp, Some(r.all_free), CheckDetail::FreeOrbits { census: r.census })
                }
                Err(e) => err(e, hyp),
            }
        }
        Check::CspPrincipal | Check::CspStaircase => {
            let (hyp, candidate) = if check == Check::CspPrincipal {
                (Some(coprime && short), principal_candidate(set))
            } else {
                (None, staircase_candidate(set))
            };
            match verify_coxeter_csp(set, &candidate) {
                Ok(r) => {
                    let routes_agree = r.routes_agree();
                    let detail = CheckDetail::Csp {
                        candidate,
                        candidate_reduced: r.candidate_poly_reduced,
                        residue: r.residue_poly,
                        census: r.orbit_census,
                        routes_agree,
                    };
                    outcome(ctx, shape, n, check, hyp, Some(r.verdict), detail)
                }
                Err(e) => err(e, hyp),
            }
        }
        Check::PrOrders => {
            let hyp = Some(coprime && short && hook_or_two_column);
            match order_report(set) {
                Ok(r) => {
                    let divisible = !(coprime && short) || r.total_order_pr % n as u64 == 0;
                    let hook_formula = shape
                        .hook_leg()
                        .filter(|_| coprime && short)
                        .and_then(|m| hook_order_formula(shape.size(), m, n));
                    let verdict = r.total_order_pr == r.factored_order
                        && divisible
                        && hook_formula.is_none_or(|h| h == r.total_order_pr);
                    let detail = CheckDetail::Orders {
                        order_pr: r.total_order_pr,
                        order_prn: r.total_order_prn,
                        factored_order: r.factored_order,
                        hook_formula,
                        per_content: r.per_content,
                    };
                    outcome(ctx, shape, n, check, hyp, Some(verdict), detail)
                }
                Err(e) => err(e, hyp),
            }
        }
        Check::Pr2Commutation | Check::PrnCommutation => {
            let hyp = Some(short && hook_or_two_column);
            if n < 2 {
                return skipped("needs n >= 2".into(), hyp);
            }
            let r = if check == Check::Pr2Commutation {
                check_pr2_commutation_on(set)
            } else {
                check_prn_si_commutation_on(set)
            };
            outcome(ctx, shape, n, check, hyp, Some(r.holds), CheckDetail::Commutation(r))
        }
        Check::Bicsp => {
            let hyp = shape.is_hook() && coprime && short;
            if !hyp {
                return skipped("requires a hook with ℓ(λ) < n and gcd(n, |λ|) = 1".into(), Some(false));
            }
            match verify_bicsp_hook_on(set, |l, m| ctx.cache.kostka_foulkes(l, m)) {
                Ok(r) => {
                    let verdict = r.verdict
                        && r.t_one_matches
                        && r.off_identity_rows_vanish
                        && r.generators_commute
                        && r.orbit_sizes_match;
                    let detail = CheckDetail::Bicsp {
                        promotion_order: r.promotion_order,
                        polynomial: r.polynomial,
                        t_one_matches: r.t_one_matches,
                        off_identity_rows_vanish: r.off_identity_rows_vanish,
                        generators_commute: r.generators_commute,
                        orbit_sizes_match: r.orbit_sizes_match,
                    };
                    outcome(ctx, shape, n, check, Some(true), Some(verdict), detail)
                }
                Err(e) => err(e, Some(true)),
            }
        }
    }
}

fn run_case(ctx: &Ctx, shape: &Partition, n: usize) -> CaseRecord {
    let start = Instant::now();
    let coprime = gcd(n as u64, shape.size() as u64) == 1;
    let (carrier_size, outcomes, error) = match TableauSet::with_options(shape, n, ctx.config.cap, ctx.inner) {
        Ok(set) => {
            let outcomes = ctx.config.checks.iter().map(|&c| run_check(ctx, &set, c)).collect();
            (Some(set.len()), outcomes, None)
        }
        Err(e) => {
            let message = e.to_string();
            let outcomes = ctx
                .config
                .checks
                .iter()
                .map(|&c| outcome(ctx, shape, n, c, None, None, CheckDetail::Error { message: message.clone() }))
                .collect();
            (None, outcomes, Some(message))
        }
    };
    CaseRecord {
        shape: shape.clone(),
        n,
        carrier_size,
        coprime,
        outcomes,
        error,
        elapsed_us: start.elapsed().as_micros() as u64,
    }
}

fn summarize(cases: &[CaseRecord], elapsed_us: u64) -> Summary {
    let mut s = Summary { cases: cases.len(), elapsed_us, ..Summary::default() };
    for case in cases {
        if case.error.is_some() {
            s.errors += 1;
        }
        for o in &case.outcomes {
            let tally = s.per_check.entry(o.check).or_default();
            match o.verdict {
                Some(true) => {
                    s.verdicts_true += 1;
                    tally.passed += 1;
                }
                Some(false) => {
                    s.verdicts_false += 1;
                    tally.failed += 1;
                }
                None => tally.not_run += 1,
            }
            if o.verdict.is_some() {
                s.checks_run += 1;
            }
            if o.hypothesis == Some(false) {
                s.hypothesis_not_met += 1;
            }
            if o.unexpected {
                s.unexpected += 1;
            }
            if case.error.is_none() && matches!(o.detail, CheckDetail::Error { .. }) {
                s.errors += 1;
            }
        }
    }
    s
}

/// Runs every configured check on every case with an in-memory Kostka–Foulkes cache.
pub fn run_sweep(config: &SweepConfig) -> Result<ReportEnvelope> {
    run_sweep_with_cache(config, &KostkaCache::in_memory())
}

pub fn run_sweep_with_cache(config: &SweepConfig, cache: &KostkaCache) -> Result<ReportEnvelope> {
    config.validate()?;
    let start = Instant::now();
    let outer = config.execution.unwrap_or_default();
    let ctx = Ctx { config, cache, inner: Execution::Sequential };
    let cases = config.cases();
    let records = with_jobs(config.jobs, || outer.map(&cases, |(shape, n)| run_case(&ctx, shape, *n)));
    let summary = summarize(&records, start.elapsed().as_micros() as u64);
    Ok(ReportEnvelope {
        tool: TOOL_NAME.into(),
        version: TOOL_VERSION.into(),
        config: config.clone(),
        cases: records,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn explicit(shapes: &[&[usize]], n: usize, checks: &[Check]) -> SweepConfig {
        let mut c = SweepConfig::new(ShapeFamily::Explicit { shapes: shapes.iter().map(|s| p(s)).collect() }, n, n);
        c.checks = checks.to_vec();
        c
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("frobnicate".parse::<Check>().is_err());
    }

    #[test]
    fn non_coprime_case_is_recorded() {
        let config = explicit(&[&[2, 1, 1, 1]], 5, &[Check::CspPrincipal, Check::CspStaircase]);
        let report = run_sweep(&config).unwrap();
        let case = &report.cases[0];
        assert_eq!(case.outcome(Check::CspPrincipal).unwrap().verdict, Some(false));
        assert_eq!(case.outcome(Check::CspStaircase).unwrap().verdict, Some(true));
        assert!(report.all_as_expected());
    }

    #[test]
    fn example_orders() {
        let config = explicit(&[&[2, 2, 2, 1]], 6, &[Check::PrOrders]);
        let report = run_sweep(&config).unwrap();
        match &report.cases[0].outcomes[0].detail {
            CheckDetail::Orders { order_pr, .. } => assert_eq!(*order_pr, 36),
            other => panic!("unexpected detail {other:?}"),
        }
        assert_eq!(report.cases[0].outcomes[0].verdict, Some(true));
    }

    #[test]
    fn expectations_drive_the_unexpected_count() {
        let mut config = explicit(&[&[3, 2, 1]], 4, &[Check::Pr2Commutation]);
        assert!(run_sweep(&config).unwrap().all_as_expected());
        config.expectations.push(Expectation { shape: None, n: Some(4), check: Check::Pr2Commutation, verdict: true });
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.summary.unexpected, 1);
    }

    #[test]
    fn cap_errors_do_not_abort() {
        let mut config = SweepConfig::new(ShapeFamily::Explicit { shapes: vec![p(&[1]), p(&[4, 2])] }, 3, 3);
        config.cap = 5;
        let report = run_sweep(&config).unwrap();
        assert_eq!(report.cases.len(), 2);
        assert!(report.cases[0].error.is_none());
        assert!(report.cases[1].error.is_some());
        assert_eq!(report.summary.errors, 1);
    }

    #[test]
    fn invalid_configs() {
        let mut c = SweepConfig::new(ShapeFamily::All { size_min: 3, size_max: 2 }, 1, 3);
        assert!(c.validate().is_err());
        c.shapes = ShapeFamily::All { size_min: 1, size_max: 2 };
        c.cap = 0;
        assert!(c.validate().is_err());
        c.cap = 10;
        c.n_min = 4;
        assert!(c.validate().is_err());
    }

    #[test]
    fn case_grid() {
        let mut c = SweepConfig::new(ShapeFamily::Hooks { size_min: 3, size_max: 3 }, 1, 4);
        c.coprime_only = true;
        let cases: Vec<String> = c.cases().iter().map(|(s, n)| format!("{s}:{n}")).collect();
        assert_eq!(cases, ["3:1", "3:2", "3:4", "2,1:2", "2,1:4", "1,1,1:4"]);
    }
}
