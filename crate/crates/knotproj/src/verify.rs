//! Exhaustive checks of the reduction theorem and its corollaries over all
//! projections up to a crossing number.
//!
//! Checks that depend on the picture, not just the Gauss code, run over
//! every spherical realization of every code. Per-code work is spread over
//! rayon and merged in enumeration order, so reports are deterministic.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use knotproj_core::chords::{count_tr, count_x};
use knotproj_core::enumerate::{enumerate_curves_within, EnumerateError};
use knotproj_core::invariants::arnold_invariant;
use knotproj_core::moves::{reduce_no_triple_with, Membership};
use knotproj_core::planar::{
    self, connected_sum_oriented, frame_string, innermost_teardrop, is_reduced, monogons,
    realizations, strong_bigons_with, PlanarCurve,
};
use knotproj_core::Strongness;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    MainTheorem,
    BigonStrength,
    InclusionChain,
    TwoStrongBigons,
    ConnectedSumLemma,
    TeardropReversal,
}

impl CheckId {
    pub const ALL: [CheckId; 6] = [
        CheckId::MainTheorem,
        CheckId::BigonStrength,
        CheckId::InclusionChain,
        CheckId::TwoStrongBigons,
        CheckId::ConnectedSumLemma,
        CheckId::TeardropReversal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::MainTheorem => "main-theorem",
            CheckId::BigonStrength => "bigon-strength",
            CheckId::InclusionChain => "inclusion-chain",
            CheckId::TwoStrongBigons => "two-strong-bigons",
            CheckId::ConnectedSumLemma => "connected-sum-lemma",
            CheckId::TeardropReversal => "teardrop-reversal",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check `{0}`")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckId {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

/// A curve that breaks a check, or that illustrates one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub code: String,
    /// Frame of each double point, `+` or `-`, so the exact curve can be
    /// rebuilt.
    pub frames: String,
    pub detail: String,
}

impl Finding {
    fn new(p: &PlanarCurve, detail: impl Into<String>) -> Finding {
        Finding {
            kind: None,
            code: p.code().to_string(),
            frames: frame_string(p.frames()),
            detail: detail.into(),
        }
    }

    fn witness(kind: &str, p: &PlanarCurve, detail: impl Into<String>) -> Finding {
        Finding { kind: Some(kind.to_string()), ..Finding::new(p, detail) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub max_n: usize,
    pub arnold_max_n: Option<usize>,
    /// Gauss codes (or summand pairs) examined.
    pub curves_tested: usize,
    /// Individual realizations (or splices) examined.
    pub realizations_tested: usize,
    pub violations: Vec<Finding>,
    pub witnesses: Vec<Finding>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// JSON form; `elapsed_ms` only appears with `timing`, so that reports
    /// are byte-identical across runs otherwise.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "check_id": self.check_id.name(),
            "max_n": self.max_n,
            "passed": self.passed(),
            "curves_tested": self.curves_tested,
            "realizations_tested": self.realizations_tested,
            "violations": self.violations,
            "witnesses": self.witnesses,
        });
        if let Some(a) = self.arnold_max_n {
            v["arnold_max_n"] = json!(a);
        }
        if timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} max_n={} curves={} realizations={} violations={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.check_id,
            self.max_n,
            self.curves_tested,
            self.realizations_tested,
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n  violation: [{}] frames {}: {}", v.code, v.frames, v.detail)?;
        }
        for w in &self.witnesses {
            write!(
                f,
                "\n  witness {}: [{}] {}",
                w.kind.as_deref().unwrap_or("-"),
                w.code,
                w.detail
            )?;
        }
        Ok(())
    }
}

/// Per-code outcome before merging.
#[derive(Default)]
struct Partial {
    tested: bool,
    realizations: usize,
    violations: Vec<Finding>,
    witnesses: Vec<Finding>,
}

/// Runs checks with a fixed strongness rule and enumeration budget.
#[derive(Debug, Clone, Copy)]
pub struct Verifier {
    pub rule: Strongness,
    pub budget: usize,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier { rule: Strongness::Nested, budget: knotproj_core::enumerate::DEFAULT_MAX_N }
    }
}

/// Keeps the first witness of each kind.
fn first_per_kind(found: Vec<Finding>) -> Vec<Finding> {
    let mut out: Vec<Finding> = Vec::new();
    for w in found {
        if !out.iter().any(|o| o.kind == w.kind) {
            out.push(w);
        }
    }
    out
}

impl Verifier {
    pub fn with_rule(rule: Strongness) -> Verifier {
        Verifier { rule, ..Verifier::default() }
    }

    fn codes(&self, min_n: usize, max_n: usize) -> Result<Vec<PlanarCurve>, EnumerateError> {
        if max_n > self.budget {
            return Err(EnumerateError::BudgetExceeded { n: max_n, max: self.budget });
        }
        let mut out = Vec::new();
        for n in min_n..=max_n {
            out.extend(enumerate_curves_within(n, self.budget)?);
        }
        Ok(out)
    }

    fn run(
        &self,
        check_id: CheckId,
        max_n: usize,
        min_n: usize,
        per_code: impl Fn(&PlanarCurve) -> Partial + Sync + Send,
    ) -> Result<CheckReport, EnumerateError> {
        let start = Instant::now();
        let curves = self.codes(min_n, max_n)?;
        let partials: Vec<Partial> = curves.par_iter().map(per_code).collect();
        let mut report = CheckReport {
            check_id,
            max_n,
            arnold_max_n: None,
            curves_tested: 0,
            realizations_tested: 0,
            violations: Vec::new(),
            witnesses: Vec::new(),
            elapsed: Duration::ZERO,
        };
        let mut witnesses = Vec::new();
        for p in partials {
            report.curves_tested += usize::from(p.tested);
            report.realizations_tested += p.realizations;
            report.violations.extend(p.violations);
            witnesses.extend(p.witnesses);
        }
        report.witnesses = first_per_kind(witnesses);
        report.elapsed = start.elapsed();
        Ok(report)
    }

    pub fn check(&self, id: CheckId, max_n: usize, arnold_max_n: usize) -> Result<CheckReport, EnumerateError> {
        match id {
            CheckId::MainTheorem => self.check_main_theorem(max_n),
            CheckId::BigonStrength => self.check_bigon_strength(max_n),
            CheckId::InclusionChain => self.check_inclusion_chain(max_n, arnold_max_n.min(max_n)),
            CheckId::TwoStrongBigons => self.check_two_strong_bigons(max_n),
            CheckId::ConnectedSumLemma => self.check_connected_sum_lemma(max_n),
            CheckId::TeardropReversal => self.check_teardrop_reversal(max_n),
        }
    }

    /// Every realization with `1 <= n <= max_n` and no triple chord has a
    /// monogon or a strong bigon, and greedy 1b/s2b reduction reaches the
    /// simple closed curve.
    pub fn check_main_theorem(&self, max_n: usize) -> Result<CheckReport, EnumerateError> {
        let rule = self.rule;
        self.run(CheckId::MainTheorem, max_n, 1, |p| {
            let mut out = Partial::default();
            if count_tr(p.code()) != 0 {
                return out;
            }
            out.tested = true;
            for r in realizations(p.code()) {
                out.realizations += 1;
                if monogons(&r).is_empty() && strong_bigons_with(&r, rule).is_empty() {
                    out.violations.push(Finding::new(&r, "no monogon and no strong bigon"));
                }
                if let Err(e) = reduce_no_triple_with(&r, rule) {
                    out.violations.push(Finding::new(&r, format!("greedy reduction failed: {e}")));
                }
            }
            out
        })
    }

    /// Without triple chords, every bigon with two distinct corners is
    /// strong.
    pub fn check_bigon_strength(&self, max_n: usize) -> Result<CheckReport, EnumerateError> {
        let rule = self.rule;
        self.run(CheckId::BigonStrength, max_n, 1, |p| {
            let mut out = Partial::default();
            if count_tr(p.code()) != 0 {
                return out;
            }
            out.tested = true;
            for r in realizations(p.code()) {
                out.realizations += 1;
                let bigons = planar::faces(&r).iter().filter(|f| f.bigon_corners().is_some()).count();
                let strong = strong_bigons_with(&r, rule).len();
                if strong != bigons {
                    out.violations.push(Finding::new(&r, format!("{} of {bigons} bigons are not strong", bigons - strong)));
                }
            }
            out
        })
    }

    /// `x = 0 => tr = 0 => in S`, for `n <= max_n`, and
    /// `in S => J+ + 2St = 0` for `n <= arnold_max_n`.
    pub fn check_inclusion_chain(&self, max_n: usize, arnold_max_n: usize) -> Result<CheckReport, EnumerateError> {
        let rule = self.rule;
        let mut report = self.run(CheckId::InclusionChain, max_n, 0, |p| {
            let mut out = Partial { tested: true, ..Partial::default() };
            let (x, tr) = (count_x(p.code()), count_tr(p.code()));
            let mut membership = Membership::new(rule);
            for r in realizations(p.code()) {
                out.realizations += 1;
                let in_s = membership.contains(&r);
                if x == 0 && tr != 0 {
                    out.violations.push(Finding::new(&r, format!("x = 0 but tr = {tr}")));
                }
                if tr == 0 && !in_s {
                    out.violations.push(Finding::new(&r, "tr = 0 but not in S"));
                }
                if tr != 0 && in_s {
                    out.witnesses.push(Finding::witness("in S with tr > 0", &r, format!("tr = {tr}")));
                }
                if x != 0 && tr == 0 {
                    out.witnesses.push(Finding::witness("tr = 0 with x > 0", &r, format!("x = {x}")));
                }
                if r.n() <= arnold_max_n {
                    let arnold = arnold_invariant(&r);
                    if in_s && !arnold.is_zero() {
                        out.violations.push(Finding::new(&r, format!("in S but J+ + 2St = {arnold}")));
                    }
                    if !in_s && arnold.is_zero() {
                        out.witnesses.push(Finding::witness("J+ + 2St = 0 outside S", &r, "J+ + 2St = 0"));
                    }
                    if !arnold.is_zero() {
                        out.witnesses.push(Finding::witness(
                            "J+ + 2St != 0",
                            &r,
                            format!("J+ + 2St = {arnold}, in S = {in_s}"),
                        ));
                    }
                }
            }
            out
        })?;
        report.arnold_max_n = Some(arnold_max_n);
        Ok(report)
    }

    /// Every reduced realization with `1 <= n <= max_n` and no triple chord
    /// has at least two strong bigons.
    pub fn check_two_strong_bigons(&self, max_n: usize) -> Result<CheckReport, EnumerateError> {
        let rule = self.rule;
        self.run(CheckId::TwoStrongBigons, max_n, 1, |p| {
            let mut out = Partial::default();
            if count_tr(p.code()) != 0 || !is_reduced(p) {
                return out;
            }
            out.tested = true;
            for r in realizations(p.code()) {
                out.realizations += 1;
                let k = strong_bigons_with(&r, rule).len();
                if k < 2 {
                    out.violations.push(Finding::new(&r, format!("only {k} strong bigon(s)")));
                }
            }
            out
        })
    }

    /// Splicing two triple-chord-free projections, at any pair of edges
    /// and in any orientation, gives a planar projection without triple
    /// chords.
    pub fn check_connected_sum_lemma(&self, max_n: usize) -> Result<CheckReport, EnumerateError> {
        let start = Instant::now();
        let summands: Vec<PlanarCurve> = self
            .codes(1, max_n.saturating_sub(1))?
            .into_iter()
            .filter(|p| count_tr(p.code()) == 0)
            .collect();
        let pairs: Vec<(&PlanarCurve, &PlanarCurve)> = summands
            .iter()
            .flat_map(|a| summands.iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.n() + b.n() <= max_n)
            .collect();
        let partials: Vec<Partial> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let mut out = Partial { tested: true, ..Partial::default() };
                for s1 in 0..a.edge_count() {
                    for s2 in 0..b.edge_count() {
                        for (reversed, mirrored) in [(false, false), (false, true), (true, false), (true, true)] {
                            out.realizations += 1;
                            let detail = |what: String| {
                                Finding {
                                    kind: None,
                                    code: format!("{} # {}", a.code(), b.code()),
                                    frames: format!("{} # {}", frame_string(a.frames()), frame_string(b.frames())),
                                    detail: format!("sites ({s1}, {s2}) reversed={reversed} mirrored={mirrored}: {what}"),
                                }
                            };
                            match connected_sum_oriented(a, b, s1, s2, reversed, mirrored) {
                                Ok(sum) => {
                                    let tr = count_tr(sum.code());
                                    if tr != 0 {
                                        out.violations.push(detail(format!("sum has tr = {tr}")));
                                    }
                                    if sum.n() != a.n() + b.n() {
                                        out.violations.push(detail("crossing count changed".into()));
                                    }
                                }
                                Err(e) => out.violations.push(detail(e.to_string())),
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let mut report = CheckReport {
            check_id: CheckId::ConnectedSumLemma,
            max_n,
            arnold_max_n: None,
            curves_tested: 0,
            realizations_tested: 0,
            violations: Vec::new(),
            witnesses: Vec::new(),
            elapsed: Duration::ZERO,
        };
        for p in partials {
            report.curves_tested += usize::from(p.tested);
            report.realizations_tested += p.realizations;
            report.violations.extend(p.violations);
        }
        report.elapsed = start.elapsed();
        Ok(report)
    }

    /// Without triple chords, the innermost teardrop's boundary
    /// permutation is order-reversing. Curves with triple chords and a
    /// non-reversing permutation are reported as witnesses.
    pub fn check_teardrop_reversal(&self, max_n: usize) -> Result<CheckReport, EnumerateError> {
        self.run(CheckId::TeardropReversal, max_n, 1, |p| {
            let mut out = Partial::default();
            let t = innermost_teardrop(p).expect("curves with crossings have teardrops");
            if count_tr(p.code()) != 0 {
                if !t.sigma_reverses() {
                    out.witnesses.push(Finding::witness(
                        "non-reversing sigma with tr > 0",
                        p,
                        format!("origin {} sigma {:?}", t.origin, t.sigma),
                    ));
                }
                return out;
            }
            out.tested = true;
            out.realizations = 1;
            if !t.sigma_reverses() {
                out.violations.push(Finding::new(p, format!("origin {} sigma {:?} is not reversing", t.origin, t.sigma)));
            }
            out
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_ids_parse() {
        for id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>(), Ok(id));
        }
        assert_eq!("nosuch".parse::<CheckId>(), Err(UnknownCheck("nosuch".into())));
    }

    #[test]
    fn main_theorem_small() {
        let r = Verifier::default().check_main_theorem(2).unwrap();
        assert!(r.passed());
        assert_eq!(r.curves_tested, 2);
        // "1 1 2 2" has two distinct realizations.
        assert_eq!(r.realizations_tested, 3);
    }

    #[test]
    fn two_strong_bigons_skips_non_reduced() {
        let r = Verifier::default().check_two_strong_bigons(2).unwrap();
        assert!(r.passed());
        assert_eq!(r.curves_tested, 0);
    }

    #[test]
    fn trefoil_witness() {
        let r = Verifier::default().check_inclusion_chain(3, 3).unwrap();
        assert!(r.passed(), "{r}");
        let w = r.witnesses.iter().find(|w| w.kind.as_deref() == Some("J+ + 2St != 0")).unwrap();
        assert_eq!(w.code, "1 2 3 1 2 3");
        assert_eq!(w.detail, "J+ + 2St = 2, in S = false");
    }

    #[test]
    fn lemma_on_figure_eights() {
        let r = Verifier::default().check_connected_sum_lemma(2).unwrap();
        assert!(r.passed());
        assert_eq!(r.curves_tested, 1);
        assert_eq!(r.realizations_tested, 2 * 2 * 4);
    }

    #[test]
    fn teardrop_witness_for_trefoil() {
        let r = Verifier::default().check_teardrop_reversal(3).unwrap();
        assert!(r.passed());
        assert!(r.witnesses.iter().any(|w| w.code == "1 2 3 1 2 3"));
    }

    #[test]
    fn json_is_stable_without_timing() {
        let v = Verifier::default();
        let a = v.check_main_theorem(4).unwrap().to_json(false).to_string();
        let b = v.check_main_theorem(4).unwrap().to_json(false).to_string();
        assert_eq!(a, b);
        assert!(!a.contains("elapsed"));
        assert!(v.check_main_theorem(4).unwrap().to_json(true).get("elapsed_ms").is_some());
    }

    #[test]
    fn budget_is_enforced() {
        let v = Verifier { budget: 3, ..Verifier::default() };
        assert!(v.check_main_theorem(4).is_err());
    }
}
