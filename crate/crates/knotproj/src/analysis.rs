//! Per-code summaries for `knotproj analyze`, and reduction traces.

use std::fmt;

use knotproj_core::chords::{count_tr, count_x, ChordError};
use knotproj_core::invariants::arnold_invariant;
use knotproj_core::moves::{in_s, reduce_no_triple, ReductionTrace};
use knotproj_core::planar::{self, is_reduced, prime_decompose, PlanarError};
use knotproj_core::{canonicalize, parse_code, realize, ChordDiagram};
use serde::Serialize;
use thiserror::Error;

/// Largest crossing number for which `--arnold` runs without `--force`.
pub const ARNOLD_GUARD_N: usize = 12;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Malformed(#[from] ChordError),
    #[error(transparent)]
    NotRealizable(#[from] PlanarError),
    #[error("the Arnold invariant of a {n}-crossing curve needs 2^{n} resolutions; pass --force to run it anyway")]
    ArnoldGuard { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisOutput {
    pub code: String,
    pub n: usize,
    pub x: u64,
    pub tr: u64,
    pub realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_degrees: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monogons: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong_bigons: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_factors: Option<Vec<String>>,
    #[serde(rename = "in_S", skip_serializing_if = "Option::is_none")]
    pub in_s: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arnold: Option<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub arnold: bool,
    pub force: bool,
}

/// Chord-level fields only, for codes that have no planar realization.
fn chord_summary(cd: &ChordDiagram) -> AnalysisOutput {
    AnalysisOutput {
        code: canonicalize(cd).to_string(),
        n: cd.n(),
        x: count_x(cd),
        tr: count_tr(cd),
        realizable: false,
        face_degrees: None,
        monogons: None,
        strong_bigons: None,
        reduced: None,
        prime_factors: None,
        in_s: None,
        arnold: None,
    }
}

/// Full summary; fails on codes that are not planar.
pub fn analyze(text: &str, opts: AnalyzeOptions) -> Result<AnalysisOutput, AnalysisError> {
    let cd = parse_code(text)?;
    if opts.arnold && !opts.force && cd.n() > ARNOLD_GUARD_N {
        return Err(AnalysisError::ArnoldGuard { n: cd.n() });
    }
    let p = realize(&cd)?;
    let mut out = chord_summary(&cd);
    out.realizable = true;
    out.face_degrees = Some(planar::face_degrees(&p));
    out.monogons = Some(planar::monogons(&p).len());
    out.strong_bigons = Some(planar::strong_bigons(&p).len());
    out.reduced = Some(is_reduced(&p));
    let mut factors: Vec<_> = prime_decompose(&p).iter().map(|f| f.canonical_code()).collect();
    factors.sort();
    out.prime_factors = Some(factors.iter().map(|c| c.to_string()).collect());
    out.in_s = Some(in_s(&p).0);
    out.arnold = opts.arnold.then(|| arnold_invariant(&p).to_string());
    Ok(out)
}

/// Like [`analyze`], but reports unrealizable codes with
/// `realizable: false` instead of failing.
pub fn analyze_lenient(text: &str, opts: AnalyzeOptions) -> Result<AnalysisOutput, AnalysisError> {
    match analyze(text, opts) {
        Err(AnalysisError::NotRealizable(_)) => Ok(chord_summary(&parse_code(text)?)),
        other => other,
    }
}

impl fmt::Display for AnalysisOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &str| if c.is_empty() { "(empty)".to_string() } else { c.to_string() };
        writeln!(f, "code           {}", show(&self.code))?;
        writeln!(f, "n              {}", self.n)?;
        writeln!(f, "x              {}", self.x)?;
        writeln!(f, "tr             {}", self.tr)?;
        write!(f, "realizable     {}", self.realizable)?;
        if let Some(d) = &self.face_degrees {
            let d: Vec<String> = d.iter().map(usize::to_string).collect();
            write!(f, "\nface_degrees   {}", d.join(" "))?;
        }
        if let Some(v) = self.monogons {
            write!(f, "\nmonogons       {v}")?;
        }
        if let Some(v) = self.strong_bigons {
            write!(f, "\nstrong_bigons  {v}")?;
        }
        if let Some(v) = self.reduced {
            write!(f, "\nreduced        {v}")?;
        }
        if let Some(v) = &self.prime_factors {
            let v: Vec<String> = v.iter().map(|c| format!("[{c}]")).collect();
            write!(f, "\nprime_factors  {}", if v.is_empty() { "none".to_string() } else { v.join(" ") })?;
        }
        if let Some(v) = self.in_s {
            write!(f, "\nin_S           {v}")?;
        }
        if let Some(v) = &self.arnold {
            write!(f, "\narnold         {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    #[serde(rename = "move")]
    pub mv: &'static str,
    pub site: Vec<u32>,
    pub code: String,
}

/// The trace as a list of `{move, site, code}` records.
pub fn trace_records(t: &ReductionTrace) -> Vec<TraceRecord> {
    t.steps
        .iter()
        .map(|s| TraceRecord { mv: s.mv.kind(), site: s.mv.site(), code: s.code.to_string() })
        .collect()
}

/// Greedy trace when the code has no triple chord, otherwise a witness
/// from the exhaustive search. `None` means the curve is not in S.
pub fn reduce(text: &str) -> Result<Option<ReductionTrace>, AnalysisError> {
    let p = realize(&parse_code(text)?)?;
    if count_tr(p.code()) == 0 {
        return Ok(Some(reduce_no_triple(&p).expect("no triple chord and the theorem holds here")));
    }
    Ok(in_s(&p).1)
}
