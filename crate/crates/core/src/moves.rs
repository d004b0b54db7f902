//! The decreasing moves 1b (remove a monogon) and s2b (remove a strong
//! bigon), greedy reduction and membership in the class of curves that
//! reduce to the simple closed curve.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::chords::{count_tr, CanonicalCode};
use crate::planar::{monogons, strong_bigons_with, CurveKey, PlanarCurve, PlanarError, Strongness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    /// Remove the monogon at this double point.
    OneB(u32),
    /// Remove the strong bigon with these corners (smaller label first).
    S2b(u32, u32),
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::OneB(_) => "1b",
            Move::S2b(..) => "s2b",
        }
    }

    pub fn site(&self) -> Vec<u32> {
        match *self {
            Move::OneB(v) => vec![v],
            Move::S2b(a, b) => vec![a, b],
        }
    }

    pub fn crossings_removed(&self) -> usize {
        match self {
            Move::OneB(_) => 1,
            Move::S2b(..) => 2,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::OneB(v) => write!(f, "1b@{v}"),
            Move::S2b(a, b) => write!(f, "s2b@{a},{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move {0} does not apply to this curve")]
    InapplicableMove(Move),
    #[error("the code contains {0} triple chord(s)")]
    PreconditionTripleChord(u64),
    #[error("no 1b or s2b move applies to `{code}` (frames {frames}) although it has no triple chord")]
    TheoremViolation { code: CanonicalCode, frames: alloc::string::String },
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

/// One applied move. Site labels refer to the curve the move was applied
/// to; `code` is the canonical code of the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub code: CanonicalCode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub start: CanonicalCode,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn terminal(&self) -> &CanonicalCode {
        self.steps.last().map_or(&self.start, |s| &s.code)
    }

    pub fn reaches_unknot(&self) -> bool {
        self.terminal().n() == 0
    }
}

pub fn applicable_moves(p: &PlanarCurve) -> Vec<Move> {
    applicable_moves_with(p, Strongness::Nested)
}

/// 1b moves ordered by vertex, then s2b moves ordered by corner pair.
pub fn applicable_moves_with(p: &PlanarCurve, rule: Strongness) -> Vec<Move> {
    let mut out: Vec<Move> = monogons(p).iter().map(|f| Move::OneB(f.corners[0])).collect();
    out.sort_unstable();
    out.dedup();
    let mut bigons: Vec<Move> = strong_bigons_with(p, rule)
        .iter()
        .filter_map(|f| f.bigon_corners())
        .map(|(a, b)| Move::S2b(a, b))
        .collect();
    bigons.sort_unstable();
    bigons.dedup();
    out.extend(bigons);
    out
}

pub fn apply_move(p: &PlanarCurve, m: Move) -> Result<PlanarCurve, MoveError> {
    apply_move_with(p, m, Strongness::Nested)
}

/// Deletes the site's occurrences from the code; the local picture at
/// every other double point is kept.
pub fn apply_move_with(p: &PlanarCurve, m: Move, rule: Strongness) -> Result<PlanarCurve, MoveError> {
    if !applicable_moves_with(p, rule).contains(&m) {
        return Err(MoveError::InapplicableMove(m));
    }
    Ok(p.remove_labels(&m.site())?)
}

pub fn reduce_no_triple(p: &PlanarCurve) -> Result<ReductionTrace, MoveError> {
    reduce_no_triple_with(p, Strongness::Nested)
}

/// Greedy reduction taking the first applicable move at every step.
pub fn reduce_no_triple_with(p: &PlanarCurve, rule: Strongness) -> Result<ReductionTrace, MoveError> {
    let tr = count_tr(p.code());
    if tr != 0 {
        return Err(MoveError::PreconditionTripleChord(tr));
    }
    let mut trace = ReductionTrace { start: p.canonical_code(), steps: Vec::new() };
    let mut cur = p.clone();
    while !cur.is_unknot() {
        let Some(&mv) = applicable_moves_with(&cur, rule).first() else {
            return Err(MoveError::TheoremViolation {
                code: cur.canonical_code(),
                frames: crate::planar::frame_string(cur.frames()),
            });
        };
        cur = cur.remove_labels(&mv.site())?;
        debug_assert_eq!(count_tr(cur.code()), 0);
        trace.steps.push(TraceStep { mv, code: cur.canonical_code() });
    }
    Ok(trace)
}

/// Backtracking search for a 1b/s2b sequence down to the simple closed
/// curve, memoized on [`CurveKey`]. Reusable across curves.
#[derive(Debug, Clone, Default)]
pub struct Membership {
    rule: Strongness,
    known: BTreeMap<CurveKey, bool>,
}

impl Membership {
    pub fn new(rule: Strongness) -> Membership {
        Membership { rule, known: BTreeMap::new() }
    }

    pub fn contains(&mut self, p: &PlanarCurve) -> bool {
        if p.is_unknot() {
            return true;
        }
        let key = p.key();
        if let Some(&v) = self.known.get(&key) {
            return v;
        }
        let mut found = false;
        for mv in applicable_moves_with(p, self.rule) {
            let next = p.remove_labels(&mv.site()).expect("moves preserve planarity");
            if self.contains(&next) {
                found = true;
                break;
            }
        }
        self.known.insert(key, found);
        found
    }

    /// A witness sequence when `p` reduces to the simple closed curve.
    pub fn witness(&mut self, p: &PlanarCurve) -> Option<ReductionTrace> {
        if !self.contains(p) {
            return None;
        }
        let mut trace = ReductionTrace { start: p.canonical_code(), steps: Vec::new() };
        let mut cur = p.clone();
        while !cur.is_unknot() {
            let (mv, next) = applicable_moves_with(&cur, self.rule)
                .into_iter()
                .map(|mv| (mv, cur.remove_labels(&mv.site()).expect("moves preserve planarity")))
                .find(|(_, next)| self.contains(next))
                .expect("a member has a member successor");
            trace.steps.push(TraceStep { mv, code: next.canonical_code() });
            cur = next;
        }
        Some(trace)
    }
}

/// Whether `p` reduces to the simple closed curve by 1b and s2b moves,
/// with a witness trace when it does.
pub fn in_s(p: &PlanarCurve) -> (bool, Option<ReductionTrace>) {
    let w = Membership::new(Strongness::Nested).witness(p);
    (w.is_some(), w)
}
