//! Exhaustive generation of spherical knot projections by crossing number.
//!
//! Words are grown in first-occurrence normal form. A chord may only close
//! at odd distance from where it opened, which is Gauss's parity
//! condition, and only words equal to their own canonical form are kept,
//! so every class is produced exactly once and no dedup set is needed.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::chords::{canonical_word, count_tr, count_x, CanonicalCode};
use crate::invariants::{arnold_invariant, ExactRational};
use crate::moves::Membership;
use crate::planar::{self, is_prime, is_reduced, PlanarCurve};

pub const DEFAULT_MAX_N: usize = 8;

/// Default crossing number up to which records carry the Arnold invariant.
pub const DEFAULT_ARNOLD_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("crossing number {n} exceeds the enumeration budget {max}")]
    BudgetExceeded { n: usize, max: usize },
}

/// Canonical codes of length `2n` that satisfy Gauss parity, in
/// increasing order. Realizability is not checked here.
pub fn parity_canonical_codes(n: usize) -> Vec<CanonicalCode> {
    let mut out = Vec::new();
    let mut word = vec![0u32; 2 * n];
    let mut opened_at = vec![usize::MAX; n + 1];
    grow(&mut word, 0, 1, &mut opened_at, &mut out);
    out
}

fn grow(
    word: &mut Vec<u32>,
    k: usize,
    next: u32,
    opened_at: &mut [usize],
    out: &mut Vec<CanonicalCode>,
) {
    let m = word.len();
    if k == m {
        if canonical_word(word) == *word {
            out.push(CanonicalCode::from_canonical(word.clone()));
        }
        return;
    }
    let n = (m / 2) as u32;
    let open = (1..next).filter(|&l| opened_at[l as usize] != usize::MAX).count();
    // Close an open chord at odd distance. Lower labels first keeps the
    // output sorted.
    for l in 1..next {
        let at = opened_at[l as usize];
        if at != usize::MAX && (k - at) % 2 == 1 {
            word[k] = l;
            opened_at[l as usize] = usize::MAX;
            grow(word, k + 1, next, opened_at, out);
            opened_at[l as usize] = at;
        }
    }
    if next <= n && open < m - k {
        word[k] = next;
        opened_at[next as usize] = k;
        grow(word, k + 1, next + 1, opened_at, out);
        opened_at[next as usize] = usize::MAX;
    }
}

pub fn enumerate_curves(n: usize) -> Result<Vec<PlanarCurve>, EnumerateError> {
    enumerate_curves_within(n, DEFAULT_MAX_N)
}

/// One deterministic realization per realizable canonical code with `n`
/// crossings, sorted by code.
pub fn enumerate_curves_within(n: usize, max_n: usize) -> Result<Vec<PlanarCurve>, EnumerateError> {
    if n > max_n {
        return Err(EnumerateError::BudgetExceeded { n, max: max_n });
    }
    Ok(parity_canonical_codes(n)
        .iter()
        .filter_map(|c| planar::realize(&c.to_diagram()).ok())
        .collect())
}

/// Every curve with `0 <= n <= max_n` crossings.
pub fn enumerate_up_to(max_n: usize, budget: usize) -> Result<Vec<PlanarCurve>, EnumerateError> {
    if max_n > budget {
        return Err(EnumerateError::BudgetExceeded { n: max_n, max: budget });
    }
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_curves_within(n, budget)?);
    }
    Ok(out)
}

/// Summary of one enumerated curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRecord {
    pub code: CanonicalCode,
    pub n: usize,
    pub x: u64,
    pub tr: u64,
    pub face_degrees: Vec<usize>,
    pub monogons: usize,
    pub strong_bigons: usize,
    pub reduced: bool,
    pub prime: bool,
    pub in_s: bool,
    pub arnold: Option<ExactRational>,
}

impl EnumerationRecord {
    /// Evaluates every field on `p`, with the Arnold invariant only when
    /// `with_arnold` is set. `membership` may be shared across records.
    pub fn of(p: &PlanarCurve, with_arnold: bool, membership: &mut Membership) -> EnumerationRecord {
        EnumerationRecord {
            code: p.canonical_code(),
            n: p.n(),
            x: count_x(p.code()),
            tr: count_tr(p.code()),
            face_degrees: planar::face_degrees(p),
            monogons: planar::monogons(p).len(),
            strong_bigons: planar::strong_bigons(p).len(),
            reduced: is_reduced(p),
            prime: is_prime(p),
            in_s: membership.contains(p),
            arnold: with_arnold.then(|| arnold_invariant(p)),
        }
    }
}

/// Records for every curve with at most `max_n` crossings, ordered by
/// `(n, code)`.
pub fn records(max_n: usize, arnold_max_n: usize, budget: usize) -> Result<Vec<EnumerationRecord>, EnumerateError> {
    let mut membership = Membership::default();
    Ok(enumerate_up_to(max_n, budget)?
        .iter()
        .map(|p| EnumerationRecord::of(p, p.n() <= arnold_max_n, &mut membership))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn codes(n: usize) -> Vec<alloc::string::String> {
        enumerate_curves(n)
            .unwrap()
            .iter()
            .map(|p| p.canonical_code().to_string())
            .collect()
    }

    #[test]
    fn smallest_crossing_numbers() {
        assert_eq!(codes(0), [""]);
        assert_eq!(codes(1), ["1 1"]);
        assert_eq!(codes(2), ["1 1 2 2"]);
    }

    #[test]
    fn budget() {
        assert_eq!(
            enumerate_curves(9),
            Err(EnumerateError::BudgetExceeded { n: 9, max: 8 })
        );
    }

    #[test]
    fn output_is_canonical_and_distinct() {
        for n in 0..=5 {
            let cs = codes(n);
            let mut sorted = cs.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), cs.len());
        }
    }

    #[test]
    fn record_of_figure_eight() {
        let p = planar::realize(&crate::parse_code("1 1").unwrap()).unwrap();
        let r = EnumerationRecord::of(&p, true, &mut Membership::default());
        assert_eq!(r.code.to_string(), "1 1");
        assert_eq!((r.n, r.x, r.tr), (1, 0, 0));
        assert_eq!(r.face_degrees, [1, 1, 2]);
        assert_eq!((r.monogons, r.strong_bigons), (2, 0));
        assert!(!r.reduced && r.prime && r.in_s);
        assert_eq!(r.arnold, Some(ExactRational::zero()));
    }
}
