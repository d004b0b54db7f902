//! Over/under resolutions of a projection, the second Conway coefficient
//! `a2` of the resulting knots, and its average.
//!
//! `a2` has two routes. [`a2_skein`] runs the Conway skein relation down
//! to descending diagrams and is the reference. [`a2_gauss_formula`]
//! counts signed pairs of crossing arrows in the Gauss diagram and is the
//! fast path; the two are checked against each other exhaustively.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::planar::{Frame, PlanarCurve};

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(Ratio<i64>);

impl ExactRational {
    pub fn new(numer: i64, denom: i64) -> ExactRational {
        ExactRational(Ratio::new(numer, denom))
    }

    pub fn integer(v: i64) -> ExactRational {
        ExactRational(Ratio::from_integer(v))
    }

    pub fn zero() -> ExactRational {
        ExactRational::integer(0)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }

    pub fn scaled(self, k: i64) -> ExactRational {
        ExactRational(self.0 * k)
    }
}

/// `p/q`, or `k` when the denominator is 1.
impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad rational `{0}`")]
pub struct RationalParseError(pub String);

impl FromStr for ExactRational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalParseError(s.into());
        let int = |t: &str| -> Result<i64, RationalParseError> {
            if t.is_empty() || t.starts_with('+') || t.trim() != t {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(ExactRational::integer(int(s)?)),
            Some((p, q)) => {
                let (p, q) = (int(p)?, int(q)?);
                if q <= 0 {
                    return Err(bad());
                }
                let r = ExactRational::new(p, q);
                // Only the canonical spelling is accepted.
                if r.numer() != p || r.denom() != q || q == 1 {
                    return Err(bad());
                }
                Ok(r)
            }
        }
    }
}

/// One of the `2^n` over/under choices for a projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution<'a> {
    pub base: &'a PlanarCurve,
    /// Per label: whether the first passage (in traversal order) is over.
    pub over_first: Vec<bool>,
    /// Per label: crossing sign, `+1` for right-handed.
    pub signs: Vec<i8>,
}

impl<'a> Resolution<'a> {
    pub fn new(base: &'a PlanarCurve, over_first: Vec<bool>) -> Resolution<'a> {
        assert_eq!(over_first.len(), base.n());
        let signs = over_first
            .iter()
            .zip(base.frames())
            .map(|(&over, &frame)| crossing_sign(frame, over))
            .collect();
        Resolution { base, over_first, signs }
    }

    /// Resolution number `index` in bit-counter order: bit `i` decides
    /// label `i + 1`.
    pub fn from_index(base: &'a PlanarCurve, index: u64) -> Resolution<'a> {
        let over = (0..base.n()).map(|i| index >> i & 1 == 1).collect();
        Resolution::new(base, over)
    }

    pub fn sign(&self, label: u32) -> i8 {
        self.signs[label as usize - 1]
    }

    /// Whether traversal position `k` passes over.
    pub fn over_at(&self, k: usize, first: bool) -> bool {
        let l = self.base.code().word()[k];
        self.over_first[l as usize - 1] == first
    }

    pub fn with_flipped(&self, label: u32) -> Resolution<'a> {
        let mut over = self.over_first.clone();
        over[label as usize - 1] ^= true;
        Resolution::new(self.base, over)
    }

    /// The mirror knot: every crossing switched.
    pub fn mirrored(&self) -> Resolution<'a> {
        Resolution::new(self.base, self.over_first.iter().map(|b| !b).collect())
    }
}

/// A crossing is positive when (over tangent, under tangent) is a
/// positively oriented frame.
fn crossing_sign(frame: Frame, first_over: bool) -> i8 {
    match (frame, first_over) {
        (Frame::Positive, true) | (Frame::Negative, false) => 1,
        _ => -1,
    }
}

pub struct Resolutions<'a> {
    base: &'a PlanarCurve,
    next: u64,
    end: u64,
}

impl<'a> Iterator for Resolutions<'a> {
    type Item = Resolution<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next == self.end {
            return None;
        }
        let r = Resolution::from_index(self.base, self.next);
        self.next += 1;
        Some(r)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Resolutions<'_> {}

/// All `2^n` resolutions in bit-counter order.
pub fn resolutions(p: &PlanarCurve) -> Resolutions<'_> {
    assert!(p.n() < 63, "too many crossings to enumerate resolutions");
    Resolutions { base: p, next: 0, end: 1u64 << p.n() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Passage {
    crossing: u32,
    over: bool,
}

/// An oriented link diagram: one cyclic passage sequence per component.
#[derive(Debug, Clone)]
struct LinkDiagram {
    components: Vec<Vec<Passage>>,
    /// Indexed by crossing id.
    signs: Vec<i8>,
}

/// Conway polynomial coefficients of `z^0, z^1, z^2`.
type Truncated = [i64; 3];

impl LinkDiagram {
    fn of_resolution(r: &Resolution<'_>) -> LinkDiagram {
        let pos = r.base.code().position_table();
        let passages = r
            .base
            .code()
            .word()
            .iter()
            .enumerate()
            .map(|(k, &l)| {
                let first = pos[l as usize - 1][0] == k;
                Passage { crossing: l - 1, over: r.over_first[l as usize - 1] == first }
            })
            .collect();
        LinkDiagram { components: vec![passages], signs: r.signs.clone() }
    }

    /// The first crossing met from below, walking the components in order
    /// from their first passage. None means the diagram is descending,
    /// hence a trivial link.
    fn first_ascending(&self) -> Option<u32> {
        let mut seen = vec![false; self.signs.len()];
        for comp in &self.components {
            for p in comp {
                let s = &mut seen[p.crossing as usize];
                if !*s {
                    *s = true;
                    if !p.over {
                        return Some(p.crossing);
                    }
                }
            }
        }
        None
    }

    fn locate(&self, x: u32) -> [(usize, usize); 2] {
        let mut found = [(usize::MAX, usize::MAX); 2];
        let mut k = 0;
        for (c, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                if p.crossing == x {
                    found[k] = (c, i);
                    k += 1;
                }
            }
        }
        debug_assert_eq!(k, 2);
        found
    }

    fn switched(&self, x: u32) -> LinkDiagram {
        let mut d = self.clone();
        for comp in &mut d.components {
            for p in comp.iter_mut().filter(|p| p.crossing == x) {
                p.over = !p.over;
            }
        }
        d.signs[x as usize] = -d.signs[x as usize];
        d
    }

    /// Oriented smoothing at `x`: a self-crossing splits its component in
    /// two, a crossing between components merges them.
    fn smoothed(&self, x: u32) -> LinkDiagram {
        let [(ca, i), (cb, j)] = self.locate(x);
        let mut components: Vec<Vec<Passage>> = Vec::with_capacity(self.components.len() + 1);
        if ca == cb {
            let comp = &self.components[ca];
            let inner = comp[i + 1..j].to_vec();
            let mut outer = comp[j + 1..].to_vec();
            outer.extend_from_slice(&comp[..i]);
            for (c, other) in self.components.iter().enumerate() {
                if c != ca {
                    components.push(other.clone());
                }
            }
            components.push(inner);
            components.push(outer);
        } else {
            let (a, b) = (&self.components[ca], &self.components[cb]);
            let mut merged = a[i + 1..].to_vec();
            merged.extend_from_slice(&a[..i]);
            merged.extend_from_slice(&b[j + 1..]);
            merged.extend_from_slice(&b[..j]);
            for (c, other) in self.components.iter().enumerate() {
                if c != ca && c != cb {
                    components.push(other.clone());
                }
            }
            components.push(merged);
        }
        LinkDiagram { components, signs: self.signs.clone() }
    }

    /// Coefficients up to `z^degree` via
    /// `∇(L+) - ∇(L-) = z ∇(L0)`, `∇(unknot) = 1`, `∇(split) = 0`.
    fn conway(&self, degree: usize) -> Truncated {
        let mut out = [0; 3];
        // The Conway polynomial of a c-component link is divisible by z^(c-1).
        if self.components.len() - 1 > degree {
            return out;
        }
        let Some(x) = self.first_ascending() else {
            if self.components.len() == 1 {
                out[0] = 1;
            }
            return out;
        };
        out = self.switched(x).conway(degree);
        if degree > 0 {
            let sign = i64::from(self.signs[x as usize]);
            let lower = self.smoothed(x).conway(degree - 1);
            for k in 0..degree {
                out[k + 1] += sign * lower[k];
            }
        }
        out
    }
}

/// `a2` by the skein relation. Every crossing met from below is switched
/// until the diagram is descending; each switch spends one power of `z` on
/// the smoothing.
pub fn a2_skein(r: &Resolution<'_>) -> i64 {
    LinkDiagram::of_resolution(r).conway(2)[2]
}

/// `a2` from the Gauss diagram with the base point before position 0.
pub fn a2_gauss_formula(r: &Resolution<'_>) -> i64 {
    a2_gauss_formula_based(r, 0)
}

/// `a2` from the Gauss diagram read from traversal position `base`.
///
/// Sums `sign(a) * sign(b)` over chord pairs met in the order `a b a b`
/// from the base point, where the strand passes under at the first
/// occurrence of `a` and over at the first occurrence of `b`.
pub fn a2_gauss_formula_based(r: &Resolution<'_>, base: usize) -> i64 {
    let word = r.base.code().word();
    let m = word.len();
    if m == 0 {
        return 0;
    }
    let n = r.base.n();
    // Positions relative to the base point: first and second meeting.
    let mut meet = vec![[usize::MAX; 2]; n];
    let mut first_is_first = vec![false; n];
    for k in 0..m {
        let src = (base + k) % m;
        let l = word[src] as usize - 1;
        if meet[l][0] == usize::MAX {
            meet[l][0] = k;
            first_is_first[l] = r.base.code().positions(l as u32 + 1).expect("label").0 == src;
        } else {
            meet[l][1] = k;
        }
    }
    let under_first = |l: usize| r.over_first[l] != first_is_first[l];
    let mut total = 0i64;
    for a in 0..n {
        if !under_first(a) {
            continue;
        }
        for b in 0..n {
            let [a0, a1] = meet[a];
            let [b0, b1] = meet[b];
            if a0 < b0 && b0 < a1 && a1 < b1 && !under_first(b) {
                total += i64::from(r.signs[a]) * i64::from(r.signs[b]);
            }
        }
    }
    total
}

/// How [`average_a2_with`] evaluates each resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum A2Method {
    #[default]
    GaussFormula,
    Skein,
}

pub fn average_a2(p: &PlanarCurve) -> ExactRational {
    average_a2_with(p, A2Method::GaussFormula)
}

/// Mean of `a2` over all `2^n` resolutions, summed in bit-counter order.
pub fn average_a2_with(p: &PlanarCurve, method: A2Method) -> ExactRational {
    let total: i64 = resolutions(p)
        .map(|r| match method {
            A2Method::GaussFormula => a2_gauss_formula(&r),
            A2Method::Skein => a2_skein(&r),
        })
        .sum();
    ExactRational::new(total, 1i64 << p.n())
}

/// `J+ + 2St`, i.e. eight times the average `a2`.
pub fn arnold_invariant(p: &PlanarCurve) -> ExactRational {
    arnold_invariant_with(p, A2Method::GaussFormula)
}

pub fn arnold_invariant_with(p: &PlanarCurve, method: A2Method) -> ExactRational {
    average_a2_with(p, method).scaled(8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::parse_code;
    use crate::planar::realize;
    use alloc::string::ToString;

    fn curve(text: &str) -> PlanarCurve {
        realize(&parse_code(text).unwrap()).unwrap()
    }

    fn alternating<'a>(p: &'a PlanarCurve) -> [Resolution<'a>; 2] {
        // Over at even positions, or at odd positions.
        let word = p.code().word();
        let pos = p.code().position_table();
        let over: Vec<bool> = (0..p.n()).map(|l| pos[l][0] % 2 == 0).collect();
        let _ = word;
        let r = Resolution::new(p, over);
        let m = r.mirrored();
        [r, m]
    }

    #[test]
    fn rationals_print_and_parse() {
        assert_eq!(ExactRational::new(2, 8).to_string(), "1/4");
        assert_eq!(ExactRational::new(16, 8).to_string(), "2");
        assert_eq!(ExactRational::new(-3, 6).to_string(), "-1/2");
        assert_eq!("1/4".parse::<ExactRational>(), Ok(ExactRational::new(1, 4)));
        assert_eq!("-7".parse::<ExactRational>(), Ok(ExactRational::integer(-7)));
        for bad in ["", "1/0", "2/4", "1/-2", "a", "1/", "+1", "3/1", " 1"] {
            assert!(bad.parse::<ExactRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn resolution_counts() {
        assert_eq!(resolutions(&PlanarCurve::unknot()).count(), 1);
        assert_eq!(resolutions(&curve("1 1")).count(), 2);
        assert_eq!(resolutions(&curve("1 2 3 1 2 3")).count(), 8);
    }

    #[test]
    fn flipping_a_bit_flips_the_sign() {
        let p = curve("1 2 3 1 4 3 2 4");
        for r in resolutions(&p) {
            for l in 1..=4 {
                assert_eq!(r.with_flipped(l).sign(l), -r.sign(l));
            }
        }
    }

    #[test]
    fn unknot_and_kinks() {
        let u = PlanarCurve::unknot();
        let r = Resolution::new(&u, Vec::new());
        assert_eq!(a2_skein(&r), 0);
        assert_eq!(a2_gauss_formula(&r), 0);
        for r in resolutions(&curve("1 1")) {
            assert_eq!(a2_skein(&r), 0);
            assert_eq!(a2_gauss_formula(&r), 0);
        }
    }

    #[test]
    fn trefoil_shadow() {
        let p = curve("1 2 3 1 2 3");
        let [r, m] = alternating(&p);
        assert_eq!(a2_skein(&r), 1);
        assert_eq!(a2_skein(&m), 1);
        let alt = [r.over_first.clone(), m.over_first.clone()];
        for r in resolutions(&p) {
            let expect = if alt.contains(&r.over_first) { 1 } else { 0 };
            assert_eq!(a2_skein(&r), expect, "{:?}", r.over_first);
            assert_eq!(a2_gauss_formula(&r), expect);
        }
        assert_eq!(average_a2(&p), ExactRational::new(1, 4));
        assert_eq!(arnold_invariant(&p), ExactRational::integer(2));
        assert_eq!(arnold_invariant_with(&p, A2Method::Skein), ExactRational::integer(2));
    }

    #[test]
    fn figure_eight_knot() {
        // Conway polynomial 1 - z^2.
        let p = curve("1 2 3 1 4 3 2 4");
        for r in alternating(&p) {
            assert_eq!(a2_skein(&r), -1);
            assert_eq!(a2_gauss_formula(&r), -1);
        }
    }

    #[test]
    fn small_averages() {
        assert!(arnold_invariant(&PlanarCurve::unknot()).is_zero());
        assert!(average_a2(&curve("1 1")).is_zero());
        assert!(arnold_invariant(&curve("1 1")).is_zero());
    }

    #[test]
    fn formula_is_base_point_free() {
        for text in ["1 2 3 1 2 3", "1 2 3 1 4 3 2 4", "1 2 3 4 5 1 2 3 4 5"] {
            let p = curve(text);
            for r in resolutions(&p) {
                let v = a2_gauss_formula(&r);
                for base in 0..p.edge_count() {
                    assert_eq!(a2_gauss_formula_based(&r, base), v);
                }
            }
        }
    }
}
