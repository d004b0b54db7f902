//! Spherical realizations of Gauss codes as combinatorial maps.
//!
//! Every traversal position `k` of the code contributes two darts: the
//! out-dart `2k` leaving `word[k]` along edge `k`, and the in-dart `2k + 1`
//! arriving at `word[k]` along edge `k - 1`. Edge `k` joins positions `k`
//! and `k + 1`. The only freedom left is, at each double point, on which
//! side the second passage crosses the first; that choice is a [`Frame`].

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::chords::{
    self, canonicalize, closed_intervals, gauss_parity_failure, CanonicalCode, ChordDiagram,
    ClosedInterval, Symmetry,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("not realizable on the sphere{}", match .parity_chord {
        Some(c) => alloc::format!(" (parity fails at chord {c})"),
        None => alloc::string::String::new(),
    })]
    NotRealizable { parity_chord: Option<u32> },
    #[error("the curve has no crossings")]
    NoCrossings,
    #[error("edge {site} out of range for a curve with {edges} edges")]
    InvalidSite { site: usize, edges: usize },
}

/// Local picture at a double point: whether the tangents (first passage,
/// second passage) form a positively oriented frame.
///
/// Counterclockwise dart order is `out1, out2, in1, in2` for `Positive`
/// and `out1, in2, in1, out2` for `Negative`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Frame {
    Negative,
    Positive,
}

impl Frame {
    pub fn flipped(self) -> Frame {
        match self {
            Frame::Positive => Frame::Negative,
            Frame::Negative => Frame::Positive,
        }
    }

    fn flip_if(self, cond: bool) -> Frame {
        if cond {
            self.flipped()
        } else {
            self
        }
    }
}

/// Which bigons count as strong.
///
/// `Nested` is the oriented reading: the bigon's two edges run `a -> b`
/// and `b -> a`, so the corner chords do not interleave. `Interleaved` is
/// the opposite reading and only exists to show that it contradicts the
/// theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strongness {
    #[default]
    Nested,
    Interleaved,
}

/// One face-tracing orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<u32>,
    /// Vertex label at each dart of the orbit.
    pub corners: Vec<u32>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Corner labels of a bigon with two distinct corners.
    pub fn bigon_corners(&self) -> Option<(u32, u32)> {
        match self.corners[..] {
            [a, b] if a != b => Some((a.min(b), a.max(b))),
            _ => None,
        }
    }
}

/// A knot projection on the sphere: a Gauss code plus one [`Frame`] per
/// double point, with genus 0 verified at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarCurve {
    code: ChordDiagram,
    frames: Vec<Frame>,
    faces: Vec<Face>,
}

/// Rotation-system tables for a code under a frame assignment.
struct DartMaps {
    /// Vertex label of each dart.
    vertex: Vec<u32>,
    /// Next dart counterclockwise around the same vertex.
    rot: Vec<u32>,
}

fn alpha(d: u32, m: usize) -> u32 {
    let k = (d / 2) as usize;
    if d % 2 == 0 {
        (2 * ((k + 1) % m) + 1) as u32
    } else {
        (2 * ((k + m - 1) % m)) as u32
    }
}

impl DartMaps {
    fn new(code: &ChordDiagram, pos: &[[usize; 2]], frames: &[Frame]) -> DartMaps {
        let m = code.len();
        let mut vertex = vec![0; 2 * m];
        let mut rot = vec![0; 2 * m];
        for (k, &l) in code.word().iter().enumerate() {
            vertex[2 * k] = l;
            vertex[2 * k + 1] = l;
        }
        for (i, &[p, q]) in pos.iter().enumerate() {
            let (o1, i1, o2, i2) = (2 * p as u32, 2 * p as u32 + 1, 2 * q as u32, 2 * q as u32 + 1);
            let ccw = match frames[i] {
                Frame::Positive => [o1, o2, i1, i2],
                Frame::Negative => [o1, i2, i1, o2],
            };
            for j in 0..4 {
                rot[ccw[j] as usize] = ccw[(j + 1) % 4];
            }
        }
        DartMaps { vertex, rot }
    }

    fn phi(&self, d: u32, m: usize) -> u32 {
        self.rot[alpha(d, m) as usize]
    }

    fn count_faces(&self, m: usize, seen: &mut [bool]) -> usize {
        seen.iter_mut().for_each(|s| *s = false);
        let mut faces = 0;
        for start in 0..2 * m {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start as u32;
            while !seen[d as usize] {
                seen[d as usize] = true;
                d = self.phi(d, m);
            }
        }
        faces
    }

    fn faces(&self, m: usize) -> Vec<Face> {
        let mut seen = vec![false; 2 * m];
        let mut out = Vec::new();
        for start in 0..2 * m {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start as u32;
            while !seen[d as usize] {
                seen[d as usize] = true;
                darts.push(d);
                d = self.phi(d, m);
            }
            let corners = darts.iter().map(|&d| self.vertex[d as usize]).collect();
            out.push(Face { darts, corners });
        }
        out
    }
}

impl PlanarCurve {
    /// The simple closed curve.
    pub fn unknot() -> PlanarCurve {
        PlanarCurve {
            code: ChordDiagram::empty(),
            frames: Vec::new(),
            faces: vec![
                Face { darts: Vec::new(), corners: Vec::new() },
                Face { darts: Vec::new(), corners: Vec::new() },
            ],
        }
    }

    /// Builds the map for `code` with the given frames, failing unless
    /// face tracing yields `n + 2` faces.
    pub fn from_frames(code: ChordDiagram, frames: Vec<Frame>) -> Result<PlanarCurve, PlanarError> {
        assert_eq!(frames.len(), code.n(), "one frame per double point");
        if code.is_empty() {
            return Ok(PlanarCurve::unknot());
        }
        let maps = DartMaps::new(&code, &code.position_table(), &frames);
        let faces = maps.faces(code.len());
        if faces.len() != code.n() + 2 {
            return Err(PlanarError::NotRealizable { parity_chord: gauss_parity_failure(&code) });
        }
        Ok(PlanarCurve { code, frames, faces })
    }

    pub fn code(&self) -> &ChordDiagram {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn is_unknot(&self) -> bool {
        self.code.is_empty()
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn frame(&self, label: u32) -> Frame {
        self.frames[label as usize - 1]
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canonicalize(&self.code)
    }

    pub fn edge_count(&self) -> usize {
        self.code.len()
    }

    /// Counterclockwise darts around `label`.
    pub fn rotation(&self, label: u32) -> [u32; 4] {
        let (p, q) = self.code.positions(label).expect("label in range");
        let (o1, i1, o2, i2) = (2 * p as u32, 2 * p as u32 + 1, 2 * q as u32, 2 * q as u32 + 1);
        match self.frame(label) {
            Frame::Positive => [o1, o2, i1, i2],
            Frame::Negative => [o1, i2, i1, o2],
        }
    }

    /// Deletes double points from the curve, keeping the local picture at
    /// every surviving one.
    pub fn remove_labels(&self, doomed: &[u32]) -> Result<PlanarCurve, PlanarError> {
        let (code, old) = self.code.remove_labels(doomed);
        let frames = old.iter().map(|&l| self.frame(l)).collect();
        PlanarCurve::from_frames(code, frames)
    }

    /// The same curve seen through a symmetry of its parametrization, and
    /// optionally in a mirror.
    pub fn transformed(&self, sym: Symmetry, mirrored: bool) -> PlanarCurve {
        let (word, frames) = transform(&self.code, &self.frames, sym, mirrored);
        PlanarCurve::from_frames(ChordDiagram::from_normalized(word), frames)
            .expect("symmetries preserve genus")
    }

    /// A canonical form of the curve under reparametrization and
    /// homeomorphisms of the sphere.
    pub fn key(&self) -> CurveKey {
        let mut best: Option<CurveKey> = None;
        for sym in Symmetry::all(self.code.len()) {
            for mirrored in [false, true] {
                let (word, frames) = transform(&self.code, &self.frames, sym, mirrored);
                let cand = CurveKey { word, frames };
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap_or(CurveKey { word: Vec::new(), frames: Vec::new() })
    }
}

/// Canonical representative of a [`PlanarCurve`] up to symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveKey {
    pub word: Vec<u32>,
    pub frames: Vec<Frame>,
}

impl CurveKey {
    pub fn to_curve(&self) -> PlanarCurve {
        PlanarCurve::from_frames(ChordDiagram::from_normalized(self.word.clone()), self.frames.clone())
            .expect("keys come from realized curves")
    }

    /// Frames as a string of `+` / `-`, one per label.
    pub fn frame_string(&self) -> alloc::string::String {
        frame_string(&self.frames)
    }
}

pub fn frame_string(frames: &[Frame]) -> alloc::string::String {
    frames
        .iter()
        .map(|f| match f {
            Frame::Positive => '+',
            Frame::Negative => '-',
        })
        .collect()
}

fn transform(code: &ChordDiagram, frames: &[Frame], sym: Symmetry, mirrored: bool) -> (Vec<u32>, Vec<Frame>) {
    let m = code.len();
    let word = code.word();
    let mut map = vec![0u32; code.n() + 1];
    let mut first_src = vec![0usize; code.n() + 1];
    let mut new_word = Vec::with_capacity(m);
    let mut new_frames = Vec::with_capacity(code.n());
    let mut next = 1;
    for i in 0..m {
        let src = sym.source(i, m);
        let l = word[src] as usize;
        if map[l] == 0 {
            map[l] = next;
            next += 1;
            first_src[l] = src;
            let (p, _) = code.positions(l as u32).expect("label in range");
            let swapped = src != p;
            new_frames.push(frames[l - 1].flip_if(swapped != mirrored));
        }
        new_word.push(map[l]);
    }
    (new_word, new_frames)
}

fn frames_from_bits(n: usize, bits: u64) -> Vec<Frame> {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { Frame::Positive } else { Frame::Negative })
        .collect()
}

/// Searches frame assignments for genus-0 ones. Label 1 is pinned to
/// `Negative`, which loses nothing since mirroring flips every frame.
fn search(code: &ChordDiagram, first_only: bool) -> Vec<Vec<Frame>> {
    let n = code.n();
    assert!(n < 64, "realization search supports fewer than 64 crossings");
    let pos = code.position_table();
    let m = code.len();
    let mut seen = vec![false; 2 * m];
    let mut found = Vec::new();
    for high in 0..(1u64 << (n - 1)) {
        let frames = frames_from_bits(n, high << 1);
        let maps = DartMaps::new(code, &pos, &frames);
        if maps.count_faces(m, &mut seen) == n + 2 {
            found.push(frames);
            if first_only {
                break;
            }
        }
    }
    found
}

/// The first spherical realization of `cd` in frame-counter order.
pub fn realize(cd: &ChordDiagram) -> Result<PlanarCurve, PlanarError> {
    if cd.is_empty() {
        return Ok(PlanarCurve::unknot());
    }
    if let Some(c) = gauss_parity_failure(cd) {
        return Err(PlanarError::NotRealizable { parity_chord: Some(c) });
    }
    let frames = search(cd, true)
        .pop()
        .ok_or(PlanarError::NotRealizable { parity_chord: None })?;
    PlanarCurve::from_frames(cd.clone(), frames)
}

/// Every spherical realization of `cd` with label 1 pinned to `Negative`,
/// so mirror pairs are listed once.
pub fn realizations(cd: &ChordDiagram) -> Vec<PlanarCurve> {
    if cd.is_empty() {
        return vec![PlanarCurve::unknot()];
    }
    if gauss_parity_failure(cd).is_some() {
        return Vec::new();
    }
    search(cd, false)
        .into_iter()
        .map(|f| PlanarCurve::from_frames(cd.clone(), f).expect("search checked genus"))
        .collect()
}

pub fn faces(p: &PlanarCurve) -> &[Face] {
    &p.faces
}

pub fn face_degrees(p: &PlanarCurve) -> Vec<usize> {
    let mut d: Vec<usize> = p.faces.iter().map(Face::degree).collect();
    d.sort_unstable();
    d
}

pub fn monogons(p: &PlanarCurve) -> Vec<Face> {
    p.faces.iter().filter(|f| f.degree() == 1).cloned().collect()
}

pub fn strong_bigons(p: &PlanarCurve) -> Vec<Face> {
    strong_bigons_with(p, Strongness::Nested)
}

pub fn strong_bigons_with(p: &PlanarCurve, rule: Strongness) -> Vec<Face> {
    p.faces
        .iter()
        .filter(|f| match f.bigon_corners() {
            Some((a, b)) => {
                let crossing = chords::interleaved(&p.code, a, b).expect("corner labels exist");
                match rule {
                    Strongness::Nested => !crossing,
                    Strongness::Interleaved => crossing,
                }
            }
            None => false,
        })
        .cloned()
        .collect()
}

/// A simple sub-loop of the curve starting and ending at `origin`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Teardrop {
    pub origin: u32,
    /// Position of the origin where the loop starts.
    pub start: usize,
    /// Position of the origin where the loop ends (cyclically after `start`).
    pub end: usize,
    /// `C, P_1, ..., P_2k`: the origin followed by the loop's crossings in
    /// traversal order.
    pub boundary_labels: Vec<u32>,
    /// `sigma[i - 1] = j` when the `i`-th crossing met on the rest of the
    /// curve is `P_j`.
    pub sigma: Vec<usize>,
}

impl Teardrop {
    pub fn interval_len(&self, m: usize) -> usize {
        (self.end + m - self.start) % m
    }

    /// Whether `i < j` implies `sigma(i) > sigma(j)`.
    pub fn sigma_reverses(&self) -> bool {
        self.sigma.windows(2).all(|w| w[0] > w[1])
    }

    /// Positions covered by the loop, endpoints included.
    fn covers(&self, pos: usize, m: usize) -> bool {
        (pos + m - self.start) % m <= self.interval_len(m)
    }
}

pub fn find_teardrops(p: &PlanarCurve) -> Result<Vec<Teardrop>, PlanarError> {
    if p.is_unknot() {
        return Err(PlanarError::NoCrossings);
    }
    let word = p.code.word();
    let m = word.len();
    let mut out = Vec::new();
    for (i, [a, b]) in p.code.position_table().into_iter().enumerate() {
        let origin = i as u32 + 1;
        for (start, end) in [(a, b), (b, a)] {
            let inside: Vec<u32> = (1..(end + m - start) % m).map(|k| word[(start + k) % m]).collect();
            let simple = inside.iter().enumerate().all(|(k, l)| !inside[..k].contains(l));
            if !simple {
                continue;
            }
            let rest: Vec<u32> = (1..(start + m - end) % m)
                .map(|k| word[(end + k) % m])
                .filter(|l| inside.contains(l))
                .collect();
            let sigma = rest
                .iter()
                .map(|l| inside.iter().position(|x| x == l).expect("crossing on loop") + 1)
                .collect();
            let mut boundary_labels = vec![origin];
            boundary_labels.extend_from_slice(&inside);
            out.push(Teardrop { origin, start, end, boundary_labels, sigma });
        }
    }
    Ok(out)
}

/// A teardrop whose interval contains no other teardrop's interval; ties
/// go to the shortest interval, then the smallest origin.
pub fn innermost_teardrop(p: &PlanarCurve) -> Result<Teardrop, PlanarError> {
    let all = find_teardrops(p)?;
    let m = p.code.len();
    let contains = |outer: &Teardrop, inner: &Teardrop| -> bool {
        outer.origin != inner.origin && (0..=inner.interval_len(m)).all(|k| outer.covers((inner.start + k) % m, m))
    };
    all.iter()
        .filter(|t| !all.iter().any(|o| contains(t, o)))
        .min_by_key(|t| (t.interval_len(m), t.origin, t.start))
        .cloned()
        .ok_or(PlanarError::NoCrossings)
}

pub fn is_reduced(p: &PlanarCurve) -> bool {
    p.code
        .labels()
        .all(|l| !chords::is_nugatory(&p.code, l).expect("label in range"))
}

/// Splices `p2` into edge `site1` of `p1`, cutting `p2` open at edge
/// `site2`.
pub fn connected_sum(p1: &PlanarCurve, p2: &PlanarCurve, site1: usize, site2: usize) -> Result<PlanarCurve, PlanarError> {
    connected_sum_oriented(p1, p2, site1, site2, false, false)
}

/// [`connected_sum`] with `p2` optionally traversed backwards and/or
/// mirrored before splicing.
pub fn connected_sum_oriented(
    p1: &PlanarCurve,
    p2: &PlanarCurve,
    site1: usize,
    site2: usize,
    reversed: bool,
    mirrored: bool,
) -> Result<PlanarCurve, PlanarError> {
    if p2.is_unknot() {
        return Ok(p1.clone());
    }
    let (m1, m2) = (p1.code.len(), p2.code.len());
    if site2 >= m2 {
        return Err(PlanarError::InvalidSite { site: site2, edges: m2 });
    }
    // Cut p2 open at edge site2 and read it from one side of the cut.
    let sym = if reversed {
        Symmetry { shift: site2, reversed: true }
    } else {
        Symmetry { shift: (site2 + 1) % m2, reversed: false }
    };
    let (arc, arc_frames) = transform(&p2.code, &p2.frames, sym, mirrored);
    if p1.is_unknot() {
        return PlanarCurve::from_frames(ChordDiagram::from_normalized(arc), arc_frames);
    }
    if site1 >= m1 {
        return Err(PlanarError::InvalidSite { site: site1, edges: m1 });
    }
    let n1 = p1.n() as u32;
    let w1 = p1.code.word();
    let mut word = Vec::with_capacity(m1 + m2);
    word.extend_from_slice(&w1[..=site1]);
    word.extend(arc.iter().map(|l| l + n1));
    word.extend_from_slice(&w1[site1 + 1..]);
    let mut old_frames = p1.frames.clone();
    old_frames.extend_from_slice(&arc_frames);
    let (code, old) = ChordDiagram::renormalize(&word).with_origin(&word);
    let frames = old.iter().map(|&l| old_frames[l as usize - 1]).collect();
    PlanarCurve::from_frames(code, frames)
}

impl ChordDiagram {
    /// Pairs a renormalized diagram with the source label of each new label.
    fn with_origin(self, source: &[u32]) -> (ChordDiagram, Vec<u32>) {
        let mut old = Vec::with_capacity(self.n());
        for &l in source {
            if !old.contains(&l) {
                old.push(l);
            }
        }
        (self, old)
    }
}

/// Binary connected-sum tree of a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Prime(PlanarCurve),
    /// `inner` spliced into `outer` right after traversal position `site`.
    Sum {
        outer: Box<Decomposition>,
        inner: Box<Decomposition>,
        site: usize,
    },
}

impl Decomposition {
    pub fn factors(&self) -> Vec<PlanarCurve> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<PlanarCurve>) {
        match self {
            Decomposition::Prime(p) => {
                if !p.is_unknot() {
                    out.push(p.clone());
                }
            }
            Decomposition::Sum { outer, inner, .. } => {
                outer.collect(out);
                inner.collect(out);
            }
        }
    }

    /// Reassembles the curve with [`connected_sum`] at the recorded sites.
    pub fn rebuild(&self) -> PlanarCurve {
        match self {
            Decomposition::Prime(p) => p.clone(),
            Decomposition::Sum { outer, inner, site } => {
                let inner = inner.rebuild();
                let last = inner.edge_count() - 1;
                connected_sum(&outer.rebuild(), &inner, *site, last).expect("recorded sites are valid")
            }
        }
    }
}

pub fn decompose(p: &PlanarCurve) -> Decomposition {
    decompose_by(p, &|_| 0)
}

/// Like [`decompose`], with `pick` choosing among the available pairing-closed
/// intervals (given shortest first).
pub fn decompose_by(p: &PlanarCurve, pick: &dyn Fn(&[ClosedInterval]) -> usize) -> Decomposition {
    let ivs = closed_intervals(&p.code);
    if ivs.is_empty() {
        return Decomposition::Prime(p.clone());
    }
    let iv = ivs[pick(&ivs).min(ivs.len() - 1)];
    let m = p.code.len();
    // The inner piece is whichever side avoids position 0, so it is a
    // linear slice `start..start + len` with `start >= 1`.
    let (start, len) = if iv.start == 0 || iv.start + iv.len > m {
        ((iv.start + iv.len) % m, m - iv.len)
    } else {
        (iv.start, iv.len)
    };
    let word = p.code.word();
    let slice = |range: &mut dyn Iterator<Item = usize>| -> PlanarCurve {
        let sub: Vec<u32> = range.map(|k| word[k]).collect();
        let (code, old) = ChordDiagram::renormalize(&sub).with_origin(&sub);
        let frames = old.iter().map(|&l| p.frame(l)).collect();
        PlanarCurve::from_frames(code, frames).expect("connected-sum factors are planar")
    };
    let inner = slice(&mut (start..start + len));
    let outer = slice(&mut (0..start).chain(start + len..m));
    Decomposition::Sum {
        outer: Box::new(decompose_by(&outer, pick)),
        inner: Box::new(decompose_by(&inner, pick)),
        site: start - 1,
    }
}

/// Prime factors of `p`; empty for the simple closed curve.
pub fn prime_decompose(p: &PlanarCurve) -> Vec<PlanarCurve> {
    decompose(p).factors()
}

pub fn is_prime(p: &PlanarCurve) -> bool {
    !p.is_unknot() && closed_intervals(&p.code).is_empty()
}
