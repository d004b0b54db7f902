//! Gauss codes and chord diagrams.
//!
//! A chord diagram is stored as a linear double-occurrence word whose
//! labels are `1..=n`, assigned in order of first occurrence. Every cyclic
//! notion (interleavement, intervals, rotations) is index arithmetic over
//! that fixed linearization.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

/// Why a Gauss code was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Malformed {
    #[error("unparseable token `{0}`")]
    Token(String),
    #[error("label {label} occurs {count} time(s), expected exactly 2")]
    Multiplicity { label: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("malformed code: {0}")]
    MalformedCode(Malformed),
    #[error("unknown label {0}")]
    UnknownLabel(u32),
}

/// A double-occurrence word over the labels `1..=n`, normalized so that
/// labels first appear in increasing order.
///
/// `n == 0` is the chord diagram of the simple closed curve.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    word: Vec<u32>,
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChordDiagram[{}]", SpaceSeparated(&self.word))
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SpaceSeparated(&self.word).fmt(f)
    }
}

struct SpaceSeparated<'a>(&'a [u32]);

impl fmt::Display for SpaceSeparated<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl ChordDiagram {
    /// The diagram of the simple closed curve.
    pub fn empty() -> Self {
        ChordDiagram { word: Vec::new() }
    }

    /// Builds a diagram from arbitrary labels, renaming them `1..=n` by
    /// first occurrence.
    pub fn from_labels<L>(labels: &[L]) -> Result<Self, ChordError>
    where
        L: Copy + Ord + Into<u64>,
    {
        let mut seen: Vec<(L, u32, usize)> = Vec::new();
        let mut word = Vec::with_capacity(labels.len());
        for &l in labels {
            match seen.iter_mut().find(|(k, _, _)| *k == l) {
                Some(entry) => {
                    entry.2 += 1;
                    word.push(entry.1);
                }
                None => {
                    let id = seen.len() as u32 + 1;
                    seen.push((l, id, 1));
                    word.push(id);
                }
            }
        }
        if let Some(&(label, _, count)) = seen.iter().find(|(_, _, c)| *c != 2) {
            return Err(ChordError::MalformedCode(Malformed::Multiplicity {
                label: label.into(),
                count,
            }));
        }
        Ok(ChordDiagram { word })
    }

    /// Wraps a word that is already a normalized double-occurrence word.
    pub(crate) fn from_normalized(word: Vec<u32>) -> Self {
        debug_assert!(is_normalized(&word));
        ChordDiagram { word }
    }

    /// Relabels an arbitrary double-occurrence word over `u32` labels.
    pub(crate) fn renormalize(word: &[u32]) -> Self {
        ChordDiagram::from_normalized(first_occurrence_relabel(word))
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Number of chords (double points).
    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> {
        1..=self.n() as u32
    }

    /// The two positions of `label`, in increasing order.
    pub fn positions(&self, label: u32) -> Result<(usize, usize), ChordError> {
        if label == 0 || label as usize > self.n() {
            return Err(ChordError::UnknownLabel(label));
        }
        let mut it = self
            .word
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| i);
        let first = it.next().ok_or(ChordError::UnknownLabel(label))?;
        let second = it.next().ok_or(ChordError::UnknownLabel(label))?;
        Ok((first, second))
    }

    /// Position pairs for every label, indexed by `label - 1`.
    pub fn position_table(&self) -> Vec<[usize; 2]> {
        let mut table = vec![[usize::MAX; 2]; self.n()];
        for (i, &l) in self.word.iter().enumerate() {
            let slot = &mut table[l as usize - 1];
            if slot[0] == usize::MAX {
                slot[0] = i;
            } else {
                slot[1] = i;
            }
        }
        table
    }

    /// Deletes every occurrence of the given labels and renormalizes.
    ///
    /// Returns the new diagram together with the old label of each new
    /// label (`old[new - 1]`).
    pub fn remove_labels(&self, doomed: &[u32]) -> (ChordDiagram, Vec<u32>) {
        let kept: Vec<u32> = self
            .word
            .iter()
            .copied()
            .filter(|l| !doomed.contains(l))
            .collect();
        let mut old_of_new = Vec::new();
        for &l in &kept {
            if !old_of_new.contains(&l) {
                old_of_new.push(l);
            }
        }
        (ChordDiagram::renormalize(&kept), old_of_new)
    }

    /// The interleavement graph as an adjacency matrix indexed by
    /// `label - 1`.
    pub fn interleave_matrix(&self) -> Vec<Vec<bool>> {
        let pos = self.position_table();
        let n = self.n();
        let mut adj = vec![vec![false; n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let hit = positions_interleave(pos[a], pos[b]);
                adj[a][b] = hit;
                adj[b][a] = hit;
            }
        }
        adj
    }
}

fn is_normalized(word: &[u32]) -> bool {
    let mut next = 1;
    let mut counts = Vec::new();
    for &l in word {
        if l == next {
            next += 1;
            counts.push(0u8);
        }
        if l == 0 || l >= next {
            return false;
        }
        counts[l as usize - 1] += 1;
    }
    counts.iter().all(|&c| c == 2)
}

/// Renames labels `1..=n` in order of first occurrence.
pub(crate) fn first_occurrence_relabel(word: &[u32]) -> Vec<u32> {
    let max = word.iter().copied().max().unwrap_or(0) as usize;
    let mut map = vec![0u32; max + 1];
    let mut next = 1;
    word.iter()
        .map(|&l| {
            let slot = &mut map[l as usize];
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect()
}

fn positions_interleave(a: [usize; 2], b: [usize; 2]) -> bool {
    let inside = |p: usize| a[0] < p && p < a[1];
    inside(b[0]) != inside(b[1])
}

/// Parses a whitespace- or comma-separated list of positive labels.
pub fn parse_code(text: &str) -> Result<ChordDiagram, ChordError> {
    parse_code_labeled(text).map(|(cd, _)| cd)
}

/// Like [`parse_code`], but also returns the external label of every
/// normalized label (`external[label - 1]`), for diagnostics.
pub fn parse_code_labeled(text: &str) -> Result<(ChordDiagram, Vec<u64>), ChordError> {
    let mut labels = Vec::new();
    for token in text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        match token.parse::<u64>() {
            Ok(v) if v > 0 => labels.push(v),
            _ => return Err(ChordError::MalformedCode(Malformed::Token(token.into()))),
        }
    }
    let cd = ChordDiagram::from_labels(&labels)?;
    let mut external = Vec::with_capacity(cd.n());
    for &l in &labels {
        if !external.contains(&l) {
            external.push(l);
        }
    }
    Ok((cd, external))
}

/// A symmetry of a cyclic word: start at `shift` and read forwards or
/// backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    pub shift: usize,
    pub reversed: bool,
}

impl Symmetry {
    /// Position in the original word read at index `i` of the image.
    #[inline]
    pub fn source(&self, i: usize, len: usize) -> usize {
        if self.reversed {
            (self.shift + len - i % len) % len
        } else {
            (self.shift + i) % len
        }
    }

    /// All `2 * len` rotations and reflections of a word of length `len`.
    pub fn all(len: usize) -> impl Iterator<Item = Symmetry> {
        let len = len.max(1);
        (0..len).flat_map(|shift| {
            [false, true]
                .into_iter()
                .map(move |reversed| Symmetry { shift, reversed })
        })
    }
}

/// Minimal representative of a chord diagram under rotation, reflection
/// and relabeling.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub(crate) fn from_canonical(word: Vec<u32>) -> CanonicalCode {
        debug_assert_eq!(canonical_word(&word), word);
        CanonicalCode(word)
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn to_diagram(&self) -> ChordDiagram {
        ChordDiagram::from_normalized(self.0.clone())
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by crossing number first, then lexicographically.
impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        SpaceSeparated(&self.0).fmt(f)
    }
}

pub fn canonicalize(cd: &ChordDiagram) -> CanonicalCode {
    CanonicalCode(canonical_word(cd.word()))
}

/// Lexicographically least first-occurrence relabeling over all
/// symmetries of the cyclic word.
pub(crate) fn canonical_word(word: &[u32]) -> Vec<u32> {
    let len = word.len();
    if len == 0 {
        return Vec::new();
    }
    let n = len / 2;
    let mut best: Vec<u32> = Vec::new();
    let mut cand = vec![0u32; len];
    let mut map = vec![0u32; n + 1];
    for sym in Symmetry::all(len) {
        map.iter_mut().for_each(|m| *m = 0);
        let mut next = 1;
        // Equal to `best` so far; becomes Less once we dip below it.
        let mut state = if best.is_empty() {
            Ordering::Less
        } else {
            Ordering::Equal
        };
        let mut abandoned = false;
        for i in 0..len {
            let raw = word[sym.source(i, len)] as usize;
            if map[raw] == 0 {
                map[raw] = next;
                next += 1;
            }
            let v = map[raw];
            cand[i] = v;
            if state == Ordering::Equal {
                match v.cmp(&best[i]) {
                    Ordering::Less => state = Ordering::Less,
                    Ordering::Greater => {
                        abandoned = true;
                        break;
                    }
                    Ordering::Equal => {}
                }
            }
        }
        if !abandoned && state == Ordering::Less {
            best.clear();
            best.extend_from_slice(&cand);
        }
    }
    best
}

/// Whether the occurrences of `a` and `b` alternate cyclically (`a b a b`).
pub fn interleaved(cd: &ChordDiagram, a: u32, b: u32) -> Result<bool, ChordError> {
    let pa = cd.positions(a)?;
    let pb = cd.positions(b)?;
    if a == b {
        return Ok(false);
    }
    Ok(positions_interleave([pa.0, pa.1], [pb.0, pb.1]))
}

/// Number of interleaved chord pairs.
pub fn count_x(cd: &ChordDiagram) -> u64 {
    let adj = cd.interleave_matrix();
    let n = cd.n();
    let mut count = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            if adj[a][b] {
                count += 1;
            }
        }
    }
    count
}

/// Number of triple chords, counted as triangles of the interleavement
/// graph.
pub fn count_tr(cd: &ChordDiagram) -> u64 {
    let adj = cd.interleave_matrix();
    let n = cd.n();
    let mut count = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            if !adj[a][b] {
                continue;
            }
            for c in (b + 1)..n {
                if adj[a][c] && adj[b][c] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Number of triple chords, counted by matching the six-point pattern
/// `p q r p q r` on the restriction of the word to each triple.
pub fn count_tr_by_pattern(cd: &ChordDiagram) -> u64 {
    let n = cd.n() as u32;
    let mut count = 0;
    let mut sub = [0u32; 6];
    for a in 1..=n {
        for b in (a + 1)..=n {
            for c in (b + 1)..=n {
                let mut k = 0;
                for &l in cd.word() {
                    if l == a || l == b || l == c {
                        sub[k] = l;
                        k += 1;
                    }
                }
                if (0..3).all(|i| sub[i] == sub[i + 3]) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Whether chord `a` interleaves no other chord.
pub fn is_nugatory(cd: &ChordDiagram, a: u32) -> Result<bool, ChordError> {
    cd.positions(a)?;
    let adj = cd.interleave_matrix();
    Ok(!adj[a as usize - 1].iter().any(|&x| x))
}

/// The first chord that interleaves an odd number of chords, if any.
/// Every code realized on the sphere has none.
pub fn gauss_parity_failure(cd: &ChordDiagram) -> Option<u32> {
    let adj = cd.interleave_matrix();
    adj.iter()
        .position(|row| row.iter().filter(|&&x| x).count() % 2 == 1)
        .map(|i| i as u32 + 1)
}

/// A cyclic interval `[start, start + len)` closed under pairing, with
/// `2 <= len <= 2n - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedInterval {
    pub start: usize,
    pub len: usize,
}

/// Every proper nonempty pairing-closed cyclic interval, ordered by
/// length then start. Every split shows up twice: once as an interval and
/// once as its complement.
pub fn closed_intervals(cd: &ChordDiagram) -> Vec<ClosedInterval> {
    let m = cd.len();
    let mut out = Vec::new();
    if m < 4 {
        return out;
    }
    let mut inside = vec![0u8; cd.n() + 1];
    for start in 0..m {
        inside.iter_mut().for_each(|x| *x = 0);
        let mut open = 0usize;
        for len in 1..=(m - 2) {
            let l = cd.word()[(start + len - 1) % m] as usize;
            inside[l] += 1;
            if inside[l] == 1 {
                open += 1;
            } else {
                open -= 1;
            }
            if open == 0 {
                out.push(ClosedInterval { start, len });
            }
        }
    }
    out.sort_by_key(|iv| (iv.len, iv.start));
    out
}

/// Splits a composite diagram along its shortest pairing-closed interval.
///
/// Returns `(interval part, complement part)`, both relabeled; `None`
/// means the diagram is prime (or has fewer than two chords).
pub fn split_connected_sum(cd: &ChordDiagram) -> Option<(ChordDiagram, ChordDiagram)> {
    let iv = *closed_intervals(cd).first()?;
    let m = cd.len();
    let inner: Vec<u32> = (0..iv.len).map(|i| cd.word()[(iv.start + i) % m]).collect();
    let outer: Vec<u32> = (iv.len..m)
        .map(|i| cd.word()[(iv.start + i) % m])
        .collect();
    Some((
        ChordDiagram::renormalize(&inner),
        ChordDiagram::renormalize(&outer),
    ))
}
