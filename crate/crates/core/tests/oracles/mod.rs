//! Slow, direct reimplementations used as test oracles. Nothing here
//! calls into the library except to read a resolution's crossing data.
#![allow(dead_code)]

use std::collections::BTreeSet;

use knotproj_core::invariants::Resolution;

/// Every double-occurrence word on `1..=n` in first-occurrence normal
/// form, one per perfect matching of `2n` positions.
pub fn all_pairing_words(n: usize) -> Vec<Vec<u32>> {
    fn go(word: &mut Vec<u32>, next: u32, out: &mut Vec<Vec<u32>>) {
        let Some(i) = word.iter().position(|&l| l == 0) else {
            out.push(word.clone());
            return;
        };
        word[i] = next;
        for j in i + 1..word.len() {
            if word[j] == 0 {
                word[j] = next;
                go(word, next + 1, out);
                word[j] = 0;
            }
        }
        word[i] = 0;
    }
    let mut out = Vec::new();
    go(&mut vec![0; 2 * n], 1, &mut out);
    out
}

pub fn relabel(word: &[u32]) -> Vec<u32> {
    let mut map = std::collections::HashMap::new();
    word.iter()
        .map(|l| {
            let k = map.len() as u32 + 1;
            *map.entry(*l).or_insert(k)
        })
        .collect()
}

/// All rotations and reflections, relabeled.
pub fn orbit(word: &[u32]) -> Vec<Vec<u32>> {
    let m = word.len();
    let mut out = Vec::new();
    for s in 0..m.max(1) {
        let rot: Vec<u32> = (0..m).map(|i| word[(i + s) % m]).collect();
        let rev: Vec<u32> = rot.iter().rev().copied().collect();
        out.push(relabel(&rot));
        out.push(relabel(&rev));
    }
    out
}

pub fn brute_canonical(word: &[u32]) -> Vec<u32> {
    orbit(word).into_iter().min().unwrap()
}

fn occurrences(word: &[u32], l: u32) -> (usize, usize) {
    let mut it = word.iter().enumerate().filter(|(_, &x)| x == l).map(|(i, _)| i);
    (it.next().unwrap(), it.next().unwrap())
}

fn labels(word: &[u32]) -> Vec<u32> {
    word.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Every chord has an even number of symbols between its ends.
pub fn brute_gauss_parity(word: &[u32]) -> bool {
    labels(word).iter().all(|&l| {
        let (i, j) = occurrences(word, l);
        (j - i - 1) % 2 == 0
    })
}

pub fn brute_interleaved(word: &[u32], a: u32, b: u32) -> bool {
    let (a0, a1) = occurrences(word, a);
    let (b0, b1) = occurrences(word, b);
    (a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1)
}

pub fn brute_x(word: &[u32]) -> u64 {
    let ls = labels(word);
    let mut c = 0;
    for (i, &a) in ls.iter().enumerate() {
        for &b in &ls[i + 1..] {
            c += u64::from(brute_interleaved(word, a, b));
        }
    }
    c
}

pub fn brute_tr(word: &[u32]) -> u64 {
    let ls = labels(word);
    let mut c = 0;
    for (i, &a) in ls.iter().enumerate() {
        for (j, &b) in ls.iter().enumerate().skip(i + 1) {
            for &d in &ls[j + 1..] {
                let sub: Vec<u32> = word.iter().copied().filter(|&l| l == a || l == b || l == d).collect();
                let r = relabel(&sub);
                let rots = (0..6).any(|s| relabel(&(0..6).map(|k| r[(k + s) % 6]).collect::<Vec<_>>()) == [1, 2, 3, 1, 2, 3]);
                c += u64::from(rots);
            }
        }
    }
    c
}

/// Deleting `l` disconnects the curve iff the word strictly between its
/// two occurrences is closed under pairing.
pub fn brute_nugatory(word: &[u32], l: u32) -> bool {
    let (i, j) = occurrences(word, l);
    let inside = &word[i + 1..j];
    inside.iter().all(|x| inside.iter().filter(|y| *y == x).count() == 2)
}

pub fn brute_monogons(word: &[u32]) -> usize {
    let m = word.len();
    (0..m).filter(|&k| word[k] == word[(k + 1) % m]).count()
}

/// Number of faces of the map where vertex `l` uses the first or second
/// cyclic order, by bit `l - 1` of `choice`.
///
/// Edge `k` runs from position `k` to `k + 1`; its dart at the start is
/// `2k` and at the end `2k + 1`.
pub fn brute_face_count(word: &[u32], choice: u64) -> usize {
    let m = word.len();
    if m == 0 {
        return 2;
    }
    let darts = 2 * m;
    let mut next_ccw = vec![usize::MAX; darts];
    for l in labels(word) {
        let (i, j) = occurrences(word, l);
        let leave = |p: usize| 2 * p;
        let arrive = |p: usize| 2 * ((p + m - 1) % m) + 1;
        let order = if choice >> (l - 1) & 1 == 0 {
            [arrive(i), arrive(j), leave(i), leave(j)]
        } else {
            [arrive(i), leave(j), leave(i), arrive(j)]
        };
        for k in 0..4 {
            next_ccw[order[k]] = order[(k + 1) % 4];
        }
    }
    let mut seen = vec![false; darts];
    let mut faces = 0;
    for s in 0..darts {
        if seen[s] {
            continue;
        }
        faces += 1;
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            d = next_ccw[d ^ 1];
        }
    }
    faces
}

/// Some choice of cyclic orders gives a sphere: `V - E + F = 2`.
pub fn brute_realizable(word: &[u32]) -> bool {
    let n = word.len() / 2;
    (0..1u64 << n).any(|c| brute_face_count(word, c) == n + 2)
}

pub fn brute_genus0_choices(word: &[u32]) -> usize {
    let n = word.len() / 2;
    (0..1u64 << n).filter(|&c| brute_face_count(word, c) == n + 2).count()
}

/// No two edges form a cut of the 4-regular graph.
pub fn brute_four_edge_connected(word: &[u32]) -> bool {
    let m = word.len();
    let n = m / 2;
    for e1 in 0..m {
        for e2 in e1 + 1..m {
            let mut parent: Vec<usize> = (0..=n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            for k in (0..m).filter(|&k| k != e1 && k != e2) {
                let (a, b) = (find(&mut parent, word[k] as usize), find(&mut parent, word[(k + 1) % m] as usize));
                parent[a] = b;
            }
            let root = find(&mut parent, 1);
            if (1..=n).any(|v| find(&mut parent, v) != root) {
                return false;
            }
        }
    }
    true
}

type Poly = Vec<i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Poly, b: &Poly, sign: i64) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i] += sign * y;
    }
}

fn det(m: &[Vec<Poly>]) -> Poly {
    if m.is_empty() {
        return vec![1];
    }
    let mut total = vec![0];
    for c in 0..m.len() {
        if m[0][c].iter().all(|&x| x == 0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = poly_mul(&m[0][c], &det(&minor));
        poly_add(&mut total, &term, if c % 2 == 0 { 1 } else { -1 });
    }
    total
}

/// Alexander polynomial from the Fox matrix of the Wirtinger presentation,
/// coefficient of `t^k` at index `k`, up to a unit.
pub fn alexander(r: &Resolution<'_>) -> Poly {
    let word = r.base.code().word();
    let m = word.len();
    let n = m / 2;
    if n == 0 {
        return vec![1];
    }
    let over: Vec<bool> = (0..m)
        .map(|k| {
            let first = word[..k].iter().all(|&l| l != word[k]);
            r.over_at(k, first)
        })
        .collect();
    let unders: Vec<usize> = (0..m).filter(|&k| !over[k]).collect();
    assert_eq!(unders.len(), n);
    // Arc `j` starts right after the `j`-th under-passage.
    let arc_at = |k: usize| -> usize {
        let c = unders.iter().filter(|&&u| u <= k).count();
        (c + n - 1) % n
    };
    let mut rows = vec![vec![vec![0i64; 2]; n]; n];
    for (j, &u) in unders.iter().enumerate() {
        let l = word[u];
        let o = (0..m).find(|&k| word[k] == l && k != u).unwrap();
        let (a, b, o) = ((j + n - 1) % n, j, arc_at(o));
        let row = &mut rows[j];
        // (1 - t) o + t a - b for positive crossings; a and b swap roles
        // for negative ones.
        row[o][0] += 1;
        row[o][1] -= 1;
        let (ta, tb) = if r.sign(l) > 0 { (a, b) } else { (b, a) };
        row[ta][1] += 1;
        row[tb][0] -= 1;
    }
    let minor: Vec<Vec<Poly>> = rows[..n - 1].iter().map(|row| row[..n - 1].to_vec()).collect();
    let mut p = det(&minor);
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Second Conway coefficient from the Alexander polynomial:
/// `a2 = sum c_k (k - mu)^2 / 2` with `mu` the centre, after fixing the
/// sign so that `Delta(1) = 1`.
pub fn alexander_a2(r: &Resolution<'_>) -> i64 {
    let p = alexander(r);
    let at_one: i64 = p.iter().sum();
    assert_eq!(at_one.abs(), 1, "Delta(1) = +-1 for knots, got {p:?}");
    let p: Vec<i64> = p.iter().map(|c| c * at_one).collect();
    let lo = p.iter().position(|&c| c != 0).unwrap();
    let hi = p.iter().rposition(|&c| c != 0).unwrap();
    for k in lo..=hi {
        assert_eq!(p[k], p[hi + lo - k], "Alexander polynomial is symmetric: {p:?}");
    }
    let twice_mu = (lo + hi) as i64;
    let s: i64 = p.iter().enumerate().map(|(k, c)| c * (2 * k as i64 - twice_mu).pow(2)).sum();
    assert_eq!(s % 8, 0);
    s / 8
}
