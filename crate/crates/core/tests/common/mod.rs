//! Oracles and generators shared by the integration tests.
//!
//! Nothing here calls the library's reduction or decomposition code: normal
//! forms are characterized directly and the brute-force rewriter only looks
//! at graph adjacency.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use raagpl::pl::PlMap;
use raagpl::rational::{rat, Rational};
use raagpl::{Graph, Letter, VertexId, Word};

pub const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Every labeled graph on the first `n` names, in edge-mask order.
pub fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &p)| p)
                .collect();
            Graph::from_index_edges(&NAMES[..n], &edges).unwrap()
        })
        .collect()
}

/// `+1 < -1` within a vertex, vertices in declaration order.
fn key(l: &Letter) -> (u32, bool) {
    (l.vertex.0, l.sign < 0)
}

/// Whether `prefix · x` is still reduced and lexicographically least, given
/// that `prefix` is. A violation must end at the new letter: either a
/// cancelling `x⁻¹ u x` or a factor `b u x` with `x < b` and `x`
/// commuting with `b u`.
fn extends_normal_form(g: &Graph, prefix: &[Letter], x: Letter) -> bool {
    for b in prefix.iter().rev() {
        if b.vertex == x.vertex {
            return b.sign == x.sign;
        }
        if !g.adjacent(b.vertex, x.vertex) {
            return true;
        }
        if key(&x) < key(b) {
            return false;
        }
    }
    true
}

/// Calls `f` on the canonical word of every nontrivial element of length at
/// most `max_len`. With `positive_first`, only words in which each vertex
/// first occurs with exponent `+1`.
pub fn for_each_normal_form(
    g: &Graph,
    max_len: usize,
    positive_first: bool,
    f: &mut dyn FnMut(&Word),
) {
    fn go(
        g: &Graph,
        prefix: &mut Vec<Letter>,
        max_len: usize,
        positive_first: bool,
        f: &mut dyn FnMut(&Word),
    ) {
        if !prefix.is_empty() {
            f(&Word::new(prefix.clone()));
        }
        if prefix.len() == max_len {
            return;
        }
        for v in g.vertices() {
            let seen = prefix.iter().any(|l| l.vertex == v);
            for sign in [1i8, -1] {
                if positive_first && !seen && sign < 0 {
                    continue;
                }
                let x = Letter::new(v, sign);
                if extends_normal_form(g, prefix, x) {
                    prefix.push(x);
                    go(g, prefix, max_len, positive_first, f);
                    prefix.pop();
                }
            }
        }
    }
    go(g, &mut Vec::new(), max_len, positive_first, f);
}

/// Every word of length exactly `len`, reduced or not.
pub fn words_of_length(g: &Graph, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = g
        .vertices()
        .flat_map(|v| [Letter::new(v, 1), Letter::new(v, -1)])
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

/// Brute force: closes `w` under swapping adjacent commuting letters and
/// deleting adjacent inverse pairs, then returns the lexicographically least
/// among the shortest words reached.
pub fn bfs_normal_form(g: &Graph, w: &Word) -> Word {
    let start = w.letters().to_vec();
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut best = start;
    while let Some(cur) = queue.pop_front() {
        let better = cur.len() < best.len()
            || (cur.len() == best.len() && cur.iter().map(key).lt(best.iter().map(key)));
        if better {
            best = cur.clone();
        }
        for i in 0..cur.len().saturating_sub(1) {
            let (x, y) = (cur[i], cur[i + 1]);
            let next = if x.vertex == y.vertex && x.sign == -y.sign {
                let mut n = cur.clone();
                n.drain(i..i + 2);
                n
            } else if g.adjacent(x.vertex, y.vertex) {
                let mut n = cur.clone();
                n.swap(i, i + 1);
                n
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Word::new(best)
}

/// `p/q` with `|p| ≤ 100`, `1 ≤ q ≤ 100`, inside `[lo, hi]`.
pub fn bounded_rational<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational) -> Option<Rational> {
    for _ in 0..200 {
        let q = rng.gen_range(1..=100i64);
        let p = rng.gen_range(-100..=100i64);
        let x = rat(p, q);
        if lo <= &x && &x <= hi {
            return Some(x);
        }
    }
    None
}

/// A random PL homeomorphism with at most 8 breakpoints whose coordinates
/// have numerators and denominators bounded by 100.
pub fn random_pl_map<R: Rng>(rng: &mut R) -> PlMap {
    let m = rng.gen_range(2..=8usize);
    let (lo, hi) = (rat(-100, 1), rat(100, 1));
    let mut xs: Vec<Rational> = (0..m)
        .filter_map(|_| bounded_rational(rng, &lo, &hi))
        .collect();
    xs.sort();
    xs.dedup();
    if xs.len() < 2 {
        return PlMap::identity();
    }
    let (a, b) = (xs[0].clone(), xs[xs.len() - 1].clone());
    let mut ys: Vec<Rational> = (0..xs.len() - 2)
        .filter_map(|_| bounded_rational(rng, &a, &b))
        .filter(|y| y != &a && y != &b)
        .collect();
    ys.sort();
    ys.dedup();
    // Keep as many interior x's as there are distinct interior values.
    let interior: Vec<Rational> = xs[1..xs.len() - 1].iter().take(ys.len()).cloned().collect();
    let ys = &ys[..interior.len()];
    let mut points = vec![(a.clone(), a)];
    points.extend(interior.into_iter().zip(ys.iter().cloned()));
    points.push((b.clone(), b));
    PlMap::from_points(points).expect("generated points are increasing with fixed ends")
}

/// Flips the sign of every letter on a vertex in `mask`.
pub fn flip_signs(w: &Word, mask: u32) -> Word {
    Word::new(
        w.letters()
            .iter()
            .map(|l| match mask & (1 << l.vertex.0) != 0 {
                true => l.inverse(),
                false => *l,
            })
            .collect(),
    )
}

pub fn vertex(g: &Graph, name: &str) -> VertexId {
    g.vertex(name).unwrap()
}
