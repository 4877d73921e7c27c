//! Independent re-checker for certificate documents.
//!
//! Nothing here calls the reduction, decomposition or witness code. Group
//! equality is decided with a separate pile-based algorithm, generator images
//! are compared against the bump formula evaluated directly, and commutation
//! of images is checked pointwise at every possible breakpoint of the two
//! composites. The only shared code is parsing and evaluating [`PlMap`]s.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::cert::{self, CertificateJson, LetterJson};
use crate::error::{Error, Result};
use crate::pl::{PlMap, PlMapJson};
use crate::rational::{self, int, rat, Rational};

fn fail(msg: impl Into<String>) -> Error {
    Error::verification(msg)
}

/// Graph data as read from the certificate.
struct Commutation {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: HashSet<(usize, usize)>,
}

impl Commutation {
    fn read(cert: &CertificateJson) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in cert.graph.vertices.iter().enumerate() {
            if v.is_empty() || index.insert(v.clone(), i).is_some() {
                return Err(fail(format!("bad or duplicate vertex '{v}'")));
            }
        }
        let mut edges = HashSet::new();
        for [u, v] in &cert.graph.edges {
            let (Some(&a), Some(&b)) = (index.get(u), index.get(v)) else {
                return Err(fail(format!("edge {u}-{v} has an undeclared endpoint")));
            };
            if a == b || !edges.insert((a.min(b), a.max(b))) {
                return Err(fail(format!("edge {u}-{v} is a loop or duplicate")));
            }
        }
        Ok(Commutation {
            names: cert.graph.vertices.clone(),
            index,
            edges,
        })
    }

    fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| fail(format!("unknown vertex '{name}'")))
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn letters(&self, word: &[LetterJson]) -> Result<Vec<(usize, i8)>> {
        word.iter()
            .map(|l| {
                if l.s != 1 && l.s != -1 {
                    return Err(fail(format!("letter sign {} is not ±1", l.s)));
                }
                Ok((self.id(&l.v)?, l.s))
            })
            .collect()
    }

    /// Length of a geodesic for `word`, via one pile per generator.
    ///
    /// Reading `v^ε`: if the top of pile `v` is `v^-ε`, pop it and the
    /// marker it left on every pile of a non-commuting generator; otherwise
    /// push `v^ε` on pile `v` and a marker on each such pile.
    fn geodesic_len(&self, word: &[(usize, i8)]) -> usize {
        let n = self.names.len();
        let mut piles: Vec<Vec<i8>> = vec![Vec::new(); n];
        for &(v, s) in word {
            let blockers = (0..n).filter(|&u| u != v && !self.adjacent(u, v));
            if piles[v].last() == Some(&-s) {
                piles[v].pop();
                for u in blockers {
                    piles[u].pop();
                }
            } else {
                piles[v].push(s);
                for u in blockers {
                    piles[u].push(0);
                }
            }
        }
        piles.iter().flatten().filter(|&&s| s != 0).count()
    }

    /// Least reordering of a reduced word under the letter order (vertex,
    /// then `+1 < -1`): repeatedly take the least letter that commutes past
    /// everything before it.
    fn lex_least(&self, word: &[(usize, i8)]) -> Vec<(usize, i8)> {
        let mut rest = word.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let best = (0..rest.len())
                .filter(|&j| rest[..j].iter().all(|&(u, _)| self.adjacent(u, rest[j].0)))
                .min_by_key(|&j| (rest[j].0, rest[j].1 < 0))
                .expect("the first letter is always movable");
            out.push(rest.remove(best));
        }
        out
    }

    /// Replays the slide process from the singleton decomposition: the
    /// leftmost target block first, the least vertex first. Returns the
    /// fixpoint in written order and the number of slides.
    fn slide_fixpoint(&self, element: &[(usize, i8)]) -> (Vec<BTreeMap<usize, i64>>, usize) {
        let mut blocks: Vec<BTreeMap<usize, i64>> = element
            .iter()
            .map(|&(v, s)| BTreeMap::from([(v, s as i64)]))
            .collect();
        let mut slides = 0;
        loop {
            let found = (1..blocks.len()).find_map(|from| {
                let target = &blocks[from - 1];
                blocks[from]
                    .keys()
                    .copied()
                    .find(|&v| target.keys().all(|&u| u == v || self.adjacent(u, v)))
                    .map(|v| (from, v))
            });
            let Some((from, v)) = found else {
                return (blocks, slides);
            };
            let step = blocks[from][&v].signum();
            *blocks[from - 1].entry(v).or_insert(0) += step;
            let left = blocks[from].get_mut(&v).expect("found in this block");
            *left -= step;
            if *left == 0 {
                blocks[from].remove(&v);
                if blocks[from].is_empty() {
                    blocks.remove(from);
                }
            }
            slides += 1;
        }
    }

    fn same_element(&self, a: &[(usize, i8)], b: &[(usize, i8)]) -> bool {
        let mut w = a.to_vec();
        w.extend(b.iter().rev().map(|&(v, s)| (v, -s)));
        self.geodesic_len(&w) == 0
    }
}

/// `ρ₀` and its inverse straight from the formula.
fn bump(x: &Rational, sign: i8) -> Rational {
    let (lo, hi) = (int(0), rat(3, 2));
    if x < &lo || x >= &hi {
        return x.clone();
    }
    if sign > 0 {
        if x < &rat(1, 4) {
            x * int(5)
        } else {
            (x + int(6)) / int(5)
        }
    } else if x < &rat(5, 4) {
        x / int(5)
    } else {
        x * int(5) - int(6)
    }
}

/// The expected image of a generator: `ρ_j^{σ_j}` on each owned `I_j`,
/// the identity elsewhere.
fn expected_image(owned: &[(usize, i8)], x: &Rational) -> Rational {
    for &(j, sign) in owned {
        let j = int(j as i64);
        if &j <= x && x <= &(&j + rat(3, 2)) {
            return bump(&(x - &j), sign) + j;
        }
    }
    x.clone()
}

fn expected_breakpoints(owned: &[(usize, i8)]) -> Vec<Rational> {
    owned
        .iter()
        .flat_map(|&(j, sign)| {
            let j = int(j as i64);
            let mid = if sign > 0 { rat(1, 4) } else { rat(5, 4) };
            [j.clone(), &j + mid, j + rat(3, 2)]
        })
        .collect()
}

fn apply(images: &[PlMap], word: &[(usize, i8)], x: &Rational) -> Rational {
    word.iter().rev().fold(x.clone(), |x, &(v, s)| {
        if s > 0 {
            images[v].evaluate(&x)
        } else {
            images[v].evaluate_inverse(&x)
        }
    })
}

/// `f ∘ g = g ∘ f`, checked at every breakpoint either composite can have.
fn commute_pointwise(f: &PlMap, g: &PlMap) -> bool {
    let mut xs: Vec<Rational> = Vec::new();
    xs.extend(f.breakpoints().cloned());
    xs.extend(g.breakpoints().cloned());
    xs.extend(f.breakpoints().map(|b| g.evaluate_inverse(b)));
    xs.extend(g.breakpoints().map(|b| f.evaluate_inverse(b)));
    xs.iter()
        .all(|x| f.evaluate(&g.evaluate(x)) == g.evaluate(&f.evaluate(x)))
}

fn parse_rat(field: &str, text: &str) -> Result<Rational> {
    rational::parse(text).map_err(|_| fail(format!("{field}: invalid rational '{text}'")))
}

/// Summary of a successful re-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub k: usize,
    pub test_point: Rational,
    pub image: Rational,
}

/// Re-checks a certificate document from scratch.
pub fn verify_certificate(cert: &CertificateJson) -> Result<Verdict> {
    if !cert.verified {
        return Err(fail("certificate is not marked verified"));
    }
    if cert::statement_digest(&cert.graph, &cert.word) != cert.statement_sha256 {
        return Err(fail("statement digest does not match the graph and word"));
    }
    let gr = Commutation::read(cert)?;
    let word = gr.letters(&cert.word)?;
    let element = gr.letters(&cert.element)?;
    if gr.geodesic_len(&element) != element.len() {
        return Err(fail("element is not reduced"));
    }
    if !gr.same_element(&word, &element) {
        return Err(fail("element does not equal the input word"));
    }
    if gr.lex_least(&element) != element {
        return Err(fail("element is not in canonical form"));
    }

    // Decomposition.
    let k = cert.k;
    let blocks = &cert.decomposition.blocks;
    if k == 0 || blocks.len() != k || cert.spine.len() != k || cert.stage_trace.len() != k {
        return Err(fail(format!(
            "inconsistent block count: k={k}, blocks={}, spine={}, stages={}",
            blocks.len(),
            cert.spine.len(),
            cert.stage_trace.len()
        )));
    }
    // `parsed[i - 1]` is w_i as (vertex, exponent).
    let mut parsed: Vec<Vec<(usize, i64)>> = Vec::with_capacity(k);
    for (pos, block) in blocks.iter().enumerate().rev() {
        let i = k - pos;
        if block.is_empty() {
            return Err(fail(format!("block {i} is empty")));
        }
        let mut entries = Vec::with_capacity(block.len());
        for (v, &e) in block {
            let v = gr.id(v)?;
            if e == 0 {
                return Err(fail(format!("block {i} has a zero exponent")));
            }
            if entries.iter().any(|&(u, _)| u == v || !gr.adjacent(u, v)) {
                return Err(fail(format!("block {i} is not a clique word")));
            }
            entries.push((v, e));
        }
        parsed.push(entries);
    }
    let expand = |entries: &[(usize, i64)]| -> Vec<(usize, i8)> {
        entries
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n((v, e.signum() as i8), e.unsigned_abs() as usize))
            .collect()
    };
    let concatenation: Vec<(usize, i8)> = parsed.iter().rev().flat_map(|b| expand(b)).collect();
    if concatenation.len() != element.len() || !gr.same_element(&concatenation, &element) {
        return Err(fail("blocks do not form a reduced decomposition of the element"));
    }
    let lengths: Vec<usize> = blocks
        .iter()
        .map(|b| b.values().map(|e| e.unsigned_abs() as usize).sum())
        .collect();
    if lengths != cert.decomposition.complexity {
        return Err(fail("complexity does not match the block lengths"));
    }
    for i in 1..k {
        for &(v, _) in &parsed[i - 1] {
            if parsed[i].iter().all(|&(u, _)| u == v || gr.adjacent(u, v)) {
                return Err(fail(format!(
                    "not left-greedy: '{}' in block {i} commutes with block {}",
                    gr.names[v],
                    i + 1
                )));
            }
        }
    }

    let (expected, slides) = gr.slide_fixpoint(&element);
    let given: Vec<BTreeMap<usize, i64>> = parsed.iter().rev().map(|b| b.iter().copied().collect()).collect();
    if given != expected {
        return Err(fail("blocks differ from the left-greedy form"));
    }
    if slides != cert.decomposition.slides {
        return Err(fail(format!(
            "slide count {} should be {slides}",
            cert.decomposition.slides
        )));
    }

    // Spine.
    let mut picks: Vec<(usize, i8)> = Vec::with_capacity(k);
    for (idx, p) in cert.spine.iter().enumerate() {
        let i = idx + 1;
        let v = gr.id(&p.v)?;
        let exp = parsed[idx].iter().find(|&&(u, _)| u == v).map(|&(_, e)| e);
        if p.sigma.abs() != 1 || exp != Some(p.sigma as i64 * p.n as i64) {
            return Err(fail(format!("spine pick {i} does not match block {i}")));
        }
        let rule = parsed[idx]
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| picks.last().is_none_or(|&(prev, _)| prev != u && !gr.adjacent(prev, u)))
            .min();
        if rule != Some(v) {
            return Err(fail(format!("spine pick {i} does not follow the least-vertex rule")));
        }
        picks.push((v, p.sigma));
    }

    // Generator images.
    if cert.images.len() != gr.names.len() {
        return Err(fail("images must be given for exactly the graph's vertices"));
    }
    let mut images: Vec<PlMap> = vec![PlMap::identity(); gr.names.len()];
    for (name, json) in &cert.images {
        let v = gr.id(name)?;
        let f = PlMap::try_from(PlMapJson::clone(json))
            .map_err(|e| fail(format!("image of '{name}': {e}")))?;
        if PlMapJson::from(f.clone()) != *json {
            return Err(fail(format!("image of '{name}' is not in canonical form")));
        }
        let owned: Vec<(usize, i8)> = picks
            .iter()
            .enumerate()
            .filter(|(_, &(u, _))| u == v)
            .map(|(j, &(_, s))| (j + 1, s))
            .collect();
        let probes: Vec<Rational> = f
            .breakpoints()
            .cloned()
            .chain(expected_breakpoints(&owned))
            .collect();
        if let Some(x) = probes.iter().find(|x| f.evaluate(x) != expected_image(&owned, x)) {
            return Err(fail(format!(
                "image of '{name}' differs from the bump product at {}",
                rational::format(x)
            )));
        }
        images[v] = f;
    }
    for &(u, v) in &gr.edges {
        if !commute_pointwise(&images[u], &images[v]) {
            return Err(fail(format!(
                "images of '{}' and '{}' do not commute",
                gr.names[u], gr.names[v]
            )));
        }
    }

    // Trace.
    let test_point = parse_rat("test_point", &cert.test_point)?;
    if test_point != rat(5, 4) {
        return Err(fail("test point must be 5/4"));
    }
    let mut x = test_point.clone();
    for (idx, stage) in cert.stage_trace.iter().enumerate() {
        let l = idx + 1;
        if stage.stage != l {
            return Err(fail(format!("stage {l} is labelled {}", stage.stage)));
        }
        let input = parse_rat("stage input", &stage.input)?;
        let output = parse_rat("stage output", &stage.output)?;
        if input != x {
            return Err(fail(format!("stage {l} input {} should be {}", stage.input, rational::format(&x))));
        }
        let actual = apply(&images, &expand(&parsed[idx]), &x);
        if actual != output {
            return Err(fail(format!(
                "stage {l} output {} should be {}",
                stage.output,
                rational::format(&actual)
            )));
        }
        let lo = int(l as i64) + rat(5, 4);
        let hi = int(l as i64) + rat(3, 2);
        if output < lo || output > hi {
            return Err(fail(format!("stage {l} output {} leaves its interval", stage.output)));
        }
        x = output;
    }

    let image = parse_rat("image", &cert.image)?;
    let lo = parse_rat("target_interval", &cert.target_interval[0])?;
    let hi = parse_rat("target_interval", &cert.target_interval[1])?;
    let k_rat = int(k as i64);
    if lo != &k_rat + rat(5, 4) || hi != &k_rat + rat(3, 2) {
        return Err(fail("target interval must be [k+5/4, k+3/2]"));
    }
    if image != x {
        return Err(fail(format!("image {} does not match the trace end {}", cert.image, rational::format(&x))));
    }
    if apply(&images, &word, &test_point) != image || apply(&images, &element, &test_point) != image {
        return Err(fail("image of the input word at the test point does not match"));
    }
    if image < lo || image > hi || image == test_point {
        return Err(fail("image lies outside the target interval"));
    }
    Ok(Verdict {
        k,
        test_point,
        image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::CertificateJson;
    use crate::graph::Graph;
    use crate::witness;
    use crate::word::Word;

    fn cert(g: &Graph, w: &str) -> CertificateJson {
        let wit = witness::build_witness(g, &Word::parse(g, w).unwrap()).unwrap();
        CertificateJson::new(&witness::verify_witness(&wit).unwrap())
    }

    #[test]
    fn accepts_genuine_certificates() {
        let g = Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        for w in ["a", "a b", "c a^-2 d b", "a c a^-1 c^-1", "d c b a d c b a"] {
            let v = verify_certificate(&cert(&g, w)).unwrap();
            assert!(v.image > v.test_point);
        }
    }

    #[test]
    fn piles_agree_on_small_cases() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let c = cert(&g, "a");
        let gr = Commutation::read(&c).unwrap();
        let ab = [(0, 1), (1, 1), (0, -1), (1, -1)];
        assert_eq!(gr.geodesic_len(&ab), 0);
        let ac = [(0, 1), (2, 1), (0, -1), (2, -1)];
        assert_eq!(gr.geodesic_len(&ac), 4);
        let cancel_across = [(0, 1), (1, 1), (0, -1)];
        assert_eq!(gr.geodesic_len(&cancel_across), 1);
    }

    #[test]
    fn bump_formula_matches_rho0() {
        let r = PlMap::rho0();
        for (n, d) in [(-1, 1), (0, 1), (1, 10), (1, 4), (1, 2), (13, 10), (3, 2), (2, 1)] {
            let x = rat(n, d);
            assert_eq!(bump(&x, 1), r.evaluate(&x));
            assert_eq!(bump(&x, -1), r.evaluate_inverse(&x));
        }
    }

    #[test]
    fn rejects_tampering() {
        let g = Graph::free(&["a", "b"]).unwrap();
        let good = cert(&g, "a b");

        let mut c = good.clone();
        c.image = "1/3".into();
        assert!(verify_certificate(&c).is_err());

        let mut c = good.clone();
        c.verified = false;
        assert!(verify_certificate(&c).is_err());

        let mut c = good.clone();
        c.spine[0].sigma = -1;
        assert!(verify_certificate(&c).is_err());

        let mut c = good.clone();
        c.stage_trace[0].output = "5/2".into();
        assert!(verify_certificate(&c).is_err());

        let mut c = good.clone();
        c.images.get_mut("a").unwrap().val[1] = "3".into();
        assert!(verify_certificate(&c).is_err());

        let mut c = good.clone();
        c.word[0].s = -1;
        assert!(verify_certificate(&c).is_err());

        let mut c = good;
        c.graph.edges.push(["a".into(), "b".into()]);
        assert!(verify_certificate(&c).is_err());
    }

    #[test]
    fn digest_binds_the_graph() {
        // `a c` has the same witness whether or not b-c is an edge, so only
        // the digest tells the two statements apart.
        let g = Graph::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let mut c = cert(&g, "a c");
        c.graph.edges.push(["b".into(), "c".into()]);
        let err = verify_certificate(&c).unwrap_err().to_string();
        assert!(err.contains("statement digest"), "{err}");
        c.statement_sha256 = crate::cert::statement_digest(&c.graph, &c.word);
        verify_certificate(&c).unwrap();
    }
}
