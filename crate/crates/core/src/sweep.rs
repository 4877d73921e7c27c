//! Seeded random sweep over graphs and words.
//!
//! Each case draws an Erdős–Rényi graph (edge probability 1/2) on
//! `2..=max_vertices` vertices and a uniform random word of length
//! `1..=max_length`, redrawing until the word is nontrivial. The case then
//! runs the whole pipeline and every cross-check: left-greedy invariants,
//! witness verification, independent certificate re-check, well-definedness
//! of the image homomorphism, and unit-interval normalization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::CertificateJson;
use crate::decomp;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::pl::ClosedInterval;
use crate::rational::{int, rat, Rational};
use crate::verify;
use crate::witness;
use crate::word::{self, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_vertices: usize,
    pub max_length: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 42,
            cases: 500,
            max_vertices: 5,
            max_length: 8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub index: usize,
    pub graph: Graph,
    pub word: Word,
    pub error: Error,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub passed: usize,
    pub failures: Vec<CaseFailure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random graph on `n` vertices named `a, b, c, …` (then `v26`, …).
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let names: Vec<String> = (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges(&names, &edges).expect("generated graph is simplicial")
}

pub fn random_word<R: Rng>(rng: &mut R, graph: &Graph, len: usize) -> Word {
    (0..len)
        .map(|_| {
            let v = VertexId(rng.gen_range(0..graph.len() as u32));
            Letter::new(v, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect()
}

/// A rational in `[lo, hi]` with denominator up to 64.
pub fn random_point<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=64i64);
    rat(rng.gen_range(lo * d..=hi * d), d)
}

/// Draws the graph and nontrivial word for one case.
pub fn draw_case<R: Rng>(rng: &mut R, cfg: &SweepConfig) -> (Graph, Word) {
    let n = rng.gen_range(2..=cfg.max_vertices.max(2));
    let graph = random_graph(rng, n);
    loop {
        let len = rng.gen_range(1..=cfg.max_length.max(1));
        let w = random_word(rng, &graph, len);
        if !word::is_trivial(&graph, &w).expect("random letters are valid") {
            return (graph, w);
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::verification(msg()))
    }
}

/// Every invariant the pipeline promises, for one nontrivial word.
pub fn check_case<R: Rng>(rng: &mut R, graph: &Graph, w: &Word) -> Result<CertificateJson> {
    let reduced = word::reduce(graph, w)?;

    let run = decomp::left_greedy_run(graph, w)?;
    let d = &run.decomposition;
    check(decomp::is_left_greedy(d), || "form is not left-greedy".into())?;
    check(d.word() == reduced || word::equal_in_group(graph, &d.word(), &reduced)?, || {
        "decomposition changes the element".into()
    })?;
    check(d.total_len() == reduced.len(), || "decomposition changes the length".into())?;
    check(
        run.complexities.windows(2).all(|c| c[0] < c[1]),
        || "a slide did not raise the complexity".into(),
    )?;
    check(
        run.potentials.windows(2).all(|p| p[0] > p[1]),
        || "a slide did not lower the potential".into(),
    )?;
    check(run.slides() <= reduced.len() * reduced.len(), || {
        format!("{} slides for length {}", run.slides(), reduced.len())
    })?;

    let wit = witness::build_witness(graph, w)?;
    let cert = witness::verify_witness(&wit)?;
    let json = CertificateJson::new(&cert);
    verify::verify_certificate(&json)?;

    for _ in 0..3 {
        let x = random_point(rng, -1, wit.k() as i64 + 3);
        let a = witness::apply_word(&wit.images, w, &x)?;
        let b = witness::apply_word(&wit.images, &reduced, &x)?;
        check(a == b, || "ψ(w) and ψ(reduce(w)) disagree".into())?;
    }

    let unit = witness::normalize_to_unit_interval(&wit);
    let unit_interval = ClosedInterval::new(int(0), int(1));
    check(
        unit.values().all(|f| f.support().iter().all(|s| s.is_subset_of(&unit_interval))),
        || "normalized support leaves [0, 1]".into(),
    )?;
    let scale = rat(1, wit.k() as i64 + 2);
    let moved = witness::apply_word(&unit, &wit.element, &(&cert.test_point * &scale))?;
    check(moved == &cert.image * &scale, || "normalized image does not re-certify".into())?;
    Ok(json)
}

/// Runs `cfg.cases` random cases. Results are in case order.
pub fn run_sweep(cfg: &SweepConfig) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = SweepReport::default();
    for index in 0..cfg.cases {
        let (graph, word) = draw_case(&mut rng, cfg);
        match check_case(&mut rng, &graph, &word) {
            Ok(_) => report.passed += 1,
            Err(error) => report.failures.push(CaseFailure {
                index,
                graph,
                word,
                error,
            }),
        }
    }
    report
}
