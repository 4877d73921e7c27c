//! The witness homomorphism `ψ_g` and its nontriviality certificate.
//!
//! For a nontrivial `g` with left-greedy form `w_k ⋯ w_1`, a spine picks one
//! vertex `v_i ∈ supp(w_i)` per block with consecutive picks not commuting.
//! Block `i` owns the interval `I_i = [i, i + 3/2]` and the translated bump
//! `ρ_i(x) = ρ₀(x − i) + i`; each generator maps to the product of
//! `ρ_j^{σ_j}` over the blocks where it was picked. Commuting generators then
//! get disjoint supports, so `ψ_g` is a homomorphism, and tracing `5/4`
//! through the blocks climbs one interval per block, ending in
//! `[k + 5/4, k + 3/2]`.
//!
//! Words act with the rightmost letter first: `ψ(uv) = ψ(u) ∘ ψ(v)`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::decomp::{self, CliqueDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::pl::{ClosedInterval, PlMap};
use crate::rational::{self, int, rat, Rational};
use crate::word::{self, Word};

/// One spine entry: `v_i` with `v_i^{σ_i n_i}` its power in `w_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinePick {
    pub vertex: VertexId,
    pub sign: i8,
    pub n: u64,
}

/// Picks for blocks `1..=k`; `picks[i - 1]` belongs to `w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spine {
    pub picks: Vec<SpinePick>,
}

impl Spine {
    /// The pick for block `i` (1-based).
    pub fn pick(&self, i: usize) -> &SpinePick {
        &self.picks[i - 1]
    }

    /// Block indices `j` with `v_j = v`, increasing.
    pub fn indices_of(&self, v: VertexId) -> impl Iterator<Item = usize> + '_ {
        self.picks
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.vertex == v)
            .map(|(i, _)| i + 1)
    }
}

/// Images of the generators under some homomorphism to PL₊(ℝ).
pub type Images = BTreeMap<VertexId, PlMap>;

#[derive(Debug, Clone)]
pub struct Witness {
    pub graph: Graph,
    /// The word as given.
    pub input: Word,
    /// Canonical reduced form of the input.
    pub element: Word,
    pub decomposition: CliqueDecomposition,
    /// Number of slides that produced the left-greedy form.
    pub slides: usize,
    pub spine: Spine,
    pub images: Images,
}

impl Witness {
    pub fn k(&self) -> usize {
        self.decomposition.k()
    }
}

/// One block of the certificate trace: `output = ψ(w_stage)(input)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub stage: usize,
    pub input: Rational,
    pub output: Rational,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub witness: Witness,
    pub test_point: Rational,
    pub image: Rational,
    pub target: ClosedInterval,
    pub trace: Vec<Stage>,
}

/// The test point `5/4`.
pub fn test_point() -> Rational {
    rat(5, 4)
}

/// `I_i = [i, i + 3/2]`.
pub fn block_interval(i: usize) -> ClosedInterval {
    let i = int(i as i64);
    ClosedInterval::new(i.clone(), i + rat(3, 2))
}

/// `[ℓ + 5/4, ℓ + 3/2]`, where stage `ℓ` must land.
pub fn stage_target(stage: usize) -> ClosedInterval {
    let l = int(stage as i64);
    ClosedInterval::new(&l + rat(5, 4), l + rat(3, 2))
}

/// `ρ_i`.
pub fn rho(i: usize) -> PlMap {
    rho_power(i, 1)
}

/// `ρ_i^σ` for `σ = ±1`.
fn rho_power(i: usize, sign: i8) -> PlMap {
    static BASE: OnceLock<[PlMap; 2]> = OnceLock::new();
    let base = BASE.get_or_init(|| [PlMap::rho0(), PlMap::rho0().inverse()]);
    base[usize::from(sign < 0)].translate_conjugate(&int(i as i64))
}

/// Chooses `v_1` as the least vertex of `w_1` and each `v_{i+1}` as the least
/// vertex of `w_{i+1}` not commuting with `v_i`.
pub fn choose_spine(graph: &Graph, d: &CliqueDecomposition) -> Result<Spine> {
    if d.is_empty() {
        return Err(Error::domain(
            "identity element: no witness exists (requires g ≠ 1)",
        ));
    }
    if !decomp::is_left_greedy(d) {
        return Err(Error::domain("decomposition is not left-greedy"));
    }
    let mut picks: Vec<SpinePick> = Vec::with_capacity(d.k());
    for i in 1..=d.k() {
        let block = d.block(i);
        let vertex = match picks.last() {
            None => block.support().next(),
            Some(prev) => block.support().find(|&v| !graph.commute(prev.vertex, v)),
        }
        .ok_or_else(|| Error::domain(format!("no spine vertex available in block {i}")))?;
        let (sign, n) = block.highest_power(vertex)?;
        picks.push(SpinePick { vertex, sign, n });
    }
    Ok(Spine { picks })
}

/// `ψ(v) = ∏_{v_j = v} ρ_j^{σ_j}` in increasing `j`; the identity when `v`
/// is never picked.
pub fn generator_images(graph: &Graph, spine: &Spine) -> Images {
    graph
        .vertices()
        .map(|v| {
            let image = spine.indices_of(v).fold(PlMap::identity(), |acc, j| {
                acc.compose(&rho_power(j, spine.pick(j).sign))
            });
            (v, image)
        })
        .collect()
}

/// `J_v = ⋃_{v_j = v} I_j`.
pub fn owned_intervals(spine: &Spine, v: VertexId) -> Vec<ClosedInterval> {
    spine.indices_of(v).map(block_interval).collect()
}

/// Builds `ψ_g` for a nontrivial element.
pub fn build_witness(graph: &Graph, w: &Word) -> Result<Witness> {
    let element = word::reduce(graph, w)?;
    if element.is_empty() {
        return Err(Error::domain(
            "identity element: no witness exists (requires g ≠ 1)",
        ));
    }
    let run = decomp::left_greedy_run(graph, &element)?;
    let slides = run.slides();
    let decomposition = run.decomposition;
    let spine = choose_spine(graph, &decomposition)?;
    let images = generator_images(graph, &spine);
    Ok(Witness {
        graph: graph.clone(),
        input: w.clone(),
        element,
        decomposition,
        slides,
        spine,
        images,
    })
}

/// Evaluates the image of `w` at `x`, rightmost letter first.
pub fn apply_word(images: &Images, w: &Word, x: &Rational) -> Result<Rational> {
    let mut x = x.clone();
    for letter in w.letters().iter().rev() {
        let f = images.get(&letter.vertex).ok_or_else(|| {
            Error::input(format!("no image for vertex #{}", letter.vertex.0))
        })?;
        x = if letter.sign > 0 {
            f.evaluate(&x)
        } else {
            f.evaluate_inverse(&x)
        };
    }
    Ok(x)
}

/// The PL map `ψ(w)` itself.
pub fn image_of_word(images: &Images, w: &Word) -> Result<PlMap> {
    let mut acc = PlMap::identity();
    for letter in w.letters() {
        let f = images.get(&letter.vertex).ok_or_else(|| {
            Error::input(format!("no image for vertex #{}", letter.vertex.0))
        })?;
        acc = if letter.sign > 0 {
            acc.compose(f)
        } else {
            acc.compose(&f.inverse())
        };
    }
    Ok(acc)
}

fn fail(msg: String) -> Error {
    Error::verification(msg)
}

/// Checks every structural invariant of `wit` and traces the test point.
///
/// Any failure here is a construction bug; the error carries the exact
/// values involved.
pub fn verify_witness(wit: &Witness) -> Result<Certificate> {
    certify(wit.clone())
}

/// [`verify_witness`], taking ownership of the witness.
pub fn certify(wit: Witness) -> Result<Certificate> {
    let (trace, image) = check(&wit)?;
    let target = stage_target(wit.k());
    Ok(Certificate {
        witness: wit,
        test_point: test_point(),
        image,
        target,
        trace,
    })
}

fn check(wit: &Witness) -> Result<(Vec<Stage>, Rational)> {
    let graph = &wit.graph;
    let d = &wit.decomposition;
    let k = d.k();
    if k == 0 {
        return Err(fail("empty decomposition".into()));
    }
    if !decomp::is_left_greedy(d) {
        return Err(fail("decomposition is not left-greedy".into()));
    }
    if !word::equal_in_group(graph, &d.word(), &wit.element)? {
        return Err(fail("decomposition does not represent the element".into()));
    }
    if d.total_len() != wit.element.len() {
        return Err(fail("decomposition length differs from the element length".into()));
    }

    if wit.spine.picks.len() != k {
        return Err(fail(format!("spine has {} picks for {k} blocks", wit.spine.picks.len())));
    }
    for i in 1..=k {
        let pick = wit.spine.pick(i);
        let power = d.block(i).highest_power(pick.vertex).map_err(|_| {
            fail(format!("spine vertex '{}' not in block {i}", graph.name(pick.vertex)))
        })?;
        if power != (pick.sign, pick.n) {
            return Err(fail(format!("spine pick {i} does not match the block exponent")));
        }
        if i > 1 && graph.commute(wit.spine.pick(i - 1).vertex, pick.vertex) {
            return Err(fail(format!("spine picks {} and {i} commute", i - 1)));
        }
    }

    for v in graph.vertices() {
        let f = wit
            .images
            .get(&v)
            .ok_or_else(|| fail(format!("no image for '{}'", graph.name(v))))?;
        let owned: Vec<usize> = wit.spine.indices_of(v).collect();
        if owned.windows(2).any(|p| p[1] - p[0] < 2) {
            return Err(fail(format!("'{}' picked in adjacent blocks", graph.name(v))));
        }
        if !f.support_within(&owned_intervals(&wit.spine, v)) {
            return Err(fail(format!("supp ψ({}) escapes J_v", graph.name(v))));
        }
    }
    for (u, v) in graph.edges() {
        let (fu, fv) = (&wit.images[&u], &wit.images[&v]);
        if !fu.supports_disjoint(fv) {
            return Err(fail(format!(
                "ψ({}) and ψ({}) have overlapping supports",
                graph.name(u),
                graph.name(v)
            )));
        }
        if !fu.commutes_with(fv) {
            return Err(fail(format!(
                "ψ({}) and ψ({}) do not commute",
                graph.name(u),
                graph.name(v)
            )));
        }
    }

    let start = test_point();
    let mut x = start.clone();
    let mut trace = Vec::with_capacity(k);
    for stage in 1..=k {
        let out = apply_word(&wit.images, d.block(stage).word(), &x)?;
        let target = stage_target(stage);
        if !target.contains(&out) {
            return Err(fail(format!(
                "stage {stage}: ψ(w_{stage})({}) = {} not in {target}",
                rational::format(&x),
                rational::format(&out)
            )));
        }
        trace.push(Stage {
            stage,
            input: x,
            output: out.clone(),
        });
        x = out;
    }
    let image = apply_word(&wit.images, &wit.element, &start)?;
    if image != x {
        return Err(fail(format!(
            "ψ(g)({}) = {} but the block trace ends at {}",
            rational::format(&start),
            rational::format(&image),
            rational::format(&x)
        )));
    }
    Ok((trace, image))
}

/// `ψ_g` conjugated into `[0, 1]` by `x ↦ x / (k + 2)`.
pub fn normalize_to_unit_interval(wit: &Witness) -> Images {
    let scale = rat(1, wit.k() as i64 + 2);
    wit.images
        .iter()
        .map(|(&v, f)| (v, f.scale_conjugate(&scale)))
        .collect()
}

/// One certified witness per element, so the product of the `ψ_{g_i}` kills
/// none of them.
pub fn separate_set(graph: &Graph, words: &[Word]) -> Result<Vec<Witness>> {
    for (i, w) in words.iter().enumerate() {
        if word::is_trivial(graph, w)? {
            return Err(Error::domain(format!(
                "element {i} is the identity and has no witness"
            )));
        }
    }
    words
        .iter()
        .map(|w| {
            let wit = build_witness(graph, w)?;
            check(&wit)?;
            Ok(wit)
        })
        .collect()
}
