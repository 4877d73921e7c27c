//! Clique word decompositions and the left-greedy form.
//!
//! A decomposition `w_k ⋯ w_1` is stored left to right, so `blocks()[0]` is
//! `w_k` and the last block is `w_1`, the one that acts first. Conventional
//! 1-based indices (`w_1` rightmost) are available through
//! [`CliqueDecomposition::block`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::word::{self, CliqueWord, Word};

/// Block lengths `(|w_k|, …, |w_1|)`, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueDecomposition {
    graph: Graph,
    blocks: Vec<CliqueWord>,
}

impl CliqueDecomposition {
    /// Validates that every block is a nonempty clique word and that the
    /// concatenation is reduced.
    pub fn new(graph: Graph, blocks: Vec<CliqueWord>) -> Result<Self> {
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::domain("decomposition contains an empty block"));
        }
        let words: Vec<Word> = blocks.iter().map(|b| b.word().clone()).collect();
        if !word::is_reduced_concatenation(&graph, &words)? {
            return Err(Error::domain("concatenation of the blocks is not reduced"));
        }
        Ok(CliqueDecomposition { graph, blocks })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Blocks in written order `w_k, …, w_1`.
    pub fn blocks(&self) -> &[CliqueWord] {
        &self.blocks
    }

    /// Number of blocks `k`.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The block `w_i` for `1 ≤ i ≤ k`.
    pub fn block(&self, i: usize) -> &CliqueWord {
        assert!(i >= 1 && i <= self.k(), "block index {i} out of 1..={}", self.k());
        &self.blocks[self.k() - i]
    }

    /// The concatenation `w_k ⋯ w_1`.
    pub fn word(&self) -> Word {
        let words: Vec<Word> = self.blocks.iter().map(|b| b.word().clone()).collect();
        word::concat(&words)
    }

    pub fn total_len(&self) -> usize {
        self.blocks.iter().map(CliqueWord::len).sum()
    }

    pub fn complexity(&self) -> Complexity {
        Complexity(self.blocks.iter().map(CliqueWord::len).collect())
    }

    /// `Σ (position from the left, 1-based) × |block|`.
    ///
    /// Every slide lowers this by at least one, and it lies between `|g|`
    /// and `|g|(|g|+1)/2`, which bounds the number of slides.
    pub fn potential(&self) -> usize {
        self.blocks
            .iter()
            .enumerate()
            .map(|(pos, b)| (pos + 1) * b.len())
            .sum()
    }
}

/// One single-letter block per letter of the canonical reduced form.
pub fn singleton_decomposition(graph: &Graph, w: &Word) -> Result<CliqueDecomposition> {
    let reduced = word::reduce(graph, w)?;
    let blocks = reduced
        .letters()
        .iter()
        .map(|l| CliqueWord::from_exponents(graph, BTreeMap::from([(l.vertex, l.sign as i64)])))
        .collect::<Result<Vec<_>>>()?;
    Ok(CliqueDecomposition {
        graph: graph.clone(),
        blocks,
    })
}

/// `true` iff `{v} ∪ supp(block)` spans a complete subgraph.
fn joins_clique(graph: &Graph, v: VertexId, block: &CliqueWord) -> bool {
    block.support().all(|u| graph.commute(u, v))
}

/// `true` iff for each `i < k` and each `v ∈ supp(w_i)` some
/// `v' ∈ supp(w_{i+1})` has `[v, v'] ≠ 1`.
pub fn is_left_greedy(d: &CliqueDecomposition) -> bool {
    d.blocks.windows(2).all(|pair| {
        let (left, right) = (&pair[0], &pair[1]);
        right
            .support()
            .all(|v| left.support().any(|u| !d.graph.commute(u, v)))
    })
}

/// Moves one occurrence of `v` from `w_{i-1}` into `w_i`.
///
/// Requires `v ∈ supp(w_{i-1})` and `{v} ∪ supp(w_i)` a clique. An emptied
/// block is deleted.
pub fn slide_left(d: &CliqueDecomposition, i: usize, v: VertexId) -> Result<CliqueDecomposition> {
    if i < 2 || i > d.k() {
        return Err(Error::domain(format!(
            "slide target index {i} must lie in 2..={}",
            d.k()
        )));
    }
    // Written-order positions of w_i and w_{i-1}.
    let to = d.k() - i;
    let from = to + 1;
    let name = d.graph.name(v).to_string();
    let (sign, _) = d.blocks[from].highest_power(v).map_err(|_| {
        Error::domain(format!("'{name}' is not in the support of block {}", i - 1))
    })?;
    if !joins_clique(&d.graph, v, &d.blocks[to]) {
        return Err(Error::domain(format!(
            "'{name}' does not commute with all of block {i}"
        )));
    }
    let sign = sign as i64;

    let mut target = d.blocks[to].exponents().clone();
    let entry = target.entry(v).or_insert(0);
    if *entry * sign < 0 {
        // Opposite signs would cancel across the blocks, contradicting reducedness.
        return Err(Error::verification(format!(
            "slide of '{name}' would cancel: blocks {} and {i} are not a reduced concatenation",
            i - 1
        )));
    }
    *entry += sign;

    let mut source = d.blocks[from].exponents().clone();
    let e = source.get_mut(&v).expect("checked by highest_power");
    *e -= sign;
    if *e == 0 {
        source.remove(&v);
    }

    let mut blocks = d.blocks.clone();
    blocks[to] = CliqueWord::from_exponents(&d.graph, target)?;
    if source.is_empty() {
        blocks.remove(from);
    } else {
        blocks[from] = CliqueWord::from_exponents(&d.graph, source)?;
    }
    Ok(CliqueDecomposition {
        graph: d.graph.clone(),
        blocks,
    })
}

/// The leftmost available slide: highest target index `i`, least vertex.
fn next_slide(d: &CliqueDecomposition) -> Option<(usize, VertexId)> {
    (2..=d.k()).rev().find_map(|i| {
        let target = d.block(i);
        d.block(i - 1)
            .support()
            .find(|&v| joins_clique(&d.graph, v, target))
            .map(|v| (i, v))
    })
}

/// Result of running slides to a fixpoint.
#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub decomposition: CliqueDecomposition,
    /// Complexity before the first slide and after each slide.
    pub complexities: Vec<Complexity>,
    /// Potential before the first slide and after each slide.
    pub potentials: Vec<usize>,
}

impl GreedyRun {
    pub fn slides(&self) -> usize {
        self.complexities.len() - 1
    }
}

/// Left-greedy form with the full slide trace.
pub fn left_greedy_run(graph: &Graph, w: &Word) -> Result<GreedyRun> {
    let mut d = singleton_decomposition(graph, w)?;
    let mut complexities = vec![d.complexity()];
    let mut potentials = vec![d.potential()];
    while let Some((i, v)) = next_slide(&d) {
        d = slide_left(&d, i, v)?;
        complexities.push(d.complexity());
        potentials.push(d.potential());
    }
    debug_assert!(is_left_greedy(&d));
    Ok(GreedyRun {
        decomposition: d,
        complexities,
        potentials,
    })
}

/// A left-greedy clique word decomposition of the element `w`.
///
/// Starts from the singleton decomposition of the canonical reduced form and
/// slides letters left until no slide applies. The identity gives `k = 0`.
pub fn left_greedy_form(graph: &Graph, w: &Word) -> Result<CliqueDecomposition> {
    left_greedy_run(graph, w).map(|run| run.decomposition)
}
