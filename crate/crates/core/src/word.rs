//! Words in the standard generators of `A(Γ)` and the word problem.
//!
//! A word is reduced iff it has no factor `v^ε u v^-ε` where every letter of
//! `u` commutes with `v`. Reduced words representing the same element differ
//! only by swaps of adjacent commuting letters, so the lexicographically least
//! reduced word is a canonical form for the element.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub vertex: VertexId,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn new(vertex: VertexId, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter { vertex, sign }
    }

    pub fn pos(vertex: VertexId) -> Self {
        Letter { vertex, sign: 1 }
    }

    pub fn neg(vertex: VertexId) -> Self {
        Letter { vertex, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            vertex: self.vertex,
            sign: -self.sign,
        }
    }
}

/// Declaration order of the vertex first, then `+1 < -1`.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertex
            .cmp(&other.vertex)
            .then_with(|| other.sign.cmp(&self.sign))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite sequence of letters. The empty word is the identity.
///
/// Words are written left to right; under the action convention used
/// throughout the crate the rightmost letter acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn identity() -> Self {
        Word::default()
    }

    /// Parses the text syntax `a b^-1 c^3` against `graph`.
    pub fn parse(graph: &Graph, text: &str) -> Result<Self> {
        crate::parse::parse_word(graph, text)
    }

    /// `v^exp` as a run of `|exp|` letters.
    pub fn power(vertex: VertexId, exp: i64) -> Self {
        let sign = if exp < 0 { -1 } else { 1 };
        Word {
            letters: vec![Letter::new(vertex, sign); exp.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reverses the letters and flips every sign.
    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Checks that every letter names a vertex of `graph`.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        match self.letters.iter().find(|l| l.vertex.index() >= graph.len()) {
            Some(l) => Err(Error::input(format!(
                "letter refers to vertex #{} outside the graph",
                l.vertex.0
            ))),
            None => Ok(()),
        }
    }

    /// Formats the word in the text syntax, compressing runs to powers.
    pub fn display<'a>(&'a self, graph: &'a Graph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a Graph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = (j - i) as i64 * letters[i].sign as i64;
            let name = self.graph.name(letters[i].vertex);
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Deletes cancelling pairs until the word is reduced.
///
/// Letters are appended one at a time; a new letter `v^ε` cancels the last
/// `v`-letter of the output when that letter is `v^-ε` and everything after
/// it commutes with `v`.
fn cancel_pairs(graph: &Graph, word: &Word) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &letter in word.letters() {
        let mut cancel_at = None;
        for (pos, prev) in out.iter().enumerate().rev() {
            if prev.vertex == letter.vertex {
                if prev.sign == -letter.sign {
                    cancel_at = Some(pos);
                }
                break;
            }
            if !graph.adjacent(prev.vertex, letter.vertex) {
                break;
            }
        }
        match cancel_at {
            Some(pos) => {
                out.remove(pos);
            }
            None => out.push(letter),
        }
    }
    out
}

/// Lexicographically least rearrangement of a reduced word reachable by
/// swapping adjacent commuting letters.
///
/// Repeatedly emits the least letter that can be moved to the front, i.e. one
/// whose vertex is adjacent to the vertex of every letter before it.
fn lex_least(graph: &Graph, mut rest: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best = 0;
        for j in 1..rest.len() {
            if rest[j] >= rest[best] {
                continue;
            }
            let v = rest[j].vertex;
            if rest[..j].iter().all(|l| graph.adjacent(l.vertex, v)) {
                best = j;
            }
        }
        out.push(rest.remove(best));
    }
    out
}

/// The canonical reduced form of `word` in `A(graph)`.
///
/// The result has minimal length among all representatives and is the
/// lexicographically least such word (vertex declaration order, then
/// `+1 < -1`), so equal elements give identical words.
pub fn reduce(graph: &Graph, word: &Word) -> Result<Word> {
    word.validate(graph)?;
    Ok(Word::new(lex_least(graph, cancel_pairs(graph, word))))
}

/// `true` iff `word` has minimal length for its element.
pub fn is_reduced(graph: &Graph, word: &Word) -> Result<bool> {
    word.validate(graph)?;
    Ok(cancel_pairs(graph, word).len() == word.len())
}

/// Solves the word problem.
pub fn is_trivial(graph: &Graph, word: &Word) -> Result<bool> {
    word.validate(graph)?;
    Ok(cancel_pairs(graph, word).is_empty())
}

/// `true` iff the two words represent the same element.
pub fn equal_in_group(graph: &Graph, u: &Word, v: &Word) -> Result<bool> {
    is_trivial(graph, &concat(&[u.clone(), v.inverse()]))
}

/// Vertices occurring in a reduced representative of `word`.
pub fn support(graph: &Graph, word: &Word) -> Result<BTreeSet<VertexId>> {
    word.validate(graph)?;
    Ok(cancel_pairs(graph, word)
        .into_iter()
        .map(|l| l.vertex)
        .collect())
}

/// Letter-sequence concatenation; never reduces.
pub fn concat(words: &[Word]) -> Word {
    words.iter().flat_map(|w| w.letters().iter().copied()).collect()
}

/// `true` iff the concatenation of reduced words is itself reduced.
pub fn is_reduced_concatenation(graph: &Graph, words: &[Word]) -> Result<bool> {
    for (i, w) in words.iter().enumerate() {
        if !is_reduced(graph, w)? {
            return Err(Error::input(format!("member {i} is not reduced")));
        }
    }
    is_reduced(graph, &concat(words))
}

/// A reduced word whose support is a clique, together with its net exponents.
///
/// All supported vertices commute, so the element is determined by the
/// exponent map and the word is stored collected in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueWord {
    word: Word,
    exponents: BTreeMap<VertexId, i64>,
}

impl CliqueWord {
    /// Builds the clique word `∏ v^e` from nonzero exponents.
    pub fn from_exponents(graph: &Graph, exponents: BTreeMap<VertexId, i64>) -> Result<Self> {
        if let Some((v, _)) = exponents.iter().find(|(_, &e)| e == 0) {
            return Err(Error::domain(format!(
                "zero exponent for vertex '{}'",
                graph.name(*v)
            )));
        }
        if let Some(v) = exponents.keys().find(|v| v.index() >= graph.len()) {
            return Err(Error::input(format!("vertex #{} outside the graph", v.0)));
        }
        let vertices: Vec<VertexId> = exponents.keys().copied().collect();
        if !graph.is_clique(&vertices) {
            return Err(Error::domain("support is not a clique"));
        }
        let word = exponents
            .iter()
            .flat_map(|(&v, &e)| Word::power(v, e).into_letters())
            .collect();
        Ok(CliqueWord { word, exponents })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn exponents(&self) -> &BTreeMap<VertexId, i64> {
        &self.exponents
    }

    pub fn exponent(&self, v: VertexId) -> i64 {
        self.exponents.get(&v).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.exponents.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.exponents.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `(σ, n)` with `σ·n` the exponent of `v`, so that `v^(σn)` is the
    /// highest power of `v` in this clique word.
    pub fn highest_power(&self, v: VertexId) -> Result<(i8, u64)> {
        match self.exponents.get(&v) {
            Some(&e) => Ok((if e < 0 { -1 } else { 1 }, e.unsigned_abs())),
            None => Err(Error::domain(format!(
                "vertex #{} is not in the support of the clique word",
                v.0
            ))),
        }
    }
}

/// Collects a reduced word with clique support into a [`CliqueWord`].
pub fn as_clique_word(graph: &Graph, word: &Word) -> Result<CliqueWord> {
    if !is_reduced(graph, word)? {
        return Err(Error::input("word is not reduced"));
    }
    let mut exponents = BTreeMap::new();
    for l in word.letters() {
        *exponents.entry(l.vertex).or_insert(0i64) += l.sign as i64;
    }
    let vertices: Vec<VertexId> = exponents.keys().copied().collect();
    if !graph.is_clique(&vertices) {
        return Err(Error::domain("support of the word is not a clique"));
    }
    // A reduced clique word never has a vertex with both signs.
    debug_assert!(exponents.values().all(|&e| e != 0));
    let cw = CliqueWord {
        word: word.clone(),
        exponents,
    };
    debug_assert_eq!(
        cw.len() as u64,
        cw.exponents.values().map(|e| e.unsigned_abs()).sum::<u64>()
    );
    Ok(cw)
}
