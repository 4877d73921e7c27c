//! JSON documents: certificates, decompositions and reductions.
//!
//! All rationals are `"p/q"` strings (plain integers without `/q`). Block
//! lists are in written order `w_k, …, w_1`; spine and stage lists run
//! `1..=k`. Field order is fixed so identical inputs give identical bytes.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::decomp::{CliqueDecomposition, GreedyRun};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pl::PlMapJson;
use crate::rational;
use crate::witness::Certificate;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .map(|(u, v)| [g.name(u).to_string(), g.name(v).to_string()])
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|[u, v]| (u.clone(), v.clone()))
            .collect();
        Graph::new(&self.vertices, &edges)
    }
}

/// `{"v": "a", "s": 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterJson {
    pub v: String,
    pub s: i8,
}

pub fn word_to_json(g: &Graph, w: &Word) -> Vec<LetterJson> {
    w.letters()
        .iter()
        .map(|l| LetterJson {
            v: g.name(l.vertex).to_string(),
            s: l.sign,
        })
        .collect()
}

pub fn word_from_json(g: &Graph, letters: &[LetterJson]) -> Result<Word> {
    letters
        .iter()
        .map(|l| {
            if l.s != 1 && l.s != -1 {
                return Err(Error::input(format!("letter sign {} is not ±1", l.s)));
            }
            Ok(Letter::new(g.vertex(&l.v)?, l.s))
        })
        .collect()
}

/// A clique word as `vertex → exponent`, in vertex order.
pub type BlockJson = IndexMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub blocks: Vec<BlockJson>,
    pub complexity: Vec<usize>,
    pub slides: usize,
}

impl DecompositionJson {
    pub fn new(d: &CliqueDecomposition, slides: usize) -> Self {
        let g = d.graph();
        DecompositionJson {
            blocks: d
                .blocks()
                .iter()
                .map(|b| {
                    b.exponents()
                        .iter()
                        .map(|(&v, &e)| (g.name(v).to_string(), e))
                        .collect()
                })
                .collect(),
            complexity: d.complexity().0,
            slides,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpineJson {
    pub v: String,
    pub sigma: i8,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageJson {
    pub stage: usize,
    pub input: String,
    pub output: String,
}

/// Hex SHA-256 of the compact JSON of `[graph, word]`.
pub fn statement_digest(graph: &GraphJson, word: &[LetterJson]) -> String {
    let bytes = serde_json::to_vec(&(graph, word)).expect("plain data serializes");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Self-contained nontriviality certificate for one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub graph: GraphJson,
    pub word: Vec<LetterJson>,
    /// SHA-256 of the graph and word, binding the certificate to its input.
    pub statement_sha256: String,
    pub element: Vec<LetterJson>,
    pub k: usize,
    pub decomposition: DecompositionJson,
    pub spine: Vec<SpineJson>,
    pub images: IndexMap<String, PlMapJson>,
    pub test_point: String,
    pub image: String,
    pub target_interval: [String; 2],
    pub stage_trace: Vec<StageJson>,
    pub verified: bool,
}

impl CertificateJson {
    pub fn new(cert: &Certificate) -> Self {
        let wit = &cert.witness;
        let g = &wit.graph;
        let graph = GraphJson::from_graph(g);
        let word = word_to_json(g, &wit.input);
        CertificateJson {
            statement_sha256: statement_digest(&graph, &word),
            graph,
            word,
            element: word_to_json(g, &wit.element),
            k: wit.k(),
            decomposition: DecompositionJson::new(&wit.decomposition, wit.slides),
            spine: wit
                .spine
                .picks
                .iter()
                .map(|p| SpineJson {
                    v: g.name(p.vertex).to_string(),
                    sigma: p.sign,
                    n: p.n,
                })
                .collect(),
            images: wit
                .images
                .iter()
                .map(|(&v, f)| (g.name(v).to_string(), PlMapJson::from(f.clone())))
                .collect(),
            test_point: rational::format(&cert.test_point),
            image: rational::format(&cert.image),
            target_interval: [
                rational::format(&cert.target.lo),
                rational::format(&cert.target.hi),
            ],
            stage_trace: cert
                .trace
                .iter()
                .map(|s| StageJson {
                    stage: s.stage,
                    input: rational::format(&s.input),
                    output: rational::format(&s.output),
                })
                .collect(),
            verified: true,
        }
    }

    /// Human-readable summary.
    pub fn report(&self) -> String {
        let mut out = String::new();
        let word = |letters: &[LetterJson]| -> String {
            if letters.is_empty() {
                return "1".into();
            }
            letters
                .iter()
                .map(|l| if l.s > 0 { l.v.clone() } else { format!("{}^-1", l.v) })
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!("element     : {}\n", word(&self.element)));
        out.push_str(&format!("blocks (k={}): ", self.k));
        let blocks: Vec<String> = self
            .decomposition
            .blocks
            .iter()
            .map(|b| {
                let parts: Vec<String> = b.iter().map(|(v, e)| format!("{v}^{e}")).collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        out.push_str(&blocks.join(" "));
        out.push('\n');
        let spine: Vec<String> = self
            .spine
            .iter()
            .enumerate()
            .map(|(i, p)| format!("v{}={}^{}", i + 1, p.v, p.sigma as i64 * p.n as i64))
            .collect();
        out.push_str(&format!("spine       : {}\n", spine.join(", ")));
        for s in &self.stage_trace {
            out.push_str(&format!("stage {:<5} : {} -> {}\n", s.stage, s.input, s.output));
        }
        out.push_str(&format!(
            "psi(g)({}) = {} in [{}, {}]\n",
            self.test_point, self.image, self.target_interval[0], self.target_interval[1]
        ));
        out
    }
}

/// A set of certificates, one per separated element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationJson {
    pub certificates: Vec<CertificateJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub word: Vec<LetterJson>,
    pub reduced: Vec<LetterJson>,
    pub trivial: bool,
    pub support: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeResultJson {
    pub word: Vec<LetterJson>,
    pub element: Vec<LetterJson>,
    pub left_greedy: bool,
    #[serde(flatten)]
    pub decomposition: DecompositionJson,
}

impl DecomposeResultJson {
    pub fn new(g: &Graph, w: &Word, run: &GreedyRun) -> Self {
        DecomposeResultJson {
            word: word_to_json(g, w),
            element: word_to_json(g, &run.decomposition.word()),
            left_greedy: crate::decomp::is_left_greedy(&run.decomposition),
            decomposition: DecompositionJson::new(&run.decomposition, run.slides()),
        }
    }
}

/// Output of `reduce` and `decompose`: the graph and one entry per word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultsJson<T> {
    pub graph: GraphJson,
    pub results: Vec<T>,
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness;

    #[test]
    fn certificate_round_trips() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let w = Word::parse(&g, "a c b^-1 a").unwrap();
        let wit = witness::build_witness(&g, &w).unwrap();
        let cert = witness::verify_witness(&wit).unwrap();
        let json = CertificateJson::new(&cert);
        let text = to_pretty(&json);
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        assert_eq!(to_pretty(&back), text);
        assert_eq!(word_from_json(&g, &back.word).unwrap(), w);
        assert_eq!(back.graph.to_graph().unwrap(), g);
        assert!(json.report().contains("psi(g)(5/4)"));
    }

    #[test]
    fn letter_signs_are_checked() {
        let g = Graph::free(&["a"]).unwrap();
        let bad = [LetterJson { v: "a".into(), s: 2 }];
        assert!(word_from_json(&g, &bad).is_err());
    }

    #[test]
    fn free_pair_document_shape() {
        let g = Graph::free(&["a", "b"]).unwrap();
        let wit = witness::build_witness(&g, &Word::parse(&g, "a b").unwrap()).unwrap();
        let json = CertificateJson::new(&witness::verify_witness(&wit).unwrap());
        assert_eq!(json.image, "13/4");
        assert_eq!(json.target_interval, ["13/4".to_string(), "7/2".to_string()]);
        assert_eq!(json.k, 2);
        let value = serde_json::to_value(&json).unwrap();
        assert_eq!(value["images"]["a"]["bp"][0], "2");
        assert_eq!(value["verified"], true);
        assert_eq!(value["word"][0], serde_json::json!({"v": "a", "s": 1}));
    }
}
