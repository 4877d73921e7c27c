//! Text input format.
//!
//! ```text
//! # comment
//! vertices: a, b, c
//! graph: a-b, b-c
//! word: a c^-1 b^2
//! ```
//!
//! Lines are `key: value` with keys `vertices`, `graph` and `word`; `;` also
//! separates lines so a whole input fits on one command line. Edge endpoints
//! not listed under `vertices` are declared on first use, in order. Vertex
//! names are nonempty and may not contain whitespace or any of `,-^:;#`.
//! Word tokens are `v`, `v^n` or `v^-n`, and powers expand to letter runs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::word::{Letter, Word};

/// A graph together with the words given alongside it.
#[derive(Debug, Clone)]
pub struct Input {
    pub graph: Graph,
    pub words: Vec<Word>,
}

const MAX_EXPONENT: u64 = 1 << 20;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| !c.is_whitespace() && !matches!(c, ',' | '-' | '^' | ':' | ';' | '#'))
}

/// Comma-separated items with their 1-based columns, whitespace trimmed.
fn items(value: &str, offset: usize) -> Vec<(usize, &str)> {
    if value.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut start = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((offset + start + lead + 1, part.trim()));
        start += part.len() + 1;
    }
    out
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    value: &'a str,
    /// 0-based column where `value` starts.
    value_col: usize,
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut lines = Vec::new();
    for (idx, raw) in text.split(['\n', ';']).enumerate() {
        let number = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(colon) = raw.find(':') else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(err(number, col, "expected 'key: value'"));
        };
        let key = raw[..colon].trim();
        if !matches!(key, "vertices" | "graph" | "word") {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(err(number, col, format!("unknown key '{key}'")));
        }
        lines.push(Line {
            number,
            key,
            value: raw[colon + 1..].trim_end_matches('\r'),
            value_col: colon + 1,
        });
    }
    Ok(lines)
}

/// Parses a full input: graph declarations plus any number of words.
pub fn parse_input(text: &str) -> Result<Input> {
    let lines = split_lines(text)?;
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, usize, usize)> = Vec::new();

    let mut declare = |name: &str, line: usize, col: usize, explicit: bool| -> Result<()> {
        if !valid_name(name) {
            return Err(err(line, col, format!("invalid vertex name '{name}'")));
        }
        if names.iter().any(|n| n == name) {
            if explicit {
                return Err(err(line, col, format!("duplicate vertex '{name}'")));
            }
        } else {
            names.push(name.to_string());
        }
        Ok(())
    };

    for line in &lines {
        match line.key {
            "vertices" => {
                for (col, item) in items(line.value, line.value_col) {
                    declare(item, line.number, col, true)?;
                }
            }
            "graph" => {
                for (col, item) in items(line.value, line.value_col) {
                    let Some((u, v)) = item.split_once('-') else {
                        return Err(err(line.number, col, format!("expected 'u-v', found '{item}'")));
                    };
                    let (u, v) = (u.trim(), v.trim());
                    if u == v {
                        return Err(err(line.number, col, format!("loop at vertex '{u}'")));
                    }
                    declare(u, line.number, col, false)?;
                    declare(v, line.number, col, false)?;
                    let dup = edges
                        .iter()
                        .any(|(a, b, _, _)| (a == u && b == v) || (a == v && b == u));
                    if dup {
                        return Err(err(line.number, col, format!("duplicate edge {u}-{v}")));
                    }
                    edges.push((u.to_string(), v.to_string(), line.number, col));
                }
            }
            _ => {}
        }
    }

    let pairs: Vec<(String, String)> = edges.iter().map(|(u, v, _, _)| (u.clone(), v.clone())).collect();
    let graph = Graph::new(&names, &pairs)?;

    let words = lines
        .iter()
        .filter(|l| l.key == "word")
        .map(|l| parse_word_at(&graph, l.value, l.number, l.value_col))
        .collect::<Result<Vec<_>>>()?;
    Ok(Input { graph, words })
}

/// Parses just a graph; `word:` lines are rejected.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if let Some(line) = split_lines(text)?.iter().find(|l| l.key == "word") {
        return Err(err(line.number, 1, "unexpected 'word:' line in a graph"));
    }
    Ok(parse_input(text)?.graph)
}

/// Parses a word such as `a b^-1 c^3` over `graph`.
pub fn parse_word(graph: &Graph, text: &str) -> Result<Word> {
    parse_word_at(graph, text, 1, 0)
}

fn parse_word_at(graph: &Graph, text: &str, line: usize, offset: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut pos = 0;
    for token in text.split_whitespace() {
        let start = pos + text[pos..].find(token).expect("token comes from text");
        pos = start + token.len();
        let col = offset + start + 1;
        let (name, exp) = match token.split_once('^') {
            Some((name, exp)) => {
                let (neg, digits) = match exp.strip_prefix('-') {
                    Some(d) => (true, d),
                    None => (false, exp),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err(line, col, format!("invalid exponent in '{token}'")));
                }
                let n: u64 = digits
                    .parse()
                    .ok()
                    .filter(|&n| n <= MAX_EXPONENT)
                    .ok_or_else(|| err(line, col, format!("exponent too large in '{token}'")))?;
                (name, if neg { -(n as i64) } else { n as i64 })
            }
            None => (token, 1),
        };
        let vertex = graph
            .vertex(name)
            .map_err(|_| err(line, col, format!("unknown vertex '{name}'")))?;
        let sign = if exp < 0 { -1 } else { 1 };
        letters.extend(std::iter::repeat_n(Letter::new(vertex, sign), exp.unsigned_abs() as usize));
    }
    Ok(Word::new(letters))
}
