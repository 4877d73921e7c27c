//! Finite simplicial graphs: the commutation data of `A(Γ)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a vertex in its graph. Ordering is declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite simplicial graph with named vertices.
///
/// Immutable after construction. Vertex order is the order of declaration and
/// is used for all deterministic tie-breaking downstream.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    inner: Arc<Inner>,
}

#[derive(Clone, PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
    adjacency: Vec<bool>,
}

impl Graph {
    /// Builds a graph from vertex names and edges given by name.
    ///
    /// Rejects empty or duplicate names, loops, duplicate edges, and edges
    /// with undeclared endpoints.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref();
            if v.is_empty() {
                return Err(Error::input("vertex identifiers must be nonempty"));
            }
            let id = VertexId(names.len() as u32);
            if index.insert(v.to_string(), id).is_some() {
                return Err(Error::input(format!("duplicate vertex '{v}'")));
            }
            names.push(v.to_string());
        }
        let n = names.len();
        let mut inner = Inner {
            names,
            index,
            edges: BTreeSet::new(),
            adjacency: vec![false; n * n],
        };
        for (u, v) in edges {
            let (u, v) = (inner.vertex(u.as_ref())?, inner.vertex(v.as_ref())?);
            inner.add_edge(u, v)?;
        }
        Ok(Graph {
            inner: Arc::new(inner),
        })
    }

    /// Builds a graph on `names` with edges given by vertex index pairs.
    pub fn from_index_edges<S: AsRef<str>>(names: &[S], edges: &[(usize, usize)]) -> Result<Self> {
        let mut inner = Arc::unwrap_or_clone(Graph::new::<S>(names, &[])?.inner);
        for &(u, v) in edges {
            if u >= inner.names.len() || v >= inner.names.len() {
                return Err(Error::input(format!("edge ({u},{v}) out of range")));
            }
            inner.add_edge(VertexId(u as u32), VertexId(v as u32))?;
        }
        Ok(Graph {
            inner: Arc::new(inner),
        })
    }

    /// The graph with no edges: `A(Γ)` is free.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Graph::new::<S>(names, &[])
    }

    /// The complete graph: `A(Γ)` is free abelian.
    pub fn complete<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let n = names.len();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::from_index_edges(names, &edges)
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    /// Looks up a vertex by name.
    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.inner.vertex(name)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.inner.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    /// All vertices in declaration order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.inner.names.len() as u32).map(VertexId)
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.inner.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    /// `true` iff `{u, v}` is an edge. Never true for `u == v`.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.inner.adjacency[u.index() * self.inner.names.len() + v.index()]
    }

    /// Name-based [`Graph::adjacent`]; errors on unknown vertices.
    pub fn adjacent_by_name(&self, u: &str, v: &str) -> Result<bool> {
        Ok(self.adjacent(self.vertex(u)?, self.vertex(v)?))
    }

    /// `true` iff the generators commute in `A(Γ)`, i.e. `[u, v] = 1`.
    pub fn commute(&self, u: VertexId, v: VertexId) -> bool {
        u == v || self.adjacent(u, v)
    }

    /// `true` iff every pair of distinct vertices in `set` is adjacent.
    pub fn is_clique(&self, set: &[VertexId]) -> bool {
        set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..]
                .iter()
                .all(|&v| u == v || self.adjacent(u, v))
        })
    }

    pub fn is_clique_by_name<S: AsRef<str>>(&self, set: &[S]) -> Result<bool> {
        let ids = set
            .iter()
            .map(|s| self.vertex(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.is_clique(&ids))
    }
}

impl Inner {
    fn vertex(&self, name: &str) -> Result<VertexId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown vertex '{name}'")))
    }

    fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::input(format!("loop at vertex '{}'", self.names[u.index()])));
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if !self.edges.insert(key) {
            return Err(Error::input(format!(
                "duplicate edge {}-{}",
                self.names[u.index()],
                self.names[v.index()]
            )));
        }
        let n = self.names.len();
        self.adjacency[u.index() * n + v.index()] = true;
        self.adjacency[v.index() * n + u.index()] = true;
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self)
    }
}

/// Prints the graph in the text input format (`vertices:` and `graph:` lines).
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices: {}", self.inner.names.join(", "))?;
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.name(u), self.name(v)))
            .collect();
        write!(f, "\ngraph: {}", edges.join(", "))
    }
}
