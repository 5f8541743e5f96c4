//! Labeled defining graphs, their 2-labeled subgraph, and 2-completions.
//!
//! A [`DefiningGraph`] stores one label per unordered pair of generators.
//! An absent pair stands for `m = ∞` (no relation, no edge); there is no
//! "infinity" token anywhere in the data model.

use std::fmt;

use thiserror::Error;

/// Hard cap on the number of generators; subsets are stored as 64-bit masks.
pub const MAX_GENERATORS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("generator name must be a nonempty token without whitespace or a trailing '-': {0:?}")]
    BadName(String),
    #[error("duplicate generator {0:?}")]
    DuplicateVertex(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("self-loop on generator {0:?}")]
    SelfLoop(String),
    #[error("edge {u}-{v} has label {m}; labels must be at least 2")]
    BadLabel { u: String, v: String, m: i64 },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: String, v: String },
    #[error("at most {MAX_GENERATORS} generators are supported, got {0}")]
    TooManyGenerators(usize),
}

/// Index of a generator in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub(crate) u8);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < MAX_GENERATORS, "generator index {i} out of range");
        GeneratorId(i as u8)
    }
}

/// A subset of generators as a bit mask; iteration follows declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` generators.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(g: GeneratorId) -> Self {
        GenSet(1u64 << g.0)
    }

    pub fn contains(self, g: GeneratorId) -> bool {
        self.0 >> g.0 & 1 == 1
    }

    pub fn insert(&mut self, g: GeneratorId) {
        self.0 |= 1u64 << g.0;
    }

    pub fn with(self, g: GeneratorId) -> Self {
        GenSet(self.0 | 1u64 << g.0)
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Least member under declaration order.
    pub fn first(self) -> Option<GeneratorId> {
        (self.0 != 0).then(|| GeneratorId(self.0.trailing_zeros() as u8))
    }

    pub fn iter(self) -> impl Iterator<Item = GeneratorId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(GeneratorId(i as u8))
        })
    }
}

impl FromIterator<GeneratorId> for GenSet {
    fn from_iter<I: IntoIterator<Item = GeneratorId>>(iter: I) -> Self {
        let mut s = GenSet::EMPTY;
        for g in iter {
            s.insert(g);
        }
        s
    }
}

/// An Artin/Coxeter defining graph with labels `m_uv >= 2`; absent pairs are `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    labels: Vec<Option<u32>>,
}

/// Partition of the generators into connected components of the 2-labeled subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<GenSet>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, g: GeneratorId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(g))
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.ends_with('-') && !name.chars().any(char::is_whitespace)
}

impl DefiningGraph {
    /// Builds a graph from names (declaration order) and `(u, v, m)` edges.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S, i64)]) -> Result<Self, GraphError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_GENERATORS {
            return Err(GraphError::TooManyGenerators(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(GraphError::BadName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(GraphError::DuplicateVertex(n.clone()));
            }
        }
        let n = names.len();
        let mut graph = DefiningGraph { names, labels: vec![None; n * n] };
        for (u, v, m) in edges {
            graph.add_edge(u.as_ref(), v.as_ref(), *m)?;
        }
        Ok(graph)
    }

    fn add_edge(&mut self, u: &str, v: &str, m: i64) -> Result<(), GraphError> {
        let gu = self.require(u)?;
        let gv = self.require(v)?;
        if gu == gv {
            return Err(GraphError::SelfLoop(u.to_string()));
        }
        if m < 2 || m > u32::MAX as i64 {
            return Err(GraphError::BadLabel { u: u.to_string(), v: v.to_string(), m });
        }
        if self.label(gu, gv).is_some() {
            return Err(GraphError::DuplicateEdge { u: u.to_string(), v: v.to_string() });
        }
        let n = self.names.len();
        self.labels[gu.index() * n + gv.index()] = Some(m as u32);
        self.labels[gv.index() * n + gu.index()] = Some(m as u32);
        Ok(())
    }

    fn require(&self, name: &str) -> Result<GeneratorId, GraphError> {
        self.generator(name).ok_or_else(|| GraphError::UnknownGenerator(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        &self.names[g.index()]
    }

    pub fn generator(&self, name: &str) -> Option<GeneratorId> {
        self.names.iter().position(|n| n == name).map(GeneratorId::from_index)
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        (0..self.names.len()).map(GeneratorId::from_index)
    }

    pub fn vertex_set(&self) -> GenSet {
        GenSet::full(self.names.len())
    }

    /// Label of the pair, `None` meaning `∞` (and also used for `u == v`).
    pub fn label(&self, u: GeneratorId, v: GeneratorId) -> Option<u32> {
        self.labels[u.index() * self.names.len() + v.index()]
    }

    pub fn commute(&self, u: GeneratorId, v: GeneratorId) -> bool {
        self.label(u, v) == Some(2)
    }

    /// Edges `(u, v, m)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> Vec<(GeneratorId, GeneratorId, u32)> {
        let mut out = Vec::new();
        for u in self.generators() {
            for v in self.generators().filter(|v| *v > u) {
                if let Some(m) = self.label(u, v) {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: GeneratorId) -> GenSet {
        self.generators().filter(|&v| self.label(u, v).is_some()).collect()
    }

    /// Resolves generator names into a subset.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<GenSet, GraphError> {
        names.iter().map(|n| self.require(n.as_ref())).collect()
    }

    /// Formats a subset as `{a,b,c}` in declaration order.
    pub fn format_set(&self, s: GenSet) -> String {
        let inner: Vec<&str> = s.iter().map(|g| self.name(g)).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub fn set_names(&self, s: GenSet) -> Vec<String> {
        s.iter().map(|g| self.name(g).to_string()).collect()
    }

    /// Full subgraph on `t`, keeping the relative declaration order.
    pub fn full_subgraph(&self, t: GenSet) -> DefiningGraph {
        let keep: Vec<GeneratorId> = t.iter().filter(|g| g.index() < self.len()).collect();
        let n = keep.len();
        let mut labels = vec![None; n * n];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                labels[i * n + j] = self.label(u, v);
            }
        }
        DefiningGraph { names: keep.iter().map(|&g| self.name(g).to_string()).collect(), labels }
    }

    /// Subgraph keeping every vertex and exactly the edges labeled 2.
    pub fn hat(&self) -> DefiningGraph {
        let labels = self.labels.iter().map(|m| m.filter(|&m| m == 2)).collect();
        DefiningGraph { names: self.names.clone(), labels }
    }

    /// Connected components of the 2-labeled subgraph, ordered by least member.
    pub fn hat_components(&self) -> ComponentPartition {
        let mut seen = GenSet::EMPTY;
        let mut blocks = Vec::new();
        for g in self.generators() {
            if !seen.contains(g) {
                let block = self.two_completion_of_vertex(g);
                seen = seen.union(block);
                blocks.push(block);
            }
        }
        ComponentPartition { blocks }
    }

    /// All vertices reachable from `v` along 2-labeled edges, `v` included.
    pub fn two_completion_of_vertex(&self, v: GeneratorId) -> GenSet {
        let mut comp = GenSet::singleton(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in self.generators() {
                if !comp.contains(w) && self.commute(u, w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        comp
    }

    pub fn is_two_complete(&self, t: GenSet) -> bool {
        self.canonical_two_completion(t) == t
    }

    /// Smallest union of 2-components containing `t`.
    pub fn canonical_two_completion(&self, t: GenSet) -> GenSet {
        self.hat_components()
            .blocks
            .into_iter()
            .filter(|b| !b.intersection(t).is_empty())
            .fold(GenSet::EMPTY, GenSet::union)
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_set(self.vertex_set()))?;
        for (u, v, m) in self.edges() {
            write!(f, " {}-{}:{}", self.name(u), self.name(v), m)?;
        }
        Ok(())
    }
}

/// Graph of the worked example with three 2-components `{a,b,c}`, `{d,e}`, `{f}`.
pub fn example_three_blocks() -> DefiningGraph {
    DefiningGraph::new(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("a", "b", 2),
            ("a", "c", 7),
            ("b", "c", 2),
            ("b", "d", 5),
            ("c", "e", 6),
            ("d", "e", 2),
            ("d", "f", 3),
            ("e", "f", 9),
        ],
    )
    .expect("static example graph is valid")
}
