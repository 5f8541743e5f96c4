//! The fundamental domain `K` and finite word-length balls of the 2-complete
//! Artin complex, plus hand-built complexes for testing the cycle machinery.
//!
//! A coset vertex `g A_{Γ∖T}` is identified by its type `Γ∖T` and the
//! shortlex-least word of the coset. A chamber is a group element `p` and
//! spans one vertex per block: `p A_{Γ∖T_i}`.

mod cycles;
mod export;
mod iso;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{DefiningGraph, GenSet};
use crate::words::{Letter, OracleError, OracleMode, Word, WordOracle};

pub use cycles::{
    classify_cycle, find_full_cycles_up_to, find_induced_cycles, locally_6_large_check, systole_certificate,
    CycleReport, Fullness,
};
pub use export::{ComplexDocument, SimplexEntry, VertexEntry};
pub use iso::typed_isomorphic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("degenerate fundamental domain: the 2-labeled subgraph has {blocks} component(s); at least two are needed for the complex to have edges")]
    DegenerateDomain { blocks: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("simplex {0:?} is not present in the complex")]
    AbsentSimplex(Vec<usize>),
    #[error("invalid complex: {0}")]
    Invalid(String),
}

/// The simplex `K`: one vertex per block `T`, of type `Γ∖T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub blocks: Vec<GenSet>,
    pub vertex_types: Vec<GenSet>,
    all: GenSet,
}

impl FundamentalDomain {
    pub fn dimension(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Local group of the face spanned by the given vertices: the intersection of their types.
    pub fn face_local_group(&self, face: &[usize]) -> GenSet {
        face.iter().fold(self.all, |acc, &i| acc.intersection(self.vertex_types[i]))
    }

    /// Every nonempty face with its local group, smaller faces first.
    pub fn faces(&self) -> Vec<(Vec<usize>, GenSet)> {
        let n = self.blocks.len();
        let mut out: Vec<(Vec<usize>, GenSet)> = (1u64..(1 << n))
            .map(|mask| {
                let face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let group = self.face_local_group(&face);
                (face, group)
            })
            .collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }
}

pub fn fundamental_domain(g: &DefiningGraph) -> Result<FundamentalDomain, ComplexError> {
    let blocks = g.hat_components().blocks;
    if blocks.len() < 2 {
        return Err(ComplexError::DegenerateDomain { blocks: blocks.len() });
    }
    if blocks.len() > 20 {
        return Err(ComplexError::Invalid(format!("{} blocks is beyond the supported 20", blocks.len())));
    }
    let all = g.vertex_set();
    let vertex_types = blocks.iter().map(|&b| all.difference(b)).collect();
    Ok(FundamentalDomain { blocks, vertex_types, all })
}

/// Coset `rep · A_ty`, with `rep` the shortlex-least element of the coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetVertex {
    pub ty: GenSet,
    pub rep: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    /// Type class used for colouring and typed isomorphism (the block index for coset vertices).
    pub kind: Option<usize>,
    pub coset: Option<CosetVertex>,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub element: Option<Word>,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
}

/// Exact incidence oracle shared by a developed ball and its links.
#[derive(Debug, Clone)]
struct Context {
    oracle: Arc<WordOracle>,
    /// Cosets every simplex of the complex is joined to (empty for a ball, the linked simplex for a link).
    base: Vec<(Word, GenSet)>,
}

#[derive(Debug, Clone)]
pub struct DevelopedComplex {
    vertices: Vec<Vertex>,
    chambers: Vec<Chamber>,
    simplices: HashSet<Vec<usize>>,
    adjacency: Vec<BTreeSet<usize>>,
    radius: Option<usize>,
    kind_names: Vec<String>,
    context: Option<Context>,
}

fn faces_of(chamber: &[usize], out: &mut HashSet<Vec<usize>>) {
    let n = chamber.len();
    for mask in 1u64..(1 << n) {
        out.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| chamber[i]).collect());
    }
}

impl DevelopedComplex {
    fn assemble(
        vertices: Vec<Vertex>,
        chambers: Vec<Chamber>,
        radius: Option<usize>,
        kind_names: Vec<String>,
        context: Option<Context>,
    ) -> Self {
        let mut simplices = HashSet::new();
        let mut adjacency = vec![BTreeSet::new(); vertices.len()];
        for c in &chambers {
            faces_of(&c.vertices, &mut simplices);
            for (i, &u) in c.vertices.iter().enumerate() {
                for &w in &c.vertices[i + 1..] {
                    adjacency[u].insert(w);
                    adjacency[w].insert(u);
                }
            }
        }
        DevelopedComplex { vertices, chambers, simplices, adjacency, radius, kind_names, context }
    }

    /// A complex given by its maximal simplices. Every vertex is marked interior.
    pub fn from_chambers<S: AsRef<str>>(labels: &[S], chambers: &[Vec<usize>]) -> Result<Self, ComplexError> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in labels {
            if !seen.insert(l.as_ref()) {
                return Err(ComplexError::Invalid(format!("duplicate vertex label {:?}", l.as_ref())));
            }
        }
        let mut cs = Vec::new();
        for c in chambers {
            let mut v = c.clone();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() || v.len() != c.len() || v.iter().any(|&i| i >= n) {
                return Err(ComplexError::Invalid(format!("bad simplex {c:?}")));
            }
            if v.len() > 20 {
                return Err(ComplexError::Invalid("simplices of more than 20 vertices are not supported".into()));
            }
            cs.push(Chamber { element: None, vertices: v });
        }
        let vertices = labels
            .iter()
            .map(|l| Vertex { label: l.as_ref().to_string(), kind: None, coset: None, interior: true })
            .collect();
        Ok(Self::assemble(vertices, cs, None, Vec::new(), None))
    }

    pub fn set_interior(&mut self, v: usize, interior: bool) {
        self.vertices[v].interior = interior;
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    /// Display names of the vertex kinds, indexed by [`Vertex::kind`].
    pub fn kind_names(&self) -> &[String] {
        &self.kind_names
    }

    pub fn oracle(&self) -> Option<&WordOracle> {
        self.context.as_ref().map(|c| c.oracle.as_ref())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adjacency[u].contains(&w)
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        let mut v = s.to_vec();
        v.sort_unstable();
        self.simplices.contains(&v)
    }

    /// All simplices, sorted by dimension and then lexicographically.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.simplices.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertices.len())
            .flat_map(|u| self.adjacency[u].range(u + 1..).map(move |&w| (u, w)))
            .collect()
    }

    /// Dimension of the largest chamber; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.chambers.iter().map(|c| c.vertices.len() - 1).max()
    }

    /// Type of a simplex of a coset complex: the intersection of its vertices' types.
    pub fn simplex_type(&self, s: &[usize]) -> Option<GenSet> {
        let mut acc: Option<GenSet> = None;
        for &v in s {
            let ty = self.vertices[v].coset.as_ref()?.ty;
            acc = Some(acc.map_or(ty, |a| a.intersection(ty)));
        }
        acc
    }

    pub fn vertex_index(&self, ty: GenSet, rep: &Word) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.coset.as_ref().is_some_and(|c| c.ty == ty && &c.rep == rep))
    }

    /// Whether the simplex and all of its vertices are marked interior.
    pub fn is_interior_simplex(&self, s: &[usize]) -> bool {
        s.iter().all(|&v| self.vertices[v].interior)
    }

    /// Exact membership of `extra ∪ base` as a simplex of the full complex, when an oracle is attached.
    fn oracle_meet(&self, extra: &[usize]) -> Option<Option<(Word, GenSet)>> {
        let ctx = self.context.as_ref()?;
        let mut cosets = ctx.base.clone();
        for &v in extra {
            let c = self.vertices[v].coset.as_ref()?;
            cosets.push((c.rep.clone(), c.ty));
        }
        Some(ctx.oracle.coset_meet(&cosets).expect("oracle of a developed complex supports coset meets"))
    }

    /// The link of a present simplex: vertices joined to it and the simplices whose join with it is present.
    pub fn link(&self, s: &[usize]) -> Result<DevelopedComplex, ComplexError> {
        let mut s = s.to_vec();
        s.sort_unstable();
        if s.is_empty() || !self.simplices.contains(&s) {
            return Err(ComplexError::AbsentSimplex(s));
        }
        let in_s: HashSet<usize> = s.iter().copied().collect();
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut chambers = Vec::new();
        for c in &self.chambers {
            if !s.iter().all(|v| c.vertices.binary_search(v).is_ok()) {
                continue;
            }
            let rest: Vec<usize> = c.vertices.iter().copied().filter(|v| !in_s.contains(v)).collect();
            if rest.is_empty() {
                continue;
            }
            let mapped = rest
                .iter()
                .map(|&v| {
                    *index.entry(v).or_insert_with(|| {
                        vertices.push(self.vertices[v].clone());
                        vertices.len() - 1
                    })
                })
                .collect::<Vec<_>>();
            let mut mapped = mapped;
            mapped.sort_unstable();
            chambers.push(Chamber { element: c.element.clone(), vertices: mapped });
        }
        let context = self.context.as_ref().map(|ctx| {
            let mut base = ctx.base.clone();
            for &v in &s {
                let c = self.vertices[v].coset.as_ref().expect("coset complexes have coset vertices");
                base.push((c.rep.clone(), c.ty));
            }
            Context { oracle: Arc::clone(&ctx.oracle), base }
        });
        Ok(Self::assemble(vertices, chambers, self.radius, self.kind_names.clone(), context))
    }

    /// Whether every edge joins vertices of different kinds.
    pub fn is_bipartite_by_type(&self) -> bool {
        self.edges().into_iter().all(|(u, w)| match (self.vertices[u].kind, self.vertices[w].kind) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        })
    }
}

fn vertex_label(g: &DefiningGraph, c: &CosetVertex) -> String {
    let rep = if c.rep.is_empty() { "e".to_string() } else { c.rep.display(g) };
    format!("{rep}|{}", g.format_set(c.ty))
}

/// Ball of word-length radius `radius` around `K`: all chambers whose normal form has at most that length.
pub fn develop_ball(g: &DefiningGraph, mode: OracleMode, radius: usize) -> Result<DevelopedComplex, ComplexError> {
    let domain = fundamental_domain(g)?;
    if mode == OracleMode::Dihedral {
        return Err(OracleError::Unsupported { mode, op: "develop_ball" }.into());
    }
    let oracle = Arc::new(WordOracle::new(g, mode)?);
    let letters: Vec<Letter> = g
        .generators()
        .flat_map(|s| if mode == OracleMode::CoxeterShadow { vec![Letter::pos(s)] } else { vec![Letter::pos(s), Letter::neg(s)] })
        .collect();

    // Normal forms are geodesic, so breadth-first layers are exactly the word-length spheres.
    let mut elements = vec![Word::identity()];
    let mut seen: HashSet<Word> = elements.iter().cloned().collect();
    let mut frontier = elements.clone();
    for _ in 0..radius {
        let mut next: Vec<Word> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                let oracle = &oracle;
                letters.iter().map(move |&l| {
                    let mut x = w.clone();
                    x.push(l);
                    oracle.normal_form(&x).word
                })
            })
            .collect();
        next.sort();
        next.dedup();
        next.retain(|w| !seen.contains(w));
        seen.extend(next.iter().cloned());
        elements.extend(next.iter().cloned());
        frontier = next;
    }

    let reps: Vec<Vec<Word>> = elements
        .par_iter()
        .map(|p| domain.vertex_types.iter().map(|&t| oracle.min_coset_rep(p, t)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;

    let mut index: HashMap<CosetVertex, usize> = HashMap::new();
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut chambers = Vec::with_capacity(elements.len());
    for (p, row) in elements.iter().zip(reps) {
        let mut vs = Vec::with_capacity(row.len());
        for (kind, rep) in row.into_iter().enumerate() {
            let cv = CosetVertex { ty: domain.vertex_types[kind], rep };
            let id = *index.entry(cv.clone()).or_insert_with(|| {
                vertices.push(Vertex { label: vertex_label(g, &cv), kind: Some(kind), coset: Some(cv), interior: false });
                vertices.len() - 1
            });
            vs.push(id);
        }
        vs.sort_unstable();
        chambers.push(Chamber { element: Some(p.clone()), vertices: vs });
    }

    // Interior: the representative chamber and its neighbours across every local generator are present.
    for v in &mut vertices {
        let c = v.coset.as_ref().expect("developed vertices are cosets");
        v.interior = seen.contains(&c.rep)
            && c.ty.iter().all(|s| {
                [Letter::pos(s), Letter::neg(s)].into_iter().all(|l| {
                    let mut x = c.rep.clone();
                    x.push(l);
                    seen.contains(&oracle.normal_form(&x).word)
                })
            });
    }

    let kind_names = domain.vertex_types.iter().map(|&t| g.format_set(t)).collect();
    let context = Context { oracle, base: Vec::new() };
    Ok(DevelopedComplex::assemble(vertices, chambers, Some(radius), kind_names, Some(context)))
}

/// Whether the 1-skeleton is connected; the empty complex counts as connected.
pub fn connectivity_check(x: &DevelopedComplex) -> bool {
    let n = x.num_vertices();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &w in x.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n
}
