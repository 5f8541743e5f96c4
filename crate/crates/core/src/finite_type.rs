//! Finite-type detection for generator subsets.
//!
//! The verdict comes from the classification of connected Coxeter diagrams
//! (integer arithmetic only). [`is_positive_definite`] on the Gram matrix is
//! an independent numerical check; the two must agree.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DefiningGraph, GenSet, GeneratorId};

/// Eigenvalue threshold for the positive-definiteness oracle.
pub const GRAM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteTypeError {
    #[error("the Gram matrix of the empty subset is undefined")]
    EmptySubset,
}

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(u32),
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleType::A(n) => write!(f, "A{n}"),
            IrreducibleType::B(n) => write!(f, "B{n}"),
            IrreducibleType::D(n) => write!(f, "D{n}"),
            IrreducibleType::E6 => write!(f, "E6"),
            IrreducibleType::E7 => write!(f, "E7"),
            IrreducibleType::E8 => write!(f, "E8"),
            IrreducibleType::F4 => write!(f, "F4"),
            IrreducibleType::G2 => write!(f, "G2"),
            IrreducibleType::H3 => write!(f, "H3"),
            IrreducibleType::H4 => write!(f, "H4"),
            IrreducibleType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl Serialize for IrreducibleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramComponent {
    pub members: GenSet,
    pub kind: IrreducibleType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTypeVerdict {
    pub subset: GenSet,
    pub finite: bool,
    /// Irreducible components ordered by least member; empty when not finite.
    pub decomposition: Vec<DiagramComponent>,
}

impl FiniteTypeVerdict {
    pub fn tags(&self) -> Vec<String> {
        self.decomposition.iter().map(|c| c.kind.to_string()).collect()
    }
}

/// `m` of the Coxeter diagram on a pair: `None` is `∞`.
fn coxeter_label(g: &DefiningGraph, u: GeneratorId, v: GeneratorId) -> Option<u32> {
    g.label(u, v)
}

/// Symmetric matrix with `1` on the diagonal and `-cos(π/m)` off it (`-1` for `∞`).
pub fn gram_matrix(g: &DefiningGraph, t: GenSet) -> Result<DMatrix<f64>, FiniteTypeError> {
    if t.is_empty() {
        return Err(FiniteTypeError::EmptySubset);
    }
    let gens: Vec<GeneratorId> = t.iter().collect();
    let n = gens.len();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else {
            match coxeter_label(g, gens[i], gens[j]) {
                Some(2) => 0.0,
                Some(m) => -(std::f64::consts::PI / m as f64).cos(),
                None => -1.0,
            }
        }
    }))
}

/// Independent oracle: the Gram matrix has all eigenvalues above [`GRAM_TOLERANCE`].
pub fn is_positive_definite(g: &DefiningGraph, t: GenSet) -> bool {
    match gram_matrix(g, t) {
        Err(_) => true,
        Ok(m) => m.symmetric_eigenvalues().iter().all(|&e| e > GRAM_TOLERANCE),
    }
}

/// Classifies the Coxeter diagram on `t`.
pub fn is_finite_type(g: &DefiningGraph, t: GenSet) -> FiniteTypeVerdict {
    let mut decomposition = Vec::new();
    for members in diagram_components(g, t) {
        match classify_connected(g, members) {
            Some(kind) => decomposition.push(DiagramComponent { members, kind }),
            None => return FiniteTypeVerdict { subset: t, finite: false, decomposition: Vec::new() },
        }
    }
    FiniteTypeVerdict { subset: t, finite: true, decomposition }
}

pub fn finite(g: &DefiningGraph, t: GenSet) -> bool {
    is_finite_type(g, t).finite
}

/// Components of the diagram whose edges are pairs with `m ≠ 2` (including `∞`).
fn diagram_components(g: &DefiningGraph, t: GenSet) -> Vec<GenSet> {
    let mut rest = t;
    let mut out = Vec::new();
    while let Some(start) = rest.first() {
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in rest.iter() {
                if !comp.contains(v) && coxeter_label(g, u, v) != Some(2) {
                    comp.insert(v);
                    stack.push(v);
                }
            }
        }
        rest = rest.difference(comp);
        out.push(comp);
    }
    out
}

fn classify_connected(g: &DefiningGraph, c: GenSet) -> Option<IrreducibleType> {
    let gens: Vec<GeneratorId> = c.iter().collect();
    let n = gens.len();
    match n {
        1 => return Some(IrreducibleType::A(1)),
        2 => {
            return match coxeter_label(g, gens[0], gens[1])? {
                3 => Some(IrreducibleType::A(2)),
                4 => Some(IrreducibleType::B(2)),
                6 => Some(IrreducibleType::G2),
                m => Some(IrreducibleType::I2(m)),
            }
        }
        _ => {}
    }
    // Diagram edges with their labels; any ∞ or label >= 6 is fatal in rank >= 3.
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    for i in 0..n {
        for j in i + 1..n {
            match coxeter_label(g, gens[i], gens[j]) {
                Some(2) => {}
                None => return None,
                Some(m) if m >= 6 => return None,
                Some(m) => {
                    adj[i].push((j, m));
                    adj[j].push((i, m));
                    edge_count += 1;
                }
            }
        }
    }
    if edge_count != n - 1 {
        return None;
    }
    let heavy: Vec<u32> = adj.iter().flatten().map(|&(_, m)| m).filter(|&m| m > 3).collect();
    // Each heavy edge is seen twice above.
    if heavy.len() > 2 {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| adj[i].len() >= 3).collect();
    if adj.iter().any(|a| a.len() > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&center) = branch.first() {
        if !heavy.is_empty() {
            return None;
        }
        let mut arms: Vec<usize> = adj[center].iter().map(|&(start, _)| arm_length(&adj, center, start)).collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, _] => Some(IrreducibleType::D(n)),
            [1, 2, 2] => Some(IrreducibleType::E6),
            [1, 2, 3] => Some(IrreducibleType::E7),
            [1, 2, 4] => Some(IrreducibleType::E8),
            _ => None,
        };
    }
    // A path: walk it from one end to read the label sequence.
    let end = (0..n).find(|&i| adj[i].len() == 1)?;
    let mut labels = Vec::with_capacity(n - 1);
    let (mut prev, mut cur) = (usize::MAX, end);
    loop {
        let next = adj[cur].iter().find(|&&(v, _)| v != prev);
        match next {
            Some(&(v, m)) => {
                labels.push(m);
                prev = cur;
                cur = v;
            }
            None => break,
        }
    }
    let heavy_pos: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] > 3).collect();
    match heavy_pos.as_slice() {
        [] => Some(IrreducibleType::A(n)),
        [i] => {
            let at_end = *i == 0 || *i == labels.len() - 1;
            match labels[*i] {
                4 if at_end => Some(IrreducibleType::B(n)),
                4 if n == 4 => Some(IrreducibleType::F4),
                5 if at_end && n == 3 => Some(IrreducibleType::H3),
                5 if at_end && n == 4 => Some(IrreducibleType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Number of vertices on the arm leaving `center` through `start`.
fn arm_length(adj: &[Vec<(usize, u32)>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    while let Some(&(v, _)) = adj[cur].iter().find(|&&(v, _)| v != prev) {
        prev = cur;
        cur = v;
        len += 1;
    }
    len
}

/// A triangle violating local reducibility: finite type but not `2-2-k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWitness {
    pub vertices: [GeneratorId; 3],
    pub labels: [u32; 3],
}

/// `Ok(())` iff every finite-type triangle of `g` has labels `2-2-k`.
pub fn is_locally_reducible(g: &DefiningGraph) -> Result<(), TriangleWitness> {
    for tri in triangles(g) {
        let [a, b, c] = tri;
        let labels = [g.label(a, b).unwrap(), g.label(a, c).unwrap(), g.label(b, c).unwrap()];
        let twos = labels.iter().filter(|&&m| m == 2).count();
        if twos < 2 && finite(g, tri.into_iter().collect()) {
            return Err(TriangleWitness { vertices: tri, labels });
        }
    }
    Ok(())
}

fn triangles(g: &DefiningGraph) -> impl Iterator<Item = [GeneratorId; 3]> + '_ {
    let gens: Vec<GeneratorId> = g.generators().collect();
    let n = gens.len();
    (0..n).flat_map(move |i| {
        let gens = gens.clone();
        (i + 1..n).flat_map(move |j| {
            let gens = gens.clone();
            (j + 1..n).filter_map(move |k| {
                let (a, b, c) = (gens[i], gens[j], gens[k]);
                (g.label(a, b).is_some() && g.label(a, c).is_some() && g.label(b, c).is_some())
                    .then_some([a, b, c])
            })
        })
    })
}

/// An edge `(u, v)` with `m >= 3` spanning a maximal finite-type subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralEdge {
    pub u: GeneratorId,
    pub v: GeneratorId,
    pub m: u32,
    pub completion: GenSet,
    /// Canonical 2-completion is not the whole vertex set.
    pub proper_completion: bool,
}

pub fn maximal_dihedral_edges(g: &DefiningGraph) -> Vec<DihedralEdge> {
    g.edges()
        .into_iter()
        .filter(|&(u, v, m)| {
            m >= 3
                && g.generators()
                    .filter(|&w| w != u && w != v)
                    .all(|w| !finite(g, [u, v, w].into_iter().collect()))
        })
        .map(|(u, v, m)| {
            let completion = g.canonical_two_completion([u, v].into_iter().collect());
            DihedralEdge { u, v, m, completion, proper_completion: completion != g.vertex_set() }
        })
        .collect()
}

/// Finite-type cliques of size at least `min_size`, in lexicographic order of members.
pub fn finite_type_cliques(g: &DefiningGraph, min_size: usize) -> Vec<GenSet> {
    let mut out = Vec::new();
    let gens: Vec<GeneratorId> = g.generators().collect();
    // Finite type is closed under subsets, so the search only extends finite cliques.
    fn extend(
        g: &DefiningGraph,
        gens: &[GeneratorId],
        from: usize,
        current: GenSet,
        min_size: usize,
        out: &mut Vec<GenSet>,
    ) {
        for i in from..gens.len() {
            let v = gens[i];
            if !current.iter().all(|u| g.label(u, v).is_some()) {
                continue;
            }
            let next = current.with(v);
            if !finite(g, next) {
                continue;
            }
            if next.len() >= min_size {
                out.push(next);
            }
            extend(g, gens, i + 1, next, min_size, out);
        }
    }
    extend(g, &gens, 0, GenSet::EMPTY, min_size.max(1), &mut out);
    out.sort_by_key(|s| s.iter().map(|g| g.index()).collect::<Vec<_>>());
    out
}
