//! Brute-force oracles shared by the integration tests. None of them call into
//! the library's normal forms, classification, or isomorphism code.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::path::PathBuf;

use artinlab::complex::DevelopedComplex;
use artinlab::words::Letter;
use artinlab::{DefiningGraph, GenSet, GeneratorId, Word};

/// Letter code: `2 * generator + (1 if inverse)`.
pub type Code = Vec<u8>;

pub fn graph_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../graphs").join(name)
}

pub fn load(name: &str) -> DefiningGraph {
    let text = std::fs::read_to_string(graph_file(name)).unwrap();
    artinlab::io::parse_graph_document(&text).unwrap()
}

pub fn graph(names: &[&str], edges: &[(&str, &str, i64)]) -> DefiningGraph {
    DefiningGraph::new(names, edges).unwrap()
}

pub fn set(g: &DefiningGraph, names: &[&str]) -> GenSet {
    g.subset(names).unwrap()
}

pub fn to_word(code: &[u8]) -> Word {
    let mut w = Word::identity();
    for &c in code {
        let s = GeneratorId::from_index((c / 2) as usize);
        w.push(if c % 2 == 0 { Letter::pos(s) } else { Letter::neg(s) });
    }
    w
}

pub fn invert(code: &[u8]) -> Code {
    code.iter().rev().map(|c| c ^ 1).collect()
}

pub fn free_reduce(code: &[u8]) -> Code {
    let mut out: Code = Vec::with_capacity(code.len());
    for &c in code {
        if out.last() == Some(&(c ^ 1)) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

/// All words over `letters` of length at most `max_len`, shortest first.
pub fn all_words(letters: &[u8], max_len: usize) -> Vec<Code> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Freely reduced words over `letters` (closed under inversion) of length at most `max_len`.
pub fn reduced_words(letters: &[u8], max_len: usize) -> Vec<Code> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Code> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in letters {
                if w.last() != Some(&(l ^ 1)) {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn letters_of(gens: impl IntoIterator<Item = usize>) -> Vec<u8> {
    gens.into_iter().flat_map(|i| [2 * i as u8, 2 * i as u8 + 1]).collect()
}

#[derive(Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Equality of freely reduced words of bounded length, generated by substituting
/// pieces of cyclic relators: if `u v` is a cyclic conjugate of `r^{±1}`, then `u = v⁻¹`.
/// Only merges words that are equal in the group; completeness depends on the bound.
pub struct RewritingOracle {
    pub words: Vec<Code>,
    pub index: HashMap<Code, usize>,
    pub classes: UnionFind,
    pub max_len: usize,
}

impl RewritingOracle {
    pub fn new(num_gens: usize, relators: &[Code], max_len: usize) -> Self {
        let mut rules: HashMap<u8, Vec<(Code, Code)>> = HashMap::new();
        let mut seen = HashSet::new();
        for r in relators {
            for base in [r.clone(), invert(r)] {
                let k = base.len();
                for rot in 0..k {
                    let cyc: Code = base[rot..].iter().chain(&base[..rot]).copied().collect();
                    for split in 1..=k {
                        let (u, v) = cyc.split_at(split);
                        let rule = (u.to_vec(), invert(v));
                        if seen.insert(rule.clone()) {
                            rules.entry(u[0]).or_default().push(rule);
                        }
                    }
                }
            }
        }
        let words = reduced_words(&letters_of(0..num_gens), max_len);
        let index: HashMap<Code, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut classes = UnionFind::new(words.len());
        for (i, w) in words.iter().enumerate() {
            for p in 0..w.len() {
                let Some(rs) = rules.get(&w[p]) else { continue };
                for (u, repl) in rs {
                    if w[p..].starts_with(u) {
                        let mut x = w[..p].to_vec();
                        x.extend_from_slice(repl);
                        x.extend_from_slice(&w[p + u.len()..]);
                        let x = free_reduce(&x);
                        if let Some(&j) = index.get(&x) {
                            classes.union(i, j);
                        }
                    }
                }
            }
        }
        RewritingOracle { words, index, classes, max_len }
    }

    /// Class of the free reduction of `w`, if it fits in the table.
    pub fn class(&mut self, w: &[u8]) -> Option<usize> {
        let r = free_reduce(w);
        let i = *self.index.get(&r)?;
        Some(self.classes.find(i))
    }
}

pub fn commutator(s: usize, t: usize) -> Code {
    let (a, b) = (2 * s as u8, 2 * t as u8);
    vec![a, b, a ^ 1, b ^ 1]
}

/// `prod(a, b; m) = prod(b, a; m)` as a relator.
pub fn braid_relator(s: usize, t: usize, m: usize) -> Code {
    let (a, b) = (2 * s as u8, 2 * t as u8);
    let alt = |x: u8, y: u8| (0..m).map(move |i| if i % 2 == 0 { x } else { y });
    let lhs: Code = alt(a, b).collect();
    let rhs: Code = alt(b, a).collect();
    lhs.into_iter().chain(invert(&rhs)).collect()
}

pub fn raag_relators(g: &DefiningGraph) -> Vec<Code> {
    g.edges().into_iter().map(|(u, v, _)| commutator(u.index(), v.index())).collect()
}

/// Least word (shortest, then lexicographic on codes) reachable by commuting
/// adjacent letters and cancelling adjacent inverse pairs. In a right-angled
/// Artin group these moves reach every geodesic, so this is a normal form.
pub fn raag_closure_form(g: &DefiningGraph, w: &[u8]) -> Code {
    let commute = |x: u8, y: u8| {
        let (s, t) = (GeneratorId::from_index((x / 2) as usize), GeneratorId::from_index((y / 2) as usize));
        s != t && g.commute(s, t)
    };
    let start = free_reduce(w);
    let mut seen: HashSet<Code> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut best: Option<Code> = None;
    while let Some(x) = queue.pop_front() {
        if best.as_ref().is_none_or(|b| (x.len(), &x) < (b.len(), b)) {
            best = Some(x.clone());
        }
        for i in 0..x.len().saturating_sub(1) {
            let mut y = None;
            if x[i] == x[i + 1] ^ 1 {
                let mut z = x.clone();
                z.drain(i..i + 2);
                y = Some(z);
            } else if commute(x[i], x[i + 1]) {
                let mut z = x.clone();
                z.swap(i, i + 1);
                y = Some(z);
            }
            if let Some(z) = y {
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
    }
    best.unwrap()
}

/// Gram matrix `-cos(π/m)` by hand, tested for positive definiteness by Cholesky.
pub fn gram_positive_definite(g: &DefiningGraph, t: GenSet, tol: f64) -> bool {
    let gens: Vec<GeneratorId> = t.iter().collect();
    let n = gens.len();
    let entry = |i: usize, j: usize| -> f64 {
        if i == j {
            return 1.0;
        }
        match g.label(gens[i], gens[j]) {
            None => -1.0,
            Some(m) => -(std::f64::consts::PI / m as f64).cos(),
        }
    };
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = entry(i, i) - s;
                if d <= tol {
                    return false;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (entry(i, j) - s) / l[j][j];
            }
        }
    }
    true
}

/// Components of the 2-labeled subgraph by depth-first search, as name sets.
pub fn two_components(g: &DefiningGraph) -> Vec<BTreeSet<String>> {
    let n = g.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = BTreeSet::new();
        let mut stack = vec![s];
        comp[s] = id;
        while let Some(u) = stack.pop() {
            members.insert(g.names()[u].clone());
            for v in 0..n {
                let lab = g.label(GeneratorId::from_index(u), GeneratorId::from_index(v));
                if u != v && lab == Some(2) && comp[v] == usize::MAX {
                    comp[v] = id;
                    stack.push(v);
                }
            }
        }
        out.push(members);
    }
    out
}

/// Backtracking search for a bijection of vertices preserving the given kinds
/// and mapping the chamber set onto the chamber set.
pub fn brute_force_isomorphic(
    a: &DevelopedComplex,
    kind_a: &dyn Fn(usize) -> String,
    b: &DevelopedComplex,
    kind_b: &dyn Fn(usize) -> String,
) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.chambers().len() != b.chambers().len() {
        return false;
    }
    let adj = |x: &DevelopedComplex| -> Vec<HashSet<usize>> {
        (0..x.num_vertices()).map(|v| x.neighbors(v).iter().copied().collect()).collect()
    };
    let (adj_a, adj_b) = (adj(a), adj(b));
    let chamber_count = |x: &DevelopedComplex| {
        let mut c = vec![0usize; x.num_vertices()];
        for ch in x.chambers() {
            for &v in &ch.vertices {
                c[v] += 1;
            }
        }
        c
    };
    let (ca, cb) = (chamber_count(a), chamber_count(b));
    let sig_a: Vec<(String, usize, usize)> = (0..n).map(|v| (kind_a(v), adj_a[v].len(), ca[v])).collect();
    let sig_b: Vec<(String, usize, usize)> = (0..n).map(|v| (kind_b(v), adj_b[v].len(), cb[v])).collect();

    // Breadth-first order so each vertex after the first of its component has a mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            let mut ns: Vec<usize> = adj_a[u].iter().copied().collect();
            ns.sort_unstable();
            for w in ns {
                if !placed[w] {
                    placed[w] = true;
                    q.push_back(w);
                }
            }
        }
    }

    let chambers_b: HashSet<Vec<usize>> = b.chambers().iter().map(|c| c.vertices.clone()).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: usize,
        order: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        adj_a: &[HashSet<usize>],
        adj_b: &[HashSet<usize>],
        sig_a: &[(String, usize, usize)],
        sig_b: &[(String, usize, usize)],
        finish: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if k == order.len() {
            return finish(map);
        }
        let u = order[k];
        let anchor = adj_a[u].iter().copied().find(|&w| map[w] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(w) => {
                let mut c: Vec<usize> = adj_b[map[w]].iter().copied().collect();
                c.sort_unstable();
                c
            }
            None => (0..map.len()).collect(),
        };
        for c in candidates {
            if used[c] || sig_a[u] != sig_b[c] {
                continue;
            }
            let consistent = adj_a[u].iter().all(|&w| map[w] == usize::MAX || adj_b[c].contains(&map[w]));
            if !consistent {
                continue;
            }
            map[u] = c;
            used[c] = true;
            if extend(k + 1, order, map, used, adj_a, adj_b, sig_a, sig_b, finish) {
                return true;
            }
            map[u] = usize::MAX;
            used[c] = false;
        }
        false
    }

    let finish = |m: &[usize]| {
        a.chambers().iter().all(|c| {
            let mut img: Vec<usize> = c.vertices.iter().map(|&v| m[v]).collect();
            img.sort_unstable();
            chambers_b.contains(&img)
        })
    };
    extend(0, &order, &mut map, &mut used, &adj_a, &adj_b, &sig_a, &sig_b, &finish)
}
