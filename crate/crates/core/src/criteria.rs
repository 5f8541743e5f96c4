//! Criterion-level analyzers over defining graphs and developed complexes.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{develop_ball, systole_certificate, ComplexError};
use crate::finite_type::{finite_type_cliques, is_locally_reducible, maximal_dihedral_edges};
use crate::graph::{DefiningGraph, GenSet, GeneratorId};
use crate::report::{CertificateReport, Verdict, Witness};
use crate::words::{Letter, OracleError, OracleMode, Word, WordOracle};

/// Cross-component link distances below this fail the angle check.
pub const TWO_PI_OVER_THREE: f64 = 2.0 * PI / 3.0;
pub const ANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{0} is not a component of the 2-labeled subgraph")]
    NotABlock(String),
    #[error("the two blocks must be distinct")]
    SameBlock,
}

fn require_raag(mode: OracleMode, op: &'static str) -> Result<(), OracleError> {
    if mode == OracleMode::Raag {
        Ok(())
    } else {
        Err(OracleError::Unsupported { mode, op })
    }
}

fn require_block(g: &DefiningGraph, b: GenSet) -> Result<(), CriteriaError> {
    if g.hat_components().blocks.contains(&b) {
        Ok(())
    } else {
        Err(CriteriaError::NotABlock(g.format_set(b)))
    }
}

/// Moussong length of a link edge: `π − π/m`.
pub fn moussong_length(m: u32) -> f64 {
    PI - PI / m as f64
}

/// Shortest-path distances in the metric link graph (one vertex per generator).
pub fn link_distances(g: &DefiningGraph) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, m) in g.edges() {
        d[u.index()][v.index()] = moussong_length(m);
        d[v.index()][u.index()] = moussong_length(m);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn angle_link_check(g: &DefiningGraph) -> CertificateReport {
    let parts = g.hat_components();
    if parts.len() < 2 {
        return CertificateReport::new("angle-link", Verdict::NotApplicable)
            .note("the 2-labeled subgraph has a single component");
    }
    let d = link_distances(g);
    let mut best: Option<(GeneratorId, GeneratorId, f64)> = None;
    for t in g.generators() {
        for u in g.generators().filter(|&u| u > t) {
            if parts.block_of(t) != parts.block_of(u) {
                let x = d[t.index()][u.index()];
                if best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((t, u, x));
                }
            }
        }
    }
    let (t, u, min) = best.expect("two blocks give a cross pair");
    let verdict = if min >= TWO_PI_OVER_THREE - ANGLE_TOLERANCE { Verdict::Pass } else { Verdict::Fail };
    let finite = min.is_finite().then_some(min);
    CertificateReport::new("angle-link", verdict)
        .param("threshold_radians", TWO_PI_OVER_THREE)
        .param("tolerance", ANGLE_TOLERANCE)
        .param("minimum_radians", finite)
        .witness(Witness::Distance { u: g.name(t).into(), v: g.name(u).into(), radians: finite })
        .note(if finite.is_none() { "no path joins distinct components; the minimum distance is infinite" } else { "minimum over all cross-component pairs" })
}

pub fn prop_cliques_check(g: &DefiningGraph) -> CertificateReport {
    if let Err(w) = is_locally_reducible(g) {
        return CertificateReport::new("finite-type-cliques", Verdict::NotApplicable).witness(Witness::Triangle {
            vertices: w.vertices.iter().map(|&v| g.name(v).to_string()).collect(),
            labels: w.labels.to_vec(),
        });
    }
    let parts = g.hat_components();
    let cliques = finite_type_cliques(g, 3);
    let bad = cliques.iter().find(|c| !parts.blocks.iter().any(|b| c.is_subset(*b)));
    let report = CertificateReport::new("finite-type-cliques", if bad.is_some() { Verdict::Fail } else { Verdict::Pass })
        .param("cliques_checked", cliques.len());
    match bad {
        Some(c) => report.witness(Witness::Subset { role: "clique spanning several blocks".into(), members: g.set_names(*c) }),
        None => report.witness(Witness::Statement {
            text: format!("all {} finite-type cliques of size >= 3 lie in one block", cliques.len()),
        }),
    }
}

/// Elements of `A_t` with normal-form length at most `max_len`, shortlex ordered.
pub fn parabolic_ball(oracle: &WordOracle, t: GenSet, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = t.iter().flat_map(|s| [Letter::pos(s), Letter::neg(s)]).collect();
    let mut all = vec![Word::identity()];
    let mut seen: std::collections::HashSet<Word> = all.iter().cloned().collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next: Vec<Word> = frontier
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut x = w.clone();
                    x.push(l);
                    x
                })
            })
            .map(|x| oracle.normal_form(&x).word)
            .filter(|x| !seen.contains(x))
            .collect();
        next.sort();
        next.dedup();
        seen.extend(next.iter().cloned());
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn show(g: &DefiningGraph, w: &Word) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.display(g)
    }
}

/// Searches for `t1 u1 = u2 t2` with `t_i ∈ A_T`, `u_i ∈ A_U` nontrivial of length at most `max_len`.
pub fn lemma_product_check(
    g: &DefiningGraph,
    t_block: GenSet,
    u_block: GenSet,
    mode: OracleMode,
    max_len: usize,
) -> Result<CertificateReport, CriteriaError> {
    lemma_product_search(g, t_block, u_block, mode, max_len, false)
}

/// As [`lemma_product_check`]; `include_identity` admits trivial factors.
pub fn lemma_product_search(
    g: &DefiningGraph,
    t_block: GenSet,
    u_block: GenSet,
    mode: OracleMode,
    max_len: usize,
    include_identity: bool,
) -> Result<CertificateReport, CriteriaError> {
    require_raag(mode, "lemma_product_check")?;
    require_block(g, t_block)?;
    require_block(g, u_block)?;
    if t_block == u_block {
        return Err(CriteriaError::SameBlock);
    }
    let oracle = WordOracle::new(g, mode)?;
    let skip = usize::from(!include_identity);
    let ts = parabolic_ball(&oracle, t_block, max_len);
    let us = parabolic_ball(&oracle, u_block, max_len);
    let (ts, us) = (&ts[skip..], &us[skip..]);
    let products: HashMap<Word, (usize, usize)> = ts
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            let oracle = &oracle;
            us.iter().enumerate().map(move |(j, u)| (oracle.normal_form(&t.concat(u)).word, (i, j)))
        })
        .collect();
    let hit = us.par_iter().enumerate().find_map_first(|(j2, u)| {
        ts.iter()
            .enumerate()
            .find_map(|(i2, t)| products.get(&oracle.normal_form(&u.concat(t)).word).map(|&(i1, j1)| (i1, j1, j2, i2)))
    });
    let report = CertificateReport::new("lemma-product", if hit.is_some() { Verdict::Fail } else { Verdict::Pass })
        .param("t_block", g.set_names(t_block))
        .param("u_block", g.set_names(u_block))
        .param("max_len", max_len)
        .param("include_identity", include_identity)
        .param("t_elements", ts.len())
        .param("u_elements", us.len());
    Ok(match hit {
        Some((i1, j1, j2, i2)) => report.witness(Witness::Words {
            role: "t1 u1 = u2 t2".into(),
            words: [&ts[i1], &us[j1], &us[j2], &ts[i2]].iter().map(|w| show(g, w)).collect(),
        }),
        None => report.witness(Witness::Statement {
            text: format!(
                "no equality among {} x {} products on each side (bounded check)",
                ts.len(),
                us.len()
            ),
        }),
    })
}

/// Two-block graphs: the developed ball is a bipartite graph with no full 4-cycle.
pub fn no_full_4cycle_check(g: &DefiningGraph, mode: OracleMode, radius: usize) -> Result<CertificateReport, CriteriaError> {
    let blocks = g.hat_components().len();
    if blocks != 2 {
        return Ok(CertificateReport::new("no-full-4-cycle", Verdict::NotApplicable)
            .param("blocks", blocks)
            .note("requires exactly two components of the 2-labeled subgraph"));
    }
    require_raag(mode, "no_full_4cycle_check")?;
    let x = develop_ball(g, mode, radius)?;
    let dim = x.dimension().unwrap_or(0);
    let bipartite = x.is_bipartite_by_type();
    let base = CertificateReport::new("no-full-4-cycle", Verdict::Pass)
        .param("radius", radius)
        .param("dimension", dim)
        .param("bipartite_by_type", bipartite)
        .param("vertices", x.num_vertices())
        .param("chambers", x.chambers().len());
    if dim != 1 || !bipartite {
        let mut r = base.witness(Witness::Statement {
            text: format!("complex has dimension {dim} and bipartite_by_type = {bipartite}"),
        });
        r.verdict = Verdict::Fail;
        return Ok(r);
    }
    let sys = systole_certificate(&x, 5);
    let mut r = base.param("cycles_examined", sys.parameters["induced_cycles_examined"].clone());
    r.verdict = sys.verdict;
    r.witnesses = sys.witnesses;
    Ok(r)
}

/// Checks `g h g⁻¹ ∉ A_{Γ∖V}` for every nontrivial `h ∈ A_{Γ∖V}` up to length `max_len`, with `g` the product of `V`.
pub fn weak_malnormality_witness(
    g: &DefiningGraph,
    v_block: GenSet,
    mode: OracleMode,
    max_len: usize,
) -> Result<CertificateReport, CriteriaError> {
    if g.hat_components().len() < 2 {
        return Ok(CertificateReport::new("weak-malnormality", Verdict::NotApplicable)
            .note("the 2-labeled subgraph has a single component"));
    }
    require_raag(mode, "weak_malnormality_witness")?;
    require_block(g, v_block)?;
    let oracle = WordOracle::new(g, mode)?;
    let rest = g.vertex_set().difference(v_block);
    let conj = Word::product_of(v_block.iter());
    let hs = parabolic_ball(&oracle, rest, max_len);
    let hs = &hs[1..];
    let bad = hs.par_iter().find_first(|h| {
        let c = conj.concat(h).concat(&conj.inverse());
        oracle.in_standard_parabolic(&c, rest).expect("RAAG mode decides membership")
    });
    let report = CertificateReport::new("weak-malnormality", if bad.is_some() { Verdict::Fail } else { Verdict::Pass })
        .param("v_block", g.set_names(v_block))
        .param("conjugator", show(g, &conj))
        .param("max_len", max_len)
        .param("elements_checked", hs.len())
        .note("bounded check: elements longer than max_len are not examined");
    Ok(match bad {
        Some(h) => report.witness(Witness::Words { role: "h with g h g^-1 in the subgroup".into(), words: vec![show(g, h)] }),
        None => report.witness(Witness::Statement {
            text: format!(
                "no nontrivial h in A_{} of length <= {max_len} has {} h {}^-1 in A_{}",
                g.format_set(rest),
                show(g, &conj),
                show(g, &conj),
                g.format_set(rest)
            ),
        }),
    })
}

pub const MAX_SPLITTING_GENERATORS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Splitting {
    pub gamma1: GenSet,
    pub gamma2: GenSet,
    pub core: GenSet,
}

impl Splitting {
    pub fn swapped(self) -> Splitting {
        Splitting { gamma1: self.gamma2, gamma2: self.gamma1, core: self.core }
    }

    pub fn witness(&self, g: &DefiningGraph) -> Witness {
        Witness::Splitting { gamma1: g.set_names(self.gamma1), gamma2: g.set_names(self.gamma2), core: g.set_names(self.core) }
    }
}

/// Connected components of the full subgraph on `s` (any label counts as an edge).
fn components(g: &DefiningGraph, s: GenSet) -> Vec<GenSet> {
    let mut left = s;
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u).intersection(left).difference(comp).iter() {
                comp.insert(w);
                stack.push(w);
            }
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

/// Every splitting along a separating full subgraph, up to swapping the sides.
///
/// Runs over all vertex subsets, so the cost is exponential in the number of
/// generators; panics above [`MAX_SPLITTING_GENERATORS`].
pub fn enumerate_splittings(g: &DefiningGraph) -> Vec<Splitting> {
    let n = g.len();
    assert!(n <= MAX_SPLITTING_GENERATORS, "splitting enumeration supports at most {MAX_SPLITTING_GENERATORS} generators");
    let all = g.vertex_set();
    let mut cores: Vec<u64> = (0..(1u64 << n)).collect();
    // Smaller cores first, then lexicographic in declaration order.
    cores.sort_by_key(|&c| (c.count_ones(), std::cmp::Reverse(c.reverse_bits())));
    let mut out = Vec::new();
    for c in cores {
        let core = GenSet::from_bits(c);
        let comps = components(g, all.difference(core));
        if comps.len() < 2 {
            continue;
        }
        let k = comps.len() - 1;
        for mask in 0..(1u64 << k) - 1 {
            let mut gamma1 = core.union(comps[0]);
            let mut gamma2 = core;
            for (i, &comp) in comps[1..].iter().enumerate() {
                if mask >> i & 1 == 1 {
                    gamma1 = gamma1.union(comp);
                } else {
                    gamma2 = gamma2.union(comp);
                }
            }
            out.push(Splitting { gamma1, gamma2, core });
        }
    }
    out
}

/// Hypotheses of the amalgam condition for one oriented splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AmalgamHypotheses {
    pub gamma1_locally_reducible: bool,
    pub proper_factors: bool,
    pub core_completion_proper: bool,
    pub gamma1_blocks: usize,
}

impl AmalgamHypotheses {
    pub fn statement_reading(&self) -> bool {
        self.gamma1_locally_reducible && self.proper_factors && self.core_completion_proper
    }

    /// Adds the hypothesis needed to invoke the weak-malnormality argument.
    pub fn proof_chain_reading(&self, core_empty: bool) -> bool {
        self.statement_reading() && (self.gamma1_blocks >= 2 || core_empty)
    }
}

pub fn amalgam_hypotheses(g: &DefiningGraph, s: &Splitting) -> AmalgamHypotheses {
    let sub = g.full_subgraph(s.gamma1);
    let core = sub.subset(&g.set_names(s.core)).expect("core lies in gamma1");
    AmalgamHypotheses {
        gamma1_locally_reducible: is_locally_reducible(&sub).is_ok(),
        proper_factors: s.core != s.gamma1 && s.core != s.gamma2,
        core_completion_proper: sub.canonical_two_completion(core) != sub.vertex_set(),
        gamma1_blocks: sub.hat_components().len(),
    }
}

/// Factors of a join decomposition `Γ = Γ_1 * Γ_2` with every join label 2, if any.
pub fn direct_product_factors(g: &DefiningGraph) -> Option<Vec<GenSet>> {
    if g.len() < 2 {
        return None;
    }
    // Components of the graph joining pairs that are not 2-labeled.
    let mut left = g.vertex_set();
    let mut parts = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in left.difference(comp).iter().filter(|&w| !g.commute(u, w)).collect::<Vec<_>>() {
                comp.insert(w);
                stack.push(w);
            }
        }
        left = left.difference(comp);
        parts.push(comp);
    }
    (parts.len() >= 2).then_some(parts)
}

pub fn acylindricity_report(g: &DefiningGraph) -> CertificateReport {
    let locally_reducible = is_locally_reducible(g).is_ok();
    let edges = maximal_dihedral_edges(g);
    let cond1 = if locally_reducible { edges.iter().find(|e| e.proper_completion) } else { None };
    if cond1.is_some() {
        assert!(g.hat_components().len() >= 2, "a proper 2-completion needs two blocks");
    }
    let cond2 = enumerate_splittings(g)
        .into_iter()
        .flat_map(|s| [s, s.swapped()])
        .map(|s| (s, amalgam_hypotheses(g, &s)))
        .find(|(_, h)| h.statement_reading());
    let obstruction = direct_product_factors(g);

    let verdict = if cond1.is_some() || cond2.is_some() {
        Verdict::Pass
    } else if obstruction.is_some() {
        Verdict::Fail
    } else {
        Verdict::Indeterminate
    };
    let mut r = CertificateReport::new("acylindrical", verdict)
        .param("locally_reducible", locally_reducible)
        .param("condition_1", cond1.is_some())
        .param("condition_2", cond2.is_some())
        .param("direct_product_obstruction", obstruction.is_some());
    if let Some(e) = cond1 {
        r = r.witness(Witness::Edge {
            u: g.name(e.u).into(),
            v: g.name(e.v).into(),
            m: e.m,
            completion: g.set_names(e.completion),
        });
        r = r.note("condition 1: locally reducible with a maximal dihedral edge whose 2-completion is proper");
    }
    if let Some((s, h)) = cond2 {
        r = r
            .witness(s.witness(g))
            .param("condition_2_statement_reading", h.statement_reading())
            .param("condition_2_proof_chain_reading", h.proof_chain_reading(s.core.is_empty()))
            .note("condition 2: amalgam splitting over the core with gamma1 locally reducible and proper core completion");
    }
    if let Some(parts) = obstruction {
        r = r.witness(Witness::Words {
            role: "direct product factors".into(),
            words: parts.iter().map(|&p| g.format_set(p)).collect(),
        });
        r = r.note("the graph is a join with all join labels 2, so the group is a direct product of infinite groups and not acylindrically hyperbolic");
    }
    if verdict == Verdict::Indeterminate {
        r = r.note("neither sufficient condition holds and no direct-product obstruction was found");
    }
    r
}
