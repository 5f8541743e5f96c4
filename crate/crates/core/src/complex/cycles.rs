//! Cycle enumeration, fullness classification, systole and local 6-largeness certificates.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::DevelopedComplex;
use crate::report::{CertificateReport, Verdict, Witness};
use crate::words::Soundness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fullness {
    Full,
    NotFull,
    Indeterminate,
}

impl fmt::Display for Fullness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fullness::Full => "full",
            Fullness::NotFull => "not-full",
            Fullness::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub cycle: Vec<usize>,
    pub length: usize,
    pub fullness: Fullness,
    pub reason: String,
    /// Every vertex of the cycle is marked interior.
    pub interior: bool,
}

impl CycleReport {
    pub fn new(x: &DevelopedComplex, cycle: &[usize]) -> Self {
        let (fullness, reason) = classify_cycle(x, cycle);
        CycleReport {
            cycle: cycle.to_vec(),
            length: cycle.len(),
            fullness,
            reason,
            interior: x.is_interior_simplex(cycle),
        }
    }

    pub fn witness(&self, x: &DevelopedComplex) -> Witness {
        Witness::Cycle {
            vertices: self.cycle.iter().map(|&v| x.vertices()[v].label.clone()).collect(),
            fullness: self.fullness.to_string(),
            reason: self.reason.clone(),
        }
    }
}

fn non_consecutive_pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (i + 2..k).filter(move |&j| !(i == 0 && j == k - 1)).map(move |j| (i, j)))
}

/// Decides whether a cycle of the 1-skeleton spans a full subcomplex.
///
/// With an oracle attached, chords and fillings are decided by exact coset
/// intersection. Without one, a cycle touching a boundary vertex is
/// indeterminate unless a chord or filling is already present.
pub fn classify_cycle(x: &DevelopedComplex, cycle: &[usize]) -> (Fullness, String) {
    let k = cycle.len();
    let name = |v: usize| x.vertices()[v].label.as_str();
    for (i, j) in non_consecutive_pairs(k) {
        if x.has_edge(cycle[i], cycle[j]) {
            return (Fullness::NotFull, format!("chord between {} and {} is present", name(cycle[i]), name(cycle[j])));
        }
    }
    if k == 3 && x.contains_simplex(cycle) {
        return (Fullness::NotFull, "filled by a present 2-simplex".into());
    }
    if let Some(oracle) = x.oracle() {
        for (i, j) in non_consecutive_pairs(k) {
            if let Some(Some(_)) = x.oracle_meet(&[cycle[i], cycle[j]]) {
                return (
                    Fullness::NotFull,
                    format!("chord between {} and {}: the cosets intersect", name(cycle[i]), name(cycle[j])),
                );
            }
        }
        if k == 3 {
            if let Some(Some((h, _))) = x.oracle_meet(cycle) {
                let h = if h.is_empty() { "e".to_string() } else { h.display(oracle.graph()) };
                return (Fullness::NotFull, format!("filled: the three cosets share the element {h}"));
            }
        }
        return (Fullness::Full, "no chord and no filling simplex (exact coset intersection)".into());
    }
    if let Some(&v) = cycle.iter().find(|&&v| !x.vertices()[v].interior) {
        return (
            Fullness::Indeterminate,
            format!("vertex {} is on the boundary; chords or fillings outside the ball cannot be excluded", name(v)),
        );
    }
    (Fullness::Full, "no chord or filling among complete neighbourhoods".into())
}

/// Breadth-first distances from `s` using only vertices `>= s`, capped at `cap`.
fn distances_above(x: &DevelopedComplex, s: usize, cap: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; x.num_vertices()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= cap {
            continue;
        }
        for &w in x.neighbors(u).range(s + 1..) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn sort_cycles(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

/// All simple cycles of length `3..=max_len`, each listed once starting at its least vertex.
pub fn simple_cycles(x: &DevelopedComplex, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(x: &DevelopedComplex, path: &mut Vec<usize>, on: &mut [bool], dist: &[usize], max_len: usize, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() >= 3 && x.has_edge(last, s) && path[1] < last {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for &w in x.neighbors(last).range(s + 1..) {
            if on[w] || dist[w] == usize::MAX || path.len() + dist[w] > max_len {
                continue;
            }
            on[w] = true;
            path.push(w);
            extend(x, path, on, dist, max_len, out);
            path.pop();
            on[w] = false;
        }
    }
    let found: Vec<Vec<usize>> = (0..x.num_vertices())
        .into_par_iter()
        .flat_map_iter(|s| {
            let dist = distances_above(x, s, max_len);
            let mut on = vec![false; x.num_vertices()];
            on[s] = true;
            let mut out = Vec::new();
            extend(x, &mut vec![s], &mut on, &dist, max_len, &mut out);
            out
        })
        .collect();
    sort_cycles(found)
}

/// Cycles of length `3..=max_len` without a chord present in the complex.
///
/// A full cycle has no chord at all, so it is always among these.
pub fn find_induced_cycles(x: &DevelopedComplex, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(x: &DevelopedComplex, path: &mut Vec<usize>, dist: &[usize], max_len: usize, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        for &w in x.neighbors(last).range(s + 1..) {
            if path.contains(&w) || path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| x.has_edge(p, w)) {
                continue;
            }
            let closes = x.has_edge(s, w);
            if path.len() == 1 {
                if max_len >= 3 {
                    path.push(w);
                    extend(x, path, dist, max_len, out);
                    path.pop();
                }
            } else if closes {
                if path[1] < w {
                    let mut c = path.clone();
                    c.push(w);
                    out.push(c);
                }
            } else if path.len() + 1 < max_len && dist[w] != usize::MAX && path.len() + dist[w] <= max_len {
                path.push(w);
                extend(x, path, dist, max_len, out);
                path.pop();
            }
        }
    }
    if max_len < 3 {
        return Vec::new();
    }
    let found: Vec<Vec<usize>> = (0..x.num_vertices())
        .into_par_iter()
        .flat_map_iter(|s| {
            let dist = distances_above(x, s, max_len);
            let mut out = Vec::new();
            extend(x, &mut vec![s], &dist, max_len, &mut out);
            out
        })
        .collect();
    sort_cycles(found)
}

/// Every simple cycle of length `3..=max_len`, classified.
pub fn find_full_cycles_up_to(x: &DevelopedComplex, max_len: usize) -> Vec<CycleReport> {
    simple_cycles(x, max_len).par_iter().map(|c| CycleReport::new(x, c)).collect()
}

fn soundness_note(x: &DevelopedComplex) -> Option<String> {
    match x.oracle()?.soundness() {
        Soundness::Exact => None,
        Soundness::FloatingPoint { tolerance } => {
            Some(format!("coset tests use floating-point reflection matrices (tolerance {tolerance:e})"))
        }
    }
}

/// PASS if no full cycle shorter than `bound` exists among the cycles of the complex.
pub fn systole_certificate(x: &DevelopedComplex, bound: usize) -> CertificateReport {
    let max_len = bound.saturating_sub(1);
    let reports: Vec<CycleReport> =
        find_induced_cycles(x, max_len).par_iter().map(|c| CycleReport::new(x, c)).collect();
    let full = reports.iter().find(|r| r.fullness == Fullness::Full);
    let indeterminate = reports.iter().find(|r| r.fullness == Fullness::Indeterminate);
    let verdict = match (full, indeterminate) {
        (Some(_), _) => Verdict::Fail,
        (None, Some(_)) => Verdict::Indeterminate,
        (None, None) => Verdict::Pass,
    };
    let mut report = CertificateReport::new("systole", verdict)
        .param("bound", bound)
        .param("radius", x.radius())
        .param("vertices", x.num_vertices())
        .param("chambers", x.chambers().len())
        .param("induced_cycles_examined", reports.len())
        .param("interior_cycles", reports.iter().filter(|r| r.interior).count())
        .param("indeterminate_cycles", reports.iter().filter(|r| r.fullness == Fullness::Indeterminate).count());
    report = match (full, indeterminate) {
        (Some(r), _) | (None, Some(r)) => report.witness(r.witness(x)),
        (None, None) => report.witness(Witness::Statement {
            text: format!(
                "exhaustive over the {} chordless cycles of length 3..{} in the complex; every other cycle has a chord present",
                reports.len(),
                max_len
            ),
        }),
    };
    if let Some(note) = soundness_note(x) {
        report = report.note(note);
    }
    report
}

/// Runs the systole check with bound 6 on the link of every interior simplex.
pub fn locally_6_large_check(x: &DevelopedComplex) -> CertificateReport {
    let all = x.simplices();
    let total = all.len();
    let interior: Vec<Vec<usize>> = all.into_iter().filter(|s| x.is_interior_simplex(s)).collect();
    let results: Vec<(Vec<usize>, CertificateReport)> = interior
        .par_iter()
        .map(|s| (s.clone(), systole_certificate(&x.link(s).expect("simplex is present"), 6)))
        .collect();
    let verdict = results.iter().fold(Verdict::Pass, |acc, (_, r)| acc.combine(r.verdict));
    let mut report = CertificateReport::new("locally-6-large", verdict)
        .param("radius", x.radius())
        .param("simplices_checked", interior.len())
        .param("boundary_simplices_skipped", total - interior.len());
    if let Some((s, sub)) = results.iter().find(|(_, r)| r.verdict == verdict && verdict != Verdict::Pass) {
        let labels: Vec<&str> = s.iter().map(|&v| x.vertices()[v].label.as_str()).collect();
        report = report
            .witness(Witness::Statement { text: format!("link of simplex [{}]", labels.join(", ")) })
            .witness(Witness::Report(Box::new(sub.clone())));
    } else if verdict == Verdict::Pass {
        report = report.witness(Witness::Statement {
            text: format!("all {} interior simplices have links without full cycles of length 3..5", interior.len()),
        });
    }
    if let Some(note) = soundness_note(x) {
        report = report.note(note);
    }
    report.note("links of simplices touching the ball boundary are not checked")
}
