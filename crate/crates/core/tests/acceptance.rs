//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Run with `cargo test --test acceptance`.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::type_complexity)]

mod common;

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use artinlab::complex::{develop_ball, fundamental_domain, locally_6_large_check, systole_certificate, DevelopedComplex};
use artinlab::criteria::{acylindricity_report, angle_link_check, no_full_4cycle_check, weak_malnormality_witness};
use artinlab::finite_type::{finite, is_locally_reducible};
use artinlab::{DefiningGraph, GenSet, GeneratorId, OracleMode, Verdict, Witness, WordOracle};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn names(g: &DefiningGraph, s: GenSet) -> BTreeSet<String> {
    g.set_names(s).into_iter().collect()
}

fn name_set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn c01_worked_example() -> Outcome {
    let g = load("worked_example.json");
    let blocks: Vec<BTreeSet<String>> = g.hat_components().blocks.iter().map(|&b| names(&g, b)).collect();
    let expected = vec![name_set(&["a", "b", "c"]), name_set(&["d", "e"]), name_set(&["f"])];
    ensure!(two_components(&g) == expected, "oracle components {:?}", two_components(&g));
    ensure!(blocks == expected, "blocks {blocks:?}");
    let k = fundamental_domain(&g).map_err(|e| e.to_string())?;
    let (t, u, v) = (set(&g, &["a", "b", "c"]), set(&g, &["d", "e"]), set(&g, &["f"]));
    ensure!(k.vertex_types == vec![u.union(v), t.union(v), t.union(u)], "vertex types");
    for (face, want) in [(vec![1, 2], t), (vec![0, 2], u), (vec![0, 1], v), (vec![0, 1, 2], GenSet::default())] {
        let got = k.face_local_group(&face);
        ensure!(got == want, "face {face:?} has local group {}", g.format_set(got));
    }
    ensure!(k.faces().len() == 7, "K has {} faces", k.faces().len());
    Ok("blocks {a,b,c},{d,e},{f}; K vertex groups A_{TuV},A_{UuV},A_{TuU}; edges A_T,A_U,A_V; centre trivial".into())
}

fn c02_two_complete_membership() -> Outcome {
    let g = load("worked_example.json");
    let comps = two_components(&g);
    let oracle = |s: &BTreeSet<String>| comps.iter().filter(|c| !c.is_disjoint(s)).all(|c| c.is_subset(s));
    let abc = set(&g, &["a", "b", "c"]);
    let abcd = set(&g, &["a", "b", "c", "d"]);
    ensure!(oracle(&names(&g, abc)) && !oracle(&names(&g, abcd)), "oracle disagrees with expectation");
    ensure!(g.is_two_complete(abc), "{{a,b,c}} rejected");
    ensure!(!g.is_two_complete(abcd), "{{a,b,c,d}} accepted");
    for bits in 0..1u64 << g.len() {
        let s = GenSet::from_bits(bits);
        ensure!(g.is_two_complete(s) == oracle(&names(&g, s)), "disagreement on {}", g.format_set(s));
    }
    Ok("{a,b,c} in S2, {a,b,c,d} not; all 64 subsets agree with the union-of-components oracle".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> DefiningGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // Labels 2..=9, or 10 meaning infinity.
            let m = rng.random_range(2..=10i64);
            if m <= 9 {
                edges.push((names[i].clone(), names[j].clone(), m));
            }
        }
    }
    DefiningGraph::new(&names, &edges).unwrap()
}

fn c03_finite_type_vs_gram() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut checked = 0usize;
    let mut finite_count = 0usize;
    for _ in 0..200 {
        let n = rng.random_range(1..=7);
        let g = random_graph(&mut rng, n);
        for bits in 1..1u64 << n {
            let t = GenSet::from_bits(bits);
            let gram = gram_positive_definite(&g, t, 1e-9);
            let class = finite(&g, t);
            ensure!(gram == class, "graph {g}, subset {}: Gram {gram}, classification {class}", g.format_set(t));
            checked += 1;
            finite_count += usize::from(class);
        }
    }
    Ok(format!("{checked} subsets of 200 graphs agree ({finite_count} finite type)"))
}

fn c04_local_reducibility() -> Outcome {
    let g = load("worked_example.json");
    ensure!(is_locally_reducible(&g).is_ok(), "worked example reported not locally reducible");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut planted = 0;
    for trial in 0..100 {
        let n = rng.random_range(3..=7);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = vec![
            (names[0].clone(), names[1].clone(), 2),
            (names[0].clone(), names[2].clone(), 3),
            (names[1].clone(), names[2].clone(), 3),
        ];
        for i in 0..n {
            for j in (i + 1).max(3)..n {
                let m = rng.random_range(2..=10i64);
                if m <= 9 {
                    edges.push((names[i].clone(), names[j].clone(), m));
                }
            }
        }
        let g = DefiningGraph::new(&names, &edges).unwrap();
        let bad: Vec<GenSet> = bad_triangles(&g);
        let w = match is_locally_reducible(&g) {
            Ok(()) => return Err(format!("trial {trial}: {g} accepted")),
            Err(w) => w,
        };
        let got: GenSet = w.vertices.iter().copied().collect();
        ensure!(bad.contains(&got), "trial {trial}: witness {} is not a bad triangle", g.format_set(got));
        let mut labels = w.labels;
        labels.sort_unstable();
        let mut expect: Vec<u32> = triangle_labels(&g, got);
        expect.sort_unstable();
        ensure!(labels.to_vec() == expect, "witness labels {labels:?} vs {expect:?}");
        if bad.len() == 1 {
            ensure!(got == set(&g, &["v0", "v1", "v2"]), "trial {trial}: witness misses the planted triangle");
            planted += 1;
        }
    }
    let tri = graph(&["x", "y", "z"], &[("x", "y", 2), ("x", "z", 3), ("y", "z", 3)]);
    let w = is_locally_reducible(&tri).err().ok_or("bare 2-3-3 triangle accepted")?;
    let mut labels = w.labels;
    labels.sort_unstable();
    ensure!(labels == [2, 3, 3], "bare triangle witness labels {labels:?}");
    Ok(format!("worked example locally reducible; 100 planted 2-3-3 graphs rejected ({planted} with the planted triangle as the unique witness)"))
}

fn triangle_labels(g: &DefiningGraph, t: GenSet) -> Vec<u32> {
    let v: Vec<GeneratorId> = t.iter().collect();
    vec![g.label(v[0], v[1]).unwrap(), g.label(v[0], v[2]).unwrap(), g.label(v[1], v[2]).unwrap()]
}

/// Triangles that are finite type by the Gram oracle and not of shape 2-2-k.
fn bad_triangles(g: &DefiningGraph) -> Vec<GenSet> {
    let n = g.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t: GenSet = [i, j, k].into_iter().map(GeneratorId::from_index).collect();
                let v: Vec<GeneratorId> = t.iter().collect();
                let ls = [g.label(v[0], v[1]), g.label(v[0], v[2]), g.label(v[1], v[2])];
                if ls.iter().any(Option::is_none) {
                    continue;
                }
                let twos = ls.iter().filter(|&&m| m == Some(2)).count();
                if twos < 2 && gram_positive_definite(g, t, 1e-9) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Checks that `nf` and the rewriting classes induce the same partition of `words`.
fn same_partition(
    words: &[Code],
    oracle: &mut RewritingOracle,
    nf: &dyn Fn(&[u8]) -> artinlab::Word,
    label: &str,
) -> Result<usize, String> {
    let mut by_nf: HashMap<artinlab::Word, usize> = HashMap::new();
    let mut by_class: HashMap<usize, artinlab::Word> = HashMap::new();
    for w in words {
        let class = oracle.class(w).ok_or_else(|| format!("{label}: word {w:?} outside the rewriting table"))?;
        let form = nf(w);
        if let Some(&c) = by_nf.get(&form) {
            ensure!(c == class, "{label}: normal forms agree but rewriting cannot connect {w:?}");
        }
        if let Some(f) = by_class.get(&class) {
            ensure!(f == &form, "{label}: rewriting-equal words {w:?} get different normal forms");
        }
        by_nf.insert(form.clone(), class);
        by_class.insert(class, form);
    }
    Ok(by_nf.len())
}

fn c05_oracle_soundness() -> Outcome {
    let raag_graphs = [
        graph(&["a", "b", "c", "d"], &[]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("a", "c", 2), ("a", "d", 2), ("b", "c", 2), ("b", "d", 2), ("c", "d", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("b", "c", 2), ("c", "d", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("b", "c", 2), ("a", "c", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("a", "c", 2), ("a", "d", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2)]),
        graph(&["a", "b", "c"], &[("a", "b", 2)]),
        graph(&["a", "b"], &[("a", "b", 2)]),
        graph(&["a"], &[]),
    ];
    let mut total_words = 0;
    let mut total_elements = 0;
    for g in &raag_graphs {
        let o = WordOracle::new(g, OracleMode::Raag).map_err(|e| e.to_string())?;
        let mut rw = RewritingOracle::new(g.len(), &raag_relators(g), 6);
        let all = all_words(&letters_of(0..g.len()), 6);
        for w in &all {
            let direct = o.normal_form(&to_word(w)).word;
            let reduced = o.normal_form(&to_word(&free_reduce(w))).word;
            ensure!(direct == reduced, "{g}: free reduction changes the normal form of {w:?}");
            ensure!(direct.len() <= free_reduce(w).len(), "{g}: normal form longer than input");
        }
        let reduced = reduced_words(&letters_of(0..g.len()), 6);
        total_elements += same_partition(&reduced, &mut rw, &|w| o.normal_form(&to_word(w)).word, &format!("raag {g}"))?;
        total_words += all.len();
    }
    let mut dihedral_elements = 0;
    for m in [3usize, 4, 5] {
        let g = graph(&["a", "b"], &[("a", "b", m as i64)]);
        let o = WordOracle::new(&g, OracleMode::Dihedral).map_err(|e| e.to_string())?;
        let mut rw = RewritingOracle::new(2, &[braid_relator(0, 1, m)], 10);
        let all = all_words(&letters_of(0..2), 6);
        for w in &all {
            let direct = o.normal_form(&to_word(w)).word;
            let reduced = o.normal_form(&to_word(&free_reduce(w))).word;
            ensure!(direct == reduced, "m={m}: free reduction changes the normal form of {w:?}");
        }
        let reduced = reduced_words(&letters_of(0..2), 6);
        dihedral_elements += same_partition(&reduced, &mut rw, &|w| o.normal_form(&to_word(w)).word, &format!("dihedral m={m}"))?;
        total_words += all.len();
    }
    Ok(format!(
        "{total_words} words; RAAG partitions match on 10 graphs ({total_elements} elements), dihedral m=3,4,5 ({dihedral_elements} elements)"
    ))
}

fn c06_coset_canonicalization() -> Outcome {
    let graphs = [
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("b", "c", 2), ("c", "d", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2)]),
        graph(&["a", "b", "c", "d"], &[("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)]),
    ];
    let mut checks = 0;
    for g in &graphs {
        let o = WordOracle::new(g, OracleMode::Raag).map_err(|e| e.to_string())?;
        let rw = RewritingOracle::new(g.len(), &raag_relators(g), 6);
        for bits in 0..1u64 << g.len() {
            let t = GenSet::from_bits(bits);
            let mut uf = rw.classes.clone();
            let tl = letters_of(t.iter().map(GeneratorId::index));
            for (i, w) in rw.words.iter().enumerate() {
                for &l in &tl {
                    let mut x = w.clone();
                    x.push(l);
                    if let Some(&j) = rw.index.get(&free_reduce(&x)) {
                        uf.union(i, j);
                    }
                }
            }
            let mut by_rep: HashMap<artinlab::Word, usize> = HashMap::new();
            let mut by_class: HashMap<usize, artinlab::Word> = HashMap::new();
            for (i, w) in rw.words.iter().enumerate() {
                let class = uf.find(i);
                let rep = o.min_coset_rep(&to_word(w), t).map_err(|e| e.to_string())?;
                if let Some(&c) = by_rep.get(&rep) {
                    ensure!(c == class, "{g}, T={}: {w:?} shares a representative across cosets", g.format_set(t));
                }
                if let Some(r) = by_class.get(&class) {
                    ensure!(r == &rep, "{g}, T={}: one coset, two representatives at {w:?}", g.format_set(t));
                }
                by_rep.insert(rep.clone(), class);
                by_class.insert(class, rep);
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (word, T) pairs over 3 graphs and all 16 subsets each agree with brute-force cosets"))
}

/// Simple cycles of lengths 3..=5 by depth-first search from the least vertex.
fn short_cycles(x: &DevelopedComplex) -> Vec<Vec<usize>> {
    fn dfs(x: &DevelopedComplex, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (s, u) = (path[0], *path.last().unwrap());
        for &w in x.neighbors(u) {
            if w == s && path.len() >= 3 && path[1] < u {
                out.push(path.clone());
            } else if w > s && !path.contains(&w) && path.len() < 5 {
                path.push(w);
                dfs(x, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..x.num_vertices() {
        dfs(x, &mut vec![s], &mut out);
    }
    out
}

fn c07_three_block_systole() -> Outcome {
    let g = load("raag_a.json");
    ensure!(g.hat_components().len() == 3, "expected three blocks");
    let x = develop_ball(&g, OracleMode::Raag, 3).map_err(|e| e.to_string())?;
    let sys = systole_certificate(&x, 6);
    let local = locally_6_large_check(&x);
    ensure!(sys.verdict == Verdict::Pass, "systole verdict {} {:?}", sys.verdict, sys.witnesses);
    ensure!(local.verdict != Verdict::Fail, "locally 6-large FAIL {:?}", local.witnesses);
    ensure!(sys.parameters["indeterminate_cycles"] == 0, "indeterminate cycles present");

    // Independent pass over every simple cycle of the ball with interior vertices.
    let cycles = short_cycles(&x);
    let mut interior = 0;
    for c in &cycles {
        if !x.is_interior_simplex(c) {
            continue;
        }
        interior += 1;
        let k = c.len();
        let chord = (0..k).any(|i| (i + 2..k).any(|j| !(i == 0 && j == k - 1) && x.has_edge(c[i], c[j])));
        let filled = k == 3 && x.contains_simplex(c);
        ensure!(chord || filled, "interior cycle {:?} is full in the ball", c.iter().map(|&v| &x.vertices()[v].label).collect::<Vec<_>>());
    }
    Ok(format!(
        "{} vertices, {} chambers; {} simple 3..5-cycles ({interior} interior), none full; locally 6-large {}",
        x.num_vertices(),
        x.chambers().len(),
        cycles.len(),
        local.verdict
    ))
}

fn c08_two_components() -> Outcome {
    let mut summary = Vec::new();
    for file in ["two_edges.json", "free2.json"] {
        let g = load(file);
        let x = develop_ball(&g, OracleMode::Raag, 3).map_err(|e| e.to_string())?;
        ensure!(x.dimension() == Some(1), "{file}: dimension {:?}", x.dimension());
        let bipartite = x.edges().iter().all(|&(u, v)| x.vertices()[u].kind != x.vertices()[v].kind);
        ensure!(bipartite && x.is_bipartite_by_type(), "{file}: not bipartite by type");
        // A forest has no cycles at all, in particular no 4-cycles.
        let n = x.num_vertices();
        let mut uf = UnionFind::new(n);
        for &(u, v) in &x.edges() {
            uf.union(u, v);
        }
        let components = (0..n).filter(|&v| uf.find(v) == v).count();
        ensure!(x.edges().len() + components == n, "{file}: 1-skeleton has cycles");
        let r = no_full_4cycle_check(&g, OracleMode::Raag, 3).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Pass, "{file}: verdict {}", r.verdict);
        summary.push(format!("{file}: {n} vertices, tree, PASS"));
    }
    Ok(summary.join("; "))
}

fn c09_angle_bound() -> Outcome {
    let g = load("worked_example.json");
    let n = g.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v, m) in g.edges() {
        let len = PI - PI / m as f64;
        d[u.index()][v.index()] = len;
        d[v.index()][u.index()] = len;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let parts = g.hat_components();
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (parts.block_of(GeneratorId::from_index(i)), parts.block_of(GeneratorId::from_index(j)));
            if bi != bj && d[i][j] < best.0 {
                best = (d[i][j], i, j);
            }
        }
    }
    let target = 2.0 * PI / 3.0;
    ensure!((best.0 - target).abs() < 1e-12, "oracle minimum {}", best.0);
    ensure!((g.names()[best.1].as_str(), g.names()[best.2].as_str()) == ("d", "f"), "oracle pair");
    let r = angle_link_check(&g);
    ensure!(r.verdict == Verdict::Pass, "verdict {}", r.verdict);
    let min = r.parameters["minimum_radians"].as_f64().ok_or("no minimum reported")?;
    ensure!((min - target).abs() < 1e-12, "reported minimum {min}");
    let at_df = r.witnesses.iter().any(|w| match w {
        Witness::Distance { u, v, radians } => {
            u == "d" && v == "f" && radians.is_some_and(|x| (x - target).abs() < 1e-12)
        }
        _ => false,
    });
    ensure!(at_df, "minimum not attributed to d-f: {:?}", r.witnesses);
    Ok(format!("minimum {min:.15} = 2pi/3 at d-f (|err| < 1e-12), all cross-component distances >= 2pi/3"))
}

/// Nontrivial elements of `A_rest` up to length `max_len` by the closure oracle; none may be conjugated into `A_rest`.
fn malnormality_oracle(g: &DefiningGraph, v: GenSet, max_len: usize) -> Result<usize, String> {
    let rest = g.vertex_set().difference(v);
    let mut elements: BTreeSet<Code> = BTreeSet::new();
    for w in all_words(&letters_of(rest.iter().map(GeneratorId::index)), max_len) {
        let f = raag_closure_form(g, &w);
        if !f.is_empty() && f.len() <= max_len {
            elements.insert(f);
        }
    }
    let conj: Code = v.iter().map(|s| 2 * s.index() as u8).collect();
    for h in &elements {
        let mut c = conj.clone();
        c.extend_from_slice(h);
        c.extend(invert(&conj));
        let f = raag_closure_form(g, &c);
        let inside = f.iter().all(|&l| rest.contains(GeneratorId::from_index((l / 2) as usize)));
        ensure!(!inside, "oracle: {h:?} conjugates into the subgroup");
    }
    Ok(elements.len())
}

fn c10_weak_malnormality() -> Outcome {
    let cases = [
        (graph(&["a", "b", "c"], &[("a", "b", 2)]), vec!["c"]),
        (load("raag_a.json"), vec!["a", "b"]),
    ];
    let mut out = Vec::new();
    for (g, v) in &cases {
        let vs = set(g, v);
        let count = malnormality_oracle(g, vs, 6)?;
        let r = weak_malnormality_witness(g, vs, OracleMode::Raag, 6).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Pass, "{g}, V={}: {}", g.format_set(vs), r.verdict);
        ensure!(r.parameters["elements_checked"] == count, "element count {} vs oracle {count}", r.parameters["elements_checked"]);
        out.push(format!("V={} ({count} elements)", g.format_set(vs)));
    }
    Ok(format!("PASS at max_len 6: {}", out.join(", ")))
}

fn c11_acylindricity() -> Outcome {
    let g = load("worked_example.json");
    // Oracle: first edge with m >= 3 whose endpoints have no common neighbour
    // making a finite-type triangle, completed to the union of their components.
    let comps = two_components(&g);
    let mut first = None;
    for (u, v, m) in g.edges() {
        if m < 3 {
            continue;
        }
        let pair = GenSet::singleton(u).with(v);
        let extendable = g.generators().any(|w| !pair.contains(w) && gram_positive_definite(&g, pair.with(w), 1e-9));
        if extendable {
            continue;
        }
        let hit: BTreeSet<String> = comps
            .iter()
            .filter(|c| c.contains(g.name(u)) || c.contains(g.name(v)))
            .flat_map(|c| c.iter().cloned())
            .collect();
        if hit.len() < g.len() {
            first = Some((g.name(u).to_string(), g.name(v).to_string(), hit));
            break;
        }
    }
    let (ou, ov, ocomp) = first.ok_or("oracle found no proper maximal dihedral edge")?;
    ensure!((ou.as_str(), ov.as_str()) == ("b", "d") && ocomp == name_set(&["a", "b", "c", "d", "e"]), "oracle edge {ou}{ov}");
    let r = acylindricity_report(&g);
    ensure!(r.verdict == Verdict::Pass, "worked example verdict {}", r.verdict);
    ensure!(r.parameters["condition_1"] == true, "worked example not via condition (1)");
    match r.witnesses.first() {
        Some(Witness::Edge { u, v, completion, .. }) => {
            ensure!(u == &ou && v == &ov, "witness edge {u}-{v}");
            ensure!(completion.iter().cloned().collect::<BTreeSet<_>>() == ocomp, "completion {completion:?}");
        }
        other => return Err(format!("first witness {other:?}")),
    }

    let square = load("square.json");
    let rs = acylindricity_report(&square);
    ensure!(rs.parameters["condition_1"] == false && rs.parameters["condition_2"] == false, "square satisfies a condition");
    ensure!(rs.parameters["direct_product_obstruction"] == true, "no direct-product obstruction reported");
    ensure!(rs.verdict != Verdict::Pass, "square verdict PASS");

    let free = load("free2.json");
    let rf = acylindricity_report(&free);
    ensure!(rf.verdict == Verdict::Pass && rf.parameters["condition_2"] == true, "edgeless verdict {}", rf.verdict);
    let empty_core = rf.witnesses.iter().any(|w| matches!(w, Witness::Splitting { core, .. } if core.is_empty()));
    ensure!(empty_core, "no splitting with empty core: {:?}", rf.witnesses);
    Ok(format!("worked example PASS via (1) edge (b,d) completion {{a,b,c,d,e}}; square {} with direct-product obstruction; edgeless PASS via (2) core {{}}", rs.verdict))
}

fn c12_link_type() -> Outcome {
    let g = load("raag_a.json");
    let x = develop_ball(&g, OracleMode::Raag, 3).map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    for (kind, block) in g.hat_components().blocks.iter().enumerate() {
        let u = g.vertex_set().difference(*block);
        let v = (0..x.num_vertices())
            .find(|&i| {
                let vx = &x.vertices()[i];
                vx.kind == Some(kind) && vx.coset.as_ref().is_some_and(|c| c.rep.len() == 1)
            })
            .ok_or_else(|| format!("no type-{} vertex with a length-1 representative", g.format_set(u)))?;
        let link = x.link(&[v]).map_err(|e| e.to_string())?;
        let sub = g.full_subgraph(u);
        let ball = develop_ball(&sub, OracleMode::Raag, 2).map_err(|e| e.to_string())?;
        let link_kind = |i: usize| -> String {
            let ty = link.vertices()[i].coset.as_ref().unwrap().ty.intersection(u);
            format!("{:?}", names(&g, ty))
        };
        let ball_kind = |i: usize| -> String {
            let ty = ball.vertices()[i].coset.as_ref().unwrap().ty;
            format!("{:?}", names(&sub, ty))
        };
        ensure!(brute_force_isomorphic(&link, &link_kind, &ball, &ball_kind), "{}: brute force finds no isomorphism", x.vertices()[v].label);
        let lib = artinlab::complex::typed_isomorphic(
            &link,
            |vx| format!("{:?}", names(&g, vx.coset.as_ref().unwrap().ty.intersection(u))),
            &ball,
            |vx| format!("{:?}", names(&sub, vx.coset.as_ref().unwrap().ty)),
        );
        ensure!(lib, "{}: library isomorphism check disagrees", x.vertices()[v].label);
        checked.push(format!("{} ({} vertices)", x.vertices()[v].label, link.num_vertices()));
    }
    Ok(format!("links isomorphic to radius-2 balls: {}", checked.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 12] = [
        ("01 worked example reproduction", c01_worked_example, Duration::from_secs(1)),
        ("02 two-complete membership", c02_two_complete_membership, Duration::from_secs(1)),
        ("03 finite type vs Gram oracle", c03_finite_type_vs_gram, Duration::from_secs(60)),
        ("04 local reducibility", c04_local_reducibility, Duration::from_secs(1)),
        ("05 word oracle soundness", c05_oracle_soundness, Duration::from_secs(300)),
        ("06 coset canonicalization", c06_coset_canonicalization, Duration::from_secs(300)),
        ("07 three-block systole", c07_three_block_systole, Duration::from_secs(120)),
        ("08 two-component complexes", c08_two_components, Duration::from_secs(60)),
        ("09 angle bound", c09_angle_bound, Duration::from_secs(1)),
        ("10 weak malnormality", c10_weak_malnormality, Duration::from_secs(30)),
        ("11 acylindricity report", c11_acylindricity, Duration::from_secs(5)),
        ("12 link-type property", c12_link_type, Duration::from_secs(120)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS  {name}  [{took:.2?}]  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{took:.2?}]  {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
