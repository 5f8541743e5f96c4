//! Shared strategies and fixtures for unit tests.

use proptest::prelude::*;

use crate::graph::DefiningGraph;

/// Random graphs on `1..=max_n` generators with labels in `{2,..,5}` or absent.
pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = DefiningGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(prop_oneof![Just(0i64), 2i64..6], pairs).prop_map(move |labels| {
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if labels[k] != 0 {
                        edges.push((names[i].clone(), names[j].clone(), labels[k]));
                    }
                    k += 1;
                }
            }
            DefiningGraph::new(&names, &edges).unwrap()
        })
    })
}

/// Random graphs whose labels are all 2 (right-angled).
pub(crate) fn arb_raag(max_n: usize) -> impl Strategy<Value = DefiningGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |present| {
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if present[k] {
                        edges.push((names[i].clone(), names[j].clone(), 2));
                    }
                    k += 1;
                }
            }
            DefiningGraph::new(&names, &edges).unwrap()
        })
    })
}
