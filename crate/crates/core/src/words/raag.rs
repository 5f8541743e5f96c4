//! Right-angled normal forms: free cancellation modulo commutation, then the
//! lexicographically least ordering of the resulting trace.
//!
//! Also used for free groups (graphs without 2-edges), where it degenerates
//! to ordinary free reduction.

use super::Letter;
use crate::graph::{DefiningGraph, GenSet};

fn commute(g: &DefiningGraph, x: Letter, y: Letter) -> bool {
    x.gen != y.gen && g.commute(x.gen, y.gen)
}

/// Geodesic word for the element, obtained by cancelling `x … x⁻¹` pairs whose
/// middle commutes with `x`. Letter order is otherwise preserved.
pub(super) fn reduce(g: &DefiningGraph, letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &x in letters {
        let mut cancel = None;
        for j in (0..out.len()).rev() {
            let y = out[j];
            if y.gen == x.gen {
                if y.inverse != x.inverse {
                    cancel = Some(j);
                }
                break;
            }
            if !g.commute(y.gen, x.gen) {
                break;
            }
        }
        match cancel {
            Some(j) => {
                out.remove(j);
            }
            None => out.push(x),
        }
    }
    out
}

/// Lexicographically least rearrangement of a word under commutations.
fn lex_least(g: &DefiningGraph, mut rest: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // A letter can move to the front iff it commutes with everything before it.
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if rest[..i].iter().all(|&y| commute(g, y, rest[i])) && best.is_none_or(|b| rest[i] < rest[b]) {
                best = Some(i);
            }
        }
        let i = best.expect("the first letter is always movable");
        out.push(rest.remove(i));
    }
    out
}

pub(super) fn normal_form(g: &DefiningGraph, letters: &[Letter]) -> Vec<Letter> {
    lex_least(g, reduce(g, letters))
}

/// Minimal representative of `w A_t`: strip terminal letters lying in `t`.
pub(super) fn min_coset_rep(g: &DefiningGraph, letters: &[Letter], t: GenSet) -> Vec<Letter> {
    let mut word = reduce(g, letters);
    'strip: loop {
        for i in (0..word.len()).rev() {
            let x = word[i];
            if t.contains(x.gen) && word[i + 1..].iter().all(|&y| commute(g, x, y)) {
                word.remove(i);
                continue 'strip;
            }
        }
        break;
    }
    lex_least(g, word)
}
