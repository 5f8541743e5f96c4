//! Garside normal form for two-generator Artin groups `⟨a, b | prod(a,b;m) = prod(b,a;m)⟩`.
//!
//! Elements are written `Δ^k s_1 … s_r` with `Δ = prod(a,b;m)`, each `s_i` a
//! proper nontrivial simple element (an alternating word of length `< m`),
//! and consecutive factors left-weighted: `s_{i+1}` starts with the letter
//! that `s_i` ends with.

use super::Letter;
use crate::graph::{DefiningGraph, GenSet, GeneratorId};

#[derive(Debug, Clone)]
pub(super) struct Dihedral {
    gens: [GeneratorId; 2],
    m: usize,
}

/// A proper simple factor: alternating word of `len` letters starting at `first` (0 or 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub first: u8,
    pub len: usize,
}

impl Factor {
    fn last(self) -> u8 {
        if self.len % 2 == 1 {
            self.first
        } else {
            1 - self.first
        }
    }
}

/// `Δ^delta_power` followed by left-weighted proper factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DihedralForm {
    pub delta_power: i64,
    pub factors: Vec<Factor>,
}

impl Dihedral {
    /// Two generators joined by a finite label; anything else is a free product.
    pub(super) fn from_graph(g: &DefiningGraph) -> Option<Self> {
        if g.len() != 2 {
            return None;
        }
        let (a, b) = (GeneratorId::from_index(0), GeneratorId::from_index(1));
        g.label(a, b).map(|m| Dihedral { gens: [a, b], m: m as usize })
    }

    fn side(&self, l: Letter) -> u8 {
        if l.gen == self.gens[0] {
            0
        } else {
            1
        }
    }

    /// Conjugation by `Δ` swaps the generators exactly when `m` is odd.
    fn tau(&self, x: u8) -> u8 {
        if self.m % 2 == 1 {
            1 - x
        } else {
            x
        }
    }

    fn alternating(&self, first: u8, len: usize) -> impl Iterator<Item = u8> {
        (0..len).map(move |i| if i % 2 == 0 { first } else { 1 - first })
    }

    pub(super) fn normal_form(&self, letters: &[Letter]) -> DihedralForm {
        let mut form = DihedralForm { delta_power: 0, factors: Vec::new() };
        for &l in letters {
            let x = self.side(l);
            if l.inverse {
                // F x⁻¹ = Δ⁻¹ τ(F) (Δ x⁻¹), and Δ x⁻¹ is the alternating word of
                // length m-1 ending in the other letter.
                form.delta_power -= 1;
                for f in &mut form.factors {
                    f.first = self.tau(f.first);
                }
                let y = 1 - x;
                let len = self.m - 1;
                let first = if len % 2 == 1 { y } else { x };
                for z in self.alternating(first, len) {
                    self.push(&mut form, z);
                }
            } else {
                self.push(&mut form, x);
            }
        }
        form
    }

    fn push(&self, form: &mut DihedralForm, x: u8) {
        match form.factors.last_mut() {
            Some(f) if f.last() != x => {
                if f.len + 1 == self.m {
                    // The last factor became Δ; move it to the front.
                    form.factors.pop();
                    form.delta_power += 1;
                    for f in &mut form.factors {
                        f.first = self.tau(f.first);
                    }
                } else {
                    f.len += 1;
                }
            }
            _ => form.factors.push(Factor { first: x, len: 1 }),
        }
    }

    pub(super) fn in_standard_parabolic(&self, letters: &[Letter], t: GenSet, all: GenSet) -> bool {
        if all.is_subset(t) {
            return true;
        }
        let [a, b] = self.gens;
        let target = if t.contains(a) {
            a
        } else if t.contains(b) {
            b
        } else {
            return self.normal_form(letters) == self.normal_form(&[]);
        };
        // Exponent sums are invariants: total sum for odd m, per generator for even m.
        let sum = |g: GeneratorId| -> i64 {
            letters.iter().filter(|l| l.gen == g).map(|l| if l.inverse { -1 } else { 1 }).sum()
        };
        let power = if self.m % 2 == 1 {
            sum(a) + sum(b)
        } else {
            let other = if target == a { b } else { a };
            if sum(other) != 0 {
                return false;
            }
            sum(target)
        };
        let letter = Letter { gen: target, inverse: power < 0 };
        let candidate = vec![letter; power.unsigned_abs() as usize];
        self.normal_form(letters) == self.normal_form(&candidate)
    }
}

impl DihedralForm {
    /// Canonical word: the `Δ`-power (as `prod(a,b;m)` or its inverse) then the factors.
    pub(super) fn to_word(&self, d: &Dihedral) -> Vec<Letter> {
        let letter = |x: u8| Letter::pos(d.gens[x as usize]);
        let delta: Vec<Letter> = d.alternating(0, d.m).map(letter).collect();
        let mut out = Vec::new();
        for _ in 0..self.delta_power.max(0) {
            out.extend_from_slice(&delta);
        }
        for _ in 0..(-self.delta_power).max(0) {
            out.extend(delta.iter().rev().map(|l| l.inv()));
        }
        for f in &self.factors {
            out.extend(d.alternating(f.first, f.len).map(letter));
        }
        out
    }
}
