//! Coxeter quotient `W_Γ` through its reflection representation on the root space.
//!
//! Simple reflections act by `s(α_t) = α_t − C[s][t] α_s` where `C` is a
//! Cartan-type matrix with `C[s][s] = 2` and `C[s][t]·C[t][s] = 4cos²(π/m)`.
//! When every finite label lies in `{2, 3, 4, 6}` the matrix can be chosen
//! with integer entries (`∞` uses `−2, −2`) and all arithmetic is exact.
//! Other labels fall back to the symmetric matrix `−2cos(π/m)` in `f64`.
//!
//! An element `w` has `s` as a left descent iff `w⁻¹(α_s)` is a negative root,
//! which gives the lexicographically least reduced word greedily.

use super::{Letter, Soundness};
use crate::graph::{DefiningGraph, GenSet, GeneratorId};

/// Per-entry tolerance of the floating-point representation.
pub const SHADOW_TOLERANCE: f64 = 1e-9;

pub(super) trait Coeff: Copy + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul_sub(self, c: Self, x: Self) -> Self;
    fn add(self, x: Self) -> Self;
    fn is_negative(self) -> bool;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn mul_sub(self, c: Self, x: Self) -> Self {
        c.checked_mul(x)
            .and_then(|p| self.checked_sub(p))
            .expect("reflection representation entries overflowed i128")
    }
    fn add(self, x: Self) -> Self {
        self.checked_add(x).expect("reflection representation entries overflowed i128")
    }
    fn is_negative(self) -> bool {
        self < 0
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn mul_sub(self, c: Self, x: Self) -> Self {
        self - c * x
    }
    fn add(self, x: Self) -> Self {
        self + x
    }
    fn is_negative(self) -> bool {
        self < -SHADOW_TOLERANCE
    }
}

#[derive(Debug, Clone)]
pub(super) struct Rep<T> {
    n: usize,
    cartan: Vec<T>,
}

impl<T: Coeff> Rep<T> {
    fn identity(&self) -> Vec<T> {
        let n = self.n;
        (0..n * n).map(|k| if k / n == k % n { T::one() } else { T::zero() }).collect()
    }

    fn c(&self, s: usize, t: usize) -> T {
        self.cartan[s * self.n + t]
    }

    /// `M ← σ_s M`: only row `s` changes.
    fn left_mul(&self, m: &mut [T], s: usize) {
        let n = self.n;
        let mut row = vec![T::zero(); n];
        for (j, r) in row.iter_mut().enumerate() {
            let mut acc = m[s * n + j];
            for t in 0..n {
                acc = acc.mul_sub(self.c(s, t), m[t * n + j]);
            }
            *r = acc;
        }
        m[s * n..(s + 1) * n].copy_from_slice(&row);
    }

    /// `M ← M σ_s`: column `t` becomes `col_t − C[s][t] col_s`.
    fn right_mul(&self, m: &mut [T], s: usize) {
        let n = self.n;
        let col_s: Vec<T> = (0..n).map(|i| m[i * n + s]).collect();
        for t in 0..n {
            let c = self.c(s, t);
            for i in 0..n {
                m[i * n + t] = m[i * n + t].mul_sub(c, col_s[i]);
            }
        }
    }

    /// Column `s` is a root, so its coefficients share a sign and the sum decides it.
    fn column_negative(&self, m: &[T], s: usize) -> bool {
        let n = self.n;
        (0..n).fold(T::zero(), |acc, i| acc.add(m[i * n + s])).is_negative()
    }

    fn reduced_word(&self, letters: &[Letter]) -> Vec<usize> {
        // m = matrix of w⁻¹
        let mut m = self.identity();
        for l in letters {
            self.left_mul(&mut m, l.gen.index());
        }
        let mut out = Vec::new();
        while let Some(s) = (0..self.n).find(|&s| self.column_negative(&m, s)) {
            out.push(s);
            self.right_mul(&mut m, s);
        }
        out
    }

    /// Generators to append on the right to reach the minimal element of `w W_t`.
    fn strip_right(&self, letters: &[Letter], t: GenSet) -> Vec<usize> {
        // m = matrix of w
        let mut m = self.identity();
        for l in letters {
            self.right_mul(&mut m, l.gen.index());
        }
        let mut stripped = Vec::new();
        while let Some(s) = t.iter().map(GeneratorId::index).find(|&s| self.column_negative(&m, s)) {
            stripped.push(s);
            self.right_mul(&mut m, s);
        }
        stripped
    }
}

#[derive(Debug, Clone)]
pub(super) enum ShadowRep {
    Exact(Rep<i128>),
    Float(Rep<f64>),
}

fn exact_pair(m: Option<u32>) -> Option<(i128, i128)> {
    match m {
        None => Some((-2, -2)),
        Some(2) => Some((0, 0)),
        Some(3) => Some((-1, -1)),
        Some(4) => Some((-1, -2)),
        Some(6) => Some((-1, -3)),
        Some(_) => None,
    }
}

impl ShadowRep {
    pub(super) fn new(g: &DefiningGraph) -> Self {
        let n = g.len();
        let gens: Vec<GeneratorId> = g.generators().collect();
        let exact = g.edges().iter().all(|&(_, _, m)| exact_pair(Some(m)).is_some());
        if exact {
            let mut cartan = vec![0i128; n * n];
            for i in 0..n {
                cartan[i * n + i] = 2;
                for j in i + 1..n {
                    let (cij, cji) = exact_pair(g.label(gens[i], gens[j])).unwrap();
                    cartan[i * n + j] = cij;
                    cartan[j * n + i] = cji;
                }
            }
            ShadowRep::Exact(Rep { n, cartan })
        } else {
            let mut cartan = vec![0f64; n * n];
            for i in 0..n {
                for j in 0..n {
                    cartan[i * n + j] = if i == j {
                        2.0
                    } else {
                        match g.label(gens[i], gens[j]) {
                            None => -2.0,
                            Some(2) => 0.0,
                            Some(m) => -2.0 * (std::f64::consts::PI / m as f64).cos(),
                        }
                    };
                }
            }
            ShadowRep::Float(Rep { n, cartan })
        }
    }

    pub(super) fn soundness(&self) -> Soundness {
        match self {
            ShadowRep::Exact(_) => Soundness::Exact,
            ShadowRep::Float(_) => Soundness::FloatingPoint { tolerance: SHADOW_TOLERANCE },
        }
    }

    pub(super) fn reduced_word(&self, letters: &[Letter]) -> Vec<Letter> {
        let idx = match self {
            ShadowRep::Exact(r) => r.reduced_word(letters),
            ShadowRep::Float(r) => r.reduced_word(letters),
        };
        idx.into_iter().map(|i| Letter::pos(GeneratorId::from_index(i))).collect()
    }

    pub(super) fn min_coset_rep(&self, letters: &[Letter], t: GenSet) -> Vec<Letter> {
        let stripped = match self {
            ShadowRep::Exact(r) => r.strip_right(letters, t),
            ShadowRep::Float(r) => r.strip_right(letters, t),
        };
        let mut all = letters.to_vec();
        all.extend(stripped.into_iter().map(|i| Letter::pos(GeneratorId::from_index(i))));
        self.reduced_word(&all)
    }
}
