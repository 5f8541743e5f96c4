//! Words in Artin generators and the exact oracles that compare them.
//!
//! Three oracle modes are available:
//!
//! * [`OracleMode::Raag`]: every edge label is 2. Normal forms are the
//!   shortlex-least words reachable by free cancellation and commutation.
//! * [`OracleMode::Dihedral`]: at most two generators. Normal forms are
//!   Garside left-greedy forms `Δ^k s_1 … s_r`.
//! * [`OracleMode::CoxeterShadow`]: any graph, but equality is decided in
//!   the Coxeter quotient through the reflection representation.
//!
//! Words are never reduced on construction; only [`WordOracle::normal_form`]
//! rewrites them.

mod dihedral;
mod raag;
mod shadow;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DefiningGraph, GenSet, GeneratorId};

pub use dihedral::DihedralForm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle mode {mode} does not apply to this graph: {reason}")]
    Inapplicable { mode: OracleMode, reason: String },
    #[error("operation {op} is not supported in {mode} mode")]
    Unsupported { mode: OracleMode, op: &'static str },
    #[error("unknown generator {0:?} in word")]
    UnknownGenerator(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    Raag,
    Dihedral,
    CoxeterShadow,
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMode::Raag => "raag",
            OracleMode::Dihedral => "dihedral",
            OracleMode::CoxeterShadow => "coxeter-shadow",
        })
    }
}

impl std::str::FromStr for OracleMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raag" => Ok(OracleMode::Raag),
            "dihedral" => Ok(OracleMode::Dihedral),
            "coxeter-shadow" => Ok(OracleMode::CoxeterShadow),
            _ => Err(format!("unknown oracle mode {s:?} (expected raag, dihedral or coxeter-shadow)")),
        }
    }
}

impl OracleMode {
    /// Checks the mode's applicability predicate.
    pub fn check(self, g: &DefiningGraph) -> Result<(), OracleError> {
        let fail = |reason: String| Err(OracleError::Inapplicable { mode: self, reason });
        match self {
            OracleMode::Raag => match g.edges().into_iter().find(|&(_, _, m)| m != 2) {
                Some((u, v, m)) => fail(format!("edge {}-{} has label {m}", g.name(u), g.name(v))),
                None => Ok(()),
            },
            OracleMode::Dihedral if g.len() > 2 => fail(format!("{} generators (at most 2 allowed)", g.len())),
            _ => Ok(()),
        }
    }
}

/// A generator or its inverse. Ordered as `a < a⁻¹ < b < b⁻¹ < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GeneratorId,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: GeneratorId) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: GeneratorId) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A signed generator sequence; ordered shortlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        self.0.iter().rev().map(|l| l.inv()).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Generators that occur in the word.
    pub fn support(&self) -> GenSet {
        self.0.iter().map(|l| l.gen).collect()
    }

    /// Product of the given generators in order (all positive).
    pub fn product_of(gens: impl IntoIterator<Item = GeneratorId>) -> Word {
        gens.into_iter().map(Letter::pos).collect()
    }

    /// Parses `a b a-` style text: whitespace-separated tokens, trailing `-` for inverses.
    pub fn parse(g: &DefiningGraph, text: &str) -> Result<Word, OracleError> {
        text.split_whitespace()
            .map(|tok| {
                let (name, inverse) = match tok.strip_suffix('-') {
                    Some(base) => (base, true),
                    None => (tok, false),
                };
                g.generator(name)
                    .map(|gen| Letter { gen, inverse })
                    .ok_or_else(|| OracleError::UnknownGenerator(tok.to_string()))
            })
            .collect()
    }

    /// Tokens in the CLI word syntax; the identity has no tokens.
    pub fn tokens(&self, g: &DefiningGraph) -> Vec<String> {
        self.0
            .iter()
            .map(|l| if l.inverse { format!("{}-", g.name(l.gen)) } else { g.name(l.gen).to_string() })
            .collect()
    }

    pub fn display(&self, g: &DefiningGraph) -> String {
        self.tokens(g).join(" ")
    }

    fn check(&self, g: &DefiningGraph) -> Result<(), OracleError> {
        match self.0.iter().find(|l| l.gen.index() >= g.len()) {
            Some(l) => Err(OracleError::UnknownGenerator(format!("#{}", l.gen.index()))),
            None => Ok(()),
        }
    }
}

/// Canonical representative of a group element under one oracle mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub word: Word,
    pub mode: OracleMode,
}

/// Whether an oracle decides equality exactly or up to a floating-point tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Soundness {
    Exact,
    /// Reflection matrices in floating point with the given per-entry tolerance.
    FloatingPoint { tolerance: f64 },
}

#[derive(Debug, Clone)]
enum Engine {
    Raag,
    Free,
    Dihedral(dihedral::Dihedral),
    Shadow(shadow::ShadowRep),
}

/// Word problem, parabolic membership, and coset canonicalization for one graph.
#[derive(Debug, Clone)]
pub struct WordOracle {
    graph: DefiningGraph,
    mode: OracleMode,
    engine: Engine,
}

impl WordOracle {
    pub fn new(graph: &DefiningGraph, mode: OracleMode) -> Result<Self, OracleError> {
        mode.check(graph)?;
        let engine = match mode {
            OracleMode::Raag => Engine::Raag,
            OracleMode::Dihedral => match dihedral::Dihedral::from_graph(graph) {
                Some(d) => Engine::Dihedral(d),
                None => Engine::Free,
            },
            OracleMode::CoxeterShadow => Engine::Shadow(shadow::ShadowRep::new(graph)),
        };
        Ok(WordOracle { graph: graph.clone(), mode, engine })
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    pub fn soundness(&self) -> Soundness {
        match &self.engine {
            Engine::Shadow(rep) => rep.soundness(),
            _ => Soundness::Exact,
        }
    }

    pub fn parse(&self, text: &str) -> Result<Word, OracleError> {
        Word::parse(&self.graph, text)
    }

    /// Canonical form; equal forms iff equal elements (in `W_Γ` for the shadow mode).
    ///
    /// Panics if the word mentions a generator outside the graph.
    pub fn normal_form(&self, w: &Word) -> NormalForm {
        if let Err(e) = w.check(&self.graph) {
            panic!("{e}");
        }
        let word = match &self.engine {
            Engine::Raag => raag::normal_form(&self.graph, w.letters()),
            Engine::Free => raag::reduce(&self.graph, w.letters()),
            Engine::Dihedral(d) => d.normal_form(w.letters()).to_word(d),
            Engine::Shadow(rep) => rep.reduced_word(w.letters()),
        };
        NormalForm { word: Word(word), mode: self.mode }
    }

    /// Structured Garside form in dihedral mode.
    pub fn dihedral_form(&self, w: &Word) -> Option<DihedralForm> {
        match &self.engine {
            Engine::Dihedral(d) => Some(d.normal_form(w.letters())),
            _ => None,
        }
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> bool {
        self.normal_form(w1) == self.normal_form(w2)
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.normal_form(w).word.is_empty()
    }

    /// Membership of `w` in the standard parabolic subgroup generated by `t`.
    pub fn in_standard_parabolic(&self, w: &Word, t: GenSet) -> Result<bool, OracleError> {
        match &self.engine {
            // Normal forms in these modes are geodesic, and geodesics of elements of
            // a standard parabolic never leave its generators.
            Engine::Raag | Engine::Free | Engine::Shadow(_) => Ok(self.normal_form(w).word.support().is_subset(t)),
            Engine::Dihedral(d) => Ok(d.in_standard_parabolic(w.letters(), t, self.graph.vertex_set())),
        }
    }

    /// Shortlex-least word of the coset `w A_t`.
    pub fn min_coset_rep(&self, w: &Word, t: GenSet) -> Result<Word, OracleError> {
        match &self.engine {
            Engine::Raag | Engine::Free => Ok(Word(raag::min_coset_rep(&self.graph, w.letters(), t))),
            Engine::Shadow(rep) => Ok(Word(rep.min_coset_rep(w.letters(), t))),
            Engine::Dihedral(_) => Err(OracleError::Unsupported { mode: self.mode, op: "min_coset_rep" }),
        }
    }

    /// Whether `w1 A_t1` and `w2 A_t2` share an element.
    pub fn cosets_intersect(&self, w1: &Word, t1: GenSet, w2: &Word, t2: GenSet) -> Result<bool, OracleError> {
        Ok(self.coset_meet(&[(w1.clone(), t1), (w2.clone(), t2)])?.is_some())
    }

    /// Intersection of several cosets `w_i A_{t_i}`, returned as `h A_{∩ t_i}` when nonempty.
    ///
    /// Standard parabolic subgroups intersect in the standard parabolic on the
    /// common generators, so each pairwise step produces an explicit element
    /// and the result is exact for any number of cosets.
    pub fn coset_meet(&self, cosets: &[(Word, GenSet)]) -> Result<Option<(Word, GenSet)>, OracleError> {
        if matches!(self.engine, Engine::Dihedral(_)) {
            return Err(OracleError::Unsupported { mode: self.mode, op: "coset intersection" });
        }
        let Some((first, rest)) = cosets.split_first() else {
            return Ok(Some((Word::identity(), self.graph.vertex_set())));
        };
        let (mut h, mut s) = (self.normal_form(&first.0).word, first.1);
        for (g, t) in rest {
            let x = h.inverse().concat(g);
            let p = self.min_coset_rep(&x, *t)?;
            if !p.support().is_subset(s) {
                return Ok(None);
            }
            h = self.normal_form(&h.concat(&p)).word;
            s = s.intersection(*t);
        }
        Ok(Some((self.min_coset_rep(&h, s)?, s)))
    }
}
