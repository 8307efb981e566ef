//! Outcomes of probes and checkers.
//!
//! A report either passes, which is only evidence up to the checked depth,
//! or carries a counterexample whose witnesses can be replayed against the
//! property in isolation (see [`crate::checkers::replay`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ofe::Level;

/// The property a check falsifies when it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `a ≡₀ b` for all elements.
    Totality,
    /// `a ≡_{n+1} b` implies `a ≡_n b`.
    Nesting,
    Reflexivity,
    Symmetry,
    Transitivity,
    /// Restricting a level-(n+1) observation to level n gives the level-n one.
    ObservationCoherence,
    /// `a ≡_n b` implies `f(a) ≡_{n+1} f(b)`.
    Contractive,
    /// `a ≡_n b ≡_n f(a) ≡_n f(b)` implies `f(a) ≡_{n+1} f(b)`.
    ContractiveOnFixedPoints,
    /// `T(f) ≡_n f` implies `f(k) = 0` for all `k < n`.
    PartialFixpointLemma,
    /// `f^n(x) ≡_n f^{n+1}(x)`.
    IterateCoherence,
    /// `f^n(x) ≡_n f^n(y)`.
    SeedIndependence,
    /// `s(n) ≡_n s(n+1)`.
    SequenceCoherence,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Totality => "totality",
            Property::Nesting => "nesting",
            Property::Reflexivity => "reflexivity",
            Property::Symmetry => "symmetry",
            Property::Transitivity => "transitivity",
            Property::ObservationCoherence => "observation-coherence",
            Property::Contractive => "contractive",
            Property::ContractiveOnFixedPoints => "contractive-on-fixed-points",
            Property::PartialFixpointLemma => "partial-fixpoint-lemma",
            Property::IterateCoherence => "iterate-coherence",
            Property::SeedIndependence => "seed-independence",
            Property::SequenceCoherence => "sequence-coherence",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A witness element: `seed` with the checked operator applied `iterations` times.
///
/// Sampled and enumerated elements have `iterations == 0`; iterate pairs keep
/// their seed so the witness can be rebuilt and replayed.
#[derive(Debug, Clone)]
pub struct Witness<E> {
    pub seed: E,
    pub iterations: usize,
}

impl<E> Witness<E> {
    pub fn plain(seed: E) -> Self {
        Witness {
            seed,
            iterations: 0,
        }
    }

    pub fn iterate(seed: E, iterations: usize) -> Self {
        Witness { seed, iterations }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample<E> {
    pub property: Property,
    /// Level of the premise. For the contractiveness properties the violated
    /// conclusion lives one level higher.
    pub level: Level,
    pub witnesses: Vec<Witness<E>>,
    /// Rendered observations of the elements involved in the failure.
    pub observations: Vec<String>,
}

impl<E> Counterexample<E> {
    /// Level at which the failing equality was observed.
    pub fn conclusion_level(&self) -> Level {
        match self.property {
            Property::Contractive | Property::ContractiveOnFixedPoints => self.level.succ(),
            _ => self.level,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    /// Number of (element tuple, level) cases examined.
    pub cases: u64,
    /// Cases in which the property's hypothesis held.
    pub premise_hits: u64,
    /// Deepest level examined.
    pub depth: usize,
}

impl CheckStats {
    pub fn merge(&mut self, other: &CheckStats) {
        self.cases += other.cases;
        self.premise_hits += other.premise_hits;
        self.depth = self.depth.max(other.depth);
    }
}

#[derive(Debug, Clone)]
pub enum Verdict<E> {
    Pass,
    Counterexample(Box<Counterexample<E>>),
}

#[derive(Debug, Clone)]
pub struct CheckReport<E> {
    pub check: String,
    pub verdict: Verdict<E>,
    pub stats: CheckStats,
}

impl<E> CheckReport<E> {
    pub fn pass(check: impl Into<String>, stats: CheckStats) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Pass,
            stats,
        }
    }

    pub fn fail(check: impl Into<String>, stats: CheckStats, cx: Counterexample<E>) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Counterexample(Box::new(cx)),
            stats,
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self.verdict, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample<E>> {
        match &self.verdict {
            Verdict::Pass => None,
            Verdict::Counterexample(cx) => Some(cx),
        }
    }

    /// Combines two reports over the same property. The first counterexample wins.
    pub fn and(mut self, other: CheckReport<E>) -> Self {
        self.stats.merge(&other.stats);
        if self.is_pass() {
            self.verdict = other.verdict;
        }
        self
    }
}

impl<E> fmt::Display for CheckReport<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Pass => write!(
                f,
                "{}: pass to depth {} ({} cases, {} premise hits; finite-depth evidence only)",
                self.check, self.stats.depth, self.stats.cases, self.stats.premise_hits
            ),
            Verdict::Counterexample(cx) => {
                write!(
                    f,
                    "{}: counterexample to {} at level {} ({} cases, {} premise hits)",
                    self.check, cx.property, cx.level, self.stats.cases, self.stats.premise_hits
                )?;
                for obs in &cx.observations {
                    write!(f, "\n  {obs}")?;
                }
                Ok(())
            }
        }
    }
}
