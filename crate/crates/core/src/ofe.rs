//! Ordered families of equivalences and their completions.
//!
//! An instance exposes, for every level `n`, a canonical finite observation
//! of each element. Two elements are `n`-equal exactly when their level-`n`
//! observations coincide, so every `≡_n` is decidable even when elements are
//! infinite objects such as functions on the naturals. Level 0 always
//! observes nothing, which makes `≡₀` total.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::report::{CheckReport, CheckStats, Counterexample, Property, Witness};

/// Values carried by function-space and stream elements.
pub type Value = u64;

/// A step index.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Level(pub usize);

impl Level {
    pub const ZERO: Level = Level(0);

    pub fn get(self) -> usize {
        self.0
    }

    pub fn succ(self) -> Level {
        Level(self.0 + 1)
    }

    pub fn pred(self) -> Option<Level> {
        self.0.checked_sub(1).map(Level)
    }

    /// All levels `0..self`.
    pub fn below(self) -> impl Iterator<Item = Level> {
        (0..self.0).map(Level)
    }

    /// All levels `0..=self`.
    pub fn up_to(self) -> impl Iterator<Item = Level> {
        (0..=self.0).map(Level)
    }
}

impl From<usize> for Level {
    fn from(n: usize) -> Self {
        Level(n)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered family of equivalences with observation-based equality.
pub trait Ofe: Send + Sync {
    type Elem: Clone + Send + Sync + 'static;
    /// Canonical finite datum; level-`n` observations are compared for `≡_n`.
    type Obs: Clone + Eq + fmt::Debug + Send + Sync;

    /// Short name identifying the instance in reports.
    fn tag(&self) -> String;

    /// Observation of `a` at level `n`. Level 0 yields the empty observation.
    fn truncate(&self, n: Level, a: &Self::Elem) -> Result<Self::Obs, EvalError>;

    /// Restriction of a level-`n` observation to level `m ≤ n`.
    fn restrict(&self, obs: &Self::Obs, m: Level) -> Self::Obs;

    fn approx_eq(&self, n: Level, a: &Self::Elem, b: &Self::Elem) -> Result<bool, EvalError> {
        Ok(self.truncate(n, a)? == self.truncate(n, b)?)
    }
}

/// An OFE in which every coherent sequence has a limit.
pub trait Cofe: Ofe {
    /// The limit of `s`. Observing the result at level `n` depends only on
    /// the first `n + 1` terms of `s`; coherence is never validated here.
    fn limit(&self, s: &Seq<Self::Elem>) -> Self::Elem;
}

/// A total sequence of elements, indexed from 0.
pub struct Seq<E> {
    term: Arc<dyn Fn(usize) -> E + Send + Sync>,
}

impl<E> Clone for Seq<E> {
    fn clone(&self) -> Self {
        Seq {
            term: Arc::clone(&self.term),
        }
    }
}

impl<E> Seq<E> {
    pub fn new(term: impl Fn(usize) -> E + Send + Sync + 'static) -> Self {
        Seq {
            term: Arc::new(term),
        }
    }

    pub fn at(&self, i: usize) -> E {
        (self.term)(i)
    }
}

impl<E: Clone + Send + Sync + 'static> Seq<E> {
    pub fn constant(e: E) -> Self {
        Seq::new(move |_| e.clone())
    }
}

impl<E: 'static> Seq<E> {
    /// The sequence `i ↦ self(index(i))`.
    pub fn reindex(&self, index: impl Fn(usize) -> usize + Send + Sync + 'static) -> Seq<E> {
        let inner = self.clone();
        Seq::new(move |i| inner.at(index(i)))
    }

    /// Pointwise image under `f`.
    pub fn map<F: 'static>(&self, f: impl Fn(E) -> F + Send + Sync + 'static) -> Seq<F> {
        let inner = self.clone();
        Seq::new(move |i| f(inner.at(i)))
    }
}

/// A Cauchy modulus: beyond index `k(n)` all terms are `n`-equal.
///
/// The raw function need not be monotone; [`Modulus::at`] returns the
/// running maximum `max(k(0), …, k(n))`.
#[derive(Clone)]
pub struct Modulus {
    raw: Arc<dyn Fn(Level) -> usize + Send + Sync>,
}

impl Modulus {
    pub fn new(raw: impl Fn(Level) -> usize + Send + Sync + 'static) -> Self {
        Modulus { raw: Arc::new(raw) }
    }

    pub fn at(&self, n: Level) -> usize {
        n.up_to().map(|m| (self.raw)(m)).max().unwrap_or(0)
    }
}

/// `d(a, b)` as far as it can be resolved by observing up to a finite level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DyadicDistance {
    /// Exactly `2^-exponent`.
    Exact { exponent: usize },
    /// No disagreement up to the resolution: `d ≤ 2^-exponent`, possibly 0.
    AtMost { exponent: usize },
}

impl DyadicDistance {
    pub fn exponent(self) -> usize {
        match self {
            DyadicDistance::Exact { exponent } | DyadicDistance::AtMost { exponent } => exponent,
        }
    }

    pub fn value(self) -> f64 {
        0.5f64.powi(self.exponent() as i32)
    }

    pub fn is_exact(self) -> bool {
        matches!(self, DyadicDistance::Exact { .. })
    }
}

impl fmt::Display for DyadicDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicDistance::Exact { exponent } => write!(f, "2^-{exponent}"),
            DyadicDistance::AtMost { exponent } => write!(f, "<= 2^-{exponent}"),
        }
    }
}

/// Distance between `a` and `b` resolved to level `res`.
///
/// Returns `Exact(2^-(m-1))` for the least `m ≤ res` with `a ≢_m b`, and
/// `AtMost(2^-res)` when no such level exists.
pub fn distance_at<I: Ofe + ?Sized>(
    inst: &I,
    a: &I::Elem,
    b: &I::Elem,
    res: Level,
) -> Result<DyadicDistance, EvalError> {
    for m in 1..=res.get() {
        if !inst.approx_eq(Level(m), a, b)? {
            return Ok(DyadicDistance::Exact { exponent: m - 1 });
        }
    }
    Ok(DyadicDistance::AtMost {
        exponent: res.get(),
    })
}

/// Lazy limit of `s`. See [`Cofe::limit`].
pub fn limit<I: Cofe + ?Sized>(inst: &I, s: &Seq<I::Elem>) -> I::Elem {
    inst.limit(s)
}

/// Checks `s(n) ≡_n s(n+1)` for every `n < depth`, reporting the least failure.
pub fn coherence_check<I: Ofe + ?Sized>(
    inst: &I,
    s: &Seq<I::Elem>,
    depth: Level,
) -> Result<CheckReport<I::Elem>, EvalError> {
    let mut stats = CheckStats {
        depth: depth.get(),
        ..CheckStats::default()
    };
    let mut current = s.at(0);
    for n in depth.below() {
        let next = s.at(n.get() + 1);
        stats.cases += 1;
        stats.premise_hits += 1;
        let lhs = inst.truncate(n, &current)?;
        let rhs = inst.truncate(n, &next)?;
        if lhs != rhs {
            let cx = Counterexample {
                property: Property::SequenceCoherence,
                level: n,
                witnesses: vec![Witness::plain(current), Witness::plain(next)],
                observations: vec![
                    format!("s({}) at level {}: {:?}", n, n, lhs),
                    format!("s({}) at level {}: {:?}", n.get() + 1, n, rhs),
                ],
            };
            return Ok(CheckReport::fail("coherence", stats, cx));
        }
        current = next;
    }
    Ok(CheckReport::pass("coherence", stats))
}

/// Extracts a coherent subsequence from a Cauchy sequence `s` with modulus `m`.
///
/// The result is `y(n) = s(M(n+1))` with `M` the normalized modulus. It is
/// coherent whenever `m` is a valid modulus for `s`, and its limit agrees
/// with the convergence point of `s` at every level.
pub fn coherent_of_cauchy<E: 'static>(s: &Seq<E>, m: &Modulus) -> Seq<E> {
    let m = m.clone();
    s.reindex(move |n| m.at(Level(n + 1)))
}
