//! Fixed points as limits of iterates.
//!
//! For an operator that is contractive, or merely contractive on fixed
//! points, the iterates `f^n(x)` form a coherent sequence from any seed and
//! their limit is the unique fixed point. Observing that limit at level `n`
//! therefore needs exactly `n` iterations: `query(n) = truncate(n, f^n(x))`.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{CheckError, EvalError, UnverifiedOperator};
use crate::ofe::{Level, Ofe};
use crate::report::{CheckReport, CheckStats, Counterexample, Property, Witness};

/// What the caller claims about an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Contractive,
    ContractiveOnFixedPoints,
    Unverified,
}

/// A total endomap on the elements of one instance.
pub struct Operator<I: Ofe> {
    name: String,
    mode: Mode,
    apply: ApplyFn<I::Elem>,
}

type ApplyFn<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

impl<I: Ofe> Clone for Operator<I> {
    fn clone(&self) -> Self {
        Operator {
            name: self.name.clone(),
            mode: self.mode,
            apply: Arc::clone(&self.apply),
        }
    }
}

impl<I: Ofe> fmt::Debug for Operator<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator")
            .field("name", &self.name)
            .field("mode", &self.mode)
            .finish_non_exhaustive()
    }
}

impl<I: Ofe> Operator<I> {
    pub fn new(
        name: impl Into<String>,
        mode: Mode,
        apply: impl Fn(&I::Elem) -> I::Elem + Send + Sync + 'static,
    ) -> Self {
        Operator {
            name: name.into(),
            mode,
            apply: Arc::new(apply),
        }
    }

    /// The identity map, which is never contractive.
    pub fn identity() -> Self {
        Operator::new("identity", Mode::Unverified, |a: &I::Elem| a.clone())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn apply(&self, a: &I::Elem) -> I::Elem {
        (self.apply)(a)
    }
}

/// `f` applied `n` times to `x0`.
pub fn iterate<I: Ofe>(f: &Operator<I>, x0: &I::Elem, n: usize) -> I::Elem {
    let mut x = x0.clone();
    for _ in 0..n {
        x = f.apply(&x);
    }
    x
}

/// Lazily observable fixed point of an operator, started from a seed.
///
/// Iterates are computed once and shared by every query; the handle may be
/// queried from several threads.
pub struct FixHandle<I: Ofe> {
    inst: I,
    op: Operator<I>,
    seed: I::Elem,
    iterates: Mutex<Vec<I::Elem>>,
    overridden: bool,
}

impl<I: Ofe> fmt::Debug for FixHandle<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixHandle")
            .field("instance", &self.inst.tag())
            .field("operator", &self.op)
            .field("overridden", &self.overridden)
            .finish_non_exhaustive()
    }
}

/// Fixed point of a declared-contractive or contractive-on-fixed-points operator.
pub fn fix<I: Ofe + Clone>(
    inst: &I,
    f: &Operator<I>,
    x0: I::Elem,
) -> Result<FixHandle<I>, UnverifiedOperator> {
    match f.mode() {
        Mode::Unverified => Err(UnverifiedOperator(f.name().to_string())),
        _ => Ok(FixHandle::new(inst, f, x0, false)),
    }
}

/// Like [`fix`], but accepts unverified operators. The handle then carries a
/// caveat: its observations need not stabilize or be seed independent.
pub fn fix_with_override<I: Ofe + Clone>(inst: &I, f: &Operator<I>, x0: I::Elem) -> FixHandle<I> {
    let overridden = f.mode() == Mode::Unverified;
    FixHandle::new(inst, f, x0, overridden)
}

impl<I: Ofe + Clone> FixHandle<I> {
    fn new(inst: &I, op: &Operator<I>, seed: I::Elem, overridden: bool) -> Self {
        FixHandle {
            inst: inst.clone(),
            op: op.clone(),
            iterates: Mutex::new(vec![seed.clone()]),
            seed,
            overridden,
        }
    }
}

impl<I: Ofe> FixHandle<I> {
    pub fn seed(&self) -> &I::Elem {
        &self.seed
    }

    pub fn operator(&self) -> &Operator<I> {
        &self.op
    }

    /// Set when the operator was iterated without a contractiveness declaration.
    pub fn has_caveat(&self) -> bool {
        self.overridden
    }

    /// `f^n(seed)`, memoized.
    pub fn iterate(&self, n: usize) -> I::Elem {
        let mut its = self.iterates.lock().unwrap_or_else(|e| e.into_inner());
        while its.len() <= n {
            let next = self.op.apply(its.last().expect("seed is always present"));
            its.push(next);
        }
        its[n].clone()
    }

    /// Level-`n` observation of the fixed point: `truncate(n, f^n(seed))`.
    pub fn query(&self, n: Level) -> Result<I::Obs, EvalError> {
        self.inst.truncate(n, &self.iterate(n.get()))
    }

    /// Least `k ≤ depth` such that every iterate from `k` to `depth` has the
    /// same level-`depth` observation. Informational only.
    pub fn stabilized_at(&self, depth: Level) -> Result<usize, EvalError> {
        let target = self.query(depth)?;
        let mut k = depth.get();
        while k > 0 && self.inst.truncate(depth, &self.iterate(k - 1))? == target {
            k -= 1;
        }
        Ok(k)
    }
}

/// Checks `f^n(x0) ≡_n f^{n+1}(x0)` for all `n < depth`.
///
/// This holds for every operator that is contractive on fixed points; the
/// least failing level is evidence that `f` is not.
pub fn iterate_coherence_probe<I: Ofe + Clone>(
    inst: &I,
    f: &Operator<I>,
    x0: &I::Elem,
    depth: Level,
) -> Result<CheckReport<I::Elem>, CheckError> {
    if depth.get() == 0 {
        return Err(CheckError::InvalidInput("depth must be at least 1".into()));
    }
    let handle = fix_with_override(inst, f, x0.clone());
    let mut stats = CheckStats {
        depth: depth.get(),
        ..CheckStats::default()
    };
    for n in depth.below() {
        stats.cases += 1;
        stats.premise_hits += 1;
        let lhs = inst.truncate(n, &handle.iterate(n.get()))?;
        let rhs = inst.truncate(n, &handle.iterate(n.get() + 1))?;
        if lhs != rhs {
            let cx = Counterexample {
                property: Property::IterateCoherence,
                level: n,
                witnesses: vec![
                    Witness::iterate(x0.clone(), n.get()),
                    Witness::iterate(x0.clone(), n.get() + 1),
                ],
                observations: vec![
                    format!("f^{n}(x0) at level {n}: {lhs:?}"),
                    format!("f^{}(x0) at level {n}: {rhs:?}", n.get() + 1),
                ],
            };
            return Ok(CheckReport::fail("iterate-coherence", stats, cx));
        }
    }
    Ok(CheckReport::pass("iterate-coherence", stats))
}

/// Checks `truncate(n, f^n(x)) = truncate(n, f^n(y))` for all `n ≤ depth`
/// and all pairs of seeds.
pub fn seed_independence_probe<I: Ofe + Clone>(
    inst: &I,
    f: &Operator<I>,
    seeds: &[I::Elem],
    depth: Level,
) -> Result<CheckReport<I::Elem>, CheckError> {
    if seeds.len() < 2 {
        return Err(CheckError::InvalidInput(
            "seed independence needs at least two seeds".into(),
        ));
    }
    let handles: Vec<_> = seeds
        .iter()
        .map(|s| fix_with_override(inst, f, s.clone()))
        .collect();
    let mut stats = CheckStats {
        depth: depth.get(),
        ..CheckStats::default()
    };
    for n in depth.up_to() {
        let obs = handles
            .iter()
            .map(|h| h.query(n))
            .collect::<Result<Vec<_>, _>>()?;
        for i in 0..seeds.len() {
            for j in i + 1..seeds.len() {
                stats.cases += 1;
                stats.premise_hits += 1;
                if obs[i] != obs[j] {
                    let cx = Counterexample {
                        property: Property::SeedIndependence,
                        level: n,
                        witnesses: vec![
                            Witness::iterate(seeds[i].clone(), n.get()),
                            Witness::iterate(seeds[j].clone(), n.get()),
                        ],
                        observations: vec![
                            format!("seed #{i}: f^{n} at level {n}: {:?}", obs[i]),
                            format!("seed #{j}: f^{n} at level {n}: {:?}", obs[j]),
                        ],
                    };
                    return Ok(CheckReport::fail("seed-independence", stats, cx));
                }
            }
        }
    }
    Ok(CheckReport::pass("seed-independence", stats))
}
