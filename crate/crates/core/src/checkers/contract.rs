//! Falsifiers for contractiveness and contractiveness on fixed points.
//!
//! Both checks run over the same cases, so an operator passing the
//! contractive check on a sampler also passes the weaker check on it:
//!
//! * prefix-spliced pairs `(a, splice(a, n))`, which always satisfy `a ≡_n b`;
//! * iterate pairs `(f^n(x), f^n(y))` and `(f^n(x), f^{n+1}(x))` from sampled
//!   seeds, which are partial fixed points whenever `f` is contractive on
//!   fixed points and so populate the stronger premise.

use rayon::prelude::*;

use super::enumerate::{enumerate_natfun_tables, EnumCap};
use super::sampler::{Sample, Sampler};
use super::{merge_samples, SampleOutcome};
use crate::error::{CheckError, EvalError};
use crate::fixpoint::{fix_with_override, Operator};
use crate::instances::{NatFun, NatFunSpace};
use crate::ofe::{Level, Ofe, Value};
use crate::report::{CheckReport, CheckStats, Counterexample, Property, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Hypothesis {
    Contractive,
    OnFixedPoints,
}

impl Hypothesis {
    fn property(self) -> Property {
        match self {
            Hypothesis::Contractive => Property::Contractive,
            Hypothesis::OnFixedPoints => Property::ContractiveOnFixedPoints,
        }
    }

    fn check_name(self) -> &'static str {
        match self {
            Hypothesis::Contractive => "contractive",
            Hypothesis::OnFixedPoints => "cfp",
        }
    }

    /// Premise at level `n` given the four observations.
    fn premise<O: Eq + ?Sized>(self, a: &O, b: &O, fa: &O, fb: &O) -> bool {
        match self {
            Hypothesis::Contractive => a == b,
            Hypothesis::OnFixedPoints => a == b && b == fa && fa == fb,
        }
    }
}

/// Checks `a ≡_n b ⟹ f(a) ≡_{n+1} f(b)` for every `n < depth` on sampled cases.
pub fn check_contractive<I: Sample + Clone>(
    inst: &I,
    f: &Operator<I>,
    sampler: &Sampler,
    depth: Level,
) -> Result<CheckReport<I::Elem>, CheckError> {
    check_sampled(inst, f, sampler, depth, Hypothesis::Contractive)
}

/// Checks `a ≡_n b ≡_n f(a) ≡_n f(b) ⟹ f(a) ≡_{n+1} f(b)` for every
/// `n < depth` on sampled cases. The report's premise-hit count exposes
/// vacuous passes.
pub fn check_cfp<I: Sample + Clone>(
    inst: &I,
    f: &Operator<I>,
    sampler: &Sampler,
    depth: Level,
) -> Result<CheckReport<I::Elem>, CheckError> {
    check_sampled(inst, f, sampler, depth, Hypothesis::OnFixedPoints)
}

fn check_sampled<I: Sample + Clone>(
    inst: &I,
    f: &Operator<I>,
    sampler: &Sampler,
    depth: Level,
    hyp: Hypothesis,
) -> Result<CheckReport<I::Elem>, CheckError> {
    if depth.get() == 0 {
        return Err(CheckError::InvalidInput("depth must be at least 1".into()));
    }
    let outcomes: Vec<_> = (0..sampler.samples)
        .into_par_iter()
        .map(|i| cases_for_sample(inst, f, sampler, i, depth, hyp))
        .collect();
    merge_samples(hyp.check_name(), depth, outcomes)
}

struct Case<'a, E> {
    a: &'a E,
    fa: &'a E,
    b: &'a E,
    fb: &'a E,
    witnesses: [Witness<E>; 2],
}

fn test_case<I: Ofe>(
    inst: &I,
    n: Level,
    case: Case<'_, I::Elem>,
    hyp: Hypothesis,
    stats: &mut CheckStats,
) -> Result<Option<Counterexample<I::Elem>>, EvalError> {
    stats.cases += 1;
    let a = inst.truncate(n, case.a)?;
    let b = inst.truncate(n, case.b)?;
    let fa = inst.truncate(n, case.fa)?;
    let fb = inst.truncate(n, case.fb)?;
    if !hyp.premise(&a, &b, &fa, &fb) {
        return Ok(None);
    }
    stats.premise_hits += 1;
    let fa1 = inst.truncate(n.succ(), case.fa)?;
    let fb1 = inst.truncate(n.succ(), case.fb)?;
    if fa1 == fb1 {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        property: hyp.property(),
        level: n,
        witnesses: case.witnesses.into(),
        observations: vec![
            format!("a at level {n}: {a:?}"),
            format!("b at level {n}: {b:?}"),
            format!("f(a) at level {}: {fa1:?}", n.succ()),
            format!("f(b) at level {}: {fb1:?}", n.succ()),
        ],
    }))
}

fn cases_for_sample<I: Sample + Clone>(
    inst: &I,
    f: &Operator<I>,
    sampler: &Sampler,
    index: usize,
    depth: Level,
    hyp: Hypothesis,
) -> SampleOutcome<I::Elem> {
    let mut rng = sampler.rng(index);
    let bounds = &sampler.bounds;
    let mut stats = CheckStats {
        depth: depth.get(),
        ..CheckStats::default()
    };

    for n in depth.below() {
        let a = inst.sample(&mut rng, bounds);
        let b = inst.splice(&a, n, &mut rng, bounds)?;
        let (fa, fb) = (f.apply(&a), f.apply(&b));
        let case = Case {
            a: &a,
            fa: &fa,
            b: &b,
            fb: &fb,
            witnesses: [Witness::plain(a.clone()), Witness::plain(b.clone())],
        };
        if let Some(cx) = test_case(inst, n, case, hyp, &mut stats)? {
            return Ok((stats, Some(cx)));
        }
    }

    let x = inst.sample(&mut rng, bounds);
    let y = inst.sample(&mut rng, bounds);
    let hx = fix_with_override(inst, f, x.clone());
    let hy = fix_with_override(inst, f, y.clone());
    for n in depth.below() {
        let k = n.get();
        let (xn, xn1, xn2) = (hx.iterate(k), hx.iterate(k + 1), hx.iterate(k + 2));
        let (yn, yn1) = (hy.iterate(k), hy.iterate(k + 1));
        let across = Case {
            a: &xn,
            fa: &xn1,
            b: &yn,
            fb: &yn1,
            witnesses: [
                Witness::iterate(x.clone(), k),
                Witness::iterate(y.clone(), k),
            ],
        };
        if let Some(cx) = test_case(inst, n, across, hyp, &mut stats)? {
            return Ok((stats, Some(cx)));
        }
        let along = Case {
            a: &xn,
            fa: &xn1,
            b: &xn1,
            fb: &xn2,
            witnesses: [
                Witness::iterate(x.clone(), k),
                Witness::iterate(x.clone(), k + 1),
            ],
        };
        if let Some(cx) = test_case(inst, n, along, hyp, &mut stats)? {
            return Ok((stats, Some(cx)));
        }
    }
    Ok((stats, None))
}

/// Exhaustive contractiveness check over all prefix tables of length `len`
/// with values `≤ max_value`. Pairs are visited by level, then
/// lexicographically, so the reported witness is the least one.
pub fn check_contractive_exhaustive(
    f: &Operator<NatFunSpace>,
    len: usize,
    max_value: Value,
    depth: Level,
    cap: EnumCap,
) -> Result<CheckReport<NatFun>, CheckError> {
    check_exhaustive(f, len, max_value, depth, cap, Hypothesis::Contractive)
}

/// Exhaustive check of contractiveness on fixed points; see
/// [`check_contractive_exhaustive`].
pub fn check_cfp_exhaustive(
    f: &Operator<NatFunSpace>,
    len: usize,
    max_value: Value,
    depth: Level,
    cap: EnumCap,
) -> Result<CheckReport<NatFun>, CheckError> {
    check_exhaustive(f, len, max_value, depth, cap, Hypothesis::OnFixedPoints)
}

fn check_exhaustive(
    f: &Operator<NatFunSpace>,
    len: usize,
    max_value: Value,
    depth: Level,
    cap: EnumCap,
    hyp: Hypothesis,
) -> Result<CheckReport<NatFun>, CheckError> {
    if depth.get() == 0 {
        return Err(CheckError::InvalidInput("depth must be at least 1".into()));
    }
    let d = depth.get();
    let tables: Vec<NatFun> = enumerate_natfun_tables(len, max_value, cap)?.collect();
    // Observations to level `depth` of every table and its image; the
    // function-space observation at level m is the length-m prefix.
    let observed: Vec<(Vec<Value>, Vec<Value>)> = tables
        .par_iter()
        .map(|t| Ok((t.prefix(d)?, f.apply(t).prefix(d)?)))
        .collect::<Result<_, EvalError>>()?;

    let name = format!("{}-exhaustive", hyp.check_name());
    let mut stats = CheckStats {
        depth: d,
        ..CheckStats::default()
    };
    for n in 0..d {
        let rows: Vec<(u64, Option<usize>)> = observed
            .par_iter()
            .map(|(a, fa)| {
                let mut hits = 0;
                for (j, (b, fb)) in observed.iter().enumerate() {
                    if hyp.premise(&a[..n], &b[..n], &fa[..n], &fb[..n]) {
                        hits += 1;
                        if fa[..=n] != fb[..=n] {
                            return (hits, Some(j));
                        }
                    }
                }
                (hits, None)
            })
            .collect();
        for (i, (hits, failure)) in rows.iter().enumerate() {
            stats.premise_hits += hits;
            if let Some(j) = *failure {
                stats.cases += (i * observed.len() + j + 1) as u64;
                let (a, fa) = &observed[i];
                let (b, fb) = &observed[j];
                let cx = Counterexample {
                    property: hyp.property(),
                    level: Level(n),
                    witnesses: vec![
                        Witness::plain(tables[i].clone()),
                        Witness::plain(tables[j].clone()),
                    ],
                    observations: vec![
                        format!("a at level {n}: {:?}", &a[..n]),
                        format!("b at level {n}: {:?}", &b[..n]),
                        format!("f(a) at level {}: {:?}", n + 1, &fa[..=n]),
                        format!("f(b) at level {}: {:?}", n + 1, &fb[..=n]),
                    ],
                };
                return Ok(CheckReport::fail(name, stats, cx));
            }
        }
        stats.cases += (observed.len() * observed.len()) as u64;
    }
    Ok(CheckReport::pass(name, stats))
}
