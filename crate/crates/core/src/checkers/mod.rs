//! Finite-depth falsifiers for the OFE axioms, contractiveness,
//! contractiveness on fixed points, and the partial fixed point lemma.
//!
//! A counterexample is a genuine refutation and can be replayed with
//! [`replay`]; a pass only says nothing was found up to the checked depth.
//! Checks over samples run in parallel and are merged by sample index, so
//! reports are identical to a sequential run.

mod contract;
mod enumerate;
mod laws;
mod sampler;

pub use contract::{
    check_cfp, check_cfp_exhaustive, check_contractive, check_contractive_exhaustive,
};
pub use enumerate::{
    check_partial_fixpoint_lemma, enumerate_natfun_tables, replay_lemma, table_count, EnumCap,
    TableEnumeration,
};
pub use laws::check_ofe_laws;
pub use sampler::{Bounds, Sample, SampleRng, Sampler, DEFAULT_RNG_SEED, DEFAULT_SAMPLES};

use crate::error::{CheckError, EvalError};
use crate::fixpoint::{iterate, Operator};
use crate::ofe::{Level, Ofe};
use crate::report::{CheckReport, CheckStats, Counterexample, Property};

/// Stats and first counterexample of one sample.
pub(crate) type SampleOutcome<E> = Result<(CheckStats, Option<Counterexample<E>>), EvalError>;

pub(crate) fn merge_samples<E>(
    check: &str,
    depth: Level,
    outcomes: Vec<SampleOutcome<E>>,
) -> Result<CheckReport<E>, CheckError> {
    let mut stats = CheckStats {
        depth: depth.get(),
        ..CheckStats::default()
    };
    let mut first = None;
    for outcome in outcomes {
        let (s, cx) = outcome?;
        stats.merge(&s);
        if first.is_none() {
            first = cx;
        }
    }
    Ok(match first {
        None => CheckReport::pass(check, stats),
        Some(cx) => CheckReport::fail(check, stats, cx),
    })
}

/// Re-evaluates the violated property on the stored witnesses alone.
///
/// Returns `true` when the counterexample reproduces. Witnesses built from
/// iterates need the operator; the partial fixed point lemma is replayed by
/// [`replay_lemma`].
pub fn replay<I: Ofe>(
    inst: &I,
    f: Option<&Operator<I>>,
    cx: &Counterexample<I::Elem>,
) -> Result<bool, CheckError> {
    let needs_op = |p: Property| {
        matches!(
            p,
            Property::Contractive
                | Property::ContractiveOnFixedPoints
                | Property::IterateCoherence
                | Property::SeedIndependence
        )
    };
    let op = match f {
        Some(op) => Some(op),
        None if needs_op(cx.property) || cx.witnesses.iter().any(|w| w.iterations > 0) => {
            return Err(CheckError::InvalidInput(format!(
                "replaying {} needs the operator",
                cx.property
            )))
        }
        None => None,
    };
    let elems: Vec<I::Elem> = cx
        .witnesses
        .iter()
        .map(|w| match op {
            Some(op) => iterate(op, &w.seed, w.iterations),
            None => w.seed.clone(),
        })
        .collect();
    let arity = |k: usize| {
        if elems.len() == k {
            Ok(())
        } else {
            Err(CheckError::InvalidInput(format!(
                "{} witnesses consist of {k} elements, got {}",
                cx.property,
                elems.len()
            )))
        }
    };
    let n = cx.level;
    let eq = |m: Level, i: usize, j: usize| inst.approx_eq(m, &elems[i], &elems[j]);
    let reproduced = match cx.property {
        Property::Totality => {
            arity(2)?;
            !eq(Level::ZERO, 0, 1)?
        }
        Property::Nesting => {
            arity(2)?;
            eq(n.succ(), 0, 1)? && !eq(n, 0, 1)?
        }
        Property::Reflexivity => {
            arity(1)?;
            !eq(n, 0, 0)?
        }
        Property::Symmetry => {
            arity(2)?;
            eq(n, 0, 1)? != eq(n, 1, 0)?
        }
        Property::Transitivity => {
            arity(3)?;
            eq(n, 0, 1)? && eq(n, 1, 2)? && !eq(n, 0, 2)?
        }
        Property::ObservationCoherence => {
            arity(1)?;
            let upper = inst.truncate(n.succ(), &elems[0])?;
            inst.restrict(&upper, n) != inst.truncate(n, &elems[0])?
        }
        Property::Contractive | Property::ContractiveOnFixedPoints => {
            arity(2)?;
            let op = op.expect("checked above");
            let (fa, fb) = (op.apply(&elems[0]), op.apply(&elems[1]));
            let premise = if cx.property == Property::Contractive {
                eq(n, 0, 1)?
            } else {
                let b = inst.truncate(n, &elems[1])?;
                inst.truncate(n, &elems[0])? == b
                    && inst.truncate(n, &fa)? == b
                    && inst.truncate(n, &fb)? == b
            };
            premise && !inst.approx_eq(n.succ(), &fa, &fb)?
        }
        Property::IterateCoherence | Property::SeedIndependence | Property::SequenceCoherence => {
            arity(2)?;
            !eq(n, 0, 1)?
        }
        Property::PartialFixpointLemma => {
            return Err(CheckError::InvalidInput(
                "lemma counterexamples are replayed with replay_lemma".into(),
            ))
        }
    };
    Ok(reproduced)
}
