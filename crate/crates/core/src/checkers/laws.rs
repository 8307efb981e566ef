use rand::Rng;
use rayon::prelude::*;

use super::sampler::{Sample, Sampler};
use super::{merge_samples, SampleOutcome};
use crate::error::{CheckError, EvalError};
use crate::ofe::{Level, Ofe};
use crate::report::{CheckReport, CheckStats, Counterexample, Property, Witness};

/// Checks the OFE axioms on sampled triples up to `depth`.
///
/// Covers totality of `≡₀`, nesting, reflexivity, symmetry and transitivity
/// at every level, plus coherence of observations under restriction.
/// Extensionality is not checked separately: for observation-based instances
/// it holds by construction.
pub fn check_ofe_laws<I: Sample>(
    inst: &I,
    sampler: &Sampler,
    depth: Level,
) -> Result<CheckReport<I::Elem>, CheckError> {
    if depth.get() == 0 {
        return Err(CheckError::InvalidInput("depth must be at least 1".into()));
    }
    let outcomes: Vec<_> = (0..sampler.samples)
        .into_par_iter()
        .map(|i| laws_for_sample(inst, sampler, i, depth))
        .collect();
    merge_samples("ofe-laws", depth, outcomes)
}

fn laws_for_sample<I: Sample>(
    inst: &I,
    sampler: &Sampler,
    index: usize,
    depth: Level,
) -> SampleOutcome<I::Elem> {
    let mut rng = sampler.rng(index);
    let bounds = &sampler.bounds;
    let mut stats = CheckStats::default();
    let a = inst.sample(&mut rng, bounds);
    for k in depth.up_to() {
        let b = if rng.gen_bool(0.5) {
            inst.splice(&a, k, &mut rng, bounds)?
        } else {
            inst.sample(&mut rng, bounds)
        };
        let c = if rng.gen_bool(0.5) {
            inst.splice(&b, k, &mut rng, bounds)?
        } else {
            inst.splice(&a, k, &mut rng, bounds)?
        };
        let triple = Triple::observe(inst, [a.clone(), b, c], depth)?;
        if let Some(cx) = triple.check(inst, depth, &mut stats) {
            return Ok((stats, Some(cx)));
        }
    }
    Ok((stats, None))
}

struct Triple<E, O> {
    elems: [E; 3],
    /// `obs[i][m]` is element `i` observed at level `m`.
    obs: [Vec<O>; 3],
}

impl<E: Clone, O: Eq + std::fmt::Debug> Triple<E, O> {
    fn observe<I: Ofe<Elem = E, Obs = O>>(
        inst: &I,
        elems: [E; 3],
        depth: Level,
    ) -> Result<Self, EvalError> {
        let mut obs: [Vec<O>; 3] = Default::default();
        for (slot, e) in obs.iter_mut().zip(&elems) {
            *slot = depth
                .up_to()
                .map(|m| inst.truncate(m, e))
                .collect::<Result<_, _>>()?;
        }
        Ok(Triple { elems, obs })
    }

    fn eq(&self, m: usize, i: usize, j: usize) -> bool {
        self.obs[i][m] == self.obs[j][m]
    }

    fn fail(&self, property: Property, level: usize, idx: &[usize]) -> Counterexample<E> {
        Counterexample {
            property,
            level: Level(level),
            witnesses: idx
                .iter()
                .map(|&i| Witness::plain(self.elems[i].clone()))
                .collect(),
            observations: idx
                .iter()
                .flat_map(|&i| {
                    let upto = (level + 1).min(self.obs[i].len() - 1);
                    [
                        format!("element {i} at level {level}: {:?}", self.obs[i][level]),
                        format!("element {i} at level {upto}: {:?}", self.obs[i][upto]),
                    ]
                })
                .collect(),
        }
    }

    fn check<I: Ofe<Elem = E, Obs = O>>(
        &self,
        inst: &I,
        depth: Level,
        stats: &mut CheckStats,
    ) -> Option<Counterexample<E>> {
        const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];
        const CHAINS: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
        stats.depth = stats.depth.max(depth.get());
        for &(i, j) in &PAIRS {
            stats.cases += 1;
            if !self.eq(0, i, j) {
                return Some(self.fail(Property::Totality, 0, &[i, j]));
            }
        }
        for m in 0..=depth.get() {
            for i in 0..3 {
                stats.cases += 1;
                if !self.eq(m, i, i) {
                    return Some(self.fail(Property::Reflexivity, m, &[i]));
                }
                if m < depth.get() {
                    let restricted = inst.restrict(&self.obs[i][m + 1], Level(m));
                    if restricted != self.obs[i][m] {
                        return Some(self.fail(Property::ObservationCoherence, m, &[i]));
                    }
                }
            }
            for &(i, j) in &PAIRS {
                stats.cases += 1;
                if self.eq(m, i, j) != self.eq(m, j, i) {
                    return Some(self.fail(Property::Symmetry, m, &[i, j]));
                }
                if m < depth.get() && self.eq(m + 1, i, j) {
                    stats.premise_hits += 1;
                    if !self.eq(m, i, j) {
                        return Some(self.fail(Property::Nesting, m, &[i, j]));
                    }
                }
            }
            for &(i, j, k) in &CHAINS {
                stats.cases += 1;
                if self.eq(m, i, j) && self.eq(m, j, k) {
                    stats.premise_hits += 1;
                    if !self.eq(m, i, k) {
                        return Some(self.fail(Property::Transitivity, m, &[i, j, k]));
                    }
                }
            }
        }
        None
    }
}
