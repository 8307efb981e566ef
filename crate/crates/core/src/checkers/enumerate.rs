//! Exhaustive enumeration of small function tables and the partial fixed
//! point lemma for the nested-zero operator.

use rayon::prelude::*;

use crate::error::{CheckError, EvalError};
use crate::fixpoint::Operator;
use crate::instances::{NatFun, NatFunSpace};
use crate::ofe::{Level, Value};
use crate::report::{CheckReport, CheckStats, Counterexample, Property, Witness};

/// Upper bound on the number of tables an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCap(pub u64);

impl EnumCap {
    pub const DEFAULT: EnumCap = EnumCap(1_000_000);
}

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap::DEFAULT
    }
}

/// `(max_value + 1)^len`, saturating.
pub fn table_count(len: usize, max_value: Value) -> u128 {
    let base = max_value as u128 + 1;
    (0..len).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Lexicographic walk over all length-`len` prefixes with entries `≤ max`.
#[derive(Debug, Clone)]
pub struct TableEnumeration {
    max_value: Value,
    next: Option<Vec<Value>>,
}

impl Iterator for TableEnumeration {
    type Item = NatFun;

    fn next(&mut self) -> Option<NatFun> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Odometer increment, last position fastest.
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] < self.max_value {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(NatFun::from_prefix(&current, 0))
    }
}

/// All tables `f` with `f(k) ≤ max_value` for `k < len` and `f(k) = 0`
/// beyond, in lexicographic order of their prefixes.
pub fn enumerate_natfun_tables(
    len: usize,
    max_value: Value,
    cap: EnumCap,
) -> Result<TableEnumeration, CheckError> {
    let requested = table_count(len, max_value);
    if requested > cap.0 as u128 {
        return Err(CheckError::EnumerationCap {
            requested,
            cap: cap.0,
        });
    }
    Ok(TableEnumeration {
        max_value,
        next: Some(vec![0; len]),
    })
}

/// Exhaustively checks `T(f) ≡_n f ⟹ f(k) = 0 for all k < n` over every
/// enumerated table and every `n ≤ depth`. Levels are visited in increasing
/// order, tables lexicographically within a level.
pub fn check_partial_fixpoint_lemma(
    t: &Operator<NatFunSpace>,
    len: usize,
    max_value: Value,
    depth: Level,
    cap: EnumCap,
) -> Result<CheckReport<NatFun>, CheckError> {
    if depth.get() > len {
        return Err(CheckError::InvalidInput(format!(
            "lemma depth {depth} exceeds table length {len}"
        )));
    }
    let d = depth.get();
    let tables: Vec<NatFun> = enumerate_natfun_tables(len, max_value, cap)?.collect();
    let observed: Vec<(Vec<Value>, Vec<Value>)> = tables
        .par_iter()
        .map(|f| Ok((f.prefix(d)?, t.apply(f).prefix(d)?)))
        .collect::<Result<_, EvalError>>()?;

    let mut stats = CheckStats {
        depth: d,
        ..CheckStats::default()
    };
    for n in 0..=d {
        for (i, (f, tf)) in observed.iter().enumerate() {
            stats.cases += 1;
            if f[..n] != tf[..n] {
                continue;
            }
            stats.premise_hits += 1;
            if f[..n].iter().any(|&v| v != 0) {
                let cx = Counterexample {
                    property: Property::PartialFixpointLemma,
                    level: Level(n),
                    witnesses: vec![Witness::plain(tables[i].clone())],
                    observations: vec![
                        format!("f at level {n}: {:?}", &f[..n]),
                        format!("T(f) at level {n}: {:?}", &tf[..n]),
                    ],
                };
                return Ok(CheckReport::fail("lemma", stats, cx));
            }
        }
    }
    Ok(CheckReport::pass("lemma", stats))
}

/// Re-evaluates a lemma counterexample: true when it still violates the lemma.
pub fn replay_lemma(
    t: &Operator<NatFunSpace>,
    cx: &Counterexample<NatFun>,
) -> Result<bool, CheckError> {
    let [w] = cx.witnesses.as_slice() else {
        return Err(CheckError::InvalidInput(
            "lemma witnesses consist of one function".into(),
        ));
    };
    let f = crate::fixpoint::iterate(t, &w.seed, w.iterations);
    let n = cx.level.get();
    let prefix = f.prefix(n)?;
    let image = t.apply(&f).prefix(n)?;
    Ok(prefix == image && prefix.iter().any(|&v| v != 0))
}
