use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use super::func::{Table, ValueFn};
use super::Codec;
use crate::error::{DecodeError, EvalError};
use crate::ofe::{Cofe, Level, Ofe, Seq, Value};

/// A total function `ℕ → ℕ`.
#[derive(Clone)]
pub struct NatFun(pub(crate) ValueFn);

impl NatFun {
    pub fn from_table(table: Table) -> Self {
        NatFun(ValueFn::table(table))
    }

    /// The function equal to `entries` where defined and `default` elsewhere.
    pub fn natfun_from_table(entries: BTreeMap<Value, Value>, default: Value) -> Self {
        NatFun::from_table(Table::new(entries, default))
    }

    pub fn from_prefix(prefix: &[Value], default: Value) -> Self {
        NatFun::from_table(Table::from_prefix(prefix, default))
    }

    pub fn constant(c: Value) -> Self {
        NatFun::from_table(Table::new(BTreeMap::new(), c))
    }

    /// `λx. 0`.
    pub fn zero() -> Self {
        NatFun::constant(0)
    }

    pub fn identity() -> Self {
        NatFun::from_fn(Ok)
    }

    /// Wraps a cheap procedure without caching its results.
    pub fn from_fn(f: impl Fn(Value) -> Result<Value, EvalError> + Send + Sync + 'static) -> Self {
        NatFun(ValueFn::direct(f))
    }

    /// Wraps a procedure and caches every argument it is evaluated at.
    pub fn memoized(f: impl Fn(Value) -> Result<Value, EvalError> + Send + Sync + 'static) -> Self {
        NatFun(ValueFn::memoized(f))
    }

    pub fn eval(&self, x: Value) -> Result<Value, EvalError> {
        self.0.eval(x)
    }

    /// `[f(0), …, f(n-1)]`.
    pub fn prefix(&self, n: usize) -> Result<Vec<Value>, EvalError> {
        self.0.prefix(n)
    }

    /// The backing table, when the function was built from one.
    pub fn table(&self) -> Option<&Table> {
        self.0.as_table()
    }
}

impl fmt::Debug for NatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatFun({:?})", self.0)
    }
}

/// `ℕ → ℕ` with `f ≡_n g` iff `f(k) = g(k)` for all `k < n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NatFunSpace;

impl NatFunSpace {
    /// Seed used when none is given: `λx. 0`.
    pub fn default_seed(&self) -> NatFun {
        NatFun::zero()
    }
}

impl Ofe for NatFunSpace {
    type Elem = NatFun;
    type Obs = Vec<Value>;

    fn tag(&self) -> String {
        "natfun".into()
    }

    fn truncate(&self, n: Level, a: &NatFun) -> Result<Vec<Value>, EvalError> {
        a.prefix(n.get())
    }

    fn restrict(&self, obs: &Vec<Value>, m: Level) -> Vec<Value> {
        obs[..m.get().min(obs.len())].to_vec()
    }
}

impl Cofe for NatFunSpace {
    /// `λk. s(k+1)(k)`: the value at `k` is fixed once level `k+1` is.
    fn limit(&self, s: &Seq<NatFun>) -> NatFun {
        let s = s.clone();
        NatFun::memoized(move |k| s.at(k as usize + 1).eval(k))
    }
}

impl Codec for NatFunSpace {
    fn encode(&self, e: &NatFun) -> Option<serde_json::Value> {
        e.table().map(|t| json!({ "table": t }))
    }

    fn decode(&self, v: &serde_json::Value) -> Result<NatFun, DecodeError> {
        let t = v
            .get("table")
            .ok_or_else(|| DecodeError("expected an object with a `table` field".into()))?;
        let table: Table =
            serde_json::from_value(t.clone()).map_err(|e| DecodeError(e.to_string()))?;
        Ok(NatFun::from_table(table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_pair() -> (NatFun, NatFun) {
        let a = NatFun::natfun_from_table(BTreeMap::from([(0, 5), (5, 1)]), 0);
        let b = NatFun::natfun_from_table(BTreeMap::from([(0, 5), (5, 2)]), 0);
        (a, b)
    }

    #[test]
    fn truncate_examples() {
        let s = NatFunSpace;
        assert!(s
            .truncate(Level(0), &NatFun::identity())
            .unwrap()
            .is_empty());
        assert_eq!(
            s.truncate(Level(3), &NatFun::zero()).unwrap(),
            vec![0, 0, 0]
        );
        assert_eq!(
            s.truncate(Level(3), &NatFun::identity()).unwrap(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn from_table_examples() {
        let s = NatFunSpace;
        let f = NatFun::natfun_from_table(BTreeMap::new(), 0);
        assert_eq!(s.truncate(Level(4), &f).unwrap(), vec![0; 4]);
        let (a, _) = sample_pair();
        assert_eq!(s.truncate(Level(2), &a).unwrap(), vec![5, 0]);
        let c = NatFun::natfun_from_table(BTreeMap::new(), 7);
        assert_eq!(s.truncate(Level(3), &c).unwrap(), vec![7, 7, 7]);
    }

    #[test]
    fn approx_eq_examples() {
        let s = NatFunSpace;
        let (a, b) = sample_pair();
        assert!(s
            .approx_eq(Level(0), &NatFun::zero(), &NatFun::identity())
            .unwrap());
        assert!(s.approx_eq(Level(1), &a, &b).unwrap());
        assert!(s.approx_eq(Level(5), &a, &b).unwrap());
        assert!(!s.approx_eq(Level(6), &a, &b).unwrap());
    }

    #[test]
    fn limit_of_growing_zero_prefixes() {
        let s = Seq::new(|n| {
            let mut prefix = vec![0; n];
            prefix.push(7);
            NatFun::from_prefix(&prefix, 7)
        });
        let lim = NatFunSpace.limit(&s);
        assert_eq!(lim.prefix(12).unwrap(), vec![0; 12]);
    }

    #[test]
    fn codec_round_trips_tables() {
        let (a, _) = sample_pair();
        let enc = NatFunSpace.encode(&a).unwrap();
        let back = NatFunSpace.decode(&enc).unwrap();
        assert_eq!(back.table(), a.table());
        assert!(NatFunSpace.encode(&NatFun::identity()).is_none());
    }
}
