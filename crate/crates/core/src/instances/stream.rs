use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use super::func::{checked_add, Table, ValueFn};
use super::Codec;
use crate::error::{DecodeError, EvalError};
use crate::ofe::{Cofe, Level, Ofe, Seq, Value};

/// An infinite stream `v_0, v_1, …` of values.
#[derive(Clone)]
pub struct Stream(pub(crate) ValueFn);

impl Stream {
    pub fn from_table(table: Table) -> Self {
        Stream(ValueFn::table(table))
    }

    /// `prefix` followed by `rest` forever.
    pub fn from_prefix(prefix: &[Value], rest: Value) -> Self {
        Stream::from_table(Table::from_prefix(prefix, rest))
    }

    pub fn constant(v: Value) -> Self {
        Stream::from_table(Table::new(BTreeMap::new(), v))
    }

    pub fn zeros() -> Self {
        Stream::constant(0)
    }

    /// `0, 1, 2, …`
    pub fn naturals() -> Self {
        Stream(ValueFn::direct(Ok))
    }

    /// The stream whose `i`-th value is `f(i)`.
    pub fn from_fn(f: impl Fn(Value) -> Result<Value, EvalError> + Send + Sync + 'static) -> Self {
        Stream(ValueFn::direct(f))
    }

    /// Guarded constructor: observing `cons(h, t)` at level `n+1` observes `t`
    /// only at level `n`.
    pub fn cons(head: Value, tail: Stream) -> Self {
        Stream(ValueFn::direct(move |i| match i {
            0 => Ok(head),
            _ => tail.at(i - 1),
        }))
    }

    /// Drops the head. Not level-preserving: it loses one level.
    pub fn tail(&self) -> Self {
        let s = self.clone();
        Stream(ValueFn::direct(move |i| {
            let j = i
                .checked_add(1)
                .ok_or_else(|| EvalError::overflow("index", i, 1))?;
            s.at(j)
        }))
    }

    pub fn map(
        g: impl Fn(Value) -> Result<Value, EvalError> + Send + Sync + 'static,
        s: &Stream,
    ) -> Self {
        let s = s.clone();
        Stream(ValueFn::memoized(move |i| g(s.at(i)?)))
    }

    pub fn zip(
        g: impl Fn(Value, Value) -> Result<Value, EvalError> + Send + Sync + 'static,
        s: &Stream,
        t: &Stream,
    ) -> Self {
        let (s, t) = (s.clone(), t.clone());
        Stream(ValueFn::memoized(move |i| g(s.at(i)?, t.at(i)?)))
    }

    /// `v_i`.
    pub fn at(&self, i: Value) -> Result<Value, EvalError> {
        self.0.eval(i)
    }

    /// The first `n` values.
    pub fn take(&self, n: usize) -> Result<Vec<Value>, EvalError> {
        self.0.prefix(n)
    }

    pub fn table(&self) -> Option<&Table> {
        self.0.as_table()
    }
}

impl fmt::Debug for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stream({:?})", self.0)
    }
}

/// `x ↦ x + 1`, failing on overflow.
pub fn succ(x: Value) -> Result<Value, EvalError> {
    checked_add(x, 1)
}

/// `(x, y) ↦ x + y`, failing on overflow.
pub fn add(x: Value, y: Value) -> Result<Value, EvalError> {
    checked_add(x, y)
}

/// Streams of values, equal at level `n` when their first `n` values agree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StreamSpace;

impl StreamSpace {
    /// Seed used when none is given: the constant-0 stream.
    pub fn default_seed(&self) -> Stream {
        Stream::zeros()
    }
}

impl Ofe for StreamSpace {
    type Elem = Stream;
    type Obs = Vec<Value>;

    fn tag(&self) -> String {
        "stream".into()
    }

    fn truncate(&self, n: Level, a: &Stream) -> Result<Vec<Value>, EvalError> {
        a.take(n.get())
    }

    fn restrict(&self, obs: &Vec<Value>, m: Level) -> Vec<Value> {
        obs[..m.get().min(obs.len())].to_vec()
    }
}

impl Cofe for StreamSpace {
    fn limit(&self, s: &Seq<Stream>) -> Stream {
        let s = s.clone();
        Stream(ValueFn::memoized(move |i| s.at(i as usize + 1).at(i)))
    }
}

impl Codec for StreamSpace {
    fn encode(&self, e: &Stream) -> Option<serde_json::Value> {
        e.table().map(|t| json!({ "table": t }))
    }

    fn decode(&self, v: &serde_json::Value) -> Result<Stream, DecodeError> {
        let t = v
            .get("table")
            .ok_or_else(|| DecodeError("expected an object with a `table` field".into()))?;
        let table: Table =
            serde_json::from_value(t.clone()).map_err(|e| DecodeError(e.to_string()))?;
        Ok(Stream::from_table(table))
    }
}
