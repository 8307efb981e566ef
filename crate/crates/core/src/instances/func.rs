use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::EvalError;
use crate::ofe::Value;

/// A finite table with a default for all other arguments.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Table {
    pub entries: BTreeMap<Value, Value>,
    pub default: Value,
}

impl Table {
    pub fn new(entries: BTreeMap<Value, Value>, default: Value) -> Self {
        Table { entries, default }
    }

    /// Table mapping `k ↦ prefix[k]` for `k < prefix.len()`.
    pub fn from_prefix(prefix: &[Value], default: Value) -> Self {
        let entries = prefix
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as Value, v))
            .collect();
        Table { entries, default }
    }

    pub fn lookup(&self, k: Value) -> Value {
        self.entries.get(&k).copied().unwrap_or(self.default)
    }
}

type EvalFn = dyn Fn(Value) -> Result<Value, EvalError> + Send + Sync;

enum Repr {
    Table(Table),
    Direct(Box<EvalFn>),
    Memoized {
        eval: Box<EvalFn>,
        memo: Mutex<HashMap<Value, Value>>,
    },
}

/// Total function `ℕ → Value`, shared between the function-space and stream
/// instances. Cloning shares the underlying procedure and its memo table.
#[derive(Clone)]
pub(crate) struct ValueFn(Arc<Repr>);

impl ValueFn {
    pub(crate) fn table(t: Table) -> Self {
        ValueFn(Arc::new(Repr::Table(t)))
    }

    pub(crate) fn direct(
        f: impl Fn(Value) -> Result<Value, EvalError> + Send + Sync + 'static,
    ) -> Self {
        ValueFn(Arc::new(Repr::Direct(Box::new(f))))
    }

    pub(crate) fn memoized(
        f: impl Fn(Value) -> Result<Value, EvalError> + Send + Sync + 'static,
    ) -> Self {
        ValueFn(Arc::new(Repr::Memoized {
            eval: Box::new(f),
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub(crate) fn eval(&self, k: Value) -> Result<Value, EvalError> {
        match &*self.0 {
            Repr::Table(t) => Ok(t.lookup(k)),
            Repr::Direct(f) => f(k),
            Repr::Memoized { eval, memo } => {
                if let Some(v) = lock(memo).get(&k) {
                    return Ok(*v);
                }
                // The lock is released while evaluating: the procedure may
                // consult other memoized functions, and a racing thread
                // computes the same value.
                let v = eval(k)?;
                lock(memo).insert(k, v);
                Ok(v)
            }
        }
    }

    pub(crate) fn prefix(&self, n: usize) -> Result<Vec<Value>, EvalError> {
        (0..n as Value).map(|k| self.eval(k)).collect()
    }

    pub(crate) fn as_table(&self) -> Option<&Table> {
        match &*self.0 {
            Repr::Table(t) => Some(t),
            _ => None,
        }
    }
}

fn lock<T>(m: &Mutex<T>) -> std::sync::MutexGuard<'_, T> {
    // A poisoned memo only ever holds fully computed entries.
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl fmt::Debug for ValueFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Table(t) => {
                write!(f, "{{")?;
                for (k, v) in &t.entries {
                    write!(f, "{k}↦{v}, ")?;
                }
                write!(f, "_↦{}}}", t.default)
            }
            Repr::Direct(_) => f.write_str("<fn>"),
            Repr::Memoized { memo, .. } => write!(f, "<fn, {} memoized>", lock(memo).len()),
        }
    }
}

pub(crate) fn checked_add(lhs: Value, rhs: Value) -> Result<Value, EvalError> {
    lhs.checked_add(rhs)
        .ok_or_else(|| EvalError::overflow("+", lhs, rhs))
}
