use serde_json::json;

use super::Codec;
use crate::error::{DecodeError, EvalError};
use crate::ofe::{Cofe, Level, Ofe, Seq, Value};

/// An element of the discrete instance over the naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiscreteElem(pub Value);

/// Naturals with `a ≡_n b` iff `n = 0` or `a = b`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Discrete;

impl Ofe for Discrete {
    type Elem = DiscreteElem;
    type Obs = Option<Value>;

    fn tag(&self) -> String {
        "discrete".into()
    }

    fn truncate(&self, n: Level, a: &DiscreteElem) -> Result<Option<Value>, EvalError> {
        Ok((n.get() > 0).then_some(a.0))
    }

    fn restrict(&self, obs: &Option<Value>, m: Level) -> Option<Value> {
        if m.get() == 0 {
            None
        } else {
            *obs
        }
    }
}

impl Cofe for Discrete {
    /// Coherence forces `s(1) = s(2) = …`, so the limit is `s(1)`.
    fn limit(&self, s: &Seq<DiscreteElem>) -> DiscreteElem {
        s.at(1)
    }
}

impl Codec for Discrete {
    fn encode(&self, e: &DiscreteElem) -> Option<serde_json::Value> {
        Some(json!({ "discrete": e.0 }))
    }

    fn decode(&self, v: &serde_json::Value) -> Result<DiscreteElem, DecodeError> {
        v.get("discrete")
            .and_then(|x| x.as_u64())
            .map(DiscreteElem)
            .ok_or_else(|| DecodeError("expected {\"discrete\": <u64>}".into()))
    }
}
