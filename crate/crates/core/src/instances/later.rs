use serde_json::json;

use super::Codec;
use crate::error::{DecodeError, EvalError};
use crate::ofe::{Cofe, Level, Ofe, Seq};

/// `next a`: the element `a`, observed one level late.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaterElem<E>(pub E);

pub fn later_next<E>(a: E) -> LaterElem<E> {
    LaterElem(a)
}

/// The later shift of `A`: `next a ≡_{n+1} next b` iff `a ≡_n b`.
///
/// Composing a level-preserving map with `next` yields a contractive one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Later<A>(pub A);

impl<A: Ofe> Ofe for Later<A> {
    type Elem = LaterElem<A::Elem>;
    type Obs = Option<A::Obs>;

    fn tag(&self) -> String {
        format!("later({})", self.0.tag())
    }

    fn truncate(&self, n: Level, a: &Self::Elem) -> Result<Self::Obs, EvalError> {
        match n.pred() {
            None => Ok(None),
            Some(m) => Ok(Some(self.0.truncate(m, &a.0)?)),
        }
    }

    fn restrict(&self, obs: &Self::Obs, m: Level) -> Self::Obs {
        let inner = obs.as_ref()?;
        m.pred().map(|k| self.0.restrict(inner, k))
    }
}

impl<A: Cofe> Cofe for Later<A> {
    fn limit(&self, s: &Seq<Self::Elem>) -> Self::Elem {
        LaterElem(self.0.limit(&s.reindex(|n| n + 1).map(|l| l.0)))
    }
}

impl<A: Codec> Codec for Later<A> {
    fn encode(&self, e: &Self::Elem) -> Option<serde_json::Value> {
        Some(json!({ "next": self.0.encode(&e.0)? }))
    }

    fn decode(&self, v: &serde_json::Value) -> Result<Self::Elem, DecodeError> {
        let inner = v
            .get("next")
            .ok_or_else(|| DecodeError("later element lacks `next`".into()))?;
        Ok(LaterElem(self.0.decode(inner)?))
    }
}
