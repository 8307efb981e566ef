use serde_json::json;

use super::Codec;
use crate::error::{DecodeError, EvalError};
use crate::ofe::{Cofe, Level, Ofe, Seq};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductElem<L, R> {
    pub left: L,
    pub right: R,
}

/// Binary product; observed componentwise.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Product<A, B> {
    pub left: A,
    pub right: B,
}

impl<A, B> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Product { left, right }
    }
}

pub fn product_pair<L, R>(left: L, right: R) -> ProductElem<L, R> {
    ProductElem { left, right }
}

impl<A: Ofe, B: Ofe> Ofe for Product<A, B> {
    type Elem = ProductElem<A::Elem, B::Elem>;
    type Obs = (A::Obs, B::Obs);

    fn tag(&self) -> String {
        format!("product({},{})", self.left.tag(), self.right.tag())
    }

    fn truncate(&self, n: Level, a: &Self::Elem) -> Result<Self::Obs, EvalError> {
        Ok((
            self.left.truncate(n, &a.left)?,
            self.right.truncate(n, &a.right)?,
        ))
    }

    fn restrict(&self, obs: &Self::Obs, m: Level) -> Self::Obs {
        (
            self.left.restrict(&obs.0, m),
            self.right.restrict(&obs.1, m),
        )
    }
}

impl<A: Cofe, B: Cofe> Cofe for Product<A, B> {
    fn limit(&self, s: &Seq<Self::Elem>) -> Self::Elem {
        ProductElem {
            left: self.left.limit(&s.map(|p| p.left)),
            right: self.right.limit(&s.map(|p| p.right)),
        }
    }
}

impl<A: Codec, B: Codec> Codec for Product<A, B> {
    fn encode(&self, e: &Self::Elem) -> Option<serde_json::Value> {
        Some(json!({
            "left": self.left.encode(&e.left)?,
            "right": self.right.encode(&e.right)?,
        }))
    }

    fn decode(&self, v: &serde_json::Value) -> Result<Self::Elem, DecodeError> {
        let part = |key: &str| {
            v.get(key)
                .ok_or_else(|| DecodeError(format!("product element lacks `{key}`")))
        };
        Ok(ProductElem {
            left: self.left.decode(part("left")?)?,
            right: self.right.decode(part("right")?)?,
        })
    }
}
