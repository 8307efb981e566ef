//! Concrete complete OFEs.
//!
//! [`NatFunSpace`] is the prefix-equality function space `ℕ → ℕ`; the others
//! are the usual constructions (discrete sets, streams, binary products and
//! the later shift) used to exercise the engine and the checkers.

mod discrete;
mod func;
mod later;
mod natfun;
mod product;
mod stream;

pub use discrete::{Discrete, DiscreteElem};
pub use func::Table;
pub use later::{later_next, Later, LaterElem};
pub use natfun::{NatFun, NatFunSpace};
pub use product::{product_pair, Product, ProductElem};
pub use stream::{add, succ, Stream, StreamSpace};

use crate::error::DecodeError;
use crate::ofe::Ofe;

/// JSON encoding of elements, used to store and replay counterexample witnesses.
pub trait Codec: Ofe {
    /// `None` for elements without a finite description (computed functions).
    fn encode(&self, e: &Self::Elem) -> Option<serde_json::Value>;
    fn decode(&self, v: &serde_json::Value) -> Result<Self::Elem, DecodeError>;
}
