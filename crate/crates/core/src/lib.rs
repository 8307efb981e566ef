//! Step-indexed fixed points.
//!
//! Elements of a complete ordered family of equivalences are observed at
//! finite levels; operators are iterated and their fixed points read off
//! level by level. Besides contractive operators this covers operators that
//! are only contractive on fixed points, such as the nested recursion
//! `f(x) = if x = 0 then 0 else f(f(x - 1))`.
//!
//! ```
//! use fixcofe::catalog::nested_zero_operator;
//! use fixcofe::fixpoint::fix;
//! use fixcofe::instances::{NatFun, NatFunSpace};
//! use fixcofe::ofe::Level;
//!
//! let t = nested_zero_operator();
//! let h = fix(&NatFunSpace, &t, NatFun::identity()).unwrap();
//! assert_eq!(h.query(Level(4)).unwrap(), vec![0, 0, 0, 0]);
//! ```

pub mod catalog;
pub mod checkers;
pub mod dsl;
pub mod error;
pub mod fixpoint;
pub mod instances;
pub mod ofe;
pub mod report;

pub use error::{CheckError, DecodeError, EvalError};
pub use fixpoint::{fix, fix_with_override, FixHandle, Mode, Operator};
pub use ofe::{Cofe, Level, Ofe, Seq, Value};
pub use report::{CheckReport, Counterexample, Property};
