use thiserror::Error;

use crate::ofe::Value;

/// Failure raised while evaluating an element at some argument or index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("value overflow in `{op}`: {lhs} and {rhs} exceed the 64-bit range")]
    Overflow {
        op: &'static str,
        lhs: Value,
        rhs: Value,
    },
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl EvalError {
    pub fn overflow(op: &'static str, lhs: Value, rhs: Value) -> Self {
        EvalError::Overflow { op, lhs, rhs }
    }
}

/// Errors from probes and checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid check input: {0}")]
    InvalidInput(String),
    #[error("enumeration of {requested} tables exceeds the cap of {cap}")]
    EnumerationCap { requested: u128, cap: u64 },
}

/// Failure to rebuild an element from its encoded form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot decode element: {0}")]
pub struct DecodeError(pub String);

/// Returned by `fix` when the operator carries no contractiveness declaration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("operator `{0}` is unverified; use `fix_with_override` to iterate it anyway")]
pub struct UnverifiedOperator(pub String);
