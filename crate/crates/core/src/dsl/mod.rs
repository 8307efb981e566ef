//! A one-definition language for recursive functions on the naturals.
//!
//! ```text
//! # nested recursion that only ever returns zero
//! f(x) = if x = 0 then 0 else f(f(x - 1))
//! ```
//!
//! `-` is truncated subtraction, `+` fails on overflow, and the only
//! conditional tests an expression against zero. A definition compiles to an
//! operator on [`crate::instances::NatFunSpace`] whose fixed point is the
//! function being defined.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::{print_def, Definition, Expr, SourceSpan};
pub use eval::{compile, eval_expr};
pub use parser::parse_def;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("unknown identifier `{name}` at {span}")]
    UnknownIdentifier { name: String, span: SourceSpan },
    #[error("call to unknown function `{name}` at {span}")]
    UnknownFunction { name: String, span: SourceSpan },
    #[error("only one definition is allowed per file (second one at {span})")]
    MultipleDefinitions { span: SourceSpan },
    #[error("numeric literal at {span} exceeds 2^64 - 1")]
    LiteralOutOfRange { span: SourceSpan },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::UnknownIdentifier { span, .. }
            | ParseError::UnknownFunction { span, .. }
            | ParseError::MultipleDefinitions { span }
            | ParseError::LiteralOutOfRange { span } => *span,
        }
    }
}
