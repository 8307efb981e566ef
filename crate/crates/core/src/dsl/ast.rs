use std::fmt;

use crate::ofe::Value;

/// Body expression of a recursive definition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Nat(Value),
    /// The definition's single parameter.
    Param,
    /// `if cond = 0 then then_branch else else_branch`
    IfZero {
        cond: Box<Expr>,
        then_branch: Box<Expr>,
        else_branch: Box<Expr>,
    },
    Add(Box<Expr>, Box<Expr>),
    /// Truncated subtraction.
    Monus(Box<Expr>, Box<Expr>),
    /// Call of the defined function.
    Call(Box<Expr>),
}

impl Expr {
    pub fn if_zero(cond: Expr, then_branch: Expr, else_branch: Expr) -> Self {
        Expr::IfZero {
            cond: Box::new(cond),
            then_branch: Box::new(then_branch),
            else_branch: Box::new(else_branch),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: Expr, r: Expr) -> Self {
        Expr::Add(Box::new(l), Box::new(r))
    }

    pub fn monus(l: Expr, r: Expr) -> Self {
        Expr::Monus(Box::new(l), Box::new(r))
    }

    pub fn call(arg: Expr) -> Self {
        Expr::Call(Box::new(arg))
    }

    /// Whether the body mentions the defined function at all.
    pub fn is_recursive(&self) -> bool {
        match self {
            Expr::Nat(_) | Expr::Param => false,
            Expr::Call(_) => true,
            Expr::Add(l, r) | Expr::Monus(l, r) => l.is_recursive() || r.is_recursive(),
            Expr::IfZero {
                cond,
                then_branch,
                else_branch,
            } => cond.is_recursive() || then_branch.is_recursive() || else_branch.is_recursive(),
        }
    }
}

/// `name(param) = body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Definition {
    pub name: String,
    pub param: String,
    pub body: Expr,
}

/// Byte range `start..end` in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Canonical single-line rendering; parses back to the same tree.
pub fn print_def(def: &Definition) -> String {
    let mut out = format!("{}({}) = ", def.name, def.param);
    Printer { def }.expr(&def.body, &mut out);
    out
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_def(self))
    }
}

struct Printer<'a> {
    def: &'a Definition,
}

impl Printer<'_> {
    fn expr(&self, e: &Expr, out: &mut String) {
        match e {
            Expr::IfZero {
                cond,
                then_branch,
                else_branch,
            } => {
                out.push_str("if ");
                self.guarded(cond, out);
                out.push_str(" = 0 then ");
                self.expr(then_branch, out);
                out.push_str(" else ");
                self.expr(else_branch, out);
            }
            _ => self.sum(e, out),
        }
    }

    /// Conditions are parenthesized when they are conditionals themselves.
    fn guarded(&self, e: &Expr, out: &mut String) {
        if matches!(e, Expr::IfZero { .. }) {
            self.parens(e, out);
        } else {
            self.expr(e, out);
        }
    }

    fn sum(&self, e: &Expr, out: &mut String) {
        match e {
            Expr::Add(l, r) | Expr::Monus(l, r) => {
                if matches!(**l, Expr::IfZero { .. }) {
                    self.parens(l, out);
                } else {
                    self.sum(l, out);
                }
                out.push_str(if matches!(e, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                });
                self.atom(r, out);
            }
            _ => self.atom(e, out),
        }
    }

    fn atom(&self, e: &Expr, out: &mut String) {
        match e {
            Expr::Nat(v) => out.push_str(&v.to_string()),
            Expr::Param => out.push_str(&self.def.param),
            Expr::Call(arg) => {
                out.push_str(&self.def.name);
                out.push('(');
                self.expr(arg, out);
                out.push(')');
            }
            _ => self.parens(e, out),
        }
    }

    fn parens(&self, e: &Expr, out: &mut String) {
        out.push('(');
        self.expr(e, out);
        out.push(')');
    }
}
