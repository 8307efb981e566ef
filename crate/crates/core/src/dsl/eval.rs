use std::sync::Arc;

use super::ast::{Definition, Expr};
use crate::error::EvalError;
use crate::fixpoint::{Mode, Operator};
use crate::instances::{NatFun, NatFunSpace};
use crate::ofe::Value;

/// Call-by-value evaluation of `body` with the parameter bound to `x`.
/// Recursive calls are answered by `g`, the previous approximant.
pub fn eval_expr(body: &Expr, x: Value, g: &NatFun) -> Result<Value, EvalError> {
    match body {
        Expr::Nat(v) => Ok(*v),
        Expr::Param => Ok(x),
        Expr::IfZero {
            cond,
            then_branch,
            else_branch,
        } => {
            if eval_expr(cond, x, g)? == 0 {
                eval_expr(then_branch, x, g)
            } else {
                eval_expr(else_branch, x, g)
            }
        }
        Expr::Add(l, r) => {
            let (a, b) = (eval_expr(l, x, g)?, eval_expr(r, x, g)?);
            a.checked_add(b)
                .ok_or_else(|| EvalError::overflow("+", a, b))
        }
        Expr::Monus(l, r) => Ok(eval_expr(l, x, g)?.saturating_sub(eval_expr(r, x, g)?)),
        Expr::Call(arg) => g.eval(eval_expr(arg, x, g)?),
    }
}

/// The operator `g ↦ λx. body[x, g]` on `ℕ → ℕ`.
///
/// Images are memoized per argument, which keeps nested calls such as
/// `f(f(x - 1))` polynomial across iterations. The operator is `Unverified`.
pub fn compile(def: &Definition) -> Operator<NatFunSpace> {
    let body = Arc::new(def.body.clone());
    Operator::new(def.name.clone(), Mode::Unverified, move |g: &NatFun| {
        let body = Arc::clone(&body);
        let g = g.clone();
        NatFun::memoized(move |x| eval_expr(&body, x, &g))
    })
}
