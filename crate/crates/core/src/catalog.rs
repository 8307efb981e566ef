//! Ready-made operators and sequences used by the demos and tests.

use crate::dsl::{compile, parse_def};
use crate::fixpoint::{Mode, Operator};
use crate::instances::{
    add, succ, Discrete, DiscreteElem, NatFun, NatFunSpace, Stream, StreamSpace,
};
use crate::ofe::{Level, Modulus, Seq, Value};

/// Nested recursion that is total and always returns zero.
pub const NESTED_ZERO_SOURCE: &str = "f(x) = if x = 0 then 0 else f(f(x - 1))";

/// `T f = λx. if x = 0 then 0 else f(f(x - 1))`, declared contractive on
/// fixed points. It is not contractive.
pub fn nested_zero_operator() -> Operator<NatFunSpace> {
    let def = parse_def(NESTED_ZERO_SOURCE).expect("built-in definition parses");
    compile(&def).with_mode(Mode::ContractiveOnFixedPoints)
}

/// `s ↦ cons(0, map(+1, s))`, whose fixed point is `0, 1, 2, …`.
pub fn naturals_operator() -> Operator<StreamSpace> {
    Operator::new("naturals", Mode::Contractive, |s: &Stream| {
        Stream::cons(0, Stream::map(succ, s))
    })
}

/// `s ↦ cons(0, cons(1, zip(+, s, tail s)))`, whose fixed point is the
/// Fibonacci stream.
pub fn fib_operator() -> Operator<StreamSpace> {
    Operator::new("fib", Mode::Contractive, |s: &Stream| {
        Stream::cons(0, Stream::cons(1, Stream::zip(add, s, &s.tail())))
    })
}

/// Exchanges 0 and 1 on the discrete naturals (other values map to 0).
/// Neither contractive nor contractive on fixed points.
pub fn swap_operator() -> Operator<Discrete> {
    Operator::new("swap", Mode::Unverified, |a: &DiscreteElem| {
        DiscreteElem(if a.0 == 0 { 1 } else { 0 })
    })
}

/// A Cauchy sequence in `ℕ → ℕ` that is not coherent, with a valid modulus.
///
/// Term `i` is zero below `⌊i/2⌋` and `(i mod 3) + 1` from there on, so
/// terms from index `2n` on agree below `n`. It converges to `λx. 0`.
pub fn cauchy_sequence() -> (Seq<NatFun>, Modulus) {
    let s = Seq::new(|i: usize| {
        let cut = (i / 2) as Value;
        let tail = (i % 3) as Value + 1;
        NatFun::from_fn(move |k| Ok(if k < cut { 0 } else { tail }))
    });
    let m = Modulus::new(|n: Level| 2 * n.get());
    (s, m)
}
