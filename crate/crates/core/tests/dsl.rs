use fixcofe::checkers::{enumerate_natfun_tables, EnumCap};
use fixcofe::dsl::{compile, parse_def, print_def, Definition, Expr, ParseError, SourceSpan};
use fixcofe::error::EvalError;
use fixcofe::fixpoint::{fix_with_override, iterate};
use fixcofe::instances::{NatFun, NatFunSpace};
use fixcofe::ofe::{Level, Value};
use proptest::prelude::*;

const NESTED_ZERO: &str = "f(x) = if x = 0 then 0 else f(f(x - 1))";

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        any::<u64>().prop_map(Expr::Nat),
        (0u64..20).prop_map(Expr::Nat),
        Just(Expr::Param),
    ];
    leaf.prop_recursive(6, 64, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), inner.clone())
                .prop_map(|(c, t, e)| Expr::if_zero(c, t, e)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::add(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::monus(l, r)),
            inner.prop_map(Expr::call),
        ]
    })
}

fn def_strategy() -> impl Strategy<Value = Definition> {
    (
        prop::sample::select(vec!["f", "go", "F_1", "_h"]),
        prop::sample::select(vec!["x", "n", "arg_2", "_"]),
        expr_strategy(),
    )
        .prop_map(|(name, param, body)| Definition {
            name: name.into(),
            param: param.into(),
            body,
        })
}

// Reference big-step interpreter, wrapping nothing from the crate.
fn oracle_eval(e: &Expr, x: Value, g: &dyn Fn(Value) -> Value) -> Option<Value> {
    Some(match e {
        Expr::Nat(v) => *v,
        Expr::Param => x,
        Expr::IfZero {
            cond,
            then_branch,
            else_branch,
        } => {
            if oracle_eval(cond, x, g)? == 0 {
                oracle_eval(then_branch, x, g)?
            } else {
                oracle_eval(else_branch, x, g)?
            }
        }
        Expr::Add(l, r) => oracle_eval(l, x, g)?.checked_add(oracle_eval(r, x, g)?)?,
        Expr::Monus(l, r) => oracle_eval(l, x, g)?.saturating_sub(oracle_eval(r, x, g)?),
        Expr::Call(a) => g(oracle_eval(a, x, g)?),
    })
}

#[test]
fn parse_examples() {
    let def = parse_def(NESTED_ZERO).unwrap();
    assert_eq!(def.name, "f");
    assert_eq!(def.param, "x");
    assert!(def.body.is_recursive());
    assert_eq!(print_def(&def), NESTED_ZERO);

    let g = parse_def("g(x) = x + 1").unwrap();
    assert!(!g.body.is_recursive());

    let err = parse_def("h(x) = h(x").unwrap_err();
    assert!(matches!(err, ParseError::Syntax { .. }));
    assert_eq!(err.span(), SourceSpan::new(10, 10));
}

#[test]
fn error_spans_point_at_the_problem() {
    let src = "f(x) = x + y";
    match parse_def(src).unwrap_err() {
        ParseError::UnknownIdentifier { name, span } => {
            assert_eq!(name, "y");
            assert_eq!(&src[span.start..span.end], "y");
        }
        e => panic!("unexpected {e:?}"),
    }
    let src = "f(x) = 18446744073709551616";
    assert!(matches!(
        parse_def(src),
        Err(ParseError::LiteralOutOfRange { span }) if span == SourceSpan::new(7, src.len())
    ));
    assert_eq!(
        parse_def("f(x) = 18446744073709551615").unwrap().body,
        Expr::Nat(u64::MAX)
    );
    assert!(parse_def("f(x) = x # trailing\n# more\n").is_ok());
    assert!(parse_def("").is_err());
    assert!(parse_def("f(x) = x $").is_err());
}

#[test]
fn compiled_operator_examples() {
    let t = compile(&parse_def(NESTED_ZERO).unwrap());
    assert_eq!(
        iterate(&t, &NatFun::identity(), 1).prefix(3).unwrap(),
        vec![0, 0, 1]
    );
    let h = fix_with_override(&NatFunSpace, &t, NatFun::zero());
    assert_eq!(h.query(Level(50)).unwrap(), vec![0; 50]);

    let g = compile(&parse_def("g(x) = x + 1").unwrap());
    let h = fix_with_override(&NatFunSpace, &g, NatFun::zero());
    assert_eq!(h.query(Level(3)).unwrap(), vec![1, 2, 3]);
}

#[test]
fn overflow_surfaces_as_error() {
    let def = parse_def("f(x) = f(x) + 18446744073709551615").unwrap();
    let op = compile(&def);
    let out = op.apply(&NatFun::constant(1));
    assert!(matches!(out.eval(0), Err(EvalError::Overflow { .. })));
    assert_eq!(op.apply(&NatFun::zero()).eval(0).unwrap(), u64::MAX);
}

#[test]
fn compile_fidelity_nested_zero_exhaustive() {
    let t = compile(&parse_def(NESTED_ZERO).unwrap());
    for len in 0..=4 {
        for vmax in 0..=3u64 {
            for f in enumerate_natfun_tables(len, vmax, EnumCap::DEFAULT).unwrap() {
                let raw = f.prefix(len).unwrap();
                let at = |k: Value| raw.get(k as usize).copied().unwrap_or(0);
                // Hand-rolled T and T² on the table.
                let dom = (len.max(vmax as usize + 1)).max(6);
                let t1: Vec<Value> = (0..dom as Value)
                    .map(|x| if x == 0 { 0 } else { at(at(x - 1)) })
                    .collect();
                let t2: Vec<Value> = (0..dom)
                    .map(|x| if x == 0 { 0 } else { t1[t1[x - 1] as usize] })
                    .collect();
                assert_eq!(t.apply(&f).prefix(dom).unwrap(), t1);
                assert_eq!(iterate(&t, &f, 2).prefix(dom).unwrap(), t2);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(def in def_strategy()) {
        let text = print_def(&def);
        let back = parse_def(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, &def);
        // Printing is canonical after one pass.
        prop_assert_eq!(print_def(&back), text);
    }

    #[test]
    fn whitespace_and_comments_are_insignificant(def in def_strategy()) {
        let text = print_def(&def);
        let noisy = text
            .replace(' ', "  \t")
            .replace('=', " =\n ")
            .replace('(', "( ")
            + "  # done\n";
        prop_assert_eq!(parse_def(&noisy).unwrap(), def);
    }

    #[test]
    fn compiled_operator_matches_oracle(
        def in def_strategy(),
        prefix in prop::collection::vec(0u64..6, 0..8),
        default in 0u64..6,
    ) {
        let op = compile(&def);
        let g = NatFun::from_prefix(&prefix, default);
        let graw = |k: Value| prefix.get(k as usize).copied().unwrap_or(default);
        let image = op.apply(&g);
        for x in 0..8 {
            // Totality: every argument yields a value or an overflow.
            let got = image.eval(x);
            match oracle_eval(&def.body, x, &graw) {
                Some(v) => prop_assert_eq!(got.unwrap(), v),
                None => prop_assert!(matches!(got, Err(EvalError::Overflow { .. })), "{got:?}"),
            }
        }
    }
}
