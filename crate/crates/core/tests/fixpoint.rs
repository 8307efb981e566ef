use std::sync::Arc;
use std::thread;

use fixcofe::catalog::{fib_operator, naturals_operator, nested_zero_operator, swap_operator};
use fixcofe::fixpoint::{
    fix, fix_with_override, iterate, iterate_coherence_probe, seed_independence_probe, Mode,
    Operator,
};
use fixcofe::instances::{Discrete, DiscreteElem, NatFun, NatFunSpace, Stream, StreamSpace};
use fixcofe::ofe::{Level, Ofe, Value};
use proptest::prelude::*;

/// Array oracle for the nested-zero operator: iterates are stored on a
/// domain large enough to hold every argument they are applied to.
fn oracle_iterates(seed: &[Value], default: Value, n: usize, depth: usize) -> Vec<Value> {
    let max_value = seed.iter().copied().chain([default]).max().unwrap_or(0) as usize;
    let dom = depth.max(max_value + 1).max(seed.len());
    let mut g: Vec<Value> = (0..dom)
        .map(|k| seed.get(k).copied().unwrap_or(default))
        .collect();
    for _ in 0..n {
        g = (0..dom)
            .map(|x| if x == 0 { 0 } else { g[g[x - 1] as usize] })
            .collect();
    }
    g.truncate(depth);
    g
}

#[test]
fn iterate_examples() {
    let t = nested_zero_operator();
    assert_eq!(
        iterate(&t, &NatFun::zero(), 1).prefix(8).unwrap(),
        vec![0; 8]
    );
    assert_eq!(
        iterate(&t, &NatFun::identity(), 1).prefix(3).unwrap(),
        vec![0, 0, 1]
    );
    let seed = NatFun::from_prefix(&[4, 2], 3);
    assert_eq!(
        iterate(&t, &seed, 0).prefix(4).unwrap(),
        seed.prefix(4).unwrap()
    );
}

#[test]
fn fix_examples() {
    let h = fix(&NatFunSpace, &nested_zero_operator(), NatFun::identity()).unwrap();
    assert_eq!(h.query(Level(4)).unwrap(), vec![0; 4]);
    assert!(!h.has_caveat());

    let h = fix(&StreamSpace, &naturals_operator(), Stream::zeros()).unwrap();
    assert_eq!(h.query(Level(5)).unwrap(), vec![0, 1, 2, 3, 4]);
    assert!(h.query(Level(0)).unwrap().is_empty());

    let h = fix(&StreamSpace, &fib_operator(), Stream::zeros()).unwrap();
    assert_eq!(h.query(Level(8)).unwrap(), vec![0, 1, 1, 2, 3, 5, 8, 13]);
}

#[test]
fn fix_needs_declaration_or_override() {
    let t = nested_zero_operator().with_mode(Mode::Unverified);
    assert!(fix(&NatFunSpace, &t, NatFun::zero()).is_err());
    let h = fix_with_override(&NatFunSpace, &t, NatFun::zero());
    assert!(h.has_caveat());
    assert_eq!(h.query(Level(50)).unwrap(), vec![0; 50]);
}

#[test]
fn deep_query_is_fast_with_memoization() {
    let t = nested_zero_operator();
    for seed in [NatFun::zero(), NatFun::identity(), NatFun::constant(7)] {
        let h = fix(&NatFunSpace, &t, seed).unwrap();
        assert_eq!(h.query(Level(64)).unwrap(), vec![0; 64]);
    }
}

#[test]
fn iterate_coherence_examples() {
    let t = nested_zero_operator();
    let r = iterate_coherence_probe(&NatFunSpace, &t, &NatFun::identity(), Level(8)).unwrap();
    assert!(r.is_pass());

    let swap = swap_operator();
    let r = iterate_coherence_probe(&Discrete, &swap, &DiscreteElem(0), Level(2)).unwrap();
    let cx = r.counterexample().unwrap();
    assert_eq!(cx.level, Level(1));
    assert!(fixcofe::checkers::replay(&Discrete, Some(&swap), cx).unwrap());

    let id = Operator::<NatFunSpace>::identity();
    let r = iterate_coherence_probe(&NatFunSpace, &id, &NatFun::identity(), Level(1)).unwrap();
    assert!(r.is_pass());
}

#[test]
fn seed_independence_examples() {
    let t = nested_zero_operator();
    let seeds = [NatFun::zero(), NatFun::identity(), NatFun::constant(7)];
    assert!(seed_independence_probe(&NatFunSpace, &t, &seeds, Level(16))
        .unwrap()
        .is_pass());

    let nat = naturals_operator();
    let seeds = [Stream::zeros(), Stream::constant(1)];
    assert!(
        seed_independence_probe(&StreamSpace, &nat, &seeds, Level(10))
            .unwrap()
            .is_pass()
    );
    let h = fix(&StreamSpace, &nat, Stream::constant(1)).unwrap();
    assert_eq!(h.query(Level(10)).unwrap(), (0..10).collect::<Vec<_>>());

    let id = Operator::<Discrete>::identity();
    let r = seed_independence_probe(
        &Discrete,
        &id,
        &[DiscreteElem(0), DiscreteElem(1)],
        Level(1),
    )
    .unwrap();
    let cx = r.counterexample().unwrap();
    assert_eq!(cx.level, Level(1));
    assert!(fixcofe::checkers::replay(&Discrete, Some(&id), cx).unwrap());
}

#[test]
fn stabilization_is_informational() {
    let t = nested_zero_operator();
    let zero = fix(&NatFunSpace, &t, NatFun::zero()).unwrap();
    assert_eq!(zero.stabilized_at(Level(16)).unwrap(), 0);
    let id = fix(&NatFunSpace, &t, NatFun::identity()).unwrap();
    let k = id.stabilized_at(Level(16)).unwrap();
    assert!(k > 0 && k <= 16);
    assert_eq!(
        NatFunSpace.truncate(Level(16), &id.iterate(k)).unwrap(),
        vec![0; 16]
    );
}

#[test]
fn concurrent_queries_agree() {
    let t = nested_zero_operator();
    let h = Arc::new(fix(&NatFunSpace, &t, NatFun::identity()).unwrap());
    let results: Vec<Vec<Value>> = (0..8)
        .map(|i| {
            let h = Arc::clone(&h);
            thread::spawn(move || h.query(Level(20 + i % 3)).unwrap())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|j| j.join().unwrap())
        .collect();
    for r in results {
        assert!(r.iter().all(|&v| v == 0));
    }
}

fn seed_table() -> impl Strategy<Value = (Vec<Value>, Value)> {
    (prop::collection::vec(0u64..10, 0..10), 0u64..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_array_oracle((prefix, default) in seed_table(), n in 0usize..10) {
        let t = nested_zero_operator();
        let seed = NatFun::from_prefix(&prefix, default);
        let engine = iterate(&t, &seed, n).prefix(12).unwrap();
        prop_assert_eq!(engine, oracle_iterates(&prefix, default, n, 12));
    }

    #[test]
    fn observations_stabilize_and_agree((pa, da) in seed_table(), (pb, db) in seed_table()) {
        let t = nested_zero_operator();
        let hx = fix(&NatFunSpace, &t, NatFun::from_prefix(&pa, da)).unwrap();
        let hy = fix(&NatFunSpace, &t, NatFun::from_prefix(&pb, db)).unwrap();
        let depth = 12;
        let top = hx.query(Level(depth)).unwrap();
        for n in 0..=depth {
            let q = hx.query(Level(n)).unwrap();
            prop_assert_eq!(&q, &NatFunSpace.restrict(&top, Level(n)));
            prop_assert_eq!(&q, &hy.query(Level(n)).unwrap());
            // Finite-depth fixed-point property.
            let next = NatFunSpace.truncate(Level(n), &hx.iterate(n + 1)).unwrap();
            prop_assert_eq!(&q, &next);
        }
    }

    #[test]
    fn iterate_unfolds_one_step((prefix, default) in seed_table(), n in 0usize..8) {
        let t = nested_zero_operator();
        let seed = NatFun::from_prefix(&prefix, default);
        let lhs = iterate(&t, &seed, n + 1).prefix(10).unwrap();
        let rhs = t.apply(&iterate(&t, &seed, n)).prefix(10).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contractive_stream_operators_pass_probes(prefix in prop::collection::vec(0u64..50, 0..8), rest in 0u64..50) {
        for op in [naturals_operator(), fib_operator()] {
            let seed = Stream::from_prefix(&prefix, rest);
            let r = iterate_coherence_probe(&StreamSpace, &op, &seed, Level(12)).unwrap();
            prop_assert!(r.is_pass());
            let r = seed_independence_probe(&StreamSpace, &op, &[seed, Stream::zeros()], Level(12)).unwrap();
            prop_assert!(r.is_pass());
        }
    }
}
