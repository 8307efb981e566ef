use fixcofe::catalog::{fib_operator, naturals_operator, nested_zero_operator, swap_operator};
use fixcofe::checkers::{
    check_cfp, check_cfp_exhaustive, check_contractive, check_contractive_exhaustive,
    check_ofe_laws, check_partial_fixpoint_lemma, enumerate_natfun_tables, replay, replay_lemma,
    Bounds, EnumCap, Sample, SampleRng, Sampler,
};
use fixcofe::error::EvalError;
use fixcofe::fixpoint::{Mode, Operator};
use fixcofe::instances::{Discrete, Later, NatFun, NatFunSpace, Product, StreamSpace};
use fixcofe::ofe::{Level, Ofe, Value};
use fixcofe::report::{CheckReport, Counterexample, Property, Witness};
use proptest::prelude::*;
use rand::Rng;

/// Tables `{0 ↦ 5, 5 ↦ v}` with default 0 and `v ≤ 2`.
#[derive(Debug, Clone, Copy)]
struct FiveTables;

fn five_table(v: Value) -> NatFun {
    NatFun::natfun_from_table([(0, 5), (5, v)].into_iter().collect(), 0)
}

impl Ofe for FiveTables {
    type Elem = NatFun;
    type Obs = Vec<Value>;

    fn tag(&self) -> String {
        "five-tables".into()
    }

    fn truncate(&self, n: Level, a: &NatFun) -> Result<Vec<Value>, EvalError> {
        NatFunSpace.truncate(n, a)
    }

    fn restrict(&self, obs: &Vec<Value>, m: Level) -> Vec<Value> {
        NatFunSpace.restrict(obs, m)
    }
}

impl Sample for FiveTables {
    fn sample(&self, rng: &mut SampleRng, _: &Bounds) -> NatFun {
        five_table(rng.gen_range(0..=2))
    }

    // Every sample already agrees at argument 0, so level-1 splices are fresh samples.
    fn splice(
        &self,
        a: &NatFun,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<NatFun, EvalError> {
        if n.get() <= 1 {
            Ok(self.sample(rng, bounds))
        } else {
            Ok(a.clone())
        }
    }
}

/// Observations that compare `f(100)` at level 3 only: breaks nesting while
/// keeping restriction coherent.
#[derive(Debug, Clone, Copy)]
struct BrokenNesting;

#[derive(Debug, Clone)]
struct BrokenObs {
    level: usize,
    prefix: Vec<Value>,
    probe: Value,
}

impl PartialEq for BrokenObs {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
            && self.prefix == other.prefix
            && (self.level != 3 || self.probe == other.probe)
    }
}

impl Eq for BrokenObs {}

impl Ofe for BrokenNesting {
    type Elem = NatFun;
    type Obs = BrokenObs;

    fn tag(&self) -> String {
        "broken-nesting".into()
    }

    fn truncate(&self, n: Level, a: &NatFun) -> Result<BrokenObs, EvalError> {
        Ok(BrokenObs {
            level: n.get(),
            prefix: a.prefix(n.get())?,
            probe: a.eval(100)?,
        })
    }

    fn restrict(&self, obs: &BrokenObs, m: Level) -> BrokenObs {
        BrokenObs {
            level: m.get(),
            prefix: obs.prefix[..m.get()].to_vec(),
            probe: obs.probe,
        }
    }
}

impl Sample for BrokenNesting {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> NatFun {
        NatFunSpace.sample(rng, bounds)
    }

    fn splice(
        &self,
        a: &NatFun,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<NatFun, EvalError> {
        NatFunSpace.splice(a, n, rng, bounds)
    }
}

fn report_fingerprint<E: std::fmt::Debug>(r: &CheckReport<E>) -> String {
    format!("{r} {:?} {:?}", r.stats, r.counterexample())
}

// T(a)(x) computed from the definition directly.
fn t_oracle(a: &NatFun, x: Value) -> Value {
    if x == 0 {
        0
    } else {
        a.eval(a.eval(x - 1).unwrap()).unwrap()
    }
}

#[test]
fn nested_zero_is_not_contractive_on_five_tables() {
    let t = nested_zero_operator();
    let t5 = {
        let t = t.clone();
        Operator::<FiveTables>::new("T", Mode::Unverified, move |g| t.apply(g))
    };
    let r = check_contractive(&FiveTables, &t5, &Sampler::new(1, 64), Level(2)).unwrap();
    let cx = r.counterexample().expect("T is not contractive");
    assert_eq!(cx.property, Property::Contractive);
    assert_eq!(cx.level, Level(1));
    let a = &cx.witnesses[0].seed;
    let b = &cx.witnesses[1].seed;
    assert_eq!(a.eval(0).unwrap(), 5);
    assert_eq!(b.eval(0).unwrap(), 5);
    assert_ne!(t_oracle(a, 1), t_oracle(b, 1));
    assert_eq!(t_oracle(a, 1), a.eval(5).unwrap());
    assert!(replay(&FiveTables, Some(&t5), cx).unwrap());

    // The pair {0↦5,5↦1} and {0↦5,5↦2} directly.
    let cx = Counterexample {
        property: Property::Contractive,
        level: Level(1),
        witnesses: vec![Witness::plain(five_table(1)), Witness::plain(five_table(2))],
        observations: vec![],
    };
    assert!(replay(&NatFunSpace, Some(&t), &cx).unwrap());
}

#[test]
fn identity_is_not_contractive() {
    let id = Operator::<NatFunSpace>::identity();
    let r = check_contractive(&NatFunSpace, &id, &Sampler::default(), Level(4)).unwrap();
    let cx = r.counterexample().unwrap();
    let (a, b) = (&cx.witnesses[0].seed, &cx.witnesses[1].seed);
    let n = cx.level.get();
    assert_eq!(a.prefix(n).unwrap(), b.prefix(n).unwrap());
    assert_ne!(a.prefix(n + 1).unwrap(), b.prefix(n + 1).unwrap());
    assert!(replay(&NatFunSpace, Some(&id), cx).unwrap());
}

#[test]
fn stream_operators_are_contractive() {
    for op in [naturals_operator(), fib_operator()] {
        let r = check_contractive(&StreamSpace, &op, &Sampler::default(), Level(8)).unwrap();
        assert!(r.is_pass(), "{r}");
        assert!(r.stats.premise_hits > 0);
        // Contractive operators pass the weaker check on the same sampler.
        let r = check_cfp(&StreamSpace, &op, &Sampler::default(), Level(8)).unwrap();
        assert!(r.is_pass(), "{r}");
    }
}

#[test]
fn nested_zero_is_cfp() {
    let t = nested_zero_operator();
    let r = check_cfp(&NatFunSpace, &t, &Sampler::default(), Level(8)).unwrap();
    assert!(r.is_pass(), "{r}");
    assert!(r.stats.premise_hits > 0);
    let r = check_cfp_exhaustive(&t, 3, 3, Level(3), EnumCap::DEFAULT).unwrap();
    assert!(r.is_pass(), "{r}");
    assert!(r.stats.premise_hits > 0);
}

#[test]
fn swap_is_not_cfp() {
    let swap = swap_operator();
    let sampler = Sampler::new(3, 50).with_bounds(Bounds {
        prefix_len: 0,
        max_value: 1,
    });
    let r = check_cfp(&Discrete, &swap, &sampler, Level(2)).unwrap();
    let cx = r.counterexample().unwrap();
    assert_eq!(cx.property, Property::ContractiveOnFixedPoints);
    assert_eq!(cx.conclusion_level(), Level(1));
    assert!(replay(&Discrete, Some(&swap), cx).unwrap());
}

#[test]
fn depth_one_cfp_is_plain_level_one_check() {
    // At n = 0 every premise holds, so hits equal cases.
    let t = nested_zero_operator();
    let r = check_cfp(&NatFunSpace, &t, &Sampler::new(9, 100), Level(1)).unwrap();
    assert!(r.is_pass());
    assert_eq!(r.stats.cases, r.stats.premise_hits);
}

#[test]
fn exhaustive_contractive_counterexample_is_least() {
    let t = nested_zero_operator();
    let r = check_contractive_exhaustive(&t, 6, 2, Level(4), EnumCap::DEFAULT).unwrap();
    let cx = r.counterexample().unwrap();
    assert_eq!(cx.level, Level(1));
    let (a, b) = (&cx.witnesses[0].seed, &cx.witnesses[1].seed);
    assert_eq!(a.prefix(6).unwrap(), vec![1, 0, 0, 0, 0, 0]);
    assert_eq!(b.prefix(6).unwrap(), vec![1, 1, 0, 0, 0, 0]);
    assert_eq!(a.eval(0).unwrap(), b.eval(0).unwrap());
    assert_ne!(t_oracle(a, 1), t_oracle(b, 1));
    assert!(replay(&NatFunSpace, Some(&t), cx).unwrap());
}

#[test]
fn enumeration_cap_is_enforced() {
    assert!(enumerate_natfun_tables(6, 2, EnumCap(100)).is_err());
    let t = nested_zero_operator();
    assert!(check_cfp_exhaustive(&t, 7, 9, Level(2), EnumCap::DEFAULT).is_err());
}

#[test]
fn lemma_holds_for_nested_zero() {
    let t = nested_zero_operator();
    let r = check_partial_fixpoint_lemma(&t, 4, 3, Level(4), EnumCap::DEFAULT).unwrap();
    assert!(r.is_pass(), "{r}");
    assert_eq!(r.stats.cases, 256 * 5);
    let r = check_partial_fixpoint_lemma(&t, 1, 0, Level(1), EnumCap::DEFAULT).unwrap();
    assert!(r.is_pass());
    assert_eq!(r.stats.premise_hits, 2);
}

#[test]
fn lemma_fails_for_identity() {
    let id = Operator::<NatFunSpace>::identity();
    let r = check_partial_fixpoint_lemma(&id, 2, 1, Level(2), EnumCap::DEFAULT).unwrap();
    let cx = r.counterexample().unwrap();
    // Least in level-major order.
    assert_eq!(cx.level, Level(1));
    assert_eq!(cx.witnesses[0].seed.prefix(2).unwrap(), vec![1, 0]);
    assert!(replay_lemma(&id, cx).unwrap());

    let full_witness = Counterexample {
        property: Property::PartialFixpointLemma,
        level: Level(2),
        witnesses: vec![Witness::plain(NatFun::from_prefix(&[1, 1], 0))],
        observations: vec![],
    };
    assert!(replay_lemma(&id, &full_witness).unwrap());
    assert!(!replay_lemma(&nested_zero_operator(), &full_witness).unwrap());
}

#[test]
fn lemma_brute_force_oracle() {
    // Independent restatement over raw vectors.
    let t = nested_zero_operator();
    for f in enumerate_natfun_tables(3, 3, EnumCap::DEFAULT).unwrap() {
        let raw = f.prefix(3).unwrap();
        let at = |k: Value| raw.get(k as usize).copied().unwrap_or(0);
        let tf: Vec<Value> = (0..3)
            .map(|x| if x == 0 { 0 } else { at(at(x - 1)) })
            .collect();
        assert_eq!(tf, t.apply(&f).prefix(3).unwrap());
        for n in 0..=3 {
            if raw[..n] == tf[..n] {
                assert!(raw[..n].iter().all(|&v| v == 0));
            }
        }
    }
}

#[test]
fn law_suite_on_all_instances() {
    let s = Sampler::new(11, 200);
    let d = Level(16);
    assert!(check_ofe_laws(&NatFunSpace, &s, d).unwrap().is_pass());
    assert!(check_ofe_laws(&StreamSpace, &s, d).unwrap().is_pass());
    assert!(check_ofe_laws(&Discrete, &s, d).unwrap().is_pass());
    assert!(check_ofe_laws(&Product::new(NatFunSpace, Discrete), &s, d)
        .unwrap()
        .is_pass());
    assert!(check_ofe_laws(&Later(StreamSpace), &s, d)
        .unwrap()
        .is_pass());
}

#[test]
fn broken_fixture_fails_nesting() {
    let r = check_ofe_laws(&BrokenNesting, &Sampler::new(11, 200), Level(16)).unwrap();
    let cx = r.counterexample().unwrap();
    assert_eq!(cx.property, Property::Nesting);
    assert_eq!(cx.level, Level(3));
    assert!(replay(&BrokenNesting, None, cx).unwrap());
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let t = nested_zero_operator();
    let id = Operator::<NatFunSpace>::identity();
    let run = || {
        (
            report_fingerprint(
                &check_cfp(&NatFunSpace, &t, &Sampler::new(5, 300), Level(6)).unwrap(),
            ),
            report_fingerprint(
                &check_contractive(&NatFunSpace, &id, &Sampler::new(5, 300), Level(6)).unwrap(),
            ),
            report_fingerprint(
                &check_ofe_laws(&StreamSpace, &Sampler::new(5, 100), Level(8)).unwrap(),
            ),
        )
    };
    let parallel = run();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(run);
    assert_eq!(parallel, single);
    assert_eq!(parallel, run());
}

#[test]
fn invalid_inputs_are_rejected() {
    let t = nested_zero_operator();
    assert!(check_cfp(&NatFunSpace, &t, &Sampler::default(), Level(0)).is_err());
    assert!(check_partial_fixpoint_lemma(&t, 2, 1, Level(3), EnumCap::DEFAULT).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), index in 0usize..1000) {
        let s = Sampler::new(seed, 1);
        let a = NatFunSpace.sample(&mut s.rng(index), &s.bounds);
        let b = NatFunSpace.sample(&mut s.rng(index), &s.bounds);
        prop_assert_eq!(a.prefix(20).unwrap(), b.prefix(20).unwrap());
    }

    #[test]
    fn splice_preserves_level(seed in any::<u64>(), n in 0usize..12) {
        let s = Sampler::new(seed, 1);
        let mut rng = s.rng(0);
        let a = NatFunSpace.sample(&mut rng, &s.bounds);
        let b = NatFunSpace.splice(&a, Level(n), &mut rng, &s.bounds).unwrap();
        prop_assert!(NatFunSpace.approx_eq(Level(n), &a, &b).unwrap());
    }

    #[test]
    fn counterexamples_replay(seed in any::<u64>()) {
        let id = Operator::<NatFunSpace>::identity();
        let r = check_contractive(&NatFunSpace, &id, &Sampler::new(seed, 20), Level(4)).unwrap();
        if let Some(cx) = r.counterexample() {
            prop_assert!(replay(&NatFunSpace, Some(&id), cx).unwrap());
        }
    }

    #[test]
    fn contractive_pass_implies_cfp_pass(seed in any::<u64>(), c in 0u64..5) {
        let shift = Operator::<StreamSpace>::new("shift", Mode::Contractive, move |s: &fixcofe::instances::Stream| {
            fixcofe::instances::Stream::cons(c, s.clone())
        });
        let s = Sampler::new(seed, 30);
        for op in [shift, naturals_operator(), fib_operator()] {
            if check_contractive(&StreamSpace, &op, &s, Level(6)).unwrap().is_pass() {
                prop_assert!(check_cfp(&StreamSpace, &op, &s, Level(6)).unwrap().is_pass());
            }
        }
    }
}
