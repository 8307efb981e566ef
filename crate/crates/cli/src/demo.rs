use std::fmt::Write;

use fixcofe::catalog::{
    cauchy_sequence, fib_operator, naturals_operator, nested_zero_operator, NESTED_ZERO_SOURCE,
};
use fixcofe::checkers::{
    check_cfp, check_cfp_exhaustive, check_contractive, check_contractive_exhaustive,
    check_partial_fixpoint_lemma, EnumCap, Sampler,
};
use fixcofe::fixpoint::{fix, iterate_coherence_probe};
use fixcofe::instances::{NatFun, NatFunSpace, Stream, StreamSpace};
use fixcofe::ofe::{coherence_check, coherent_of_cauchy, limit};
use fixcofe::{CheckReport, Level, Ofe, Value};
use serde::Serialize;

use crate::args::{DemoArgs, Format};
use crate::{Failure, Outcome, EXIT_COUNTEREXAMPLE, EXIT_OK};

pub const NAMES: [&str; 4] = [
    "nested-zero",
    "naturals-stream",
    "fib-stream",
    "cauchy-coherent",
];

/// Depth of the checks run by the demos, independent of the displayed prefix.
const CHECK_DEPTH: Level = Level(8);

#[derive(Serialize)]
struct CheckLine {
    check: String,
    expected: &'static str,
    verdict: &'static str,
    cases: u64,
    premise_hits: u64,
    detail: String,
}

#[derive(Serialize)]
struct DemoJson {
    demo: String,
    depth: usize,
    prefix: Vec<Value>,
    checks: Vec<CheckLine>,
    ok: bool,
}

impl CheckLine {
    fn new<E>(report: &CheckReport<E>, expect_pass: bool) -> Self {
        CheckLine {
            check: report.check.clone(),
            expected: if expect_pass {
                "pass"
            } else {
                "counterexample"
            },
            verdict: if report.is_pass() {
                "pass"
            } else {
                "counterexample"
            },
            cases: report.stats.cases,
            premise_hits: report.stats.premise_hits,
            detail: report.to_string(),
        }
    }

    fn as_expected(&self) -> bool {
        self.expected == self.verdict
    }
}

fn default_depth(name: &str) -> usize {
    match name {
        "naturals-stream" => 10,
        "fib-stream" => 8,
        _ => 16,
    }
}

pub fn run(args: &DemoArgs) -> Outcome {
    let name = args.name.as_str();
    if !NAMES.contains(&name) {
        return Err(Failure::UnknownDemo(args.name.clone()));
    }
    let depth = args.depth.unwrap_or_else(|| default_depth(name));
    let mut notes = Vec::new();
    let (prefix, checks) = match name {
        "nested-zero" => nested_zero(depth, &mut notes)?,
        "naturals-stream" => stream_demo(naturals_operator(), depth)?,
        "fib-stream" => stream_demo(fib_operator(), depth)?,
        _ => cauchy(depth, &mut notes)?,
    };
    let ok = checks.iter().all(CheckLine::as_expected);
    let code = if ok { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
    let report = DemoJson {
        demo: name.into(),
        depth,
        prefix,
        checks,
        ok,
    };
    let mut out = String::new();
    if args.format == Format::Json {
        out = serde_json::to_string(&report).expect("serializable");
        out.push('\n');
    } else {
        writeln!(out, "demo {name}, depth {depth}").unwrap();
        for n in &notes {
            writeln!(out, "{n}").unwrap();
        }
        writeln!(out, "prefix: {:?}", report.prefix).unwrap();
        for c in &report.checks {
            let mark = if c.as_expected() {
                "as expected"
            } else {
                "UNEXPECTED"
            };
            writeln!(out, "[{mark}] {}", c.detail.replace('\n', "\n    ")).unwrap();
        }
    }
    Ok((code, out))
}

type DemoResult = Result<(Vec<Value>, Vec<CheckLine>), Failure>;

fn nested_zero(depth: usize, notes: &mut Vec<String>) -> DemoResult {
    let t = nested_zero_operator();
    notes.push(format!("definition: {NESTED_ZERO_SOURCE}"));
    let mut prefix = Vec::new();
    for (label, seed) in [
        ("zero", NatFun::zero()),
        ("id", NatFun::identity()),
        ("const:7", NatFun::constant(7)),
    ] {
        let h = fix(&NatFunSpace, &t, seed).expect("declared operator");
        let p = h.query(Level(depth))?;
        notes.push(format!("seed {label}: {p:?}"));
        prefix = p;
    }
    let cap = EnumCap::DEFAULT;
    let sampler = Sampler::default();
    let mut cfp = check_cfp_exhaustive(&t, 3, 3, CHECK_DEPTH, cap)?.and(check_cfp(
        &NatFunSpace,
        &t,
        &sampler,
        CHECK_DEPTH,
    )?);
    cfp.check = "cfp".into();
    let mut contractive = check_contractive_exhaustive(&t, 4, 3, Level(4), cap)?
        .and(check_contractive(&NatFunSpace, &t, &sampler, Level(4))?);
    contractive.check = "contractive".into();
    let lemma = check_partial_fixpoint_lemma(&t, 4, 3, Level(4), cap)?;
    let coherence = iterate_coherence_probe(&NatFunSpace, &t, &NatFun::identity(), Level(16))?;
    Ok((
        prefix,
        vec![
            CheckLine::new(&cfp, true),
            CheckLine::new(&contractive, false),
            CheckLine::new(&lemma, true),
            CheckLine::new(&coherence, true),
        ],
    ))
}

fn stream_demo(op: fixcofe::Operator<StreamSpace>, depth: usize) -> DemoResult {
    let h = fix(&StreamSpace, &op, Stream::zeros()).expect("declared operator");
    let prefix = h.query(Level(depth))?;
    let contractive = check_contractive(&StreamSpace, &op, &Sampler::default(), CHECK_DEPTH)?;
    let coherence = iterate_coherence_probe(&StreamSpace, &op, &Stream::zeros(), Level(16))?;
    Ok((
        prefix,
        vec![
            CheckLine::new(&contractive, true),
            CheckLine::new(&coherence, true),
        ],
    ))
}

fn cauchy(depth: usize, notes: &mut Vec<String>) -> DemoResult {
    let (s, m) = cauchy_sequence();
    let level = Level(depth);
    notes.push("sequence: term i is 0 below i/2 and (i mod 3) + 1 from there; modulus 2n".into());
    let mut raw = coherence_check(&NatFunSpace, &s, level)?;
    raw.check = "coherence of the raw sequence".into();
    let y = coherent_of_cauchy(&s, &m);
    let mut coherent = coherence_check(&NatFunSpace, &y, level)?;
    coherent.check = "coherence of the reindexed sequence".into();
    let lim = limit(&NatFunSpace, &y);
    // The limit must agree at level n with every term from index m(n) on.
    let mut agree = true;
    for n in level.up_to() {
        let want = NatFunSpace.truncate(n, &lim)?;
        for i in m.at(n)..m.at(n) + 4 {
            agree &= NatFunSpace.truncate(n, &s.at(i))? == want;
        }
    }
    notes.push(format!(
        "limits agree with late terms at every level <= {depth}: {agree}"
    ));
    let raw_line = CheckLine::new(&raw, false);
    let mut line = CheckLine::new(&coherent, true);
    if !agree {
        line.verdict = "counterexample";
    }
    Ok((NatFunSpace.truncate(level, &lim)?, vec![raw_line, line]))
}
