use std::env;
use std::fmt::Write;

use clap::ValueEnum;
use fixcofe::checkers::{
    check_cfp, check_cfp_exhaustive, check_contractive, check_contractive_exhaustive,
    check_ofe_laws, check_partial_fixpoint_lemma, replay, replay_lemma, EnumCap, Sample, Sampler,
};
use fixcofe::dsl::{compile, print_def, Definition};
use fixcofe::fixpoint::Operator;
use fixcofe::instances::{Codec, Discrete, Later, NatFunSpace, Product, StreamSpace};
use fixcofe::report::{CheckReport, Counterexample, Property, Witness};
use fixcofe::{Level, Ofe, Value};
use serde::{Deserialize, Serialize};

use crate::args::{CheckArgs, CheckKind, Format, InstanceKind};
use crate::{load_definition, read_file, Failure, Outcome, EXIT_COUNTEREXAMPLE, EXIT_OK};

pub const ENUM_CAP_VAR: &str = "FIXCOFE_ENUM_CAP";

/// Machine-readable check report; `--replay` reads it back.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub check: String,
    pub instance: String,
    pub definition: Option<String>,
    pub depth: usize,
    pub verdict: String,
    pub cases: u64,
    pub premise_hits: u64,
    pub rng_seed: u64,
    pub samples: usize,
    pub enum_len: Option<usize>,
    pub enum_max: Option<Value>,
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub property: Property,
    pub level: usize,
    pub conclusion_level: usize,
    pub elements: Vec<ElementJson>,
    pub observations: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ElementJson {
    /// Encoded seed element; `null` when it has no finite description.
    pub seed: Option<serde_json::Value>,
    pub iterations: usize,
}

fn enum_cap() -> Result<EnumCap, Failure> {
    match env::var(ENUM_CAP_VAR) {
        Err(_) => Ok(EnumCap::DEFAULT),
        Ok(v) => v
            .trim()
            .parse()
            .map(EnumCap)
            .map_err(|e| Failure::Input(format!("{ENUM_CAP_VAR}={v}: {e}"))),
    }
}

fn required_def(args: &CheckArgs) -> Result<Definition, Failure> {
    let path = args
        .def
        .as_ref()
        .ok_or_else(|| Failure::Input(format!("check {} needs --def", args.kind.name())))?;
    load_definition(path)
}

pub fn run(args: &CheckArgs) -> Outcome {
    if let Some(path) = &args.replay {
        return run_replay(args, &read_file(path)?);
    }
    let sampler = Sampler::new(args.rng_seed, args.samples);
    let depth = Level(args.depth);
    match args.kind {
        CheckKind::OfeLaws => match args.instance {
            InstanceKind::Natfun => laws(&NatFunSpace, args, &sampler),
            InstanceKind::Stream => laws(&StreamSpace, args, &sampler),
            InstanceKind::Discrete => laws(&Discrete, args, &sampler),
            InstanceKind::Product => laws(&Product::new(NatFunSpace, StreamSpace), args, &sampler),
            InstanceKind::Later => laws(&Later(NatFunSpace), args, &sampler),
        },
        CheckKind::Contractive | CheckKind::Cfp | CheckKind::Lemma => {
            let def = required_def(args)?;
            let op = compile(&def);
            let cap = enum_cap()?;
            let (len, max) = (args.enum_len, args.enum_max);
            let mut report =
                match args.kind {
                    CheckKind::Contractive => {
                        check_contractive_exhaustive(&op, len, max, depth, cap)?
                            .and(check_contractive(&NatFunSpace, &op, &sampler, depth)?)
                    }
                    CheckKind::Cfp => check_cfp_exhaustive(&op, len, max, depth, cap)?
                        .and(check_cfp(&NatFunSpace, &op, &sampler, depth)?),
                    _ => check_partial_fixpoint_lemma(&op, len, max, depth, cap)?,
                };
            report.check = args.kind.name().into();
            Ok(render(&NatFunSpace, args, Some(&def), &report))
        }
    }
}

fn instance_tag(kind: InstanceKind) -> String {
    match kind {
        InstanceKind::Natfun => NatFunSpace.tag(),
        InstanceKind::Stream => StreamSpace.tag(),
        InstanceKind::Discrete => Discrete.tag(),
        InstanceKind::Product => Product::new(NatFunSpace, StreamSpace).tag(),
        InstanceKind::Later => Later(NatFunSpace).tag(),
    }
}

fn instance_of_tag(tag: &str) -> Option<InstanceKind> {
    InstanceKind::value_variants()
        .iter()
        .copied()
        .find(|&k| instance_tag(k) == tag)
}

fn laws<I: Sample + Codec>(inst: &I, args: &CheckArgs, sampler: &Sampler) -> Outcome {
    let report = check_ofe_laws(inst, sampler, Level(args.depth))?;
    Ok(render(inst, args, None, &report))
}

fn to_json<I: Codec>(
    inst: &I,
    args: &CheckArgs,
    def: Option<&Definition>,
    report: &CheckReport<I::Elem>,
) -> ReportJson {
    let uses_tables = args.kind != CheckKind::OfeLaws;
    ReportJson {
        check: args.kind.name().into(),
        instance: inst.tag(),
        definition: def.map(print_def),
        depth: args.depth,
        verdict: if report.is_pass() {
            "pass"
        } else {
            "counterexample"
        }
        .into(),
        cases: report.stats.cases,
        premise_hits: report.stats.premise_hits,
        rng_seed: args.rng_seed,
        samples: args.samples,
        enum_len: uses_tables.then_some(args.enum_len),
        enum_max: uses_tables.then_some(args.enum_max),
        witness: report.counterexample().map(|cx| WitnessJson {
            property: cx.property,
            level: cx.level.get(),
            conclusion_level: cx.conclusion_level().get(),
            elements: cx
                .witnesses
                .iter()
                .map(|w| ElementJson {
                    seed: inst.encode(&w.seed),
                    iterations: w.iterations,
                })
                .collect(),
            observations: cx.observations.clone(),
        }),
    }
}

fn render<I: Codec>(
    inst: &I,
    args: &CheckArgs,
    def: Option<&Definition>,
    report: &CheckReport<I::Elem>,
) -> (i32, String) {
    let code = if report.is_pass() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    };
    let json = to_json(inst, args, def, report);
    let mut out = String::new();
    if args.format == Format::Text {
        match def {
            Some(d) => writeln!(out, "definition: {}", print_def(d)).unwrap(),
            None => writeln!(out, "instance: {}", json.instance).unwrap(),
        }
        writeln!(out, "{report}").unwrap();
        if let Some(w) = &json.witness {
            writeln!(out, "conclusion level: {}", w.conclusion_level).unwrap();
            for (i, e) in w.elements.iter().enumerate() {
                let seed = e
                    .seed
                    .as_ref()
                    .map_or_else(|| "<computed>".to_string(), |v| v.to_string());
                writeln!(out, "witness {i}: {seed} after {} iterations", e.iterations).unwrap();
            }
            writeln!(
                out,
                "rerun with --format json and pass the report to --replay to re-verify"
            )
            .unwrap();
        }
        write!(out, "rng seed {}, {} samples", args.rng_seed, args.samples).unwrap();
        if let (Some(l), Some(v)) = (json.enum_len, json.enum_max) {
            write!(out, ", tables of length {l} with values <= {v}").unwrap();
        }
        out.push('\n');
    } else {
        out = serde_json::to_string(&json).expect("serializable");
        out.push('\n');
    }
    (code, out)
}

fn decode_counterexample<I: Codec>(
    inst: &I,
    w: &WitnessJson,
) -> Result<Counterexample<I::Elem>, Failure> {
    let witnesses =
        w.elements
            .iter()
            .map(|e| {
                let seed = e.seed.as_ref().ok_or_else(|| {
                    Failure::Input("witness element has no stored encoding".into())
                })?;
                let seed = inst
                    .decode(seed)
                    .map_err(|err| Failure::Input(format!("witness element: {}", err.0)))?;
                Ok(Witness::iterate(seed, e.iterations))
            })
            .collect::<Result<_, Failure>>()?;
    Ok(Counterexample {
        property: w.property,
        level: Level(w.level),
        witnesses,
        observations: w.observations.clone(),
    })
}

fn replay_generic<I: Codec>(
    inst: &I,
    op: Option<&Operator<I>>,
    w: &WitnessJson,
) -> Result<bool, Failure> {
    let cx = decode_counterexample(inst, w)?;
    Ok(replay(inst, op, &cx)?)
}

fn run_replay(args: &CheckArgs, text: &str) -> Outcome {
    let report: ReportJson =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed report: {e}")))?;
    if report.check != args.kind.name() {
        return Err(Failure::Input(format!(
            "report is for check {}, not {}",
            report.check,
            args.kind.name()
        )));
    }
    let w = report
        .witness
        .as_ref()
        .ok_or_else(|| Failure::Input("report has no counterexample to replay".into()))?;
    let mut notes = String::new();
    let reproduced = match args.kind {
        CheckKind::OfeLaws => {
            let inst = instance_of_tag(&report.instance)
                .ok_or_else(|| Failure::Input(format!("unknown instance {}", report.instance)))?;
            match inst {
                InstanceKind::Natfun => replay_generic(&NatFunSpace, None, w)?,
                InstanceKind::Stream => replay_generic(&StreamSpace, None, w)?,
                InstanceKind::Discrete => replay_generic(&Discrete, None, w)?,
                InstanceKind::Product => {
                    replay_generic(&Product::new(NatFunSpace, StreamSpace), None, w)?
                }
                InstanceKind::Later => replay_generic(&Later(NatFunSpace), None, w)?,
            }
        }
        kind => {
            let def = required_def(args)?;
            if report.definition.as_deref() != Some(print_def(&def).as_str()) {
                writeln!(
                    notes,
                    "note: the report was produced for a different definition"
                )
                .unwrap();
            }
            let op = compile(&def);
            if kind == CheckKind::Lemma {
                replay_lemma(&op, &decode_counterexample(&NatFunSpace, w)?)?
            } else {
                replay_generic(&NatFunSpace, Some(&op), w)?
            }
        }
    };
    let code = if reproduced {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    };
    let mut out = String::new();
    if args.format == Format::Text {
        out.push_str(&notes);
        writeln!(
            out,
            "replay of {} counterexample at level {}: {}",
            w.property,
            w.level,
            if reproduced {
                "reproduces"
            } else {
                "does not reproduce"
            }
        )
        .unwrap();
    } else {
        let v = serde_json::json!({
            "check": report.check,
            "property": w.property,
            "level": w.level,
            "reproduced": reproduced,
        });
        out = v.to_string();
        out.push('\n');
    }
    Ok((code, out))
}
