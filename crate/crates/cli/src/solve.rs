use std::fmt::Write;

use fixcofe::dsl::{compile, print_def};
use fixcofe::fixpoint::fix_with_override;
use fixcofe::instances::NatFunSpace;
use fixcofe::{Level, Value};
use serde::Serialize;

use crate::args::{Format, SolveArgs};
use crate::{load_definition, Outcome, EXIT_OK};

#[derive(Serialize)]
struct SolveJson<'a> {
    name: &'a str,
    depth: usize,
    prefix: &'a [Value],
    seed: String,
    stabilized_at: usize,
}

pub fn run(args: &SolveArgs) -> Outcome {
    let def = load_definition(&args.def)?;
    let op = compile(&def);
    // Compiled definitions are never declared; the engine runs them under override.
    let h = fix_with_override(&NatFunSpace, &op, args.seed_fn.build());
    let depth = Level(args.depth);
    let prefix = h.query(depth)?;
    let stabilized = h.stabilized_at(depth)?;

    let mut out = String::new();
    match args.format {
        Format::Json => {
            let json = SolveJson {
                name: &def.name,
                depth: args.depth,
                prefix: &prefix,
                seed: args.seed_fn.to_string(),
                stabilized_at: stabilized,
            };
            out = serde_json::to_string(&json).expect("serializable");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("index,value\n");
            for (i, v) in prefix.iter().enumerate() {
                writeln!(out, "{i},{v}").unwrap();
            }
        }
        Format::Text => {
            writeln!(out, "{}", print_def(&def)).unwrap();
            writeln!(out, "seed: {}", args.seed_fn).unwrap();
            writeln!(out, "depth: {} ({} iterations)", args.depth, args.depth).unwrap();
            writeln!(out, "prefix: {prefix:?}").unwrap();
            writeln!(
                out,
                "prefix stabilized at iteration {stabilized} (informational)"
            )
            .unwrap();
            writeln!(
                out,
                "note: `{}` is not verified contractive on fixed points; `check cfp` tests it",
                def.name
            )
            .unwrap();
        }
    }
    Ok((EXIT_OK, out))
}
