mod args;
mod check;
mod demo;
mod solve;

use std::fmt;
use std::fs;
use std::path::Path;
use std::process;
use std::thread;

use clap::Parser;
use fixcofe::dsl::{parse_def, Definition};
use fixcofe::{CheckError, EvalError};

use args::{Cli, Command};

/// Deeply nested iterates recurse once per iteration when evaluated.
const STACK_BYTES: usize = 256 << 20;
const POOL_STACK_BYTES: usize = 64 << 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;

#[derive(Debug)]
pub enum Failure {
    /// Unreadable files, malformed reports, invalid parameters.
    Input(String),
    Parse(String),
    Runtime(String),
    UnknownDemo(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::Parse(_) => 2,
            Failure::Runtime(_) => 3,
            Failure::UnknownDemo(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Runtime(m) => write!(f, "runtime error: {m}"),
            Failure::UnknownDemo(name) => write!(
                f,
                "unknown demo `{name}` (available: {})",
                demo::NAMES.join(", ")
            ),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::InvalidInput(m) => Failure::Input(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Exit code plus the text to print on stdout.
pub type Outcome = Result<(i32, String), Failure>;

pub fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load_definition(path: &Path) -> Result<Definition, Failure> {
    let text = read_file(path)?;
    parse_def(&text).map_err(|e| {
        let (line, col) = line_col(&text, e.span().start);
        Failure::Parse(format!("{}:{line}:{col}: {e}", path.display()))
    })
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before
        .rfind('\n')
        .map_or(before.len(), |i| before.len() - i - 1)
        + 1;
    (line, col)
}

fn run(cli: Cli) -> i32 {
    let _ = rayon::ThreadPoolBuilder::new()
        .stack_size(POOL_STACK_BYTES)
        .build_global();
    let outcome = match &cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Check(a) => check::run(a),
        Command::Demo(a) => demo::run(a),
    };
    match outcome {
        Ok((code, out)) => {
            print!("{out}");
            code
        }
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let worker = thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || run(cli))
        .expect("spawn worker thread");
    let code = worker.join().unwrap_or_else(|_| {
        eprintln!("internal error");
        70
    });
    process::exit(code);
}
