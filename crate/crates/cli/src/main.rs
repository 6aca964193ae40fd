mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spreadlab::bounds::{self, legacy_2012_counterexample, BoundMethod};
use spreadlab::search::{check_monotonicity, ConjectureOptions, Verdict, DEFAULT_CHUNK_SIZE};
use spreadlab::structures::DEFAULT_PATH_CAP;
use spreadlab::{par, spectral, tables, Exec, MatrixKind};

use input::{GraphInput, LoadError};
use render::Format;

/// Version of the JSON envelope written by every command.
pub const SCHEMA_VERSION: u32 = 1;

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "spreadlab", version, about = "Distance and distance signless Laplacian spreads of graphs")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixArg {
    Distance,
    Dsl,
}

impl From<MatrixArg> for MatrixKind {
    fn from(m: MatrixArg) -> Self {
        match m {
            MatrixArg::Distance => MatrixKind::Distance,
            MatrixArg::Dsl => MatrixKind::Dsl,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    BipartiteDistance,
    BipartiteDsl,
    Clique,
    Diameter,
    Cactus,
    #[value(name = "legacy-2012")]
    Legacy2012,
}

impl From<MethodArg> for BoundMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::BipartiteDistance => BoundMethod::BipartiteDistance,
            MethodArg::BipartiteDsl => BoundMethod::BipartiteDsl,
            MethodArg::Clique => BoundMethod::Clique,
            MethodArg::Diameter => BoundMethod::Diameter,
            MethodArg::Cactus => BoundMethod::Cactus,
            MethodArg::Legacy2012 => BoundMethod::Legacy2012,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full spectrum and spread of D or Q
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = MatrixArg::Distance)]
        matrix: MatrixArg,
    },
    /// Quotient-matrix lower bound on the spread
    Bound {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Vertex (1-based) for legacy-2012; default: first of maximum degree
        #[arg(long)]
        vertex: Option<usize>,
        /// Most diameter paths to evaluate
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: usize,
    },
    /// Recompute every published table cell
    VerifyTables {
        /// Row id `group:graph`, a group, or a graph name
        #[arg(long)]
        only: Option<String>,
        /// Same as `--format json`
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive check that the balanced complete bipartite graph minimizes S_Q
    Conjecture {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=10))]
        n: u64,
        /// Resumable progress file
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
        chunk_size: u64,
        /// Run on one thread
        #[arg(long)]
        sequential: bool,
        /// Abort after this many chunks (resumption testing)
        #[arg(long, hide = true)]
        stop_after: Option<usize>,
    },
    /// S_Q(K_{a,n-a}) for a = 1..n/2
    Monotonicity {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..))]
        n: u64,
    },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    input: Option<String>,
    vertex_labels: &'static str,
    result: T,
}

/// A rendered report plus the exit status it implies.
struct Output {
    text: String,
    status: u8,
}

struct Failure {
    message: String,
    status: u8,
}

impl From<spreadlab::Error> for Failure {
    fn from(e: spreadlab::Error) -> Self {
        Failure {
            status: if e.is_domain() { EXIT_DOMAIN } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Lib(e) => e.into(),
            LoadError::Io(message) => Failure {
                message,
                status: EXIT_USAGE,
            },
        }
    }
}

fn json<T: Serialize>(command: &str, input: Option<String>, result: T) -> Result<String, Failure> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        input,
        vertex_labels: "0-based",
        result,
    };
    serde_json::to_string_pretty(&env)
        .map(|s| s + "\n")
        .map_err(|e| Failure {
            message: e.to_string(),
            status: EXIT_USAGE,
        })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ok = |text| Ok(Output { text, status: 0 });
    match &cli.command {
        Command::Spectrum { input, matrix } => {
            let g = input.load()?;
            let kind = MatrixKind::from(*matrix);
            let spec = spectral::spectrum(&g, kind)?;
            let result = render::SpectrumResult::new(&g, kind, &spec);
            match cli.format {
                Format::Json => ok(json("spectrum", Some(input.describe()), &result)?),
                Format::Csv => ok(render::spectrum_csv(&result)),
                Format::Plain => ok(render::spectrum_plain(&input.describe(), &result)),
            }
        }
        Command::Bound { input, method, vertex, cap } => {
            let g = input.load()?;
            let method = BoundMethod::from(*method);
            if method == BoundMethod::Legacy2012 {
                let v = match vertex {
                    Some(0) => return Err(spreadlab::Error::OutOfRange("vertices are numbered from 1".into()).into()),
                    Some(v) => v - 1,
                    None => (0..g.order()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap_or(0),
                };
                let cmp = legacy_2012_counterexample(&g, v)?;
                return match cli.format {
                    Format::Json => ok(json("bound", Some(input.describe()), &cmp)?),
                    Format::Csv => ok(render::legacy_csv(&cmp)),
                    Format::Plain => ok(render::legacy_plain(&input.describe(), &cmp)),
                };
            }
            let rep = bounds::bound(&g, method, *cap)?;
            match cli.format {
                Format::Json => ok(json("bound", Some(input.describe()), &rep)?),
                Format::Csv => ok(render::bound_csv(&rep)),
                Format::Plain => ok(render::bound_plain(&input.describe(), &rep)),
            }
        }
        Command::VerifyTables { only, json: as_json } => {
            let cells = tables::verify(only.as_deref())?;
            let status = if cells.iter().all(|c| c.pass) { 0 } else { EXIT_VERIFY };
            let text = match (cli.format, as_json) {
                (Format::Json, _) | (_, true) => json("verify-tables", None, &cells)?,
                (Format::Csv, _) => render::cells_csv(&cells),
                (Format::Plain, _) => render::cells_plain(&cells),
            };
            Ok(Output { text, status })
        }
        Command::Conjecture {
            n,
            checkpoint,
            chunk_size,
            sequential,
            stop_after,
        } => {
            let options = ConjectureOptions {
                exec: if *sequential { Exec::Sequential } else { Exec::Parallel },
                threads: par::threads_from_env()?,
                chunk_size: *chunk_size,
                checkpoint: checkpoint.clone(),
                stop_after: *stop_after,
            };
            let rep = spreadlab::check_conjecture(*n as usize, &options)?;
            let status = if rep.verdict == Verdict::Holds { 0 } else { EXIT_VERIFY };
            let text = match cli.format {
                Format::Json => json("conjecture", None, &rep)?,
                Format::Csv => render::conjecture_csv(&rep),
                Format::Plain => render::conjecture_plain(&rep),
            };
            Ok(Output { text, status })
        }
        Command::Monotonicity { n } => {
            let m = check_monotonicity(*n as usize)?;
            let status = if m.strictly_decreasing { 0 } else { EXIT_VERIFY };
            let text = match cli.format {
                Format::Json => json("monotonicity", None, &m)?,
                Format::Csv => render::monotonicity_csv(&m),
                Format::Plain => render::monotonicity_plain(&m),
            };
            Ok(Output { text, status })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(out.status),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
