use std::io::Write;
use std::path::PathBuf;

use bratteli::{lambda_sequence, BratteliDiagram, UDWord};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quiver_count::{count_hom_bruteforce, eval_word, eval_word_operator, multiplicity_bound, ShapeQuiver};
use serde_json::{json, Value};

use crate::error::{HarnessError, Result};
use crate::json::{big, to_csv};
use crate::oracles;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "gtsov", version, about = "Bratteli diagrams, morphism counts and instrumented group Fourier transforms")]
pub struct Cli {
    /// Seed for every random input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Include wall-clock times. Off by default so that output is reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// S, B, D or C.
    #[arg(long)]
    pub family: String,
    /// Rank for S, B and D; the group order for C.
    #[arg(long)]
    pub n: usize,
    /// Divisor tower for C, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub tower: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct DiagramSource {
    #[arg(long, required_unless_present = "from")]
    pub family: Option<String>,
    #[arg(long, required_unless_present = "from")]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub tower: Option<Vec<u64>>,
    /// Read the diagram from a JSON file written by `diagram build`.
    #[arg(long, conflicts_with_all = ["family", "n", "tower"])]
    pub from: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Diagram(DiagramCmd),
    #[command(subcommand)]
    Count(CountCmd),
    #[command(subcommand)]
    Fft(FftCmd),
    #[command(subcommand)]
    Gl(GlCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum DiagramCmd {
    /// Build a diagram and print or save it as JSON.
    Build {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The constants λ_i with DU − UD = λ_i on level i.
    Lambdas {
        #[command(flatten)]
        source: DiagramSource,
    },
    /// Vertices of one level with their dimensions and, below the cap, their paths.
    Paths {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1000)]
        cap: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CountCmd {
    /// Value of a word in U and D applied to the root, e.g. D5U2DU4.
    Word {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
    },
    /// Morphisms from a graded quiver given by vertex grades and edges like 0-1.
    Quiver {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_delimiter = ',')]
        grades: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<String>,
    },
    /// Largest number of paths between a level-i vertex and a level-(i − span) vertex.
    Bound {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 1)]
        span: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FftCmd {
    /// Instrumented transform of a random function with its cost chain.
    Run {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Naive transform of the same random function.
    Naive {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Forward and inverse transform; reports the round-trip error.
    Invert {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Transform of a function on G_n / G_{n−k}.
    Homogeneous {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GlCmd {
    /// Factor the coset representative of a pair (x, y).
    Factor {
        #[arg(long)]
        q: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<i64>,
    },
    /// Brute-force coset coverage of GL_{n−1}(q) in GL_n(q).
    VerifyCosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Multiplicity, jump and H-shape checks on the B and D diagrams.
    AppendixC {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Measured, predicted and bound multiplications per level.
    Bounds {
        #[command(flatten)]
        group: GroupArgs,
    },
}

fn chain(g: &GroupArgs) -> Result<algebra_core::GroupChain> {
    oracles::chain_for(oracles::parse_family(&g.family)?, g.n, g.tower.as_deref())
}

fn diagram(g: &GroupArgs) -> Result<BratteliDiagram> {
    oracles::diagram_for(&chain(g)?)
}

fn load(source: &DiagramSource) -> Result<BratteliDiagram> {
    match &source.from {
        Some(path) => Ok(BratteliDiagram::from_json(&std::fs::read_to_string(path)?)?),
        None => {
            let family = source.family.clone().unwrap_or_default();
            let n = source.n.unwrap_or_default();
            diagram(&GroupArgs { family, n, tower: source.tower.clone() })
        }
    }
}

fn parse_edge(s: &str) -> Result<(usize, usize)> {
    let bad = || HarnessError::Argument(format!("edge {s} is not of the form a-b"));
    let (a, b) = s.split_once('-').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn execute(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Diagram(DiagramCmd::Build { group, out }) => {
            let text = diagram(group)?.to_json();
            match out {
                Some(path) => {
                    std::fs::write(path, &text)?;
                    Ok(json!({"written": path.display().to_string(), "bytes": text.len()}))
                }
                None => serde_json::from_str(&text).map_err(|e| HarnessError::Argument(e.to_string())),
            }
        }
        Command::Diagram(DiagramCmd::Lambdas { source }) => {
            let d = load(source)?;
            let lambdas: Vec<Value> = lambda_sequence(&d)?.iter().map(big).collect();
            Ok(json!({"n": d.n(), "lambdas": lambdas}))
        }
        Command::Diagram(DiagramCmd::Paths { source, level, cap }) => {
            let d = load(source)?;
            if *level > d.n() {
                return Err(HarnessError::Argument(format!("level {level} is above the top level {}", d.n())));
            }
            let mut rows = Vec::new();
            for &v in d.level(*level) {
                let paths = match d.enumerate_paths_capped(v, *cap) {
                    Ok(ps) => Some(
                        ps.iter().map(|p| p.vertices.iter().skip(1).map(|&u| d.label(u).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    ),
                    Err(_) => None,
                };
                rows.push(json!({"label": d.label(v).to_string(), "dim": big(d.dim(v)), "paths": paths}));
            }
            Ok(json!({"level": level, "rows": rows}))
        }
        Command::Count(CountCmd::Word { group, word }) => {
            let d = diagram(group)?;
            let w: UDWord = word.parse()?;
            let v = eval_word(&d, &w)?;
            let by_operator: num_bigint::BigInt = eval_word_operator(&d, &w).values().sum();
            Ok(json!({
                "word": w.to_string(),
                "value": big(&v.total),
                "closed_form": v.closed_form,
                "operator_value": by_operator.to_string(),
            }))
        }
        Command::Count(CountCmd::Quiver { group, grades, edges }) => {
            let d = diagram(group)?;
            let edges = edges.iter().map(|e| parse_edge(e)).collect::<Result<Vec<_>>>()?;
            let q = ShapeQuiver::new(grades.clone(), edges)?;
            Ok(json!({"value": big(&count_hom_bruteforce(&q, &d)?)}))
        }
        Command::Count(CountCmd::Bound { group, level, span }) => {
            let d = diagram(group)?;
            Ok(json!({"level": level, "span": span, "value": big(&multiplicity_bound(&d, *level, *span)?)}))
        }
        Command::Fft(FftCmd::Run { group }) => Ok(oracles::run_fft(&chain(group)?, cli.seed, cli.timing)?.to_json()),
        Command::Fft(FftCmd::Naive { group }) => oracles::naive_report(&chain(group)?, cli.seed),
        Command::Fft(FftCmd::Invert { group }) => oracles::invert_report(&chain(group)?, cli.seed),
        Command::Fft(FftCmd::Homogeneous { group, k }) => {
            Ok(oracles::homogeneous_report(&chain(group)?, *k, cli.seed, cli.timing)?.to_json())
        }
        Command::Gl(GlCmd::Factor { q, x, y }) => oracles::gl_factor_report(*q, x, y),
        Command::Gl(GlCmd::VerifyCosets { n, q }) => oracles::gl_cosets_report(*n, *q),
        Command::Verify(VerifyCmd::AppendixC { n }) => oracles::verify_appendix_c(*n),
        Command::Verify(VerifyCmd::Bounds { group }) => oracles::verify_bounds(&chain(group)?, cli.seed),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize") + "\n",
        Format::Csv => to_csv(v),
    }
}

/// Parse `args` (program name first), run the command and write its output.
/// Returns the process exit code: 0 on success, 1 when the computation
/// fails, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let _ = out.write_all(render(&v, cli.format).as_bytes());
            0
        }
        Err(e) => {
            let v = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            let _ = out.write_all(render(&v, Format::Json).as_bytes());
            1
        }
    }
}

/// [`run`] against the process's own arguments and standard streams.
pub fn cli_dispatch() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
