//! Command-line front end. Exit status 0 means the answer is yes, 1 means
//! the property is false, 2 means the input was rejected.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "collider", version, about = "Collision complexes and genus-one (Q,K)-stability")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Which vertices the tails of a contraction datum must avoid.
    #[arg(long, global = true, value_enum, default_value_t = Locus::Closed)]
    tail_locus: Locus,
    /// Worker threads for exhaustive sweeps.
    #[arg(long, global = true, env = "COLLIDER_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Locus {
    Closed,
    Open,
}

impl From<Locus> for collider::qk::TailLocus {
    fn from(l: Locus) -> Self {
        match l {
            Locus::Closed => collider::qk::TailLocus::Closed,
            Locus::Open => collider::qk::TailLocus::Open,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Simplicial complexes and threshold certificates.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Stable graphs and the assignment Z_K.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Stability and levels of curve models.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Tropical curves, tail functions and face contractions.
    #[command(subcommand)]
    Trop(TropCmd),
    /// Contraction data and (Q,K) limits.
    #[command(subcommand)]
    Qk(QkCmd),
    /// Reference reproductions.
    #[command(subcommand)]
    Repro(ReproCmd),
}

/// A complex given as "n:12/34", or as faces with --n, or as JSON.
#[derive(Args, Clone)]
pub struct ComplexInput {
    #[arg(long = "K", alias = "complex")]
    pub k: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// JSON file, "-" for stdin, or inline JSON.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Subcommand)]
pub enum ComplexCmd {
    /// Validate a complex and summarize it.
    Check(ComplexInput),
    /// Downward closure of the given faces.
    Closure(ComplexInput),
    /// Exit 0 iff every K-partition has at least three parts.
    Triparted(ComplexInput),
    /// Weights realizing the complex, or exit 1.
    Threshold(ComplexInput),
    /// Number of complexes and threshold complexes on n marks.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        upto_iso: bool,
    },
    /// List complexes on n marks.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        triparted_only: bool,
        #[arg(long)]
        upto_iso: bool,
    },
}

#[derive(Subcommand)]
pub enum GraphCmd {
    /// Rational tails of a marked graph.
    Tails {
        #[arg(long)]
        input: String,
    },
    /// Vertices of Z_K.
    Zk {
        #[arg(long)]
        input: String,
        #[arg(long = "K")]
        k: String,
    },
    /// The K-stable curve obtained by contracting Z_K.
    Reduce {
        #[arg(long)]
        input: String,
        #[arg(long = "K")]
        k: String,
    },
    /// Stable graphs of genus g with n legs, up to isomorphism.
    Enumerate {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Q6 {
    Proxy,
    Strict,
}

#[derive(Subcommand)]
pub enum CurveCmd {
    /// K-stability with a violation report.
    CheckK {
        #[arg(long)]
        input: String,
        #[arg(long = "K")]
        k: String,
    },
    /// (Q,K)-stability with a violation report.
    CheckQk {
        #[arg(long)]
        input: String,
        #[arg(long = "Q")]
        q: String,
        #[arg(long = "K")]
        k: String,
        #[arg(long, value_enum, default_value_t = Q6::Proxy)]
        q6: Q6,
    },
    /// Hassett stability for weights such as "1/2,1/2,1".
    CheckHassett {
        #[arg(long)]
        input: String,
        #[arg(long)]
        weights: String,
    },
    /// Levels of the elliptic point and of genus-one subcurves.
    Level {
        #[arg(long)]
        input: String,
        /// Only this subcurve, as comma-separated component ids.
        #[arg(long)]
        subcurve: Option<String>,
    },
}

/// A tropical curve as JSON, or the layer tree of a chain such as "12/34,1/2/34".
#[derive(Args, Clone)]
pub struct TropInput {
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long)]
    pub chain: Option<String>,
}

#[derive(Subcommand)]
pub enum TropCmd {
    /// Core, λ and radii.
    Lambda(TropInput),
    /// Subdivision at λ = ρ.
    Subdivide {
        #[command(flatten)]
        curve: TropInput,
        #[arg(long)]
        rho: String,
    },
    /// Tail function with the given support (vertex ids).
    Tailfn {
        #[command(flatten)]
        curve: TropInput,
        #[arg(long, default_value = "")]
        support: String,
    },
    /// Multidegree of ω(Σ) twisted by the tail function with the given support.
    Multideg {
        #[command(flatten)]
        curve: TropInput,
        #[arg(long, default_value = "")]
        support: String,
    },
    /// Kill generators, optionally restricting a tail function.
    Facecontract {
        #[command(flatten)]
        curve: TropInput,
        /// Generator names, comma separated.
        #[arg(long)]
        kill: String,
        #[arg(long)]
        support: Option<String>,
    },
}

/// (Q, K) on the marks of a chain or of --n.
#[derive(Args, Clone)]
pub struct QkInput {
    #[arg(long = "Q", default_value = "")]
    pub q: String,
    #[arg(long = "K", default_value = "")]
    pub k: String,
}

#[derive(Subcommand)]
pub enum QkCmd {
    /// Exit 0 iff Q and K do not overlap.
    Overlap {
        #[command(flatten)]
        qk: QkInput,
        #[arg(long)]
        n: usize,
    },
    /// The universal contraction datum on a tree.
    Datum {
        #[command(flatten)]
        curve: TropInput,
        #[command(flatten)]
        qk: QkInput,
    },
    /// The curve a tree contracts to under the universal datum.
    Limit {
        #[command(flatten)]
        curve: TropInput,
        #[command(flatten)]
        qk: QkInput,
    },
    /// Relations between universal data on 1- and 2-layer trees.
    Relations {
        #[command(flatten)]
        qk: QkInput,
        #[arg(long)]
        n: usize,
        /// Check every non-overlapping pair on n ≤ 4 marks instead.
        #[arg(long)]
        all: bool,
    },
    /// Recover (Q, K) from its universal data.
    Roundtrip {
        #[command(flatten)]
        qk: QkInput,
        #[arg(long)]
        n: usize,
        /// Check every non-overlapping pair on n ≤ 4 marks instead.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
pub enum ReproCmd {
    /// Labeled counts of complexes and threshold complexes.
    Table1 {
        /// A single n; otherwise 2 through 5.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        upto_iso: bool,
    },
    /// Tacnode and triple-point limits on the tree of 12/34 ≺ 1/2/34.
    Example,
}

/// What a command found: a yes/no answer plus its two renderings.
pub struct Outcome {
    pub holds: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    pub fn yes(json: Value, text: impl Into<String>) -> Self {
        Outcome { holds: true, json, text: text.into() }
    }

    pub fn answer(holds: bool, json: Value, text: impl Into<String>) -> Self {
        Outcome { holds, json, text: text.into() }
    }
}

pub struct Ctx {
    pub locus: Locus,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx { locus: cli.tail_locus };
    let result = match cli.command {
        Command::Complex(c) => commands::complex::run(c),
        Command::Graph(c) => commands::graph::run(c),
        Command::Curve(c) => commands::curve::run(c),
        Command::Trop(c) => commands::trop::run(c),
        Command::Qk(c) => commands::qk::run(c, &ctx),
        Command::Repro(c) => commands::repro::run(c, &ctx),
    };
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize"),
                Format::Text => out.text.trim_end().to_string(),
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
