//! `surfenum`: command-line front end of the enumeration workbench.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use manifest::{digest, FileDigest, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "surfenum", version, about = "Exact enumeration of maps and graphs on surfaces")]
pub struct Cli {
    /// Write the artifact here (and the manifest next to it) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive censuses as CSV.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Generating-function chain builds.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Embedding oracles on graphs read from a file.
    Graphs(GraphsArgs),
    /// List the quadrangulations with a given number of faces as JSON lines.
    Quads(QuadsArgs),
    /// Singular point of a quadrangulation system.
    Singular(SingularArgs),
    /// Coefficient asymptotics from a singular expansion.
    Transfer(TransferArgs),
    /// Growth-law fit of an exact sequence.
    Fit(FitArgs),
    /// Identity and structure verification suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Exact statistics of uniform labelled graphs.
    Stats(StatsArgs),
}

#[derive(Subcommand, Debug)]
pub enum CensusCmd {
    /// Rooted maps by edges and genus.
    Maps {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        genus: Option<usize>,
        /// Include non-orientable maps; the genus is then the Euler genus.
        #[arg(long)]
        signed: bool,
        /// Emit the full record table instead of the summary.
        #[arg(long)]
        full: bool,
    },
    /// Labelled graphs by vertices and edges.
    Graphs {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value = "all")]
        predicate: String,
        #[arg(long)]
        full: bool,
    },
    /// Quadrangulations of one class by faces and genus.
    Quads {
        #[arg(long)]
        faces: usize,
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChainCmd {
    /// Build the chain and write a JSON verification report.
    Build {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        genus: Option<usize>,
        /// Census order of the genus-specific identities (default: min(order, 5)).
        #[arg(long)]
        census_order: Option<u32>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct GraphsArgs {
    /// genus, euler-genus, nonorientable-genus, face-width or blocks.
    pub oracle: String,
    /// One graph per line, graph6 or edge-list JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Search nodes per graph.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug)]
pub struct QuadsArgs {
    #[arg(long)]
    pub faces: usize,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long, default_value = "all")]
    pub class: String,
}

#[derive(Args, Debug)]
pub struct SingularArgs {
    /// pq or rs.
    pub system: String,
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
}

#[derive(Args, Debug)]
pub struct TransferArgs {
    #[arg(long)]
    pub rho: f64,
    /// Exponents `a,b` of the dominating monomial `X^a L^b`.
    #[arg(long = "type", allow_hyphen_values = true)]
    pub kind: String,
    /// Comma-separated coefficients, dominating one first.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Indices at which to print predictions.
    #[arg(long, value_delimiter = ',', default_values_t = [10u64, 100, 1000, 10000])]
    pub n: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// CSV with `n,count` rows (a header is allowed) or one count per line.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Graph-side series identities and the chain identities.
    Identities {
        #[arg(long, default_value_t = 5)]
        nmax: usize,
    },
    /// Genus additivity and the unique non-planar block property.
    RobertsonVitray {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[arg(long)]
    pub n: usize,
    /// planar, genus1 or torus-embeddable.
    #[arg(long)]
    pub class: String,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    pub format: String,
}

/// Result of one command: the artifact and whether every check passed.
pub struct Outcome {
    pub artifact: String,
    pub passed: bool,
    pub inputs: Vec<PathBuf>,
    pub extra_outputs: Vec<PathBuf>,
}

/// Errors in the arguments rather than in the run.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let (code, outcome) = match commands::run(&cli.command) {
        Ok(o) => (if o.passed { 0 } else { 1 }, Some(o)),
        Err(e) => {
            eprintln!("error: {:#}", e);
            (if e.downcast_ref::<UsageError>().is_some() { 2 } else { 1 }, None)
        }
    };
    let mut outputs = Vec::new();
    let mut inputs = Vec::new();
    if let Some(o) = &outcome {
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &o.artifact) {
                    eprintln!("error: writing {}: {}", path.display(), e);
                    return ExitCode::from(1);
                }
                outputs.push(FileDigest::of_bytes(&path.display().to_string(), o.artifact.as_bytes()));
            }
            None => {
                print!("{}", o.artifact);
                outputs.push(FileDigest::of_bytes("-", o.artifact.as_bytes()));
            }
        }
        outputs.extend(o.extra_outputs.iter().filter_map(|p| digest(p).ok()));
        inputs.extend(o.inputs.iter().filter_map(|p| digest(p).ok()));
    }
    let manifest = RunManifest::new(&argv[1..], inputs, outputs, code, start.elapsed());
    match &cli.out {
        Some(path) => {
            let mpath = manifest::manifest_path(path);
            if let Err(e) = std::fs::write(&mpath, manifest.to_json()) {
                eprintln!("error: writing {}: {}", mpath.display(), e);
                return ExitCode::from(1);
            }
        }
        None => eprintln!("{}", manifest.to_json()),
    }
    ExitCode::from(code)
}
