//! Command implementations behind the `matchpose` binary.

pub mod io;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use matchpose_core::checks::cross_check;
use matchpose_core::generate::random_factorizable;
use matchpose_core::{analyze, Error, Oracle, OracleLimits, OracleReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error as ThisError;

pub use io::{parse_graph, parse_str, Format, GraphFile, LabelMap};
pub use report::Report;

/// Upper bound on the vertex count the oracle may be asked to handle.
pub const ORACLE_MAX_N_VAR: &str = "MATCHPOSE_ORACLE_MAX_N";

pub mod exit {
    pub const OK: i32 = 0;
    pub const DISAGREEMENT: i32 = 1;
    pub const NOT_FACTORIZABLE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const TOO_LARGE: i32 = 4;
    pub const USAGE: i32 = 64;
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => exit::PARSE,
            CliError::Usage(_) => exit::USAGE,
            CliError::Graph(e) => match e {
                Error::NotFactorizable => exit::NOT_FACTORIZABLE,
                Error::TooLarge { .. } => exit::TOO_LARGE,
                Error::DuplicateEdge(..) | Error::SelfLoop(_) | Error::VertexOutOfRange { .. } => {
                    exit::PARSE
                }
                _ => exit::DISAGREEMENT,
            },
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub dot: Option<PathBuf>,
}

/// Parses `path`, analyses the graph and writes the DOT file if asked.
pub fn cmd_analyze(path: &Path, opts: &AnalyzeOptions) -> Result<Report, CliError> {
    let file = parse_graph(path)?;
    let report = analyze_file(&file)?;
    if let Some(dot) = &opts.dot {
        fs::write(dot, report.to_dot()).map_err(|source| CliError::Io {
            path: dot.clone(),
            source,
        })?;
    }
    Ok(report)
}

pub fn analyze_file(file: &GraphFile) -> Result<Report, CliError> {
    let a = analyze(&file.graph)?;
    Ok(Report::new(&file.graph, &file.labels, &a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBatch {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub count: usize,
}

#[derive(Debug, Clone)]
pub enum VerifySource {
    File(PathBuf),
    Random(RandomBatch),
}

/// Oracle limits, honouring the environment override.
pub fn oracle_limits() -> Result<OracleLimits, CliError> {
    match std::env::var(ORACLE_MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(OracleLimits::with_max_vertices)
            .map_err(|_| {
                CliError::Usage(format!(
                    "{ORACLE_MAX_N_VAR} must be a vertex count, got {v:?}"
                ))
            }),
        Err(_) => Ok(OracleLimits::default()),
    }
}

/// Compares every fast result with the oracle on each instance.
pub fn cmd_verify(
    source: &VerifySource,
    limits: OracleLimits,
) -> Result<Vec<OracleReport>, CliError> {
    let oracle = Oracle::new(limits);
    match source {
        VerifySource::File(path) => {
            let file = parse_graph(path)?;
            Ok(cross_check(
                &file.graph,
                &oracle,
                &path.display().to_string(),
            )?)
        }
        VerifySource::Random(batch) => {
            if batch.n > limits.max_vertices {
                return Err(Error::TooLarge {
                    what: "vertices",
                    size: batch.n,
                    bound: limits.max_vertices,
                }
                .into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(batch.seed);
            let mut out = Vec::new();
            for i in 0..batch.count {
                let g = random_factorizable(batch.n, batch.m, &mut rng)?;
                let name = format!(
                    "random(n={},m={},seed={})#{i}",
                    batch.n, batch.m, batch.seed
                );
                out.extend(cross_check(&g, &oracle, &name)?);
            }
            Ok(out)
        }
    }
}
