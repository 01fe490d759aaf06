//! Argument parsing and command dispatch for the `fj` binary.
//!
//! Every command writes one report to stdout (or to `--out` for exports) and
//! maps its outcome to an exit status: `0` on success, `1` when a requested
//! verification fails, `2` for invalid arguments or unusable inputs.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flag_johnson::spectra::permutahedron_spectrum;
use flag_johnson::{
    adjacency_matrix, diameter, diameter_lower_bound, eig_tridiagonal, is_connected,
    regularity_matrix, second_largest_evidence, spectrum_subset_check, verify_all,
    verify_permutahedron_blocks, verify_recursive_blocks, Caps, DiameterMode, EdgeListExport,
    FlagGraphSpec, SpectralConfig, VertexOrdering, SCHEMA_VERSION,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] flag_johnson::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// A disconnected graph is a failed verification; everything else is a
    /// problem with the request.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(flag_johnson::Error::Disconnected { .. }) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fj", version, about = "Full-flag Johnson graphs FJ(n,k)")]
pub struct RunConfig {
    #[command(flatten)]
    pub limits: Limits,
    #[command(subcommand)]
    pub command: Command,
}

/// Caps and tolerances. Flags override `FJ_*` variables, which override the
/// defaults.
#[derive(Debug, Args)]
pub struct Limits {
    /// Largest n for edge enumeration and BFS.
    #[arg(long, global = true, env = "FJ_GRAPH_CAP", default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..=12))]
    pub graph_cap: u64,
    /// Largest n for dense adjacency matrices.
    #[arg(long, global = true, env = "FJ_MATRIX_CAP", default_value_t = 7,
          value_parser = clap::value_parser!(u64).range(1..=10))]
    pub matrix_cap: u64,
    /// Largest matrix order passed to the dense eigensolver.
    #[arg(long, global = true, env = "FJ_EIGEN_CAP", default_value_t = 720,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub eigen_cap: u64,
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = positive_f64)]
    pub eig_tol: f64,
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = positive_f64)]
    pub match_tol: f64,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

impl Limits {
    pub fn caps(&self) -> Caps {
        Caps {
            graph: self.graph_cap as usize,
            matrix: self.matrix_cap as usize,
            eigen: self.eigen_cap as usize,
        }
    }

    pub fn spectral(&self) -> SpectralConfig {
        SpectralConfig {
            eig_tol: self.eig_tol,
            match_tol: self.match_tol,
            eigen_cap: self.eigen_cap as usize,
            ..SpectralConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the graph as DOT, CSV, JSON, a dense 0/1 grid or run-length rows.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diameter by BFS, with the lower bound and connectivity.
    Diameter {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// BFS from every vertex instead of from the identity only.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check the block structure of A(FJ(n+1,k)) under the insertion ordering
    /// built from an ordering of the permutations of [n].
    Blocks {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum)]
        check: BlockCheck,
        /// One permutation per line; lexicographic order when absent.
        #[arg(long)]
        ordering_file: Option<PathBuf>,
    },
    /// Eigenvalues of the regularity matrix M(n), optionally against the full
    /// spectrum of FJ(n,1).
    Spectrum {
        #[arg(long)]
        n: usize,
        /// Also report the distinct eigenvalues of FJ(n,1).
        #[arg(long)]
        full: bool,
        #[arg(long)]
        check_subset: bool,
        /// Test whether the second-largest eigenvalue of FJ(n,1) lies in spec(M(n)).
        #[arg(long)]
        conjecture: bool,
    },
    /// Run every structural check up to max-n.
    VerifyAll {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Csv,
    Json,
    /// Dense 0/1 adjacency grid.
    Text,
    /// Run-length encoded adjacency rows.
    Rle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BlockCheck {
    Recursive,
    Permutahedron,
}

/// What a command produced: the text to emit and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn report<T: Serialize>(value: &T, passed: bool) -> Self {
        let mut output = serde_json::to_string_pretty(value).expect("reports serialize");
        output.push('\n');
        Outcome {
            output,
            code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

#[derive(Serialize)]
struct DiameterReport {
    schema_version: u32,
    n: usize,
    k: usize,
    mode: DiameterMode,
    diameter: u64,
    lower_bound: u64,
    connected: bool,
    /// Wall-clock time; the one field that differs between identical runs.
    runtime_ms: u64,
}

#[derive(Serialize)]
struct SpectrumReport {
    schema_version: u32,
    n: usize,
    m_eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    full_distinct_eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    full_multiplicities: Option<Vec<usize>>,
    subset_ok: Option<bool>,
    matching: Option<Vec<(usize, usize)>>,
    second_largest: Option<f64>,
    #[serde(rename = "second_largest_in_M")]
    second_largest_in_m: Option<bool>,
}

/// Rounds to 12 decimals so reports are stable across platforms.
fn fixed(x: f64) -> f64 {
    let r: f64 = format!("{x:.12}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn fixed_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(fixed).collect()
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let caps = config.limits.caps();
    let cfg = config.limits.spectral();
    match &config.command {
        Command::Export { n, k, format, out } => {
            let spec = FlagGraphSpec::new(*n, *k)?.with_caps(caps);
            let text = match format {
                Format::Dot => EdgeListExport::build(&spec)?.to_dot(),
                Format::Csv => EdgeListExport::build(&spec)?.to_csv(),
                Format::Json => EdgeListExport::build(&spec)?.to_json() + "\n",
                Format::Text => adjacency_matrix(&spec, &spec.ordering()?)?.matrix.to_grid(),
                Format::Rle => adjacency_matrix(&spec, &spec.ordering()?)?.matrix.to_rle(),
            };
            match out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    Ok(Outcome {
                        output: String::new(),
                        code: EXIT_OK,
                    })
                }
                None => Ok(Outcome {
                    output: text,
                    code: EXIT_OK,
                }),
            }
        }
        Command::Diameter { n, k, exhaustive } => {
            let spec = FlagGraphSpec::new(*n, *k)?.with_caps(caps);
            let mode = if *exhaustive {
                DiameterMode::Exhaustive
            } else {
                DiameterMode::Transitive
            };
            let start = Instant::now();
            let d = diameter(&spec, mode)?;
            let report = DiameterReport {
                schema_version: SCHEMA_VERSION,
                n: *n,
                k: *k,
                mode,
                diameter: d,
                lower_bound: diameter_lower_bound(*n, *k)?,
                connected: is_connected(&spec)?,
                runtime_ms: start.elapsed().as_millis() as u64,
            };
            Ok(Outcome::report(
                &report,
                report.connected && d >= report.lower_bound,
            ))
        }
        Command::Blocks {
            n,
            k,
            check,
            ordering_file,
        } => {
            let s = match ordering_file {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    VertexOrdering::parse_lines(&text)?
                }
                None => VertexOrdering::lexicographic(*n)?,
            };
            let report = match check {
                BlockCheck::Recursive => verify_recursive_blocks(*n, *k, &s, &caps)?,
                BlockCheck::Permutahedron => verify_permutahedron_blocks(*n, &s, &caps)?,
            };
            Ok(Outcome::report(&report, report.passed))
        }
        Command::Spectrum {
            n,
            full,
            check_subset,
            conjecture,
        } => {
            let m = eig_tridiagonal(&regularity_matrix(*n)?, &cfg)?;
            let mut report = SpectrumReport {
                schema_version: SCHEMA_VERSION,
                n: *n,
                m_eigenvalues: fixed_all(&m.values),
                full_distinct_eigenvalues: None,
                full_multiplicities: None,
                subset_ok: None,
                matching: None,
                second_largest: None,
                second_largest_in_m: None,
            };
            let mut passed = true;
            if *full || *check_subset || *conjecture {
                if flag_johnson::perm::factorial(*n) as usize > caps.eigen {
                    return Err(flag_johnson::Error::CapExceeded {
                        what: "eigen cap (n!)",
                        n: *n,
                        cap: caps.eigen,
                    }
                    .into());
                }
                let spectrum = permutahedron_spectrum(*n, &cfg)?;
                if *full {
                    report.full_distinct_eigenvalues = Some(fixed_all(&spectrum.values));
                    report.full_multiplicities = Some(spectrum.multiplicities.clone());
                }
                if *check_subset {
                    let check = spectrum_subset_check(&m, &spectrum, cfg.match_tol);
                    passed &= check.ok;
                    report.subset_ok = Some(check.ok);
                    report.matching = Some(check.matching);
                }
                if *conjecture {
                    let evidence = second_largest_evidence(*n, &spectrum, &m, cfg.match_tol);
                    passed &= evidence.holds;
                    report.second_largest = evidence.second_largest.map(fixed);
                    report.second_largest_in_m = Some(evidence.holds);
                }
            }
            Ok(Outcome::report(&report, passed))
        }
        Command::VerifyAll { max_n } => {
            let report = verify_all(*max_n, &caps, &cfg);
            Ok(Outcome::report(&report, report.passed))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("fj").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults_match_library() {
        let c = parse(&["verify-all"]);
        assert_eq!(c.limits.caps(), Caps::default());
        assert_eq!(c.limits.spectral(), SpectralConfig::default());
    }

    #[test]
    fn global_flags_after_subcommand() {
        let c = parse(&["diameter", "--n", "4", "--k", "1", "--graph-cap", "5"]);
        assert_eq!(c.limits.caps().graph, 5);
    }

    #[test]
    fn rejects_zero_caps_and_bad_tolerances() {
        assert!(RunConfig::try_parse_from(["fj", "--graph-cap", "0", "verify-all"]).is_err());
        assert!(RunConfig::try_parse_from(["fj", "--eig-tol", "-1", "verify-all"]).is_err());
        assert!(RunConfig::try_parse_from(["fj", "--match-tol", "nan", "verify-all"]).is_err());
    }

    #[test]
    fn fixed_rounding() {
        assert_eq!(fixed(1.0 / 3.0), 0.333333333333);
        assert_eq!(fixed(-1e-15).to_string(), "0");
    }

    #[test]
    fn invalid_parameters_exit_two() {
        let err = run(&parse(&["diameter", "--n", "3", "--k", "3"])).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let err = run(&parse(&["export", "--n", "9", "--k", "1"])).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }
}
