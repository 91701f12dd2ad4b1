//! Command-line front end. Every answered query prints one canonical JSON
//! report on standard output; diagnostics go to standard error.
//!
//! Exit codes: 0 member/true, 1 non-member/false, 2 usage or input error.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cells::{build_arrangement, classify_boundary, interior_cell_formula, CellFormula};
use crate::error::Error;
use crate::extend::{convex_tube_extension, extension_stream, ConeBase, DomainDescriptor};
use crate::geometry::{lorentz_scale, to_diffs, DiffConfig, LightConeVector, PointConfig};
use crate::json::{to_canonical_string, FLOAT_TAG, NONCANONICAL_TAG};
use crate::oracle::{oracle_cut_scan, oracle_extended_membership, OracleConfig};
use crate::permutation::{
    spacelike_locality_check, union_coverage_query, union_membership, Permutation, UnionMode,
    DEFAULT_MAX_M,
};
use crate::scalar::GaussianRational;
use crate::tube::{in_extended_tube, in_forward_tube, is_jost_point};
use crate::uniformity::{classify_order, projection_inclusion_check};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("non-canonical rational at line {line}, column {column}: {message}")]
    NonCanonicalRational { line: usize, column: usize, message: String },
    #[error("floating-point literal rejected at line {line}, column {column}")]
    FloatLiteralRejected { line: usize, column: usize },
}

impl ConfigError {
    fn from_json(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        // serde_json appends the position, which is reported separately
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        if message.contains(FLOAT_TAG) {
            ConfigError::FloatLiteralRejected { line, column }
        } else if let Some(rest) = message.strip_prefix(NONCANONICAL_TAG) {
            let message = rest.trim_start_matches(':').trim().to_string();
            ConfigError::NonCanonicalRational { line, column, message }
        } else {
            ConfigError::Parse { line, column, message }
        }
    }
}

/// Contents of a configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ParsedConfig {
    Points(Vec<LightConeVector>),
    Diffs(Vec<LightConeVector>),
}

impl ParsedConfig {
    pub fn diffs(&self) -> Result<DiffConfig, Error> {
        match self {
            ParsedConfig::Points(p) => to_diffs(&PointConfig::new(p.clone())),
            ParsedConfig::Diffs(d) if d.is_empty() => Err(Error::EmptyConfig),
            ParsedConfig::Diffs(d) => Ok(DiffConfig::new(d.clone())),
        }
    }

    /// Diffs are placed with the last point at the origin.
    pub fn points(&self) -> PointConfig {
        match self {
            ParsedConfig::Points(p) => PointConfig::new(p.clone()),
            ParsedConfig::Diffs(d) => PointConfig::from_diffs(&DiffConfig::new(d.clone())),
        }
    }
}

pub fn parse_config_str(text: &str) -> Result<ParsedConfig, ConfigError> {
    serde_json::from_str(text).map_err(ConfigError::from_json)
}

pub fn parse_config_file(path: &Path) -> Result<ParsedConfig, ConfigError> {
    let text = read(path)?;
    parse_config_str(&text)
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Probe file for coverage queries.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeFile {
    formula: CellFormula,
    m: usize,
    probes: Vec<Vec<LightConeVector>>,
}

#[derive(Parser, Debug)]
#[command(name = "extube", version, about = "Exact decisions on extended tube domains in 1+1 dimensions")]
pub struct Cli {
    /// Leave timing out of the report, for byte-stable output.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TubeArg {
    Forward,
    Extended,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    First,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Forward or extended tube membership with a certificate.
    Membership {
        #[arg(long)]
        file: String,
        #[arg(long, value_enum, default_value = "extended")]
        tube: TubeArg,
    },
    /// A Lorentz direction mapping the configuration into the forward tube.
    Witness {
        #[arg(long)]
        file: String,
    },
    /// Real points of the extended tube.
    Jost {
        #[arg(long)]
        file: String,
    },
    /// Order class for dimension s and order m.
    Classify {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        m: u64,
    },
    /// Membership in the union of permuted extended tubes.
    Union {
        #[arg(long, required_unless_present = "probes")]
        file: Option<String>,
        #[arg(long, value_enum, default_value = "first")]
        mode: ModeArg,
        #[arg(long)]
        max_m_override: Option<usize>,
        /// Coverage query: file with a formula, m and probe point lists.
        #[arg(long, conflicts_with = "file")]
        probes: Option<String>,
        /// Treat the input as a totally space-like real configuration and
        /// also test random ones.
        #[arg(long)]
        locality: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sub-configurations of a union member stay union members.
    Project {
        #[arg(long)]
        file: String,
        #[arg(long)]
        r: usize,
    },
    /// Direction arrangement and boundary strata of a configuration, or the
    /// membership formula for m points.
    Cells {
        #[arg(long, required_unless_present = "m")]
        file: Option<String>,
        #[arg(long, conflicts_with = "file")]
        m: Option<usize>,
    },
    /// Seeded extension proposals verified against the tube hull, as JSON lines.
    Extend {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        draws: usize,
        /// "all", "identity", "id-rev", or 1-based permutations such as "2,1,3;3,2,1".
        #[arg(long, default_value = "all")]
        perms: String,
        #[arg(long)]
        max_m_override: Option<usize>,
    },
    /// Cross-check the engine against the grid oracle, or scan the cut.
    OracleCheck {
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value_t = 256)]
        theta_steps: usize,
        #[arg(long, default_value_t = 3)]
        modulus_samples: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        targets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Timing {
    elapsed_us: u64,
}

/// Canonical report for one answered query.
#[derive(Serialize)]
pub struct RunReport {
    command: Vec<String>,
    input_digest: Option<String>,
    answer: bool,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
    engine_version: &'static str,
}

enum Failure {
    Config(ConfigError),
    Engine(Error),
    Usage(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(e) => write!(f, "{e}"),
            Failure::Engine(e) => write!(f, "{e}"),
            Failure::Usage(e) => write!(f, "{e}"),
        }
    }
}

struct Answer {
    answer: bool,
    result: Value,
    digest: Option<String>,
    /// Extra lines printed after the report.
    stream: Vec<Value>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

struct Input {
    config: ParsedConfig,
    digest: String,
}

fn load(path: &str) -> Result<Input, ConfigError> {
    let text = read(Path::new(path))?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Input {
        config: parse_config_str(&text)?,
        digest,
    })
}

fn parse_perms(text: &str, m: usize) -> Result<Vec<Permutation>, Failure> {
    match text {
        "all" => Ok(Permutation::all(m).collect()),
        "identity" => Ok(vec![Permutation::identity(m)]),
        "id-rev" => Ok(vec![Permutation::identity(m), Permutation::reversal(m)]),
        list => list
            .split(';')
            .map(|p| {
                let images: Vec<usize> = p
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::Usage(format!("bad permutation {p:?}")))?;
                let s = Permutation::from_one_based(&images)?;
                if s.len() != m {
                    return Err(Error::PermutationSize {
                        expected: m,
                        got: s.len(),
                    }
                    .into());
                }
                Ok(s)
            })
            .collect(),
    }
}

fn answer(answer: bool, result: Value, digest: Option<String>) -> Answer {
    Answer {
        answer,
        result,
        digest,
        stream: Vec::new(),
    }
}

fn execute(cmd: &Command) -> Result<Answer, Failure> {
    match cmd {
        Command::Membership { file, tube } => {
            let input = load(file)?;
            let d = input.config.diffs()?;
            let cert = match tube {
                TubeArg::Forward => in_forward_tube(&d)?,
                TubeArg::Extended => in_extended_tube(&d)?,
            };
            let verified = cert.verify(&d).is_ok();
            Ok(answer(
                cert.is_member(),
                json!({ "certificate": cert, "certificate_verified": verified }),
                Some(input.digest),
            ))
        }
        Command::Witness { file } => {
            let input = load(file)?;
            let d = input.config.diffs()?;
            let cert = in_extended_tube(&d)?;
            let result = match &cert.witness {
                Some(w) => {
                    let lambda = GaussianRational::new(w.x.clone().into(), w.y.clone().into());
                    let image = lorentz_scale(&d, &lambda)?;
                    let image_forward = in_forward_tube(&image)?.is_member();
                    json!({
                        "witness": w,
                        "lambda": lambda,
                        "image": image,
                        "image_in_forward_tube": image_forward,
                    })
                }
                None => json!({ "certificate": cert }),
            };
            Ok(answer(cert.is_member(), result, Some(input.digest)))
        }
        Command::Jost { file } => {
            let input = load(file)?;
            let v = is_jost_point(&input.config.diffs()?)?;
            Ok(answer(v.is_jost, to_value(&v), Some(input.digest)))
        }
        Command::Classify { s, m } => {
            let class = classify_order(*s, *m)?;
            Ok(answer(true, json!({ "s": s, "m": m, "class": class }), None))
        }
        Command::Union {
            file,
            mode,
            max_m_override,
            probes,
            locality,
            samples,
            seed,
        } => {
            let max_m = max_m_override.unwrap_or(DEFAULT_MAX_M);
            if let Some(path) = probes {
                let text = read(Path::new(path))?;
                let digest = hex::encode(Sha256::digest(text.as_bytes()));
                let pf: ProbeFile = serde_json::from_str(&text).map_err(ConfigError::from_json)?;
                let pts: Vec<PointConfig> = pf.probes.into_iter().map(PointConfig::new).collect();
                let rep = union_coverage_query(&pf.formula, pf.m, &pts, max_m)?;
                return Ok(answer(rep.all_covered(), to_value(&rep), Some(digest)));
            }
            let input = load(file.as_deref().expect("clap requires --file"))?;
            let cfg = input.config.points();
            if *locality {
                let rep = spacelike_locality_check(&cfg, *samples, *seed, max_m)?;
                return Ok(answer(rep.passed(), to_value(&rep), Some(input.digest)));
            }
            let mode = match mode {
                ModeArg::First => UnionMode::First,
                ModeArg::All => UnionMode::All,
            };
            let v = union_membership(&cfg, mode, max_m)?;
            Ok(answer(v.is_member(), to_value(&v), Some(input.digest)))
        }
        Command::Project { file, r } => {
            let input = load(file)?;
            let rep = projection_inclusion_check(&input.config.points(), *r)?;
            Ok(answer(rep.passed(), to_value(&rep), Some(input.digest)))
        }
        Command::Cells { file, m } => {
            if let Some(m) = m {
                let f = interior_cell_formula(*m)?;
                return Ok(answer(true, to_value(&f), None));
            }
            let input = load(file.as_deref().expect("clap requires --file or --m"))?;
            let d = input.config.diffs()?;
            let cert = in_extended_tube(&d)?;
            let formula = interior_cell_formula(d.len() + 1)?;
            let disjunct = formula.first_satisfied(&d)?;
            let arrangement = match build_arrangement(&d) {
                Ok(a) => to_value(&a),
                Err(Error::DegenerateCoordinate(tag)) => json!({ "degenerate_condition": tag }),
                Err(e) => return Err(e.into()),
            };
            let boundary = match classify_boundary(&d) {
                Ok(strata) => to_value(&strata),
                Err(Error::NotOnBoundary) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            Ok(answer(
                cert.is_member(),
                json!({
                    "arrangement": arrangement,
                    "satisfied_disjunct": disjunct,
                    "disjunct_count": formula.disjuncts.len(),
                    "boundary_strata": boundary,
                    "certificate": cert,
                }),
                Some(input.digest),
            ))
        }
        Command::Extend {
            m,
            seed,
            draws,
            perms,
            max_m_override,
        } => {
            let max_m = max_m_override.unwrap_or(DEFAULT_MAX_M);
            if *m < 2 {
                return Err(Error::TooFewPoints(*m).into());
            }
            if *m > max_m {
                return Err(Error::ArityGuard { m: *m, max: max_m }.into());
            }
            let permutations = parse_perms(perms, *m)?;
            let bases = vec![ConeBase::forward_quadrant(); m - 1];
            let ext = convex_tube_extension(&bases, &permutations)?;
            let domain = DomainDescriptor {
                m: *m,
                permutations,
            };
            let items = extension_stream(&domain, &ext, *seed, *draws)?;
            let members = items.iter().filter(|i| i.certificate.member).count();
            Ok(Answer {
                answer: true,
                result: json!({
                    "extension": ext,
                    "seed": seed,
                    "draws": draws,
                    "emitted": items.len(),
                    "verified_members": members,
                }),
                digest: None,
                stream: items.iter().map(to_value).collect(),
            })
        }
        Command::OracleCheck {
            file,
            theta_steps,
            modulus_samples,
            samples,
            targets,
            seed,
        } => {
            if *theta_steps < 8 {
                return Err(Failure::Usage("--theta-steps must be at least 8".into()));
            }
            match file {
                Some(path) => {
                    let input = load(path)?;
                    let d = input.config.diffs()?;
                    let oc = OracleConfig {
                        theta_steps: *theta_steps,
                        modulus_samples: *modulus_samples,
                    };
                    let oracle = oracle_extended_membership(&d, &oc);
                    let cert = in_extended_tube(&d)?;
                    let certificate_verified = cert.verify(&d).is_ok();
                    let consistent = certificate_verified && !(oracle.is_member() && !cert.is_member());
                    Ok(answer(
                        consistent,
                        json!({
                            "oracle": oracle,
                            "engine": cert,
                            "certificate_verified": certificate_verified,
                            "consistent": consistent,
                        }),
                        Some(input.digest),
                    ))
                }
                None => {
                    let rep = oracle_cut_scan(*samples, *targets, *seed);
                    Ok(answer(rep.passed(), to_value(&rep), None))
                }
            }
        }
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let argv = std::iter::once("extube".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_TRUE;
                }
                _ => EXIT_ERROR,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(a) => {
            let report = RunReport {
                command: args.to_vec(),
                input_digest: a.digest,
                answer: a.answer,
                result: a.result,
                timing: (!cli.no_timing).then(|| Timing {
                    elapsed_us: start.elapsed().as_micros() as u64,
                }),
                engine_version: env!("CARGO_PKG_VERSION"),
            };
            if a.stream.is_empty() {
                let _ = out.write_all(to_canonical_string(&report).as_bytes());
            } else {
                let _ = writeln!(out, "{}", to_value(&report));
                for line in &a.stream {
                    let _ = writeln!(out, "{line}");
                }
            }
            if a.answer {
                EXIT_TRUE
            } else {
                EXIT_FALSE
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            EXIT_ERROR
        }
    }
}
