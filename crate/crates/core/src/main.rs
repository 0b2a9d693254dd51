use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ldi::code::standard_form;
use ldi::distance::{classify, distance, distance_of_matrix, integer_distance, DistanceMode};
use ldi::embedding::{bound_b, commutator_matrix, embed, embed_css, EmbeddingReport, InvariantCode};
use ldi::io::report::{
    BoundsReport, DistanceReport, EmbedReport, ErrorReport, LogicalsReport, StandardFormReport, TextReport,
};
use ldi::io::{parse_pauli_string, CodeFile};
use ldi::logical::{invariant_logicals, logical_operators};
use ldi::state::{codespace_dimension, DEFAULT_CAP};
use ldi::{Error, StabilizerCode};

/// Local-dimension-invariant qudit stabilizer codes.
#[derive(Parser)]
#[command(name = "ldi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Include wall-clock times (makes output nondeterministic)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Every undetectable error counts
    Kernel,
    /// Errors in the stabilizer span are skipped
    ExcludeStab,
}

#[derive(Subcommand)]
enum Command {
    /// Check commutation, independence and primality
    Validate { file: PathBuf },
    /// Reduce to (I_k X_2 | Z_1 Z_2)
    StandardForm { file: PathBuf },
    /// Build the invariant form
    Embed {
        file: PathBuf,
        /// Keep X-only and Z-only rows separate
        #[arg(long)]
        css: bool,
    },
    /// B, its bound, p* and p**
    Bounds {
        file: PathBuf,
        /// Known distance of the code
        #[arg(long)]
        distance: usize,
        /// Primes to instantiate at, comma-separated
        #[arg(long, value_delimiter = ',')]
        primes: Vec<i64>,
        /// Also search distances at each prime up to this weight
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long)]
        css: bool,
    },
    /// Brute-force distance
    Distance {
        file: PathBuf,
        #[arg(long, required_unless_present = "integer")]
        prime: Option<i64>,
        #[arg(long)]
        max_weight: usize,
        /// Integer distance d* by exact rational rank
        #[arg(long)]
        integer: bool,
        #[arg(long, value_enum, default_value = "exclude-stab")]
        mode: ModeArg,
        /// Worker threads for the search
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Detectable, artifact or unavoidable
    Classify {
        file: PathBuf,
        #[arg(long)]
        error: String,
        #[arg(long)]
        prime: i64,
    },
    /// Logical operators, mod q and invariant
    Logicals {
        file: PathBuf,
        #[arg(long)]
        css: bool,
    },
    /// Dense check of the codespace dimension
    Verify {
        file: PathBuf,
        #[arg(long)]
        prime: i64,
        /// Largest number of amplitudes to simulate
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
}

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn report(&self) -> ErrorReport {
        let (kind, exit_code, error) = match self {
            Failure::Usage(m) => ("usage", 1, m.clone()),
            Failure::Library(e) => {
                let (kind, code) = match e {
                    Error::Parse { .. } => ("parse", 1),
                    Error::InvalidArgument(_) | Error::NotPrime(_) => ("usage", 1),
                    Error::CapExceeded { .. } => ("cap", 3),
                    Error::Internal(_) => ("internal", 2),
                    _ => ("validation", 2),
                };
                (kind, code, e.to_string())
            }
        };
        ErrorReport {
            error,
            kind: kind.into(),
            exit_code,
        }
    }
}

fn emit<T: Serialize + TextReport>(common: &Common, report: &T) -> Result<(), Failure> {
    let body = if common.json {
        let mut s = serde_json::to_string_pretty(report).map_err(|e| Failure::Library(Error::Internal(e.to_string())))?;
        s.push('\n');
        s
    } else {
        report.text()
    };
    match &common.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn prime_code(file: &CodeFile, p: i64) -> Result<StabilizerCode, Failure> {
    if file.integer {
        Ok(StabilizerCode::new(file.matrix.reduce_mod(p)?)?)
    } else if p == file.q {
        Ok(file.code()?)
    } else if ldi::is_invariant(&file.matrix.to_integer()) {
        Ok(StabilizerCode::new(file.matrix.to_integer().reduce_mod(p)?)?)
    } else {
        Err(Failure::Usage(format!(
            "rows only commute mod {}; embed the code or use an integer file to work at p = {p}",
            file.q
        )))
    }
}

fn invariant_of(file: &CodeFile, css: bool) -> Result<InvariantCode, Failure> {
    if file.integer {
        return Ok(file.invariant()?);
    }
    let code = file.code()?;
    Ok(if css { embed_css(&code)? } else { embed(&code)? })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    match cli.command {
        Command::Validate { file } => {
            let f = CodeFile::read(file)?;
            let report = f.code()?.validate();
            emit(common, &report)?;
            if !report.valid {
                return Err(Failure::Library(Error::InvalidCode(report.failures.join("; "))));
            }
        }
        Command::StandardForm { file } => {
            let code = CodeFile::read(file)?.code()?;
            let form = standard_form(&code)?;
            emit(common, &StandardFormReport {
                parameters: code.parameters(),
                matrix: form.matrix,
                transcript: form.transcript,
            })?;
        }
        Command::Embed { file, css } => {
            let f = CodeFile::read(file)?;
            if f.integer {
                return Err(Failure::Usage("embed expects a code over Z_q, not an integer file".into()));
            }
            let inv = invariant_of(&f, css)?;
            let src = inv.source();
            emit(common, &EmbedReport {
                parameters: src,
                frame: inv.frame(),
                reference: inv.reference().clone(),
                commutators: commutator_matrix(&inv.reference().to_integer())?,
                correction: inv.correction().to_vec(),
                invariant: inv.matrix().clone(),
                b: inv.max_entry(),
                b_bound: bound_b(src.n, src.k, src.q)?,
                transcript: inv.transcript().clone(),
            })?;
        }
        Command::Bounds {
            file,
            distance,
            primes,
            max_weight,
            css,
        } => {
            let f = CodeFile::read(file)?;
            let inv = invariant_of(&f, css)?;
            let mut embedding = EmbeddingReport::new(&inv, Some(distance))?;
            if !primes.is_empty() {
                embedding.check_primes(&inv, &primes, max_weight)?;
            }
            emit(common, &BoundsReport {
                parameters: inv.source(),
                embedding,
            })?;
        }
        Command::Distance {
            file,
            prime,
            max_weight,
            integer,
            mode,
            threads,
        } => {
            if let Some(t) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let f = CodeFile::read(file)?;
            let report = if integer {
                let inv = invariant_of(&f, false)?;
                DistanceReport::Integer(integer_distance(inv.matrix(), max_weight)?)
            } else {
                let p = prime.expect("clap enforces --prime");
                let mode = match mode {
                    ModeArg::Kernel => DistanceMode::KernelOnly,
                    ModeArg::ExcludeStab => DistanceMode::ExcludeStabilizer,
                };
                let code = prime_code(&f, p)?;
                let result = if f.integer {
                    // integer files may hold matrices that only commute mod p
                    distance_of_matrix(code.generators(), p, max_weight, mode)?
                } else {
                    distance(&code, max_weight, mode)?
                };
                DistanceReport::Prime(result)
            };
            let report = if common.timing { report } else { report.without_timing() };
            emit(common, &report)?;
        }
        Command::Classify { file, error, prime } => {
            let f = CodeFile::read(file)?;
            let e = parse_pauli_string(&error, prime)?;
            let verdict = classify(&e, &f.matrix.to_integer(), prime)?;
            emit(common, &verdict)?;
        }
        Command::Logicals { file, css } => {
            let f = CodeFile::read(file)?;
            let code = f.code()?;
            let logicals = logical_operators(&code)?;
            let invariant = if logicals.is_empty() {
                None
            } else {
                let inv = invariant_of(&f, css)?;
                Some(invariant_logicals(&inv, &logicals)?)
            };
            emit(common, &LogicalsReport {
                parameters: code.parameters(),
                logicals,
                invariant,
            })?;
        }
        Command::Verify { file, prime, cap } => {
            let f = CodeFile::read(file)?;
            let code = prime_code(&f, prime)?;
            let cert = codespace_dimension(&code, cap)?;
            emit(common, &cert)?;
            if !cert.matches {
                return Err(Failure::Library(Error::InvalidCode(format!(
                    "codespace dimension {} differs from {}",
                    cert.dimension, cert.expected
                ))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let report = Failure::Usage(e.kind().to_string()).report();
            eprintln!("{}", serde_json::to_string(&report).expect("error report serializes"));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let report = f.report();
            eprintln!("{}", serde_json::to_string(&report).expect("error report serializes"));
            ExitCode::from(report.exit_code as u8)
        }
    }
}
