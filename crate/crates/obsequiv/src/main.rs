//! Command-line harness: every experiment as a reproducible subcommand.
//!
//! Exit codes: 0 on success or a passing verdict, 2 when a check ran and
//! its statistical verdict was rejection, 1 on usage or input errors.
//! Reports are written even when the verdict fails. Configuration is by
//! flags only; the environment is never consulted.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use obsequiv::dynamics::{PhasePoint, System};
use obsequiv::equivalence::{self, congruence_report, markov_replacement_certificate};
use obsequiv::error::{Error, Result};
use obsequiv::partitions::{
    coarse_grain_random, dyadic_partition, halves_partition, left_right_partition, Cell, Partition,
};
use obsequiv::processes::{
    empirical_transition_matrix, is_aperiodic, is_irreducible, period_of, stationarity_check,
    MarkovModel, SymbolSequence,
};
use obsequiv::report::Report;
use obsequiv::shift_space::{conjugacy_sample, finite_window_equivalence, ks_entropy_bernoulli};
use obsequiv::{seqio, DEFAULT_EXACT_WIDTH, GOLDEN_ROTATION};

#[derive(Parser)]
#[command(
    name = "obsequiv",
    version,
    about = "Coarse-grained dynamics vs stochastic processes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SystemArg {
    Baker,
    Rotation,
}

#[derive(Args, Clone)]
struct SystemOpts {
    /// Deterministic system to simulate.
    #[arg(long, value_enum)]
    system: SystemArg,
    /// Rotation angle (rotation only).
    #[arg(long, default_value_t = GOLDEN_ROTATION)]
    alpha: f64,
}

impl SystemOpts {
    fn build(&self) -> Result<System> {
        match self.system {
            SystemArg::Baker => Ok(System::baker()),
            SystemArg::Rotation => System::rotation(self.alpha),
        }
    }
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump an orbit as CSV (x[,y] per row) or JSON.
    Orbit {
        #[command(flatten)]
        system: SystemOpts,
        /// Orbit length including the initial point.
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Explicit initial x (baker) or position (rotation).
        #[arg(long)]
        x0: Option<f64>,
        /// Explicit initial y (baker).
        #[arg(long)]
        y0: Option<f64>,
        /// Seed for a random initial point (required without --x0/--y0).
        #[arg(long)]
        seed: Option<u64>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format (CSV rows by default).
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coarse-grain an orbit into a symbol sequence under a partition.
    CoarseGrain {
        #[command(flatten)]
        system: SystemOpts,
        /// Partition: leftright | halves | dyadic:N.
        #[arg(long)]
        partition: Option<String>,
        /// Partition as a JSON file.
        #[arg(long)]
        partition_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        len: usize,
        /// Seed for the random initial condition.
        #[arg(long)]
        seed: u64,
        /// Output path for the symbol file (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical transition matrix of a symbol sequence.
    Transition {
        /// Symbol file (alphabet=N header).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Stationary distribution, irreducibility, periods, nontriviality.
    ChainAnalyze {
        /// Symbol file to estimate a chain from.
        #[arg(long, conflicts_with = "matrix")]
        input: Option<PathBuf>,
        /// Transition matrix as row-major JSON arrays.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Kolmogorov–Sinai entropy of a Bernoulli process.
    Entropy {
        /// Comma-separated outcome probabilities.
        #[arg(long)]
        probs: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Correlation sweep over lags: μ(Tⁿ(A)∩B) − μ(A)μ(B).
    Mixing {
        #[command(flatten)]
        system: SystemOpts,
        /// Lower corner of rectangle A (comma-separated).
        #[arg(long)]
        a_lo: String,
        /// Upper corner of rectangle A.
        #[arg(long)]
        a_hi: String,
        /// Lower corner of rectangle B.
        #[arg(long)]
        b_lo: String,
        /// Upper corner of rectangle B.
        #[arg(long)]
        b_hi: String,
        #[arg(long, default_value_t = 10)]
        max_lag: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Distance bound plus coding and finite-window congruence checks.
    Congruence {
        /// Dyadic grid resolution.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200_000)]
        len: usize,
        #[arg(long)]
        seed: u64,
        /// Random exact points for the conjugacy part.
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_WIDTH)]
        width: usize,
        /// Word length for the finite-window comparison.
        #[arg(long, default_value_t = 2)]
        window: usize,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Full Markov replacement certificate for the dyadic observation.
    CertifyMarkov {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        len: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Independence test of consecutive symbols (is it Bernoulli?).
    TestBernoulli {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Order-1 Markov property test.
    TestMarkov {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Block-homogeneity stationarity check.
    TestStationary {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        blocks: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Exact coding check: baker stepping commutes with the shift.
    Conjugacy {
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_WIDTH)]
        width: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Finite-window cylinder-distribution comparison of two sequences.
    WindowEquiv {
        #[arg(long)]
        input_a: PathBuf,
        #[arg(long)]
        input_b: PathBuf,
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

/// Whether the command's verdict passed (exit 0) or failed (exit 2).
enum Outcome {
    Done,
    Verdict(bool),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems exit 1; --help/--version exit 0.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(Outcome::Done) | Ok(Outcome::Verdict(true)) => ExitCode::SUCCESS,
        Ok(Outcome::Verdict(false)) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_report<P: Serialize>(output: &OutputOpts, seed: Option<u64>, payload: P) -> Result<()> {
    if output.format == Format::Csv {
        return Err(Error::InvalidInput(
            "this subcommand emits structured JSON reports; csv applies to orbit and mixing".into(),
        ));
    }
    let report = Report::new(seed, payload);
    emit(output.out.as_deref(), &report.to_json_pretty())
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("bad number {t:?}: {e}")))
        })
        .collect()
}

fn parse_partition(spec: &str) -> Result<Partition> {
    match spec {
        "leftright" => Ok(left_right_partition()),
        "halves" => Ok(halves_partition()),
        _ => {
            let n = spec
                .strip_prefix("dyadic:")
                .ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "unknown partition {spec:?}; use leftright, halves, or dyadic:N"
                    ))
                })?
                .parse::<usize>()
                .map_err(|e| Error::InvalidInput(format!("bad dyadic resolution: {e}")))?;
            dyadic_partition(n)
        }
    }
}

fn load_partition(spec: Option<&str>, file: Option<&Path>) -> Result<Partition> {
    match (spec, file) {
        (Some(s), None) => parse_partition(s),
        (None, Some(path)) => {
            let part: Partition = serde_json::from_reader(BufReader::new(File::open(path)?))?;
            part.revalidate()
        }
        _ => Err(Error::InvalidInput(
            "give exactly one of --partition or --partition-file".into(),
        )),
    }
}

fn read_sequence(path: &Path) -> Result<SymbolSequence> {
    seqio::read_symbols(BufReader::new(File::open(path)?))
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Orbit {
            system,
            steps,
            x0,
            y0,
            seed,
            out,
            format,
        } => {
            let sys = system.build()?;
            let p0 = match (sys.dimension(), x0, y0) {
                (2, Some(x), Some(y)) => PhasePoint::two(x, y)?,
                (1, Some(x), None) => PhasePoint::one(x)?,
                (_, None, None) => {
                    let seed = seed
                        .ok_or_else(|| Error::InvalidInput("random start needs --seed".into()))?;
                    sys.sample_invariant(1, seed)?.remove(0)
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "give --x0 [--y0 for baker] or neither".into(),
                    ))
                }
            };
            let orbit = sys.orbit(&p0, steps)?;
            match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    seqio::write_orbit_csv(&mut buf, &orbit)?;
                    emit(out.as_deref(), &String::from_utf8_lossy(&buf))?;
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct OrbitPayload {
                        steps: usize,
                        points: Vec<Vec<f64>>,
                    }
                    let points = orbit.iter().map(|p| p.coords().to_vec()).collect();
                    let report = Report::new(seed, OrbitPayload { steps, points });
                    emit(out.as_deref(), &report.to_json_pretty())?;
                }
            }
            Ok(Outcome::Done)
        }

        Cmd::CoarseGrain {
            system,
            partition,
            partition_file,
            len,
            seed,
            out,
        } => {
            let sys = system.build()?;
            let part = load_partition(partition.as_deref(), partition_file.as_deref())?;
            let seq = coarse_grain_random(&sys, &part, len, seed)?;
            let mut buf = Vec::new();
            seqio::write_symbols(&mut buf, &seq)?;
            emit(out.as_deref(), &String::from_utf8_lossy(&buf))?;
            Ok(Outcome::Done)
        }

        Cmd::Transition { input, output } => {
            let est = empirical_transition_matrix(&read_sequence(&input)?)?;
            emit_report(&output, None, est)?;
            Ok(Outcome::Done)
        }

        Cmd::ChainAnalyze {
            input,
            matrix,
            output,
        } => {
            let model = match (input, matrix) {
                (Some(path), None) => {
                    empirical_transition_matrix(&read_sequence(&path)?)?.to_model()?
                }
                (None, Some(path)) => {
                    let rows = seqio::read_matrix_json(BufReader::new(File::open(path)?))?;
                    MarkovModel::new(rows)?
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "give exactly one of --input or --matrix".into(),
                    ))
                }
            };
            #[derive(Serialize)]
            struct ChainPayload {
                alphabet: usize,
                transition: Vec<Vec<f64>>,
                stationary: Vec<f64>,
                irreducible: bool,
                aperiodic: bool,
                /// Period per state; null where the state never returns.
                periods: Vec<Option<usize>>,
                nontriviality: equivalence::NontrivialityVerdict,
            }
            let periods = (0..model.alphabet())
                .map(|i| period_of(&model, i).ok())
                .collect();
            let payload = ChainPayload {
                alphabet: model.alphabet(),
                transition: model.transition().to_vec(),
                stationary: model.stationary().to_vec(),
                irreducible: is_irreducible(&model),
                aperiodic: is_aperiodic(&model),
                periods,
                nontriviality: equivalence::nontriviality_verdict(&model),
            };
            emit_report(&output, None, payload)?;
            Ok(Outcome::Done)
        }

        Cmd::Entropy { probs, output } => {
            let p = parse_floats(&probs)?;
            let h = ks_entropy_bernoulli(&p)?;
            #[derive(Serialize)]
            struct EntropyPayload {
                probs: Vec<f64>,
                entropy_bits: f64,
            }
            if output.out.is_some() {
                emit_report(
                    &output,
                    None,
                    EntropyPayload {
                        probs: p,
                        entropy_bits: h,
                    },
                )?;
            }
            println!("{h}");
            Ok(Outcome::Done)
        }

        Cmd::Mixing {
            system,
            a_lo,
            a_hi,
            b_lo,
            b_hi,
            max_lag,
            samples,
            seed,
            output,
        } => {
            let sys = system.build()?;
            let a = Cell::new(parse_floats(&a_lo)?, parse_floats(&a_hi)?)?;
            let b = Cell::new(parse_floats(&b_lo)?, parse_floats(&b_hi)?)?;
            let corrs = equivalence::mixing_sweep(&sys, &a, &b, max_lag, samples, seed)?;
            match output.format {
                Format::Csv => {
                    let mut s = String::from("lag,correlation\n");
                    for (lag, c) in corrs.iter().enumerate() {
                        s.push_str(&format!("{lag},{c}\n"));
                    }
                    emit(output.out.as_deref(), &s)?;
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct MixingPayload {
                        a: Cell,
                        b: Cell,
                        measure_a: f64,
                        measure_b: f64,
                        samples: usize,
                        correlations: Vec<f64>,
                        cesaro_mean: f64,
                    }
                    let cesaro_mean = corrs.iter().sum::<f64>() / corrs.len() as f64;
                    let payload = MixingPayload {
                        measure_a: a.measure(),
                        measure_b: b.measure(),
                        a,
                        b,
                        samples,
                        correlations: corrs,
                        cesaro_mean,
                    };
                    emit_report(&output, Some(seed), payload)?;
                }
            }
            Ok(Outcome::Done)
        }

        Cmd::Congruence {
            n,
            len,
            seed,
            points,
            steps,
            width,
            window,
            tol,
            output,
        } => {
            let report = congruence_report(n, len, seed, points, steps, width, window, tol)?;
            let pass = report.pass;
            emit_report(&output, Some(seed), report)?;
            Ok(Outcome::Verdict(pass))
        }

        Cmd::CertifyMarkov {
            n,
            len,
            seed,
            output,
        } => {
            let cert = markov_replacement_certificate(n, len, seed)?;
            let pass = cert.pass;
            emit_report(&output, Some(seed), cert)?;
            Ok(Outcome::Verdict(pass))
        }

        Cmd::TestBernoulli { input, output } => {
            let report = equivalence::bernoulli_rejection_witness(&read_sequence(&input)?)?;
            let reject = report.reject;
            emit_report(&output, None, report)?;
            Ok(Outcome::Verdict(!reject))
        }

        Cmd::TestMarkov { input, output } => {
            let report = equivalence::markov_property_test(&read_sequence(&input)?)?;
            let pass = report.pass;
            emit_report(&output, None, report)?;
            Ok(Outcome::Verdict(pass))
        }

        Cmd::TestStationary {
            input,
            blocks,
            output,
        } => {
            let report = stationarity_check(&read_sequence(&input)?, blocks)?;
            let pass = report.pass;
            emit_report(&output, None, report)?;
            Ok(Outcome::Verdict(pass))
        }

        Cmd::Conjugacy {
            points,
            steps,
            width,
            seed,
            output,
        } => {
            let report = conjugacy_sample(points, steps, width, seed)?;
            let pass = report.pass;
            emit_report(&output, Some(seed), report)?;
            Ok(Outcome::Verdict(pass))
        }

        Cmd::WindowEquiv {
            input_a,
            input_b,
            window,
            tol,
            output,
        } => {
            let report = finite_window_equivalence(
                &read_sequence(&input_a)?,
                &read_sequence(&input_b)?,
                window,
                tol,
            )?;
            let pass = report.pass;
            emit_report(&output, None, report)?;
            Ok(Outcome::Verdict(pass))
        }
    }
}
