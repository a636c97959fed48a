use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gaussian_oscillator::birman_schwinger::{Coupling, Level, Method, Sign};
use gaussian_oscillator::commands::{self, OutputFormat, RunConfig};
use gaussian_oscillator::format::Table;
use gaussian_oscillator::oracle::HamiltonianMatrix;

#[derive(Parser)]
#[command(version, about = "Harmonic oscillator with a Gaussian perturbation")]
struct Cli {
    /// Number of oscillator basis states.
    #[arg(long, global = true, default_value_t = 120)]
    truncation: usize,
    /// Gauss–Hermite order for the matrix elements [default: 2·truncation + 16].
    #[arg(long, global = true)]
    quad_order: Option<usize>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Csv)]
    format: Fmt,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the matrix-element table as CSV.
    #[arg(long, global = true)]
    dump_table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Attractive,
    Repulsive,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Attractive => Sign::Attractive,
            SignArg::Repulsive => Sign::Repulsive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Det,
    Rank1,
    P2,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Det => Method::FredholmDet,
            MethodArg::Rank1 => Method::RankOneFixedPoint,
            MethodArg::P2 => Method::SecondOrder,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Total potential ½x² ∓ λe^{−x²} on a grid.
    Potential {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Attractive)]
        sign: SignArg,
        #[arg(long, default_value_t = 4.0)]
        xmax: f64,
        #[arg(long, default_value_t = 201)]
        steps: usize,
    },
    /// Energy of one level against the coupling.
    Curve {
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, value_enum, default_value_t = SignArg::Attractive)]
        sign: SignArg,
        #[arg(long, default_value_t = 1.5)]
        lmax: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Det, MethodArg::Rank1, MethodArg::P2, MethodArg::Oracle])]
        method: Vec<MethodArg>,
    },
    /// A single energy with a basis-convergence self-check.
    Energy {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Attractive)]
        sign: SignArg,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Det)]
        method: MethodArg,
        /// Write all eigenvectors of the truncated Hamiltonian as CSV.
        #[arg(long)]
        dump_eigvecs: Option<PathBuf>,
    },
    /// Fredholm determinant on an energy grid.
    DetScan {
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Attractive)]
        sign: SignArg,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        emin: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        emax: f64,
        #[arg(long, default_value_t = 401)]
        steps: usize,
    },
    /// Partial sums of the series identities against their closed forms.
    SeriesCheck {
        #[arg(long, default_value_t = 60)]
        terms: usize,
        #[arg(long, default_value_t = 100_000)]
        trace_terms: usize,
    },
    /// Thresholds, series sums and second-order coefficients as JSON.
    Constants,
}

enum Outcome {
    Done,
    SelfCheckFailed,
}

fn render_table(t: &Table, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => t.to_csv_string(),
        OutputFormat::Json => format!("{}\n", t.to_json()),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> gaussian_oscillator::Result<()> {
    match out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> gaussian_oscillator::Result<Outcome> {
    let format = match cli.format {
        Fmt::Csv => OutputFormat::Csv,
        Fmt::Json => OutputFormat::Json,
    };
    let cfg = RunConfig::new(cli.truncation, cli.quad_order, cli.tol, format)?;
    if let Some(path) = &cli.dump_table {
        cfg.table()?.write_csv(BufWriter::new(File::create(path)?))?;
    }
    let mut outcome = Outcome::Done;
    let text = match cli.command {
        Command::Potential { lambda, sign, xmax, steps } => {
            render_table(&commands::cmd_potential(Coupling::new(lambda, sign.into())?, xmax, steps)?, format)
        }
        Command::Curve { level, sign, lmax, steps, method } => {
            let methods: Vec<Method> = method.into_iter().map(Into::into).collect();
            render_table(&commands::cmd_curve(&cfg, Level::from_index(level)?, sign.into(), lmax, steps, &methods)?, format)
        }
        Command::Energy { lambda, sign, level, method, dump_eigvecs } => {
            let coupling = Coupling::new(lambda, sign.into())?;
            let report = commands::cmd_energy(&cfg, coupling, Level::from_index(level)?, method.into())?;
            if let Some(path) = dump_eigvecs {
                let spectrum = HamiltonianMatrix::build(coupling, &cfg.table()?).diagonalize()?;
                spectrum.write_csv(BufWriter::new(File::create(path)?))?;
            }
            if !report.self_check_passed() {
                outcome = Outcome::SelfCheckFailed;
            }
            format!("{}\n", report.to_json())
        }
        Command::DetScan { lambda, sign, emin, emax, steps } => {
            let coupling = Coupling::new(lambda, sign.into())?;
            render_table(&commands::cmd_det_scan(&cfg, coupling, emin, emax, steps)?, format)
        }
        Command::SeriesCheck { terms, trace_terms } => {
            render_table(&commands::cmd_series_check(terms, trace_terms)?, format)
        }
        Command::Constants => format!("{}\n", serde_json::to_string_pretty(&commands::cmd_constants()?)?),
    };
    emit(&text, &cli.out)?;
    Ok(outcome)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::SelfCheckFailed) => {
            eprintln!("{}", json!({ "error": "self_check_failed", "message": "energy changed by more than the tolerance when the basis was enlarged" }));
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
