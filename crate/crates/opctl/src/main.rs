//! `opctl` — command-line front door for the operator-theory workbench.
//!
//! One experiment per invocation. Every run emits a flat JSON object
//! `{experiment, config, results, tolerances, verdict}` (stdout by
//! default) or a CSV table (`./out/<subcommand>.csv` by default); both
//! honor `--out`. Identical configuration and seed produce identical
//! bytes. Exit codes: 0 on success, 2 on validation failure, 1 on an
//! internal numerical failure.

mod experiments;
mod output;
mod rng;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use opspectra::waveline::MomentumMode;
use opspectra::OpError;

use experiments::{algebra_cmds, bernstein_cmds, grid_cmds, matrix_cmds, quanta_cmds};
use output::{write_atomic, CsvTable, Report};

#[derive(Parser)]
#[command(
    name = "opctl",
    about = "Operator-theory workbench experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the counter-based generator (falls back to OPSPECTRA_SEED, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path; default is stdout for JSON and ./out/<subcommand>.csv for CSV.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Round table values the way the reference texts print them.
    #[arg(long, global = true)]
    paper_compat: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Central,
    Spectral,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridFunctionName {
    Gaussian,
    Step,
}

impl GridFunctionName {
    fn as_str(&self) -> &'static str {
        match self {
            GridFunctionName::Gaussian => "gaussian",
            GridFunctionName::Step => "step",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hydrogen line table with the reference constants.
    Balmer {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 7)]
        l_max: u32,
    },
    /// Quantum vs classical blackbody densities over a wavelength scan.
    Planck {
        #[arg(long, default_value_t = 1e-5)]
        lambda_min: f64,
        #[arg(long, default_value_t = 1e-2)]
        lambda_max: f64,
        #[arg(long, default_value_t = 300.0)]
        temperature: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Matter wavelength h/(m v); defaults to an electron at c/3.
    Debroglie {
        #[arg(long)]
        mass: Option<f64>,
        #[arg(long)]
        velocity: Option<f64>,
    },
    /// Stable-orbit radii and energies.
    Bohr {
        #[arg(long, default_value_t = 5)]
        k_max: u32,
    },
    /// Commutator trace and defect against +/- i hbar I.
    CcrObstruction {
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Use the ladder truncation instead of a seeded random pair.
        #[arg(long)]
        oscillator: bool,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        /// Use hbar = h / 2 pi from the reference constants.
        #[arg(long)]
        physical: bool,
    },
    /// Characteristic polynomials of AB vs BA.
    SpectrumSymmetry {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Inverse of I - BA from an inverse of I - AB.
    Wielandt {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Ladder truncation defect structure.
    OscillatorTruncation {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        physical: bool,
    },
    /// Spectral compression identity for the grid momentum/position pair.
    TruncationIdentity {
        #[arg(long, default_value_t = 64)]
        grid_n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [5.0, 10.0, 20.0])]
        cutoffs: Vec<f64>,
    },
    /// Shrinking inputs with constant image under BT.
    PreclosedDemo {
        #[arg(long, default_value_t = 10)]
        m_max: usize,
        #[arg(long, default_value_t = 24)]
        dim: usize,
    },
    /// Grid commutator residual |(QP - PQ)f + i f| / |f|.
    GridHeisenberg {
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Spectral)]
        mode: Mode,
    },
    /// Difference-quotient blow-up table for a unit step.
    JumpProfile {
        #[arg(long, default_value_t = 4096)]
        grid_n: usize,
        #[arg(long, default_value_t = 2.0)]
        half_window: f64,
    },
    /// Generator-domain diagnostic for a named function.
    DomainDiagnostic {
        #[arg(long, value_enum, default_value_t = GridFunctionName::Gaussian)]
        function: GridFunctionName,
        #[arg(long, default_value_t = 1024)]
        n: usize,
    },
    /// Cumulative integral of a seeded sample on [0, 1].
    Volterra {
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
    /// Skewness of the extension D(Kf + au) = f on trig polynomials.
    D3Skew {
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Running-average residuals for a named function.
    Averaging {
        #[arg(long, value_enum, default_value_t = GridFunctionName::Gaussian)]
        function: GridFunctionName,
        #[arg(long, default_value_t = 1024)]
        n: usize,
    },
    /// Approximant table (x, f, Bn, f', Bn') and sup errors.
    BernsteinApprox {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value = "x2")]
        function: String,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Both sides of the six moment identities at a probe point.
    BernsteinIdentities {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        x: f64,
    },
    /// Eigensystem and spectral resolution of a seeded Hermitian matrix.
    SpectralDecompose {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Polar factors of a seeded matrix with witness identities.
    Polar {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Join/meet dimension identity over seeded projection pairs.
    VnLattice {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        draws: usize,
    },
    /// Center-valued trace properties over seeded elements.
    VnTrace {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        blocks: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        draws: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Balmer { .. } => "balmer",
            Command::Planck { .. } => "planck",
            Command::Debroglie { .. } => "debroglie",
            Command::Bohr { .. } => "bohr",
            Command::CcrObstruction { .. } => "ccr-obstruction",
            Command::SpectrumSymmetry { .. } => "spectrum-symmetry",
            Command::Wielandt { .. } => "wielandt",
            Command::OscillatorTruncation { .. } => "oscillator-truncation",
            Command::TruncationIdentity { .. } => "truncation-identity",
            Command::PreclosedDemo { .. } => "preclosed-demo",
            Command::GridHeisenberg { .. } => "grid-heisenberg",
            Command::JumpProfile { .. } => "jump-profile",
            Command::DomainDiagnostic { .. } => "domain-diagnostic",
            Command::Volterra { .. } => "volterra",
            Command::D3Skew { .. } => "d3-skew",
            Command::Averaging { .. } => "averaging",
            Command::BernsteinApprox { .. } => "bernstein-approx",
            Command::BernsteinIdentities { .. } => "bernstein-identities",
            Command::SpectralDecompose { .. } => "spectral-decompose",
            Command::Polar { .. } => "polar",
            Command::VnLattice { .. } => "vn-lattice",
            Command::VnTrace { .. } => "vn-trace",
        }
    }
}

fn resolve_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("OPSPECTRA_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn run(cli: &Cli) -> opspectra::Result<(Report, Option<CsvTable>)> {
    let seed = resolve_seed(cli.seed);
    match &cli.command {
        Command::Balmer { k, l_max } => quanta_cmds::balmer(*k, *l_max, cli.paper_compat),
        Command::Planck {
            lambda_min,
            lambda_max,
            temperature,
            points,
        } => quanta_cmds::planck(*lambda_min, *lambda_max, *temperature, *points),
        Command::Debroglie { mass, velocity } => quanta_cmds::debroglie(*mass, *velocity),
        Command::Bohr { k_max } => quanta_cmds::bohr(*k_max),
        Command::CcrObstruction {
            n,
            oscillator,
            hbar,
            physical,
        } => matrix_cmds::ccr_obstruction(*n, seed, *oscillator, *hbar, *physical),
        Command::SpectrumSymmetry { n } => matrix_cmds::spectrum_symmetry(*n, seed, 1e-9),
        Command::Wielandt { n } => matrix_cmds::wielandt(*n, seed),
        Command::OscillatorTruncation { n, hbar, physical } => {
            matrix_cmds::oscillator_truncation(*n, *hbar, *physical)
        }
        Command::TruncationIdentity { grid_n, cutoffs } => {
            matrix_cmds::truncation_identity(*grid_n, cutoffs)
        }
        Command::PreclosedDemo { m_max, dim } => matrix_cmds::preclosed_demo(*m_max, *dim),
        Command::GridHeisenberg { n, mode } => {
            let mode = match mode {
                Mode::Central => MomentumMode::CentralDifference,
                Mode::Spectral => MomentumMode::Spectral,
            };
            grid_cmds::grid_heisenberg(*n, mode)
        }
        Command::JumpProfile {
            grid_n,
            half_window,
        } => grid_cmds::jump_profile(*grid_n, *half_window),
        Command::DomainDiagnostic { function, n } => {
            grid_cmds::domain_diagnostic(function.as_str(), *n)
        }
        Command::Volterra { n } => grid_cmds::volterra(*n, seed),
        Command::D3Skew { n, trials } => grid_cmds::d3_skew(*n, *trials, seed),
        Command::Averaging { function, n } => grid_cmds::averaging(function.as_str(), *n),
        Command::BernsteinApprox {
            n,
            function,
            points,
        } => bernstein_cmds::bernstein_approx(*n, function, *points),
        Command::BernsteinIdentities { n, x } => bernstein_cmds::bernstein_identities(*n, *x),
        Command::SpectralDecompose { n } => matrix_cmds::spectral_decompose(*n, seed),
        Command::Polar { n } => matrix_cmds::polar(*n, seed),
        Command::VnLattice { blocks, draws } => algebra_cmds::vn_lattice(blocks, *draws, seed),
        Command::VnTrace { blocks, draws } => algebra_cmds::vn_trace(blocks, *draws, seed),
    }
}

fn emit(cli: &Cli, report: Report, table: Option<CsvTable>) -> std::io::Result<()> {
    match cli.format {
        Format::Json => {
            let text = report.to_json();
            match &cli.out {
                Some(path) => write_atomic(path, &text)?,
                None => print!("{text}"),
            }
        }
        Format::Csv => {
            let table = table.unwrap_or_else(|| {
                // Experiments without a natural table emit their scalar
                // results as a two-column sheet.
                let mut t = CsvTable::new(&["key", "value"]);
                if let serde_json::Value::Object(map) = &report.results {
                    for (k, v) in map {
                        t.push(vec![k.clone(), v.to_string()]);
                    }
                }
                t
            });
            let path = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("out/{}.csv", cli.command.name())));
            write_atomic(&path, &table.to_csv())?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, table)) => match emit(&cli, report, table) {
            Ok(()) => ExitCode::SUCCESS,
            Err(err) => {
                eprintln!("error: failed to write output: {err}");
                ExitCode::from(1)
            }
        },
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                // Iteration and conditioning failures are internal
                // numerical errors; everything else rejects the input.
                OpError::NoConvergence { .. } | OpError::Singular { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
