use std::path::PathBuf;
use std::process::ExitCode;

use airy_tunnel_cli::{run, Anchor, Command, Energies, Family, PotentialSource, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  other failure
  2  bad arguments
  3  no barrier at this energy (or a degenerate turning point)
  4  multi-hump barrier
  5  potential file or output error
  6  oracle failure";

/// Tunneling rates through 1D barriers: uniform Airy, asymptotic and WKB, with
/// an optional transfer-matrix reference. Units: hbar^2/2m = 1.
#[derive(Parser)]
#[command(name = "airy-tunnel", version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// All rates at one energy.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        energy: f64,
    },
    /// Rates on an evenly spaced energy grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        emin: f64,
        #[arg(long)]
        emax: f64,
        /// Number of energies.
        #[arg(long)]
        n: usize,
    },
    /// Uniform Airy basis functions on a grid.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        energy: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 201)]
        n: usize,
        /// Turning point the action is measured from.
        #[arg(long, value_enum, default_value_t = AnchorArg::A)]
        anchor: AnchorArg,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, required_unless_present = "file", conflicts_with = "file")]
    potential: Option<FamilyArg>,
    /// Tabulated potential: two columns `x V`, comma or whitespace separated.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    v0: Option<f64>,
    /// Width (sech2, gaussian).
    #[arg(long)]
    w: Option<f64>,
    /// Length (square).
    #[arg(long)]
    l: Option<f64>,
    #[arg(long, requires = "xmax", allow_negative_numbers = true)]
    xmin: Option<f64>,
    #[arg(long, requires = "xmin", allow_negative_numbers = true)]
    xmax: Option<f64>,
    /// Also run the transfer-matrix solver over the window.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 20_000)]
    slices: usize,
    /// Append relative errors against the oracle.
    #[arg(long = "rel-errors", requires = "oracle")]
    rel_errors: bool,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Parabolic,
    Sech2,
    Gaussian,
    Square,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnchorArg {
    A,
    B,
}

fn config(cli: Cli) -> RunConfig {
    let (command, common, energies, points, anchor) = match cli.command {
        Cmd::Report { common, energy } => (Command::Report, common, Energies::Single(energy), 0, Anchor::Left),
        Cmd::Sweep { common, emin, emax, n } => (
            Command::Sweep,
            common,
            Energies::Range {
                min: emin,
                max: emax,
                count: n,
            },
            0,
            Anchor::Left,
        ),
        Cmd::Wavefunction {
            common,
            energy,
            n,
            anchor,
        } => {
            let anchor = match anchor {
                AnchorArg::A => Anchor::Left,
                AnchorArg::B => Anchor::Right,
            };
            (Command::Wavefunction, common, Energies::Single(energy), n, anchor)
        }
    };
    let potential = match (common.potential, common.file) {
        (_, Some(path)) => PotentialSource::File(path),
        (Some(f), None) => PotentialSource::Builtin {
            family: match f {
                FamilyArg::Parabolic => Family::Parabolic,
                FamilyArg::Sech2 => Family::Sech2,
                FamilyArg::Gaussian => Family::Gaussian,
                FamilyArg::Square => Family::Square,
            },
            v0: common.v0,
            w: common.w,
            l: common.l,
        },
        (None, None) => unreachable!("clap requires one source"),
    };
    RunConfig {
        command,
        potential,
        energies,
        window: common.xmin.zip(common.xmax),
        oracle: common.oracle,
        slices: common.slices,
        relative_errors: common.rel_errors,
        points,
        anchor,
        output: common.output,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let code = run(&config(cli), &mut stdout.lock());
    ExitCode::from(code as u8)
}
