//! CSV front end for the `airy-tunnel` library.
//!
//! [`RunConfig`] is the validated form of the command line; [`render`] turns it
//! into the complete CSV text and [`run`] writes that text or a one-line
//! diagnostic. Nothing is written until every row has been computed.

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;

use airy_tunnel::geometry::find_turning_points;
use airy_tunnel::oracle::exact_transmission;
use airy_tunnel::{rate_report, sample_grid, Error, PotentialSpec, RateReport, Window};
use num_complex::Complex64;
use rayon::prelude::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_NO_BARRIER: i32 = 3;
pub const EXIT_MULTI_HUMP: i32 = 4;
pub const EXIT_FORMAT: i32 = 5;
pub const EXIT_ORACLE: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Report,
    Sweep,
    Wavefunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Parabolic,
    Sech2,
    Gaussian,
    Square,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Parabolic => "parabolic",
            Family::Sech2 => "sech2",
            Family::Gaussian => "gaussian",
            Family::Square => "square",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSource {
    Builtin {
        family: Family,
        v0: Option<f64>,
        w: Option<f64>,
        l: Option<f64>,
    },
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Energies {
    Single(f64),
    Range { min: f64, max: f64, count: usize },
}

/// Which turning point the wavefunction action is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Anchor {
    #[default]
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub potential: PotentialSource,
    pub energies: Energies,
    /// Overrides the family's default window (for wavefunction, the sampling grid only).
    pub window: Option<Window>,
    pub oracle: bool,
    pub slices: usize,
    /// Appends `err_wkb,err_asymptotic,err_uniform` (needs `oracle`).
    pub relative_errors: bool,
    /// Wavefunction grid size.
    pub points: usize,
    pub anchor: Anchor,
    /// `None` writes to the caller's sink.
    pub output: Option<PathBuf>,
}

/// A failed run: exit code plus the diagnostic line.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn bad_args(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_BAD_ARGS,
            message: message.into(),
        }
    }

    fn oracle(e: Error) -> Self {
        Self {
            code: EXIT_ORACLE,
            message: format!("oracle failed: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) | Error::Argument(_) | Error::Domain(_) | Error::Range { .. } => EXIT_BAD_ARGS,
            Error::NonSmooth => EXIT_BAD_ARGS,
            Error::NoBarrier { .. } | Error::UnbracketedBarrier { .. } | Error::DegenerateTurningPoint(_) => {
                EXIT_NO_BARRIER
            }
            Error::MultiHumpUnsupported { .. } => EXIT_MULTI_HUMP,
            Error::Format { .. } | Error::Io(_) => EXIT_FORMAT,
            Error::AsymptoteMismatch { .. } => EXIT_ORACLE,
            Error::Overflow { .. } => EXIT_OTHER,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl RunConfig {
    /// Checks the cross-field rules that the parser cannot express.
    pub fn validate(&self) -> Result<(), Failure> {
        match self.energies {
            Energies::Single(e) if !e.is_finite() => {
                return Err(Failure::bad_args(format!("energy must be finite, got {e}")))
            }
            Energies::Range { count, .. } if count < 2 => {
                return Err(Failure::bad_args(format!("sweep needs --n >= 2, got {count}")))
            }
            Energies::Range { min, max, .. } if !(min < max) => {
                return Err(Failure::bad_args(format!("need --emin < --emax, got {min} and {max}")))
            }
            _ => {}
        }
        let expects_range = self.command == Command::Sweep;
        if expects_range != matches!(self.energies, Energies::Range { .. }) {
            return Err(Failure::bad_args(
                "sweep takes --emin/--emax/--n; report and wavefunction take --energy",
            ));
        }
        if let Some((lo, hi)) = self.window {
            if !(lo < hi) {
                return Err(Failure::bad_args(format!("need --xmin < --xmax, got {lo} and {hi}")));
            }
        }
        if self.oracle && self.slices < airy_tunnel::oracle::MIN_SLICES {
            return Err(Failure::bad_args(format!(
                "--slices must be at least {}",
                airy_tunnel::oracle::MIN_SLICES
            )));
        }
        if self.relative_errors && !self.oracle {
            return Err(Failure::bad_args("--rel-errors needs --oracle"));
        }
        if self.command == Command::Wavefunction && self.points < 2 {
            return Err(Failure::bad_args(format!(
                "wavefunction needs --n >= 2, got {}",
                self.points
            )));
        }
        if let PotentialSource::Builtin { family, v0, w, l } = &self.potential {
            let need = |name: &str, v: Option<f64>| {
                v.ok_or_else(|| Failure::bad_args(format!("{} needs --{name}", family.name())))
            };
            need("v0", *v0)?;
            match family {
                Family::Parabolic => {}
                Family::Sech2 | Family::Gaussian => {
                    need("w", *w)?;
                }
                Family::Square => {
                    need("l", *l)?;
                }
            }
        }
        Ok(())
    }

    fn load_potential(&self) -> Result<PotentialSpec, Failure> {
        match &self.potential {
            PotentialSource::Builtin { family, v0, w, l } => {
                let v0 = v0.unwrap_or(f64::NAN);
                let spec = match family {
                    Family::Parabolic => PotentialSpec::parabolic(v0),
                    Family::Sech2 => PotentialSpec::sech2(v0, w.unwrap_or(f64::NAN)),
                    Family::Gaussian => PotentialSpec::gaussian(v0, w.unwrap_or(f64::NAN)),
                    Family::Square => PotentialSpec::square(v0, l.unwrap_or(f64::NAN)),
                };
                Ok(spec?)
            }
            PotentialSource::File(path) => {
                let file = File::open(path).map_err(|e| Failure {
                    code: EXIT_FORMAT,
                    message: format!("{}: {e}", path.display()),
                })?;
                PotentialSpec::load_tabulated(BufReader::new(file)).map_err(|e| Failure {
                    code: EXIT_FORMAT,
                    message: format!("{}: {e}", path.display()),
                })
            }
        }
    }
}

/// Formats one CSV field with 12 significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn report_header(config: &RunConfig) -> String {
    let mut h = String::from("E,a,b,c,theta,airy_arg,t_wkb,t_asymptotic,t_uniform");
    if config.oracle {
        h.push_str(",t_exact,flux_defect");
    }
    if config.relative_errors {
        h.push_str(",err_wkb,err_asymptotic,err_uniform");
    }
    h
}

fn report_row(config: &RunConfig, r: &RateReport) -> String {
    let g = &r.geometry;
    let mut fields = vec![
        r.energy,
        g.a,
        g.b,
        g.c,
        g.theta,
        r.airy_argument,
        r.t_wkb,
        r.t_asymptotic,
        r.t_uniform,
    ];
    if let Some(o) = r.oracle {
        fields.extend([o.richardson_estimate, o.flux_defect]);
    }
    if config.relative_errors {
        fields.extend(r.relative_errors().unwrap_or([f64::NAN; 3]));
    }
    fields.into_iter().map(num).collect::<Vec<_>>().join(",")
}

fn compute_report(config: &RunConfig, p: &PotentialSpec, window: Window, energy: f64) -> Result<RateReport, Failure> {
    let mut report = rate_report(p, energy, window, None)?;
    if config.oracle {
        let o = exact_transmission(p, energy, window, config.slices).map_err(Failure::oracle)?;
        report.oracle = Some(o);
    }
    Ok(report)
}

fn sweep_energies(min: f64, max: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            if i + 1 == count {
                max
            } else {
                min + (max - min) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}

/// Produces the full CSV text for `config`.
pub fn render(config: &RunConfig) -> Result<String, Failure> {
    config.validate()?;
    let p = config.load_potential()?;
    let window = config.window.unwrap_or_else(|| p.default_window());
    let mut out = String::new();
    match (config.command, config.energies) {
        (Command::Report, Energies::Single(e)) => {
            let r = compute_report(config, &p, window, e)?;
            writeln!(out, "{}", report_header(config)).unwrap();
            writeln!(out, "{}", report_row(config, &r)).unwrap();
        }
        (Command::Sweep, Energies::Range { min, max, count }) => {
            let rows = sweep_energies(min, max, count)
                .into_par_iter()
                .map(|e| compute_report(config, &p, window, e).map(|r| report_row(config, &r)))
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(out, "{}", report_header(config)).unwrap();
            for row in rows {
                writeln!(out, "{row}").unwrap();
            }
        }
        (Command::Wavefunction, Energies::Single(e)) => {
            // Turning points come from the family's window; --xmin/--xmax only set the grid.
            let (a, b) = find_turning_points(&p, e, p.default_window())?;
            let anchor = match config.anchor {
                Anchor::Left => a,
                Anchor::Right => b,
            };
            let one = Complex64::new(1.0, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            let samples = sample_grid(&p, e, window, config.points, one, zero, anchor)?;
            writeln!(out, "x,ksq,airy_arg,psi_ai,psi_bi").unwrap();
            for s in samples {
                let fields = [s.x, s.ksq, s.airy_arg, s.basis.ai_branch, s.basis.bi_branch];
                writeln!(out, "{}", fields.map(num).join(",")).unwrap();
            }
        }
        _ => unreachable!("validate pairs commands with energies"),
    }
    Ok(out)
}

/// Runs `config`, writing CSV to `config.output` or `out`. On failure, prints
/// one diagnostic line to stderr. Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> i32 {
    let result = render(config).and_then(|csv| {
        let written = match &config.output {
            Some(path) => File::create(path).and_then(|mut f| f.write_all(csv.as_bytes())),
            None => out.write_all(csv.as_bytes()).and_then(|_| out.flush()),
        };
        written.map_err(|e: io::Error| Failure {
            code: EXIT_FORMAT,
            message: format!("cannot write output: {e}"),
        })
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}
