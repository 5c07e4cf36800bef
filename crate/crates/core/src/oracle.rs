//! Exact transmission through a barrier approximated by piecewise-constant
//! slices, used to grade the semiclassical rates.
//!
//! Each slice of width `h` and constant `q² = E − V` carries `(ψ, ψ')` exactly
//! through the real unimodular matrix
//!
//! ```text
//! [ C        s ]      C = cos(qh), s = sin(qh)/q   (q² > 0)
//! [ −q²s     C ]      C = cosh(κh), s = sinh(κh)/κ (q² = −κ² < 0)
//! ```
//!
//! Starting from a pure transmitted wave `e^{ikx}` on the right, the state is
//! carried leftward (the growing direction under the barrier, hence stable) and
//! decomposed into incident and reflected waves on the left. The state is
//! rescaled every [`RENORMALIZE_EVERY`] slices with the scale tracked in log form.
//!
//! The potential must tend to the same asymptote (taken as zero) at both ends
//! of the domain so that no flux `k` ratio enters `T`.

use num_complex::Complex64;

use crate::potential::Potential;
use crate::{Error, Result};

pub const RENORMALIZE_EVERY: usize = 64;
pub const MIN_SLICES: usize = 100;
/// Largest `|V|` accepted at the domain ends.
pub const ASYMPTOTE_TOLERANCE: f64 = 1e-9;

/// Where and how finely to run the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub domain: (f64, f64),
    pub slices: usize,
}

impl OracleSettings {
    pub const DEFAULT_SLICES: usize = 20_000;

    pub fn new(domain: (f64, f64)) -> Self {
        Self {
            domain,
            slices: Self::DEFAULT_SLICES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    /// Transmission at `slices`.
    pub t_exact: f64,
    /// Reflection at `slices`.
    pub r_exact: f64,
    pub slices: usize,
    /// `max |T + R − 1|` over the two resolutions.
    pub flux_defect: f64,
    /// Richardson extrapolation from `slices` and `2·slices` (second order).
    pub richardson_estimate: f64,
    /// Transmission at `2·slices`.
    pub t_refined: f64,
}

/// Transmission and reflection for one slicing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scattering {
    pub transmission: f64,
    pub reflection: f64,
}

impl Scattering {
    pub fn flux_defect(&self) -> f64 {
        (self.transmission + self.reflection - 1.0).abs()
    }
}

/// Runs the transfer-matrix solver at `slices` and `2·slices`.
pub fn exact_transmission<P: Potential + ?Sized>(
    p: &P,
    energy: f64,
    domain: (f64, f64),
    slices: usize,
) -> Result<OracleResult> {
    validate(p, energy, domain, slices)?;
    let coarse = scatter(p, energy, domain, slices);
    let fine = scatter(p, energy, domain, 2 * slices);
    let richardson = fine.transmission + (fine.transmission - coarse.transmission) / 3.0;
    Ok(OracleResult {
        t_exact: coarse.transmission,
        r_exact: coarse.reflection,
        slices,
        flux_defect: coarse.flux_defect().max(fine.flux_defect()),
        richardson_estimate: richardson,
        t_refined: fine.transmission,
    })
}

/// Single-resolution run, exposed for convergence studies.
pub fn transfer_matrix<P: Potential + ?Sized>(
    p: &P,
    energy: f64,
    domain: (f64, f64),
    slices: usize,
) -> Result<Scattering> {
    validate(p, energy, domain, slices)?;
    Ok(scatter(p, energy, domain, slices))
}

fn validate<P: Potential + ?Sized>(p: &P, energy: f64, domain: (f64, f64), slices: usize) -> Result<()> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(Error::Domain(format!("oracle needs E > 0, got {energy}")));
    }
    if slices < MIN_SLICES {
        return Err(Error::Argument(format!(
            "need at least {MIN_SLICES} slices, got {slices}"
        )));
    }
    let (lo, hi) = domain;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Argument(format!("invalid oracle domain [{lo}, {hi}]")));
    }
    let left = p.eval_v(lo)?;
    let right = p.eval_v(hi)?;
    if left.abs() > ASYMPTOTE_TOLERANCE || right.abs() > ASYMPTOTE_TOLERANCE {
        return Err(Error::AsymptoteMismatch { left, right });
    }
    Ok(())
}

/// Slice edges: a uniform grid with every jump of the potential inserted, so
/// that no slice straddles a discontinuity.
fn slice_edges<P: Potential + ?Sized>(p: &P, (lo, hi): (f64, f64), slices: usize) -> Vec<f64> {
    let step = (hi - lo) / slices as f64;
    let mut edges: Vec<f64> = (0..=slices)
        .map(|i| if i == slices { hi } else { lo + step * i as f64 })
        .collect();
    let jumps: Vec<f64> = p.jumps().into_iter().filter(|&x| x > lo && x < hi).collect();
    if !jumps.is_empty() {
        edges.extend(jumps);
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * step);
    }
    edges
}

fn scatter<P: Potential + ?Sized>(p: &P, energy: f64, domain: (f64, f64), slices: usize) -> Scattering {
    let k = energy.sqrt();
    let ik = Complex64::new(0.0, k);
    let edges = slice_edges(p, domain, slices);

    // Transmitted wave at the right edge: ψ = 1, ψ' = ik.
    let mut psi = Complex64::new(1.0, 0.0);
    let mut dpsi = ik;
    let mut log_scale = 0.0;

    for (n, w) in edges.windows(2).rev().enumerate() {
        let (x0, x1) = (w[0], w[1]);
        let h = x1 - x0;
        let qsq = energy - p.value(0.5 * (x0 + x1));
        let (c, s) = propagator(qsq, h);
        // Inverse of [[c, s], [-qsq s, c]] carries the state from x1 back to x0.
        let next_psi = psi * c - dpsi * s;
        let next_dpsi = psi * (qsq * s) + dpsi * c;
        psi = next_psi;
        dpsi = next_dpsi;
        if n % RENORMALIZE_EVERY == RENORMALIZE_EVERY - 1 {
            let norm = psi.norm().max(dpsi.norm() / k);
            if norm > 0.0 {
                psi /= norm;
                dpsi /= norm;
                log_scale += norm.ln();
            }
        }
    }

    // ψ = A e^{ikx} + B e^{-ikx} at the left edge (local origin).
    let ratio = dpsi / ik;
    let incident = 0.5 * (psi + ratio);
    let reflected = 0.5 * (psi - ratio);
    let reflection = (reflected.norm() / incident.norm()).powi(2);
    let transmission = (-2.0 * (incident.norm().ln() + log_scale)).exp();
    Scattering {
        transmission,
        reflection,
    }
}

/// `(C, s)` of the slice propagator for constant `q²` over width `h`.
fn propagator(qsq: f64, h: f64) -> (f64, f64) {
    if qsq > 0.0 {
        let q = qsq.sqrt();
        let (sin, cos) = (q * h).sin_cos();
        (cos, sin / q)
    } else if qsq < 0.0 {
        let kappa = (-qsq).sqrt();
        let z = kappa * h;
        (z.cosh(), z.sinh() / kappa)
    } else {
        (1.0, h)
    }
}

/// `T = 1/(1 + V0² sinh²(κL)/(4E(V0 − E)))`, `κ = √(V0 − E)`, for `0 < E < V0`.
pub fn square_barrier_closed_form(v0: f64, length: f64, energy: f64) -> Result<f64> {
    if !(energy > 0.0 && energy < v0) || !length.is_finite() || length < 0.0 {
        return Err(Error::Domain(format!(
            "closed form needs 0 < E < V0 and L >= 0 (E = {energy}, V0 = {v0}, L = {length})"
        )));
    }
    let kappa = (v0 - energy).sqrt();
    let sinh = (kappa * length).sinh();
    Ok(1.0 / (1.0 + v0 * v0 * sinh * sinh / (4.0 * energy * (v0 - energy))))
}
