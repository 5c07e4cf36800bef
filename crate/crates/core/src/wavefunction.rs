//! Uniform Airy approximation to the wavefunction across a turning point.
//!
//! With `S(x) = (3/2)|∫_anchor^x |k| dξ|` measured from a chosen turning point,
//! the two basis solutions are
//!
//! ```text
//! ψ₊(x) = |k(x)|^{-1/2} S(x)^{1/6} Ai(sgn(−k²) S^{2/3})
//! ψ₋(x) = |k(x)|^{-1/2} S(x)^{1/6} Bi(sgn(−k²) S^{2/3})
//! ```
//!
//! All fractional powers are taken on the positive real branch, so `ψ±` are
//! real; the forbidden/allowed distinction lives entirely in the sign of the
//! Airy argument. At the anchor the prefactor tends to `|α|^{-1/6}` with
//! `α = dk²/dx`, which fills the removable `0·∞` there.
//!
//! Here `ψ₊`/`ψ₋` name the Ai and Bi branches of one uniform solution anchored
//! at one turning point. They are not the left- and right-anchored solutions
//! that enter the rate derivation.
//!
//! The approximation is built around a single turning point. Past the other
//! turning point `|k|^{-1/2}` diverges and the Airy argument changes sign
//! abruptly, so samples there are not meaningful.

use num_complex::Complex64;

use crate::geometry::{Window, DEGENERATE_SLOPE_TOLERANCE};
use crate::potential::Potential;
use crate::quadrature::TanhSinh;
use crate::roots::{brent, Tolerance};
use crate::specfun::airy;
use crate::{Error, Result};

/// Below this `S` the turning-point limit replaces the direct formula.
pub const TURNING_POINT_GUARD: f64 = 1e-8;

/// Samples used to look for interior sign changes of `k²` between the anchor
/// and the evaluation point.
const SPLIT_SCAN_POINTS: usize = 256;

/// The (Ai-branch, Bi-branch) pair at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryBasis {
    /// `ψ₊`, built on `Ai`.
    pub ai_branch: f64,
    /// `ψ₋`, built on `Bi`.
    pub bi_branch: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionSample {
    pub x: f64,
    /// `c₊ψ₊ + c₋ψ₋` (un-normalized).
    pub psi: Complex64,
    pub ksq: f64,
    /// `sgn(−k²) S^{2/3}`.
    pub airy_arg: f64,
    pub basis: AiryBasis,
}

/// `c₊ψ₊ + c₋ψ₋`.
pub fn superpose(c_plus: Complex64, c_minus: Complex64, basis: AiryBasis) -> Complex64 {
    c_plus * basis.ai_branch + c_minus * basis.bi_branch
}

/// `S(x) = (3/2) |∫_anchor^x √|E − V| dξ|`, split at any sign change of `k²`.
pub fn half_action_from<P: Potential + ?Sized>(p: &P, energy: f64, anchor: f64, x: f64) -> Result<f64> {
    p.check_abscissa(anchor)?;
    p.check_abscissa(x)?;
    if anchor == x {
        return Ok(0.0);
    }
    let (lo, hi) = if anchor < x { (anchor, x) } else { (x, anchor) };
    let ksq = |x: f64| energy - p.value(x);

    let mut breaks = vec![lo];
    let step = (hi - lo) / SPLIT_SCAN_POINTS as f64;
    let mut prev_x = lo;
    let mut prev_allowed = ksq(lo) > 0.0;
    for i in 1..=SPLIT_SCAN_POINTS {
        let xi = if i == SPLIT_SCAN_POINTS {
            hi
        } else {
            lo + step * i as f64
        };
        let allowed = ksq(xi) > 0.0;
        if allowed != prev_allowed {
            breaks.push(brent(|x| Ok(ksq(x)), prev_x, xi, Tolerance::default())?);
        }
        prev_x = xi;
        prev_allowed = allowed;
    }
    breaks.push(hi);

    let quad = TanhSinh::default();
    let total: f64 = breaks
        .windows(2)
        .map(|w| quad.integrate(|x| ksq(x).abs().sqrt(), w[0], w[1]).value)
        .sum();
    Ok(1.5 * total)
}

fn evaluate<P: Potential + ?Sized>(p: &P, energy: f64, anchor: f64, x: f64) -> Result<(AiryBasis, f64, f64)> {
    let s = half_action_from(p, energy, anchor, x)?;
    let ksq = energy - p.value(x);
    if s < TURNING_POINT_GUARD {
        let slope = p.eval_v_prime(anchor)?;
        if slope.abs() < DEGENERATE_SLOPE_TOLERANCE * energy.abs().max(p.value(anchor).abs()) {
            return Err(Error::DegenerateTurningPoint(format!(
                "dV/dx = {slope} at anchor {anchor}"
            )));
        }
        let scale = slope.abs().powf(-1.0 / 6.0);
        let origin = airy(0.0)?;
        let basis = AiryBasis {
            ai_branch: scale * origin.ai,
            bi_branch: scale * origin.bi,
        };
        return Ok((basis, ksq, 0.0));
    }
    let sign = if ksq < 0.0 {
        1.0
    } else if ksq > 0.0 {
        -1.0
    } else {
        0.0
    };
    let arg = sign * s.cbrt().powi(2);
    let prefactor = s.powf(1.0 / 6.0) / ksq.abs().sqrt().sqrt();
    let pair = airy(arg)?;
    let basis = AiryBasis {
        ai_branch: prefactor * pair.ai,
        bi_branch: prefactor * pair.bi,
    };
    Ok((basis, ksq, arg))
}

/// Evaluates `(ψ₊, ψ₋)` at `x` with `S` measured from `anchor`, normally one of
/// the turning points.
pub fn psi_basis<P: Potential + ?Sized>(p: &P, energy: f64, anchor: f64, x: f64) -> Result<AiryBasis> {
    evaluate(p, energy, anchor, x).map(|(basis, _, _)| basis)
}

/// `n_points` uniformly spaced samples over `window`, endpoints included.
pub fn sample_grid<P: Potential + ?Sized>(
    p: &P,
    energy: f64,
    window: Window,
    n_points: usize,
    c_plus: Complex64,
    c_minus: Complex64,
    anchor: f64,
) -> Result<Vec<WavefunctionSample>> {
    if n_points < 2 {
        return Err(Error::Argument(format!("need at least 2 grid points, got {n_points}")));
    }
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Argument(format!("invalid window [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            let x = if i + 1 == n_points { hi } else { lo + step * i as f64 };
            let (basis, ksq, airy_arg) = evaluate(p, energy, anchor, x)?;
            Ok(WavefunctionSample {
                x,
                psi: superpose(c_plus, c_minus, basis),
                ksq,
                airy_arg,
                basis,
            })
        })
        .collect()
}

/// Largest relative residual `|ψ'' + k²ψ| / max(|k²ψ|, floor)` over the
/// interior samples, with `ψ''` from central differences.
///
/// `floor` is `1e-3` of the largest `|k²ψ|` on the grid, so nodes and
/// turning points do not dominate through a vanishing denominator.
pub fn ode_residual(samples: &[WavefunctionSample]) -> Result<f64> {
    if samples.len() < 5 {
        return Err(Error::Argument(format!(
            "need at least 5 samples, got {}",
            samples.len()
        )));
    }
    let h = samples[1].x - samples[0].x;
    if !(h > 0.0) || samples.windows(2).any(|w| ((w[1].x - w[0].x) - h).abs() > 1e-6 * h) {
        return Err(Error::Argument("samples are not uniformly spaced".into()));
    }
    let source = |s: &WavefunctionSample| s.psi * s.ksq;
    let floor = 1e-3 * samples.iter().map(|s| source(s).norm()).fold(0.0, f64::max);
    let worst = samples
        .windows(3)
        .map(|w| {
            let second = (w[0].psi - 2.0 * w[1].psi + w[2].psi) / (h * h);
            let residual = (second + source(&w[1])).norm();
            residual / source(&w[1]).norm().max(floor)
        })
        .fold(0.0, f64::max);
    Ok(worst)
}
