//! Per-energy barrier analysis: turning points, action integrals, the
//! equal-action midpoint and the slope limits at the turning points.
//!
//! Actions are computed with the real, non-negative integrand
//! `κ(x) = √(V(x) − E)` inside the forbidden region; `θ = ∫_a^b κ` and the
//! half-action `S = (3/2)∫_a^c κ`.

use crate::potential::Potential;
use crate::quadrature::TanhSinh;
use crate::roots::{brent, Tolerance};
use crate::{Error, Result};

/// Closed analysis interval `(lo, hi)`.
pub type Window = (f64, f64);

/// Uniform samples used to locate sign changes of `k²` before polishing.
pub const DEFAULT_SCAN_POINTS: usize = 2048;

/// Relative distance below the barrier top at which turning points are
/// considered coalesced.
pub const BARRIER_TOP_TOLERANCE: f64 = 1e-9;

/// `|dV/dx|` below this fraction of the energy scale marks a non-simple turning point.
pub const DEGENERATE_SLOPE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The left turning point `a`, where `k²` falls through zero.
    Left,
    /// The right turning point `b`, where `k²` rises through zero.
    Right,
}

/// Everything the rate formulas need about the barrier at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierGeometry {
    pub energy: f64,
    /// Left turning point.
    pub a: f64,
    /// Right turning point.
    pub b: f64,
    /// Midpoint with equal action on both sides.
    pub c: f64,
    /// `∫_a^b √(V − E) dx`.
    pub theta: f64,
    /// `(3/2) ∫_a^c √(V − E) dx`, equal to `(3/4)θ` up to quadrature error.
    pub s_half: f64,
    /// `dk²/dx` at `a` (negative).
    pub alpha_plus: f64,
    /// `dk²/dx` at `b` (positive).
    pub alpha_minus: f64,
}

impl BarrierGeometry {
    /// Argument of the Airy functions in the uniform rate, `S^{2/3}`.
    pub fn airy_argument(&self) -> f64 {
        self.s_half.cbrt().powi(2)
    }

    /// `|α₊/α₋|`.
    pub fn alpha_ratio(&self) -> f64 {
        (self.alpha_plus / self.alpha_minus).abs()
    }
}

fn check_energy(energy: f64) -> Result<()> {
    if energy.is_finite() && energy > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("energy must be finite and > 0, got {energy}")))
    }
}

fn check_window<P: Potential + ?Sized>(p: &P, window: Window) -> Result<()> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Argument(format!("invalid window [{lo}, {hi}]")));
    }
    p.check_abscissa(lo)?;
    p.check_abscissa(hi)
}

/// Locates the two turning points of a single-hump barrier inside `window`.
pub fn find_turning_points<P: Potential + ?Sized>(p: &P, energy: f64, window: Window) -> Result<(f64, f64)> {
    find_turning_points_with(p, energy, window, DEFAULT_SCAN_POINTS)
}

/// [`find_turning_points`] with an explicit scan resolution. Forbidden
/// intervals narrower than `(hi − lo)/scan_points` may go unnoticed.
pub fn find_turning_points_with<P: Potential + ?Sized>(
    p: &P,
    energy: f64,
    window: Window,
    scan_points: usize,
) -> Result<(f64, f64)> {
    check_energy(energy)?;
    check_window(p, window)?;
    if scan_points < 2 {
        return Err(Error::Argument("scan needs at least 2 intervals".into()));
    }
    let (lo, hi) = window;
    let step = (hi - lo) / scan_points as f64;
    let xs: Vec<f64> = (0..=scan_points)
        .map(|i| if i == scan_points { hi } else { lo + step * i as f64 })
        .collect();
    let ksq: Vec<f64> = xs.iter().map(|&x| energy - p.value(x)).collect();
    let forbidden: Vec<bool> = ksq.iter().map(|&k| k <= 0.0).collect();

    let crossings: Vec<usize> = (0..scan_points).filter(|&i| forbidden[i] != forbidden[i + 1]).collect();
    if crossings.is_empty() {
        return Err(if forbidden[0] {
            Error::UnbracketedBarrier { energy, lo, hi }
        } else {
            Error::NoBarrier { energy }
        });
    }
    if forbidden[0] || forbidden[scan_points] {
        return Err(Error::UnbracketedBarrier { energy, lo, hi });
    }
    if crossings.len() > 2 {
        return Err(Error::MultiHumpUnsupported {
            crossings: crossings.len(),
        });
    }

    let v_scale = xs.iter().fold(energy.abs(), |m, &x| m.max(p.value(x).abs()));
    let depth = ksq.iter().fold(0.0_f64, |m, &k| m.max(-k));
    if depth <= BARRIER_TOP_TOLERANCE * v_scale {
        return Err(Error::NoBarrier { energy });
    }

    let polish = |i: usize| brent(|x| Ok(energy - p.value(x)), xs[i], xs[i + 1], Tolerance::default());
    Ok((polish(crossings[0])?, polish(crossings[1])?))
}

/// `∫_{x1}^{x2} √(V − E) dx` over part of the forbidden region.
///
/// Fails with [`Error::Domain`] if `V < E` somewhere strictly inside the range
/// (beyond rounding at the ends).
pub fn action_integral<P: Potential + ?Sized>(p: &P, energy: f64, x1: f64, x2: f64) -> Result<f64> {
    if !energy.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {energy}")));
    }
    p.check_abscissa(x1)?;
    p.check_abscissa(x2)?;
    if x1 > x2 {
        return Err(Error::Argument(format!("action range reversed: [{x1}, {x2}]")));
    }
    let mut deepest_allowed = 0.0_f64;
    let mut scale = energy.abs();
    let est = TanhSinh::default().integrate(
        |x| {
            let excess = p.value(x) - energy;
            scale = scale.max(excess.abs());
            deepest_allowed = deepest_allowed.min(excess);
            excess.max(0.0).sqrt()
        },
        x1,
        x2,
    );
    if deepest_allowed < -1e-9 * scale {
        return Err(Error::Domain(format!(
            "V < E inside [{x1}, {x2}] (by {}): turning points inconsistent",
            -deepest_allowed
        )));
    }
    Ok(est.value)
}

/// The point `c ∈ (a, b)` at which `∫_a^c κ = ∫_c^b κ`.
pub fn find_midpoint<P: Potential + ?Sized>(p: &P, energy: f64, a: f64, b: f64) -> Result<f64> {
    let theta = action_integral(p, energy, a, b)?;
    if theta == 0.0 {
        return Ok(0.5 * (a + b));
    }
    let tol = Tolerance {
        ftol: 1e-12 * theta,
        ..Tolerance::default()
    };
    brent(
        |c| Ok(action_integral(p, energy, a, c)? - action_integral(p, energy, c, b)?),
        a,
        b,
        tol,
    )
}

/// `α = lim k²(x)/(x − x0) = −V'(x0)` at a simple turning point.
pub fn alpha_limit<P: Potential + ?Sized>(p: &P, energy: f64, x0: f64, side: Side) -> Result<f64> {
    let slope = p.eval_v_prime(x0)?;
    let scale = energy.abs().max(p.value(x0).abs());
    if slope.abs() < DEGENERATE_SLOPE_TOLERANCE * scale {
        return Err(Error::DegenerateTurningPoint(format!("dV/dx = {slope} at x = {x0}")));
    }
    let alpha = -slope;
    let expected_sign = match side {
        Side::Left => alpha < 0.0,
        Side::Right => alpha > 0.0,
    };
    if !expected_sign {
        return Err(Error::Argument(format!(
            "x = {x0} is not a {side:?} turning point (dk²/dx = {alpha})"
        )));
    }
    Ok(alpha)
}

/// Full per-energy analysis. Rejects non-smooth potentials.
pub fn analyze_barrier<P: Potential + ?Sized>(p: &P, energy: f64, window: Window) -> Result<BarrierGeometry> {
    if !p.is_smooth() {
        return Err(Error::NonSmooth);
    }
    let (a, b) = find_turning_points(p, energy, window)?;
    let alpha_plus = alpha_limit(p, energy, a, Side::Left)?;
    let alpha_minus = alpha_limit(p, energy, b, Side::Right)?;
    let c = find_midpoint(p, energy, a, b)?;
    let theta = action_integral(p, energy, a, b)?;
    let s_half = 1.5 * action_integral(p, energy, a, c)?;
    Ok(BarrierGeometry {
        energy,
        a,
        b,
        c,
        theta,
        s_half,
        alpha_plus,
        alpha_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{PotentialSpec, TabulatedPotential};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    /// Independent action oracle: `x = x1 + (x2 − x1) sin²t` removes the square-root
    /// endpoint behavior, then composite Simpson on `t ∈ [0, π/2]`.
    fn simpson_action(p: &impl Potential, energy: f64, x1: f64, x2: f64, panels: usize) -> f64 {
        let len = x2 - x1;
        let g = |t: f64| {
            let (s, c) = t.sin_cos();
            let x = x1 + len * s * s;
            (p.value(x) - energy).max(0.0).sqrt() * 2.0 * len * s * c
        };
        let h = PI / 2.0 / panels as f64;
        let mut sum = g(0.0) + g(PI / 2.0);
        for i in 1..panels {
            sum += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        sum * h / 3.0
    }

    #[test]
    fn parabolic_turning_points() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        let (a, b) = find_turning_points(&p, 0.5, p.default_window()).unwrap();
        assert!((a + FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((b - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!(p.wavenumber_sq(0.5, a).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn sech2_turning_points() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        let (a, b) = find_turning_points(&p, 0.5, p.default_window()).unwrap();
        let expected = (1.0 + 2f64.sqrt()).ln();
        assert!((a + expected).abs() < 1e-13);
        assert!((b - expected).abs() < 1e-13);
    }

    #[test]
    fn above_top_has_no_barrier() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert_eq!(
            find_turning_points(&p, 1.5, p.default_window()),
            Err(Error::NoBarrier { energy: 1.5 })
        );
    }

    #[test]
    fn nonpositive_energy_rejected() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert!(matches!(
            find_turning_points(&p, 0.0, (-5.0, 5.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn window_must_contain_barrier() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert!(matches!(
            find_turning_points(&p, 0.5, (0.0, 10.0)),
            Err(Error::UnbracketedBarrier { .. })
        ));
        assert!(matches!(
            find_turning_points(&p, 0.5, (-0.1, 0.1)),
            Err(Error::UnbracketedBarrier { .. })
        ));
    }

    #[test]
    fn double_hump_rejected() {
        let t = TabulatedPotential::from_fn(-10.0, 10.0, 2001, |x| {
            (-(x - 3.0).powi(2)).exp() + (-(x + 3.0).powi(2)).exp()
        })
        .unwrap();
        let p = PotentialSpec::tabulated(t);
        assert_eq!(
            analyze_barrier(&p, 0.5, p.default_window()),
            Err(Error::MultiHumpUnsupported { crossings: 4 })
        );
    }

    #[test]
    fn parabolic_action_is_semicircle() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        let r = FRAC_1_SQRT_2;
        let theta = action_integral(&p, 0.5, -r, r).unwrap();
        assert!((theta - PI / 4.0).abs() < 1e-13);
        assert_eq!(action_integral(&p, 0.5, 0.3, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn sech2_action_against_simpson_and_closed_form() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        let (a, b) = find_turning_points(&p, 0.5, p.default_window()).unwrap();
        let theta = action_integral(&p, 0.5, a, b).unwrap();
        let oracle = simpson_action(&p, 0.5, a, b, 4000);
        let closed = PI * (1.0 - 0.5f64.sqrt());
        assert!((theta - oracle).abs() < 1e-10 * oracle, "{theta} vs {oracle}");
        assert!((theta - closed).abs() < 1e-10, "{theta} vs {closed}");
        assert!((theta - 0.92015).abs() < 1e-5);
    }

    #[test]
    fn action_outside_forbidden_region_fails() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        assert!(matches!(action_integral(&p, 0.5, -1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetric_midpoints() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        let r = FRAC_1_SQRT_2;
        assert!(find_midpoint(&p, 0.5, -r, r).unwrap().abs() < 1e-10);
        let s = PotentialSpec::sech2(1.0, 1.0).unwrap();
        let (a, b) = find_turning_points(&s, 0.3, s.default_window()).unwrap();
        assert!(find_midpoint(&s, 0.3, a, b).unwrap().abs() < 1e-10);
    }

    #[test]
    fn tilted_gaussian_midpoint_balances_actions() {
        let t = TabulatedPotential::from_fn(-8.0, 8.0, 4001, |x| (-x * x).exp() * (1.0 + 0.3 * x.tanh())).unwrap();
        let p = PotentialSpec::tabulated(t);
        let g = analyze_barrier(&p, 0.5, p.default_window()).unwrap();
        assert!(g.c > g.a && g.c < g.b);
        assert!(g.c.abs() > 1e-3, "tilt should move the midpoint, c = {}", g.c);
        let left = simpson_action(&p, 0.5, g.a, g.c, 20000);
        let right = simpson_action(&p, 0.5, g.c, g.b, 20000);
        assert!((left - right).abs() <= 1e-10 * g.theta, "{left} vs {right}");
    }

    #[test]
    fn parabolic_alphas() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        let r = FRAC_1_SQRT_2;
        assert!((alpha_limit(&p, 0.5, -r, Side::Left).unwrap() + 2f64.sqrt()).abs() < 1e-14);
        assert!((alpha_limit(&p, 0.5, r, Side::Right).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(alpha_limit(&p, 0.5, r, Side::Left), Err(Error::Argument(_))));
    }

    #[test]
    fn sech2_alpha_against_finite_difference() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        let (_, b) = find_turning_points(&p, 0.5, p.default_window()).unwrap();
        let h = 1e-4;
        let fd = -(p.value(b + h) - p.value(b - h)) / (2.0 * h);
        let alpha = alpha_limit(&p, 0.5, b, Side::Right).unwrap();
        assert!((alpha - fd).abs() < 1e-8);
        assert!((alpha - 2.0 * 0.5 * b.tanh()).abs() < 1e-14);
        assert!((alpha - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn barrier_top_is_degenerate() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        assert!(matches!(
            alpha_limit(&p, 1.0, 0.0, Side::Right),
            Err(Error::DegenerateTurningPoint(_))
        ));
        assert!(matches!(
            find_turning_points(&p, 1.0 - 1e-12, p.default_window()),
            Err(Error::NoBarrier { .. })
        ));
    }

    #[test]
    fn parabolic_geometry() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        let g = analyze_barrier(&p, 0.5, p.default_window()).unwrap();
        assert!((g.theta - PI / 4.0).abs() < 1e-12);
        assert!((g.s_half - 3.0 * PI / 16.0).abs() < 1e-12);
        assert!(g.c.abs() < 1e-10);
        assert!((g.alpha_plus + 2f64.sqrt()).abs() < 1e-12);
        assert!((g.alpha_minus - 2f64.sqrt()).abs() < 1e-12);
        assert!((g.airy_argument() - (3.0 * PI / 16.0).powf(2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn near_top_geometry() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        let g = analyze_barrier(&p, 0.999, p.default_window()).unwrap();
        assert!(g.theta > 0.0 && g.theta <= 0.01);
        assert!((g.theta - PI * (1.0 - 0.999f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn square_rejected() {
        let p = PotentialSpec::square(1.0, 2.0).unwrap();
        assert_eq!(analyze_barrier(&p, 0.5, (-3.0, 3.0)), Err(Error::NonSmooth));
    }

    #[test]
    fn window_outside_table_is_range_error() {
        let t = TabulatedPotential::from_fn(-4.0, 4.0, 400, |x| (-x * x).exp()).unwrap();
        let p = PotentialSpec::tabulated(t);
        assert!(matches!(
            analyze_barrier(&p, 0.5, (-5.0, 4.0)),
            Err(Error::Range { .. })
        ));
    }
}
