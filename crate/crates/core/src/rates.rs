//! Transmission estimates from the barrier geometry.
//!
//! * [`t_uniform`] is `3 (Ai(u)/Bi(u))² ∛|α₊/α₋|`, `u = S^{2/3}`, evaluated as
//!   `3 exp(−2 ln(Bi/Ai)) ∛|α₊/α₋|` so thick barriers do not overflow.
//! * [`t_asymptotic`] is `(3/4) ∛|α₊/α₋| e^{−2θ}`, the large-`u` limit of the above.
//! * [`t_wkb`] is `e^{−2θ}`.
//!
//! None of these is clamped to `[0, 1]`; the uniform rate may exceed one near the
//! top of an asymmetric barrier and that error is reported as-is.

use crate::geometry::{analyze_barrier, BarrierGeometry, Window};
use crate::oracle::{exact_transmission, OracleResult, OracleSettings};
use crate::potential::Potential;
use crate::specfun::log_bi_over_ai;
use crate::{Error, Result};

/// All estimates at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    pub energy: f64,
    pub geometry: BarrierGeometry,
    /// `u = S^{2/3}`.
    pub airy_argument: f64,
    pub t_wkb: f64,
    pub t_asymptotic: f64,
    pub t_uniform: f64,
    pub oracle: Option<OracleResult>,
}

impl RateReport {
    /// Best exact estimate: the Richardson-extrapolated oracle transmission.
    pub fn t_exact(&self) -> Option<f64> {
        self.oracle.map(|o| o.richardson_estimate)
    }

    /// `(t_wkb, t_asymptotic, t_uniform)` relative errors against the oracle.
    pub fn relative_errors(&self) -> Option<[f64; 3]> {
        let exact = self.t_exact()?;
        let rel = |t: f64| (t - exact) / exact;
        Some([rel(self.t_wkb), rel(self.t_asymptotic), rel(self.t_uniform)])
    }
}

/// `e^{−2θ}`.
pub fn t_wkb(theta: f64) -> f64 {
    debug_assert!(theta >= 0.0, "action must be non-negative");
    (-2.0 * theta).exp()
}

/// `(3/4) |α₊/α₋|^{1/3} e^{−2θ}`.
pub fn t_asymptotic(theta: f64, alpha_plus: f64, alpha_minus: f64) -> Result<f64> {
    if alpha_plus == 0.0 || alpha_minus == 0.0 {
        return Err(Error::DegenerateTurningPoint(format!(
            "α₊ = {alpha_plus}, α₋ = {alpha_minus}"
        )));
    }
    Ok(0.75 * prefactor(alpha_plus, alpha_minus) * t_wkb(theta))
}

/// `3 |Ai(u)/Bi(u)|² ∛|α₊/α₋|` with `u = S^{2/3}`.
pub fn t_uniform(geom: &BarrierGeometry) -> Result<f64> {
    if geom.alpha_plus == 0.0 || geom.alpha_minus == 0.0 {
        return Err(Error::DegenerateTurningPoint(format!(
            "α₊ = {}, α₋ = {}",
            geom.alpha_plus, geom.alpha_minus
        )));
    }
    let log_ratio = log_bi_over_ai(geom.airy_argument())?;
    Ok(3.0 * (-2.0 * log_ratio).exp() * prefactor(geom.alpha_plus, geom.alpha_minus))
}

fn prefactor(alpha_plus: f64, alpha_minus: f64) -> f64 {
    (alpha_plus / alpha_minus).abs().cbrt()
}

/// Analyzes the barrier at `energy` and evaluates every estimate; with
/// `oracle` set, also runs the transfer-matrix solver.
pub fn rate_report<P: Potential + ?Sized>(
    p: &P,
    energy: f64,
    window: Window,
    oracle: Option<&OracleSettings>,
) -> Result<RateReport> {
    let geometry = analyze_barrier(p, energy, window)?;
    let wkb = t_wkb(geometry.theta);
    let asymptotic = t_asymptotic(geometry.theta, geometry.alpha_plus, geometry.alpha_minus)?;
    let uniform = t_uniform(&geometry)?;
    let oracle = oracle
        .map(|o| exact_transmission(p, energy, o.domain, o.slices))
        .transpose()?;
    Ok(RateReport {
        energy,
        geometry,
        airy_argument: geometry.airy_argument(),
        t_wkb: wkb,
        t_asymptotic: asymptotic,
        t_uniform: uniform,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::PotentialSpec;
    use std::f64::consts::PI;

    fn symmetric(theta: f64) -> BarrierGeometry {
        BarrierGeometry {
            energy: 0.5,
            a: -1.0,
            b: 1.0,
            c: 0.0,
            theta,
            s_half: 0.75 * theta,
            alpha_plus: -1.0,
            alpha_minus: 1.0,
        }
    }

    #[test]
    fn wkb_values() {
        assert!((t_wkb(PI / 4.0) - 0.207879576).abs() < 1e-9);
        assert_eq!(t_wkb(0.0), 1.0);
        assert!((t_wkb(10.0) - 2.061153622e-9).abs() < 1e-17);
    }

    #[test]
    fn asymptotic_values() {
        let sym = t_asymptotic(PI / 4.0, -2.0, 2.0).unwrap();
        assert!((sym - 0.75 * (-PI / 2.0).exp()).abs() < 1e-15);
        assert!((sym - 0.155910).abs() < 1e-6);
        let wide = t_asymptotic(1.0, -8.0, 1.0).unwrap();
        assert!((wide - 1.5 * (-2.0f64).exp()).abs() < 1e-15);
        let narrow = t_asymptotic(1.0, -1.0, 8.0).unwrap();
        assert!((narrow - 0.375 * (-2.0f64).exp()).abs() < 1e-15);
        assert!(t_asymptotic(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn uniform_top_limit_is_one() {
        let t = t_uniform(&symmetric(0.0)).unwrap();
        assert!((t - 1.0).abs() < 1e-15, "{t}");
    }

    #[test]
    fn uniform_parabolic_against_reference() {
        // 3 (Ai(u)/Bi(u))², u = (3π/16)^{2/3}, from 40-digit Airy values.
        let g = symmetric(PI / 4.0);
        let t = t_uniform(&g).unwrap();
        assert!((t - 0.112_259_068_478_282_7).abs() < 1e-13, "{t}");
    }

    #[test]
    fn uniform_thick_barrier_tracks_asymptotic() {
        let g = symmetric(12.0);
        let t = t_uniform(&g).unwrap();
        let asym = 0.75 * (-24.0f64).exp();
        assert!((t / asym - 1.0).abs() < 0.05);
        // Deep in the asymptotic regime, the log-domain path still works.
        let deep = t_uniform(&symmetric(350.0)).unwrap();
        let deep_asym = 0.75 * (-700.0f64).exp();
        assert!((deep / deep_asym - 1.0).abs() < 2e-3, "{deep} vs {deep_asym}");
    }

    #[test]
    fn report_parabolic() {
        let p = PotentialSpec::parabolic(1.0).unwrap();
        let r = rate_report(&p, 0.5, p.default_window(), None).unwrap();
        assert!((r.t_wkb - 0.20788).abs() < 1e-5);
        assert!((r.t_asymptotic - 0.15591).abs() < 1e-5);
        assert!((r.t_uniform - 0.1123).abs() < 1e-4);
        assert!(r.oracle.is_none() && r.t_exact().is_none());
    }

    #[test]
    fn report_with_oracle() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        let settings = OracleSettings::new((-12.0, 12.0));
        let r = rate_report(&p, 0.5, p.default_window(), Some(&settings)).unwrap();
        let exact = r.t_exact().unwrap();
        assert!(exact > 0.0 && exact < 1.0);
        assert!(r.relative_errors().unwrap().iter().all(|e| e.is_finite()));
    }

    #[test]
    fn report_above_top() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert!(matches!(
            rate_report(&p, 1.2, p.default_window(), None),
            Err(Error::NoBarrier { .. })
        ));
    }
}
