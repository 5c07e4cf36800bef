//! Airy functions `Ai`, `Bi` and their derivatives on the real line.
//!
//! Two regimes:
//!
//! * `SERIES_LOWER ≤ u ≤ SERIES_UPPER`: Maclaurin series
//!   `Ai = Ai(0)·f(u) + Ai'(0)·g(u)`, `Bi = Bi(0)·f(u) + Bi'(0)·g(u)`,
//!   summed in double-double arithmetic so the cancellation between `f` and
//!   `g` (a factor `~e^{2ζ}` for `Ai` at positive `u`) stays below `f64` resolution.
//! * outside: the standard asymptotic expansions in `ζ = (2/3)|u|^{3/2}`,
//!   truncated at the smallest term.

mod ddouble;

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use self::ddouble::DoubleDouble;
use crate::{Error, Result};

/// Γ(2/3) to 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_416_9;
/// Γ(1/3) to 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_633_7;

/// Upper end of the series regime; the asymptotic expansion takes over above.
pub const SERIES_UPPER: f64 = 8.5;
/// Lower end of the series regime; the oscillatory expansion takes over below.
pub const SERIES_LOWER: f64 = -10.0;

// Values at the origin split into (hi, lo) pairs: Ai(0) = 1/(3^{2/3} Γ(2/3)),
// -Ai'(0) = 1/(3^{1/3} Γ(1/3)), Bi(0) = √3 Ai(0), Bi'(0) = -√3 Ai'(0).
const AI0: DoubleDouble = DoubleDouble::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const AI0_NEG_PRIME: DoubleDouble = DoubleDouble::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);
const BI0: DoubleDouble = DoubleDouble::new(0.614_926_627_446_000_7, 5.089_920_779_489_141_6e-17);
const BI0_PRIME: DoubleDouble = DoubleDouble::new(0.448_288_357_353_826_4, -2.536_323_777_441_730_5e-17);

const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

const MAX_SERIES_TERMS: usize = 400;

/// `Ai`, `Bi` and their first derivatives at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub bi: f64,
    pub ai_prime: f64,
    pub bi_prime: f64,
}

impl AiryPair {
    /// `Ai·Bi' − Ai'·Bi`, identically `1/π`.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bi_prime - self.ai_prime * self.bi
    }
}

/// Evaluates all four Airy values at `u`.
///
/// Fails with [`Error::Overflow`] when `Bi(u)` or `Bi'(u)` exceeds the `f64`
/// range (around `u ≈ 104`); the error carries `ζ = (2/3)u^{3/2}` so callers can
/// move to [`log_bi_over_ai`].
pub fn airy(u: f64) -> Result<AiryPair> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("Airy argument must be finite, got {u}")));
    }
    if (SERIES_LOWER..=SERIES_UPPER).contains(&u) {
        Ok(airy_series(u))
    } else {
        airy_asymptotic(u)
    }
}

/// Maclaurin-series evaluation, valid for any finite `u` but only accurate in
/// the series regime.
pub fn airy_series(u: f64) -> AiryPair {
    let x = DoubleDouble::from_f64(u);
    let u3 = (x * x).mul_f64(u);
    let u2 = x.mul_f64(u);

    // f = Σ t_k,  t_k = t_{k-1} u³ / ((3k-1)(3k));  f' = Σ t_{k-1} u² / (3k-1)
    // g = Σ s_k,  s_k = s_{k-1} u³ / ((3k)(3k+1));   g' = 1 + Σ s_{k-1} u² / (3k)
    let mut t = DoubleDouble::from_f64(1.0);
    let mut s = x;
    let mut f = t;
    let mut g = s;
    let mut fp = DoubleDouble::ZERO;
    let mut gp = DoubleDouble::from_f64(1.0);

    for k in 1..MAX_SERIES_TERMS {
        let kf = k as f64;
        let dfp = (t * u2).div_f64(3.0 * kf - 1.0);
        let dgp = (s * u2).div_f64(3.0 * kf);
        t = (t * u3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        s = (s * u3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        f = f + t;
        g = g + s;
        fp = fp + dfp;
        gp = gp + dgp;

        let step = t.abs_f64() + s.abs_f64() + dfp.abs_f64() + dgp.abs_f64();
        let total = f.abs_f64() + g.abs_f64() + fp.abs_f64() + gp.abs_f64();
        if step <= 1e-34 * total {
            break;
        }
    }

    AiryPair {
        ai: (AI0 * f - AI0_NEG_PRIME * g).to_f64(),
        bi: (BI0 * f + BI0_PRIME * g).to_f64(),
        ai_prime: (AI0 * fp - AI0_NEG_PRIME * gp).to_f64(),
        bi_prime: (BI0 * fp + BI0_PRIME * gp).to_f64(),
    }
}

/// Asymptotic coefficients `u_k` and `v_k` of the Airy expansions.
struct Coefficients {
    k: usize,
    u: f64,
}

impl Coefficients {
    fn new() -> Self {
        Self { k: 0, u: 1.0 }
    }
}

impl Iterator for Coefficients {
    /// `(u_k, v_k)`
    type Item = (f64, f64);

    fn next(&mut self) -> Option<(f64, f64)> {
        if self.k > 0 {
            let k = self.k as f64;
            self.u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        }
        let k = self.k as f64;
        let v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * self.u;
        self.k += 1;
        Some((self.u, v))
    }
}

/// Sums `Σ c_k ζ^{-k}` for the four sign patterns needed on the positive axis,
/// stopping before the terms start to grow.
struct PositiveSums {
    /// Σ (−1)^k u_k ζ^{-k}
    ai: f64,
    /// Σ (−1)^k v_k ζ^{-k}
    ai_prime: f64,
    /// Σ u_k ζ^{-k}
    bi: f64,
    /// Σ v_k ζ^{-k}
    bi_prime: f64,
}

fn positive_sums(zeta: f64) -> PositiveSums {
    let mut sums = PositiveSums {
        ai: 0.0,
        ai_prime: 0.0,
        bi: 0.0,
        bi_prime: 0.0,
    };
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    for (k, (uk, vk)) in Coefficients::new().enumerate().take(200) {
        let tu = uk * power;
        let tv = vk * power;
        let size = tu.abs().max(tv.abs());
        if size > last {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sums.ai += sign * tu;
        sums.ai_prime += sign * tv;
        sums.bi += tu;
        sums.bi_prime += tv;
        if size < 1e-17 * sums.bi.abs() {
            break;
        }
        last = size;
        power /= zeta;
    }
    sums
}

/// Asymptotic evaluation for `|u|` large; accurate once `ζ = (2/3)|u|^{3/2} ≳ 15`.
pub fn airy_asymptotic(u: f64) -> Result<AiryPair> {
    if u > 0.0 {
        let zeta = 2.0 / 3.0 * u * u.sqrt();
        let quarter = u.sqrt().sqrt();
        let sums = positive_sums(zeta);
        let decay = (-zeta).exp();
        let growth = zeta.exp();
        let pair = AiryPair {
            ai: 0.5 * INV_SQRT_PI / quarter * decay * sums.ai,
            ai_prime: -0.5 * INV_SQRT_PI * quarter * decay * sums.ai_prime,
            bi: INV_SQRT_PI / quarter * growth * sums.bi,
            bi_prime: INV_SQRT_PI * quarter * growth * sums.bi_prime,
        };
        if !pair.bi.is_finite() || !pair.bi_prime.is_finite() {
            return Err(Error::Overflow { exponent: zeta });
        }
        Ok(pair)
    } else if u < 0.0 {
        let x = -u;
        let zeta = 2.0 / 3.0 * x * x.sqrt();
        let quarter = x.sqrt().sqrt();
        // P, Q from u_k and R, S from v_k: even / odd k with alternating signs.
        let (mut p, mut q, mut r, mut s) = (0.0, 0.0, 0.0, 0.0);
        let mut power = 1.0;
        let mut last = f64::INFINITY;
        for (k, (uk, vk)) in Coefficients::new().enumerate().take(200) {
            let tu = uk * power;
            let tv = vk * power;
            let size = tu.abs().max(tv.abs());
            if size > last {
                break;
            }
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * tu;
                r += sign * tv;
            } else {
                q += sign * tu;
                s += sign * tv;
            }
            if size < 1e-17 {
                break;
            }
            last = size;
            power /= zeta;
        }
        let (sin, cos) = (zeta + FRAC_PI_4).sin_cos();
        let amp = INV_SQRT_PI / quarter;
        let amp_prime = INV_SQRT_PI * quarter;
        Ok(AiryPair {
            ai: amp * (sin * p - cos * q),
            bi: amp * (cos * p + sin * q),
            ai_prime: -amp_prime * (cos * r + sin * s),
            bi_prime: amp_prime * (sin * r - cos * s),
        })
    } else {
        Ok(airy_series(0.0))
    }
}

/// `ln(Bi(u)/Ai(u))` for `u ≥ 0`, finite for every finite `u`.
///
/// Beyond the series regime this is `ln 2 + (4/3)u^{3/2}` plus the logarithm of
/// the ratio of the two asymptotic sums, so it never overflows.
pub fn log_bi_over_ai(u: f64) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("ln(Bi/Ai) needs a finite u >= 0, got {u}")));
    }
    if u <= SERIES_UPPER {
        let pair = airy_series(u);
        return Ok(pair.bi.ln() - pair.ai.ln());
    }
    let zeta = 2.0 / 3.0 * u * u.sqrt();
    let sums = positive_sums(zeta);
    Ok(LN_2 + 2.0 * zeta + (sums.bi / sums.ai).ln())
}

/// `1/π`, the Airy Wronskian.
pub const WRONSKIAN: f64 = 1.0 / PI;
