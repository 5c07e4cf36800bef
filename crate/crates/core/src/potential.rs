//! Barrier potentials `V(x)` and the local squared wavenumber `k²(x) = E − V(x)`.
//!
//! Built-in families:
//!
//! | family    | `V(x)`                  |
//! |-----------|-------------------------|
//! | parabolic | `V0 − x²`               |
//! | sech2     | `V0 sech²(x/w)`         |
//! | gaussian  | `V0 exp(−x²/w²)`        |
//! | square    | `V0` for `|x| ≤ L/2`    |
//!
//! Tabulated potentials are read from two-column text and interpolated with a
//! natural cubic spline.

use std::io::BufRead;

use crate::{Error, Result};

/// A real potential on the line.
///
/// Implementors provide the raw evaluation; the checked entry points
/// ([`eval_v`](Potential::eval_v) and friends) validate the abscissa first.
pub trait Potential: Sync {
    /// `V(x)` for `x` inside [`domain`](Potential::domain).
    fn value(&self, x: f64) -> f64;

    /// `dV/dx` for `x` inside the domain.
    fn slope(&self, x: f64) -> Result<f64>;

    /// Closed interval on which the potential may be evaluated.
    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    fn is_smooth(&self) -> bool {
        true
    }

    /// Abscissae of jump discontinuities, if any.
    fn jumps(&self) -> Vec<f64> {
        Vec::new()
    }

    fn check_abscissa(&self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::Argument(format!("non-finite abscissa {x}")));
        }
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return Err(Error::Range { x, lo, hi });
        }
        Ok(())
    }

    fn eval_v(&self, x: f64) -> Result<f64> {
        self.check_abscissa(x)?;
        Ok(self.value(x))
    }

    fn eval_v_prime(&self, x: f64) -> Result<f64> {
        self.check_abscissa(x)?;
        self.slope(x)
    }

    /// `k²(x) = E − V(x)`; negative inside the classically forbidden region.
    fn wavenumber_sq(&self, energy: f64, x: f64) -> Result<f64> {
        Ok(energy - self.eval_v(x)?)
    }
}

impl<P: Potential + ?Sized> Potential for &P {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn slope(&self, x: f64) -> Result<f64> {
        (**self).slope(x)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn is_smooth(&self) -> bool {
        (**self).is_smooth()
    }
    fn jumps(&self) -> Vec<f64> {
        (**self).jumps()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Parabolic { v0: f64 },
    Sech2 { v0: f64, w: f64 },
    Gaussian { v0: f64, w: f64 },
    Square { v0: f64, l: f64 },
    Tabulated(TabulatedPotential),
}

/// A validated barrier definition. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    shape: Shape,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and > 0, got {v}"
        )))
    }
}

impl PotentialSpec {
    pub fn parabolic(v0: f64) -> Result<Self> {
        check_positive("V0", v0)?;
        Ok(Self {
            shape: Shape::Parabolic { v0 },
        })
    }

    pub fn sech2(v0: f64, w: f64) -> Result<Self> {
        check_positive("V0", v0)?;
        check_positive("w", w)?;
        Ok(Self {
            shape: Shape::Sech2 { v0, w },
        })
    }

    pub fn gaussian(v0: f64, w: f64) -> Result<Self> {
        check_positive("V0", v0)?;
        check_positive("w", w)?;
        Ok(Self {
            shape: Shape::Gaussian { v0, w },
        })
    }

    /// Rectangular barrier of height `v0` on `|x| ≤ l/2`. Only the transfer-matrix
    /// oracle accepts it.
    pub fn square(v0: f64, l: f64) -> Result<Self> {
        check_positive("V0", v0)?;
        check_positive("L", l)?;
        Ok(Self {
            shape: Shape::Square { v0, l },
        })
    }

    pub fn tabulated(table: TabulatedPotential) -> Self {
        Self {
            shape: Shape::Tabulated(table),
        }
    }

    /// Reads a two-column `x V` table (see [`TabulatedPotential::from_reader`]).
    pub fn load_tabulated<R: BufRead>(source: R) -> Result<Self> {
        TabulatedPotential::from_reader(source).map(Self::tabulated)
    }

    pub fn family(&self) -> &'static str {
        match self.shape {
            Shape::Parabolic { .. } => "parabolic",
            Shape::Sech2 { .. } => "sech2",
            Shape::Gaussian { .. } => "gaussian",
            Shape::Square { .. } => "square",
            Shape::Tabulated(_) => "tabulated",
        }
    }

    /// Barrier height: `V0` for the built-ins, `max |V|` over the samples otherwise.
    pub fn height(&self) -> f64 {
        match &self.shape {
            Shape::Parabolic { v0 }
            | Shape::Sech2 { v0, .. }
            | Shape::Gaussian { v0, .. }
            | Shape::Square { v0, .. } => *v0,
            Shape::Tabulated(t) => t.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        }
    }

    /// Analysis window used when the caller gives none: `±20w` for localized
    /// families, `±1.5√V0` for the parabola, the sample range for tables.
    pub fn default_window(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Parabolic { v0 } => (-1.5 * v0.sqrt(), 1.5 * v0.sqrt()),
            Shape::Sech2 { w, .. } | Shape::Gaussian { w, .. } => (-20.0 * w, 20.0 * w),
            Shape::Square { l, .. } => (-l, *l),
            Shape::Tabulated(t) => t.range(),
        }
    }
}

impl Potential for PotentialSpec {
    fn value(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Parabolic { v0 } => v0 - x * x,
            Shape::Sech2 { v0, w } => {
                let s = 1.0 / (x / w).cosh();
                v0 * s * s
            }
            Shape::Gaussian { v0, w } => {
                let z = x / w;
                v0 * (-z * z).exp()
            }
            Shape::Square { v0, l } => {
                if x.abs() <= 0.5 * l {
                    *v0
                } else {
                    0.0
                }
            }
            Shape::Tabulated(t) => t.value(x),
        }
    }

    fn slope(&self, x: f64) -> Result<f64> {
        Ok(match &self.shape {
            Shape::Parabolic { .. } => -2.0 * x,
            Shape::Sech2 { v0, w } => {
                let z = x / w;
                let s = 1.0 / z.cosh();
                -2.0 * v0 * s * s * z.tanh() / w
            }
            Shape::Gaussian { v0, w } => {
                let z = x / w;
                -2.0 * v0 * z * (-z * z).exp() / w
            }
            Shape::Square { .. } => return Err(Error::NonSmooth),
            Shape::Tabulated(t) => t.slope(x),
        })
    }

    fn domain(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Tabulated(t) => t.range(),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn is_smooth(&self) -> bool {
        !matches!(self.shape, Shape::Square { .. })
    }

    fn jumps(&self) -> Vec<f64> {
        match self.shape {
            Shape::Square { l, .. } => vec![-0.5 * l, 0.5 * l],
            _ => Vec::new(),
        }
    }
}

/// Sampled potential with natural cubic-spline interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    xs: Vec<f64>,
    values: Vec<f64>,
    /// Spline second derivatives at the knots.
    curvature: Vec<f64>,
}

impl TabulatedPotential {
    pub const MIN_SAMPLES: usize = 4;

    pub fn new(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::Argument(format!(
                "{} abscissae but {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.len() < Self::MIN_SAMPLES {
            return Err(Error::Format {
                line: 0,
                message: format!("need at least {} samples, got {}", Self::MIN_SAMPLES, xs.len()),
            });
        }
        if let Some(i) = xs.iter().chain(&values).position(|v| !v.is_finite()) {
            return Err(Error::Format {
                line: 0,
                message: format!("non-finite sample at index {i}"),
            });
        }
        if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Format {
                line: 0,
                message: format!("x not strictly increasing at sample {}", i + 1),
            });
        }
        let curvature = natural_spline_curvature(&xs, &values);
        Ok(Self { xs, values, curvature })
    }

    /// Parses `x V` rows separated by whitespace or a comma. Blank lines and
    /// lines starting with `#` are skipped. Line numbers in errors are 1-based.
    pub fn from_reader<R: BufRead>(source: R) -> Result<Self> {
        let mut xs = Vec::new();
        let mut values = Vec::new();
        let mut last_line = 0;
        for (idx, line) in source.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            if fields.len() != 2 {
                return Err(Error::Format {
                    line: lineno,
                    message: format!("expected 2 fields, found {}", fields.len()),
                });
            }
            let parse = |tok: &str| -> Result<f64> {
                match tok.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    _ => Err(Error::Format {
                        line: lineno,
                        message: format!("not a finite number: {tok:?}"),
                    }),
                }
            };
            let x = parse(fields[0])?;
            let v = parse(fields[1])?;
            if let Some(&prev) = xs.last() {
                if x <= prev {
                    return Err(Error::Format {
                        line: lineno,
                        message: format!("x = {x} does not increase (previous {prev})"),
                    });
                }
            }
            xs.push(x);
            values.push(v);
            last_line = lineno;
        }
        if xs.len() < Self::MIN_SAMPLES {
            return Err(Error::Format {
                line: last_line,
                message: format!("need at least {} samples, got {}", Self::MIN_SAMPLES, xs.len()),
            });
        }
        Self::new(xs, values)
    }

    /// Samples `f` at `n` uniformly spaced points on `[lo, hi]`.
    pub fn from_fn(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument("need at least 2 sample points".into()));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let xs: Vec<f64> = (0..n)
            .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
            .collect();
        let values = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, values)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.values.iter().copied())
    }

    fn interval(&self, x: f64) -> usize {
        let n = self.xs.len();
        self.xs.partition_point(|&xi| xi <= x).clamp(1, n - 1) - 1
    }

    fn value(&self, x: f64) -> f64 {
        let i = self.interval(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let s = 1.0 - t;
        let h2 = h * h / 6.0;
        s * self.values[i]
            + t * self.values[i + 1]
            + ((s * s * s - s) * self.curvature[i] + (t * t * t - t) * self.curvature[i + 1]) * h2
    }

    fn slope(&self, x: f64) -> f64 {
        let i = self.interval(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let s = 1.0 - t;
        (self.values[i + 1] - self.values[i]) / h
            + h / 6.0 * ((1.0 - 3.0 * s * s) * self.curvature[i] + (3.0 * t * t - 1.0) * self.curvature[i + 1])
    }
}

/// Second derivatives of the natural cubic spline through `(xs, ys)`
/// (zero curvature at both ends), by the Thomas algorithm.
fn natural_spline_curvature(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    // Interior unknowns m[1..n-1]; tridiagonal sub/diag/super with rhs.
    let k = n - 2;
    let mut diag = vec![0.0; k];
    let mut upper = vec![0.0; k];
    let mut rhs = vec![0.0; k];
    for j in 0..k {
        let i = j + 1;
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        diag[j] = 2.0 * (h0 + h1);
        upper[j] = h1;
        rhs[j] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    for j in 1..k {
        let lower = xs[j + 1] - xs[j];
        let f = lower / diag[j - 1];
        diag[j] -= f * upper[j - 1];
        rhs[j] -= f * rhs[j - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for j in (0..k - 1).rev() {
        m[j + 1] = (rhs[j] - upper[j] * m[j + 2]) / diag[j];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_difference(p: &PotentialSpec, x: f64, h: f64) -> f64 {
        (p.value(x + h) - p.value(x - h)) / (2.0 * h)
    }

    #[test]
    fn builtin_values() {
        assert_eq!(PotentialSpec::sech2(1.0, 1.0).unwrap().eval_v(0.0).unwrap(), 1.0);
        assert_eq!(PotentialSpec::parabolic(1.0).unwrap().eval_v(1.0).unwrap(), 0.0);
        assert_eq!(PotentialSpec::gaussian(2.0, 1.0).unwrap().eval_v(0.0).unwrap(), 2.0);
        let sq = PotentialSpec::square(1.0, 2.0).unwrap();
        assert_eq!(sq.eval_v(1.0).unwrap(), 1.0);
        assert_eq!(sq.eval_v(1.0 + 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn builtin_slopes() {
        let parab = PotentialSpec::parabolic(1.0).unwrap();
        assert_eq!(parab.eval_v_prime(0.5).unwrap(), -1.0);
        let sech = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert_eq!(sech.eval_v_prime(0.0).unwrap(), 0.0);

        // Richardson-refined central differences as the oracle.
        let x = 0.8814;
        let d1 = central_difference(&sech, x, 1e-3);
        let d2 = central_difference(&sech, x, 5e-4);
        let fd = (4.0 * d2 - d1) / 3.0;
        let analytic = sech.eval_v_prime(x).unwrap();
        assert!((analytic - fd).abs() < 1e-10, "{analytic} vs {fd}");
        assert!((analytic + 0.70709357).abs() < 1e-7);
    }

    #[test]
    fn square_has_no_slope() {
        let sq = PotentialSpec::square(1.0, 2.0).unwrap();
        assert_eq!(sq.eval_v_prime(0.3), Err(Error::NonSmooth));
        assert!(!sq.is_smooth());
        assert_eq!(sq.jumps(), vec![-1.0, 1.0]);
    }

    #[test]
    fn wavenumber_examples() {
        let sech = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert_eq!(sech.wavenumber_sq(0.5, 0.0).unwrap(), -0.5);
        let parab = PotentialSpec::parabolic(1.0).unwrap();
        assert_eq!(parab.wavenumber_sq(0.5, 2.0).unwrap(), 3.5);
        let gauss = PotentialSpec::gaussian(1.3, 0.7).unwrap();
        let x = 0.4;
        let e = gauss.eval_v(x).unwrap();
        assert_eq!(gauss.wavenumber_sq(e, x).unwrap(), 0.0);
    }

    #[test]
    fn parameters_validated() {
        assert!(PotentialSpec::sech2(0.0, 1.0).is_err());
        assert!(PotentialSpec::sech2(1.0, -1.0).is_err());
        assert!(PotentialSpec::gaussian(f64::NAN, 1.0).is_err());
        assert!(PotentialSpec::parabolic(f64::INFINITY).is_err());
        assert!(PotentialSpec::square(1.0, 0.0).is_err());
    }

    #[test]
    fn non_finite_abscissa_rejected() {
        let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
        assert!(matches!(p.eval_v(f64::NAN), Err(Error::Argument(_))));
    }

    #[test]
    fn load_parabola_table() {
        let text = "# x V\n-1 0\n-0.5 0.75\n0 1\n0.5, 0.75\n1 0\n";
        let p = PotentialSpec::load_tabulated(text.as_bytes()).unwrap();
        assert!((p.eval_v(0.0).unwrap() - 1.0).abs() <= 1e-12);
        for (x, v) in [(-1.0, 0.0), (-0.5, 0.75), (0.0, 1.0), (0.5, 0.75), (1.0, 0.0)] {
            assert_eq!(p.eval_v(x).unwrap(), v);
        }
    }

    #[test]
    fn load_rejects_bad_tables() {
        let dup = "0 1\n1 2\n1 3\n2 4\n3 5\n";
        assert!(matches!(
            PotentialSpec::load_tabulated(dup.as_bytes()),
            Err(Error::Format { line: 3, .. })
        ));
        let short = "0 1\n1 2\n2 3\n";
        assert!(matches!(
            PotentialSpec::load_tabulated(short.as_bytes()),
            Err(Error::Format { .. })
        ));
        let junk = "0 1\n1 two\n2 3\n3 4\n";
        assert!(matches!(
            PotentialSpec::load_tabulated(junk.as_bytes()),
            Err(Error::Format { line: 2, .. })
        ));
        let three = "0 1 2\n1 2\n2 3\n3 4\n";
        assert!(matches!(
            PotentialSpec::load_tabulated(three.as_bytes()),
            Err(Error::Format { line: 1, .. })
        ));
    }

    #[test]
    fn tabulated_range_is_enforced() {
        let t = TabulatedPotential::from_fn(-1.0, 1.0, 9, |x| 1.0 - x * x).unwrap();
        let p = PotentialSpec::tabulated(t);
        assert!(matches!(p.eval_v(1.5), Err(Error::Range { .. })));
        assert!(matches!(p.eval_v_prime(-1.01), Err(Error::Range { .. })));
        assert!(p.eval_v(1.0).is_ok());
    }

    #[test]
    fn sech2_table_interpolates() {
        let t = TabulatedPotential::from_fn(-8.0, 8.0, 200, |x| 1.0 / x.cosh().powi(2)).unwrap();
        let p = PotentialSpec::tabulated(t);
        let exact = 1.0 / 0.5_f64.cosh().powi(2);
        assert!((p.eval_v(0.5).unwrap() - exact).abs() < 1e-6);
    }

    #[test]
    fn spline_reproduces_cubic_free_linear_data() {
        let t = TabulatedPotential::from_fn(-2.0, 3.0, 11, |x| 0.5 * x - 1.0).unwrap();
        for x in [-1.9, -0.3, 0.77, 2.95] {
            assert!((t.value(x) - (0.5 * x - 1.0)).abs() < 1e-14);
            assert!((t.slope(x) - 0.5).abs() < 1e-14);
        }
    }
}
