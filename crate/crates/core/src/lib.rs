//! Quantum tunneling through smooth one-dimensional barriers.
//!
//! Three transmission estimates are computed side by side at a given energy:
//!
//! * the uniform Airy-function rate `3 |Ai(u)/Bi(u)|² ∛|α₊/α₋|` with `u = S^{2/3}`,
//! * its large-action simplification `(3/4) ∛|α₊/α₋| e^{-2θ}`,
//! * the WKB factor `e^{-2θ}`,
//!
//! and an independent transfer-matrix solver grades them against the exact
//! flux-normalized transmission.
//!
//! Units follow `ħ²/2m = 1`, so the local squared wavenumber is `k²(x) = E − V(x)`
//! and every energy is measured in the same units as the potential.
//!
//! ```
//! use airy_tunnel::{rates, PotentialSpec};
//!
//! let barrier = PotentialSpec::parabolic(1.0).unwrap();
//! let report = rates::rate_report(&barrier, 0.5, barrier.default_window(), None).unwrap();
//! assert!((report.t_wkb - (-std::f64::consts::FRAC_PI_2).exp()).abs() < 1e-12);
//! ```

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
pub mod geometry;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod rates;
pub mod roots;
pub mod specfun;
pub mod wavefunction;

pub use error::{Error, Result};
pub use geometry::{analyze_barrier, BarrierGeometry, Side, Window};
pub use oracle::{exact_transmission, square_barrier_closed_form, OracleResult, OracleSettings};
pub use potential::{Potential, PotentialSpec, TabulatedPotential};
pub use rates::{rate_report, RateReport};
pub use specfun::{airy, log_bi_over_ai, AiryPair};
pub use wavefunction::{psi_basis, sample_grid, superpose, AiryBasis, WavefunctionSample};
