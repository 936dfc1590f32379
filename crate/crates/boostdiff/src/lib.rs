//! One-dimensional Lorentz-boosted diffusion with a well-posed initial-value
//! formulation on band-limited data.
//!
//! Boosting Fick's law ∂ₜn = ∂ₓ²n to a frame moving with velocity v produces
//! an equation that is ill-posed for generic initial data. Restricting the
//! admissible profiles to the Paley-Wiener space PW_Λ — square-integrable
//! functions whose Fourier transform lives in [−Λ, Λ] with
//! Λ = (1+2v)/√(v(1−v)) — and evolving along the stable dispersion branch
//! makes the problem well posed both forward and backward in time. Evolution
//! reduces to a discrete superposition of shifted copies of one fundamental
//! solution 𝒦, available in closed form through complex error functions.
//!
//! Module map:
//!
//! * [`boost`] — frame kinematics, dispersion branches, cutoff, admissibility;
//! * [`special`] — complex erf/erfi, overflow-fused Gaussian×erf, sinc;
//! * [`kernel`] — closed forms for 𝒦 and the boosted heat kernel G;
//! * [`bandlimited`] — PW_Λ profiles, Shannon sampling, evolution, bounds;
//! * [`oracle`] — brute-force quadrature evaluators verifying every closed form;
//! * [`kinetic`] — Fokker-Planck embedding check and the Cattaneo two-stream model;
//! * [`verify`] — cross-module property suites behind `boostdiff verify`;
//! * [`cli`] — the command-line front end and file formats.
//!
//! See the `examples/` directory for one runnable walk-through per capability.

pub mod bandlimited;
pub mod boost;
pub mod cli;
pub mod error;
pub mod io;
pub mod kernel;
pub mod kinetic;
pub mod oracle;
pub mod special;
pub mod verify;

pub use boost::{
    boost_wavevector, contour_endpoints, is_kinetically_admissible, stable_dispersion,
    unstable_dispersion, BoostDirection, BoostParams, DispersionBranch, Frame, WaveVector,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
