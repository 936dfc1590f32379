//! Boost kinematics for one-dimensional diffusion.
//!
//! The medium rest frame carries Fick's law ∂ₜn = ∂ₓ²n with dispersion
//! ω = −ik². In a frame where the medium moves with velocity v ∈ (0, 1),
//! wavevectors transform as
//!
//!   ω = γ(ω̃ − v k̃),   k = γ(k̃ − v ω̃),   γ = (1 − v²)^(−1/2),
//!
//! and the kinetic admissibility strip |Im k| < 1 of the underlying
//! Fokker-Planck theory turns into a real-wavenumber cutoff
//!
//!   Λ = (1 + 2v) / √(v(1 − v))
//!
//! on the stable branch of the boosted dispersion relation. This module
//! holds the frame bookkeeping, the two dispersion branches, the cutoff,
//! and the admissibility predicate; every other module builds on it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reference frame tag for wavevectors and spacetime points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    /// Rest frame of the scattering medium.
    Rest,
    /// Frame in which the medium moves with velocity v > 0.
    Boosted,
}

/// Direction of a wavevector boost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoostDirection {
    RestToBoosted,
    BoostedToRest,
}

/// Boost velocity together with the derived frame constants.
///
/// Immutable after construction; all fields are consistent with `v` to
/// machine precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostParams {
    /// Boost velocity, 0 < v < 1 (natural units).
    pub v: f64,
    /// Lorentz factor γ = (1 − v²)^(−1/2).
    pub gamma: f64,
    /// Cutoff wavenumber Λ = (1 + 2v)/√(v(1 − v)).
    pub lambda: f64,
    /// Maximal amplification rate 1/(γv) of admissible modes.
    pub growth_rate: f64,
}

impl BoostParams {
    /// Builds the frame constants for boost velocity `v`.
    ///
    /// Rejects v outside the open interval (0, 1): v = 0 has no cutoff
    /// (Λ → ∞) and v = 1 is not a valid boost.
    pub fn new(v: f64) -> Result<Self> {
        if !v.is_finite() || v <= 0.0 || v >= 1.0 {
            return Err(Error::Domain(format!(
                "boost velocity must lie in the open interval (0, 1), got {v}"
            )));
        }
        let gamma = 1.0 / (1.0 - v * v).sqrt();
        let lambda = (1.0 + 2.0 * v) / (v * (1.0 - v)).sqrt();
        Ok(Self {
            v,
            gamma,
            lambda,
            growth_rate: 1.0 / (gamma * v),
        })
    }

    /// Sampling point x̃ₐ = πa/Λ of the Shannon lattice.
    pub fn sampling_point(&self, a: i64) -> f64 {
        std::f64::consts::PI * a as f64 / self.lambda
    }
}

/// A complex frequency/wavenumber pair tagged with its frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub omega: Complex64,
    pub k: Complex64,
    pub frame: Frame,
}

impl WaveVector {
    pub fn new(omega: Complex64, k: Complex64, frame: Frame) -> Self {
        Self { omega, k, frame }
    }
}

/// Applies the 2×2 Lorentz map to a wavevector and flips its frame tag.
///
/// `RestToBoosted` sends (ω, k) to (ω̃, k̃) = (γ(ω + vk), γ(k + vω));
/// `BoostedToRest` is the inverse, (ω, k) = (γ(ω̃ − vk̃), γ(k̃ − vω̃)).
pub fn boost_wavevector(wv: WaveVector, p: &BoostParams, direction: BoostDirection) -> WaveVector {
    let (g, v) = (p.gamma, p.v);
    match direction {
        BoostDirection::RestToBoosted => {
            debug_assert_eq!(wv.frame, Frame::Rest);
            WaveVector::new(g * (wv.omega + v * wv.k), g * (wv.k + v * wv.omega), Frame::Boosted)
        }
        BoostDirection::BoostedToRest => {
            debug_assert_eq!(wv.frame, Frame::Boosted);
            WaveVector::new(g * (wv.omega - v * wv.k), g * (wv.k - v * wv.omega), Frame::Rest)
        }
    }
}

/// The two roots of the boosted dispersion quadratic iγ(ω̃ − vk̃) = γ²(k̃ − vω̃)².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DispersionBranch {
    /// Im ω̃ ≤ 0 for all real k̃; carries the admissible evolution.
    Stable,
    /// Gapped root with Im ω̃(0) = 1/(γv²); excluded by kinetic admissibility.
    Unstable,
}

impl DispersionBranch {
    /// Frequency of this branch at real boosted wavenumber `k_tilde`.
    pub fn omega(self, k_tilde: f64, p: &BoostParams) -> Complex64 {
        match self {
            DispersionBranch::Stable => stable_dispersion(k_tilde, p),
            DispersionBranch::Unstable => unstable_dispersion(k_tilde, p),
        }
    }
}

/// Square root of the dispersion radicand 1 − 4ivk̃/γ.
///
/// The real part of the radicand is 1 for every real k̃, so the principal
/// branch never crosses the cut and both roots are single-valued.
#[inline]
fn branch_root(k_tilde: f64, p: &BoostParams) -> Complex64 {
    Complex64::new(1.0, -4.0 * p.v * k_tilde / p.gamma).sqrt()
}

/// Stable branch ω̃₋(k̃) = k̃/v + i/(2γv²) · (1 − √(1 − 4ivk̃/γ)).
///
/// Defined for every finite real k̃; the admissibility cutoff |k̃| < Λ is a
/// separate predicate so that callers can probe the excluded region.
pub fn stable_dispersion(k_tilde: f64, p: &BoostParams) -> Complex64 {
    let coef = Complex64::new(0.0, 1.0 / (2.0 * p.gamma * p.v * p.v));
    k_tilde / p.v + coef * (1.0 - branch_root(k_tilde, p))
}

/// Unstable branch ω̃₊(k̃); the opposite sign of the square root.
pub fn unstable_dispersion(k_tilde: f64, p: &BoostParams) -> Complex64 {
    let coef = Complex64::new(0.0, 1.0 / (2.0 * p.gamma * p.v * p.v));
    k_tilde / p.v + coef * (1.0 + branch_root(k_tilde, p))
}

/// d ω̃₋/dk̃ along the stable branch, used for Lipschitz estimates.
pub fn stable_dispersion_slope(k_tilde: f64, p: &BoostParams) -> Complex64 {
    1.0 / p.v - 1.0 / (p.gamma * p.gamma * p.v * branch_root(k_tilde, p))
}

/// Rest-frame images k(±Λ) = i ± √(1 + 1/v) of the band endpoints.
///
/// Both lie on the boundary |Im k| = 1 of the admissibility strip; they are
/// the endpoints of the contour used for the closed-form kernel.
pub fn contour_endpoints(p: &BoostParams) -> (Complex64, Complex64) {
    let r = (1.0 + 1.0 / p.v).sqrt();
    (Complex64::new(-r, 1.0), Complex64::new(r, 1.0))
}

/// Kinetic admissibility predicate |Im k| < 1 on the rest-frame wavenumber.
///
/// A boosted wavevector is admissible iff its rest-frame image satisfies the
/// strip condition; for real k̃ this is the bound |Im ω̃| < 1/(γv).
pub fn is_kinetically_admissible(wv: &WaveVector, p: &BoostParams) -> bool {
    let k_rest = match wv.frame {
        Frame::Rest => wv.k,
        Frame::Boosted => boost_wavevector(*wv, p, BoostDirection::BoostedToRest).k,
    };
    k_rest.im.abs() < 1.0
}
