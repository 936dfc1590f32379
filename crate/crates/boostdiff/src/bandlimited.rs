//! The Paley-Wiener data space PW_Λ.
//!
//! Admissible boosted density profiles are square-integrable functions whose
//! Fourier transform is supported in [−Λ, Λ]. Any such profile is fixed by
//! its values cₐ = δn(0, x̃ₐ) on the Shannon lattice x̃ₐ = πa/Λ and evolves
//! through the sampling formula
//!
//!   δn(t̃, x̃) = Σₐ cₐ 𝒦(t̃, x̃ − x̃ₐ),
//!
//! which is an exact identity on PW_Λ, not a discretization. A profile here
//! is a finite window of coefficients together with an auditable bound on
//! the ℓ²-mass that may live outside the window.

use num_complex::Complex64;

use crate::boost::{BoostParams, Frame};
use crate::error::{Error, Result};
use crate::kernel::{kernel_boosted, SpacetimePoint};
use crate::special::sinc;

/// How the values of a [`FieldSlice`] were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    SpectralOracle,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::ClosedForm => write!(f, "closed-form"),
            Provenance::SpectralOracle => write!(f, "spectral-oracle"),
        }
    }
}

/// Real density values on one row of a spacetime grid.
#[derive(Debug, Clone)]
pub struct FieldSlice {
    pub time: f64,
    pub frame: Frame,
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl FieldSlice {
    /// Positions must be strictly increasing and every value finite.
    pub fn new(
        time: f64,
        frame: Frame,
        positions: Vec<f64>,
        values: Vec<f64>,
        provenance: Provenance,
    ) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::Input(format!(
                "positions ({}) and values ({}) differ in length",
                positions.len(),
                values.len()
            )));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("positions must be strictly increasing".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Input(format!("non-finite value at row {i}")));
        }
        Ok(Self { time, frame, positions, values, provenance })
    }
}

/// A point of PW_Λ: sampling coefficients on a finite index window.
#[derive(Debug, Clone, PartialEq)]
pub struct BandLimitedProfile {
    /// First stored index a; coefficients cover a, a+1, … contiguously.
    a_min: i64,
    coeffs: Vec<f64>,
    /// Cutoff wavenumber, copied from the boost parameters.
    pub lambda: f64,
    /// Boost velocity the cutoff derives from.
    pub v: f64,
    /// Guaranteed ℓ²-mass outside the stored window; `None` when unknown.
    pub truncation_bound: Option<f64>,
}

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

impl BandLimitedProfile {
    /// Builds a profile from explicit (index, value) pairs.
    ///
    /// User-supplied data is taken as exact and compactly indexed, so the
    /// truncation bound is zero. Duplicate indices are rejected.
    pub fn from_samples(samples: &[(i64, f64)], p: &BoostParams) -> Result<Self> {
        if samples.is_empty() {
            return Ok(Self {
                a_min: 0,
                coeffs: Vec::new(),
                lambda: p.lambda,
                v: p.v,
                truncation_bound: Some(0.0),
            });
        }
        for &(a, c) in samples {
            if !c.is_finite() {
                return Err(Error::Input(format!("non-finite coefficient at index {a}")));
            }
        }
        let mut sorted: Vec<(i64, f64)> = samples.to_vec();
        sorted.sort_by_key(|&(a, _)| a);
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Input(format!("duplicate coefficient index {}", w[0].0)));
        }
        let a_min = sorted[0].0;
        let a_max = sorted[sorted.len() - 1].0;
        let mut coeffs = vec![0.0; (a_max - a_min + 1) as usize];
        for (a, c) in sorted {
            coeffs[(a - a_min) as usize] = c;
        }
        Ok(Self { a_min, coeffs, lambda: p.lambda, v: p.v, truncation_bound: Some(0.0) })
    }

    /// Samples a reference function g on the lattice, cₐ = g(πa/Λ), |a| ≤ a_max.
    ///
    /// The ℓ² tail outside the window is probed at the discarded lattice
    /// points; if the probe converges the root of its sum is stored as the
    /// truncation bound, otherwise the bound is flagged unknown.
    pub fn sample_function(g: impl Fn(f64) -> f64, p: &BoostParams, a_max: i64) -> Result<Self> {
        if a_max < 1 {
            return Err(Error::Input(format!(
                "sampling window must satisfy a_max ≥ 1, got {a_max}"
            )));
        }
        let mut coeffs = Vec::with_capacity((2 * a_max + 1) as usize);
        for a in -a_max..=a_max {
            let c = g(p.sampling_point(a));
            if !c.is_finite() {
                return Err(Error::Input(format!(
                    "reference function not finite at sample index {a}"
                )));
            }
            coeffs.push(c);
        }

        let mut tail = Compensated::default();
        let mut quiet_run = 0u32;
        let mut converged = false;
        for step in 1..=100_000i64 {
            let mut shell = 0.0;
            for a in [a_max + step, -a_max - step] {
                let c = g(p.sampling_point(a));
                if !c.is_finite() {
                    return Err(Error::Input(format!(
                        "reference function not finite at sample index {a}"
                    )));
                }
                shell += c * c;
            }
            tail.add(shell);
            if shell <= 1e-32 * (tail.value() + 1e-300) {
                quiet_run += 1;
                if quiet_run >= 32 {
                    converged = true;
                    break;
                }
            } else {
                quiet_run = 0;
            }
        }
        Ok(Self {
            a_min: -a_max,
            coeffs,
            lambda: p.lambda,
            v: p.v,
            truncation_bound: converged.then(|| tail.value().max(0.0).sqrt()),
        })
    }

    /// Stored coefficients as (index, value) pairs, zeros included.
    pub fn coefficients(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &c)| (self.a_min + i as i64, c))
    }

    pub fn index_range(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.a_min, self.a_min + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    fn ensure_frame(&self, p: &BoostParams) -> Result<()> {
        if (self.lambda - p.lambda).abs() > 1e-9 * p.lambda {
            return Err(Error::Domain(format!(
                "profile cutoff Λ = {} does not match boost parameters (Λ = {})",
                self.lambda, p.lambda
            )));
        }
        Ok(())
    }

    /// Symmetric sweep over the coefficient window, farthest pairs first,
    /// feeding a compensated accumulator.
    fn folded_sum(&self, mut term: impl FnMut(i64, f64) -> Result<f64>) -> Result<f64> {
        let n = self.coeffs.len() as i64;
        if n == 0 {
            return Ok(0.0);
        }
        let mid = n / 2;
        let mut acc = Compensated::default();
        let mut visit = |idx: i64, acc: &mut Compensated| -> Result<()> {
            if idx >= 0 && idx < n {
                let c = self.coeffs[idx as usize];
                if c != 0.0 {
                    acc.add(term(self.a_min + idx, c)?);
                }
            }
            Ok(())
        };
        for m in (1..=mid.max(n - 1 - mid)).rev() {
            visit(mid - m, &mut acc)?;
            visit(mid + m, &mut acc)?;
        }
        visit(mid, &mut acc)?;
        Ok(acc.value())
    }

    /// δn(t̃, x̃) = Σₐ cₐ 𝒦(t̃, x̃ − x̃ₐ).
    ///
    /// Terms are accumulated from large |a| to small with compensated
    /// summation: the sinc-like tails decay only as 1/|x̃ − x̃ₐ| and alternate
    /// in sign, so naive front-to-back ordering sheds digits.
    pub fn eval(&self, t_tilde: f64, x_tilde: f64, p: &BoostParams) -> Result<f64> {
        self.ensure_frame(p)?;
        self.folded_sum(|a, c| {
            let pt = SpacetimePoint::boosted(t_tilde, x_tilde - p.sampling_point(a));
            Ok(c * kernel_boosted(pt, p)?)
        })
    }

    /// Evolved-field values on the offset lattice x̃ = π(j + offset)/Λ for
    /// j ∈ [j_min, j_max].
    ///
    /// Exploits translation invariance of the sampling formula: every kernel
    /// value needed is 𝒦(t̃, π(j − a + offset)/Λ), so one table indexed by
    /// j − a serves the whole sweep. Pointwise equivalent to [`Self::eval`]
    /// at a fraction of the cost.
    pub fn eval_on_lattice(
        &self,
        t_tilde: f64,
        offset: f64,
        j_min: i64,
        j_max: i64,
        p: &BoostParams,
    ) -> Result<Vec<f64>> {
        self.ensure_frame(p)?;
        if j_max < j_min {
            return Err(Error::Input("empty lattice range".into()));
        }
        if self.coeffs.is_empty() {
            return Ok(vec![0.0; (j_max - j_min + 1) as usize]);
        }
        let a_max = self.a_min + self.coeffs.len() as i64 - 1;
        let m_min = j_min - a_max;
        let m_max = j_max - self.a_min;
        let step = std::f64::consts::PI / p.lambda;
        let mut table = Vec::with_capacity((m_max - m_min + 1) as usize);
        for m in m_min..=m_max {
            let dx = (m as f64 + offset) * step;
            table.push(kernel_boosted(SpacetimePoint::boosted(t_tilde, dx), p)?);
        }
        (j_min..=j_max)
            .map(|j| self.folded_sum(|a, c| Ok(c * table[(j - a - m_min) as usize])))
            .collect()
    }

    /// Resamples the evolved field on the lattice, producing the profile of
    /// δn(t̃, ·) on the window [b_min, b_max].
    ///
    /// Valid because evolution preserves PW_Λ; the tail of the evolved field
    /// outside the window is not stored, so its truncation bound is unknown.
    pub fn evolve_samples(
        &self,
        t_tilde: f64,
        b_min: i64,
        b_max: i64,
        p: &BoostParams,
    ) -> Result<BandLimitedProfile> {
        let values = self.eval_on_lattice(t_tilde, 0.0, b_min, b_max, p)?;
        Ok(BandLimitedProfile {
            a_min: b_min,
            coeffs: values,
            lambda: self.lambda,
            v: self.v,
            truncation_bound: None,
        })
    }

    /// L² norm √(π/Λ)·√(Σ cₐ²) (Parseval for the orthogonal sinc basis).
    pub fn l2_norm(&self, p: &BoostParams) -> f64 {
        let mut acc = Compensated::default();
        for &c in &self.coeffs {
            acc.add(c * c);
        }
        (std::f64::consts::PI / p.lambda * acc.value()).sqrt()
    }

    /// Spectral density φ(k̃) = (π/Λ) Σₐ cₐ e^{−ik̃x̃ₐ} of the t̃ = 0 profile.
    pub fn spectral_density(&self, k_tilde: f64, p: &BoostParams) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (a, c) in self.coefficients() {
            if c != 0.0 {
                sum += c * Complex64::new(0.0, -k_tilde * p.sampling_point(a)).exp();
            }
        }
        sum * (std::f64::consts::PI / p.lambda)
    }

    /// Shannon reconstruction at t̃ = 0 (pure sinc sum, no kernel machinery).
    pub fn reconstruct_initial(&self, x_tilde: f64, p: &BoostParams) -> f64 {
        self.folded_sum(|a, c| Ok(c * sinc(p.lambda * (x_tilde - p.sampling_point(a)))))
            .expect("sinc sum cannot fail")
    }
}

/// Outcome of the localizability checks of a profile at t̃ = 0.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    /// Largest sampled |δn| and the Cauchy-Schwarz bound √(Λ/π)·‖δn‖.
    pub sup_observed: f64,
    pub sup_bound: f64,
    pub sup_ok: bool,
    /// Spatial standard deviation; `None` when the second moment diverges
    /// (the uncertainty bound is then trivially satisfied).
    pub delta_x: Option<f64>,
    /// Lower bound 1/(4Λ).
    pub delta_x_bound: f64,
    pub delta_x_ok: bool,
    /// Parseval L² norm used for the pointwise bound.
    pub l2_norm: f64,
}

/// Checks the pointwise bound |δn| ≤ √(Λ/π)‖δn‖ and the uncertainty bound
/// Δx̃ ≥ (4Λ)⁻¹ for a nonzero profile at t̃ = 0.
///
/// Δx̃ is the second central moment of δn² estimated by trapezoidal
/// quadrature on an expanding grid; failure to converge across two window
/// extensions reports the moment as divergent.
pub fn check_bounds(prof: &BandLimitedProfile, p: &BoostParams) -> Result<BoundsReport> {
    if prof.is_zero() {
        return Err(Error::Domain("bounds are undefined for the zero profile".into()));
    }
    let l2 = prof.l2_norm(p);
    let sup_bound = (p.lambda / std::f64::consts::PI).sqrt() * l2;

    let (a_lo, a_hi) = prof.index_range().expect("nonzero profile has a window");
    let step = std::f64::consts::PI / (8.0 * p.lambda);
    let pad = 16.0 * std::f64::consts::PI / p.lambda;
    let base_lo = p.sampling_point(a_lo) - pad;
    let base_hi = p.sampling_point(a_hi) + pad;

    let eval_grid = |lo: f64, hi: f64| -> Vec<(f64, f64)> {
        let n = ((hi - lo) / step).ceil() as usize + 1;
        (0..n)
            .map(|i| {
                let x = lo + i as f64 * step;
                (x, prof.reconstruct_initial(x, p))
            })
            .collect()
    };

    // Pointwise bound on the base window (contains the profile's support).
    let base = eval_grid(base_lo, base_hi);
    let sup_observed = base.iter().fold(0.0f64, |m, &(_, v)| m.max(v.abs()));
    let sup_ok = sup_observed <= sup_bound * (1.0 + 1e-9);

    // Second central moment of δn² on expanding windows.
    let moment = |rows: &[(f64, f64)]| -> f64 {
        let (mut m0, mut m1) = (Compensated::default(), Compensated::default());
        for &(x, v) in rows {
            m0.add(v * v);
            m1.add(x * v * v);
        }
        let norm = m0.value();
        let mean = m1.value() / norm;
        let mut m2 = Compensated::default();
        for &(x, v) in rows {
            m2.add((x - mean) * (x - mean) * v * v);
        }
        m2.value() / norm
    };

    let mut estimates = Vec::new();
    let mut edge_small = true;
    for mult in [0.0, 4.0, 12.0] {
        let rows = eval_grid(base_lo - pad * mult, base_hi + pad * mult);
        estimates.push(moment(&rows));
        if mult == 12.0 {
            let peak = rows.iter().fold(0.0f64, |m, &(x, v)| m.max(x * x * v * v));
            let head = rows.first().map(|&(x, v)| x * x * v * v).unwrap_or(0.0);
            let tail = rows.last().map(|&(x, v)| x * x * v * v).unwrap_or(0.0);
            edge_small = head.max(tail) <= 1e-12 * peak;
        }
    }
    let converged =
        edge_small && (estimates[2] - estimates[1]).abs() <= 1e-6 * estimates[2].abs() + 1e-12;
    let delta_x = converged.then(|| estimates[2].max(0.0).sqrt());
    let delta_x_bound = 0.25 / p.lambda;
    let delta_x_ok = delta_x.map_or(true, |dx| dx >= delta_x_bound * (1.0 - 1e-6));

    Ok(BoundsReport {
        sup_observed,
        sup_bound,
        sup_ok,
        delta_x,
        delta_x_bound,
        delta_x_ok,
        l2_norm: l2,
    })
}

/// Writes a profile in the text format: a `lambda=<value> v=<value>` header
/// plus one `index<TAB>value` line per coefficient.
pub fn write_profile(prof: &BandLimitedProfile, mut out: impl std::io::Write) -> Result<()> {
    writeln!(out, "lambda={} v={}", prof.lambda, prof.v)?;
    for (a, c) in prof.coefficients() {
        writeln!(out, "{a}\t{c}")?;
    }
    Ok(())
}

/// Parses the text profile format; errors carry 1-based line numbers.
pub fn read_profile(text: &str) -> Result<(BandLimitedProfile, BoostParams)> {
    let mut lines = text.lines().enumerate();
    let (_, header) =
        lines.next().ok_or_else(|| Error::Input("line 1: empty profile file".into()))?;
    let mut lambda = None;
    let mut v = None;
    for field in header.split_whitespace() {
        if let Some(raw) = field.strip_prefix("lambda=") {
            lambda = raw.parse::<f64>().ok();
        } else if let Some(raw) = field.strip_prefix("v=") {
            v = raw.parse::<f64>().ok();
        }
    }
    let (lambda, v) = match (lambda, v) {
        (Some(l), Some(v)) => (l, v),
        _ => {
            return Err(Error::Input("line 1: header must read `lambda=<value> v=<value>`".into()))
        }
    };
    let p =
        BoostParams::new(v).map_err(|e| Error::Input(format!("line 1: bad boost velocity: {e}")))?;
    if (p.lambda - lambda).abs() > 1e-9 * p.lambda.max(1.0) {
        return Err(Error::Input(format!(
            "line 1: header lambda {} is inconsistent with v = {} (expect {})",
            lambda, v, p.lambda
        )));
    }
    let mut samples = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        let parse = |piece: Option<&str>, what: &str| -> Result<String> {
            piece
                .map(str::to_owned)
                .ok_or_else(|| Error::Input(format!("line {}: missing {what}", i + 1)))
        };
        let a: i64 = parse(cols.next(), "index")?
            .parse()
            .map_err(|_| Error::Input(format!("line {}: bad index", i + 1)))?;
        let c: f64 = parse(cols.next(), "value")?
            .parse()
            .map_err(|_| Error::Input(format!("line {}: bad value", i + 1)))?;
        samples.push((a, c));
    }
    let prof = BandLimitedProfile::from_samples(&samples, &p)?;
    Ok((prof, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_half() -> BoostParams {
        BoostParams::new(0.5).unwrap()
    }

    #[test]
    fn empty_sample_set_is_zero_profile() {
        let p = p_half();
        let prof = BandLimitedProfile::from_samples(&[], &p).unwrap();
        assert!(prof.is_zero());
        assert_eq!(prof.eval(0.3, 1.1, &p).unwrap(), 0.0);
        assert_eq!(prof.l2_norm(&p), 0.0);
    }

    #[test]
    fn duplicate_indices_rejected() {
        let p = p_half();
        let err = BandLimitedProfile::from_samples(&[(2, 1.0), (2, 0.5)], &p).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        assert!(err.to_string().contains('2'));
    }

    #[test]
    fn single_sinc_profile_interpolates() {
        let p = p_half();
        let prof = BandLimitedProfile::from_samples(&[(0, 1.0)], &p).unwrap();
        for x in [-1.3, -0.2, 0.0, 0.4, 2.0] {
            let got = prof.eval(0.0, x, &p).unwrap();
            assert!((got - sinc(p.lambda * x)).abs() < 1e-12, "x̃ = {x}");
        }
    }

    #[test]
    fn interpolation_property_at_lattice_points() {
        let p = p_half();
        let prof =
            BandLimitedProfile::from_samples(&[(-2, 0.3), (0, -1.1), (1, 0.7), (5, 0.2)], &p)
                .unwrap();
        for (a, c) in [(-2, 0.3), (0, -1.1), (1, 0.7), (5, 0.2), (3, 0.0)] {
            let got = prof.eval(0.0, p.sampling_point(a), &p).unwrap();
            assert!((got - c).abs() < 1e-12, "a = {a}: {got} vs {c}");
        }
    }

    #[test]
    fn gaussian_sampling_reproduces_gaussian_coefficients() {
        let p = p_half();
        let prof = BandLimitedProfile::sample_function(
            |x| (-(p.lambda * x / (2.0 * std::f64::consts::PI)).powi(2)).exp(),
            &p,
            20,
        )
        .unwrap();
        for (a, c) in prof.coefficients() {
            let expect = (-(a as f64 / 2.0).powi(2)).exp();
            assert!((c - expect).abs() < 1e-15, "a = {a}");
        }
        // The Gaussian tail beyond |a| = 20 is ~e^{−110}; the probe resolves it.
        let bound = prof.truncation_bound.expect("Gaussian tail converges");
        assert!(bound < 1e-40);
    }

    #[test]
    fn quartic_sampling_matches_reference_coefficients() {
        let p = p_half();
        let prof = BandLimitedProfile::sample_function(
            |x| (-(p.lambda * x / (2.0 * std::f64::consts::PI)).powi(4)).exp(),
            &p,
            12,
        )
        .unwrap();
        for (a, c) in prof.coefficients() {
            let expect = (-(a as f64 / 2.0).powi(4)).exp();
            assert!((c - expect).abs() < 1e-15, "a = {a}");
        }
    }

    #[test]
    fn sample_function_rejects_bad_window_and_values() {
        let p = p_half();
        assert!(BandLimitedProfile::sample_function(|_| 1.0, &p, 0).is_err());
        let err =
            BandLimitedProfile::sample_function(|x| if x > 0.7 { f64::NAN } else { 0.0 }, &p, 4)
                .unwrap_err();
        assert!(err.to_string().contains("index"));
    }

    #[test]
    fn gaussian_profile_evaluates_to_one_at_origin() {
        // The PW_Λ approximation of the Gaussian is accurate near its peak.
        let p = p_half();
        let prof = BandLimitedProfile::sample_function(
            |x| (-(p.lambda * x / (2.0 * std::f64::consts::PI)).powi(2)).exp(),
            &p,
            20,
        )
        .unwrap();
        let got = prof.eval(0.0, 0.0, &p).unwrap();
        assert!((got - 1.0).abs() < 2e-2, "peak value {got}");
    }

    #[test]
    fn l2_norm_values() {
        let p = p_half();
        let single = BandLimitedProfile::from_samples(&[(0, 1.0)], &p).unwrap();
        assert!((single.l2_norm(&p) - (std::f64::consts::PI / 4.0).sqrt()).abs() < 1e-14);
        let double = BandLimitedProfile::from_samples(&[(0, 1.0), (1, 1.0)], &p).unwrap();
        assert!((double.l2_norm(&p) - (2.0 * std::f64::consts::PI / 4.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn lattice_eval_matches_pointwise_eval() {
        let p = p_half();
        let prof =
            BandLimitedProfile::from_samples(&[(-3, 0.4), (-1, -0.9), (0, 1.0), (2, 0.6)], &p)
                .unwrap();
        for offset in [0.0, 0.25, 0.5] {
            let vals = prof.eval_on_lattice(0.35, offset, -6, 6, &p).unwrap();
            for (i, j) in (-6i64..=6).enumerate() {
                let x = p.sampling_point(j) + offset * std::f64::consts::PI / p.lambda;
                let direct = prof.eval(0.35, x, &p).unwrap();
                assert!(
                    (vals[i] - direct).abs() < 1e-12,
                    "offset {offset}, j = {j}: {} vs {direct}",
                    vals[i]
                );
            }
        }
    }

    #[test]
    fn zero_profile_bounds_rejected() {
        let p = p_half();
        let prof = BandLimitedProfile::from_samples(&[(0, 0.0), (1, 0.0)], &p).unwrap();
        assert!(matches!(check_bounds(&prof, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn sinc_profile_saturates_pointwise_bound_and_has_divergent_moment() {
        let p = p_half();
        let prof = BandLimitedProfile::from_samples(&[(0, 1.0)], &p).unwrap();
        let report = check_bounds(&prof, &p).unwrap();
        assert!(report.sup_ok);
        assert!((report.sup_observed - 1.0).abs() < 1e-9);
        assert!((report.sup_bound - 1.0).abs() < 1e-12);
        assert!(report.delta_x.is_none(), "sinc second moment must diverge");
        assert!(report.delta_x_ok, "divergent moment satisfies the bound trivially");
    }

    #[test]
    fn gaussian_profile_passes_both_bounds() {
        let p = p_half();
        let prof = BandLimitedProfile::sample_function(
            |x| (-(p.lambda * x / (2.0 * std::f64::consts::PI)).powi(2)).exp(),
            &p,
            20,
        )
        .unwrap();
        let report = check_bounds(&prof, &p).unwrap();
        assert!(report.sup_ok && report.delta_x_ok);
        let dx = report.delta_x.expect("Gaussian moment converges");
        // δn² ≈ e^{−x̃²Λ²/(2π²)} has standard deviation π/Λ.
        assert!((dx - std::f64::consts::PI / p.lambda).abs() < 0.02);
        assert!(dx > report.delta_x_bound);
    }

    #[test]
    fn profile_io_round_trip() {
        let p = p_half();
        let prof =
            BandLimitedProfile::from_samples(&[(-2, 0.125), (0, -3.5), (7, 1e-7)], &p).unwrap();
        let mut buf = Vec::new();
        write_profile(&prof, &mut buf).unwrap();
        let (back, back_p) = read_profile(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back_p.v, p.v);
        assert_eq!(back.coeffs, prof.coeffs);
        assert_eq!(back.a_min, prof.a_min);
    }

    #[test]
    fn profile_parse_errors_carry_line_numbers() {
        let text = "lambda=4 v=0.5\n0\t1.0\nbroken-line\n";
        let err = read_profile(text).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let text = "lambda=3.9 v=0.5\n0\t1.0\n";
        let err = read_profile(text).unwrap_err();
        assert!(err.to_string().contains("inconsistent"), "{err}");
    }

    #[test]
    fn field_slice_validation() {
        assert!(FieldSlice::new(
            0.0,
            Frame::Boosted,
            vec![0.0, 1.0, 1.0],
            vec![1.0, 2.0, 3.0],
            Provenance::ClosedForm
        )
        .is_err());
        assert!(FieldSlice::new(
            0.0,
            Frame::Boosted,
            vec![0.0, 1.0],
            vec![1.0, f64::NAN],
            Provenance::ClosedForm
        )
        .is_err());
    }
}
