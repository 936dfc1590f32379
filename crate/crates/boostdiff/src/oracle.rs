//! Brute-force spectral evaluators that verify every closed form.
//!
//! Three independent routes are implemented:
//!
//! * band quadrature of 𝒦(t̃,x̃) = ∫_{−Λ}^{Λ} dk̃/(2Λ) e^{ik̃x̃ − iω̃(k̃)t̃};
//! * rest-frame contour quadrature of γ(1 − 2ivk) e^{ikx − k²t}/(2Λ) along
//!   either the explicit parabolic path inside the admissibility strip or
//!   the straight chord (the integrand is entire, so both must agree);
//! * the spatial Fourier transform of the boosted heat kernel G, with the
//!   1/√ edge singularity removed by the substitution y = t̃/v − x̃ = u².
//!
//! These are shipped, not test-only: closed-form-versus-quadrature agreement
//! is the verification story for any new parameter regime.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bandlimited::{FieldSlice, Provenance};
use crate::boost::{stable_dispersion, BoostParams, DispersionBranch, Frame};
use crate::error::{Error, Result};
use crate::special::SQRT_PI;

/// Quadrature scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    GaussLegendre,
    Adaptive,
}

/// Node count, scheme and tolerance for the oracle quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub scheme: Scheme,
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(nodes: usize, scheme: Scheme, tolerance: f64) -> Result<Self> {
        if nodes < 8 {
            return Err(Error::Input(format!("quadrature needs at least 8 nodes, got {nodes}")));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Input(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(Self { nodes, scheme, tolerance })
    }

    /// 400-node Gauss-Legendre at 1e−10, the default for band integrals.
    pub fn default_band() -> Self {
        Self { nodes: 400, scheme: Scheme::GaussLegendre, tolerance: 1e-10 }
    }

    /// Adaptive bisection at 1e−8, the default for the G transform.
    pub fn default_adaptive() -> Self {
        Self { nodes: 16, scheme: Scheme::Adaptive, tolerance: 1e-8 }
    }
}

/// Gauss-Legendre nodes and weights on [−1, 1], cached per node count.
pub fn gauss_legendre(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton on the three-term recurrence.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let weight = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, weight));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    let rule = Arc::new(rule);
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

/// Gauss-Legendre quadrature of a complex integrand over [a, b].
pub fn integrate_gl(
    f: &mut dyn FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    n: usize,
) -> Complex64 {
    let rule = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = Complex64::new(0.0, 0.0);
    for &(x, w) in rule.iter() {
        sum += w * f(mid + half * x);
    }
    sum * half
}

struct AdaptiveState<'f> {
    f: &'f mut dyn FnMut(f64) -> Complex64,
    worst: f64,
    failed: bool,
}

fn adaptive_step(
    st: &mut AdaptiveState,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = (st.f)(lm);
    let frm = (st.f)(rm);
    let h6 = (b - a) / 12.0;
    let left = h6 * (fa + 4.0 * flm + fm);
    let right = h6 * (fm + 4.0 * frm + fb);
    let err = (left + right - whole).norm() / 15.0;
    if err <= tol || depth >= 30 {
        if err > tol {
            st.failed = true;
            st.worst = st.worst.max(err);
        }
        return left + right + (left + right - whole) / 15.0;
    }
    adaptive_step(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1)
        + adaptive_step(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1)
}

/// Adaptive Simpson quadrature; errs with the achieved estimate when the
/// recursion bottoms out before reaching `tol`.
pub fn integrate_adaptive(
    f: &mut dyn FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut st = AdaptiveState { f, worst: 0.0, failed: false };
    let value = adaptive_step(&mut st, a, fa, b, fb, m, fm, whole, tol, 0);
    if st.failed {
        return Err(Error::Accuracy { requested: tol, achieved: st.worst });
    }
    Ok(value)
}

fn realness_check(value: Complex64, tolerance: f64, context: &str) -> Result<f64> {
    let scale = value.re.abs().max(1.0);
    if value.im.abs() > tolerance * scale {
        return Err(Error::Consistency(format!(
            "{context}: imaginary residue {:.3e} exceeds tolerance {:.3e}; \
             the integrand has lost conjugate symmetry (dispersion-branch bug)",
            value.im.abs(),
            tolerance
        )));
    }
    Ok(value.re)
}

/// Dispersion used by the kernel oracle; `poisoned` flips the square-root
/// sign for k̃ > 0, modelling a branch-selection bug for the verification
/// canary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleBranch {
    Stable,
    PoisonedStable,
}

impl OracleBranch {
    fn omega(self, k_tilde: f64, p: &BoostParams) -> Complex64 {
        match self {
            OracleBranch::Stable => stable_dispersion(k_tilde, p),
            OracleBranch::PoisonedStable => {
                if k_tilde > 0.0 {
                    crate::boost::unstable_dispersion(k_tilde, p)
                } else {
                    stable_dispersion(k_tilde, p)
                }
            }
        }
    }
}

fn oracle_kernel_value(
    t_tilde: f64,
    x_tilde: f64,
    p: &BoostParams,
    q: &QuadratureSpec,
    branch: OracleBranch,
) -> Result<Complex64> {
    let lambda = p.lambda;
    let mut f = |k: f64| {
        (Complex64::i() * (k * x_tilde) - Complex64::i() * branch.omega(k, p) * t_tilde).exp()
            / (2.0 * lambda)
    };
    match q.scheme {
        Scheme::GaussLegendre => Ok(integrate_gl(&mut f, -lambda, lambda, q.nodes)),
        Scheme::Adaptive => integrate_adaptive(&mut f, -lambda, lambda, q.tolerance * 0.1),
    }
}

/// Band quadrature of the fundamental solution, the primary oracle for the
/// closed-form kernel. The true integral is real by conjugate symmetry of
/// the integrand; an imaginary residue above tolerance is reported as a
/// consistency error rather than silently discarded.
pub fn oracle_kernel(t_tilde: f64, x_tilde: f64, p: &BoostParams, q: &QuadratureSpec) -> Result<f64> {
    let value = oracle_kernel_value(t_tilde, x_tilde, p, q, OracleBranch::Stable)?;
    realness_check(value, q.tolerance, "oracle_kernel")
}

/// Same quadrature with a deliberately broken branch choice; the realness
/// check is expected to fail. Used by `verify --poison-branch`.
pub fn oracle_kernel_poisoned(
    t_tilde: f64,
    x_tilde: f64,
    p: &BoostParams,
    q: &QuadratureSpec,
) -> Result<f64> {
    let value = oracle_kernel_value(t_tilde, x_tilde, p, q, OracleBranch::PoisonedStable)?;
    realness_check(value, q.tolerance, "oracle_kernel[poisoned]")
}

/// Integration path for the rest-frame contour oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourPath {
    /// k = r + i r²/(1 + 1/v), the explicit path inside the admissible strip.
    Parabolic,
    /// Straight segment between the endpoints k(−Λ) and k(+Λ).
    Chord,
}

/// Rest-frame contour quadrature of γ(1 − 2ivk) e^{ikx − k²t}/(2Λ) between
/// k(−Λ) and k(+Λ). Path independence (the integrand is entire) makes the
/// parabolic and chord variants interchangeable cross-checks.
pub fn oracle_kernel_contour(
    t: f64,
    x: f64,
    p: &BoostParams,
    q: &QuadratureSpec,
    path: ContourPath,
) -> Result<f64> {
    let reach = (1.0 + 1.0 / p.v).sqrt();
    let curvature = 1.0 / (1.0 + 1.0 / p.v);
    let mut f = |r: f64| {
        let (k, dk) = match path {
            ContourPath::Parabolic => (
                Complex64::new(r, r * r * curvature),
                Complex64::new(1.0, 2.0 * r * curvature),
            ),
            ContourPath::Chord => (Complex64::new(r, 1.0), Complex64::new(1.0, 0.0)),
        };
        let density = p.gamma * (1.0 - 2.0 * Complex64::i() * p.v * k) / (2.0 * p.lambda);
        density * (Complex64::i() * k * x - k * k * t).exp() * dk
    };
    let value = match q.scheme {
        Scheme::GaussLegendre => integrate_gl(&mut f, -reach, reach, q.nodes),
        Scheme::Adaptive => integrate_adaptive(&mut f, -reach, reach, q.tolerance * 0.1)?,
    };
    realness_check(value, q.tolerance, "oracle_kernel_contour")
}

/// Evolves spectral data φ ∈ L²([−Λ, Λ]) along the stable branch:
/// δn(t̃, x̃) = ∫_{−Λ}^{Λ} dk̃/(2π) φ(k̃) e^{ik̃x̃ − iω̃(k̃)t̃}.
///
/// φ must be conjugate-symmetric (the density is real). The quadrature is
/// re-run at doubled node count; disagreement beyond tolerance is an
/// accuracy error carrying the achieved estimate.
pub fn oracle_evolve(
    phi: &dyn Fn(f64) -> Complex64,
    t_tilde: f64,
    x_grid: &[f64],
    p: &BoostParams,
    q: &QuadratureSpec,
) -> Result<FieldSlice> {
    let lambda = p.lambda;
    let rule_eval = |x_tilde: f64, nodes: usize| -> Complex64 {
        let mut f = |k: f64| {
            phi(k)
                * (Complex64::i() * (k * x_tilde) - Complex64::i() * stable_dispersion(k, p) * t_tilde)
                    .exp()
                / (2.0 * std::f64::consts::PI)
        };
        integrate_gl(&mut f, -lambda, lambda, nodes)
    };
    let mut values = Vec::with_capacity(x_grid.len());
    let mut achieved = 0.0f64;
    for &x in x_grid {
        let coarse = rule_eval(x, q.nodes);
        let fine = rule_eval(x, 2 * q.nodes);
        achieved = achieved.max((fine - coarse).norm());
        let value = realness_check(fine, q.tolerance, "oracle_evolve")?;
        values.push(value);
    }
    if achieved > q.tolerance {
        return Err(Error::Accuracy { requested: q.tolerance, achieved });
    }
    FieldSlice::new(t_tilde, Frame::Boosted, x_grid.to_vec(), values, Provenance::SpectralOracle)
}

/// Numerical spatial Fourier transform of the boosted heat kernel,
/// G(t̃, k̃) = ∫ G(t̃, x̃) e^{−ik̃x̃} dx̃ over the support x̃ < t̃/v.
///
/// The substitution x̃ = t̃/v − u² absorbs the 1/√(t̃ − vx̃) edge singularity,
/// leaving a smooth integrand handled by adaptive bisection.
pub fn oracle_fourier_g(
    t_tilde: f64,
    k_tilde: f64,
    p: &BoostParams,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    if t_tilde == 0.0 {
        return Err(Error::Domain("the G transform needs t̃ ≠ 0".into()));
    }
    let (v, gamma) = (p.v, p.gamma);
    let drift0 = t_tilde / (gamma * gamma * v);
    let u_max = (drift0.abs() + 260.0 * v / gamma).sqrt() + 1.0;
    let mut f = |u: f64| {
        if u == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let x = t_tilde / v - u * u;
        let drift = x - v * t_tilde;
        let gauss = -gamma * drift * drift / (4.0 * v * u * u);
        (Complex64::new(gauss, -k_tilde * x)).exp()
    };
    let tol = q.tolerance * 0.05;
    let value = integrate_adaptive(&mut f, 0.0, u_max, tol)?;
    Ok(value / (SQRT_PI * (gamma * v).sqrt()))
}

/// Fraction of spectral energy in the band lo ≤ |k̃| ≤ hi after evolving the
/// profile spectrum φ(k̃) to time t̃ along the stable branch.
pub fn band_energy_fraction(
    phi: &dyn Fn(f64) -> Complex64,
    t_tilde: f64,
    lo: f64,
    hi: f64,
    p: &BoostParams,
    q: &QuadratureSpec,
) -> Result<f64> {
    if !(0.0 <= lo && lo < hi && hi <= p.lambda) {
        return Err(Error::Input(format!(
            "band [{lo}, {hi}] must satisfy 0 ≤ lo < hi ≤ Λ = {}",
            p.lambda
        )));
    }
    let mut density = |k: f64| {
        let growth = (2.0 * t_tilde * stable_dispersion(k, p).im).exp();
        Complex64::new(phi(k).norm_sqr() * growth, 0.0)
    };
    let band = |f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64| {
        integrate_gl(f, a, b, q.nodes).re
    };
    let num = band(&mut density, lo, hi) + band(&mut density, -hi, -lo);
    let den = band(&mut density, -p.lambda, p.lambda);
    if den <= 0.0 {
        return Err(Error::Domain("zero spectral energy".into()));
    }
    Ok(num / den)
}
