//! Hadamard-regularized scale integrals and the reciprocal-log gauge.
//!
//! For h continuous at 0 with integrable tail decay, ∫_ε^∞ h(x) dx/x grows
//! like h(0)·log(1/ε); the regularized value
//!
//!     HR ∫₀^∞ h dx/x = lim_{ε→0} [∫_ε^∞ h dx/x − h(0) log(1/ε)]
//!
//! is the constant term of that expansion. It is computed on the halving
//! ladder ε = 2^{−k}: successive values differ by ∫_band (h − h(0)) dx/x,
//! which removes the log cancellation exactly, and the O(ε)-power remainder
//! is killed by Richardson extrapolation. The exact split
//! ∫₀^1 (h − h(0)) dx/x + ∫_1^∞ h dx/x serves as an independent route in
//! the tests.
//!
//! The pushforward section handles densities v(x₁, x₂)·dx₁dx₂/(x₁x₂) under
//! the product map (x₁, x₂) ↦ x₁x₂: the fiber integral over x₁x₂ = x grows
//! like q₀·log(1/x) + p₀ with slope q₀ = v(0, 0) and constant
//! p₀ = HR(v(·, 0)) + HR(v(0, ·)); both are cross-validated against a
//! direct log-linear fit of the fiber integral.

use thiserror::Error;

use crate::analysis;

#[derive(Debug, Error)]
pub enum HrError {
    #[error("ilg needs 0 < lambda < 1, got {0}")]
    ArgOutOfRange(f64),
    #[error("tail declaration invalid: {0}")]
    BadTail(String),
    #[error("h(0) must be finite, got {0}")]
    NonFiniteAtZero(f64),
    #[error("epsilon ladder did not converge: residual {residual:.3e} at value {value:.6e}")]
    NotConverged { value: f64, residual: f64 },
}

/// Reciprocal log, 1/log(1/λ): the gauge in which scattering phases and
/// lowest eigenvalues stay bounded as λ ↓ 0. Decays slower than any
/// positive power of λ.
pub fn ilg(lambda: f64) -> Result<f64, HrError> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(HrError::ArgOutOfRange(lambda));
    }
    Ok(-1.0 / lambda.ln())
}

/// Declared decay of the integrand beyond the unit scale; fixes where the
/// upper integration limit can be cut.
#[derive(Debug, Clone, Copy)]
pub enum Tail {
    /// h vanishes identically beyond this point.
    Compact { end: f64 },
    /// |h(x)| decays at least like e^{−rate·x}.
    Exponential { rate: f64 },
}

impl Tail {
    /// Cut point beyond which the remaining ∫ h dx/x is below 1e-26
    /// relative for the declared decay.
    fn cut(self) -> Result<f64, HrError> {
        match self {
            Tail::Compact { end } => {
                if !(end > 0.0 && end.is_finite()) {
                    return Err(HrError::BadTail(format!("compact end {end}")));
                }
                Ok(end)
            }
            Tail::Exponential { rate } => {
                if !(rate > 0.0 && rate.is_finite()) {
                    return Err(HrError::BadTail(format!("exponential rate {rate}")));
                }
                Ok((60.0 / rate).max(1.0))
            }
        }
    }
}

/// Regularized value with the ε-ladder that produced it.
#[derive(Debug, Clone)]
pub struct HrResult {
    pub value: f64,
    /// Halving ladder actually used, descending.
    pub epsilons: Vec<f64>,
    /// Magnitude of the best Richardson step; the value is independent of
    /// the ladder to about this much.
    pub residual: f64,
}

/// HR ∫₀^∞ h dx/x for the declared tail; ladder start 2^{−3} (pushed lower
/// when a compact support is narrower than that).
pub fn hr_integral(h: &dyn Fn(f64) -> f64, tail: Tail) -> Result<HrResult, HrError> {
    let k0 = match tail {
        // keep at least two octaves of ladder inside the support
        Tail::Compact { end } if end.is_finite() && end > 0.0 && end < 0.5 => {
            ((1.0 / end).log2().ceil() as i32 + 2).max(3)
        }
        _ => 3,
    };
    hr_integral_from(h, tail, k0)
}

/// Same computation from an arbitrary ladder start; the public entry uses
/// k0 = 3 and the tests replay with a shifted ladder to confirm the value
/// does not depend on it.
fn hr_integral_from(h: &dyn Fn(f64) -> f64, tail: Tail, k0: i32) -> Result<HrResult, HrError> {
    let x_top = tail.cut()?;
    let h0 = h(0.0);
    if !h0.is_finite() {
        return Err(HrError::NonFiniteAtZero(h0));
    }
    let ln2 = std::f64::consts::LN_2;
    let steps = 18usize;
    let scale = 1.0 + h0.abs();

    // v(ε₀) directly: ∫ h(e^u) du over [ln ε₀, ln x_top] − h0·log(1/ε₀)
    let l0 = -(k0 as f64) * ln2;
    let mut f = |u: f64| h(u.exp());
    let (base, _) = analysis::adaptive_quad(&mut f, l0, x_top.ln(), 1e-13 * scale);
    let mut vs = Vec::with_capacity(steps + 1);
    let mut vk = base + h0 * l0;
    vs.push(vk);
    // halving increments: v(ε/2) − v(ε) = ∫_band (h − h0) dx/x, which is
    // free of the log cancellation
    for k in k0..k0 + steps as i32 {
        let (lo, hi) = (-((k + 1) as f64) * ln2, -(k as f64) * ln2);
        let mut g = |u: f64| h(u.exp()) - h0;
        let (d, _) = analysis::adaptive_quad(&mut g, lo, hi, 1e-14 * scale);
        vk += d;
        vs.push(vk);
    }
    let epsilons: Vec<f64> = (0..=steps).map(|j| 2f64.powi(-(k0 + j as i32))).collect();

    // Richardson tableau for a remainder that is a power series in ε
    let mut t = vs.clone();
    let mut value = *t.last().unwrap();
    let mut residual = f64::INFINITY;
    for j in 1..=8usize {
        let w = 2f64.powi(j as i32);
        let live = t.len() - j;
        for i in 0..live {
            t[i] = (w * t[i + 1] - t[i]) / (w - 1.0);
        }
        let new = t[live - 1];
        let step = (new - value).abs();
        if step <= residual {
            value = new;
            residual = step;
        }
    }
    let residual = residual.max(2e-15 * scale);
    if residual > 1e-9 * scale {
        return Err(HrError::NotConverged { value, residual });
    }
    Ok(HrResult {
        value,
        epsilons,
        residual,
    })
}

/// Slope/constant pair of the product-map pushforward and its direct
/// cross-validation.
#[derive(Debug, Clone)]
pub struct PushforwardReport {
    /// Log slope of the fiber integral: the density at the corner.
    pub q0: f64,
    /// Constant term: sum of the two face HR integrals.
    pub p0: f64,
    /// Slope recovered by fitting the fiber integral directly.
    pub fit_q: f64,
    /// Constant recovered by the same fit.
    pub fit_p: f64,
    /// Max |fiber − (fit_p + fit_q·log(1/x))| over the fit grid.
    pub fit_residual: f64,
    /// Whether the fit residual clears the 1e-5 consistency gate; false
    /// signals the density is not log-linear over the probe window (e.g. a
    /// face-vanishing density with an O(x) remainder).
    pub consistent: bool,
}

/// Corner and face coefficients of f_* [v dx₁dx₂/(x₁x₂)] for the product
/// map f(x₁, x₂) = x₁x₂, with v supported in [0, end]².
pub fn pushforward_coeffs(
    v: &dyn Fn(f64, f64) -> f64,
    support_end: f64,
) -> Result<PushforwardReport, HrError> {
    if !(support_end > 0.0 && support_end.is_finite()) {
        return Err(HrError::BadTail(format!("support end {support_end}")));
    }
    let q0 = v(0.0, 0.0);
    if !q0.is_finite() {
        return Err(HrError::NonFiniteAtZero(q0));
    }
    let tail = Tail::Compact { end: support_end };
    let p0 = hr_integral(&|x| v(x, 0.0), tail)?.value + hr_integral(&|y| v(0.0, y), tail)?.value;

    // fiber integral F(x) = ∫ v(t, x/t) dt/t in the log variable, then a
    // log-linear fit over two decades well inside the corner regime
    let lb = support_end.ln();
    let xs = analysis::logspace(1e-6, 1e-2, 24);
    let fibers: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let mut g = |s: f64| {
                let t = s.exp();
                v(t, x / t)
            };
            analysis::adaptive_quad(&mut g, x.ln() - lb, lb, 1e-11 * (1.0 + q0.abs())).0
        })
        .collect();
    let ones = vec![1.0; xs.len()];
    let logs: Vec<f64> = xs.iter().map(|&x| -x.ln()).collect();
    let fit = analysis::lstsq(&[ones, logs.clone()], &fibers);
    let (fit_p, fit_q) = (fit.coeffs[0], fit.coeffs[1]);
    let fit_residual = xs
        .iter()
        .zip(fibers.iter())
        .map(|(&x, &f)| (f - (fit_p - fit_q * x.ln())).abs())
        .fold(0.0f64, f64::max);
    Ok(PushforwardReport {
        q0,
        p0,
        fit_q,
        fit_p,
        fit_residual,
        consistent: fit_residual <= 1e-5,
    })
}
