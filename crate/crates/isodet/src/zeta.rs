//! Zeta-regularized determinant machinery for the planar exterior/interior
//! Laplacian family. This file hosts:
//!
//! * the smooth plateau cutoff χ that splits spectral integrals at a chosen
//!   scale: χ ≡ 1 on [0, a], χ ≡ 0 on [1, ∞), with a bridge whose
//!   *derivative* profile is the standard bump exp(1 − 1/(1 − x²)) on
//!   (−1, 1). Building the bridge as the normalized tail integral of the
//!   bump makes every derivative of χ vanish at both joints, so the three
//!   pieces glue C^∞; a plain half-bump bridge would keep χ″ ≠ 0 at the
//!   plateau end;
//! * the split zeta function ζ_Ω(s) = ζ₁(s) + ζ₂(s) of an exterior disc
//!   built from its scattering phase: ζ₁ integrates the χ-weighted phase
//!   over low frequencies directly in λ^{−2s}, while ζ₂ goes through the
//!   heat-kernel side — a Mellin transform of the cutoff-complement trace
//!   e₂(t) with its short-time ladder subtracted on (0, 1] and restored as
//!   analytic pole terms, so the continuation to s ≤ 0 is exact;
//! * modified (zero-shift) and shifted (μ > 0) exterior log-determinants,
//!   interior disc log-determinants, and the resolvent-trace integral that
//!   ties their μ-derivatives together.
//!
//! The Mellin engine is shared by every heat-side route. Its one
//! non-negotiable input is the *exact* leading ladder (the t^{−1}, t^{−1/2},
//! t⁰ coefficients): those three integrate to divergent or borderline
//! Mellin moments below the numerical window, so an error ε in them leaks
//! into −ζ′(0) amplified by 1/t_lo, 1/√t_lo, log t_lo respectively. The
//! higher ladder entries are fitted — an error in a fitted t^{j/2}
//! coefficient (j ≥ 1) cancels identically between the subtracted integrand
//! and the analytic pole term, up to the O(t_lo^{j/2}) stub below the
//! window, so the fit only has to be good, not exact.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis;
use crate::cache::{content_key, DiskCache};
use crate::geometry::{heat_invariants, ObstacleCurve, Side};
use crate::hadamard::{self, Tail};
use crate::heat::{self, HeatError};
use crate::phase::{PhaseError, PhaseTable};
use crate::report::{DetMethod, DetValue};

use std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error("plateau must lie strictly inside (0, 1), got {0}")]
    BadPlateau(f64),
    #[error("mass shift must be positive here, got {0} (the zero-shift determinant is the modified one)")]
    NonPositiveMu(f64),
    #[error("mass shift must be nonnegative, got {0}")]
    NegativeMu(f64),
    #[error(
        "phase table's leading growth σ₂ = {got:.6} does not match a disc of its stated radius (expected {expected:.6}); exterior determinants here are disc-scoped"
    )]
    TableNotDisc { expected: f64, got: f64 },
    #[error("phase table starts at λ = {have:.3e}; spectral-side integrals need λ_min ≤ {need:.3e}")]
    TableStartsTooHigh { have: f64, need: f64 },
    #[error("phase table radius {table} does not match the curve radius {curve}")]
    RadiusMismatch { table: f64, curve: f64 },
    #[error(
        "short-time subtraction left a constant residue of size {level:.3e}; the leading heat coefficients fed to the Mellin engine are inconsistent with the trace"
    )]
    SubtractionResidual { level: f64 },
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Heat(#[from] HeatError),
    #[error(transparent)]
    Hadamard(#[from] hadamard::HrError),
}

/// Smooth monotone cutoff with plateau [0, a] and support [0, 1].
#[derive(Debug, Clone)]
pub struct CutoffSpec {
    a: f64,
    /// ∫_{−1}^{1} exp(1 − 1/(1−x²)) dx, fixed at construction
    norm: f64,
}

/// The C^∞ bump exp(1 − 1/(1 − x²)) on (−1, 1), zero outside.
fn bump(x: f64) -> f64 {
    let d = 1.0 - x * x;
    if d <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / d).exp()
    }
}

impl CutoffSpec {
    pub fn new(a: f64) -> Result<Self, ZetaError> {
        if !(a > 0.0 && a < 1.0) {
            return Err(ZetaError::BadPlateau(a));
        }
        let mut f = bump;
        let (norm, _) = analysis::adaptive_quad(&mut f, -1.0, 1.0, 1e-14);
        Ok(CutoffSpec { a, norm })
    }

    /// Right edge of the plateau where χ starts to fall below 1.
    pub fn plateau(&self) -> f64 {
        self.a
    }

    /// χ(λ): 1 on the plateau, 0 beyond the support, normalized bump tail
    /// integral on the bridge. A 120-point Gauss rule resolves the tail
    /// integral to ~4e-16 — χ gets integrated inside adaptive quadratures
    /// downstream, so its own noise must sit at machine level or the
    /// bisection never converges.
    pub fn chi(&self, lambda: f64) -> f64 {
        if lambda <= self.a {
            return 1.0;
        }
        if lambda >= 1.0 {
            return 0.0;
        }
        let x = (2.0 * lambda - (1.0 + self.a)) / (1.0 - self.a);
        let mut f = bump;
        // NOTE: the quadrature can overshoot the exact range by ~1e-16 near the
        // plateau joint; clamp so downstream code can rely on chi in [0, 1].
        (analysis::fixed_quad(&mut f, x, 1.0, 120) / self.norm).clamp(0.0, 1.0)
    }
}

// ---------------------------------------------------------------------------
// fixed composite quadrature grids
//
// Every determinant route below evaluates one expensive function (a phase
// interpolant, a heat trace) on a grid fixed at build time and then reuses
// the cached values across many (s, μ) reweightings. Composite Gauss panels
// in the log variable keep the node count small while resolving functions
// whose natural scale is a few e-foldings.

/// Short-time edge of the Mellin window for a unit-radius obstacle; scaled
/// by r² for other radii so the subtracted trace keeps the same shape.
const T_LO_UNIT: f64 = 3e-4;
/// Top of the ladder-fit window for a unit-radius obstacle.
const FIT_HI_UNIT: f64 = 0.1;
/// Panel width (in the log abscissa) and points per panel for time grids.
const PANEL_LN_T: f64 = 0.34;
const PANEL_PTS_T: usize = 25;
/// Panel width / points for spectral (λ or log 1/λ) grids.
const PANEL_LN_LAM: f64 = 0.2;
const PANEL_PTS_LAM: usize = 24;
/// Constant-residue gate for the subtraction self-check.
const DETECTOR_GATE: f64 = 1e-6;

/// Composite Gauss–Legendre rule on [a, b]: ⌈(b−a)/width⌉ equal panels of
/// `pts` points, returned as flat node/weight arrays.
fn composite_gauss(a: f64, b: f64, width: f64, pts: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(b > a && width > 0.0);
    let n = ((b - a) / width).ceil() as usize;
    let rule = analysis::gauss_legendre(pts);
    let mut xs = Vec::with_capacity(n * pts);
    let mut ws = Vec::with_capacity(n * pts);
    for i in 0..n {
        let lo = a + (b - a) * i as f64 / n as f64;
        let hi = a + (b - a) * (i + 1) as f64 / n as f64;
        let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (&x, &w) in rule.0.iter().zip(rule.1.iter()) {
            xs.push(c + h * x);
            ws.push(w * h);
        }
    }
    (xs, ws)
}

// ---------------------------------------------------------------------------
// spectral-side node caches

/// Cached integrand data on the cutoff complement λ ∈ [a, λ_max]: abscissae
/// in ln λ with the phase and 1 − χ pre-evaluated. e₂(t) then costs one
/// weighted sum per t, which is what makes the Mellin grids affordable.
struct OuterNodes {
    lam: Vec<f64>,
    w: Vec<f64>,
    s: Vec<f64>,
    one_minus_chi: Vec<f64>,
    s_err: Vec<f64>,
}

impl OuterNodes {
    fn build(phase: &PhaseTable, chi: &CutoffSpec) -> Result<OuterNodes, ZetaError> {
        let lo = chi.plateau().max(phase.lambda_min());
        let hi = phase.lambda_max();
        let (us, ws) = composite_gauss(lo.ln(), hi.ln(), PANEL_LN_LAM, PANEL_PTS_LAM);
        let mut out = OuterNodes {
            lam: Vec::with_capacity(us.len()),
            w: ws,
            s: Vec::with_capacity(us.len()),
            one_minus_chi: Vec::with_capacity(us.len()),
            s_err: Vec::with_capacity(us.len()),
        };
        for &u in &us {
            let lam = u.exp();
            out.s.push(phase.interp(lam)?);
            out.one_minus_chi.push(1.0 - chi.chi(lam));
            out.s_err.push(phase.err_at(lam));
            out.lam.push(lam);
        }
        Ok(out)
    }

    /// Cutoff-complement trace e₂(t) = −(t/π)∫(1−χ)s e^{−λ²t} λ dλ and the
    /// propagated phase-table error. Support starts at the plateau edge, so
    /// e₂ decays at least like e^{−a²t}.
    fn e2_with_err(&self, t: f64) -> (f64, f64) {
        let mut acc = 0.0;
        let mut err = 0.0;
        for i in 0..self.lam.len() {
            let l = self.lam[i];
            let f = (-l * l * t).exp();
            if f == 0.0 {
                continue;
            }
            let base = self.w[i] * self.one_minus_chi[i] * l * l * f;
            acc += base * self.s[i];
            err += base.abs() * self.s_err[i];
        }
        let c = t / PI;
        (-c * acc, c * err)
    }
}

/// Cached integrand data on the low-frequency side, in v = log(1/λ) over
/// [0, v_max], v_max = log(1/λ_min), plus a fitted two-term model for the
/// phase residual s − π/v beyond the table. The residual model closes every
/// λ → 0 tail analytically (exponential-integral moments), so no quadrature
/// ever runs off the end of the table.
struct LowNodes {
    v: Vec<f64>,
    w: Vec<f64>,
    sphi: Vec<f64>,
    chi: Vec<f64>,
    s_err: Vec<f64>,
    vmax: f64,
    /// s(e^{−v}) ≈ π/v + c₂/v² + c₃/v³ for v ≥ v_max
    c2: f64,
    c3: f64,
    model_rms: f64,
}

impl LowNodes {
    fn build(phase: &PhaseTable, chi: &CutoffSpec) -> Result<LowNodes, ZetaError> {
        let need = 1.05e-6;
        if phase.lambda_min() > need {
            return Err(ZetaError::TableStartsTooHigh {
                have: phase.lambda_min(),
                need,
            });
        }
        let vmax = (1.0 / phase.lambda_min()).ln();
        let (vs, ws) = composite_gauss(0.0, vmax, PANEL_LN_LAM, PANEL_PTS_LAM);
        let mut out = LowNodes {
            v: Vec::with_capacity(vs.len()),
            w: ws,
            sphi: Vec::with_capacity(vs.len()),
            chi: Vec::with_capacity(vs.len()),
            s_err: Vec::with_capacity(vs.len()),
            vmax,
            c2: 0.0,
            c3: 0.0,
            model_rms: 0.0,
        };
        for &v in &vs {
            let lam = (-v).exp();
            out.sphi.push(phase.interp(lam)?);
            out.chi.push(chi.chi(lam));
            out.s_err.push(phase.err_at(lam));
            out.v.push(v);
        }
        // residual model from the deepest stretch of the table
        let cut = 0.55 * vmax;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..out.v.len() {
            if out.v[i] >= cut {
                xs.push(out.v[i]);
                ys.push(out.sphi[i] - PI / out.v[i]);
            }
        }
        let fit = analysis::fit_powers(&xs, &ys, &[-2.0, -3.0]);
        out.c2 = fit.coeffs[0];
        out.c3 = fit.coeffs[1];
        out.model_rms = fit.resid_rms;
        Ok(out)
    }

    /// ζ₁(s) = −(s/π)∫₀^∞ λ^{−2s} s(λ) χ(λ) dλ/λ for s < 0, as a direct
    /// v-integral over the table plus the exact exponential-integral tail of
    /// the residual model (χ ≡ 1 deep below the plateau).
    fn zeta1(&self, s: f64) -> f64 {
        assert!(s < 0.0);
        let mut body = 0.0;
        for i in 0..self.v.len() {
            body += self.w[i] * (2.0 * s * self.v[i]).exp() * self.sphi[i] * self.chi[i];
        }
        let beta = -2.0 * s;
        let x = beta * self.vmax;
        let e1 = analysis::exp_e1(x);
        let em = (-x).exp();
        // ∫_V^∞ e^{−βv} v^{−n} dv for n = 1, 2, 3
        let t1 = e1;
        let t2 = em / self.vmax - beta * e1;
        let t3 = em / (2.0 * self.vmax * self.vmax) - beta * em / (2.0 * self.vmax)
            + beta * beta * e1 / 2.0;
        let tail = PI * t1 + self.c2 * t2 + self.c3 * t3;
        -(s / PI) * (body + tail)
    }

    /// (1/π)∫ s(λ) χ(λ) λ/(λ² + μ) dλ — the convergent low-frequency piece
    /// of the shifted exterior determinant — with the below-table stretch
    /// integrated against the residual model.
    fn chi_resolvent_term(&self, mu: f64) -> (f64, f64) {
        assert!(mu > 0.0);
        let mut acc = 0.0;
        let mut err = 0.0;
        for i in 0..self.v.len() {
            let lam = (-self.v[i]).exp();
            let frac = lam * lam / (lam * lam + mu);
            acc += self.w[i] * self.sphi[i] * self.chi[i] * frac;
            err += (self.w[i] * self.chi[i] * frac).abs() * self.s_err[i];
        }
        // below the table: s ≈ π/v + c₂/v² + c₃/v³ and χ ≡ 1
        let vcut = (0.5 * ((1.0 / mu).ln() + 46.0)).max(self.vmax * (1.0 + 1e-9));
        let mut tail = 0.0;
        let mut tail_err = 0.0;
        if vcut > self.vmax && (-2.0 * self.vmax).exp() > 0.0 {
            let (c2, c3) = (self.c2, self.c3);
            let mut f = |v: f64| {
                let l2 = (-2.0 * v).exp();
                (PI / v + c2 / (v * v) + c3 / (v * v * v)) * l2 / (l2 + mu)
            };
            let (tv, te) = analysis::adaptive_quad(&mut f, self.vmax, vcut, 1e-14);
            tail = tv;
            tail_err = te + self.model_rms * (tv.abs() / PI).max((-2.0 * self.vmax).exp() / mu);
        }
        ((acc + tail) / PI, (err + tail_err) / PI)
    }

    /// (1/π)∫ (s(λ) − π·ilg(λ)) χ(λ) dλ/λ: the phase with its reciprocal-log
    /// limit removed is integrable down to λ = 0, and χ kills the λ → 1 end.
    fn phase_deviation_term(&self) -> (f64, f64) {
        let mut acc = 0.0;
        let mut err = 0.0;
        for i in 0..self.v.len() {
            let dev = self.sphi[i] - PI / self.v[i];
            acc += self.w[i] * dev * self.chi[i];
            err += (self.w[i] * self.chi[i]).abs() * self.s_err[i];
        }
        let tail = self.c2 / self.vmax + self.c3 / (2.0 * self.vmax * self.vmax);
        ((acc + tail) / PI, (err + self.model_rms / self.vmax) / PI)
    }
}

// ---------------------------------------------------------------------------
// Mellin-ladder engine

/// Ladder exponents j (coefficient of t^{j/2}) and the Taylor order K_j of
/// e^{−μt} subtracted inside each incomplete moment so that the leftover
/// integral converges at s = 0. The (j, k) pairs (0, 0) and (−2, 1) both
/// land on the 1/s pole; they are excluded from the regular pole sum and
/// enter only through c₀ = b₀ − μ b₋₂.
const LADDER_J: [i32; 6] = [-2, -1, 0, 1, 2, 3];
const LADDER_K: [usize; 6] = [2, 1, 1, 0, 0, 0];

fn ladder(b: &[f64; 6], t: f64) -> f64 {
    let rt = t.sqrt();
    b[0] / t + b[1] / rt + b[2] + b[3] * rt + b[4] * t + b[5] * t * rt
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// e^{−x} minus its Taylor partial sum through order `kk`, evaluated without
/// cancellation for small x by summing the remainder series directly.
fn exp_taylor_rem(x: f64, kk: usize) -> f64 {
    if x < 0.9 {
        let mut lead = 1.0;
        for k in 1..=kk {
            lead *= -x / k as f64;
        }
        let mut sum = 0.0;
        let mut term = lead;
        let mut k = kk + 1;
        loop {
            term *= -x / k as f64;
            sum += term;
            if term.abs() < 1e-20 * (sum.abs() + 1e-300) || k > kk + 60 {
                break;
            }
            k += 1;
        }
        sum
    } else {
        let mut s = (-x).exp();
        let mut term = 1.0;
        s -= term;
        for k in 1..=kk {
            term *= -x / k as f64;
            s -= term;
        }
        s
    }
}

/// Incomplete moment N_j(s) = ∫₀^1 t^{s+j/2−1}[e^{−μt} − T_{K_j}(−μt)] dt,
/// the convergent leftover after the Taylor head of e^{−μt} moved into the
/// analytic pole terms. Evaluated adaptively in log t from the point where
/// the integrand drops below relative 1e-22.
fn nj_integral(j: i32, kk: usize, s: f64, mu: f64) -> (f64, f64) {
    if mu == 0.0 {
        return (0.0, 0.0);
    }
    let p = s + 0.5 * j as f64 + kk as f64 + 1.0;
    debug_assert!(p > 0.5);
    let u_lo = -(mu.max(1.0)).ln() - 51.0 / p;
    let q = s + 0.5 * j as f64;
    let mut f = |u: f64| {
        let t = u.exp();
        (q * u).exp() * exp_taylor_rem(mu * t, kk)
    };
    let scale = mu.powi(kk as i32 + 1) / (factorial(kk + 1) * p);
    let tol = 1e-13 * (1.0 + scale.abs());
    analysis::adaptive_quad(&mut f, u_lo, 0.0, tol)
}

/// Shared continuation engine: Mellin transform of a heat-type trace τ(t)
/// weighted by e^{−μt}, with the six-term short-time ladder subtracted on
/// (0, 1] and restored analytically. One build (trace evaluations on fixed
/// log-time grids, ladder fit, subtraction self-check) serves every (s, μ)
/// afterwards at the cost of two weighted sums.
struct MellinEngine {
    /// b_{−2} … b_3; the first three exact, the rest fitted
    b: [f64; 6],
    a_t: Vec<f64>,
    a_lnt: Vec<f64>,
    a_w: Vec<f64>,
    a_eta: Vec<f64>,
    f_t: Vec<f64>,
    f_lnt: Vec<f64>,
    f_w: Vec<f64>,
    f_tau: Vec<f64>,
    trace_err: f64,
    sub_err: f64,
    tail_err: f64,
    fit_rms: f64,
    detector: f64,
}

impl MellinEngine {
    /// Build from a trace evaluator returning (value, abs error). `exact`
    /// is the t^{−1}, t^{−1/2}, t⁰ ladder — it must come from geometry, not
    /// a fit (see the module notes on error amplification).
    fn build(
        trace: &mut dyn FnMut(f64) -> Result<(f64, f64), ZetaError>,
        exact: [f64; 3],
        t_lo: f64,
        fit_hi: f64,
        t_hi: f64,
    ) -> Result<MellinEngine, ZetaError> {
        assert!(t_lo > 0.0 && t_lo < fit_hi && t_hi > 1.0);
        let (a_lnt, a_w) = composite_gauss(t_lo.ln(), 0.0, PANEL_LN_T, PANEL_PTS_T);
        let (f_lnt, f_w) = composite_gauss(0.0, t_hi.ln(), PANEL_LN_T, PANEL_PTS_T);
        let a_t: Vec<f64> = a_lnt.iter().map(|u| u.exp()).collect();
        let f_t: Vec<f64> = f_lnt.iter().map(|u| u.exp()).collect();

        let mut a_tau = Vec::with_capacity(a_t.len());
        let mut trace_err = 0.0;
        for (&t, &w) in a_t.iter().zip(a_w.iter()) {
            let (v, e) = trace(t)?;
            a_tau.push(v);
            trace_err += w.abs() * e;
        }
        let mut f_tau = Vec::with_capacity(f_t.len());
        for (&t, &w) in f_t.iter().zip(f_w.iter()) {
            let (v, e) = trace(t)?;
            f_tau.push(v);
            trace_err += w.abs() * e;
        }

        // fit the half-power ladder above the exact trio on the window
        let fh = fit_hi.min(0.95);
        let mut tw = Vec::new();
        let mut yw = Vec::new();
        for i in 0..a_t.len() {
            let t = a_t[i];
            if t <= fh {
                tw.push(t);
                yw.push(a_tau[i] - exact[0] / t - exact[1] / t.sqrt() - exact[2]);
            }
        }
        let fit = analysis::fit_powers(&tw, &yw, &[0.5, 1.0, 1.5]);
        let b = [
            exact[0],
            exact[1],
            exact[2],
            fit.coeffs[0],
            fit.coeffs[1],
            fit.coeffs[2],
        ];
        let a_eta: Vec<f64> = a_t
            .iter()
            .zip(a_tau.iter())
            .map(|(&t, &tau)| tau - ladder(&b, t))
            .collect();

        // subtraction self-check in scaled time: a surviving constant means
        // the exact trio disagrees with the trace (the fitted entries cannot
        // absorb a t⁰ residue), and the Mellin continuation would inherit a
        // spurious 1/s. The t² and t^{5/2} columns soak up the genuine
        // next-order ladder so it does not masquerade as a constant.
        let mut cols = vec![Vec::new(), Vec::new(), Vec::new()];
        let mut res = Vec::new();
        for i in 0..a_t.len() {
            let t = a_t[i];
            if t <= fh {
                let ts = t / fh;
                cols[0].push(1.0);
                cols[1].push(ts * ts);
                cols[2].push(ts * ts * ts.sqrt());
                res.push(a_eta[i]);
            }
        }
        let probe = analysis::lstsq(&cols, &res);
        let detector = probe.coeffs[0];
        if detector.abs() > DETECTOR_GATE {
            return Err(ZetaError::SubtractionResidual { level: detector });
        }
        let b4 = probe.coeffs[1] / (fh * fh);

        // stub of the subtracted integrand below the window: the genuine
        // O(t²) remainder plus the fitted-coefficient uncertainties through
        // their convergent moments ∫₀^{t_lo} t^{j/2−1} dt = (2/j) t_lo^{j/2}
        let sub_err = b4.abs() * t_lo * t_lo / 2.0
            + fit.errors[0] * 2.0 * t_lo.sqrt()
            + fit.errors[1] * t_lo
            + fit.errors[2] * (2.0 / 3.0) * t_lo.powf(1.5)
            + detector.abs() * (1.0 / t_lo).ln();
        let tail_err = f_tau.last().map(|v| 2.0 * v.abs()).unwrap_or(0.0);

        Ok(MellinEngine {
            b,
            a_t,
            a_lnt,
            a_w,
            a_eta,
            f_t,
            f_lnt,
            f_w,
            f_tau,
            trace_err,
            sub_err,
            tail_err,
            fit_rms: fit.resid_rms,
            detector,
        })
    }

    fn base_err(&self) -> f64 {
        self.trace_err + self.sub_err + self.tail_err
    }

    /// Σ_j Σ_{k ≤ K_j} b_j (−μ)^k / (k! (s + j/2 + k)), optionally without
    /// the two pairs that sit on the s = 0 pole.
    fn pole_sum(&self, s: f64, mu: f64, exclude_singular: bool) -> f64 {
        let mut acc = 0.0;
        for (idx, &j) in LADDER_J.iter().enumerate() {
            let mut muk = 1.0;
            let mut fact = 1.0;
            for k in 0..=LADDER_K[idx] {
                if k > 0 {
                    muk *= -mu;
                    fact *= k as f64;
                }
                if exclude_singular && ((j == 0 && k == 0) || (j == -2 && k == 1)) {
                    continue;
                }
                acc += self.b[idx] * muk / (fact * (s + 0.5 * j as f64 + k as f64));
            }
        }
        acc
    }

    fn window_sum(&self, s: f64, mu: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.a_t.len() {
            acc += self.a_w[i] * (s * self.a_lnt[i] - mu * self.a_t[i]).exp() * self.a_eta[i];
        }
        acc
    }

    fn far_sum(&self, s: f64, mu: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.f_t.len() {
            acc += self.f_w[i] * (s * self.f_lnt[i] - mu * self.f_t[i]).exp() * self.f_tau[i];
        }
        acc
    }

    /// The continued zeta value ζ(s) = M(s)/Γ(s) for s < 0 away from the
    /// half-integer pole ladder.
    fn zeta(&self, s: f64, mu: f64) -> f64 {
        let mut m = self.window_sum(s, mu) + self.far_sum(s, mu) + self.pole_sum(s, mu, false);
        for (idx, &j) in LADDER_J.iter().enumerate() {
            let (nj, _) = nj_integral(j, LADDER_K[idx], s, mu);
            m += self.b[idx] * nj;
        }
        m / analysis::gamma(s)
    }

    /// −ζ′(0) assembled from the Laurent data of M(s) = ζ(s)Γ(s): with
    /// M(s) = c₀/s + H + O(s) and 1/Γ(s) = s + γs² + …, the derivative at
    /// zero is ζ′(0) = H + γc₀, where c₀ = b₀ − μ b₋₂ collects the two
    /// pole-pair terms and H is everything regular evaluated at s = 0.
    fn neg_zeta_prime0(&self, mu: f64) -> (f64, f64) {
        let c0 = self.b[2] - mu * self.b[0];
        let mut h = self.window_sum(0.0, mu) + self.far_sum(0.0, mu) + self.pole_sum(0.0, mu, true);
        let mut nj_err = 0.0;
        for (idx, &j) in LADDER_J.iter().enumerate() {
            let (nj, ne) = nj_integral(j, LADDER_K[idx], 0.0, mu);
            h += self.b[idx] * nj;
            nj_err += self.b[idx].abs() * ne;
        }
        let value = -analysis::EULER_GAMMA * c0 - h;
        (value, self.base_err() + nj_err)
    }
}

// ---------------------------------------------------------------------------
// engine builders for the three traces

/// Exact exterior ladder trio for a disc of radius r, in the σ-moment form
/// the regularized trace inherits from the phase's quadratic growth:
/// b_{−2} = −r²/4, b_{−1} = −√π r/4, b₀ = −1/6.
fn exterior_trio(r: f64) -> [f64; 3] {
    [-r * r / 4.0, -PI.sqrt() * r / 4.0, -1.0 / 6.0]
}

/// The exterior determinant routes are disc-scoped: check that the table's
/// own quadratic growth matches the disc of its stated radius before trusting
/// the exact ladder trio derived from that radius.
fn disc_weyl_guard(phase: &PhaseTable) -> Result<(), ZetaError> {
    let fit = phase.weyl_fit();
    let r = phase.radius;
    let want2 = 0.5 * PI * r * r;
    let want1 = PI * r;
    if (fit.sigma2 / want2 - 1.0).abs() > 2e-3 || (fit.sigma1 / want1 - 1.0).abs() > 5e-2 {
        return Err(ZetaError::TableNotDisc {
            expected: want2,
            got: fit.sigma2,
        });
    }
    Ok(())
}

fn mellin_window(phase: &PhaseTable) -> (f64, f64) {
    let r = phase.radius;
    let lmax = phase.lambda_max();
    let t_lo = (T_LO_UNIT * r * r).max(50.5 / (lmax * lmax));
    let fit_hi = (FIT_HI_UNIT * r * r).max(40.0 * t_lo).min(0.95);
    (t_lo, fit_hi)
}

/// Engine for the cutoff-complement trace e₂ (decay rate a² from the plateau
/// edge). Built once per (table, cutoff) pair; every μ and every s reuse it.
fn exterior_cutoff_engine(phase: &PhaseTable, chi: &CutoffSpec) -> Result<MellinEngine, ZetaError> {
    let nodes = OuterNodes::build(phase, chi)?;
    let (t_lo, fit_hi) = mellin_window(phase);
    let a = chi.plateau();
    let t_hi = 1.0 + 46.0 / (a * a);
    MellinEngine::build(
        &mut |t| Ok(nodes.e2_with_err(t)),
        exterior_trio(phase.radius),
        t_lo,
        fit_hi,
        t_hi,
    )
}

// ---------------------------------------------------------------------------
// public determinant operations

/// Determinant-grade scattering-phase table for a disc of radius r: deep
/// enough (λ down to 1e-24) that every low-frequency tail is carried by the
/// residual model to machine level, and dense enough (~200 nodes per decade)
/// that cubic interpolation stays below ~1e-10 relative. Memoized in-process
/// and through the optional disk cache.
pub fn det_table_disc(radius: f64) -> Result<PhaseTable, ZetaError> {
    assert!(radius > 0.0 && radius.is_finite());
    static MEMO: Lazy<Mutex<HashMap<u64, Arc<PhaseTable>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let key_bits = radius.to_bits();
    if let Some(t) = MEMO.lock().unwrap().get(&key_bits) {
        return Ok(t.as_ref().clone());
    }
    let lmin = 1e-24;
    let lmax = 420.0_f64.max(412.0 / radius);
    let n = ((lmax / lmin).ln() / 0.0051).ceil() as usize;
    let cache = DiskCache::from_env();
    let key = content_key(&[
        "det-disc-table",
        "v1",
        &format!("{radius:.17e}"),
        &format!("{lmax:.6e}"),
        &n.to_string(),
    ]);
    let table = if let Some(bytes) = cache.get(&key) {
        PhaseTable::read_csv(radius, &bytes[..])?
    } else {
        let t = PhaseTable::build_disc(radius, lmin, lmax, n)?;
        let mut buf = Vec::new();
        t.write_csv(&mut buf)?;
        cache.put(&key, &buf);
        t
    };
    MEMO.lock()
        .unwrap()
        .insert(key_bits, Arc::new(table.clone()));
    Ok(table)
}

/// −ζ₂′(0) at weight e^{−μt}: the heat-side half of the split determinant,
/// continued through the Mellin engine. Accepts μ = 0 because e₂ decays on
/// its own (the integrand's support starts at the plateau edge).
pub fn zeta2_prime0(
    phase: &PhaseTable,
    chi: &CutoffSpec,
    mu: f64,
) -> Result<(f64, f64), ZetaError> {
    if !(mu >= 0.0) {
        return Err(ZetaError::NegativeMu(mu));
    }
    disc_weyl_guard(phase)?;
    let eng = exterior_cutoff_engine(phase, chi)?;
    Ok(eng.neg_zeta_prime0(mu))
}

/// Split zeta value ζ_Ω(s) = ζ₁(s) + ζ₂(s) for s < 0 on the fit range.
pub fn zeta_omega(phase: &PhaseTable, chi: &CutoffSpec, s: f64) -> Result<f64, ZetaError> {
    disc_weyl_guard(phase)?;
    let low = LowNodes::build(phase, chi)?;
    let eng = exterior_cutoff_engine(phase, chi)?;
    Ok(low.zeta1(s) + eng.zeta(s, 0.0))
}

/// Small-s expansion data recovered by least squares on a grid of negative
/// s: ζ_Ω(s) ≈ a₀ + q·s·log(−s) + a₂·s + c·s²·log(−s).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZetaExpansion {
    pub a0: f64,
    /// Coefficient q of the s·log(−s) term; the continuation structure fixes
    /// it to 1, so recovering 1 ± 0.02 is a built-in self-test of the whole
    /// split pipeline.
    pub slog_coeff: f64,
    pub a2: f64,
    pub fit_residual: f64,
    pub s_grid: Vec<f64>,
}

/// The two independent evaluations of the modified exterior determinant.
#[derive(Clone, Debug)]
pub struct ExtDetMod {
    pub a2_fit: DetValue,
    pub closed_form: DetValue,
    pub expansion: ZetaExpansion,
}

/// Sign with which the Hadamard-regularized cutoff integral enters the
/// closed-form route. Fixed once by requiring agreement with the χ-free
/// a₂-fit route on the unit disc; both raw ingredients are logged in the
/// DetValue diagnostics so the convention stays auditable.
const HR_SIGN: f64 = 1.0;

fn fit_expansion(grid: &[f64], z: &[f64]) -> (analysis::FitResult, Vec<f64>) {
    let cols: Vec<Vec<f64>> = vec![
        grid.iter().map(|_| 1.0).collect(),
        grid.iter().map(|&s| s * (-s).ln()).collect(),
        grid.to_vec(),
        grid.iter().map(|&s| s * s * (-s).ln()).collect(),
    ];
    (analysis::lstsq(&cols, z), grid.to_vec())
}

/// Modified (zero-shift) exterior log-determinant of a disc, by two routes:
///
/// * `a2_fit`: evaluate ζ_Ω(s) on a log-spaced grid of negative s, fit the
///   small-s model, return −a₂. Cutoff-free by construction, so it serves
///   as the ground truth for sign conventions.
/// * `closed_form`: (γ + log 2) + HR-regularized cutoff integral
///   + (−ζ₂′(0)) + phase-deviation integral. Each ingredient is cheap and
///   separately auditable; the cutoff dependence cancels between the three
///   χ-aware terms.
pub fn log_det_ext_mod(phase: &PhaseTable, chi: &CutoffSpec) -> Result<ExtDetMod, ZetaError> {
    disc_weyl_guard(phase)?;
    let low = LowNodes::build(phase, chi)?;
    let eng = exterior_cutoff_engine(phase, chi)?;

    let zeta_at = |grid: &[f64]| -> Vec<f64> {
        grid.iter()
            .map(|&s| low.zeta1(s) + eng.zeta(s, 0.0))
            .collect()
    };
    let mut grid: Vec<f64> = analysis::logspace(0.01, 0.25, 24)
        .into_iter()
        .map(|x| -x)
        .collect();
    let mut z = zeta_at(&grid);
    let (mut fit, mut used_grid) = fit_expansion(&grid, &z);
    let mut widened = 0.0;
    if fit.resid_rms > 1e-4 {
        // NOTE: a residual above the model's own truncation scale means the
        // grid sits too close to s = 0 for the neglected orders; widen and
        // record that the first attempt was discarded.
        grid = analysis::logspace(0.005, 0.35, 32)
            .into_iter()
            .map(|x| -x)
            .collect();
        z = zeta_at(&grid);
        let out = fit_expansion(&grid, &z);
        fit = out.0;
        used_grid = out.1;
        widened = 1.0;
    }
    let expansion = ZetaExpansion {
        a0: fit.coeffs[0],
        slog_coeff: fit.coeffs[1],
        a2: fit.coeffs[2],
        fit_residual: fit.resid_rms,
        s_grid: used_grid,
    };

    let fit_err = 3.0 * fit.errors[2] + 2.0 * (eng.base_err() + low.model_rms);
    let a2_fit = DetValue::new(
        "exterior",
        0.0,
        DetMethod::A2Fit,
        -expansion.a2,
        fit_err,
    );
    let mut a2_fit = a2_fit;
    a2_fit.chi_a = Some(chi.plateau());
    let a2_fit = a2_fit
        .with_diagnostic("slog_coeff", expansion.slog_coeff)
        .with_diagnostic("fit_residual", expansion.fit_residual)
        .with_diagnostic("a0", expansion.a0)
        .with_diagnostic("grid_widened", widened);

    let (z2, z2e) = eng.neg_zeta_prime0(0.0);
    let rate = (1.0 - chi.plateau()) / 4.0;
    let chi_pushed = |al: f64| chi.chi((-1.0 / al).exp());
    let hr = hadamard::hr_integral(&chi_pushed, Tail::Exponential { rate })?;
    let (dev, dev_err) = low.phase_deviation_term();
    let value = analysis::EULER_GAMMA + std::f64::consts::LN_2 + HR_SIGN * hr.value + z2 + dev;
    let mut closed_form = DetValue::new(
        "exterior",
        0.0,
        DetMethod::ClosedForm,
        value,
        z2e + dev_err + hr.residual,
    );
    closed_form.chi_a = Some(chi.plateau());
    let closed_form = closed_form
        .with_diagnostic("hr_cutoff_integral", hr.value)
        .with_diagnostic("hr_sign", HR_SIGN)
        .with_diagnostic("zeta2_prime0", z2)
        .with_diagnostic("phase_deviation_term", dev);

    Ok(ExtDetMod {
        a2_fit,
        closed_form,
        expansion,
    })
}

/// Shifted exterior log-determinant log det(Δ_ext + μ), μ > 0: convergent
/// low-frequency resolvent integral plus the heat-side continuation at
/// weight e^{−μt}.
pub fn log_det_ext_mu(
    phase: &PhaseTable,
    chi: &CutoffSpec,
    mu: f64,
) -> Result<DetValue, ZetaError> {
    if !(mu > 0.0) {
        return Err(ZetaError::NonPositiveMu(mu));
    }
    disc_weyl_guard(phase)?;
    let low = LowNodes::build(phase, chi)?;
    let eng = exterior_cutoff_engine(phase, chi)?;
    let (chit, chit_err) = low.chi_resolvent_term(mu);
    let (z2, z2e) = eng.neg_zeta_prime0(mu);
    let mut out = DetValue::new(
        "exterior",
        mu,
        DetMethod::ClosedForm,
        chit + z2,
        chit_err + z2e,
    );
    out.chi_a = Some(chi.plateau());
    Ok(out
        .with_diagnostic("chi_resolvent_term", chit)
        .with_diagnostic("zeta2_prime0", z2))
}

/// Independent route to log det(Δ_ext + μ): Mellin transform of the full
/// regularized exterior trace times e^{−μt}, no cutoff anywhere. The trace
/// only decays like 1/log t, so the e^{−μt} weight is what makes the far
/// integral converge — μ must be strictly positive.
pub fn log_det_ext_mu_mellin(phase: &PhaseTable, mu: f64) -> Result<DetValue, ZetaError> {
    if !(mu > 0.0) {
        return Err(ZetaError::NonPositiveMu(mu));
    }
    disc_weyl_guard(phase)?;
    let (t_lo, fit_hi) = mellin_window(phase);
    let t_hi = 1.0 + 48.0 / mu;
    let eng = MellinEngine::build(
        &mut |t| heat::rtr_exterior_with_err(phase, t).map_err(ZetaError::from),
        exterior_trio(phase.radius),
        t_lo,
        fit_hi,
        t_hi,
    )?;
    let (v, e) = eng.neg_zeta_prime0(mu);
    Ok(DetValue::new("exterior", mu, DetMethod::Mellin, v, e)
        .with_diagnostic("ladder_fit_rms", eng.fit_rms)
        .with_diagnostic("subtraction_residue", eng.detector))
}

/// Interior disc log-determinant log det(Δ_int + μ), μ ≥ 0, via the Mellin
/// engine over the exact Dirichlet spectral sum.
pub fn log_det_int(curve: &ObstacleCurve, mu: f64) -> Result<DetValue, ZetaError> {
    if !(mu >= 0.0) {
        return Err(ZetaError::NegativeMu(mu));
    }
    let r = curve.as_disc().ok_or(ZetaError::Heat(HeatError::NotADisc))?;
    let inv = heat_invariants(curve, Side::Interior);
    let t_lo = T_LO_UNIT * r * r;
    let fit_hi = (FIT_HI_UNIT * r * r).max(40.0 * t_lo).min(0.95);
    // first Dirichlet eigenvalue (j_{0,1}/r)² sets the spectral gap
    let gap = 5.783185962946785 / (r * r);
    let t_hi = (1.0 + 48.0 / (gap + mu)).max(1.5);
    let eng = MellinEngine::build(
        &mut |t| heat::tr_interior_with_err(curve, t).map_err(ZetaError::from),
        [inv.a_minus2, inv.a_minus1, inv.a_0],
        t_lo,
        fit_hi,
        t_hi,
    )?;
    let (v, e) = eng.neg_zeta_prime0(mu);
    Ok(DetValue::new("interior", mu, DetMethod::Mellin, v, e)
        .with_diagnostic("ladder_fit_rms", eng.fit_rms)
        .with_diagnostic("subtraction_residue", eng.detector))
}

/// ∫₀^∞ e^{−μt}(rtr_ext(t) + tr_int(t)) dt for a disc: the combined trace is
/// integrable at t = 0 because the area terms cancel between the sides,
/// leaving a √t singularity handled by an exact error-function head. This is
/// the right-hand side of the μ-derivative identity
/// d/dμ[log det(Δ_ext+μ) + log det(Δ_int+μ)] = ∫ e^{−μt}(rtr + tr_int) dt.
pub fn resolvent_trace_integral(
    phase: &PhaseTable,
    curve: &ObstacleCurve,
    mu: f64,
) -> Result<(f64, f64), ZetaError> {
    if !(mu > 0.0) {
        return Err(ZetaError::NonPositiveMu(mu));
    }
    let r = curve.as_disc().ok_or(ZetaError::Heat(HeatError::NotADisc))?;
    if (phase.radius - r).abs() > 1e-12 * (1.0 + r) {
        return Err(ZetaError::RadiusMismatch {
            table: phase.radius,
            curve: r,
        });
    }
    disc_weyl_guard(phase)?;
    let (t_lo, _) = mellin_window(phase);
    let t_hi = 1.0 + 48.0 / mu;
    let (lnt, w) = composite_gauss(t_lo.ln(), t_hi.ln(), 0.3, 24);
    let mut body = 0.0;
    let mut err = 0.0;
    for (&u, &wi) in lnt.iter().zip(w.iter()) {
        let t = u.exp();
        let (re, ree) = heat::rtr_exterior_with_err(phase, t)?;
        let (ti, tie) = heat::tr_interior_with_err(curve, t)?;
        let damp = (-mu * t).exp() * t;
        body += wi * damp * (re + ti);
        err += (wi * damp).abs() * (ree + tie);
    }
    // exact head below the window: the combined ladder is b_{−1}^Σ/√t + O(√t)
    // with b_{−1}^Σ = −√π r/2, and ∫₀^{t_lo} t^{−1/2} e^{−μt} dt in closed
    // form through the regularized lower incomplete gamma
    let bm1 = -PI.sqrt() * r / 2.0;
    let p = 1.0 - analysis::gamma_q(0.5, mu * t_lo);
    let head = bm1 * (PI / mu).sqrt() * p;
    let head_err = 2.0 * t_lo.powf(1.5);
    Ok((head + body, err + head_err + 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath, dps 30: normalized bump tail integrals at plateau a = 0.3
    const CHI_REFS: &[(f64, f64)] = &[
        (0.4, 0.97467761780084632),
        (0.5, 0.83211290397938540),
        (0.65, 0.5),
        (0.8, 0.16788709602061460),
        (0.95, 0.0014304551697984824),
    ];

    #[test]
    fn frozen_bridge_values() {
        let c = CutoffSpec::new(0.3).unwrap();
        for &(lam, want) in CHI_REFS {
            let got = c.chi(lam);
            assert!((got - want).abs() <= 1e-12, "chi({lam}) = {got} vs {want}");
        }
        assert_eq!(c.chi(0.0), 1.0);
        assert_eq!(c.chi(0.3), 1.0);
        assert_eq!(c.chi(1.0), 0.0);
        assert_eq!(c.chi(1.2), 0.0);
    }

    #[test]
    fn monotone_and_bounded() {
        let c = CutoffSpec::new(0.4).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=440 {
            let lam = 1.1 * i as f64 / 440.0;
            let v = c.chi(lam);
            assert!((0.0..=1.0).contains(&v), "chi({lam}) = {v} out of [0,1]");
            assert!(v <= prev + 1e-14, "chi not monotone at {lam}");
            prev = v;
        }
    }

    #[test]
    fn bridge_antisymmetry() {
        // even bump ⇒ χ(m+d) + χ(m−d) = 1 about the bridge midpoint
        let c = CutoffSpec::new(0.3).unwrap();
        let m = 0.65;
        for d in [0.05, 0.1, 0.2, 0.3] {
            let s = c.chi(m + d) + c.chi(m - d);
            assert!((s - 1.0).abs() <= 1e-13, "antisymmetry at d={d}: {s}");
        }
    }

    #[test]
    fn flat_to_order_four_at_both_joints() {
        // derivatives through order 4 vanish at the joints iff the deviation
        // from the constant pieces is o(δ⁴); the bump bridge decays like
        // exp(−(1−a)/(4δ)), far below the δ⁵ gate at these probes
        let c = CutoffSpec::new(0.3).unwrap();
        for delta in [0.006f64, 0.0045] {
            let gate = delta.powi(5);
            let lo = (1.0 - c.chi(0.3 + delta)).abs();
            let hi = c.chi(1.0 - delta).abs();
            assert!(lo <= gate, "plateau joint: {lo} vs gate {gate}");
            assert!(hi <= gate, "support joint: {hi} vs gate {gate}");
        }
    }

    #[test]
    fn bad_plateau_rejected() {
        for a in [0.0, 1.0, -0.2, 2.0, f64::NAN] {
            assert!(CutoffSpec::new(a).is_err(), "plateau {a} accepted");
        }
    }

    // -- determinant machinery ---------------------------------------------

    fn unit_table() -> PhaseTable {
        det_table_disc(1.0).unwrap()
    }

    #[test]
    fn composite_panels_match_adaptive_quadrature() {
        // the fixed-panel spectral caches must reproduce an adaptive
        // reference on the least smooth integrand they carry (the phase
        // deviation times the cutoff, which dies essentially at v = 0)
        let phase = unit_table();
        let chi = CutoffSpec::new(0.3).unwrap();
        let low = LowNodes::build(&phase, &chi).unwrap();
        let (panel, _) = low.phase_deviation_term();
        let mut f = |v: f64| {
            if v <= 0.0 {
                return 0.0;
            }
            let lam = (-v).exp();
            let c = chi.chi(lam);
            if c == 0.0 {
                return 0.0;
            }
            (phase.interp(lam).unwrap() - PI / v) * c
        };
        let (body, _) = analysis::adaptive_quad(&mut f, 1e-6, low.vmax, 1e-11);
        let tail = low.c2 / low.vmax + low.c3 / (2.0 * low.vmax * low.vmax);
        let reference = (body + tail) / PI;
        assert!(
            (panel - reference).abs() <= 1e-9,
            "panel {panel} vs adaptive {reference}"
        );
    }

    #[test]
    fn cutoff_complement_trace_decays() {
        let phase = unit_table();
        let chi = CutoffSpec::new(0.3).unwrap();
        let nodes = OuterNodes::build(&phase, &chi).unwrap();
        let a2 = chi.plateau() * chi.plateau();
        let (e1, _) = nodes.e2_with_err(1.0);
        for t in [2.0, 5.0, 10.0, 25.0, 50.0] {
            let (v, _) = nodes.e2_with_err(t);
            let bound = 1.5 * e1.abs() * (-0.5 * a2 * (t - 1.0)).exp();
            assert!(v.abs() <= bound, "e2({t}) = {v} vs bound {bound}");
        }
    }

    #[test]
    fn heat_side_mu_continuity() {
        let phase = unit_table();
        let chi = CutoffSpec::new(0.3).unwrap();
        let (z0, _) = zeta2_prime0(&phase, &chi, 0.0).unwrap();
        let (z1, _) = zeta2_prime0(&phase, &chi, 1e-4).unwrap();
        assert!((z0 - z1).abs() <= 1e-3, "jump at mu=0: {z0} vs {z1}");
    }

    #[test]
    fn expansion_recovers_unit_slog_coefficient() {
        let phase = unit_table();
        let chi = CutoffSpec::new(0.4).unwrap();
        let out = log_det_ext_mod(&phase, &chi).unwrap();
        let e = &out.expansion;
        assert!(
            (e.slog_coeff - 1.0).abs() <= 0.02,
            "slog coefficient {} strays from 1",
            e.slog_coeff
        );
        assert!(
            e.fit_residual <= 1e-4,
            "fit residual {} beyond model truncation scale",
            e.fit_residual
        );
        assert!(
            (e.a0 + 1.0 / 6.0).abs() <= 2e-3,
            "a0 {} should approach -1/6",
            e.a0
        );
    }

    #[test]
    fn modified_det_routes_and_cutoffs_agree() {
        let phase = unit_table();
        let mut fits = Vec::new();
        let mut closed = Vec::new();
        for a in [0.3, 0.4, 0.5] {
            let chi = CutoffSpec::new(a).unwrap();
            let out = log_det_ext_mod(&phase, &chi).unwrap();
            fits.push(out.a2_fit.value);
            closed.push(out.closed_form.value);
        }
        for i in 1..3 {
            assert!(
                (fits[i] - fits[0]).abs() <= 1e-4,
                "a2-fit cutoff dependence: {fits:?}"
            );
            assert!(
                (closed[i] - closed[0]).abs() <= 1e-4,
                "closed-form cutoff dependence: {closed:?}"
            );
        }
        for i in 0..3 {
            assert!(
                (fits[i] - closed[i]).abs() <= 1e-3,
                "route disagreement at cutoff {i}: {} vs {}",
                fits[i],
                closed[i]
            );
        }
    }

    #[test]
    fn shifted_det_routes_agree_at_unit_mu() {
        let phase = unit_table();
        let chi = CutoffSpec::new(0.4).unwrap();
        let a = log_det_ext_mu(&phase, &chi, 1.0).unwrap();
        let b = log_det_ext_mu_mellin(&phase, 1.0).unwrap();
        assert!(
            (a.value - b.value).abs() <= 1e-5,
            "split {} vs direct Mellin {}",
            a.value,
            b.value
        );
    }

    #[test]
    fn shifted_det_cutoff_independent() {
        let phase = unit_table();
        let mut vals = Vec::new();
        for a in [0.3, 0.4, 0.5] {
            let chi = CutoffSpec::new(a).unwrap();
            vals.push(log_det_ext_mu(&phase, &chi, 0.7).unwrap().value);
        }
        for i in 1..3 {
            assert!(
                (vals[i] - vals[0]).abs() <= 1e-4,
                "cutoff dependence: {vals:?}"
            );
        }
    }

    #[test]
    fn shifted_det_small_mu_cauchy() {
        // value − log log μ^{−1/2} settles as μ → 0
        let phase = unit_table();
        let chi = CutoffSpec::new(0.4).unwrap();
        let reg = |mu: f64| {
            log_det_ext_mu(&phase, &chi, mu).unwrap().value - (0.5 * (1.0 / mu).ln()).ln()
        };
        let d1 = reg(1e-4);
        let d2 = reg(1e-6);
        let d3 = reg(1e-8);
        assert!((d1 - d2).abs() <= 5e-3, "1e-4 vs 1e-6: {d1} vs {d2}");
        assert!((d2 - d3).abs() <= 5e-3, "1e-6 vs 1e-8: {d2} vs {d3}");
    }

    #[test]
    fn shifted_det_large_mu_constant_vanishes() {
        // with the growing terms removed the remainder fits p₀ + p₁/√μ with
        // p₀ compatible with zero
        let phase = unit_table();
        let chi = CutoffSpec::new(0.4).unwrap();
        let mus = [10.0, 100.0, 1000.0];
        let mut y = Vec::new();
        for &mu in &mus {
            let v = log_det_ext_mu(&phase, &chi, mu).unwrap().value;
            let grown =
                0.25 * mu * (mu.ln() - 1.0) - 0.5 * PI * mu.sqrt() - mu.ln() / 6.0;
            y.push(v - grown);
        }
        let cols = vec![
            vec![1.0; 3],
            mus.iter().map(|m| 1.0 / m.sqrt()).collect::<Vec<_>>(),
        ];
        let fit = analysis::lstsq(&cols, &y);
        assert!(
            fit.coeffs[0].abs() <= 1e-2,
            "constant term {} should vanish (remainders {y:?})",
            fit.coeffs[0]
        );
    }

    #[test]
    fn interior_det_mu_continuity_and_scaling() {
        let disc = ObstacleCurve::disc(1.0);
        let v0 = log_det_int(&disc, 0.0).unwrap().value;
        let v1 = log_det_int(&disc, 1e-6).unwrap().value;
        assert!((v0 - v1).abs() <= 1e-5, "mu-continuity: {v0} vs {v1}");
        // eigenvalue scaling: radius 2 shifts the determinant by −(1/3)log 2
        let disc2 = ObstacleCurve::disc(2.0);
        let v2 = log_det_int(&disc2, 0.0).unwrap().value;
        let want = -(1.0 / 3.0) * std::f64::consts::LN_2;
        assert!(
            ((v2 - v0) - want).abs() <= 1e-3,
            "scaling defect: {} vs {want}",
            v2 - v0
        );
    }

    #[test]
    fn resolvent_identity_matches_finite_difference() {
        let phase = unit_table();
        let chi = CutoffSpec::new(0.4).unwrap();
        let disc = ObstacleCurve::disc(1.0);
        let h = 0.02;
        for mu in [0.5, 1.0, 2.0] {
            let total = |m: f64| {
                log_det_ext_mu(&phase, &chi, m).unwrap().value
                    + log_det_int(&disc, m).unwrap().value
            };
            let fd = (total(mu + h) - total(mu - h)) / (2.0 * h);
            let (rhs, rhs_err) = resolvent_trace_integral(&phase, &disc, mu).unwrap();
            assert!(
                (fd - rhs).abs() <= 1e-4 + rhs_err,
                "mu = {mu}: d/dmu {fd} vs trace integral {rhs} (err {rhs_err})"
            );
        }
    }

    #[test]
    fn subtraction_detector_fires_on_corrupted_ladder() {
        let disc = ObstacleCurve::disc(1.0);
        let inv = heat_invariants(&disc, Side::Interior);
        let bad = [inv.a_minus2, inv.a_minus1, inv.a_0 + 0.01];
        let out = MellinEngine::build(
            &mut |t| heat::tr_interior_with_err(&disc, t).map_err(ZetaError::from),
            bad,
            T_LO_UNIT,
            FIT_HI_UNIT,
            10.0,
        );
        match out {
            Err(ZetaError::SubtractionResidual { level }) => {
                assert!(
                    (level - 0.01).abs() <= 2e-3,
                    "detector level {level} should expose the 0.01 corruption"
                );
            }
            Err(e) => panic!("wrong error for corrupted ladder: {e}"),
            Ok(_) => panic!("corrupted ladder accepted"),
        }
    }

    #[test]
    fn domain_errors_are_rejected() {
        let phase = unit_table();
        let chi = CutoffSpec::new(0.4).unwrap();
        assert!(matches!(
            log_det_ext_mu(&phase, &chi, 0.0),
            Err(ZetaError::NonPositiveMu(_))
        ));
        assert!(matches!(
            log_det_ext_mu(&phase, &chi, -1.0),
            Err(ZetaError::NonPositiveMu(_))
        ));
        let disc = ObstacleCurve::disc(1.0);
        assert!(matches!(
            log_det_int(&disc, -0.5),
            Err(ZetaError::NegativeMu(_))
        ));
        let ellipse = ObstacleCurve::ellipse(1.0, 0.5);
        assert!(log_det_int(&ellipse, 0.0).is_err());
        // a table whose growth contradicts its stated radius is refused
        let mut doctored = PhaseTable::build_disc(1.0, 1e-4, 60.0, 800).unwrap();
        for s in doctored.s.iter_mut() {
            *s *= 1.3;
        }
        assert!(matches!(
            zeta2_prime0(&doctored, &chi, 0.0),
            Err(ZetaError::TableNotDisc { .. })
        ));
        // a shallow table cannot feed the low-frequency side
        let shallow = PhaseTable::build_disc(1.0, 1e-3, 60.0, 800).unwrap();
        assert!(matches!(
            log_det_ext_mod(&shallow, &chi),
            Err(ZetaError::TableStartsTooHigh { .. })
        ));
    }
}
