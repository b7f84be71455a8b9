//! Obstacle boundary curves and their geometric functionals.
//!
//! Curves are truncated Fourier series of the parametrization
//! p(θ) = (Re Σ c^x_m e^{imθ}, Re Σ c^y_m e^{imθ}), m = 0..deg ≤ 64.
//! Length/area/curvature integrals use the periodic trapezoid rule, which is
//! spectrally accurate for analytic parametrizations.

use num_complex::Complex64;
use once_cell::sync::OnceCell;
use thiserror::Error;

pub const MAX_FOURIER_DEGREE: usize = 64;

/// Grid used for all curve quadratures; > 2·MAX_FOURIER_DEGREE with a large
/// margin so trapezoid sums of analytic integrands converge past 1e-12.
const QUAD_N: usize = 2048;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("curve parse error: {0}")]
    Parse(String),
    #[error("Fourier degree {0} exceeds the supported maximum {MAX_FOURIER_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("curve is self-intersecting")]
    SelfIntersecting,
    #[error("degenerate curve: {0}")]
    Degenerate(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurveKind {
    Disc { radius: f64 },
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Interior,
    ExteriorRegularized,
}

/// Heat-expansion ladder coefficients of t^{-1}, t^{-1/2}, 1, t^{1/2}.
#[derive(Clone, Copy, Debug)]
pub struct HeatInvariants {
    pub a_minus2: f64,
    pub a_minus1: f64,
    pub a_0: f64,
    pub a_1: f64,
    pub side: Side,
}

pub struct CurveMetrics {
    pub length: f64,
    pub area: f64,
    /// curvature at the uniform θ-grid points
    pub curvature: Vec<f64>,
    /// |p'(θ)| at the same grid
    pub speed: Vec<f64>,
    /// ∫ k(s)² ds
    pub k2_integral: f64,
    pub centroid: (f64, f64),
    pub circumradius: f64,
}

pub struct ObstacleCurve {
    kind: CurveKind,
    cx: Vec<Complex64>,
    cy: Vec<Complex64>,
    metrics: OnceCell<CurveMetrics>,
}

impl Clone for ObstacleCurve {
    fn clone(&self) -> Self {
        ObstacleCurve {
            kind: self.kind,
            cx: self.cx.clone(),
            cy: self.cy.clone(),
            metrics: OnceCell::new(),
        }
    }
}

impl std::fmt::Debug for ObstacleCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ObstacleCurve({:?}, deg {})", self.kind, self.cx.len() - 1)
    }
}

impl ObstacleCurve {
    pub fn disc(radius: f64) -> Self {
        assert!(radius > 0.0);
        let cx = vec![Complex64::new(0.0, 0.0), Complex64::new(radius, 0.0)];
        let cy = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -radius)];
        ObstacleCurve {
            kind: CurveKind::Disc { radius },
            cx,
            cy,
            metrics: OnceCell::new(),
        }
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0);
        let cx = vec![Complex64::new(0.0, 0.0), Complex64::new(a, 0.0)];
        let cy = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -b)];
        ObstacleCurve {
            kind: CurveKind::General,
            cx,
            cy,
            metrics: OnceCell::new(),
        }
    }

    /// Star-shaped boundary r(θ) = r0·(1 + Σ eps_k·cos(k θ)); handy test-shape
    /// generator (the radial harmonics land on Fourier modes k±1 of x, y).
    pub fn star(r0: f64, harmonics: &[(u32, f64)]) -> Result<Self, GeometryError> {
        let mut deg = 1;
        for &(k, _) in harmonics {
            deg = deg.max(k as usize + 1);
        }
        if deg > MAX_FOURIER_DEGREE {
            return Err(GeometryError::DegreeTooHigh(deg));
        }
        let mut cx = vec![Complex64::new(0.0, 0.0); deg + 1];
        let mut cy = vec![Complex64::new(0.0, 0.0); deg + 1];
        cx[1] = Complex64::new(r0, 0.0);
        cy[1] = Complex64::new(0.0, -r0);
        for &(k, eps) in harmonics {
            let k = k as usize;
            // r0·eps·cos kθ·cosθ = (r0 eps/2)(cos(k+1)θ + cos(k-1)θ), same for sin
            let half = Complex64::new(0.5 * r0 * eps, 0.0);
            cx[k + 1] += half;
            cy[k + 1] += Complex64::new(0.0, -0.5 * r0 * eps);
            if k >= 1 {
                if k == 1 {
                    // cos 0θ term for x; sin 0θ vanishes for y
                    cx[0] += half;
                } else {
                    // cos kθ·sinθ = (sin(k+1)θ - sin(k-1)θ)/2: the lower
                    // sideband enters with opposite sign
                    cx[k - 1] += half;
                    cy[k - 1] += Complex64::new(0.0, 0.5 * r0 * eps);
                }
            }
        }
        Self::from_fourier(cx, cy)
    }

    /// Build from Fourier coefficients (m = index), validating shape sanity.
    pub fn from_fourier(
        cx: Vec<Complex64>,
        cy: Vec<Complex64>,
    ) -> Result<Self, GeometryError> {
        let deg = cx.len().max(cy.len()).saturating_sub(1);
        if deg > MAX_FOURIER_DEGREE {
            return Err(GeometryError::DegreeTooHigh(deg));
        }
        let mut cx = cx;
        let mut cy = cy;
        cx.resize(deg + 1, Complex64::new(0.0, 0.0));
        cy.resize(deg + 1, Complex64::new(0.0, 0.0));
        let mut curve = ObstacleCurve {
            kind: CurveKind::General,
            cx,
            cy,
            metrics: OnceCell::new(),
        };
        curve.validate()?;
        Ok(curve)
    }

    /// Parse the plain-text curve format: one `disc r` shorthand line, or
    /// records `m, Re(x_m), Im(x_m), Re(y_m), Im(y_m)`. Blank lines and
    /// #-comments are skipped.
    pub fn parse(text: &str) -> Result<Self, GeometryError> {
        let mut records: Vec<(usize, Complex64, Complex64)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("disc") {
                let r: f64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| GeometryError::Parse(format!("line {}: bad disc radius", lineno + 1)))?;
                if r <= 0.0 {
                    return Err(GeometryError::Parse(format!(
                        "line {}: disc radius must be positive",
                        lineno + 1
                    )));
                }
                return Ok(Self::disc(r));
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 5 {
                return Err(GeometryError::Parse(format!(
                    "line {}: expected `m, Re(x_m), Im(x_m), Re(y_m), Im(y_m)`",
                    lineno + 1
                )));
            }
            let m: i64 = fields[0]
                .parse()
                .map_err(|_| GeometryError::Parse(format!("line {}: bad mode index", lineno + 1)))?;
            if m < 0 {
                return Err(GeometryError::Parse(format!(
                    "line {}: negative modes are implicit (real-part convention)",
                    lineno + 1
                )));
            }
            let mut vals = [0.0f64; 4];
            for (i, v) in vals.iter_mut().enumerate() {
                *v = fields[i + 1].parse().map_err(|_| {
                    GeometryError::Parse(format!("line {}: bad float `{}`", lineno + 1, fields[i + 1]))
                })?;
            }
            records.push((
                m as usize,
                Complex64::new(vals[0], vals[1]),
                Complex64::new(vals[2], vals[3]),
            ));
        }
        if records.is_empty() {
            return Err(GeometryError::Parse("no coefficient records found".into()));
        }
        let deg = records.iter().map(|r| r.0).max().unwrap();
        let mut cx = vec![Complex64::new(0.0, 0.0); deg + 1];
        let mut cy = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (m, x, y) in records {
            cx[m] += x;
            cy[m] += y;
        }
        Self::from_fourier(cx, cy)
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Some(radius) when the curve is an exact disc (origin-centered mode-1
    /// circle), which unlocks the exact Bessel pipelines.
    pub fn as_disc(&self) -> Option<f64> {
        if let CurveKind::Disc { radius } = self.kind {
            return Some(radius);
        }
        None
    }

    pub fn point(&self, theta: f64) -> (f64, f64) {
        let e = Complex64::new(0.0, theta).exp();
        let mut zx = Complex64::new(0.0, 0.0);
        let mut zy = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for m in 0..self.cx.len() {
            zx += self.cx[m] * pw;
            zy += self.cy[m] * pw;
            pw *= e;
        }
        (zx.re, zy.re)
    }

    pub fn derivative(&self, theta: f64) -> (f64, f64) {
        let e = Complex64::new(0.0, theta).exp();
        let mut zx = Complex64::new(0.0, 0.0);
        let mut zy = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for m in 0..self.cx.len() {
            let im = Complex64::new(0.0, m as f64);
            zx += self.cx[m] * im * pw;
            zy += self.cy[m] * im * pw;
            pw *= e;
        }
        (zx.re, zy.re)
    }

    pub fn second_derivative(&self, theta: f64) -> (f64, f64) {
        let e = Complex64::new(0.0, theta).exp();
        let mut zx = Complex64::new(0.0, 0.0);
        let mut zy = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for m in 0..self.cx.len() {
            let mm = -((m * m) as f64);
            zx += self.cx[m] * mm * pw;
            zy += self.cy[m] * mm * pw;
            pw *= e;
        }
        (zx.re, zy.re)
    }

    fn validate(&mut self) -> Result<(), GeometryError> {
        // orientation: flip to counterclockwise if needed (conjugating the
        // coefficients reverses the parametrization direction)
        if self.signed_area() < 0.0 {
            for c in self.cx.iter_mut() {
                *c = c.conj();
            }
            for c in self.cy.iter_mut() {
                *c = c.conj();
            }
        }
        let m = self.compute_metrics();
        if !(m.length > 0.0) || !(m.area > 1e-12) {
            return Err(GeometryError::Degenerate(format!(
                "L = {}, A = {}",
                m.length, m.area
            )));
        }
        if m.speed.iter().any(|&s| s < 1e-9 * m.length) {
            return Err(GeometryError::Degenerate(
                "parametrization speed vanishes".into(),
            ));
        }
        if m.length * m.length < 4.0 * std::f64::consts::PI * m.area * (1.0 - 1e-9) {
            return Err(GeometryError::Degenerate(
                "isoperimetric inequality violated".into(),
            ));
        }
        if self.self_intersects() {
            return Err(GeometryError::SelfIntersecting);
        }
        self.metrics.set(m).ok();
        Ok(())
    }

    fn signed_area(&self) -> f64 {
        let mut a = 0.0;
        for i in 0..QUAD_N {
            let th = 2.0 * std::f64::consts::PI * i as f64 / QUAD_N as f64;
            let (x, y) = self.point(th);
            let (dx, dy) = self.derivative(th);
            a += x * dy - y * dx;
        }
        0.5 * a * 2.0 * std::f64::consts::PI / QUAD_N as f64
    }

    /// Segment-crossing test on a polygonal refinement of the curve.
    fn self_intersects(&self) -> bool {
        let n = 512;
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|i| self.point(2.0 * std::f64::consts::PI * i as f64 / n as f64))
            .collect();
        let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
        let crosses = |a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)| {
            let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
                (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
            };
            let (o1, o2) = (orient(a, b, c), orient(a, b, d));
            let (o3, o4) = (orient(c, d, a), orient(c, d, b));
            o1 * o2 < 0.0 && o3 * o4 < 0.0
        };
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue; // adjacent around the seam
                }
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                if crosses(a, b, c, d) {
                    return true;
                }
            }
        }
        false
    }

    fn compute_metrics(&self) -> CurveMetrics {
        let n = QUAD_N;
        let dt = 2.0 * std::f64::consts::PI / n as f64;
        let mut length = 0.0;
        let mut area = 0.0;
        let mut k2 = 0.0;
        let mut speed = Vec::with_capacity(n);
        let mut curvature = Vec::with_capacity(n);
        let (mut cx_acc, mut cy_acc) = (0.0, 0.0);
        let mut circ: f64 = 0.0;
        for i in 0..n {
            let th = i as f64 * dt;
            let (x, y) = self.point(th);
            let (dx, dy) = self.derivative(th);
            let (ddx, ddy) = self.second_derivative(th);
            let sp = (dx * dx + dy * dy).sqrt();
            let k = (dx * ddy - dy * ddx) / (sp * sp * sp);
            length += sp;
            area += x * dy - y * dx;
            k2 += k * k * sp;
            cx_acc += x * sp;
            cy_acc += y * sp;
            circ = circ.max((x * x + y * y).sqrt());
            speed.push(sp);
            curvature.push(k);
        }
        length *= dt;
        area *= 0.5 * dt;
        k2 *= dt;
        CurveMetrics {
            length,
            area,
            curvature,
            k2_integral: k2,
            centroid: (cx_acc * dt / length, cy_acc * dt / length),
            circumradius: circ,
            speed,
        }
    }

    pub fn metrics(&self) -> &CurveMetrics {
        self.metrics.get_or_init(|| self.compute_metrics())
    }

    pub fn length(&self) -> f64 {
        self.metrics().length
    }

    pub fn area(&self) -> f64 {
        self.metrics().area
    }

    /// max |p(θ)|: radius of the smallest origin-centered enclosing circle
    /// (the shipped shapes are star-shaped about the origin).
    pub fn circumradius(&self) -> f64 {
        self.metrics().circumradius
    }

    /// Curvature resampled at `n` equal-arclength stations.
    pub fn curvature_by_arclength(&self, n: usize) -> Vec<f64> {
        let m = self.metrics();
        let grid_n = m.speed.len();
        let dt = 2.0 * std::f64::consts::PI / grid_n as f64;
        // cumulative arclength at grid nodes (trapezoid)
        let mut cum = Vec::with_capacity(grid_n + 1);
        cum.push(0.0);
        for i in 0..grid_n {
            let nxt = m.speed[(i + 1) % grid_n];
            cum.push(cum[i] + 0.5 * (m.speed[i] + nxt) * dt);
        }
        let total = cum[grid_n];
        (0..n)
            .map(|j| {
                let target = total * j as f64 / n as f64;
                let idx = cum.partition_point(|&c| c <= target).saturating_sub(1);
                let idx = idx.min(grid_n - 1);
                let frac = (target - cum[idx]) / (cum[idx + 1] - cum[idx]).max(1e-300);
                let k0 = m.curvature[idx];
                let k1 = m.curvature[(idx + 1) % grid_n];
                k0 + frac * (k1 - k0)
            })
            .collect()
    }

    /// Monte-Carlo-free inradius estimate: max over an interior sample grid
    /// of the distance to a polygonal refinement of the boundary.
    pub fn inradius_estimate(&self) -> f64 {
        let nb = 1024;
        let pts: Vec<(f64, f64)> = (0..nb)
            .map(|i| self.point(2.0 * std::f64::consts::PI * i as f64 / nb as f64))
            .collect();
        let (xmin, xmax) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
        let (ymin, ymax) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
        let inside = |x: f64, y: f64| {
            // winding by ray casting against the polygon
            let mut cnt = 0;
            for i in 0..nb {
                let (x1, y1) = pts[i];
                let (x2, y2) = pts[(i + 1) % nb];
                if (y1 > y) != (y2 > y) {
                    let t = (y - y1) / (y2 - y1);
                    if x1 + t * (x2 - x1) > x {
                        cnt += 1;
                    }
                }
            }
            cnt % 2 == 1
        };
        let dist = |x: f64, y: f64| {
            let mut d2 = f64::INFINITY;
            for i in 0..nb {
                let (x1, y1) = pts[i];
                let (x2, y2) = pts[(i + 1) % nb];
                let (ex, ey) = (x2 - x1, y2 - y1);
                let t = (((x - x1) * ex + (y - y1) * ey) / (ex * ex + ey * ey)).clamp(0.0, 1.0);
                let (px, py) = (x1 + t * ex - x, y1 + t * ey - y);
                d2 = d2.min(px * px + py * py);
            }
            d2.sqrt()
        };
        let g = 140;
        let mut best = 0.0f64;
        for i in 0..g {
            for j in 0..g {
                let x = xmin + (xmax - xmin) * (i as f64 + 0.5) / g as f64;
                let y = ymin + (ymax - ymin) * (j as f64 + 0.5) / g as f64;
                if inside(x, y) {
                    best = best.max(dist(x, y));
                }
            }
        }
        best
    }
}

/// (L, A, curvature at 512 equal-arclength stations).
pub fn curve_metrics(curve: &ObstacleCurve) -> (f64, f64, Vec<f64>) {
    let m = curve.metrics();
    (m.length, m.area, curve.curvature_by_arclength(512))
}

/// Inradius lower bound 2A/(25πL) for a bounded simply connected plane
/// domain of area A and boundary length L.
pub fn inradius_lower_bound(area: f64, length: f64) -> f64 {
    assert!(area > 0.0 && length > 0.0);
    2.0 * area / (25.0 * std::f64::consts::PI * length)
}

/// Heat-ladder coefficients for the interior or regularized-exterior trace.
/// The t^{1/2} curvature coefficient is calibrated once from the interior
/// disc fit (see the heat module) rather than hard-coded.
pub fn heat_invariants(curve: &ObstacleCurve, side: Side) -> HeatInvariants {
    let m = curve.metrics();
    let c1 = crate::heat::curvature_coefficient();
    let a_minus2 = m.area / (4.0 * std::f64::consts::PI);
    let a_minus1 = -m.length / (8.0 * std::f64::consts::PI.sqrt());
    let a1 = c1 * m.k2_integral;
    match side {
        Side::Interior => HeatInvariants {
            a_minus2,
            a_minus1,
            a_0: 1.0 / 6.0,
            a_1: a1,
            side,
        },
        // NOTE: the exterior sign pattern (flip of the even-ladder entries,
        // boundary term unchanged) is what the regularized-trace fits select;
        // the heat tests validate it rather than assuming it.
        Side::ExteriorRegularized => HeatInvariants {
            a_minus2: -a_minus2,
            a_minus1,
            a_0: -1.0 / 6.0,
            a_1: -a1,
            side,
        },
    }
}
