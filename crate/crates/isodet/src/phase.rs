//! Scattering-phase tables: storage, interpolation, large-λ quadratic fits,
//! and CSV serialization shared between the exact disc pipeline and the
//! boundary-integral solver.

use crate::disc::{self, PhaseSample};
use std::io::{BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PhaseError {
    #[error(transparent)]
    Disc(#[from] disc::DiscError),
    #[error("phase grid must be ascending with at least 8 points")]
    BadGrid,
    #[error("interpolation point {0} outside table range [{1}, {2}]")]
    OutOfRange(f64, f64, f64),
    #[error("csv parse error at line {0}: {1}")]
    Csv(usize, String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Quadratic large-λ growth s ≈ σ₂λ² + σ₁λ + σ₀ fitted on the table top.
#[derive(Clone, Copy, Debug)]
pub struct WeylFit {
    pub sigma2: f64,
    pub sigma1: f64,
    pub sigma0: f64,
    pub resid_rms: f64,
}

impl WeylFit {
    pub fn eval(&self, lambda: f64) -> f64 {
        (self.sigma2 * lambda + self.sigma1) * lambda + self.sigma0
    }
}

/// Tabulated scattering phase s(λ) on an ascending grid with per-row
/// truncation orders and error estimates.
#[derive(Clone, Debug)]
pub struct PhaseTable {
    pub radius: f64,
    pub grid: Vec<f64>,
    pub s: Vec<f64>,
    pub err: Vec<f64>,
    pub trunc_orders: Vec<usize>,
}

impl PhaseTable {
    pub fn from_samples(radius: f64, samples: &[PhaseSample]) -> Result<Self, PhaseError> {
        let t = PhaseTable {
            radius,
            grid: samples.iter().map(|p| p.lambda).collect(),
            s: samples.iter().map(|p| p.s).collect(),
            err: samples.iter().map(|p| p.err_estimate).collect(),
            trunc_orders: samples.iter().map(|p| p.trunc_order).collect(),
        };
        t.check()?;
        Ok(t)
    }

    /// Exact disc table on a log-spaced grid (one branch march overall).
    pub fn build_disc(
        radius: f64,
        lambda_min: f64,
        lambda_max: f64,
        n: usize,
    ) -> Result<Self, PhaseError> {
        if n < 8 || !(lambda_min > 0.0) || lambda_max <= lambda_min {
            return Err(PhaseError::BadGrid);
        }
        let grid = crate::analysis::logspace(lambda_min, lambda_max, n);
        let samples = disc::scattering_phase_disc_batch(radius, &grid)?;
        Self::from_samples(radius, &samples)
    }

    fn check(&self) -> Result<(), PhaseError> {
        let n = self.grid.len();
        if n < 8
            || self.s.len() != n
            || self.err.len() != n
            || self.trunc_orders.len() != n
            || self.grid[0] <= 0.0
            || self.grid.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(PhaseError::BadGrid);
        }
        Ok(())
    }

    pub fn lambda_min(&self) -> f64 {
        self.grid[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// Cubic Lagrange interpolation through the four nearest nodes in
    /// (log λ, s); the log abscissa matches the log-spaced grids used
    /// throughout and keeps the stencil well conditioned across decades.
    pub fn interp(&self, lambda: f64) -> Result<f64, PhaseError> {
        let n = self.grid.len();
        if lambda < self.grid[0] || lambda > self.grid[n - 1] {
            return Err(PhaseError::OutOfRange(lambda, self.grid[0], self.grid[n - 1]));
        }
        let idx = self
            .grid
            .partition_point(|&g| g <= lambda)
            .saturating_sub(1)
            .min(n - 2);
        let lo = idx.saturating_sub(1).min(n - 4);
        let xs: Vec<f64> = (lo..lo + 4).map(|i| self.grid[i].ln()).collect();
        let x = lambda.ln();
        let mut acc = 0.0;
        for i in 0..4 {
            let mut w = self.s[lo + i];
            for j in 0..4 {
                if i != j {
                    w *= (x - xs[j]) / (xs[i] - xs[j]);
                }
            }
            acc += w;
        }
        Ok(acc)
    }

    /// Interpolated per-row error estimate (nearest node, conservative).
    pub fn err_at(&self, lambda: f64) -> f64 {
        let idx = self
            .grid
            .partition_point(|&g| g <= lambda)
            .min(self.grid.len() - 1);
        self.err[idx.saturating_sub(1)].max(self.err[idx])
    }

    /// Fit the quadratic Weyl growth on the top of the table (λ ≥ 0.6·λ_max).
    pub fn weyl_fit(&self) -> WeylFit {
        let cut = 0.6 * self.lambda_max();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, &l) in self.grid.iter().enumerate() {
            if l >= cut {
                xs.push(l);
                ys.push(self.s[i]);
            }
        }
        // guarantee enough points even on coarse grids
        if xs.len() < 8 {
            let n = self.grid.len();
            let take = 8.min(n);
            xs = self.grid[n - take..].to_vec();
            ys = self.s[n - take..].to_vec();
        }
        let fit = crate::analysis::fit_powers(&xs, &ys, &[2.0, 1.0, 0.0]);
        WeylFit {
            sigma2: fit.coeffs[0],
            sigma1: fit.coeffs[1],
            sigma0: fit.coeffs[2],
            resid_rms: fit.resid_rms,
        }
    }

    /// Extend the table with synthetic Weyl-fit rows up to `lambda_max`.
    /// Synthetic rows carry inflated error estimates (fit residual plus a
    /// 1/λ envelope for the first neglected correction) so downstream
    /// consumers can see they are extrapolated.
    pub fn extend_weyl(&self, lambda_max: f64, n_extra: usize) -> Result<Self, PhaseError> {
        if lambda_max <= self.lambda_max() || n_extra == 0 {
            return Ok(self.clone());
        }
        let fit = self.weyl_fit();
        let mut out = self.clone();
        let l0 = self.lambda_max();
        let ratio = lambda_max / l0;
        for k in 1..=n_extra {
            let l = l0 * ratio.powf(k as f64 / n_extra as f64);
            out.grid.push(l);
            out.s.push(fit.eval(l));
            out.err.push(2.0 * fit.resid_rms + 1.0 / l);
            out.trunc_orders.push(0);
        }
        out.check()?;
        Ok(out)
    }

    /// Branch-continuity audit: max over grid cells of the cell increment's
    /// deviation from the table's own Weyl-fit increment, in units of π.
    /// A branch slip is an exact π jump (ratio ≥ ~1); a continuous table
    /// stays well below 1 at every λ, because the deviation is only the
    /// sub-leading drift of the phase around its quadratic growth.
    pub fn continuity_ratio(&self) -> f64 {
        let fit = self.weyl_fit();
        let mut worst = 0.0f64;
        for i in 0..self.grid.len() - 1 {
            let ds = self.s[i + 1] - self.s[i];
            let dfit = fit.eval(self.grid[i + 1]) - fit.eval(self.grid[i]);
            worst = worst.max((ds - dfit).abs() / std::f64::consts::PI);
        }
        worst
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), PhaseError> {
        writeln!(w, "lambda,s,err,N")?;
        for i in 0..self.grid.len() {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{}",
                self.grid[i], self.s[i], self.err[i], self.trunc_orders[i]
            )?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(radius: f64, r: R) -> Result<Self, PhaseError> {
        let mut grid = Vec::new();
        let mut s = Vec::new();
        let mut err = Vec::new();
        let mut trunc = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            if i == 0 {
                if line.trim() != "lambda,s,err,N" {
                    return Err(PhaseError::Csv(1, "bad header".into()));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 4 {
                return Err(PhaseError::Csv(i + 1, "expected 4 fields".into()));
            }
            grid.push(f[0].parse().map_err(|e| PhaseError::Csv(i + 1, format!("{e}")))?);
            s.push(f[1].parse().map_err(|e| PhaseError::Csv(i + 1, format!("{e}")))?);
            err.push(f[2].parse().map_err(|e| PhaseError::Csv(i + 1, format!("{e}")))?);
            trunc.push(f[3].parse().map_err(|e| PhaseError::Csv(i + 1, format!("{e}")))?);
        }
        let t = PhaseTable {
            radius,
            grid,
            s,
            err,
            trunc_orders: trunc,
        };
        t.check()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_table_continuity() {
        let t = PhaseTable::build_disc(1.0, 1e-4, 20.0, 400).unwrap();
        // continuous table: cell increments track the Weyl fit to a few
        // percent of π; a single branch slip would push the ratio past 1
        assert!(t.continuity_ratio() < 0.25, "ratio {}", t.continuity_ratio());
    }

    #[test]
    fn interp_reproduces_nodes_and_midpoints() {
        let t = PhaseTable::build_disc(1.0, 1e-3, 10.0, 2000).unwrap();
        for &l in &[t.grid[0], t.grid[17], t.grid[1999]] {
            assert!((t.interp(l).unwrap() - t.s[t.grid.iter().position(|&g| g == l).unwrap()]).abs() < 1e-12);
        }
        for l in [0.0137, 0.9, 4.4] {
            let exact = crate::disc::scattering_phase_disc(1.0, l).unwrap().s;
            let got = t.interp(l).unwrap();
            assert!(
                (got - exact).abs() <= 1e-8 * exact.abs().max(1.0),
                "lambda {l}: {got} vs {exact}"
            );
        }
        assert!(t.interp(1e-4).is_err());
        assert!(t.interp(11.0).is_err());
    }

    #[test]
    fn weyl_fit_recovers_disc_growth() {
        let t = PhaseTable::build_disc(1.0, 0.1, 40.0, 500).unwrap();
        let f = t.weyl_fit();
        assert!(
            (f.sigma2 - 0.5 * std::f64::consts::PI).abs() < 1e-4,
            "sigma2 {}",
            f.sigma2
        );
        assert!(
            (f.sigma1 - std::f64::consts::PI).abs() < 2e-3,
            "sigma1 {}",
            f.sigma1
        );
        assert!(f.sigma0.abs() < 2.0, "sigma0 {}", f.sigma0);
        // the 1/λ correction (~0.05/λ on the fit window) sets the residual
        assert!(f.resid_rms < 1e-3);
    }

    #[test]
    fn weyl_extension_tracks_exact_phase() {
        let base = PhaseTable::build_disc(1.0, 0.1, 40.0, 500).unwrap();
        let ext = base.extend_weyl(80.0, 60).unwrap();
        assert!(ext.lambda_max() >= 80.0 * (1.0 - 1e-12));
        let exact = crate::disc::scattering_phase_disc(1.0, 70.0).unwrap().s;
        let got = ext.interp(70.0).unwrap();
        // extrapolation is good to the first neglected Weyl correction
        assert!(
            (got - exact).abs() <= 0.05,
            "extended {got} vs exact {exact}"
        );
        // synthetic rows advertise their nature through inflated errors
        let last_err = *ext.err.last().unwrap();
        assert!(last_err > 1e-3 * 1.0 / 80.0);
    }

    #[test]
    fn csv_roundtrip_identical() {
        let t = PhaseTable::build_disc(1.0, 1e-3, 5.0, 64).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let back = PhaseTable::read_csv(1.0, &buf[..]).unwrap();
        assert_eq!(t.grid, back.grid);
        assert_eq!(t.s, back.s);
        assert_eq!(t.err, back.err);
        assert_eq!(t.trunc_orders, back.trunc_orders);
        // and the serialization itself is byte-stable
        let mut buf2 = Vec::new();
        back.write_csv(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(PhaseTable::build_disc(1.0, 1.0, 0.5, 100).is_err());
        assert!(PhaseTable::build_disc(1.0, 1e-3, 10.0, 4).is_err());
        let bad = "lambda,s,err,N\n1.0,2.0,0.0\n";
        assert!(PhaseTable::read_csv(1.0, bad.as_bytes()).is_err());
    }
}
