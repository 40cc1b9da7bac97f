//! Sampled Schwartz-class initial data `(u0, u1)` on a truncated uniform grid.
//!
//! The samples are the single source of truth for the whole pipeline: the Jost
//! integrations interpolate them with cubic splines and the PDE solver copies
//! them onto its own grid.

use crate::error::{Error, Result};
use crate::interp::CubicSpline;

pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct InitialData {
    x0: f64,
    dx: f64,
    u0: Vec<f64>,
    u1: Vec<f64>,
    /// `w = u0_x + u1`, with `u0_x` from centered differences.
    w: Vec<f64>,
    sp_u0: CubicSpline,
    sp_u1: CubicSpline,
    sp_w: CubicSpline,
}

impl InitialData {
    /// Build from samples on a uniform grid `[x0, x0 + (n-1) dx]`.
    pub fn from_samples(x0: f64, dx: f64, u0: Vec<f64>, u1: Vec<f64>, tail_tol: f64) -> Result<Self> {
        let n = u0.len();
        if n < 16 || u1.len() != n {
            return Err(Error::Domain(format!(
                "initial data needs >= 16 matching samples, got {} / {}",
                n,
                u1.len()
            )));
        }
        if !(dx > 0.0) {
            return Err(Error::Domain(format!("grid spacing must be positive, got {dx}")));
        }
        for (name, v) in [("u0", &u0), ("u1", &u1)] {
            let first = v[0].abs();
            let last = v[n - 1].abs();
            if first >= tail_tol || last >= tail_tol {
                return Err(Error::Domain(format!(
                    "{name} endpoint magnitude ({:.3e}, {:.3e}) exceeds tail tolerance {tail_tol:.1e}; \
                     Schwartz truncation invalid",
                    first, last
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Domain(format!("{name} contains non-finite samples")));
            }
        }
        let mut w = vec![0.0; n];
        for i in 0..n {
            let du = if i == 0 {
                (u0[1] - u0[0]) / dx
            } else if i == n - 1 {
                (u0[n - 1] - u0[n - 2]) / dx
            } else {
                (u0[i + 1] - u0[i - 1]) / (2.0 * dx)
            };
            w[i] = du + u1[i];
        }
        let xs: Vec<f64> = (0..n).map(|i| x0 + i as f64 * dx).collect();
        let sp_u0 = CubicSpline::new(&xs, &u0)?;
        let sp_u1 = CubicSpline::new(&xs, &u1)?;
        let sp_w = CubicSpline::new(&xs, &w)?;
        Ok(InitialData {
            x0,
            dx,
            u0,
            u1,
            w,
            sp_u0,
            sp_u1,
            sp_w,
        })
    }

    /// Sample analytic data on `[-x_max, x_max]`.
    pub fn from_functions(
        u0_fn: impl Fn(f64) -> f64,
        u1_fn: impl Fn(f64) -> f64,
        x_max: f64,
        dx: f64,
        tail_tol: f64,
    ) -> Result<Self> {
        let n = (2.0 * x_max / dx).round() as usize + 1;
        let x0 = -x_max;
        let u0: Vec<f64> = (0..n).map(|i| u0_fn(x0 + i as f64 * dx)).collect();
        let u1: Vec<f64> = (0..n).map(|i| u1_fn(x0 + i as f64 * dx)).collect();
        Self::from_samples(x0, dx, u0, u1, tail_tol)
    }

    /// The Gaussian wave packet `u0 = amplitude · e^{-x²/(2 width²)}`, `u1 = 0`.
    ///
    /// Truncation: smallest whole-unit `X` with `|u0| + |u1| < 1e-12` outside,
    /// plus a 2-unit margin.
    pub fn gaussian(amplitude: f64, width: f64, dx: f64) -> Result<Self> {
        let u0_fn = move |x: f64| amplitude * (-x * x / (2.0 * width * width)).exp();
        let mut reach = 1.0_f64;
        while u0_fn(reach).abs() >= 1e-12 && reach < 1e4 {
            reach += 1.0;
        }
        let x_max = reach + 2.0;
        Self::from_functions(u0_fn, |_| 0.0, x_max, dx, DEFAULT_TAIL_TOL)
    }

    /// Identically zero data on `[-x_max, x_max]`.
    pub fn zero(x_max: f64, dx: f64) -> Result<Self> {
        Self::from_functions(|_| 0.0, |_| 0.0, x_max, dx, DEFAULT_TAIL_TOL)
    }

    pub fn x_max(&self) -> f64 {
        -self.x0
    }

    pub fn x_min(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.u0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u0.is_empty()
    }

    pub fn u0_samples(&self) -> &[f64] {
        &self.u0
    }

    pub fn u1_samples(&self) -> &[f64] {
        &self.u1
    }

    pub fn w_samples(&self) -> &[f64] {
        &self.w
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    fn inside(&self, x: f64) -> bool {
        x >= self.sp_u0.x_min() && x <= self.sp_u0.x_max()
    }

    /// `u0(x)`, zero outside the truncation window.
    pub fn u0_at(&self, x: f64) -> f64 {
        if self.inside(x) {
            self.sp_u0.eval(x)
        } else {
            0.0
        }
    }

    pub fn u1_at(&self, x: f64) -> f64 {
        if self.inside(x) {
            self.sp_u1.eval(x)
        } else {
            0.0
        }
    }

    /// `w(x) = u0_x + u1` at x, zero outside the window.
    pub fn w_at(&self, x: f64) -> f64 {
        if self.inside(x) {
            self.sp_w.eval(x)
        } else {
            0.0
        }
    }

    /// True when every sample is exactly zero (trivial scattering shortcut).
    pub fn is_zero(&self) -> bool {
        self.u0.iter().all(|&v| v == 0.0) && self.u1.iter().all(|&v| v == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_matches_closed_form() {
        let d = InitialData::gaussian(-0.1, 1.0, 0.02).unwrap();
        // u0(0) = -0.1 per the reference datum.
        assert!((d.u0_at(0.0) + 0.1).abs() < 1e-12);
        assert!(d.u1_at(0.3).abs() == 0.0);
        // X = 10 suffices for this datum: tail reach 8 plus margin 2.
        assert!((d.x_max() - 10.0).abs() < 1e-12);
        // w = u0_x for u1 = 0, up to the O(dx²) centered-difference error.
        let x = 0.7_f64;
        let exact_w = 0.1 * x * (-x * x / 2.0).exp();
        assert!((d.w_at(x) - exact_w).abs() < 2e-5);
    }

    #[test]
    fn zero_data_is_zero() {
        let d = InitialData::zero(10.0, 0.1).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.u0_at(1.234), 0.0);
    }

    #[test]
    fn tail_violation_rejected() {
        let n = 64;
        let u0: Vec<f64> = (0..n).map(|_| 0.5).collect();
        let u1 = vec![0.0; n];
        assert!(InitialData::from_samples(-3.0, 0.1, u0, u1, 1e-10).is_err());
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(InitialData::from_samples(-1.0, 0.2, vec![0.0; 8], vec![0.0; 8], 1e-10).is_err());
    }
}
