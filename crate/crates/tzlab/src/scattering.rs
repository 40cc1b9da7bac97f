//! Direct scattering: Jost functions by ODE integration of the Lax x-equation,
//! scattering entries s(λ), s^A(λ), and validated reflection-coefficient tables.
//!
//! Stability dictates which objects are integrated on which half-line.  For
//! λ > 0 the direct flow gives columns 1-2 of Φ+ (entries s11, s12, s21, s22)
//! while the cofactor flow gives column 3 of Φ+^A (entry s^A_33); for λ < 0 the
//! roles swap.  The unimodularity residual uses the exact minor identity
//! `s11 s22 - s12 s21 = det(s) · s^A_33`: the remaining seven entries of s live
//! off their natural rays and grow like exp(O((λ + 1/λ) X)), so a direct 3x3
//! determinant is not finite-precision-viable across the λ grid.

use crate::data::InitialData;
use crate::error::{Error, Result};
use crate::interp::CubicSpline;
use crate::mat3::{C64, Matrix3C, Vector3C, ONE_C, ZERO_C};
use crate::ode::{integrate_adaptive, integrate_rk4, AdaptiveOpts};
use crate::spectral::{eigen_exponents, lax_l};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug)]
pub struct ScatterOpts {
    pub atol: f64,
    pub rtol: f64,
    /// Guard on |s11| below which the solitonless assumption is declared broken.
    pub soliton_tol: f64,
    pub max_steps: usize,
}

impl Default for ScatterOpts {
    fn default() -> Self {
        ScatterOpts {
            atol: 1e-11,
            rtol: 1e-10,
            soliton_tol: 1e-3,
            max_steps: 4_000_000,
        }
    }
}

/// Step cap resolving the free phases, which oscillate at rate (|λ| + 1/|λ|)/2.
fn max_step_for(lambda_abs: f64) -> f64 {
    0.1 / 1.0_f64.max(0.5 * (lambda_abs + 1.0 / lambda_abs))
}

fn adaptive_opts(opts: &ScatterOpts, lambda_abs: f64) -> AdaptiveOpts {
    AdaptiveOpts {
        atol: opts.atol,
        rtol: opts.rtol,
        max_step: max_step_for(lambda_abs),
        max_steps: opts.max_steps,
    }
}

/// Scattering entries computable stably at one real λ ≠ 0.
///
/// For λ > 0 the `m` block is s (rows/cols 1-2) and `comp33` is s^A_33; for
/// λ < 0 the `m` block is s^A and `comp33` is s_33.
#[derive(Clone, Copy, Debug)]
pub struct ScatterPoint {
    pub lambda: f64,
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
    pub comp33: C64,
    /// |m11 m22 - m12 m21 - comp33|, zero when det = 1 holds exactly.
    pub det_residual: f64,
    /// Largest violation of the real-axis conjugation symmetry
    /// m11 = conj(m22), m12 = conj(m21).
    pub sym_residual: f64,
}

struct Rhs<'a> {
    data: &'a InitialData,
    lambda: C64,
    cal_l_diag: [C64; 3],
    half_j2: Matrix3C,
    /// true: direct flow drives columns 1-2 and cofactor column 3 (λ > 0 layout);
    /// false: cofactor flow drives columns 1-2 and direct column 3.
    direct_main: bool,
}

impl<'a> Rhs<'a> {
    fn new(data: &'a InitialData, lambda: C64, direct_main: bool) -> Result<Self> {
        let ee = eigen_exponents(lambda)?;
        let half_j2 = crate::spectral::half_j_squared();
        Ok(Rhs {
            data,
            lambda,
            cal_l_diag: ee.l,
            half_j2,
            direct_main,
        })
    }

    fn l1_at(&self, x: f64) -> Matrix3C {
        let u = self.data.u0_at(x);
        let w = self.data.w_at(x);
        crate::spectral::build_u0(w)
            + (crate::spectral::build_u1(u) - self.half_j2).scale(ONE_C / self.lambda)
    }
}

/// State layout for the per-λ augmented system (14 complex entries):
/// main columns 1-2 (6), accumulators for the four m entries (4),
/// complementary column 3 (3), accumulator for comp33 (1).
const N_STATE: usize = 14;

fn scatter_rhs(rhs: &Rhs<'_>, x: f64, y: &[C64], dy: &mut [C64]) {
    let l1 = rhs.l1_at(x);
    let l = &rhs.cal_l_diag;
    let l1t = l1.transpose();

    // Main block: columns 1 and 2 of the driving flow.
    for col in 0..2 {
        let base = 3 * col;
        let lcol = l[col];
        for i in 0..3 {
            let mut acc = ZERO_C;
            for k in 0..3 {
                let m = if rhs.direct_main {
                    l1[(i, k)]
                } else {
                    -l1t[(i, k)]
                };
                acc += m * y[base + k];
            }
            // Direct flow:   φ' = L1 φ + 𝓛 φ - φ l_j
            // Cofactor flow: ψ' = -L1^T ψ - 𝓛 ψ + ψ l_j
            let comm = if rhs.direct_main {
                (l[i] - lcol) * y[base + i]
            } else {
                (lcol - l[i]) * y[base + i]
            };
            dy[base + i] = acc + comm;
        }
    }

    // Accumulators; derivative is the negative integrand so that the value
    // after integrating from +X down to -X equals +∫_{-X}^{X}.
    // m_{ij} entries: direct uses kernel e^{-x(l_i - l_j)} (L1 Φ)_{ij},
    // cofactor uses e^{+x(l_i - l_j)} (L1^T Φ^A)_{ij}.
    let mut prod = [[ZERO_C; 2]; 2];
    for i in 0..2 {
        for jcol in 0..2 {
            let mut acc = ZERO_C;
            for k in 0..3 {
                let m = if rhs.direct_main {
                    l1[(i, k)]
                } else {
                    l1t[(i, k)]
                };
                acc += m * y[3 * jcol + k];
            }
            prod[i][jcol] = acc;
        }
    }
    let sign = if rhs.direct_main { -1.0 } else { 1.0 };
    let e12 = (sign * x * (l[0] - l[1])).exp();
    let e21 = (sign * x * (l[1] - l[0])).exp();
    dy[6] = -prod[0][0];
    dy[7] = -e12 * prod[0][1];
    dy[8] = -e21 * prod[1][0];
    dy[9] = -prod[1][1];

    // Complementary column 3 of the opposite flow plus its (3,3) accumulator.
    let base = 10;
    for i in 0..3 {
        let mut acc = ZERO_C;
        for k in 0..3 {
            let m = if rhs.direct_main {
                -l1t[(i, k)]
            } else {
                l1[(i, k)]
            };
            acc += m * y[base + k];
        }
        let comm = if rhs.direct_main {
            (l[2] - l[i]) * y[base + i]
        } else {
            (l[i] - l[2]) * y[base + i]
        };
        dy[base + i] = acc + comm;
    }
    let mut p33 = ZERO_C;
    for k in 0..3 {
        let m = if rhs.direct_main {
            l1t[(2, k)]
        } else {
            l1[(2, k)]
        };
        p33 += m * y[base + k];
    }
    dy[13] = -p33;
}

/// The stable scattering entries at a real λ ≠ 0.
pub fn scatter_point(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<ScatterPoint> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("scattering needs real lambda != 0".into()));
    }
    let direct_main = lambda > 0.0;
    let rhs = Rhs::new(data, C64::new(lambda, 0.0), direct_main)?;
    let mut y = vec![ZERO_C; N_STATE];
    y[0] = ONE_C; // main column 1 = e1
    y[4] = ONE_C; // main column 2 = e2
    y[12] = ONE_C; // complementary column 3 = e3

    let x_max = data.x_max();
    let f = |x: f64, y: &[C64], dy: &mut [C64]| scatter_rhs(&rhs, x, y, dy);
    integrate_adaptive(&f, x_max, -x_max, &mut y, &adaptive_opts(opts, lambda.abs()), lambda)?;

    // Direct flow (λ > 0):   s_{ij}   = δ_{ij} - ∫ kernel (L1 Φ)_{ij}
    // Cofactor flow (λ < 0): s^A_{ij} = δ_{ij} + ∫ kernel (L1^T Φ^A)_{ij}
    let int_sign = if direct_main { -1.0 } else { 1.0 };
    let m11 = ONE_C + int_sign * y[6];
    let m12 = int_sign * y[7];
    let m21 = int_sign * y[8];
    let m22 = ONE_C + int_sign * y[9];
    // Complementary (3,3): s^A_33 = 1 + ∫ (direct side), s_33 = 1 - ∫.
    let comp33 = if direct_main { ONE_C + y[13] } else { ONE_C - y[13] };

    let det_residual = (m11 * m22 - m12 * m21 - comp33).norm();
    let sym_residual = (m11 - m22.conj())
        .norm()
        .max((m12 - m21.conj()).norm());

    Ok(ScatterPoint {
        lambda,
        m11,
        m12,
        m21,
        m22,
        comp33,
        det_residual,
        sym_residual,
    })
}

/// Columns 1 and 2 of Φ+ at x = -X, by backward integration from Φ+ = I at +X.
pub fn jost_plus_columns(
    data: &InitialData,
    lambda: f64,
    opts: &ScatterOpts,
) -> Result<(Vector3C, Vector3C)> {
    if lambda == 0.0 {
        return Err(Error::Domain("Jost integration needs lambda != 0".into()));
    }
    let rhs = Rhs::new(data, C64::new(lambda, 0.0), true)?;
    let mut y = vec![ZERO_C; N_STATE];
    y[0] = ONE_C;
    y[4] = ONE_C;
    y[12] = ONE_C;
    let x_max = data.x_max();
    let f = |x: f64, y: &[C64], dy: &mut [C64]| scatter_rhs(&rhs, x, y, dy);
    integrate_adaptive(&f, x_max, -x_max, &mut y, &adaptive_opts(opts, lambda.abs()), lambda)?;
    Ok((
        Vector3C::new(y[0], y[1], y[2]),
        Vector3C::new(y[3], y[4], y[5]),
    ))
}

/// Fixed-step RK4 route to the same Jost columns; cross-check oracle only.
pub fn jost_plus_columns_rk4(
    data: &InitialData,
    lambda: f64,
    n_steps: usize,
) -> Result<(Vector3C, Vector3C)> {
    let rhs = Rhs::new(data, C64::new(lambda, 0.0), true)?;
    let mut y = vec![ZERO_C; N_STATE];
    y[0] = ONE_C;
    y[4] = ONE_C;
    y[12] = ONE_C;
    let x_max = data.x_max();
    let f = |x: f64, y: &[C64], dy: &mut [C64]| scatter_rhs(&rhs, x, y, dy);
    integrate_rk4(&f, x_max, -x_max, n_steps, &mut y);
    Ok((
        Vector3C::new(y[0], y[1], y[2]),
        Vector3C::new(y[3], y[4], y[5]),
    ))
}

/// Validation-mode Jost matrix: all three columns of Φ+ at x = -X.
///
/// Column 3 grows like exp(3 l3 X / 2) against the integration direction, so
/// this is meaningful only at moderate |λ|; the flow is trace-free and the
/// determinant must stay 1.
pub fn jost_full_matrix(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<Matrix3C> {
    let rhs = Rhs::new(data, C64::new(lambda, 0.0), true)?;
    let l = rhs.cal_l_diag;
    let mut y = vec![ZERO_C; 9];
    y[0] = ONE_C;
    y[4] = ONE_C;
    y[8] = ONE_C;
    let f = |x: f64, y: &[C64], dy: &mut [C64]| {
        let l1 = rhs.l1_at(x);
        for col in 0..3 {
            let base = 3 * col;
            for i in 0..3 {
                let mut acc = ZERO_C;
                for k in 0..3 {
                    acc += l1[(i, k)] * y[base + k];
                }
                dy[base + i] = acc + (l[i] - l[col]) * y[base + i];
            }
        }
    };
    let x_max = data.x_max();
    integrate_adaptive(&f, x_max, -x_max, &mut y, &adaptive_opts(opts, lambda.abs()), lambda)?;
    let mut m = Matrix3C::zero();
    for col in 0..3 {
        for i in 0..3 {
            m[(i, col)] = y[3 * col + i];
        }
    }
    Ok(m)
}

/// s11 at a complex spectral parameter, via column 1 of Φ+ alone.
///
/// Stable wherever column 1 is (the closed sector 0 ≤ arg λ ≤ 2π/3); exercises
/// the Z3 rotation identity s22(λ) = s11(ωλ).
pub fn s11_at(data: &InitialData, lambda: C64, opts: &ScatterOpts) -> Result<C64> {
    let rhs = Rhs::new(data, lambda, true)?;
    let mut y = vec![ZERO_C; 4];
    y[0] = ONE_C;
    let f = |x: f64, y: &[C64], dy: &mut [C64]| {
        let l1 = rhs.l1_at(x);
        let l = &rhs.cal_l_diag;
        for i in 0..3 {
            let mut acc = ZERO_C;
            for k in 0..3 {
                acc += l1[(i, k)] * y[k];
            }
            dy[i] = acc + (l[i] - l[0]) * y[i];
        }
        let mut p = ZERO_C;
        for k in 0..3 {
            p += l1[(0, k)] * y[k];
        }
        dy[3] = -p;
    };
    let x_max = data.x_max();
    integrate_adaptive(
        &f,
        x_max,
        -x_max,
        &mut y,
        &adaptive_opts(opts, lambda.norm()),
        lambda.norm(),
    )?;
    Ok(ONE_C - y[3])
}

pub fn compute_s(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<(C64, C64)> {
    if lambda <= 0.0 {
        return Err(Error::Domain(format!("s(λ) is sampled on λ > 0, got {lambda}")));
    }
    let p = scatter_point(data, lambda, opts)?;
    Ok((p.m11, p.m12))
}

pub fn compute_sa(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<(C64, C64)> {
    if lambda >= 0.0 {
        return Err(Error::Domain(format!("s^A(λ) is sampled on λ < 0, got {lambda}")));
    }
    let p = scatter_point(data, lambda, opts)?;
    Ok((p.m11, p.m12))
}

fn reflection_from(m11: C64, m12: C64, lambda: f64, soliton_tol: f64) -> Result<C64> {
    if m11.norm() < soliton_tol {
        return Err(Error::SolitonSuspicion {
            lambda,
            s11_abs: m11.norm(),
        });
    }
    Ok(m12 / m11)
}

/// r1(λ) = s12/s11 for λ > 0.
pub fn reflection_r1(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<C64> {
    let (s11, s12) = compute_s(data, lambda, opts)?;
    reflection_from(s11, s12, lambda, opts.soliton_tol)
}

/// r2(λ) = s^A_12/s^A_11 for λ < 0.
pub fn reflection_r2(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<C64> {
    let (sa11, sa12) = compute_sa(data, lambda, opts)?;
    reflection_from(sa11, sa12, lambda, opts.soliton_tol)
}

/// Transfer-matrix oracle: the full s(λ) from the fundamental solution of
/// φ_x = L φ across the support, `s = φ(X)^{-1} e^{X𝓛}`.
///
/// Independent of the Volterra route.  Entry magnitudes grow like
/// exp((λ + 1/λ) X) off the natural rays, so use at moderate |λ| only.
pub fn transfer_matrix_s(data: &InitialData, lambda: f64, opts: &ScatterOpts) -> Result<Matrix3C> {
    if lambda == 0.0 {
        return Err(Error::Domain("transfer matrix needs lambda != 0".into()));
    }
    let lam = C64::new(lambda, 0.0);
    let ee = eigen_exponents(lam)?;
    let x_max = data.x_max();

    let mut y = vec![ZERO_C; 9];
    for j in 0..3 {
        y[3 * j + j] = (-x_max * ee.l[j]).exp();
    }
    let f = |x: f64, y: &[C64], dy: &mut [C64]| {
        let l = lax_l(data.u0_at(x), data.w_at(x), lam).expect("lambda checked nonzero");
        for col in 0..3 {
            for i in 0..3 {
                let mut acc = ZERO_C;
                for k in 0..3 {
                    acc += l[(i, k)] * y[3 * col + k];
                }
                dy[3 * col + i] = acc;
            }
        }
    };
    integrate_adaptive(&f, -x_max, x_max, &mut y, &adaptive_opts(opts, lambda.abs()), lambda)?;

    let mut phi = Matrix3C::zero();
    for col in 0..3 {
        for i in 0..3 {
            phi[(i, col)] = y[3 * col + i];
        }
    }
    let det = phi.det();
    if det.norm() == 0.0 {
        return Err(Error::Integration {
            lambda,
            reason: "singular fundamental solution".into(),
        });
    }
    let inv = phi.adjugate().scale(ONE_C / det);
    let exp_xl = Matrix3C::diag(
        (x_max * ee.l[0]).exp(),
        (x_max * ee.l[1]).exp(),
        (x_max * ee.l[2]).exp(),
    );
    Ok(inv * exp_xl)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridSpacing {
    Log,
    Linear,
}

/// Sample grid for the reflection tables, mirrored onto both signs of λ.
#[derive(Clone, Copy, Debug)]
pub struct LambdaGridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: GridSpacing,
}

impl Default for LambdaGridSpec {
    fn default() -> Self {
        // Log spacing because both decay regimes (λ→0, λ→∞) matter.
        LambdaGridSpec {
            min: 0.02,
            max: 30.0,
            count: 400,
            spacing: GridSpacing::Log,
        }
    }
}

impl LambdaGridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min > 0.0 && self.max > self.min) {
            return Err(Error::Domain(format!(
                "lambda grid needs 0 < min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.count < 4 {
            return Err(Error::Domain(format!(
                "lambda grid needs at least 4 points, got {}",
                self.count
            )));
        }
        Ok(())
    }

    /// Increasing positive abscissae.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    GridSpacing::Log => (self.min.ln() + t * (self.max / self.min).ln()).exp(),
                    GridSpacing::Linear => self.min + t * (self.max - self.min),
                }
            })
            .collect()
    }
}

/// Per-λ record kept alongside the table.
///
/// Exactly one of the (s11, s12) / (sa11, sa12) pairs is available per sign of
/// λ; the other flow is not finite-precision-stable there.
#[derive(Clone, Copy, Debug)]
pub struct ScatteringSample {
    pub lambda: f64,
    pub s11: Option<C64>,
    pub s12: Option<C64>,
    pub sa11: Option<C64>,
    pub sa12: Option<C64>,
    pub det_residual: f64,
    pub sym_residual: f64,
}

impl ScatteringSample {
    fn from_point(p: &ScatterPoint) -> Self {
        if p.lambda > 0.0 {
            ScatteringSample {
                lambda: p.lambda,
                s11: Some(p.m11),
                s12: Some(p.m12),
                sa11: None,
                sa12: None,
                det_residual: p.det_residual,
                sym_residual: p.sym_residual,
            }
        } else {
            ScatteringSample {
                lambda: p.lambda,
                s11: None,
                s12: None,
                sa11: Some(p.m11),
                sa12: Some(p.m12),
                det_residual: p.det_residual,
                sym_residual: p.sym_residual,
            }
        }
    }

    /// The reflection value this sample contributes (r1 or r2 by sign of λ).
    pub fn reflection(&self) -> C64 {
        let (num, den) = if self.lambda > 0.0 {
            (self.s12, self.s11)
        } else {
            (self.sa12, self.sa11)
        };
        match (num, den) {
            (Some(n), Some(d)) => n / d,
            _ => ZERO_C,
        }
    }
}

/// Sampled r1 on (0, Λmax] and r2 on [-Λmax, 0) with cubic interpolation.
#[derive(Clone, Debug)]
pub struct ReflectionTable {
    lambda_pos: Vec<f64>,
    r1: Vec<C64>,
    lambda_neg: Vec<f64>,
    r2: Vec<C64>,
    samples: Vec<ScatteringSample>,
    sp_r1_re: CubicSpline,
    sp_r1_im: CubicSpline,
    sp_r2_re: CubicSpline,
    sp_r2_im: CubicSpline,
}

impl ReflectionTable {
    fn assemble(
        lambda_pos: Vec<f64>,
        r1: Vec<C64>,
        lambda_neg: Vec<f64>,
        r2: Vec<C64>,
        samples: Vec<ScatteringSample>,
    ) -> Result<Self> {
        let re1: Vec<f64> = r1.iter().map(|v| v.re).collect();
        let im1: Vec<f64> = r1.iter().map(|v| v.im).collect();
        let re2: Vec<f64> = r2.iter().map(|v| v.re).collect();
        let im2: Vec<f64> = r2.iter().map(|v| v.im).collect();
        Ok(ReflectionTable {
            sp_r1_re: CubicSpline::new(&lambda_pos, &re1)?,
            sp_r1_im: CubicSpline::new(&lambda_pos, &im1)?,
            sp_r2_re: CubicSpline::new(&lambda_neg, &re2)?,
            sp_r2_im: CubicSpline::new(&lambda_neg, &im2)?,
            lambda_pos,
            r1,
            lambda_neg,
            r2,
            samples,
        })
    }

    /// r1 interpolated at λ > 0; zero outside the sampled range (rapid decay).
    pub fn r1_at(&self, lambda: f64) -> C64 {
        if lambda < self.lambda_pos[0] || lambda > *self.lambda_pos.last().unwrap() {
            return ZERO_C;
        }
        C64::new(self.sp_r1_re.eval(lambda), self.sp_r1_im.eval(lambda))
    }

    /// r2 interpolated at λ < 0; zero outside the sampled range.
    pub fn r2_at(&self, lambda: f64) -> C64 {
        if lambda < self.lambda_neg[0] || lambda > *self.lambda_neg.last().unwrap() {
            return ZERO_C;
        }
        C64::new(self.sp_r2_re.eval(lambda), self.sp_r2_im.eval(lambda))
    }

    /// d/ds ln(1 - |r1(s)|²), from the interpolant's derivative.
    pub fn g1_prime(&self, s: f64) -> f64 {
        if s < self.lambda_pos[0] || s > *self.lambda_pos.last().unwrap() {
            return 0.0;
        }
        let re = self.sp_r1_re.eval(s);
        let im = self.sp_r1_im.eval(s);
        let dre = self.sp_r1_re.deriv(s);
        let dim = self.sp_r1_im.deriv(s);
        let abs2 = re * re + im * im;
        -2.0 * (re * dre + im * dim) / (1.0 - abs2)
    }

    /// d/ds ln(1 - |r2(s)|²) on the negative half-line.
    pub fn g2_prime(&self, s: f64) -> f64 {
        if s < self.lambda_neg[0] || s > *self.lambda_neg.last().unwrap() {
            return 0.0;
        }
        let re = self.sp_r2_re.eval(s);
        let im = self.sp_r2_im.eval(s);
        let dre = self.sp_r2_re.deriv(s);
        let dim = self.sp_r2_im.deriv(s);
        let abs2 = re * re + im * im;
        -2.0 * (re * dre + im * dim) / (1.0 - abs2)
    }

    pub fn lambda_pos(&self) -> &[f64] {
        &self.lambda_pos
    }

    pub fn lambda_neg(&self) -> &[f64] {
        &self.lambda_neg
    }

    pub fn r1_samples(&self) -> &[C64] {
        &self.r1
    }

    pub fn r2_samples(&self) -> &[C64] {
        &self.r2
    }

    pub fn samples(&self) -> &[ScatteringSample] {
        &self.samples
    }

    pub fn max_abs_r(&self) -> f64 {
        self.r1
            .iter()
            .chain(self.r2.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Sweep the mirrored λ grid and build the validated reflection table.
///
/// Any per-λ failure aborts with the full list of offending λ.
pub fn build_reflection_table(
    data: &InitialData,
    spec: &LambdaGridSpec,
    opts: &ScatterOpts,
) -> Result<ReflectionTable> {
    spec.validate()?;
    let pos = spec.points();
    let mut all: Vec<f64> = pos.iter().map(|&l| -l).collect();
    all.extend(pos.iter().copied());

    let results: Vec<(f64, Result<ScatterPoint>)> = all
        .par_iter()
        .map(|&lam| (lam, scatter_point(data, lam, opts)))
        .collect();

    let mut failures: Vec<(f64, String)> = Vec::new();
    let mut points: Vec<ScatterPoint> = Vec::with_capacity(results.len());
    for (lam, res) in results {
        match res {
            Ok(p) => {
                let denom = p.m11.norm();
                if denom < opts.soliton_tol {
                    failures.push((lam, format!("|s11| = {denom:.3e} below soliton guard")));
                    continue;
                }
                let r_abs = (p.m12 / p.m11).norm();
                if r_abs >= 1.0 {
                    failures.push((lam, format!("|r| = {r_abs:.6} >= 1 breaks solitonless regime")));
                    continue;
                }
                points.push(p);
            }
            Err(e) => failures.push((lam, e.to_string())),
        }
    }
    if !failures.is_empty() {
        failures.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        return Err(Error::TableBuild { failures });
    }

    points.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap());
    let mut lambda_neg = Vec::new();
    let mut r2 = Vec::new();
    let mut lambda_pos = Vec::new();
    let mut r1 = Vec::new();
    let mut samples = Vec::with_capacity(points.len());
    for p in &points {
        let r = p.m12 / p.m11;
        if p.lambda < 0.0 {
            lambda_neg.push(p.lambda);
            r2.push(r);
        } else {
            lambda_pos.push(p.lambda);
            r1.push(r);
        }
        samples.push(ScatteringSample::from_point(p));
    }
    ReflectionTable::assemble(lambda_pos, r1, lambda_neg, r2, samples)
}

/// Decay magnitudes at the four grid ends.
#[derive(Clone, Copy, Debug)]
pub struct DecayMargins {
    pub r1_origin: f64,
    pub r1_infinity: f64,
    pub r2_origin: f64,
    pub r2_infinity: f64,
}

#[derive(Clone, Debug)]
pub struct ValidationTol {
    pub det: f64,
    pub sym: f64,
    pub decay: f64,
}

impl Default for ValidationTol {
    fn default() -> Self {
        ValidationTol {
            det: 1e-8,
            sym: 1e-6,
            decay: 1e-6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub max_det_residual: f64,
    pub max_sym_residual: f64,
    pub min_denominator: f64,
    pub decay: DecayMargins,
    /// (λ, failed check) pairs; empty when everything passes.
    pub offenders: Vec<(f64, String)>,
    pub pass: bool,
}

/// Symmetry/unimodularity/decay report over a set of samples.
pub fn validate_scattering(samples: &[ScatteringSample], tol: &ValidationTol) -> ValidationReport {
    let mut max_det = 0.0_f64;
    let mut max_sym = 0.0_f64;
    let mut min_den = f64::INFINITY;
    let mut offenders = Vec::new();

    let mut r1_origin = 0.0_f64;
    let mut r1_infinity = 0.0_f64;
    let mut r2_origin = 0.0_f64;
    let mut r2_infinity = 0.0_f64;
    let mut pos_min = f64::INFINITY;
    let mut pos_max = 0.0_f64;
    let mut neg_min = f64::INFINITY;
    let mut neg_max = 0.0_f64;
    for s in samples {
        if s.lambda > 0.0 {
            pos_min = pos_min.min(s.lambda);
            pos_max = pos_max.max(s.lambda);
        } else {
            neg_min = neg_min.min(-s.lambda);
            neg_max = neg_max.max(-s.lambda);
        }
    }

    for s in samples {
        max_det = max_det.max(s.det_residual);
        max_sym = max_sym.max(s.sym_residual);
        if s.det_residual > tol.det {
            offenders.push((s.lambda, format!("det residual {:.3e}", s.det_residual)));
        }
        if s.sym_residual > tol.sym {
            offenders.push((s.lambda, format!("sym residual {:.3e}", s.sym_residual)));
        }
        let den = if s.lambda > 0.0 { s.s11 } else { s.sa11 };
        if let Some(d) = den {
            min_den = min_den.min(d.norm());
        }
        let r = s.reflection().norm();
        if s.lambda > 0.0 {
            if s.lambda == pos_min {
                r1_origin = r;
            }
            if s.lambda == pos_max {
                r1_infinity = r;
            }
        } else {
            if -s.lambda == neg_min {
                r2_origin = r;
            }
            if -s.lambda == neg_max {
                r2_infinity = r;
            }
        }
    }

    let decay = DecayMargins {
        r1_origin,
        r1_infinity,
        r2_origin,
        r2_infinity,
    };
    for (name, v) in [
        ("r1 at origin end", r1_origin),
        ("r1 at infinity end", r1_infinity),
        ("r2 at origin end", r2_origin),
        ("r2 at infinity end", r2_infinity),
    ] {
        if v > tol.decay {
            offenders.push((f64::NAN, format!("{name} = {v:.3e} exceeds decay bound")));
        }
    }

    let pass = offenders.is_empty();
    ValidationReport {
        max_det_residual: max_det,
        max_sym_residual: max_sym,
        min_denominator: min_den,
        decay,
        offenders,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> InitialData {
        InitialData::gaussian(-0.1, 1.0, 0.02).unwrap()
    }

    #[test]
    fn zero_data_scattering_is_identity() {
        let d = InitialData::zero(10.0, 0.05).unwrap();
        let opts = ScatterOpts::default();
        for &lam in &[0.5, 1.0, -1.0, 7.0] {
            let p = scatter_point(&d, lam, &opts).unwrap();
            assert_eq!((p.m11 - ONE_C).norm(), 0.0);
            assert_eq!(p.m12.norm(), 0.0);
            assert_eq!(p.m21.norm(), 0.0);
            assert_eq!((p.m22 - ONE_C).norm(), 0.0);
            assert_eq!((p.comp33 - ONE_C).norm(), 0.0);
            assert_eq!(p.det_residual, 0.0);
        }
        let (c1, c2) = jost_plus_columns(&d, 1.0, &opts).unwrap();
        assert_eq!((c1 - Vector3C::new(ONE_C, ZERO_C, ZERO_C)).norm_max(), 0.0);
        assert_eq!((c2 - Vector3C::new(ZERO_C, ONE_C, ZERO_C)).norm_max(), 0.0);
    }

    #[test]
    fn jost_adaptive_vs_rk4() {
        let d = gaussian();
        let opts = ScatterOpts::default();
        let (a1, a2) = jost_plus_columns(&d, 1.0, &opts).unwrap();
        let (b1, b2) = jost_plus_columns_rk4(&d, 1.0, 40_000).unwrap();
        assert!((a1 - b1).norm_max() < 1e-7, "col1 mismatch {}", (a1 - b1).norm_max());
        assert!((a2 - b2).norm_max() < 1e-7, "col2 mismatch {}", (a2 - b2).norm_max());
    }

    #[test]
    fn full_jost_determinant_stays_one() {
        let d = gaussian();
        let opts = ScatterOpts::default();
        for &lam in &[0.4, 1.0, 1.6] {
            let m = jost_full_matrix(&d, lam, &opts).unwrap();
            let res = (m.det() - ONE_C).norm();
            assert!(res < 1e-8, "det residual {res:.3e} at lambda = {lam}");
        }
    }

    #[test]
    fn transfer_matrix_oracle_agrees() {
        let d = gaussian();
        let opts = ScatterOpts::default();
        for &lam in &[0.5, 1.0, 2.0] {
            let (s11, s12) = compute_s(&d, lam, &opts).unwrap();
            let oracle = transfer_matrix_s(&d, lam, &opts).unwrap();
            assert!(
                (s11 - oracle[(0, 0)]).norm() < 1e-6,
                "s11 vs oracle at λ={lam}: {:.3e}",
                (s11 - oracle[(0, 0)]).norm()
            );
            assert!(
                (s12 - oracle[(0, 1)]).norm() < 1e-6,
                "s12 vs oracle at λ={lam}: {:.3e}",
                (s12 - oracle[(0, 1)]).norm()
            );
        }
    }

    #[test]
    fn cofactor_consistency_with_inverse_transpose() {
        let d = gaussian();
        let opts = ScatterOpts::default();
        for &lam in &[-0.5, -1.0, -2.0] {
            let (sa11, sa12) = compute_sa(&d, lam, &opts).unwrap();
            let s = transfer_matrix_s(&d, lam, &opts).unwrap();
            let inv_t = s.inverse().unwrap().transpose();
            assert!(
                (sa11 - inv_t[(0, 0)]).norm() < 1e-6,
                "sa11 vs (s^-1)^T at λ={lam}: {:.3e}",
                (sa11 - inv_t[(0, 0)]).norm()
            );
            assert!(
                (sa12 - inv_t[(0, 1)]).norm() < 1e-6,
                "sa12 vs (s^-1)^T at λ={lam}: {:.3e}",
                (sa12 - inv_t[(0, 1)]).norm()
            );
        }
    }

    #[test]
    fn z3_rotation_identity() {
        // s22(λ) = s11(ωλ), integrating along the rotated ray.
        let d = gaussian();
        let opts = ScatterOpts::default();
        let lam = 1.0;
        let p = scatter_point(&d, lam, &opts).unwrap();
        let rot = s11_at(&d, crate::spectral::OMEGA * lam, &opts).unwrap();
        assert!(
            (p.m22 - rot).norm() < 1e-6,
            "Z3 identity residual {:.3e}",
            (p.m22 - rot).norm()
        );
    }

    #[test]
    fn reflection_decay_and_bounds() {
        let d = gaussian();
        let opts = ScatterOpts::default();
        let r_mid = reflection_r1(&d, 1.0, &opts).unwrap();
        assert!(r_mid.norm() < 1.0);
        let r_small = reflection_r1(&d, 0.02, &opts).unwrap();
        assert!(r_small.norm() < 1e-6, "|r1(0.02)| = {:.3e}", r_small.norm());
        let r_big = reflection_r1(&d, 25.0, &opts).unwrap();
        assert!(r_big.norm() < 1e-4, "|r1(25)| = {:.3e}", r_big.norm());
        let r2 = reflection_r2(&d, -25.0, &opts).unwrap();
        assert!(r2.norm() < 1e-4);
    }

    #[test]
    fn truncation_robustness() {
        // Enlarging X by 25% changes r1(1) by far less than the oracle tolerance.
        let d1 = gaussian();
        let d2 = InitialData::from_functions(
            |x| -0.1 * (-x * x / 2.0).exp(),
            |_| 0.0,
            12.5,
            0.02,
            1e-10,
        )
        .unwrap();
        let opts = ScatterOpts::default();
        let a = reflection_r1(&d1, 1.0, &opts).unwrap();
        let b = reflection_r1(&d2, 1.0, &opts).unwrap();
        assert!((a - b).norm() < 1e-6, "truncation drift {:.3e}", (a - b).norm());
    }

    #[test]
    fn table_on_small_grid() {
        let d = gaussian();
        let spec = LambdaGridSpec {
            min: 0.05,
            max: 8.0,
            count: 40,
            spacing: GridSpacing::Log,
        };
        let t = build_reflection_table(&d, &spec, &ScatterOpts::default()).unwrap();
        assert_eq!(t.lambda_pos().len(), 40);
        assert_eq!(t.lambda_neg().len(), 40);
        assert!(t.max_abs_r() < 1.0);
        // Interpolation consistency at a knot.
        let k = 17;
        let lam = t.lambda_pos()[k];
        assert!((t.r1_at(lam) - t.r1_samples()[k]).norm() < 1e-12);
        // Outside the range the table reads zero.
        assert_eq!(t.r1_at(100.0), ZERO_C);
        let report = validate_scattering(t.samples(), &ValidationTol::default());
        assert!(
            report.max_sym_residual < 1e-6,
            "sym residual {:.3e}",
            report.max_sym_residual
        );
        assert!(
            report.max_det_residual < 1e-8,
            "det residual {:.3e}",
            report.max_det_residual
        );
    }

    #[test]
    fn zero_table_is_zero() {
        let d = InitialData::zero(8.0, 0.05).unwrap();
        let spec = LambdaGridSpec {
            min: 0.1,
            max: 4.0,
            count: 16,
            spacing: GridSpacing::Linear,
        };
        let t = build_reflection_table(&d, &spec, &ScatterOpts::default()).unwrap();
        assert_eq!(t.max_abs_r(), 0.0);
        let report = validate_scattering(t.samples(), &ValidationTol::default());
        assert!(report.pass);
        assert_eq!(report.max_det_residual, 0.0);
    }

    #[test]
    fn corrupted_sample_is_flagged() {
        let d = InitialData::zero(8.0, 0.05).unwrap();
        let spec = LambdaGridSpec {
            min: 0.1,
            max: 4.0,
            count: 16,
            spacing: GridSpacing::Linear,
        };
        let t = build_reflection_table(&d, &spec, &ScatterOpts::default()).unwrap();
        let mut samples = t.samples().to_vec();
        samples[5].det_residual = 0.5;
        let bad_lambda = samples[5].lambda;
        let report = validate_scattering(&samples, &ValidationTol::default());
        assert!(!report.pass);
        assert_eq!(report.offenders.len(), 1);
        assert_eq!(report.offenders[0].0, bad_lambda);
    }

    #[test]
    fn grid_refinement_stability() {
        // Halving grid spacing changes interpolated r1 at λ = 1 by < 1e-5.
        let d = gaussian();
        let opts = ScatterOpts::default();
        let coarse = LambdaGridSpec {
            min: 0.3,
            max: 3.0,
            count: 24,
            spacing: GridSpacing::Log,
        };
        let fine = LambdaGridSpec {
            count: 48,
            ..coarse
        };
        let tc = build_reflection_table(&d, &coarse, &opts).unwrap();
        let tf = build_reflection_table(&d, &fine, &opts).unwrap();
        let diff = (tc.r1_at(1.0) - tf.r1_at(1.0)).norm();
        assert!(diff < 1e-5, "refinement drift {diff:.3e}");
    }

    #[test]
    fn soliton_guard_trips_on_tiny_denominator() {
        let r = reflection_from(C64::new(1e-5, 0.0), ONE_C, 1.0, 1e-3);
        assert!(matches!(r, Err(Error::SolitonSuspicion { .. })));
    }
}
