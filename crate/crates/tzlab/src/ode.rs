//! ODE integration over complex state vectors.
//!
//! The workhorse is an embedded Dormand-Prince 5(4) pair with standard step
//! control; a fixed-step classical RK4 is retained solely as the cross-check
//! oracle for the Jost integrations.

use crate::error::{Error, Result};
use crate::mat3::C64;

#[derive(Clone, Copy, Debug)]
pub struct AdaptiveOpts {
    pub atol: f64,
    pub rtol: f64,
    /// Upper bound on |h|; resolves the fastest oscillation of the system.
    pub max_step: f64,
    pub max_steps: usize,
}

impl Default for AdaptiveOpts {
    fn default() -> Self {
        AdaptiveOpts {
            atol: 1e-10,
            rtol: 1e-9,
            max_step: 0.1,
            max_steps: 2_000_000,
        }
    }
}

/// Butcher tableau of the Dormand-Prince 5(4) pair.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];

/// 5th-order weights equal the last row of A (FSAL); 4th-order weights below.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate `dy/dx = f(x, y)` from `x0` to `x1` (either direction) in place.
///
/// `lambda_tag` only labels errors with the spectral parameter at fault.
pub fn integrate_adaptive<F>(
    f: &F,
    x0: f64,
    x1: f64,
    y: &mut Vec<C64>,
    opts: &AdaptiveOpts,
    lambda_tag: f64,
) -> Result<()>
where
    F: Fn(f64, &[C64], &mut [C64]),
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(());
    }
    let dir = span.signum();
    let n = y.len();
    let mut k: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); n]; 7];
    let mut ytmp = vec![C64::new(0.0, 0.0); n];
    let mut y5 = vec![C64::new(0.0, 0.0); n];

    let mut x = x0;
    let mut h = dir * opts.max_step.min(span.abs() / 10.0);
    let h_min = span.abs() * 1e-14;

    f(x, y, &mut k[0]);
    let mut steps = 0usize;
    while (x1 - x) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(Error::Integration {
                lambda: lambda_tag,
                reason: format!("step budget exhausted after {steps} steps"),
            });
        }
        if h.abs() < h_min {
            return Err(Error::Integration {
                lambda: lambda_tag,
                reason: format!("step size underflow at x = {x}"),
            });
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }

        for s in 1..7 {
            for i in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..s {
                    let a = A[s - 1][j.min(5)];
                    if a != 0.0 {
                        acc += a * k[j][i];
                    }
                }
                ytmp[i] = y[i] + h * acc;
            }
            let xs = if s < 6 { x + C[s - 1] * h } else { x + h };
            // Stage 7 is the FSAL evaluation at (x + h, y5).
            if s == 6 {
                y5.copy_from_slice(&ytmp);
            }
            let (ks, rest) = k.split_at_mut(s);
            let _ = ks;
            f(xs, &ytmp, &mut rest[0]);
        }

        // Error estimate: difference of 5th- and 4th-order solutions.
        let mut err_sq = 0.0;
        for i in 0..n {
            let mut e4 = C64::new(0.0, 0.0);
            for j in 0..7 {
                if B4[j] != 0.0 {
                    e4 += B4[j] * k[j][i];
                }
            }
            let y4 = y[i] + h * e4;
            let diff = y5[i] - y4;
            let scale = opts.atol + opts.rtol * y[i].norm().max(y5[i].norm());
            let r = diff.norm() / scale;
            err_sq += r * r;
        }
        let err = (err_sq / n as f64).sqrt().max(1e-30);

        if err <= 1.0 {
            x += h;
            std::mem::swap(y, &mut y5);
            k.swap(0, 6); // FSAL: last stage derivative becomes first of next step
            if y.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(Error::Integration {
                    lambda: lambda_tag,
                    reason: format!("non-finite state at x = {x}"),
                });
            }
            steps += 1;
        }
        let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
        h = dir * (h.abs() * factor).min(opts.max_step);
    }
    Ok(())
}

/// Classical fixed-step RK4; the cross-check oracle.
pub fn integrate_rk4<F>(f: &F, x0: f64, x1: f64, n_steps: usize, y: &mut Vec<C64>)
where
    F: Fn(f64, &[C64], &mut [C64]),
{
    let n = y.len();
    let h = (x1 - x0) / n_steps as f64;
    let mut k1 = vec![C64::new(0.0, 0.0); n];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();
    for step in 0..n_steps {
        let x = x0 + step as f64 * h;
        f(x, y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        f(x + 0.5 * h, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        f(x + 0.5 * h, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        f(x + h, &tmp, &mut k4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
}
