//! Algebraic skeleton of the 3x3 Lax pair: constant matrices, eigen-exponents,
//! phase function, gauge matrix, critical point and sector classification.
//!
//! Conventions: `ω = e^{2πi/3}` fixed once as a constant, the spatial Lax matrix
//! is `L(λ) = (λ/2) J + U0 + U1/λ` and splits as `L = 𝓛 + L1` with
//! `𝓛 = diag(l1, l2, l3)`, `l_j = (ω^j λ + (ω^j λ)^{-1})/2`.

use crate::error::{Error, Result};
use crate::mat3::{C64, Matrix3C, ONE_C, ZERO_C};

/// Primitive cube root of unity, `e^{2πi/3}`.
pub const OMEGA: C64 = C64::new(-0.5, 0.866_025_403_784_438_6);
/// `ω² = conj(ω)`.
pub const OMEGA2: C64 = C64::new(-0.5, -0.866_025_403_784_438_6);

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `J = diag(ω, ω², 1)`.
pub fn matrix_j() -> Matrix3C {
    Matrix3C::diag(OMEGA, OMEGA2, ONE_C)
}

/// Cyclic permutation implementing the Z3 symmetry `L(λ) = A^{-1} L(ωλ) A`.
pub fn matrix_a() -> Matrix3C {
    Matrix3C::from_rows([
        [ZERO_C, ONE_C, ZERO_C],
        [ZERO_C, ZERO_C, ONE_C],
        [ONE_C, ZERO_C, ZERO_C],
    ])
}

/// Transposition implementing the Z2 symmetry `L(λ) = B conj(L(conj λ)) B^{-1}`.
pub fn matrix_b() -> Matrix3C {
    Matrix3C::from_rows([
        [ZERO_C, ONE_C, ZERO_C],
        [ONE_C, ZERO_C, ZERO_C],
        [ZERO_C, ZERO_C, ONE_C],
    ])
}

/// Spatial and temporal eigen-exponents of the free Lax flow at `λ`.
#[derive(Clone, Copy, Debug)]
pub struct EigenExponents {
    /// `l_j = (ω^j λ + (ω^j λ)^{-1})/2`, index 0 holding `l_1`.
    pub l: [C64; 3],
    /// `z_j = (ω^j λ - (ω^j λ)^{-1})/2`.
    pub z: [C64; 3],
    pub lambda: C64,
}

fn require_nonzero(lambda: C64) -> Result<()> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain(
            "spectral parameter at essential singularity (lambda = 0)".into(),
        ));
    }
    Ok(())
}

pub fn eigen_exponents(lambda: C64) -> Result<EigenExponents> {
    require_nonzero(lambda)?;
    let mut l = [ZERO_C; 3];
    let mut z = [ZERO_C; 3];
    let omegas = [OMEGA, OMEGA2, ONE_C];
    for j in 0..3 {
        let wl = omegas[j] * lambda;
        let inv = ONE_C / wl;
        l[j] = (wl + inv) * 0.5;
        z[j] = (wl - inv) * 0.5;
    }
    Ok(EigenExponents { l, z, lambda })
}

/// `𝓛(λ) = diag(l1, l2, l3)`.
pub fn cal_l(lambda: C64) -> Result<Matrix3C> {
    let ee = eigen_exponents(lambda)?;
    Ok(Matrix3C::diag(ee.l[0], ee.l[1], ee.l[2]))
}

/// `𝓩(λ) = diag(z1, z2, z3)`.
pub fn cal_z(lambda: C64) -> Result<Matrix3C> {
    let ee = eigen_exponents(lambda)?;
    Ok(Matrix3C::diag(ee.z[0], ee.z[1], ee.z[2]))
}

/// `U0 = (i√3 w / 6) [[0,1,-1],[-1,0,1],[1,-1,0]]` where `w = u_x + u_t`.
pub fn build_u0(w: f64) -> Matrix3C {
    let s = C64::new(0.0, SQRT3 * w / 6.0);
    let p = s;
    let m = -s;
    Matrix3C::from_rows([[ZERO_C, p, m], [m, ZERO_C, p], [p, m, ZERO_C]])
}

/// The potential matrix `U1(u)`; at `u = 0` it reduces to `J²/2`.
pub fn build_u1(u: f64) -> Matrix3C {
    let ep = u.exp();
    let em = (-2.0 * u).exp();
    let d = C64::new((2.0 * ep + em) / 6.0, 0.0);
    let o = C64::new((em - ep) / 6.0, 0.0);
    Matrix3C::from_rows([
        [OMEGA2 * d, o, OMEGA * o],
        [o, OMEGA * d, OMEGA2 * o],
        [OMEGA * o, OMEGA2 * o, d],
    ])
}

/// `J²/2 = diag(ω², ω, 1)/2`, written algebraically so that `U1(0) - J²/2`
/// vanishes bit-exactly and zero data yields exactly trivial scattering.
pub fn half_j_squared() -> Matrix3C {
    Matrix3C::diag(OMEGA2, OMEGA, ONE_C).scale(C64::new(0.5, 0.0))
}

/// `L1 = U0 + (U1 - J²/2)/λ`; the decaying part of the spatial Lax matrix.
pub fn build_l1(u: f64, w: f64, lambda: C64) -> Result<Matrix3C> {
    require_nonzero(lambda)?;
    Ok(build_u0(w) + (build_u1(u) - half_j_squared()).scale(ONE_C / lambda))
}

/// Full spatial Lax matrix `L = (λ/2) J + U0 + U1/λ = 𝓛 + L1`.
pub fn lax_l(u: f64, w: f64, lambda: C64) -> Result<Matrix3C> {
    require_nonzero(lambda)?;
    let j = matrix_j();
    Ok(j.scale(lambda * 0.5) + build_u0(w) + build_u1(u).scale(ONE_C / lambda))
}

/// Gauge matrix `G(u)` regularizing the Lax pair at λ = 0.
///
/// Satisfies `(ω, ω², 1) G = e^u (ω, ω², 1)`, the symmetries `A^{-1} G A = G`,
/// `B G B = G`, and `det G = 1`.
pub fn gauge_g(u: f64) -> Matrix3C {
    let eu = C64::new(u.exp(), 0.0);
    let pref = (ONE_C + eu + eu * eu) / (eu * 3.0);
    let a = OMEGA * (eu - ONE_C) / (eu - OMEGA2);
    let b = OMEGA2 * (eu - ONE_C) / (eu - OMEGA);
    let g = Matrix3C::from_rows([[ONE_C, a, b], [b, ONE_C, a], [a, b, ONE_C]]).scale(pref);
    debug_assert!((g.det() - ONE_C).norm() < 1e-10);
    g
}

/// Oscillatory phase `ϑ21 = (l2 - l1) x + (z2 - z1) t`.
///
/// In closed form `(ω² - ω)/2 · [(λ - λ^{-1}) x + (λ + λ^{-1}) t]`; purely
/// imaginary for real λ.
pub fn phase_theta21(lambda: C64, x: f64, t: f64) -> Result<C64> {
    require_nonzero(lambda)?;
    let inv = ONE_C / lambda;
    let half_diff = (OMEGA2 - OMEGA) * 0.5;
    Ok(half_diff * ((lambda - inv) * x + (lambda + inv) * t))
}

/// Stationary point of `ϑ21` on the positive real axis, `λ0 = sqrt(|x-t|/|x+t|)`.
///
/// Only the positive root is returned; the paired `-λ0` contribution enters the
/// asymptotic formula downstream, never through a sign choice here.
pub fn critical_lambda0(x: f64, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::Domain(format!("critical point needs t > 0, got t = {t}")));
    }
    if x.abs() == t {
        return Err(Error::Domain(format!(
            "light-cone boundary |x| = t at (x, t) = ({x}, {t}); lambda0 degenerates to 0 or infinity"
        )));
    }
    Ok(((x - t).abs() / (x + t).abs()).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectorLabel {
    I,
    II,
    III,
    IV,
}

impl std::fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SectorLabel::I => "I",
            SectorLabel::II => "II",
            SectorLabel::III => "III",
            SectorLabel::IV => "IV",
        };
        f.write_str(s)
    }
}

/// Velocity-ratio thresholds separating the asymptotic sectors.
///
/// The transition region has no sharp boundary in the theory; the defaults keep
/// the explicit formula inside its validated region.
#[derive(Clone, Copy, Debug)]
pub struct SectorThresholds {
    pub inner: f64,
    pub outer: f64,
}

impl Default for SectorThresholds {
    fn default() -> Self {
        SectorThresholds { inner: 0.85, outer: 3.0 }
    }
}

impl SectorThresholds {
    pub fn new(inner: f64, outer: f64) -> Result<Self> {
        if !(0.0 < inner && inner < 1.0 && 1.0 <= outer) {
            return Err(Error::Domain(format!(
                "sector thresholds need 0 < inner < 1 <= outer, got ({inner}, {outer})"
            )));
        }
        Ok(SectorThresholds { inner, outer })
    }
}

/// Total classification of (x, t) by the velocity ratio |x/t|.
pub fn classify_sector(x: f64, t: f64, th: &SectorThresholds) -> SectorLabel {
    let v = (x / t).abs();
    if v <= th.inner {
        SectorLabel::IV
    } else if v < 1.0 {
        SectorLabel::III
    } else if v <= th.outer {
        SectorLabel::II
    } else {
        SectorLabel::I
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat3::Vector3C;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exponents_identity_case() {
        // λ = 1: l3 = 1, z3 = 0 and l1 = -1/2 since ω + ω² = -1.
        let ee = eigen_exponents(ONE_C).unwrap();
        assert!((ee.l[2] - ONE_C).norm() < 1e-15);
        assert!(ee.z[2].norm() < 1e-15);
        assert!((ee.l[0] - c(-0.5, 0.0)).norm() < 1e-15);
        let sum = ee.l[0] + ee.l[1] + ee.l[2];
        assert!(sum.norm() < 1e-12);
    }

    #[test]
    fn exponents_at_two() {
        // λ = 2: l3 = (2 + 1/2)/2 = 5/4, z3 = (2 - 1/2)/2 = 3/4.  l1, l2 are the
        // ω-rotations; cross-check against a direct split into real/imag parts:
        // ωλ = 2ω, (ωλ)^{-1} = ω²/2, so l1 = (2ω + ω²/2)/2 = (5/4)Re ω + i(3/4)Im ω.
        let ee = eigen_exponents(c(2.0, 0.0)).unwrap();
        assert!((ee.l[2] - c(1.25, 0.0)).norm() < 1e-15);
        assert!((ee.z[2] - c(0.75, 0.0)).norm() < 1e-15);
        let expect_l1 = c(1.25 * (-0.5), 0.75 * 0.866_025_403_784_438_6);
        assert!((ee.l[0] - expect_l1).norm() < 1e-15);
        let expect_l2 = expect_l1.conj();
        assert!((ee.l[1] - expect_l2).norm() < 1e-15);
    }

    #[test]
    fn exponents_reject_origin() {
        assert!(eigen_exponents(ZERO_C).is_err());
    }

    #[test]
    fn trace_free_for_random_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let lam = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if lam.norm() < 1e-3 {
                continue;
            }
            let ee = eigen_exponents(lam).unwrap();
            assert!((ee.l[0] + ee.l[1] + ee.l[2]).norm() < 1e-12);
            assert!((ee.z[0] + ee.z[1] + ee.z[2]).norm() < 1e-12);
        }
    }

    #[test]
    fn real_positive_lambda_has_equal_real_parts() {
        for &lam in &[0.1, 0.5, 1.0, 2.0, 10.0] {
            let ee = eigen_exponents(c(lam, 0.0)).unwrap();
            assert!((ee.l[0].re - ee.l[1].re).abs() < 1e-13);
        }
    }

    #[test]
    fn u0_zero_and_scale() {
        assert_eq!(build_u0(0.0).norm_max(), 0.0);
        // w = 6/√3 makes the prefactor exactly i.
        let m = build_u0(6.0 / SQRT3);
        assert!((m[(0, 1)] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((m[(0, 2)] + c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn u1_at_zero_is_half_j_squared() {
        let u1 = build_u1(0.0);
        let expect = Matrix3C::diag(OMEGA2 * 0.5, OMEGA * 0.5, c(0.5, 0.0));
        assert!((u1 - expect).norm_max() < 1e-15);
        // Zero-potential consistency: L1 = 0 for any λ.
        assert!(build_l1(0.0, 0.0, c(1.7, -0.3)).unwrap().norm_max() < 1e-15);
    }

    #[test]
    fn u1_entries_match_printed_formula() {
        // Direct evaluation of each printed entry at u = 0.1.
        let u = 0.1_f64;
        let m = build_u1(u);
        let ep = u.exp();
        let em = (-2.0 * u).exp();
        let d = (2.0 * ep + em) / 6.0;
        let o = (em - ep) / 6.0;
        assert!((m[(0, 0)] - OMEGA2 * d).norm() < 1e-15);
        assert!((m[(0, 1)] - c(o, 0.0)).norm() < 1e-15);
        assert!((m[(1, 2)] - OMEGA2 * o).norm() < 1e-15);
        assert!((m[(2, 0)] - OMEGA * o).norm() < 1e-15);
        assert!((m[(2, 2)] - c(d, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lax_splits_into_cal_l_plus_l1() {
        let (u, w, lam) = (0.2, -0.1, c(1.3, 0.4));
        let full = lax_l(u, w, lam).unwrap();
        let split = cal_l(lam).unwrap() + build_l1(u, w, lam).unwrap();
        assert!((full - split).norm_max() < 1e-13);
    }

    #[test]
    fn z3_and_z2_symmetry_of_l() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa1b2);
        let a = matrix_a();
        let a_inv = a.inverse().unwrap();
        let b = matrix_b();
        let b_inv = b.inverse().unwrap();
        for _ in 0..200 {
            let u = rng.gen_range(-1.0..1.0);
            let w = rng.gen_range(-1.0..1.0);
            let lam = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if lam.norm() < 0.05 {
                continue;
            }
            let l = lax_l(u, w, lam).unwrap();
            let rot = a_inv * lax_l(u, w, OMEGA * lam).unwrap() * a;
            assert!((l - rot).norm_max() < 1e-12, "Z3 symmetry failed");
            let refl = b * lax_l(u, w, lam.conj()).unwrap().conj() * b_inv;
            assert!((l - refl).norm_max() < 1e-12, "Z2 symmetry failed");
            // Same relations for L1 alone.
            let l1 = build_l1(u, w, lam).unwrap();
            let l1_rot = a_inv * build_l1(u, w, OMEGA * lam).unwrap() * a;
            assert!((l1 - l1_rot).norm_max() < 1e-12);
        }
    }

    #[test]
    fn u0_respects_z3_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let a = matrix_a();
        let a_inv = a.inverse().unwrap();
        for _ in 0..50 {
            let w = rng.gen_range(-2.0..2.0);
            let u0 = build_u0(w);
            assert!((u0 - a_inv * u0 * a).norm_max() < 1e-13);
        }
    }

    #[test]
    fn gauge_identity_at_zero() {
        assert!((gauge_g(0.0) - Matrix3C::identity()).norm_max() < 1e-15);
    }

    #[test]
    fn gauge_row_eigenvector() {
        for &u in &[0.3, -0.2, 1.5, -1.8, 0.01] {
            let g = gauge_g(u);
            let row = Vector3C::new(OMEGA, OMEGA2, ONE_C);
            let lhs = g.row_mul(&row);
            let rhs = row.scale(c(u.exp(), 0.0));
            assert!((lhs - rhs).norm_max() < 1e-12, "row eigen failed at u = {u}");
        }
    }

    #[test]
    fn gauge_symmetries_and_det() {
        // The Z2 relation carries the conjugation, as for L: B conj(G) B = G.
        let a = matrix_a();
        let a_inv = a.inverse().unwrap();
        let b = matrix_b();
        for &u in &[-2.0, -0.2, 0.0, 0.4, 2.0] {
            let g = gauge_g(u);
            assert!((g - a_inv * g * a).norm_max() < 1e-12);
            assert!((g - b * g.conj() * b).norm_max() < 1e-12);
            assert!((g.det() - ONE_C).norm() < 1e-10, "det G != 1 at u = {u}");
        }
    }

    #[test]
    fn theta21_imaginary_on_real_axis() {
        for &lam in &[0.3, 1.0, 4.2] {
            let th = phase_theta21(c(lam, 0.0), 1.7, 3.1).unwrap();
            assert!(th.re.abs() < 1e-13);
        }
    }

    #[test]
    fn theta21_stationary_at_lambda0() {
        // Centered finite difference of ϑ21 in λ vanishes at λ0 to O(h²).
        for &(x, t) in &[(0.0, 20.0), (5.0, 20.0), (-8.0, 15.0)] {
            let lam0 = critical_lambda0(x, t).unwrap();
            let h = 1e-5;
            let fp = phase_theta21(c(lam0 + h, 0.0), x, t).unwrap();
            let fm = phase_theta21(c(lam0 - h, 0.0), x, t).unwrap();
            let deriv = (fp - fm) / (2.0 * h);
            assert!(deriv.norm() < 1e-8, "dtheta/dlambda = {deriv} at (x,t)=({x},{t})");
        }
    }

    #[test]
    fn theta21_against_direct_formula() {
        // λ = i, x = 0, t = 1: (ω²-ω)/2 (i + 1/i) t = (ω²-ω)/2 · 0 ... use generic
        // point instead and compare with the l/z-difference route.
        let lam = c(0.0, 1.0);
        let (x, t) = (0.7, 1.3);
        let th = phase_theta21(lam, x, t).unwrap();
        let ee = eigen_exponents(lam).unwrap();
        let direct = (ee.l[1] - ee.l[0]) * x + (ee.z[1] - ee.z[0]) * t;
        assert!((th - direct).norm() < 1e-13);
    }

    #[test]
    fn lambda0_values() {
        assert!((critical_lambda0(0.0, 20.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((critical_lambda0(12.0, 20.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(critical_lambda0(20.0, 20.0).is_err());
        assert!(critical_lambda0(-20.0, 20.0).is_err());
    }

    #[test]
    fn lambda0_monotone_toward_cone() {
        let t = 10.0;
        let mut prev = critical_lambda0(0.0, t).unwrap();
        for k in 1..40 {
            let x = t * (k as f64) / 40.0;
            let cur = critical_lambda0(x, t).unwrap();
            assert!(cur < prev, "lambda0 not decreasing at x = {x}");
            prev = cur;
        }
        assert!(prev < 0.15);
    }

    #[test]
    fn sector_classification() {
        let th = SectorThresholds::new(0.85, 3.0).unwrap();
        assert_eq!(classify_sector(0.0, 10.0, &th), SectorLabel::IV);
        assert_eq!(classify_sector(10.0, 10.0, &th), SectorLabel::II);
        assert_eq!(classify_sector(100.0, 10.0, &th), SectorLabel::I);
        assert_eq!(classify_sector(9.0, 10.0, &th), SectorLabel::III);
        assert_eq!(classify_sector(-30.0, 10.0, &th), SectorLabel::II);
        assert!(SectorThresholds::new(1.2, 3.0).is_err());
    }
}
