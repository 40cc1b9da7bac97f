//! Dense 3x3 complex matrices and 3-vectors.
//!
//! Everything in the Lax-pair algebra is 3x3, so storage is a flat row-major
//! `[Complex64; 9]` with no sparsity machinery.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const ZERO_C: C64 = C64::new(0.0, 0.0);
pub const ONE_C: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix3C {
    pub e: [C64; 9],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector3C {
    pub e: [C64; 3],
}

impl Matrix3C {
    pub fn zero() -> Self {
        Matrix3C { e: [ZERO_C; 9] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.e[0] = ONE_C;
        m.e[4] = ONE_C;
        m.e[8] = ONE_C;
        m
    }

    pub fn from_rows(rows: [[C64; 3]; 3]) -> Self {
        let mut e = [ZERO_C; 9];
        for i in 0..3 {
            for j in 0..3 {
                e[3 * i + j] = rows[i][j];
            }
        }
        Matrix3C { e }
    }

    pub fn diag(a: C64, b: C64, c: C64) -> Self {
        let mut m = Self::zero();
        m.e[0] = a;
        m.e[4] = b;
        m.e[8] = c;
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for v in m.e.iter_mut() {
            *v *= s;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.e[3 * i + j] = self.e[3 * j + i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for v in m.e.iter_mut() {
            *v = v.conj();
        }
        m
    }

    pub fn det(&self) -> C64 {
        let e = &self.e;
        e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
            + e[2] * (e[3] * e[7] - e[4] * e[6])
    }

    /// Adjugate: `self * adjugate = det * I`.
    pub fn adjugate(&self) -> Self {
        let e = &self.e;
        let cof = |r1: usize, c1: usize, r2: usize, c2: usize| {
            e[3 * r1 + c1] * e[3 * r2 + c2] - e[3 * r1 + c2] * e[3 * r2 + c1]
        };
        Matrix3C::from_rows([
            [cof(1, 1, 2, 2), -cof(0, 1, 2, 2), cof(0, 1, 1, 2)],
            [-cof(1, 0, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 1, 2)],
            [cof(1, 0, 2, 1), -cof(0, 0, 2, 1), cof(0, 0, 1, 1)],
        ])
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 {
            return None;
        }
        Some(self.adjugate().scale(ONE_C / d))
    }

    pub fn commutator(a: &Matrix3C, b: &Matrix3C) -> Matrix3C {
        *a * *b - *b * *a
    }

    pub fn mul_vec(&self, v: &Vector3C) -> Vector3C {
        let mut out = [ZERO_C; 3];
        for i in 0..3 {
            out[i] = self.e[3 * i] * v.e[0] + self.e[3 * i + 1] * v.e[1] + self.e[3 * i + 2] * v.e[2];
        }
        Vector3C { e: out }
    }

    /// Row vector times matrix, `v^T M`.
    pub fn row_mul(&self, v: &Vector3C) -> Vector3C {
        let mut out = [ZERO_C; 3];
        for j in 0..3 {
            out[j] = v.e[0] * self.e[j] + v.e[1] * self.e[3 + j] + v.e[2] * self.e[6 + j];
        }
        Vector3C { e: out }
    }

    /// Largest entry modulus; the residual norm used throughout.
    pub fn norm_max(&self) -> f64 {
        self.e.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn column(&self, j: usize) -> Vector3C {
        Vector3C {
            e: [self.e[j], self.e[3 + j], self.e[6 + j]],
        }
    }
}

impl Index<(usize, usize)> for Matrix3C {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.e[3 * i + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix3C {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.e[3 * i + j]
    }
}

impl Add for Matrix3C {
    type Output = Matrix3C;
    fn add(self, rhs: Matrix3C) -> Matrix3C {
        let mut m = self;
        for (a, b) in m.e.iter_mut().zip(rhs.e.iter()) {
            *a += *b;
        }
        m
    }
}

impl Sub for Matrix3C {
    type Output = Matrix3C;
    fn sub(self, rhs: Matrix3C) -> Matrix3C {
        let mut m = self;
        for (a, b) in m.e.iter_mut().zip(rhs.e.iter()) {
            *a -= *b;
        }
        m
    }
}

impl Neg for Matrix3C {
    type Output = Matrix3C;
    fn neg(self) -> Matrix3C {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for Matrix3C {
    type Output = Matrix3C;
    fn mul(self, rhs: Matrix3C) -> Matrix3C {
        let mut m = Matrix3C::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = ZERO_C;
                for k in 0..3 {
                    acc += self.e[3 * i + k] * rhs.e[3 * k + j];
                }
                m.e[3 * i + j] = acc;
            }
        }
        m
    }
}

impl Vector3C {
    pub fn new(a: C64, b: C64, c: C64) -> Self {
        Vector3C { e: [a, b, c] }
    }

    pub fn zero() -> Self {
        Vector3C { e: [ZERO_C; 3] }
    }

    pub fn norm_max(&self) -> f64 {
        self.e.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Self {
        Vector3C {
            e: [self.e[0] * s, self.e[1] * s, self.e[2] * s],
        }
    }
}

impl Sub for Vector3C {
    type Output = Vector3C;
    fn sub(self, rhs: Vector3C) -> Vector3C {
        Vector3C {
            e: [
                self.e[0] - rhs.e[0],
                self.e[1] - rhs.e[1],
                self.e[2] - rhs.e[2],
            ],
        }
    }
}
