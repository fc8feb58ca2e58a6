//! Small fixed-size linear algebra used for dyadic Green functions.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

/// Real Cartesian 3-vector.
pub type Vec3 = [f64; 3];

pub(crate) fn norm(v: &Vec3) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn scale(v: &Vec3, s: f64) -> Vec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// 3×3 complex dyadic, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTensor3(pub [[Complex64; 3]; 3]);

impl ComplexTensor3 {
    pub fn zeros() -> Self {
        Self([[Complex64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut t = Self::zeros();
        for i in 0..3 {
            t.0[i][i] = Complex64::new(1.0, 0.0);
        }
        t
    }

    /// Outer product `a ⊗ b`.
    pub fn outer(a: &[Complex64; 3], b: &[Complex64; 3]) -> Self {
        Self(a.map(|ai| b.map(|bj| ai * bj)))
    }

    /// `3 R̂R̂ − I` for a nonzero real direction.
    pub fn near_field_dipole(r: &Vec3) -> Self {
        let len = norm(r);
        let mut t = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                t.0[i][j] = Complex64::new(3.0 * r[i] * r[j] / (len * len) - delta, 0.0);
            }
        }
        t
    }

    /// Matrix product `self · rhs`.
    pub fn dot(&self, rhs: &Self) -> Self {
        let mut t = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        t
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut t = *self;
        t.0.iter_mut().flatten().for_each(|z| *z = f(*z));
        t
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Default for ComplexTensor3 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl Index<(usize, usize)> for ComplexTensor3 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexTensor3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for ComplexTensor3 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexTensor3 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Mul<Complex64> for ComplexTensor3 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scaled(rhs)
    }
}
