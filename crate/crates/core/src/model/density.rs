use std::ops::{Add, Mul, Sub};

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Number of levels in the dot molecule.
pub const LEVELS: usize = 4;

/// Row-major position of ρᵢⱼ (levels 1..=4) in the vectorized state.
#[inline]
pub const fn vec_index(i: usize, j: usize) -> usize {
    (i - 1) * LEVELS + (j - 1)
}

/// 4×4 density matrix of the dot molecule.
///
/// Storage is zero-based; [`get`](Self::get) and [`set`](Self::set) take the
/// one-based level numbers used throughout the equations of motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    elements: [[Complex64; LEVELS]; LEVELS],
}

impl DensityMatrix {
    pub fn zeros() -> Self {
        Self { elements: [[Complex64::ZERO; LEVELS]; LEVELS] }
    }

    /// All population in |1⟩.
    pub fn ground() -> Self {
        Self::from_populations([1.0, 0.0, 0.0, 0.0])
    }

    pub fn from_populations(populations: [f64; LEVELS]) -> Self {
        let mut rho = Self::zeros();
        for (k, p) in populations.into_iter().enumerate() {
            rho.elements[k][k] = Complex64::new(p, 0.0);
        }
        rho
    }

    pub fn from_elements(elements: [[Complex64; LEVELS]; LEVELS]) -> Self {
        Self { elements }
    }

    pub fn elements(&self) -> &[[Complex64; LEVELS]; LEVELS] {
        &self.elements
    }

    /// ρᵢⱼ with one-based level indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.elements[i - 1][j - 1]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.elements[i - 1][j - 1] = value;
    }

    pub fn trace(&self) -> Complex64 {
        (0..LEVELS).map(|k| self.elements[k][k]).sum()
    }

    pub fn populations(&self) -> [f64; LEVELS] {
        std::array::from_fn(|k| self.elements[k][k].re)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..LEVELS {
            for j in 0..LEVELS {
                out.elements[i][j] = self.elements[j][i].conj();
            }
        }
        out
    }

    /// (ρ + ρ†)/2.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()) * Complex64::new(0.5, 0.0)
    }

    /// Largest |ρᵢⱼ|.
    pub fn max_norm(&self) -> f64 {
        self.elements.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Row-major over (i, j).
    pub fn to_vector(&self) -> [Complex64; LEVELS * LEVELS] {
        std::array::from_fn(|k| self.elements[k / LEVELS][k % LEVELS])
    }

    pub fn from_vector(v: &[Complex64]) -> Self {
        assert_eq!(v.len(), LEVELS * LEVELS, "vectorized density matrix must have 16 entries");
        let mut rho = Self::zeros();
        for (k, z) in v.iter().enumerate() {
            rho.elements[k / LEVELS][k % LEVELS] = *z;
        }
        rho
    }

    pub fn to_matrix(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|i, j| self.elements[i][j])
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let eig = self.hermitian_part().to_matrix().symmetric_eigen();
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl Add for DensityMatrix {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (row, other) in self.elements.iter_mut().zip(rhs.elements.iter()) {
            for (a, b) in row.iter_mut().zip(other.iter()) {
                *a += *b;
            }
        }
        self
    }
}

impl Sub for DensityMatrix {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (row, other) in self.elements.iter_mut().zip(rhs.elements.iter()) {
            for (a, b) in row.iter_mut().zip(other.iter()) {
                *a -= *b;
            }
        }
        self
    }
}

impl Mul<Complex64> for DensityMatrix {
    type Output = Self;

    fn mul(mut self, rhs: Complex64) -> Self {
        self.elements.iter_mut().flatten().for_each(|z| *z *= rhs);
        self
    }
}

impl Mul<f64> for DensityMatrix {
    type Output = Self;

    fn mul(mut self, rhs: f64) -> Self {
        self.elements.iter_mut().flatten().for_each(|z| *z *= rhs);
        self
    }
}
