//! Two-level state containers: pure qubit amplitudes and 2×2 reduced
//! density matrices.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on |up|² + |down|² − 1 accepted at construction.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Normalized amplitude pair `up|↑⟩ + down|↓⟩`.
///
/// Serialized as `[[re, im], [re, im]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[[f64; 2]; 2]", try_from = "[[f64; 2]; 2]")]
pub struct QubitState {
    up: Complex64,
    down: Complex64,
}

impl QubitState {
    pub const UP: QubitState = QubitState { up: Complex64::new(1.0, 0.0), down: Complex64::new(0.0, 0.0) };
    pub const DOWN: QubitState = QubitState { up: Complex64::new(0.0, 0.0), down: Complex64::new(1.0, 0.0) };

    /// Checked constructor; rejects amplitudes whose norm is off by more than
    /// [`NORM_TOLERANCE`].
    pub fn new(up: Complex64, down: Complex64) -> Result<Self> {
        let norm = up.norm_sqr() + down.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::domain(format!("qubit amplitudes have |up|^2+|down|^2 = {norm}, expected 1")));
        }
        Ok(QubitState { up, down })
    }

    /// Rescales arbitrary (nonzero) amplitudes onto the unit sphere.
    pub fn renormalize(up: Complex64, down: Complex64) -> Result<Self> {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::domain("cannot renormalize a zero or non-finite amplitude pair"));
        }
        Ok(QubitState { up: up / norm, down: down / norm })
    }

    /// Real amplitudes `(cos t, sin t)`.
    pub fn from_angle(t: f64) -> Self {
        QubitState { up: Complex64::new(t.cos(), 0.0), down: Complex64::new(t.sin(), 0.0) }
    }

    /// `cos(t)|↑⟩ + e^{iφ} sin(t)|↓⟩`.
    pub fn from_bloch(t: f64, phi: f64) -> Self {
        QubitState { up: Complex64::new(t.cos(), 0.0), down: Complex64::from_polar(t.sin(), phi) }
    }

    /// The balanced state (|↑⟩ + |↓⟩)/√2, with bit-identical amplitudes so
    /// that |up|² − |down|² is exactly zero.
    pub fn plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        QubitState { up: h, down: h }
    }

    pub fn up(&self) -> Complex64 {
        self.up
    }

    pub fn down(&self) -> Complex64 {
        self.down
    }

    /// |up|² − |down|², i.e. ⟨σ_z⟩.
    pub fn population_imbalance(&self) -> f64 {
        self.up.norm_sqr() - self.down.norm_sqr()
    }

    /// up·down*, the upper off-diagonal of |ψ⟩⟨ψ|.
    pub fn coherence(&self) -> Complex64 {
        self.up * self.down.conj()
    }

    /// up·down* + up*·down = ⟨σ_x⟩.
    pub fn sx_expectation(&self) -> f64 {
        2.0 * self.coherence().re
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub(crate) fn from_parts_unchecked(up: Complex64, down: Complex64) -> Self {
        QubitState { up, down }
    }
}

impl From<QubitState> for [[f64; 2]; 2] {
    fn from(q: QubitState) -> Self {
        [[q.up.re, q.up.im], [q.down.re, q.down.im]]
    }
}

impl TryFrom<[[f64; 2]; 2]> for QubitState {
    type Error = Error;

    fn try_from(v: [[f64; 2]; 2]) -> Result<Self> {
        QubitState::new(Complex64::new(v[0][0], v[0][1]), Complex64::new(v[1][0], v[1][1]))
    }
}

/// Reduced state of the central spin in the (↑, ↓) basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix2(pub Matrix2<Complex64>);

impl DensityMatrix2 {
    pub fn from_pure(q: &QubitState) -> Self {
        let (a, b) = (q.up, q.down);
        DensityMatrix2(Matrix2::new(a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj()))
    }

    pub fn new(rho_uu: f64, rho_ud: Complex64, rho_dd: f64) -> Self {
        DensityMatrix2(Matrix2::new(Complex64::new(rho_uu, 0.0), rho_ud, rho_ud.conj(), Complex64::new(rho_dd, 0.0)))
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[(0, 0)] + self.0[(1, 1)]
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = &self.0;
        let (p, q) = (m[(0, 0)].re, m[(1, 1)].re);
        let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
        let mean = 0.5 * (p + q);
        let radius = (0.25 * (p - q) * (p - q) + off.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.eigenvalues()[0] >= -tol
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix2) -> f64 {
        (self.0 - other.0).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// ⟨σ_x⟩ = ρ_{↑↓} + ρ_{↓↑}.
    pub fn sx_expectation(&self) -> f64 {
        (self.0[(0, 1)] + self.0[(1, 0)]).re
    }

    /// Rows as `[[re, im], [re, im]]` pairs.
    pub fn to_rows(&self) -> [[[f64; 2]; 2]; 2] {
        let c = |i, j| [self.0[(i, j)].re, self.0[(i, j)].im];
        [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]]
    }
}
