//! Brute-force oracle: dense state-vector evolution of the central spin and
//! N environment spins, each environment spin interacting with the central
//! spin for its own flight window of length τ.
//!
//! Basis ordering: bit 0 of an amplitude index is the central spin, bit k the
//! k-th environment spin in flight order; a clear bit means ↑. Pair operators
//! are written in the Kronecker order central ⊗ environment.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::analytic::{final_state_weak_coupling, BranchState};
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::state::{DensityMatrix2, QubitState};

pub const DEFAULT_N_CAP: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn pauli_x() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

fn pauli_y() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

fn pauli_z() -> Matrix2<Complex64> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    let k = a.kronecker(b);
    Matrix4::from_fn(|i, j| k[(i, j)])
}

/// Which part of the spin-spin interaction is kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CouplingMode {
    /// f (σ_x σ_x + σ_y σ_y + σ_z σ_z)
    #[default]
    Heisenberg,
    /// f σ_z σ_z only; the two-branch closed form is exact in this mode.
    Dephasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvolveOptions {
    /// Strip the Zeeman phases so the result compares directly with the
    /// weak-coupling closed form.
    pub interaction_picture: bool,
    pub coupling: CouplingMode,
    pub n_cap: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { interaction_picture: true, coupling: CouplingMode::Heisenberg, n_cap: DEFAULT_N_CAP }
    }
}

impl EvolveOptions {
    pub fn dephasing() -> Self {
        EvolveOptions { coupling: CouplingMode::Dephasing, ..Self::default() }
    }
}

/// 4×4 Hermitian generator on (central ⊗ k-th environment spin), rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairHamiltonian(pub Matrix4<Complex64>);

impl PairHamiltonian {
    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.0).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    /// exp(-iHt) by exact diagonalization.
    pub fn propagator(&self, t: f64) -> Matrix4<Complex64> {
        let eig = SymmetricEigen::new(self.0);
        let v = eig.eigenvectors;
        let phases = Matrix4::from_diagonal(&eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t)));
        v * phases * v.adjoint()
    }
}

/// γ₁B σ_z⊗I + γ₂B I⊗σ_z (optional) plus the k-th coupling term.
pub fn build_pair_hamiltonian(cfg: &ExperimentConfig, k: usize, include_zeeman: bool, coupling: CouplingMode) -> Result<PairHamiltonian> {
    let spin = cfg.env.get(k).ok_or(Error::IndexOutOfRange { index: k, len: cfg.n() })?;
    let id = Matrix2::identity();
    let zz = kron(&pauli_z(), &pauli_z());
    let interaction = match coupling {
        CouplingMode::Heisenberg => kron(&pauli_x(), &pauli_x()) + kron(&pauli_y(), &pauli_y()) + zz,
        CouplingMode::Dephasing => zz,
    };
    let mut h = interaction * Complex64::new(spin.f, 0.0);
    if include_zeeman {
        h +=
            kron(&pauli_z(), &id) * Complex64::new(cfg.omega_central(), 0.0) + kron(&id, &pauli_z()) * Complex64::new(cfg.omega_env(), 0.0);
    }
    Ok(PairHamiltonian(h))
}

/// Dense amplitudes over the 2^(N+1)-dimensional product space.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    n_env: usize,
}

impl StateVector {
    pub fn product(central: &QubitState, env: &[QubitState]) -> Self {
        let mut amps = vec![central.up(), central.down()];
        for q in env {
            let mut next = Vec::with_capacity(amps.len() * 2);
            next.extend(amps.iter().map(|a| a * q.up()));
            next.extend(amps.iter().map(|a| a * q.down()));
            amps = next;
        }
        StateVector { amps, n_env: env.len() }
    }

    /// Dense re-expansion of the two-branch weak-coupling state.
    pub fn from_branches(state: &BranchState, n_cap: usize) -> Result<Self> {
        if state.n() > n_cap {
            return Err(Error::TooManySpins { requested: state.n(), cap: n_cap });
        }
        let dim = 1usize << (state.n() + 1);
        Ok(StateVector { amps: (0..dim).map(|i| state.amplitude(i)).collect(), n_env: state.n() })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Malformed(format!("state vector length {len} is not 2^(N+1)")));
        }
        Ok(StateVector { n_env: len.trailing_zeros() as usize - 1, amps })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn n_env(&self) -> usize {
        self.n_env
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// |⟨self|other⟩|².
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Applies a 4×4 operator (central ⊗ env order) to the central spin and
    /// environment spin `k` (0-based).
    fn apply_pair(&mut self, k: usize, u: &Matrix4<Complex64>) {
        let env_bit = 1usize << (k + 1);
        for base in 0..self.amps.len() {
            if base & (1 | env_bit) != 0 {
                continue;
            }
            // local index 2·c + e
            let idx = [base, base | env_bit, base | 1, base | 1 | env_bit];
            let v = idx.map(|i| self.amps[i]);
            for (row, &i) in idx.iter().enumerate() {
                self.amps[i] = (0..4).map(|col| u[(row, col)] * v[col]).sum();
            }
        }
    }
}

/// Flies the environment spins past the central spin one at a time, applying
/// `U_k = exp(-i H_k τ)` to the (central, k) pair.
pub fn evolve_sequential(cfg: &ExperimentConfig, opts: &EvolveOptions) -> Result<StateVector> {
    if cfg.n() > opts.n_cap {
        return Err(Error::TooManySpins { requested: cfg.n(), cap: opts.n_cap });
    }
    let env: Vec<QubitState> = cfg.env.iter().map(|s| s.state).collect();
    let mut psi = StateVector::product(&cfg.central, &env);
    for k in 0..cfg.n() {
        let h = build_pair_hamiltonian(cfg, k, true, opts.coupling)?;
        let mut u = h.propagator(cfg.tau);
        if opts.interaction_picture {
            u = zeeman_undo(cfg) * u;
        }
        psi.apply_pair(k, &u);
    }
    Ok(psi)
}

/// exp(+i H_Zeeman τ) for one pair window.
fn zeeman_undo(cfg: &ExperimentConfig) -> Matrix4<Complex64> {
    let (w1, w2) = (cfg.omega_central(), cfg.omega_env());
    let energies = [w1 + w2, w1 - w2, -w1 + w2, -w1 - w2];
    Matrix4::from_fn(|i, j| if i == j { Complex64::from_polar(1.0, energies[i] * cfg.tau) } else { ZERO })
}

/// Traces out every environment spin.
pub fn partial_trace_env(psi: &StateVector) -> DensityMatrix2 {
    let mut rho = Matrix2::zeros();
    for pair in psi.amps.chunks_exact(2) {
        let (u, d) = (pair[0], pair[1]);
        rho[(0, 0)] += u * u.conj();
        rho[(0, 1)] += u * d.conj();
        rho[(1, 0)] += d * u.conj();
        rho[(1, 1)] += d * d.conj();
    }
    DensityMatrix2(rho)
}

/// ⟨ψ| σ_x ⊗ σ_x ⊗ … ⊗ σ_x |ψ⟩ together with its (ideally zero) imaginary part.
pub fn expectation_global_m_complex(psi: &StateVector) -> Complex64 {
    let mask = psi.amps.len() - 1;
    psi.amps.iter().enumerate().map(|(i, a)| a.conj() * psi.amps[i ^ mask]).sum()
}

/// ⟨ψ| σ_x ⊗ σ_x ⊗ … ⊗ σ_x |ψ⟩.
pub fn expectation_global_m(psi: &StateVector) -> f64 {
    expectation_global_m_complex(psi).re
}

/// ⟨M⟩ for the statistical mixture left by a z-basis collapse of the central
/// spin: Σ_branch p_branch ⟨M⟩_branch over the two weak-coupling branches.
/// Each branch is a product state, so no dense vector is needed at any N.
pub fn expectation_collapsed_m(cfg: &ExperimentConfig) -> f64 {
    let s = final_state_weak_coupling(cfg);
    let branch =
        |central: QubitState, env: &[QubitState]| central.sx_expectation() * env.iter().map(QubitState::sx_expectation).product::<f64>();
    s.branch_up_amp.norm_sqr() * branch(QubitState::UP, &s.env_up_branch)
        + s.branch_down_amp.norm_sqr() * branch(QubitState::DOWN, &s.env_down_branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::EnvSpin;

    fn cfg_with(omega1: f64, omega2: f64, f: &[f64], tau: f64) -> ExperimentConfig {
        let env = f.iter().map(|&f| EnvSpin { state: QubitState::from_bloch(0.6, 0.3), f }).collect();
        ExperimentConfig::from_angular(QubitState::from_bloch(0.9, -0.4), env, omega1, omega2, tau).unwrap()
    }

    #[test]
    fn pure_zeeman_is_diagonal() {
        let c = cfg_with(3.0, 1.0, &[0.0], 1.0);
        let h = build_pair_hamiltonian(&c, 0, true, CouplingMode::Heisenberg).unwrap().0;
        let want = [4.0, 2.0, -2.0, -4.0];
        for i in 0..4 {
            for j in 0..4 {
                let w = if i == j { want[i] } else { 0.0 };
                assert!((h[(i, j)] - Complex64::new(w, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn heisenberg_spectrum() {
        let c = cfg_with(0.0, 0.0, &[1.0], 1.0);
        let h = build_pair_hamiltonian(&c, 0, true, CouplingMode::Heisenberg).unwrap();
        assert!(h.hermiticity_defect() < 1e-15);
        let ev = h.eigenvalues();
        for (got, want) in ev.iter().zip([-3.0, 1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn flip_flop_gap_matches_omega_k() {
        let c = cfg_with(3.0, 1.0, &[0.1], 1.0);
        let h = build_pair_hamiltonian(&c, 0, true, CouplingMode::Heisenberg).unwrap().0;
        // central block spanned by |↑↓⟩ (1) and |↓↑⟩ (2)
        let block = Matrix2::new(h[(1, 1)], h[(1, 2)], h[(2, 1)], h[(2, 2)]);
        let ev = SymmetricEigen::new(block).eigenvalues;
        let gap = (ev[0] - ev[1]).abs();
        assert!((gap - 2.0 * (0.04f64 + 4.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_spin() {
        let c = cfg_with(3.0, 1.0, &[0.1], 1.0);
        assert!(matches!(build_pair_hamiltonian(&c, 1, true, CouplingMode::Heisenberg), Err(Error::IndexOutOfRange { index: 1, len: 1 })));
    }

    #[test]
    fn empty_environment_is_untouched() {
        let c = cfg_with(3.0, 1.0, &[], 1.0);
        let psi = evolve_sequential(&c, &EvolveOptions::default()).unwrap();
        assert_eq!(psi.amplitudes(), &[c.central.up(), c.central.down()]);
    }

    #[test]
    fn no_coupling_keeps_product_state() {
        let c = cfg_with(3.0, 1.0, &[0.0, 0.0, 0.0], 0.7);
        let psi = evolve_sequential(&c, &EvolveOptions::default()).unwrap();
        let env: Vec<_> = c.env.iter().map(|s| s.state).collect();
        let init = StateVector::product(&c.central, &env);
        for (a, b) in psi.amplitudes().iter().zip(init.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn cap_is_enforced_and_named() {
        let c = cfg_with(3.0, 1.0, &[0.01; 13], 1.0);
        let err = evolve_sequential(&c, &EvolveOptions::default()).unwrap_err();
        assert_eq!(err, Error::TooManySpins { requested: 13, cap: 12 });
        assert!(err.to_string().contains("12"));
        let opts = EvolveOptions { n_cap: 13, ..EvolveOptions::default() };
        assert!(evolve_sequential(&c, &opts).is_ok());
    }

    #[test]
    fn partial_trace_examples() {
        let central = QubitState::from_bloch(0.5, 1.2);
        let psi = StateVector::product(&central, &[QubitState::from_bloch(0.2, 0.1), QubitState::DOWN]);
        let rho = partial_trace_env(&psi);
        assert!(rho.max_abs_diff(&DensityMatrix2::from_pure(&central)) < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        // (|↑↑⟩ + |↓↓⟩)/√2: indices 0 and 3
        let bell = StateVector::from_amplitudes(vec![h.into(), ZERO, ZERO, h.into()]).unwrap();
        let rho = partial_trace_env(&bell);
        assert!(rho.max_abs_diff(&DensityMatrix2::new(0.5, ZERO, 0.5)) < 1e-15);
    }

    #[test]
    fn global_m_examples() {
        let all_up = StateVector::product(&QubitState::UP, &[QubitState::UP; 4]);
        assert_eq!(expectation_global_m(&all_up), 0.0);
        let plus = StateVector::product(&QubitState::plus(), &[]);
        assert!((expectation_global_m(&plus) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collapsed_m_examples() {
        let c = cfg_with(3.0, 1.0, &[0.1, 0.2, 0.3], 1.0);
        assert_eq!(expectation_collapsed_m(&c), 0.0);
        let mut c = c;
        c.central = QubitState::UP;
        assert_eq!(expectation_collapsed_m(&c), 0.0);
    }

    #[test]
    fn from_amplitudes_rejects_bad_lengths() {
        assert!(StateVector::from_amplitudes(vec![ONE; 3]).is_err());
        assert!(StateVector::from_amplitudes(vec![ONE]).is_err());
    }
}
