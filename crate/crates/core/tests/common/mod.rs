#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinbath_core::{EnvSpin, ExperimentConfig, QubitState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the Bloch sphere.
pub fn random_state(rng: &mut impl Rng) -> QubitState {
    let cos_t: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    QubitState::from_bloch(cos_t.acos() / 2.0, phi)
}

/// Random angular-frequency config with `n` spins and independent couplings.
pub fn random_config(rng: &mut impl Rng, n: usize) -> ExperimentConfig {
    let env = (0..n).map(|_| EnvSpin { state: random_state(rng), f: rng.gen_range(-3.0..3.0) }).collect();
    let omega1 = rng.gen_range(-5.0..5.0);
    let omega2 = rng.gen_range(-5.0..5.0);
    let tau = rng.gen_range(0.05..2.0);
    ExperimentConfig::from_angular(random_state(rng), env, omega1, omega2, tau).unwrap()
}
