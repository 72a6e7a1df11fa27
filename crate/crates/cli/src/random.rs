//! Seeded generators for verification trials.

use qumbral_core::{int, rat, Poly, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Jackson parameters sampled when no `--q` is fixed.
pub fn q_choices() -> [Rational; 4] {
    [int(2), rat(3, 2), rat(1, 3), int(-2)]
}

/// Independent stream per trial, derived from the run seed and the trial's
/// coordinates.
pub fn trial_seed(seed: u64, suite: usize, preset: usize, trial: usize) -> u64 {
    let mut z = seed
        ^ (suite as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (preset as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
        ^ (trial as u64).wrapping_mul(0x1656_67B1_9E37_79F9);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `-9..=9`, denominator in `1..=9`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// Degree uniform over `0..=max_deg`, coefficients from [`small_rational`].
pub fn poly(rng: &mut impl Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| small_rational(rng)).collect())
}

pub fn jackson_q(rng: &mut impl Rng) -> Rational {
    let choices = q_choices();
    choices[rng.gen_range(0..choices.len())].clone()
}

/// `ψ_0 = 1` followed by `cap` nonzero entries.
pub fn psi_table(rng: &mut impl Rng, cap: usize) -> Vec<Rational> {
    std::iter::once(int(1))
        .chain((0..cap).map(|_| nonzero_rational(rng)))
        .collect()
}
