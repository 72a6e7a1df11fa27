//! Benchmark fixtures shared by the criterion benches.

use qumbral_core::{rat, Poly};

/// Dense polynomial of the given degree with small, varied coefficients.
pub fn sample_poly(degree: usize) -> Poly {
    Poly::from_coeffs(
        (0..=degree)
            .map(|i| rat((i as i64 % 7) - 3, (i as i64 % 5) + 1))
            .collect(),
    )
}
