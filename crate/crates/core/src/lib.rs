//! Exact Q-umbral calculus on polynomials over the rationals.
//!
//! A calculus is a [`QContext`]: an admissible ψ-sequence plus a normal
//! basic sequence `{q_n}`, which together fix the generalized differential
//! operator `Q`, the dual operator `x̂_Q`, the `*_Q` product and the
//! Q-integral. [`presets`] builds the standard instances and [`taylor`]
//! carries the Bernoulli-Taylor expansion with its Cauchy-type remainder.

pub mod algebra;
pub mod error;
pub mod presets;
pub mod psi;
pub mod qcore;
pub mod qintegral;
pub mod taylor;

pub use algebra::{int, parse_rational, rat, Poly, Rational};
pub use error::{Error, Result};
pub use presets::Preset;
pub use psi::PsiSeq;
pub use qcore::{basic_from_operator, BasicSeq, QContext};
pub use taylor::{bernoulli_taylor, cauchy_remainder, viskov_residual, TaylorExpansion};
