//! Q-integration: the right inverse of `Q` fixed by `∫ q_n d_Q x = q_{n+1}/(n+1)_ψ`.

use num_traits::Zero;

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::qcore::QContext;

impl QContext {
    /// The antiderivative `F` with `Q F = f` and `F(0) = 0`.
    pub fn q_antiderivative(&self, f: &Poly) -> Result<Poly> {
        if f.degree() > self.cap() as isize - 1 {
            return Err(Error::DegreeOverflow {
                degree: f.degree() as usize,
                max: self.cap().saturating_sub(1),
            });
        }
        let coords = self.to_basic(f)?;
        let mut raised = vec![Rational::zero(); coords.len() + 1];
        for (n, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                raised[n + 1] = c / self.psi().n_psi(n + 1)?;
            }
        }
        self.from_basic(&raised)
    }

    /// `∫_α^β f d_Q t = F(β) - F(α)`.
    pub fn q_integral_definite(&self, f: &Poly, alpha: &Rational, beta: &Rational) -> Result<Rational> {
        let big_f = self.q_antiderivative(f)?;
        Ok(big_f.eval(beta) - big_f.eval(alpha))
    }
}
