//! Ready-made calculi: the classical derivative, Jackson's q-derivative, a
//! ψ-derivative for an arbitrary admissible table, and the forward
//! difference on falling factorials.

use std::fmt;

use num_traits::One;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::psi::{self, PsiSeq};
use crate::qcore::{BasicSeq, QContext};

/// `Q = D`, `q_n = x^n`, `ψ_n = 1/n!`.
pub fn classical(cap: usize) -> QContext {
    QContext::new(psi::classical_table(cap), BasicSeq::monomials(cap), cap)
        .expect("classical calculus is valid")
}

/// Jackson's derivative `(f(x) - f(qx)) / ((1-q)x)` on monomials.
pub fn jackson(q: &Rational, cap: usize) -> Result<QContext> {
    if q.is_one() {
        return Err(Error::SingularParameter(
            "q = 1 makes (1 - q^n)/(1 - q) singular; use the classical preset".into(),
        ));
    }
    let table = psi::jackson_table(q, cap)?;
    QContext::new(table, BasicSeq::monomials(cap), cap)
}

/// `∂_ψ x^n = n_ψ x^{n-1}`.
pub fn psi_derivative(psi: &PsiSeq, cap: usize) -> Result<QContext> {
    QContext::new(psi.clone(), BasicSeq::monomials(cap), cap)
}

/// `Δf(x) = f(x+1) - f(x)`, with basic sequence `x(x-1)⋯(x-n+1)`.
pub fn forward_difference(cap: usize) -> QContext {
    QContext::new(
        psi::classical_table(cap),
        BasicSeq::falling_factorials(cap),
        cap,
    )
    .expect("falling factorials are a normal sequence")
}

/// A named preset, buildable at any cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Classical,
    Jackson(Rational),
    /// ψ-derivative for the given `ψ_0, ψ_1, …` table.
    Psi(Vec<Rational>),
    ForwardDifference,
}

impl Preset {
    pub fn build(&self, cap: usize) -> Result<QContext> {
        match self {
            Preset::Classical => Ok(classical(cap)),
            Preset::Jackson(q) => jackson(q, cap),
            Preset::Psi(values) => psi_derivative(&PsiSeq::from_table(values.clone())?, cap),
            Preset::ForwardDifference => Ok(forward_difference(cap)),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Classical => f.write_str("classical"),
            Preset::Jackson(q) => write!(f, "jackson(q={q})"),
            Preset::Psi(values) => {
                let vs: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "psi[{}]", vs.join(","))
            }
            Preset::ForwardDifference => f.write_str("falling"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Poly};
    use crate::qcore::basic_from_operator;

    fn x_pow(k: usize) -> Poly {
        Poly::monomial(int(1), k)
    }

    #[test]
    fn classical_examples() {
        let c = classical(8);
        assert_eq!(c.apply_q(&x_pow(4)).unwrap(), Poly::monomial(int(4), 3));
        for n in 0..=8 {
            assert_eq!(c.q_power(n).unwrap(), x_pow(n));
            assert_eq!(c.n_psi(n), &int(n as i64));
        }
    }

    #[test]
    fn jackson_examples() {
        let j = jackson(&int(2), 8).unwrap();
        assert_eq!(j.apply_q(&x_pow(3)).unwrap(), Poly::monomial(int(7), 2));
        assert!(matches!(jackson(&int(-1), 8), Err(Error::NotAdmissible(_))));
        assert!(matches!(jackson(&int(1), 8), Err(Error::SingularParameter(_))));
        assert_eq!(jackson(&rat(1, 3), 8).unwrap().n_psi(2), &rat(4, 3));
        // q = 0 is admissible: every n_q is 1
        assert_eq!(jackson(&int(0), 4).unwrap().n_psi(4), &int(1));
    }

    #[test]
    fn jackson_rejects_roots_of_unity_only_within_cap() {
        // 2_q = 0 at q = -1, but a cap of 1 never reaches it
        assert!(jackson(&int(-1), 1).is_ok());
        assert!(jackson(&int(-1), 2).is_err());
    }

    #[test]
    fn psi_derivative_examples() {
        let f = Poly::from_coeffs(vec![rat(1, 2), int(-1), int(3), rat(2, 9)]);
        let c = psi_derivative(&psi::classical_table(6), 6).unwrap();
        let reference = classical(6);
        assert_eq!(c.apply_q(&f).unwrap(), reference.apply_q(&f).unwrap());
        assert_eq!(c.apply_xhat(&f).unwrap(), reference.apply_xhat(&f).unwrap());

        let jt = psi::jackson_table(&int(2), 6).unwrap();
        let j = psi_derivative(&jt, 6).unwrap();
        let reference = jackson(&int(2), 6).unwrap();
        assert_eq!(j.apply_q(&f).unwrap(), reference.apply_q(&f).unwrap());
        assert_eq!(j.q_on_monomials(), reference.q_on_monomials());

        let ones = PsiSeq::from_table(vec![int(1); 7]).unwrap();
        let o = psi_derivative(&ones, 6).unwrap();
        assert_eq!(o.apply_q(&x_pow(3)).unwrap(), x_pow(2));
        assert_eq!(o.apply_xhat(&x_pow(2)).unwrap(), Poly::monomial(int(3), 3));
        assert!(matches!(
            psi_derivative(&ones, 7),
            Err(Error::CapMismatch(_))
        ));
    }

    #[test]
    fn forward_difference_examples() {
        let d = forward_difference(8);
        assert_eq!(d.apply_q(&x_pow(2)).unwrap(), Poly::from_ints(&[1, 2]));
        assert_eq!(d.apply_q(d.q(2)).unwrap(), d.q(1).scale(&int(2)));
        assert_eq!(d.to_basic(&x_pow(2)).unwrap(), vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn every_preset_round_trips_through_markowsky() {
        let presets = [
            Preset::Classical,
            Preset::Jackson(int(2)),
            Preset::Jackson(rat(3, 2)),
            Preset::Jackson(rat(1, 3)),
            Preset::Jackson(int(-2)),
            Preset::Psi(vec![int(1), rat(-1, 2), int(3), rat(2, 7), int(5), rat(-1, 9), int(1)]),
            Preset::ForwardDifference,
        ];
        for p in presets {
            let ctx = p.build(6).unwrap();
            let rebuilt = basic_from_operator(ctx.q_on_monomials(), ctx.psi(), 6).unwrap();
            assert_eq!(&rebuilt, ctx.basis(), "{p}");
        }
    }

    #[test]
    fn preset_labels() {
        assert_eq!(Preset::Jackson(rat(3, 2)).to_string(), "jackson(q=3/2)");
        assert_eq!(Preset::ForwardDifference.to_string(), "falling");
        assert_eq!(Preset::Psi(vec![int(1), rat(1, 2)]).to_string(), "psi[1,1/2]");
    }
}
