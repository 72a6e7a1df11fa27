//! Bernoulli-Taylor expansion in a Q-calculus, with the Cauchy-type rest
//! term, and the operator identity it is derived from.
//!
//! With `p̂ = Q` and `q̂ = x̂_Q - y` (so `[p̂, q̂] = id`) the Bernoulli identity
//! reads
//!
//! ```text
//! Q Σ_{k=0}^{n} (y - x̂_Q)^k Q^k / k!  =  (y - x̂_Q)^n Q^{n+1} / n!
//! ```
//!
//! and the expansion of `f` about `y` is
//!
//! ```text
//! f(x) = Σ_{k=0}^{n} (1/k!) (x - y)^{k*_Q} *_Q (Q^k f)(y)  +  R_{n+1}(x)
//! R_{n+1}(x) = (1/n!) ∫_y^x (x - t)^{n*_Q} *_Q (Q^{n+1} f)(t) d_Q t
//! ```
//!
//! The Bernoulli identity holds in every calculus. The reconstruction
//! `Σ terms + R = f` holds in the classical calculus, at order `n = 0`, and
//! about `y = 0` once `n ≥ deg f`. Elsewhere it does not: `(x̂_Q - y)^k 1 / k!`
//! fails to vanish at `x = y` for `k ≥ 2` unless `x̂_Q` is multiplication by
//! `x`. [`TaylorExpansion::is_exact`] reports which case a run is in.

use num_traits::Zero;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::algebra::{binomial, factorial, Poly, Rational};
use crate::error::{Error, Result};
use crate::qcore::QContext;

/// `Σ terms + remainder` together with the polynomial it should rebuild.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorExpansion {
    pub y: Rational,
    pub order: usize,
    /// `terms[k] = (Q^k f)(y)/k! · (x̂_Q - y)^k 1`.
    pub terms: Vec<Poly>,
    pub remainder: Poly,
    pub reconstructed: Poly,
    pub f: Poly,
}

impl TaylorExpansion {
    /// `Σ terms + remainder == f`.
    pub fn is_exact(&self) -> bool {
        self.reconstructed == self.f
    }

    pub fn terms_sum(&self) -> Poly {
        self.terms.iter().fold(Poly::zero(), |acc, t| &acc + t)
    }
}

impl Serialize for TaylorExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TaylorExpansion", 5)?;
        s.serialize_field("y", &self.y.to_string())?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("terms", &self.terms)?;
        s.serialize_field("remainder", &self.remainder)?;
        s.serialize_field("ok", &self.is_exact())?;
        s.end()
    }
}

/// Polynomial in an integration variable `t` whose coefficients are
/// polynomials in `x`; `coeffs[i]` multiplies `t^i`.
#[derive(Clone, Debug, Default)]
struct TPoly {
    coeffs: Vec<Poly>,
}

impl TPoly {
    fn add_term(&mut self, t_power: usize, x_coeff: &Poly) {
        if self.coeffs.len() <= t_power {
            self.coeffs.resize(t_power + 1, Poly::zero());
        }
        self.coeffs[t_power] += x_coeff;
    }

    /// Q-antiderivative in `t`, `x` held fixed.
    fn q_antiderivative(&self, ctx: &QContext) -> Result<TPoly> {
        let mut out = TPoly::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let anti = ctx.q_antiderivative(&Poly::monomial(Rational::from_integer(1.into()), i))?;
            for (m, a) in anti.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out.add_term(m, &c.scale(a));
                }
            }
        }
        Ok(out)
    }

    /// Substitute `t = x`.
    fn on_diagonal(&self) -> Poly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (m, c)| {
                &acc + &(c * &Poly::monomial(Rational::from_integer(1.into()), m))
            })
    }

    /// Substitute `t = y`.
    fn at(&self, y: &Rational) -> Poly {
        let mut power = Rational::from_integer(1.into());
        let mut out = Poly::zero();
        for c in &self.coeffs {
            out += &c.scale(&power);
            power *= y;
        }
        out
    }
}

fn check_expansion(ctx: &QContext, f: &Poly, n: usize) -> Result<()> {
    let cap = ctx.cap();
    if f.degree() > cap as isize - 1 {
        return Err(Error::DegreeOverflow {
            degree: f.degree() as usize,
            max: cap.saturating_sub(1),
        });
    }
    if n + 1 > cap {
        return Err(Error::OrderOverflow {
            order: n,
            needed: n + 1,
            cap,
        });
    }
    Ok(())
}

/// `(y - x̂_Q) p`.
fn y_minus_xhat(ctx: &QContext, p: &Poly, y: &Rational) -> Result<Poly> {
    Ok(&p.scale(y) - &ctx.apply_xhat(p)?)
}

/// LHS − RHS of the Bernoulli identity applied to `f`. Zero whenever
/// `[Q, x̂_Q] = id` holds on the polynomials involved.
pub fn viskov_residual(ctx: &QContext, n: usize, y: &Rational, f: &Poly) -> Result<Poly> {
    if f.degree() + 1 > ctx.cap() as isize {
        return Err(Error::DegreeOverflow {
            degree: f.degree() as usize,
            max: ctx.cap().saturating_sub(1),
        });
    }
    let mut sum = Poly::zero();
    let mut qk_f = f.clone();
    for k in 0..=n {
        let mut term = qk_f.clone();
        for _ in 0..k {
            term = y_minus_xhat(ctx, &term, y)?;
        }
        sum += &term.scale(&factorial(k).recip());
        qk_f = ctx.apply_q(&qk_f)?;
    }
    let lhs = ctx.apply_q(&sum)?;

    // qk_f now holds Q^{n+1} f
    let mut rhs = qk_f;
    for _ in 0..n {
        rhs = y_minus_xhat(ctx, &rhs, y)?;
    }
    let rhs = rhs.scale(&factorial(n).recip());
    Ok(&lhs - &rhs)
}

/// Cauchy-type rest term `R_{n+1}` as a polynomial in `x`.
///
/// `(x̂_Q - t)^n 1 = Σ_j C(n,j) (-t)^{n-j} x^{j*_Q}`; the integrand is that
/// times `(Q^{n+1} f)(t)`, Q-integrated in `t` from `y` to `x`.
pub fn cauchy_remainder(ctx: &QContext, f: &Poly, y: &Rational, n: usize) -> Result<Poly> {
    check_expansion(ctx, f, n)?;
    let g = ctx.apply_q_pow(f, n + 1)?;
    if g.is_zero() {
        return Ok(Poly::zero());
    }
    let mut integrand = TPoly::default();
    let mut q_pow = Poly::one();
    for j in 0..=n {
        if j > 0 {
            q_pow = ctx.apply_xhat(&q_pow)?;
        }
        // C(n,j) (-1)^{n-j} t^{n-j} g(t)
        let mut scalar = binomial(n, j);
        if (n - j) % 2 == 1 {
            scalar = -scalar;
        }
        let x_part = q_pow.scale(&scalar);
        for (i, gi) in g.coeffs().iter().enumerate() {
            if !gi.is_zero() {
                integrand.add_term(n - j + i, &x_part.scale(gi));
            }
        }
    }
    let anti = integrand.q_antiderivative(ctx)?;
    let definite = &anti.on_diagonal() - &anti.at(y);
    Ok(definite.scale(&factorial(n).recip()))
}

/// Expansion of `f` about `y` to order `n` with its Cauchy-type remainder.
pub fn bernoulli_taylor(ctx: &QContext, f: &Poly, y: &Rational, n: usize) -> Result<TaylorExpansion> {
    check_expansion(ctx, f, n)?;
    let mut terms = Vec::with_capacity(n + 1);
    let mut qk_f = f.clone();
    let mut shifted = Poly::one();
    for k in 0..=n {
        if qk_f.is_zero() {
            terms.push(Poly::zero());
            continue;
        }
        if k > 0 {
            shifted = ctx.shift_step(&shifted, y)?;
        }
        let scalar = qk_f.eval(y) / factorial(k);
        terms.push(if scalar.is_zero() {
            Poly::zero()
        } else {
            shifted.scale(&scalar)
        });
        qk_f = ctx.apply_q(&qk_f)?;
    }
    let remainder = cauchy_remainder(ctx, f, y, n)?;
    let reconstructed = terms.iter().fold(remainder.clone(), |acc, t| &acc + t);
    Ok(TaylorExpansion {
        y: y.clone(),
        order: n,
        terms,
        remainder,
        reconstructed,
        f: f.clone(),
    })
}
