//! The operator calculus attached to a ψ-basic sequence.
//!
//! A [`QContext`] fixes an admissible ψ, a normal sequence `{q_n}` and a
//! degree cap `N`. From these it derives the generalized differential
//! operator `Q` (through `Q q_n = n_ψ q_{n-1}`), its dual `x̂_Q`, the Q-powers
//! `x^{n*_Q}`, the `*_Q` product and the generalized translation `E^y`.
//!
//! Every operator works on polynomials of degree at most `N`. An operation
//! whose result would exceed `N` fails with [`Error::DegreeOverflow`] rather
//! than truncating.

use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Poly, Rational};
use crate::error::{Error, Result};
use crate::psi::PsiSeq;

/// A normal sequence `q_0 = 1, q_1, …, q_cap` with `deg q_n = n` and
/// `q_n(0) = 0` for `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSeq {
    polys: Vec<Poly>,
}

impl BasicSeq {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::InvalidBasis("empty sequence".into()));
        }
        if polys[0] != Poly::one() {
            return Err(Error::InvalidBasis(format!("q_0 = {}, expected 1", polys[0])));
        }
        for (n, q) in polys.iter().enumerate().skip(1) {
            if q.degree() != n as isize {
                return Err(Error::InvalidBasis(format!(
                    "deg q_{n} = {}, expected {n}",
                    q.degree()
                )));
            }
            if !q.coeff(0).is_zero() {
                return Err(Error::InvalidBasis(format!("q_{n}(0) = {}", q.coeff(0))));
            }
        }
        Ok(BasicSeq { polys })
    }

    /// `q_n = x^n`.
    pub fn monomials(cap: usize) -> Self {
        BasicSeq {
            polys: (0..=cap).map(|n| Poly::monomial(Rational::one(), n)).collect(),
        }
    }

    /// `q_n = x(x-1)⋯(x-n+1)`.
    pub fn falling_factorials(cap: usize) -> Self {
        let mut polys = vec![Poly::one()];
        for n in 1..=cap {
            let factor = Poly::from_coeffs(vec![int(1 - n as i64), Rational::one()]);
            let next = &polys[n - 1] * &factor;
            polys.push(next);
        }
        BasicSeq { polys }
    }

    pub fn cap(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Poly> {
        self.polys.get(n)
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    fn truncated(&self, cap: usize) -> Self {
        BasicSeq {
            polys: self.polys[..=cap].to_vec(),
        }
    }
}

/// One instance of the calculus, truncated at degree `cap`.
#[derive(Clone, Debug)]
pub struct QContext {
    psi: PsiSeq,
    basis: BasicSeq,
    cap: usize,
    /// Row `i` holds the coordinates of `x^i` in the basis `{q_n}`.
    to_basic: Vec<Vec<Rational>>,
    /// Row `n` holds the monomial coefficients of `q_n`.
    from_basic: Vec<Vec<Rational>>,
    /// `Q x^i` for `0 ≤ i ≤ cap`.
    q_on_monomials: Vec<Poly>,
}

impl QContext {
    /// Builds the calculus whose basic sequence is `basis`; `Q` is the unique
    /// generalized differential operator with `Q q_n = n_ψ q_{n-1}`.
    pub fn new(psi: PsiSeq, basis: BasicSeq, cap: usize) -> Result<Self> {
        if psi.cap() < cap {
            return Err(Error::CapMismatch(format!(
                "psi table has cap {}, context needs {cap}",
                psi.cap()
            )));
        }
        if basis.cap() < cap {
            return Err(Error::CapMismatch(format!(
                "basic sequence has cap {}, context needs {cap}",
                basis.cap()
            )));
        }
        // Re-validate in case the caller built the sequence by hand.
        let basis = BasicSeq::new(basis.truncated(cap).polys)?;

        let from_basic: Vec<Vec<Rational>> = basis
            .polys
            .iter()
            .map(|q| {
                let mut row = q.coeffs().to_vec();
                row.resize(cap + 1, Rational::zero());
                row
            })
            .collect();

        let mut to_basic = Vec::with_capacity(cap + 1);
        for i in 0..=cap {
            let mut residual = vec![Rational::zero(); i + 1];
            residual[i] = Rational::one();
            let mut coords = vec![Rational::zero(); cap + 1];
            for n in (0..=i).rev() {
                if residual[n].is_zero() {
                    continue;
                }
                let c = &residual[n] / &from_basic[n][n];
                for (j, r) in residual.iter_mut().enumerate().take(n + 1) {
                    *r -= &c * &from_basic[n][j];
                }
                coords[n] = c;
            }
            to_basic.push(coords);
        }

        let mut ctx = QContext {
            psi,
            basis,
            cap,
            to_basic,
            from_basic,
            q_on_monomials: Vec::new(),
        };
        ctx.q_on_monomials = (0..=cap)
            .map(|i| {
                let coords = &ctx.to_basic[i];
                let lowered: Vec<Rational> = (1..=i)
                    .map(|n| &coords[n] * ctx.psi.n_psi(n).expect("n <= cap"))
                    .collect();
                ctx.combine_basis(&lowered)
            })
            .collect();
        Ok(ctx)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn psi(&self) -> &PsiSeq {
        &self.psi
    }

    pub fn basis(&self) -> &BasicSeq {
        &self.basis
    }

    /// `q_n`, for `n ≤ cap`.
    pub fn q(&self, n: usize) -> &Poly {
        &self.basis.polys[n]
    }

    pub fn n_psi(&self, n: usize) -> &Rational {
        self.psi.n_psi(n).expect("psi cap >= context cap")
    }

    /// `n_ψ!`, for `n ≤ cap`.
    pub fn psi_factorial(&self, n: usize) -> &Rational {
        self.psi.factorial(n).expect("psi cap >= context cap")
    }

    /// `Q x^i` for `0 ≤ i ≤ cap`; the data that determines `Q`.
    pub fn q_on_monomials(&self) -> &[Poly] {
        &self.q_on_monomials
    }

    pub fn to_basic_matrix(&self) -> &[Vec<Rational>] {
        &self.to_basic
    }

    pub fn from_basic_matrix(&self) -> &[Vec<Rational>] {
        &self.from_basic
    }

    /// Copy whose ψ table has `ψ_index` scaled by `factor`, while `Q` keeps
    /// its original action. Only `x̂_Q` and the Q-integral see the change, so
    /// the pair no longer satisfies `[Q, x̂_Q] = id`. Used by mutation tests.
    #[doc(hidden)]
    pub fn with_corrupted_psi(&self, index: usize, factor: &Rational) -> Result<Self> {
        let mut ctx = self.clone();
        ctx.psi = self.psi.with_scaled_entry(index, factor)?;
        Ok(ctx)
    }

    fn check_degree(&self, f: &Poly, max: isize) -> Result<()> {
        if f.degree() > max {
            return Err(Error::DegreeOverflow {
                degree: f.degree() as usize,
                max: max.max(0) as usize,
            });
        }
        Ok(())
    }

    fn combine_basis(&self, coords: &[Rational]) -> Poly {
        let mut out = vec![Rational::zero(); coords.len()];
        for (n, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.from_basic[n].iter().enumerate().take(n + 1) {
                out[j] += c * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Coordinates `c` with `f = Σ c_n q_n`; length `deg f + 1`.
    pub fn to_basic(&self, f: &Poly) -> Result<Vec<Rational>> {
        self.check_degree(f, self.cap as isize)?;
        let mut coords = vec![Rational::zero(); f.len()];
        for (i, a) in f.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (n, m) in self.to_basic[i].iter().enumerate().take(i + 1) {
                coords[n] += a * m;
            }
        }
        Ok(coords)
    }

    /// `Σ c_n q_n`.
    pub fn from_basic(&self, coords: &[Rational]) -> Result<Poly> {
        let used = coords.iter().rposition(|c| !c.is_zero()).map_or(0, |p| p + 1);
        if used > self.cap + 1 {
            return Err(Error::DegreeOverflow {
                degree: used - 1,
                max: self.cap,
            });
        }
        Ok(self.combine_basis(&coords[..used]))
    }

    /// The generalized differential operator `Q`.
    pub fn apply_q(&self, f: &Poly) -> Result<Poly> {
        self.check_degree(f, self.cap as isize)?;
        let mut out = Poly::zero();
        for (i, a) in f.coeffs().iter().enumerate().skip(1) {
            if !a.is_zero() {
                out += &self.q_on_monomials[i].scale(a);
            }
        }
        Ok(out)
    }

    /// `Q^k f`.
    pub fn apply_q_pow(&self, f: &Poly, k: usize) -> Result<Poly> {
        let mut g = f.clone();
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = self.apply_q(&g)?;
        }
        Ok(g)
    }

    /// The dual operator: `x̂_Q q_n = (n+1)/(n+1)_ψ · q_{n+1}`.
    pub fn apply_xhat(&self, f: &Poly) -> Result<Poly> {
        self.check_degree(f, self.cap as isize - 1)?;
        let coords = self.to_basic(f)?;
        let mut raised = vec![Rational::zero(); coords.len() + 1];
        for (n, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let psi = self.psi.n_psi(n + 1)?;
                raised[n + 1] = c * int(n as i64 + 1) / psi;
            }
        }
        self.from_basic(&raised)
    }

    /// `x^{n*_Q} = x̂_Q^n 1`, computed by the recurrence.
    pub fn q_power(&self, n: usize) -> Result<Poly> {
        if n > self.cap {
            return Err(Error::DegreeOverflow {
                degree: n,
                max: self.cap,
            });
        }
        let mut p = Poly::one();
        for _ in 0..n {
            p = self.apply_xhat(&p)?;
        }
        Ok(p)
    }

    /// `f *_Q g = f(x̂_Q) g`, with `f` read in monomial coordinates.
    pub fn star_product(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        if f.is_zero() || g.is_zero() {
            return Ok(Poly::zero());
        }
        let total = f.degree() + g.degree();
        if total > self.cap as isize {
            return Err(Error::DegreeOverflow {
                degree: total as usize,
                max: self.cap,
            });
        }
        // Horner in x̂_Q: c_0 g + x̂(c_1 g + x̂(c_2 g + …)).
        let coeffs = f.coeffs();
        let mut acc = g.scale(&coeffs[coeffs.len() - 1]);
        for c in coeffs.iter().rev().skip(1) {
            acc = &self.apply_xhat(&acc)? + &g.scale(c);
        }
        Ok(acc)
    }

    /// `(x - y)^{k*_Q} = (x̂_Q - y)^k 1`.
    pub fn shifted_q_power(&self, k: usize, y: &Rational) -> Result<Poly> {
        if k > self.cap {
            return Err(Error::DegreeOverflow {
                degree: k,
                max: self.cap,
            });
        }
        let mut p = Poly::one();
        for _ in 0..k {
            p = self.shift_step(&p, y)?;
        }
        Ok(p)
    }

    /// `(x̂_Q - y) p`.
    pub(crate) fn shift_step(&self, p: &Poly, y: &Rational) -> Result<Poly> {
        Ok(&self.apply_xhat(p)? - &p.scale(y))
    }

    /// `E^y f = Σ_k q_k(y) (Q^k f) / k_ψ!`; the sum stops at `deg f`.
    pub fn translate(&self, y: &Rational, f: &Poly) -> Result<Poly> {
        self.check_degree(f, self.cap as isize)?;
        let mut out = Poly::zero();
        let mut qk_f = f.clone();
        let mut k = 0;
        while !qk_f.is_zero() {
            let weight = self.q(k).eval(y) / self.psi_factorial(k);
            out += &qk_f.scale(&weight);
            qk_f = self.apply_q(&qk_f)?;
            k += 1;
        }
        Ok(out)
    }

    /// Partial sum `Σ_{k=0}^{m} α^k q_k / k_ψ!` of `exp_{Q,ψ}[αx]`.
    pub fn q_exp_truncated(&self, alpha: &Rational, m: usize) -> Result<Poly> {
        if m > self.cap {
            return Err(Error::DegreeOverflow {
                degree: m,
                max: self.cap,
            });
        }
        let mut out = Poly::zero();
        let mut power = Rational::one();
        for k in 0..=m {
            out += &self.q(k).scale(&(&power / self.psi_factorial(k)));
            power *= alpha;
        }
        Ok(out)
    }

    /// Partial sum `Σ_{k=0}^{m} α^k x̂_Q^k 1 / k!`; the operator side of
    /// `exp_{Q,ψ}[αx] = exp(α x̂_Q) 1`.
    pub fn exp_xhat_truncated(&self, alpha: &Rational, m: usize) -> Result<Poly> {
        if m > self.cap {
            return Err(Error::DegreeOverflow {
                degree: m,
                max: self.cap,
            });
        }
        let mut out = Poly::one();
        let mut term = Poly::one();
        for k in 1..=m {
            term = self.apply_xhat(&term)?.scale(&(alpha / int(k as i64)));
            out += &term;
        }
        Ok(out)
    }

    /// Closed form `(n!/n_ψ!) q_n` of the n-th Q-power.
    pub fn q_power_closed_form(&self, n: usize) -> Poly {
        self.q(n).scale(&(factorial(n) / self.psi_factorial(n)))
    }
}

/// Recovers the ψ-basic sequence of an operator given by its action on
/// monomials (`q_action[i] = Q x^i`). Each `q_n` solves
/// `Q q_n = n_ψ q_{n-1}` with `q_n(0) = 0`.
pub fn basic_from_operator(q_action: &[Poly], psi: &PsiSeq, cap: usize) -> Result<BasicSeq> {
    if q_action.len() < cap + 1 {
        return Err(Error::CapMismatch(format!(
            "operator table has {} entries, need {}",
            q_action.len(),
            cap + 1
        )));
    }
    if psi.cap() < cap {
        return Err(Error::CapMismatch(format!(
            "psi table has cap {}, need {cap}",
            psi.cap()
        )));
    }
    for (i, image) in q_action.iter().enumerate().take(cap + 1) {
        if image.degree() > i as isize - 1 {
            return Err(Error::NotDegreeLowering(format!(
                "deg Q x^{i} = {}, expected {}",
                image.degree(),
                i as isize - 1
            )));
        }
    }

    let mut polys = vec![Poly::one()];
    for n in 1..=cap {
        let target = polys[n - 1].scale(psi.n_psi(n)?);
        // unknown a_1..a_n, solved from the top coefficient down
        let mut a = vec![Rational::zero(); n + 1];
        for d in (0..n).rev() {
            let mut rhs = target.coeff(d);
            for (i, ai) in a.iter().enumerate().skip(d + 2) {
                rhs -= ai * q_action[i].coeff(d);
            }
            let pivot = q_action[d + 1].coeff(d);
            if pivot.is_zero() {
                return Err(Error::Unsolvable(format!(
                    "Q x^{} has no x^{d} term",
                    d + 1
                )));
            }
            a[d + 1] = rhs / pivot;
        }
        polys.push(Poly::from_coeffs(a));
    }
    BasicSeq::new(polys)
}
