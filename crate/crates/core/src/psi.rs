//! Admissible ψ-sequences and the deformed integers, factorials and binomials
//! they generate.

use num_traits::{One, Zero};

use crate::algebra::{int, Rational};
use crate::error::{Error, Result};

/// A finite admissible sequence `ψ_0 = 1, ψ_1, …, ψ_cap`, all nonzero.
///
/// `n_ψ = ψ_{n-1} / ψ_n` and `n_ψ! = 1 / ψ_n` are tabulated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSeq {
    values: Vec<Rational>,
    n_psi: Vec<Rational>,
    factorials: Vec<Rational>,
}

impl PsiSeq {
    pub fn from_table(values: Vec<Rational>) -> Result<Self> {
        match values.first() {
            None => return Err(Error::NotAdmissible("empty table".into())),
            Some(v) if !v.is_one() => {
                return Err(Error::NotAdmissible(format!("psi_0 = {v}, expected 1")))
            }
            _ => {}
        }
        if let Some(n) = values.iter().position(Zero::is_zero) {
            return Err(Error::NotAdmissible(format!("psi_{n} = 0")));
        }
        let mut n_psi = Vec::with_capacity(values.len());
        n_psi.push(Rational::zero());
        for n in 1..values.len() {
            n_psi.push(&values[n - 1] / &values[n]);
        }
        let factorials = values.iter().map(|v| v.recip()).collect();
        Ok(PsiSeq {
            values,
            n_psi,
            factorials,
        })
    }

    /// Table built from the deformed integers `1_ψ, 2_ψ, …, cap_ψ`, via
    /// `ψ_n = 1 / (n_ψ · … · 1_ψ)`.
    pub fn from_deformed_integers(integers: &[Rational]) -> Result<Self> {
        let mut values = vec![Rational::one()];
        for (i, n) in integers.iter().enumerate() {
            if n.is_zero() {
                return Err(Error::NotAdmissible(format!("{}_psi = 0", i + 1)));
            }
            let prev = values.last().expect("nonempty");
            values.push(prev / n);
        }
        PsiSeq::from_table(values)
    }

    pub fn cap(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, n: usize) -> Result<&Rational> {
        self.check(n)?;
        Ok(&self.values[n])
    }

    /// `n_ψ = ψ_{n-1}/ψ_n`, with `0_ψ = 0`.
    pub fn n_psi(&self, n: usize) -> Result<&Rational> {
        self.check(n)?;
        Ok(&self.n_psi[n])
    }

    /// `n_ψ! = 1/ψ_n`.
    pub fn factorial(&self, n: usize) -> Result<&Rational> {
        self.check(n)?;
        Ok(&self.factorials[n])
    }

    /// Falling ψ-factorial `n_ψ (n-1)_ψ ⋯ (n-k+1)_ψ`.
    pub fn falling(&self, n: usize, k: usize) -> Result<Rational> {
        self.check(n)?;
        if k > n {
            return Err(Error::OutOfRange { index: k, cap: n });
        }
        Ok((n - k + 1..=n).fold(Rational::one(), |acc, i| acc * &self.n_psi[i]))
    }

    pub fn binomial(&self, n: usize, k: usize) -> Result<Rational> {
        Ok(self.falling(n, k)? / self.factorial(k)?)
    }

    /// Partial sum `Σ_{k=0}^{m} y^k / k_ψ!` of `exp_ψ{y}`.
    pub fn exp_truncated(&self, y: &Rational, m: usize) -> Result<Rational> {
        self.check(m)?;
        let mut power = Rational::one();
        let mut sum = Rational::zero();
        for k in 0..=m {
            sum += &power * &self.values[k];
            power *= y;
        }
        Ok(sum)
    }

    /// Copy with `ψ_index` multiplied by `factor`. Test hook for mutation
    /// checks; the result is still admissible when `factor` is nonzero.
    #[doc(hidden)]
    pub fn with_scaled_entry(&self, index: usize, factor: &Rational) -> Result<Self> {
        self.check(index)?;
        let mut values = self.values.clone();
        values[index] *= factor;
        PsiSeq::from_table(values)
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap() {
            Err(Error::OutOfRange {
                index: n,
                cap: self.cap(),
            })
        } else {
            Ok(())
        }
    }
}

/// Gaussian integer `n_q = 1 + q + … + q^{n-1}`.
pub fn q_integer(q: &Rational, n: usize) -> Rational {
    let mut sum = Rational::zero();
    let mut power = Rational::one();
    for _ in 0..n {
        sum += &power;
        power *= q;
    }
    sum
}

/// Classical table `ψ_n = 1/n!`.
pub fn classical_table(cap: usize) -> PsiSeq {
    let ints: Vec<Rational> = (1..=cap).map(|n| int(n as i64)).collect();
    PsiSeq::from_deformed_integers(&ints).expect("positive integers are admissible")
}

/// Jackson table `ψ_n = 1/n_q!`. Fails when some `n_q` with `n ≤ cap` vanishes.
pub fn jackson_table(q: &Rational, cap: usize) -> Result<PsiSeq> {
    let ints: Vec<Rational> = (1..=cap).map(|n| q_integer(q, n)).collect();
    PsiSeq::from_deformed_integers(&ints)
}
