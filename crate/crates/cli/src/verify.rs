//! Seeded randomized identity suites.
//!
//! Every trial draws its inputs from its own ChaCha stream (see
//! [`random::trial_seed`]), so a failure can be replayed from the printed
//! seed alone and results do not depend on scheduling. Trials run in
//! parallel; failures are reported in trial order.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use num_traits::Zero;
use qumbral_core::{
    basic_from_operator, bernoulli_taylor, viskov_residual, Poly, Preset, QContext, Rational,
};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::random;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Taylor,
    Viskov,
    Leibniz,
    Perpartes,
    Commutator,
    Markowsky,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 6] = [
        Suite::Taylor,
        Suite::Viskov,
        Suite::Leibniz,
        Suite::Perpartes,
        Suite::Commutator,
        Suite::Markowsky,
    ];

    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Taylor => "taylor",
            Suite::Viskov => "viskov",
            Suite::Leibniz => "leibniz",
            Suite::Perpartes => "perpartes",
            Suite::Commutator => "commutator",
            Suite::Markowsky => "markowsky",
            Suite::All => "all",
        }
    }
}

/// A preset as requested on the command line; unset parameters are drawn
/// per trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetChoice {
    Classical,
    Jackson(Option<Rational>),
    Psi(Option<Vec<Rational>>),
    Falling,
}

impl PresetChoice {
    pub fn defaults() -> Vec<PresetChoice> {
        vec![
            PresetChoice::Classical,
            PresetChoice::Jackson(None),
            PresetChoice::Psi(None),
            PresetChoice::Falling,
        ]
    }

    fn resolve(&self, rng: &mut impl Rng, cap: usize) -> Preset {
        match self {
            PresetChoice::Classical => Preset::Classical,
            PresetChoice::Jackson(Some(q)) => Preset::Jackson(q.clone()),
            PresetChoice::Jackson(None) => Preset::Jackson(random::jackson_q(rng)),
            PresetChoice::Psi(Some(t)) => Preset::Psi(t.clone()),
            PresetChoice::Psi(None) => Preset::Psi(random::psi_table(rng, cap)),
            PresetChoice::Falling => Preset::ForwardDifference,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub presets: Vec<PresetChoice>,
    pub trials: usize,
    pub seed: u64,
    pub max_deg: usize,
    pub cap: Option<usize>,
    /// Test hook: scale `ψ_index` by 2 behind `Q`'s back.
    pub mutate_psi: Option<usize>,
}

impl VerifyConfig {
    /// Orders drawn for the Taylor suite go up to `max_deg + 2`.
    pub fn max_order(&self) -> usize {
        self.max_deg + 2
    }

    pub fn effective_cap(&self) -> usize {
        self.cap
            .unwrap_or_else(|| 16.max(self.max_deg + self.max_order() + 2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub preset: String,
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render_text(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "{}: {} trials, {} failures",
            self.suite,
            self.trials,
            self.failures.len()
        );
        for f in &self.failures {
            let _ = writeln!(
                out,
                "  FAIL trial {} seed {} preset {}\n    input:    {}\n    expected: {}\n    actual:   {}",
                f.trial, f.seed, f.preset, f.input, f.expected, f.actual
            );
        }
    }
}

#[derive(Clone, Debug)]
struct Case {
    f: Poly,
    g: Poly,
    y: Rational,
    beta: Rational,
    n: usize,
}

impl Case {
    fn draw(rng: &mut impl Rng, suite: Suite, cfg: &VerifyConfig, cap: usize) -> Case {
        let f = random::poly(rng, cfg.max_deg.min(cap.saturating_sub(1)));
        let g = random::poly(rng, cfg.max_deg.min(cap.saturating_sub(1)));
        let y = random::small_rational(rng);
        let beta = random::small_rational(rng);
        let n = match suite {
            Suite::Taylor => rng.gen_range(0..=cfg.max_order().min(cap.saturating_sub(1))),
            Suite::Viskov => rng.gen_range(0..=8),
            Suite::Commutator => rng.gen_range(0..cap),
            _ => 0,
        };
        Case { f, g, y, beta, n }
    }

    fn describe(&self, suite: Suite) -> String {
        match suite {
            Suite::Taylor | Suite::Viskov => {
                format!("f = {}; y = {}; n = {}", self.f, self.y, self.n)
            }
            Suite::Leibniz => format!("f = {}; g = {}", self.f, self.g),
            Suite::Perpartes => format!(
                "f = {}; g = {}; alpha = {}; beta = {}",
                self.f, self.g, self.y, self.beta
            ),
            Suite::Commutator => format!("f = {}; n = {}", self.f, self.n),
            Suite::Markowsky | Suite::All => String::new(),
        }
    }

    /// Simpler variants: one coefficient zeroed, a parameter set to zero, or
    /// the order lowered.
    fn shrink_candidates(&self) -> Vec<Case> {
        let mut out = Vec::new();
        for (which, p) in [(0, &self.f), (1, &self.g)] {
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut coeffs = p.coeffs().to_vec();
                coeffs[i] = Rational::zero();
                let mut next = self.clone();
                if which == 0 {
                    next.f = Poly::from_coeffs(coeffs);
                } else {
                    next.g = Poly::from_coeffs(coeffs);
                }
                out.push(next);
            }
        }
        if !self.y.is_zero() {
            out.push(Case { y: Rational::zero(), ..self.clone() });
        }
        if !self.beta.is_zero() {
            out.push(Case { beta: Rational::zero(), ..self.clone() });
        }
        if self.n > 0 {
            out.push(Case { n: self.n - 1, ..self.clone() });
        }
        out
    }
}

/// `Some((expected, actual))` when the identity fails.
fn check(suite: Suite, ctx: &QContext, case: &Case) -> Option<(String, String)> {
    match check_inner(suite, ctx, case) {
        Ok(outcome) => outcome,
        Err(e) => Some(("no error".into(), format!("error: {e}"))),
    }
}

fn mismatch<T: PartialEq + std::fmt::Display>(expected: T, actual: T) -> Option<(String, String)> {
    (expected != actual).then(|| (expected.to_string(), actual.to_string()))
}

fn check_inner(
    suite: Suite,
    ctx: &QContext,
    case: &Case,
) -> qumbral_core::Result<Option<(String, String)>> {
    let Case { f, g, y, beta, n } = case;
    Ok(match suite {
        Suite::Taylor => {
            let e = bernoulli_taylor(ctx, f, y, *n)?;
            mismatch(f.clone(), e.reconstructed)
        }
        Suite::Viskov => mismatch(Poly::zero(), viskov_residual(ctx, *n, y, f)?),
        Suite::Leibniz => {
            let lhs = ctx.apply_q(&ctx.star_product(f, g)?)?;
            let rhs = &ctx.star_product(&f.derivative(), g)? + &ctx.star_product(f, &ctx.apply_q(g)?)?;
            if let Some(m) = mismatch(rhs, lhs) {
                return Ok(Some(m));
            }
            let g_tilde = ctx.star_product(g, &Poly::one())?;
            mismatch(
                ctx.star_product(f, &g_tilde)?,
                ctx.star_product(&(f * g), &Poly::one())?,
            )
        }
        Suite::Perpartes => {
            let alpha = y;
            let lhs = ctx.q_integral_definite(&ctx.star_product(f, &ctx.apply_q(g)?)?, alpha, beta)?;
            let fg = ctx.star_product(f, g)?;
            let correction =
                ctx.q_integral_definite(&ctx.star_product(&f.derivative(), g)?, alpha, beta)?;
            mismatch(fg.eval(beta) - fg.eval(alpha) - correction, lhs)
        }
        Suite::Commutator => {
            let commutator = |p: &Poly| -> qumbral_core::Result<Poly> {
                Ok(&ctx.apply_q(&ctx.apply_xhat(p)?)? - &ctx.apply_xhat(&ctx.apply_q(p)?)?)
            };
            let qn = ctx.q(*n).clone();
            if let Some(m) = mismatch(qn.clone(), commutator(&qn)?) {
                return Ok(Some(m));
            }
            mismatch(f.clone(), commutator(f)?)
        }
        Suite::Markowsky => {
            let rebuilt = basic_from_operator(ctx.q_on_monomials(), ctx.psi(), ctx.cap())?;
            let render = |polys: &[Poly]| {
                polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            };
            mismatch(render(ctx.basis().polys()), render(rebuilt.polys()))
        }
        Suite::All => unreachable!("expanded before running"),
    })
}

fn shrink(suite: Suite, ctx: &QContext, mut case: Case) -> (Case, (String, String)) {
    let mut outcome = check(suite, ctx, &case).expect("shrink starts from a failing case");
    'outer: loop {
        for candidate in case.shrink_candidates() {
            if let Some(o) = check(suite, ctx, &candidate) {
                case = candidate;
                outcome = o;
                continue 'outer;
            }
        }
        return (case, outcome);
    }
}

fn run_trial(
    suite: Suite,
    suite_index: usize,
    preset_index: usize,
    choice: &PresetChoice,
    trial: usize,
    cfg: &VerifyConfig,
) -> Result<Option<Failure>, qumbral_core::Error> {
    let cap = cfg.effective_cap();
    let seed = random::trial_seed(cfg.seed, suite_index, preset_index, trial);
    let mut rng = random::rng_for(seed);
    let preset = choice.resolve(&mut rng, cap);
    let mut ctx = preset.build(cap)?;
    if let Some(index) = cfg.mutate_psi {
        ctx = ctx.with_corrupted_psi(index, &qumbral_core::int(2))?;
    }
    let case = Case::draw(&mut rng, suite, cfg, cap);
    if check(suite, &ctx, &case).is_none() {
        return Ok(None);
    }
    let (case, (expected, actual)) = shrink(suite, &ctx, case);
    Ok(Some(Failure {
        trial,
        seed,
        preset: preset.to_string(),
        input: case.describe(suite),
        expected,
        actual,
    }))
}

/// Runs every requested suite. Domain errors (a preset that cannot be
/// built, a bad mutation index) abort the run.
pub fn run(cfg: &VerifyConfig) -> Result<Vec<VerifyReport>, qumbral_core::Error> {
    let mut reports = Vec::new();
    for suite in cfg.suite.expand() {
        let suite_index = Suite::CONCRETE.iter().position(|s| *s == suite).unwrap_or(0);
        let start = Instant::now();
        let jobs: Vec<(usize, usize)> = (0..cfg.presets.len())
            .flat_map(|p| (0..cfg.trials).map(move |t| (p, t)))
            .collect();
        let results: Vec<Result<Option<Failure>, _>> = jobs
            .par_iter()
            .map(|&(p, t)| run_trial(suite, suite_index, p, &cfg.presets[p], t, cfg))
            .collect();
        let mut failures = Vec::new();
        for r in results {
            if let Some(f) = r? {
                failures.push(f);
            }
        }
        reports.push(VerifyReport {
            suite: suite.name().to_string(),
            trials: jobs.len(),
            failures,
            elapsed: start.elapsed(),
        });
    }
    Ok(reports)
}
