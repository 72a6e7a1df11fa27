//! Acceptance criteria. Prints one `criterion N [PASS|FAIL]` line per
//! criterion and exits nonzero if any fails. All comparisons are exact.

use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use qumbral_cli::random;
use qumbral_core::algebra::factorial;
use qumbral_core::presets::{classical, forward_difference, jackson, psi_derivative};
use qumbral_core::{
    basic_from_operator, bernoulli_taylor, int, rat, viskov_residual, Poly, PsiSeq, QContext, Rational,
};
use rand::Rng;

const SEED: u64 = 20_240_601;

static FAILED: AtomicBool = AtomicBool::new(false);

fn report(n: u32, title: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n} [{}] {title}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    if !ok {
        FAILED.store(true, Ordering::SeqCst);
    }
}

/// The six presets named by the Taylor criterion.
fn taylor_presets(cap: usize) -> Vec<(String, QContext)> {
    vec![
        ("classical".into(), classical(cap)),
        ("jackson(2)".into(), jackson(&int(2), cap).unwrap()),
        ("jackson(3/2)".into(), jackson(&rat(3, 2), cap).unwrap()),
        ("jackson(1/3)".into(), jackson(&rat(1, 3), cap).unwrap()),
        ("jackson(-2)".into(), jackson(&int(-2), cap).unwrap()),
        ("falling".into(), forward_difference(cap)),
    ]
}

/// The same six plus a ψ-derivative with an irregular table.
fn all_presets(cap: usize) -> Vec<(String, QContext)> {
    let mut rng = random::rng_for(SEED ^ 0xF00D);
    let table = random::psi_table(&mut rng, cap);
    let mut v = taylor_presets(cap);
    v.push(("psi(random)".into(), psi_derivative(&PsiSeq::from_table(table).unwrap(), cap).unwrap()));
    v
}

fn summarize(counts: &[(String, usize)], per: usize) -> (bool, String) {
    let total: usize = counts.iter().map(|(_, c)| c).sum();
    let parts: Vec<String> = counts.iter().map(|(n, c)| format!("{n} {c}/{per}")).collect();
    (total == 0, format!("{total} failures ({})", parts.join(", ")))
}

fn criterion_01_bernoulli_taylor_exactness() {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (pi, (name, ctx)) in taylor_presets(24).into_iter().enumerate() {
        let mut failures = 0;
        for trial in 0..200 {
            let mut rng = random::rng_for(random::trial_seed(SEED, 1, pi, trial));
            let f = random::poly(&mut rng, 10);
            let y = random::small_rational(&mut rng);
            let n = rng.gen_range(0..=12);
            let e = bernoulli_taylor(&ctx, &f, &y, n).unwrap();
            if e.reconstructed != f {
                failures += 1;
            }
        }
        counts.push((name, failures));
    }
    let elapsed = start.elapsed();
    let (exact, detail) = summarize(&counts, 200);
    let fast = elapsed < Duration::from_secs(10);
    report(
        1,
        "Bernoulli-Taylor exactness",
        exact && fast,
        &format!("{detail}; {:.2}s", elapsed.as_secs_f64()),
    );
}

fn criterion_02_viskov_identity() {
    let mut counts = Vec::new();
    for (pi, (name, ctx)) in all_presets(16).into_iter().enumerate() {
        let mut failures = 0;
        for trial in 0..100 {
            let mut rng = random::rng_for(random::trial_seed(SEED, 2, pi, trial));
            let f = random::poly(&mut rng, 10);
            let y = random::small_rational(&mut rng);
            let n = rng.gen_range(0..=8);
            if !viskov_residual(&ctx, n, &y, &f).unwrap().is_zero() {
                failures += 1;
            }
        }
        counts.push((name, failures));
    }
    let (ok, detail) = summarize(&counts, 100);
    report(2, "Viskov identity", ok, &detail);
}

fn criterion_03_commutator() {
    let mut bad = Vec::new();
    for (name, ctx) in all_presets(16) {
        for n in 0..=15 {
            let qn = ctx.q(n);
            let c = &ctx.apply_q(&ctx.apply_xhat(qn).unwrap()).unwrap()
                - &ctx.apply_xhat(&ctx.apply_q(qn).unwrap()).unwrap();
            if &c != qn {
                bad.push(format!("{name} n={n}"));
            }
        }
    }
    report(3, "commutator [Q, x̂_Q] q_n = q_n for n <= 15", bad.is_empty(), &format!("{} failures {bad:?}", bad.len()));
}

fn criterion_04_leibniz_and_composition() {
    let cap = 16;
    let mut counts = Vec::new();
    for (pi, (name, ctx)) in all_presets(cap).into_iter().enumerate() {
        let mut failures = 0;
        for trial in 0..100 {
            let mut rng = random::rng_for(random::trial_seed(SEED, 4, pi, trial));
            let f = random::poly(&mut rng, 8);
            let g = random::poly(&mut rng, 8);
            let lhs = ctx.apply_q(&ctx.star_product(&f, &g).unwrap()).unwrap();
            let rhs = &ctx.star_product(&f.derivative(), &g).unwrap()
                + &ctx.star_product(&f, &ctx.apply_q(&g).unwrap()).unwrap();
            let g_tilde = ctx.star_product(&g, &Poly::one()).unwrap();
            let comp_lhs = ctx.star_product(&(&f * &g), &Poly::one()).unwrap();
            let comp_rhs = ctx.star_product(&f, &g_tilde).unwrap();
            if lhs != rhs || comp_lhs != comp_rhs {
                failures += 1;
            }
        }
        counts.push((name, failures));
    }
    let (ok, detail) = summarize(&counts, 100);
    report(4, "Q-Leibniz and composition", ok, &detail);
}

fn criterion_05_per_partes() {
    let cap = 16;
    let mut counts = Vec::new();
    for (pi, (name, ctx)) in all_presets(cap).into_iter().enumerate() {
        let mut failures = 0;
        for trial in 0..100 {
            let mut rng = random::rng_for(random::trial_seed(SEED, 5, pi, trial));
            let f = random::poly(&mut rng, 8);
            let g = random::poly(&mut rng, 8);
            let alpha = random::small_rational(&mut rng);
            let beta = random::small_rational(&mut rng);
            let lhs = ctx
                .q_integral_definite(&ctx.star_product(&f, &ctx.apply_q(&g).unwrap()).unwrap(), &alpha, &beta)
                .unwrap();
            let fg = ctx.star_product(&f, &g).unwrap();
            let correction = ctx
                .q_integral_definite(&ctx.star_product(&f.derivative(), &g).unwrap(), &alpha, &beta)
                .unwrap();
            if lhs != fg.eval(&beta) - fg.eval(&alpha) - correction {
                failures += 1;
            }
        }
        counts.push((name, failures));
    }
    let (ok, detail) = summarize(&counts, 100);
    report(5, "per-partes", ok, &detail);
}

/// `(f(x) - f(qx)) / ((1-q) x)`.
fn difference_quotient(q: &Rational, f: &Poly) -> Poly {
    let numerator = f - &f.compose(&Poly::monomial(q.clone(), 1));
    let divided: Vec<Rational> = numerator.coeffs().iter().skip(1).cloned().collect();
    Poly::from_coeffs(divided).scale(&(int(1) - q).recip())
}

fn criterion_06_oracle_equivalence() {
    let mut bad = Vec::new();
    for (qi, q) in random::q_choices().iter().enumerate() {
        let ctx = jackson(q, 16).unwrap();
        for trial in 0..200 {
            let mut rng = random::rng_for(random::trial_seed(SEED, 6, qi, trial));
            let f = random::poly(&mut rng, 16);
            if ctx.apply_q(&f).unwrap() != difference_quotient(q, &f) {
                bad.push(format!("jackson({q}) trial {trial}"));
            }
        }
    }
    let fd = forward_difference(16);
    for trial in 0..200 {
        let mut rng = random::rng_for(random::trial_seed(SEED, 6, 10, trial));
        let f = random::poly(&mut rng, 16);
        let shift = &f.compose(&Poly::from_ints(&[1, 1])) - &f;
        if fd.apply_q(&f).unwrap() != shift {
            bad.push(format!("falling trial {trial}"));
        }
    }
    let c = classical(24);
    for trial in 0..200 {
        let mut rng = random::rng_for(random::trial_seed(SEED, 6, 11, trial));
        let f = random::poly(&mut rng, 10);
        let y = random::small_rational(&mut rng);
        let n = rng.gen_range(f.degree().max(0) as usize..=12);
        let e = bernoulli_taylor(&c, &f, &y, n).unwrap();
        let mut deriv = f.clone();
        let x_minus_y = Poly::from_coeffs(vec![-y.clone(), int(1)]);
        let mut power = Poly::one();
        for k in 0..=n {
            if e.terms[k] != power.scale(&(deriv.eval(&y) / factorial(k))) {
                bad.push(format!("classical taylor trial {trial} k={k}"));
            }
            deriv = deriv.derivative();
            power = &power * &x_minus_y;
        }
    }
    report(6, "oracle equivalence", bad.is_empty(), &format!("{} mismatches {:?}", bad.len(), bad.iter().take(5).collect::<Vec<_>>()));
}

fn criterion_07_markowsky_round_trip() {
    let mut bad = Vec::new();
    for (name, ctx) in all_presets(12) {
        let rebuilt = basic_from_operator(ctx.q_on_monomials(), ctx.psi(), 12).unwrap();
        if &rebuilt != ctx.basis() {
            bad.push(name);
        }
    }
    report(7, "Markowsky round trip at cap 12", bad.is_empty(), &format!("mismatched: {bad:?}"));
}

fn criterion_08_noncommutativity_witness() {
    let ctx = jackson(&int(2), 16).unwrap();
    let p1 = ctx.q_power(1).unwrap();
    let p2 = ctx.q_power(2).unwrap();
    let ab = ctx.star_product(&p2, &p1).unwrap();
    let ba = ctx.star_product(&p1, &p2).unwrap();
    let closed_ab = ctx.q(3).scale(&(factorial(2) / ctx.psi_factorial(2)));
    let closed_ba = ctx.q(3).scale(&(factorial(1) / ctx.psi_factorial(1)));
    let expected_ab = Poly::monomial(rat(2, 3), 3);
    let expected_ba = Poly::monomial(int(1), 3);
    let ok = ab != ba && ab == expected_ab && ba == expected_ba && ab == closed_ab && ba == closed_ba;
    report(
        8,
        "noncommutativity witness at q = 2",
        ok,
        &format!(
            "star(x^{{2*}}, x^{{1*}}) = {ab} (want {expected_ab}); star(x^{{1*}}, x^{{2*}}) = {ba} (want {expected_ba}); unequal: {}",
            ab != ba
        ),
    );
}

fn qumbral(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qumbral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn criterion_09_worked_example() {
    let out = qumbral(&["expand", "--preset", "classical", "--f", "x^3", "--y", "1", "--order", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let text = qumbral(&["expand", "--preset", "classical", "--f", "x^3", "--y", "1", "--order", "1"]);
    let text = String::from_utf8(text.stdout).unwrap();
    let ok = out.status.code() == Some(0)
        && v["remainder"] == serde_json::json!(["2", "-3", "0", "1"])
        && v["ok"] == serde_json::json!(true)
        && text.contains("remainder: x^3 - 3*x + 2\n");
    report(9, "worked example expand x^3 about 1, order 1", ok, &format!("remainder {} ok {}", v["remainder"], v["ok"]));
}

fn criterion_10_cli_contract() {
    let mut problems = Vec::new();

    let runs = [
        vec!["verify", "--suite", "all", "--trials", "25", "--seed", "42"],
        vec!["verify", "--suite", "commutator", "--trials", "40", "--seed", "7", "--format", "json"],
        vec!["expand", "--preset", "jackson", "--q", "3/2", "--f", "x^4 - x + 1/2", "--y", "-2", "--order", "2"],
    ];
    for args in &runs {
        let a = qumbral(args);
        let b = qumbral(args);
        if a.stdout != b.stdout || a.status.code() != b.status.code() {
            problems.push(format!("nondeterministic: {args:?}"));
        }
    }

    let pass = qumbral(&["verify", "--suite", "commutator", "--trials", "50", "--seed", "42"]);
    if pass.status.code() != Some(0) {
        problems.push(format!("commutator suite exit {:?}", pass.status.code()));
    }
    let usage = qumbral(&["expand", "--f", "x^-1"]);
    if usage.status.code() != Some(2) {
        problems.push(format!("parse error exit {:?}", usage.status.code()));
    }
    let bad_flag = qumbral(&["verify", "--suite", "nonsense"]);
    if bad_flag.status.code() != Some(2) {
        problems.push(format!("usage error exit {:?}", bad_flag.status.code()));
    }
    let math = qumbral(&["expand", "--preset", "jackson", "--q", "-1", "--f", "x^2"]);
    let math_err = String::from_utf8_lossy(&math.stderr).to_string();
    if math.status.code() != Some(3) || !math_err.contains("not admissible") {
        problems.push(format!("math error exit {:?} {math_err}", math.status.code()));
    }

    let mutated = qumbral(&[
        "verify", "--suite", "commutator", "--preset", "jackson", "--q", "2", "--trials", "10", "--seed", "1", "--mutate-psi", "3",
    ]);
    let text = String::from_utf8_lossy(&mutated.stdout).to_string();
    if mutated.status.code() != Some(1) || !text.contains("FAIL") || !text.contains("input:") {
        problems.push(format!("mutation run exit {:?}: {text}", mutated.status.code()));
    }

    report(10, "CLI determinism, exit codes and mutation detection", problems.is_empty(), &format!("{problems:?}"));
}

fn main() -> ExitCode {
    criterion_01_bernoulli_taylor_exactness();
    criterion_02_viskov_identity();
    criterion_03_commutator();
    criterion_04_leibniz_and_composition();
    criterion_05_per_partes();
    criterion_06_oracle_equivalence();
    criterion_07_markowsky_round_trip();
    criterion_08_noncommutativity_witness();
    criterion_09_worked_example();
    criterion_10_cli_contract();
    if FAILED.load(Ordering::SeqCst) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
