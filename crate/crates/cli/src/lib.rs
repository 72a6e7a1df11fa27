//! Front end for the `qumbral` binary: argument handling, expression
//! parsing and output rendering.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 math-domain error. Results go to stdout, diagnostics to stderr.

pub mod parse;
pub mod random;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use qumbral_core::{bernoulli_taylor, parse_rational, Poly, Preset, QContext, Rational};

pub use parse::{parse_poly, ParseError};
pub use verify::{PresetChoice, Suite, VerifyConfig, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qumbral", version, about = "Exact Q-umbral calculus on rational polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    Classical,
    Jackson,
    Psi,
    Falling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApplyOp {
    #[value(name = "Q", alias = "q")]
    Q,
    Xhat,
    Integrate,
    Translate,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

/// Comma-separated `ψ_0,ψ_1,…` from `--psi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTable(pub Vec<Rational>);

fn psi_list_arg(s: &str) -> Result<PsiTable, String> {
    s.split(',')
        .map(|v| rational_arg(v.trim()))
        .collect::<Result<_, _>>()
        .map(PsiTable)
}

#[derive(clap::Args, Debug, Clone)]
pub struct PresetArgs {
    /// Calculus to work in
    #[arg(long, value_enum, default_value = "classical")]
    pub preset: PresetName,
    /// Jackson parameter (required with --preset jackson)
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub q: Option<Rational>,
    /// psi_0,psi_1,... for --preset psi (default: all ones)
    #[arg(long, value_parser = psi_list_arg, allow_hyphen_values = true)]
    pub psi: Option<PsiTable>,
    /// Degree cap of the calculus
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bernoulli-Taylor expansion of f about y with its Cauchy-type remainder
    Expand {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long = "f")]
        f: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "0")]
        y: Rational,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Apply one operator to f
    Apply {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long, value_enum)]
        op: ApplyOp,
        #[arg(long = "f")]
        f: String,
        /// Translation amount for --op translate
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y: Option<Rational>,
    },
    /// Seeded randomized identity checks
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_deg: usize,
        /// Restrict to one preset (default: all four)
        #[arg(long, value_enum)]
        preset: Option<PresetName>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        q: Option<Rational>,
        #[arg(long, value_parser = psi_list_arg, allow_hyphen_values = true)]
        psi: Option<PsiTable>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, hide = true)]
        mutate_psi: Option<usize>,
    },
    /// List the available presets
    Presets {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failed command: exit code plus a message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<qumbral_core::Error> for Failure {
    fn from(e: qumbral_core::Error) -> Self {
        Failure { code: EXIT_MATH, message: e.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Captured output of one invocation.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn resolve_preset(args: &PresetArgs, notes: &mut String) -> Result<Preset, Failure> {
    Ok(match args.preset {
        PresetName::Classical => Preset::Classical,
        PresetName::Falling => Preset::ForwardDifference,
        PresetName::Psi => Preset::Psi(args.psi.clone().map(|t| t.0).unwrap_or_default()),
        PresetName::Jackson => {
            let q = args
                .q
                .clone()
                .ok_or_else(|| Failure::usage("--preset jackson needs --q"))?;
            if q == qumbral_core::int(1) {
                notes.push_str("note: q = 1 is the classical calculus; using --preset classical\n");
                Preset::Classical
            } else {
                Preset::Jackson(q)
            }
        }
    })
}

/// Builds the context, defaulting the cap to `max(16, needed)`. A psi
/// preset without an explicit table gets the all-ones table of that size;
/// with a table and no `--cap`, the table's length sets the cap.
fn build_context(args: &PresetArgs, needed: usize, notes: &mut String) -> Result<QContext, Failure> {
    let preset = resolve_preset(args, notes)?;
    let cap = match (&preset, args.cap) {
        (_, Some(cap)) => cap,
        (Preset::Psi(t), None) if !t.is_empty() => t.len() - 1,
        _ => 16.max(needed),
    };
    let preset = match preset {
        Preset::Psi(t) if t.is_empty() => Preset::Psi(vec![qumbral_core::int(1); cap + 1]),
        p => p,
    };
    Ok(preset.build(cap)?)
}

fn poly_json(p: &Poly) -> String {
    serde_json::to_string(p).expect("polynomials serialize")
}

fn degree_of(p: &Poly) -> usize {
    p.degree().max(0) as usize
}

fn cmd_expand(args: &PresetArgs, f: &str, y: &Rational, order: usize, out: &mut Output) -> Result<i32, Failure> {
    let f = parse_poly(f)?;
    let ctx = build_context(args, degree_of(&f) + order + 2, &mut out.stderr)?;
    let e = bernoulli_taylor(&ctx, &f, y, order)?;
    match args.format {
        Format::Json => {
            out.stdout.push_str(&serde_json::to_string(&e).expect("expansion serializes"));
            out.stdout.push('\n');
        }
        Format::Text => {
            let s = &mut out.stdout;
            s.push_str(&format!("f: {f}\ny: {y}\norder: {order}\n"));
            for (k, t) in e.terms.iter().enumerate() {
                s.push_str(&format!("term {k}: {t}\n"));
            }
            s.push_str(&format!(
                "remainder: {}\nreconstructed: {}\nok: {}\n",
                e.remainder,
                e.reconstructed,
                e.is_exact()
            ));
        }
    }
    if !e.is_exact() {
        out.stderr
            .push_str("warning: terms + remainder do not reproduce f in this calculus\n");
    }
    Ok(EXIT_OK)
}

fn cmd_apply(args: &PresetArgs, op: ApplyOp, f: &str, y: Option<&Rational>, out: &mut Output) -> Result<i32, Failure> {
    let f = parse_poly(f)?;
    let ctx = build_context(args, degree_of(&f) + 2, &mut out.stderr)?;
    let result = match op {
        ApplyOp::Q => ctx.apply_q(&f)?,
        ApplyOp::Xhat => ctx.apply_xhat(&f)?,
        ApplyOp::Integrate => ctx.q_antiderivative(&f)?,
        ApplyOp::Translate => {
            let y = y.ok_or_else(|| Failure::usage("--op translate needs --y"))?;
            ctx.translate(y, &f)?
        }
    };
    match args.format {
        Format::Json => out.stdout.push_str(&poly_json(&result)),
        Format::Text => out.stdout.push_str(&result.to_string()),
    }
    out.stdout.push('\n');
    Ok(EXIT_OK)
}

fn cmd_presets(format: Format, out: &mut Output) {
    let rows = [
        ("classical", "Q = d/dx, q_n = x^n, psi_n = 1/n!"),
        ("jackson", "Jackson q-derivative (f(x) - f(qx))/((1-q)x); needs --q"),
        ("psi", "psi-derivative x^n -> n_psi x^(n-1); table via --psi"),
        ("falling", "forward difference f(x+1) - f(x), q_n = x(x-1)...(x-n+1)"),
    ];
    match format {
        Format::Text => {
            for (name, desc) in rows {
                out.stdout.push_str(&format!("{name:<10} {desc}\n"));
            }
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(n, d)| serde_json::json!({ "name": n, "description": d }))
                .collect();
            out.stdout.push_str(&serde_json::to_string(&v).expect("json"));
            out.stdout.push('\n');
        }
    }
}

fn execute(cli: Cli, out: &mut Output) -> Result<i32, Failure> {
    match cli.command {
        Command::Expand { preset, f, y, order } => cmd_expand(&preset, &f, &y, order, out),
        Command::Apply { preset, op, f, y } => cmd_apply(&preset, op, &f, y.as_ref(), out),
        Command::Presets { format } => {
            cmd_presets(format, out);
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            max_deg,
            preset,
            q,
            psi,
            cap,
            format,
            mutate_psi,
        } => {
            if trials == 0 {
                return Err(Failure::usage("--trials must be at least 1"));
            }
            let presets = match preset {
                None => PresetChoice::defaults(),
                Some(PresetName::Classical) => vec![PresetChoice::Classical],
                Some(PresetName::Jackson) => vec![PresetChoice::Jackson(q)],
                Some(PresetName::Psi) => vec![PresetChoice::Psi(psi.map(|t| t.0))],
                Some(PresetName::Falling) => vec![PresetChoice::Falling],
            };
            let cfg = VerifyConfig { suite, presets, trials, seed, max_deg, cap, mutate_psi };
            let reports = verify::run(&cfg)?;
            match format {
                Format::Text => {
                    for r in &reports {
                        r.render_text(&mut out.stdout);
                    }
                }
                Format::Json => {
                    out.stdout.push_str(&serde_json::to_string(&reports).expect("json"));
                    out.stdout.push('\n');
                }
            }
            for r in &reports {
                out.stderr
                    .push_str(&format!("{}: elapsed {:.3}s\n", r.suite, r.elapsed.as_secs_f64()));
            }
            Ok(if reports.iter().all(VerifyReport::passed) {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

/// Runs one invocation and captures its output.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = Output::default();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                out.stdout = text;
            } else {
                out.stderr = text;
                out.code = EXIT_USAGE;
            }
            return out;
        }
    };
    match execute(cli, &mut out) {
        Ok(code) => out.code = code,
        Err(failure) => {
            out.stderr.push_str(&format!("error: {}\n", failure.message));
            out.code = failure.code;
        }
    }
    out
}

/// Runs and writes the captured streams; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run(args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}
