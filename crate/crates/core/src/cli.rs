//! Command-line front end: `eval`, `verify` and `report-diff`.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::report::{diff, Report};
use crate::scalar::{ComplexScalar, Mp, Real};
use crate::special::{
    mu_eval, mu_general_eval, mu_tilde_eval, r_function_eval, theta_eval, Certificate, Evaluated,
    MuArgs, QContext,
};
use crate::verify::{run_suite, Summary};
use crate::xi::SolutionParams;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mu-tau",
    version,
    about = "Evaluate and verify determinant tau-functions of the generalized mu-function"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function and print its value with a truncation certificate.
    Eval {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        flags: Flags,
    },
    /// Run verification suites and write a residual report.
    Verify {
        #[command(flatten)]
        flags: Flags,
    },
    /// Show records whose outcome, tolerance or residual magnitude changed.
    ReportDiff { old: PathBuf, new: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Theta,
    Mu,
    MuGeneral,
    Xi,
    R,
    MuTilde,
}

/// Overrides applied on top of the config file; complex values are `re,im`.
#[derive(Args, Debug, Default)]
struct Flags {
    /// Flat `key = value` file with RunConfig field names.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Modular parameter `re,im` with Im > 0.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// First μ argument `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Second μ argument `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    /// Base order of ξ.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    /// Determinant size parameter of ξ.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// Base shift of ξ in units of τ.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Argument of `theta` and `r`.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Order of `mu-general`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Residual tolerance, or `none` for the per-check defaults.
    #[arg(long)]
    tol: Option<String>,
    /// auto, 53, 113, 128 or 256.
    #[arg(long)]
    precision: Option<String>,
    /// Seed of the sampled points.
    #[arg(long)]
    seed: Option<String>,
    /// Number of seeded samples per suite.
    #[arg(long)]
    grid: Option<String>,
    /// Suite name or `all`.
    #[arg(long)]
    suite: Option<String>,
    /// Report path; `-` or absent writes to stdout.
    #[arg(long)]
    output: Option<String>,
    /// json, csv or text.
    #[arg(long)]
    format: Option<String>,
}

impl Flags {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            cfg.apply_file_text(&text)?;
        }
        let pairs = [
            ("tau", &self.tau),
            ("u", &self.u),
            ("v", &self.v),
            ("m", &self.m),
            ("n", &self.n),
            ("k", &self.k),
            ("z", &self.z),
            ("alpha", &self.alpha),
            ("tol", &self.tol),
            ("precision", &self.precision),
            ("seed", &self.seed),
            ("grid", &self.grid),
            ("suite", &self.suite),
            ("output", &self.output),
            ("format", &self.format),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        let code = if e.is_truncation() {
            EXIT_TRUNCATION
        } else {
            EXIT_USAGE
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Eval { target, flags } => flags.resolve().and_then(|cfg| cmd_eval(&cfg, target)),
        Command::Verify { flags } => flags.resolve().and_then(|cfg| cmd_verify(&cfg)),
        Command::ReportDiff { old, new } => cmd_report_diff(&old, &new),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn describe(value: (f64, f64), cert: Certificate, bits: u32, full: String) -> String {
    let mut out = format!(
        "value = {:e} {} {:e}i\nprecision = {bits} bits\n",
        value.0,
        if value.1 < 0.0 { '-' } else { '+' },
        value.1.abs()
    );
    if bits > 53 {
        out.push_str(&format!("value_full = {full}\n"));
    }
    out.push_str(&format!(
        "terms = {}\ntail_bound = {:e}\n",
        cert.terms, cert.tail_bound
    ));
    out
}

fn eval_at<R: Real>(cfg: &RunConfig, target: Target, bits: u32) -> Result<String> {
    let ctx = QContext::<R>::from_f64(cfg.tau.0, cfg.tau.1, bits)?;
    let c = |p: (f64, f64)| ctx.c(p.0, p.1);
    let (u, v, z) = (c(cfg.u), c(cfg.v), c(cfg.z));
    let ev: Evaluated<R> = match target {
        Target::Theta => theta_eval(&ctx, &z)?,
        Target::Mu => mu_eval(&ctx, &u, &v)?,
        Target::MuGeneral => mu_general_eval(
            &ctx,
            &MuArgs {
                u,
                v,
                alpha: c(cfg.alpha),
            },
        )?,
        Target::R => r_function_eval(&ctx, &z)?,
        Target::MuTilde => mu_tilde_eval(&ctx, &u, &v)?,
        Target::Xi => xi_eval(&ctx, cfg)?,
    };
    Ok(describe(
        ev.value.to_c64(),
        ev.cert,
        bits,
        ev.value.to_string(),
    ))
}

/// `ξ_{m,n,k}` with the entry certificates merged; the tail bound is the
/// largest per-entry bound.
fn xi_eval<R: Real>(ctx: &QContext<R>, cfg: &RunConfig) -> Result<Evaluated<R>> {
    if cfg.n == -1 {
        return Ok(Evaluated {
            value: ComplexScalar::one(ctx.bits()),
            cert: Certificate::default(),
        });
    }
    let c = |p: (f64, f64)| ctx.c(p.0, p.1);
    let sp = SolutionParams::new(
        ctx.clone(),
        c(cfg.u),
        c(cfg.v),
        c(cfg.m),
        cfg.n.max(0),
        c(cfg.k),
    )?;
    let value = sp.xi_at(0, cfg.n, 0)?;
    let arg = sp.u.clone() + &sp.v + sp.k.clone() * ctx.tau();
    let mut cert = Certificate::default();
    for s in 0..=2 * cfg.n {
        let alpha = sp.m.clone() - ctx.c(s as f64, 0.0);
        let e = mu_general_eval(
            ctx,
            &MuArgs {
                u: arg.clone(),
                v: sp.v.clone(),
                alpha,
            },
        )?;
        cert = Certificate {
            terms: cert.terms + e.cert.terms,
            tail_bound: cert.tail_bound.max(e.cert.tail_bound),
        };
    }
    Ok(Evaluated { value, cert })
}

pub fn cmd_eval(cfg: &RunConfig, target: Target) -> Result<Outcome> {
    let bits = match target {
        Target::Xi => cfg.precision.bits_for(cfg.n.max(0)),
        _ => cfg.precision.bits_for(0),
    };
    let text = if bits <= 53 {
        eval_at::<f64>(cfg, target, bits)?
    } else {
        eval_at::<Mp>(cfg, target, bits)?
    };
    Ok(Outcome {
        code: EXIT_PASS,
        stdout: text,
        stderr: String::new(),
    })
}

/// Runs the configured suites, writes the report and summarizes.
///
/// Exit 1 on any failing record, otherwise 3 if a check was skipped for
/// series truncation, otherwise 0.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let records = run_suite(&cfg.suite, &cfg.suite_options())?;
    let summary = Summary::of(&records);
    let report = Report::new(cfg.header_pairs(), records).render(cfg.format);
    let line = format!(
        "suite {}: {} pass, {} fail, {} skip, max residual {:e}, truncations {}\n",
        cfg.suite,
        summary.pass,
        summary.fail,
        summary.skip,
        summary.max_residual,
        summary.truncations
    );
    let mut out = Outcome::default();
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, report)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            out.stdout = line;
        }
        None => {
            out.stdout = report;
            out.stderr = line;
        }
    }
    out.code = if summary.fail > 0 {
        EXIT_FAIL
    } else if summary.truncations > 0 {
        EXIT_TRUNCATION
    } else {
        EXIT_PASS
    };
    Ok(out)
}

fn read_report(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Report::parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Prints one line per changed record; exit 0 when nothing changed.
pub fn cmd_report_diff(old: &Path, new: &Path) -> Result<Outcome> {
    let entries = diff(&read_report(old)?, &read_report(new)?);
    let stdout: String = entries.iter().map(|e| e.describe() + "\n").collect();
    Ok(Outcome {
        code: if entries.is_empty() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        },
        stdout,
        stderr: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value_line(o: &Outcome) -> (f64, f64) {
        let line = o.stdout.lines().next().unwrap();
        let parts: Vec<&str> = line.trim_start_matches("value = ").split(' ').collect();
        let re: f64 = parts[0].parse().unwrap();
        let im: f64 = parts[2].trim_end_matches('i').parse().unwrap();
        (re, if parts[1] == "-" { -im } else { im })
    }

    #[test]
    fn theta_vanishes_at_zero() {
        let o = run(["mu-tau", "eval", "theta", "--z", "0,0"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let (re, im) = value_line(&o);
        assert!(re.hypot(im) < 1e-14);
        assert!(o.stdout.contains("terms = "));
    }

    #[test]
    fn xi_at_minus_one_is_one() {
        let o = run(["mu-tau", "eval", "xi", "--n", "-1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(value_line(&o), (1.0, 0.0));
    }

    #[test]
    fn mu_general_at_one_matches_mu() {
        let a = value_line(&run(["mu-tau", "eval", "mu-general", "--alpha", "1,0"]));
        let b = value_line(&run(["mu-tau", "eval", "mu"]));
        assert!((a.0 - b.0).hypot(a.1 - b.1) < 1e-12 * b.0.hypot(b.1));
    }

    #[test]
    fn usage_and_domain_errors_exit_2() {
        assert_eq!(run(["mu-tau", "eval", "nothing"]).code, EXIT_USAGE);
        assert_eq!(
            run(["mu-tau", "eval", "mu", "--tau", "0,-1"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run(["mu-tau", "verify", "--suite", "nope"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run(["mu-tau", "verify", "--precision", "64"]).code,
            EXIT_USAGE
        );
        let pole = run(["mu-tau", "eval", "mu", "--u", "0,0", "--v", "0,0"]);
        assert_eq!(pole.code, EXIT_USAGE, "{}", pole.stderr);
    }

    #[test]
    fn truncation_exits_3() {
        let o = run(["mu-tau", "eval", "theta", "--tau", "0,0.00002"]);
        assert_eq!(o.code, EXIT_TRUNCATION, "{}", o.stderr);
    }

    #[test]
    fn help_is_not_an_error() {
        let o = run(["mu-tau", "--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("report-diff"));
    }
}
