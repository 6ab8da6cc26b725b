//! The `hyperzero` command line.
//!
//! Polynomials are given in the text grammar of [`crate::text`] or as
//! `{"coeffs": [[8 numbers], ...]}`; `-` reads the argument from stdin.
//! Exit status is 0 on success, 1 when a mathematical check fails and 2 on
//! parse or usage errors.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::camshaft::{self, compare};
use crate::error::Error;
use crate::octonion::{ConjugacyClass, Octonion};
use crate::poly::OctPoly;
use crate::series::{series_divide_linear, tail_bound_check_quotient, TruncatedSeries, DEFAULT_ORDER};
use crate::text::{self, ParseOptions};
use crate::tolerance::Tolerances;
use crate::zeros::{self, Remainder, ZeroKind, ZeroRecord};

#[derive(Debug, Parser)]
#[command(
    name = "hyperzero",
    version,
    about = "Zeros of slice-regular polynomials over the quaternions and octonions"
)]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// absolute tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_abs: f64,
    /// relative tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_rel: f64,
    /// root clustering tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_root: f64,
    /// conjugacy class matching tolerance
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_class: f64,
    /// truncation order for series
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// print JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// only accept quaternionic input (no k, ik, jk, ijk)
    #[arg(long, global = true)]
    pub quaternion: bool,
}

impl Options {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            abs: self.tol_abs,
            rel: self.tol_rel,
            root: self.tol_root,
            class: self.tol_class,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Zero set of f: one record per conjugacy class
    Zeros { f: String },
    /// Factor f as (w - a1) * ((w - a2) * ... * c)
    Factor { f: String },
    /// Star product f * g
    Product { f: String, g: String },
    /// Normal polynomial N(f) = f * conj(f)
    Normal { f: String },
    /// Remainder of f on the conjugacy class of alpha
    Remainder { f: String, alpha: String },
    /// Zeros of f * g predicted from f and g, checked against f * g
    Camshaft { f: String, g: String },
    /// Zero counts and multiplicity total of f
    Fta { f: String },
    /// Divide a series (JSON or polynomial) by w - alpha
    SeriesDivide {
        series: String,
        alpha: String,
        /// radius for the quotient tail bound check
        #[arg(long)]
        rho: Option<f64>,
        /// |x| for the tail bound check
        #[arg(long, default_value_t = 0.0)]
        x_norm: f64,
    },
    /// Randomized product-rule and normal-series check
    Verify {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

/// Failure of one invocation, with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) { 2 } else { 1 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Report of a successful command. `ok` is false when a check failed; the
/// report is still printed and the exit status is 1.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

struct Ctx<'a> {
    opts: &'a Options,
    tol: Tolerances,
    stdin: Option<String>,
    input: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn source(&mut self, arg: &str) -> Result<String, Failure> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        if self.stdin.is_none() {
            let mut s = String::new();
            self.input
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            self.stdin = Some(s);
        }
        Ok(self.stdin.clone().unwrap_or_default().trim().to_string())
    }

    fn parse_opts(&self) -> ParseOptions {
        ParseOptions {
            quaternionic: self.opts.quaternion,
        }
    }

    fn check_quaternion(&self, what: &str, ok: bool) -> Result<(), Failure> {
        if self.opts.quaternion && !ok {
            return Err(usage(format!("{what} is not quaternionic")));
        }
        Ok(())
    }

    fn poly(&mut self, arg: &str) -> Result<OctPoly, Failure> {
        let src = self.source(arg)?;
        let f = if src.trim_start().starts_with('{') {
            serde_json::from_str::<OctPoly>(&src).map_err(|e| usage(format!("bad polynomial JSON: {e}")))?
        } else {
            text::parse_poly_with(&src, self.parse_opts())?
        };
        self.check_quaternion("polynomial", f.is_quaternionic())?;
        Ok(f)
    }

    fn octonion(&mut self, arg: &str) -> Result<Octonion, Failure> {
        let src = self.source(arg)?;
        let x = if src.trim_start().starts_with('[') {
            serde_json::from_str::<Octonion>(&src).map_err(|e| usage(format!("bad octonion JSON: {e}")))?
        } else {
            text::parse_octonion_with(&src, self.parse_opts())?
        };
        self.check_quaternion("octonion", x.is_quaternion())?;
        Ok(x)
    }

    fn series(&mut self, arg: &str) -> Result<TruncatedSeries, Failure> {
        let src = self.source(arg)?;
        if src.trim_start().starts_with('{') {
            let v: Value = serde_json::from_str(&src).map_err(|e| usage(format!("bad series JSON: {e}")))?;
            let s = if v.get("order").is_some() {
                serde_json::from_value::<TruncatedSeries>(v)
                    .map_err(|e| usage(format!("bad series JSON: {e}")))?
            } else {
                let f: OctPoly = serde_json::from_value(v).map_err(|e| usage(format!("bad series JSON: {e}")))?;
                TruncatedSeries::from_poly(&f, self.opts.order.max(f.coeffs().len()))
            };
            self.check_quaternion("series", s.coeffs().iter().all(Octonion::is_quaternion))?;
            Ok(s)
        } else {
            let f = text::parse_poly_with(&src, self.parse_opts())?;
            Ok(TruncatedSeries::from_poly(&f, self.opts.order.max(f.coeffs().len())))
        }
    }

    fn fmt(&self, x: &Octonion) -> String {
        text::format_octonion(x, &self.tol)
    }

    fn fmt_poly(&self, f: &OctPoly) -> String {
        text::format_poly(f, &self.tol)
    }

    fn fmt_real(&self, x: f64) -> String {
        text::format_real(x, &self.tol)
    }

    fn fmt_class(&self, c: &ConjugacyClass) -> String {
        format!("({}, {})", self.fmt_real(c.t), self.fmt_real(c.n))
    }

    fn fmt_record(&self, z: &ZeroRecord) -> String {
        let what = match z.kind {
            ZeroKind::Real(x) => format!("real zero {}", self.fmt_real(x)),
            ZeroKind::Isolated(p) => format!("isolated zero {}", self.fmt(&p)),
            ZeroKind::Spherical => "spherical zero".to_string(),
        };
        format!(
            "class (t, n) = {}: {what}, multiplicity {}",
            self.fmt_class(&z.class),
            z.multiplicity
        )
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli, input: &mut dyn Read) -> Result<Report, Failure> {
    let tol = cli.options.tolerances();
    if [tol.abs, tol.rel, tol.root, tol.class]
        .iter()
        .any(|t| !t.is_finite() || *t < 0.0)
    {
        return Err(usage("tolerances must be finite and non-negative"));
    }
    let mut ctx = Ctx {
        opts: &cli.options,
        tol,
        stdin: None,
        input,
    };
    match &cli.command {
        Command::Zeros { f } => zeros_cmd(&mut ctx, f),
        Command::Factor { f } => factor_cmd(&mut ctx, f),
        Command::Product { f, g } => {
            let (f, g) = (ctx.poly(f)?, ctx.poly(g)?);
            let p = f.star_mul(&g);
            Ok(Report {
                text: ctx.fmt_poly(&p),
                json: json!({ "product": p }),
                ok: true,
            })
        }
        Command::Normal { f } => {
            let f = ctx.poly(f)?;
            let n = f.normal(&tol)?;
            Ok(Report {
                text: text::format_real_poly(&n, &tol),
                json: json!({ "normal": n.coeffs() }),
                ok: true,
            })
        }
        Command::Remainder { f, alpha } => {
            let (f, alpha) = (ctx.poly(f)?, ctx.octonion(alpha)?);
            let class = alpha.class();
            let r = zeros::remainder_at_point(&f, &alpha);
            let (text, json) = match r {
                Remainder::Constant(c) => (
                    format!("f({}) = {}", ctx.fmt_real(alpha.re()), ctx.fmt(&c)),
                    json!({ "class": class, "value": c }),
                ),
                Remainder::Linear { a, b } => (
                    format!(
                        "class (t, n) = {}: remainder {}",
                        ctx.fmt_class(&class),
                        ctx.fmt_poly(&r.to_poly())
                    ),
                    json!({ "class": class, "a": a, "b": b }),
                ),
            };
            Ok(Report { text, json, ok: true })
        }
        Command::Camshaft { f, g } => camshaft_cmd(&mut ctx, f, g),
        Command::Fta { f } => {
            let f = ctx.poly(f)?;
            let records = zeros::zero_set(&f, &tol)?;
            let summary = zeros::summarize(&f, &records)?;
            Ok(Report {
                text: format!(
                    "real {}, isolated {}, spherical {}; total multiplicity {} = degree {}",
                    summary.r, summary.i, summary.s, summary.total_multiplicity, summary.degree
                ),
                json: json!({ "summary": summary, "zeros": records }),
                ok: true,
            })
        }
        Command::SeriesDivide {
            series,
            alpha,
            rho,
            x_norm,
        } => series_cmd(&mut ctx, series, alpha, *rho, *x_norm),
        Command::Verify { trials, max_degree } => {
            if *max_degree == 0 {
                return Err(usage("--max-degree must be positive"));
            }
            let report = camshaft::verify_products(*trials, *max_degree, cli.options.seed, &tol);
            let mut text = format!(
                "{} trials: {} passed, {} borderline, {} failed\n\
                 worst point residual {:e}, worst N(f*g) error {:e}\n\
                 associative reductions checked {}, worst {:e}",
                report.trials,
                report.passes,
                report.borderline,
                report.failures.len(),
                report.worst_residual,
                report.worst_normal_error,
                report.associative_checks,
                report.associative_worst
            );
            for (case, count) in &report.case_counts {
                text.push_str(&format!("\n  {case}: {count}"));
            }
            for fail in &report.failures {
                text.push_str(&format!(
                    "\nFAIL trial {} ({:?}): {}\n  f = {}\n  g = {}",
                    fail.trial,
                    fail.scenario,
                    fail.message,
                    ctx.fmt_poly(&fail.f),
                    ctx.fmt_poly(&fail.g)
                ));
            }
            Ok(Report {
                text,
                json: serde_json::to_value(&report).expect("report serializes"),
                ok: report.all_passed(),
            })
        }
    }
}

fn zeros_cmd(ctx: &mut Ctx<'_>, f: &str) -> Result<Report, Failure> {
    let f = ctx.poly(f)?;
    let normal = f.normal(&ctx.tol)?;
    let records = zeros::zero_set(&f, &ctx.tol)?;
    let summary = zeros::summarize(&f, &records);
    let mut lines = vec![
        format!("f = {}", ctx.fmt_poly(&f)),
        format!("N(f) = {}", text::format_real_poly(&normal, &ctx.tol)),
    ];
    lines.extend(records.iter().map(|z| ctx.fmt_record(z)));
    let (ok, summary_json) = match &summary {
        Ok(s) => {
            lines.push(format!(
                "real {}, isolated {}, spherical {}; total multiplicity {} = degree {}",
                s.r, s.i, s.s, s.total_multiplicity, s.degree
            ));
            (true, json!(s))
        }
        Err(e) => {
            lines.push(e.to_string());
            (false, Value::Null)
        }
    };
    Ok(Report {
        text: lines.join("\n"),
        json: json!({ "poly": f, "normal": normal.coeffs(), "zeros": records, "summary": summary_json }),
        ok,
    })
}

fn factor_cmd(ctx: &mut Ctx<'_>, f: &str) -> Result<Report, Failure> {
    let f = ctx.poly(f)?;
    let fac = zeros::factorize(&f, &ctx.tol)?;
    let residual = fac.expand().max_coeff_distance(&f);
    let mut text = String::new();
    for a in &fac.roots {
        text.push_str(&format!("(w - ({})) * ", ctx.fmt(a)));
    }
    text.push_str(&format!("({})", ctx.fmt(&fac.constant)));
    text.push_str(&format!("\nexpansion residual {residual:e}"));
    Ok(Report {
        text,
        json: json!({ "roots": fac.roots, "constant": fac.constant, "residual": residual }),
        ok: true,
    })
}

fn camshaft_cmd(ctx: &mut Ctx<'_>, f: &str, g: &str) -> Result<Report, Failure> {
    let (f, g) = (ctx.poly(f)?, ctx.poly(g)?);
    let tol = ctx.tol;
    let fg = f.star_mul(&g);
    let predictions = camshaft::predict_product(&f, &g, &tol)?;
    let actual = zeros::zero_set(&fg, &tol)?;
    let mut ok = true;
    let mut lines = vec![format!("f * g = {}", ctx.fmt_poly(&fg))];
    let mut entries = Vec::new();
    for p in &predictions {
        let found = actual.iter().find(|z| z.class.matches(&p.class, &tol));
        let cmp = found.map(|z| compare(p, z));
        let passed = cmp.as_ref().is_some_and(|c| c.passed());
        ok &= passed || p.borderline;
        lines.push(format!(
            "[{}] predicted {}{}",
            p.case_tag.label(),
            ctx.fmt_record(&p.predicted),
            if p.borderline { " (borderline)" } else { "" }
        ));
        match found {
            Some(z) => lines.push(format!(
                "    computed {} ({})",
                ctx.fmt_record(z),
                if passed { "agrees" } else { "DISAGREES" }
            )),
            None => lines.push("    computed: no zero on this class (DISAGREES)".into()),
        }
        entries.push(json!({ "prediction": p, "actual": found, "comparison": cmp }));
    }
    Ok(Report {
        text: lines.join("\n"),
        json: json!({ "product": fg, "spheres": entries }),
        ok,
    })
}

fn series_cmd(
    ctx: &mut Ctx<'_>,
    series: &str,
    alpha: &str,
    rho: Option<f64>,
    x_norm: f64,
) -> Result<Report, Failure> {
    let f = ctx.series(series)?;
    let alpha = ctx.octonion(alpha)?;
    let order = ctx.opts.order;
    let div = series_divide_linear(&f, &alpha, order)?;
    let mut lines = vec![format!("remainder {}", ctx.fmt(&div.remainder))];
    for (n, b) in div.quotient.coeffs().iter().enumerate() {
        lines.push(format!("b_{n} = {}", ctx.fmt(b)));
    }
    let mut ok = true;
    let tail = match rho {
        Some(rho) => {
            let report = tail_bound_check_quotient(&f, &alpha, div.quotient.coeffs(), x_norm, rho);
            ok = report.passed();
            lines.push(format!(
                "tail bound rho = {}: admissible {}, n_rho {}, {} checked, {} violations, max ratio {:e}",
                ctx.fmt_real(rho),
                report.admissible,
                report.n_rho,
                report.checked,
                report.violations,
                report.max_ratio
            ));
            Some(report)
        }
        None => None,
    };
    Ok(Report {
        text: lines.join("\n"),
        json: json!({ "quotient": div.quotient, "remainder": div.remainder, "tail_bound": tail }),
        ok,
    })
}

/// Parses `args` (including the program name), runs the command and
/// writes the report. Returns the exit status.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };
    match run(&cli, stdin) {
        Ok(report) => {
            let out = if cli.options.json {
                serde_json::to_string_pretty(&report.json).expect("JSON value serializes")
            } else {
                report.text
            };
            let _ = writeln!(stdout, "{out}");
            if report.ok {
                0
            } else {
                let _ = writeln!(stderr, "check failed");
                1
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        call_with_stdin(args, "")
    }

    fn call_with_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut argv = vec!["hyperzero"];
        argv.extend_from_slice(args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn normal_of_worked_example() {
        let (code, out, _) = call(&["normal", "w^2 + w*i + j"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "w^4 + w^2 + 1");
    }

    #[test]
    fn zeros_of_worked_example() {
        let (code, out, _) = call(&["zeros", "w^2 + w*i + j"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("isolated zero 1/2 - 1/2 i - 1/2 j - 1/2 ij, multiplicity 1"), "{out}");
        assert!(out.contains("isolated zero -1/2 - 1/2 i + 1/2 j - 1/2 ij, multiplicity 1"), "{out}");
    }

    #[test]
    fn fta_of_linear() {
        let (code, out, _) = call(&["fta", "w - 1"]);
        assert_eq!(code, 0);
        assert!(out.contains("total multiplicity 1 = degree 1"));
    }

    #[test]
    fn stdin_input() {
        let (code, out, _) = call_with_stdin(&["normal", "-"], "w - i\n");
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "w^2 + 1");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["zeros", "w +"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["zeros", "3"]).0, 1);
        assert_eq!(call(&["--quaternion", "zeros", "w - k"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
