//! Command-line front end. `run` takes the argument list and output sinks
//! and returns the process exit code: 2 usage, 1 failed verification or
//! runtime error, 0 otherwise.

use crate::criteria::GridSpec;
use crate::error::{Error, Result};
use crate::optimizer::{
    build_table_with, descend, replay, BoundCertificate, Criterion, DescentConfig, SpectrumTable, TABLE_TS,
};
use crate::oracle::{run_suite, DiskQuadrature};
use crate::specfun::{kappa, sigma, KappaMethod, K_bound, SeriesControl};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "means-spectrum", version, about = "Certified bounds for the universal integral means spectrum")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify a bound at one t (or complex tau)
    Bound(BoundArgs),
    /// Bounds over a set of t values
    Table(TableArgs),
    /// Bound series and support lines for plotting
    PlotData(TableArgs),
    /// Run the oracle suite, optionally replaying a certificate
    Verify(VerifyArgs),
    /// κ(α,θ), and K(β,θ) when --beta is given
    Kappa(KappaArgs),
    /// σ(α,β)
    Sigma(SigmaArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct DescentFlags {
    /// Lower end of the θ range [θ₀, 1]
    #[arg(long, default_value_t = 0.01)]
    pub theta0: f64,
    /// θ grid points per family test
    #[arg(long = "grid-n", default_value_t = 256)]
    pub grid_n: usize,
    /// Comma list from one, I, J, E, tried in order
    #[arg(long, default_value = "I,J,one")]
    pub criteria: String,
    /// Descent step; defaults to θ₀
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long = "bisect-tol", default_value_t = 5e-4)]
    pub bisect_tol: f64,
    /// Slack added to the trivial starting bound
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    #[arg(long = "rel-tol", default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[arg(long = "max-terms", default_value_t = 100_000)]
    pub max_terms: usize,
}

impl DescentFlags {
    pub fn config(&self) -> Result<DescentConfig> {
        let criteria_order = self
            .criteria
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Criterion>>>()?;
        let cfg = DescentConfig {
            theta0: self.theta0,
            grid: GridSpec {
                n: self.grid_n,
                ..GridSpec::default()
            },
            criteria_order,
            step: self.step.unwrap_or(self.theta0),
            bisect_tol: self.bisect_tol,
            epsilon_start: self.epsilon,
            series: SeriesControl {
                rel_tol: self.rel_tol,
                max_terms: self.max_terms,
                ..SeriesControl::default()
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["tau_re", "tau_im"])]
    pub t: Option<f64>,
    #[arg(long = "tau-re", allow_hyphen_values = true)]
    pub tau_re: Option<f64>,
    #[arg(long = "tau-im", allow_hyphen_values = true)]
    pub tau_im: Option<f64>,
    #[command(flatten)]
    pub descent: DescentFlags,
    /// Certificate file
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Comma list of t values
    #[arg(long, allow_hyphen_values = true, conflicts_with = "range")]
    pub ts: Option<String>,
    /// start:stop:step, stop included
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Use the standard sample points
    #[arg(long, conflicts_with_all = ["ts", "range"])]
    pub standard: bool,
    #[command(flatten)]
    pub descent: DescentFlags,
    /// Output directory (table and per-t certificates) or, for plot-data, a file
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; 0 means all cores
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Fill the runtime_ms column (otherwise 0, keeping output reproducible)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate to replay in addition to the oracle suite
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaMethodArg {
    Series,
    Hyp4f3,
}

#[derive(Args, Debug)]
pub struct KappaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub theta: f64,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = KappaMethodArg::Series)]
    pub method: KappaMethodArg,
    #[arg(long = "rel-tol", default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[arg(long = "max-terms", default_value_t = 100_000)]
    pub max_terms: usize,
}

#[derive(Args, Debug)]
pub struct SigmaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;

pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Verify) => 1,
    }
}

fn check_t(t: f64) -> std::result::Result<(), Failure> {
    if t == 0.0 {
        return Err(Failure::Usage("t = 0 needs no bound: B_S(0) = 0 trivially".into()));
    }
    if !t.is_finite() {
        return Err(Failure::Usage(format!("t must be finite, got {t}")));
    }
    Ok(())
}

fn dispatch(cmd: Command, out: Out) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Bound(a) => cmd_bound(a, out),
        Command::Table(a) => cmd_table(a, out, false),
        Command::PlotData(a) => cmd_table(a, out, true),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Kappa(a) => {
            let ctl = SeriesControl {
                rel_tol: a.rel_tol,
                max_terms: a.max_terms,
                ..SeriesControl::default()
            };
            let method = match a.method {
                KappaMethodArg::Series => KappaMethod::Series,
                KappaMethodArg::Hyp4f3 => KappaMethod::Hyp4F3,
            };
            writeln!(out, "kappa({}, {}) = {:.15e}", a.alpha, a.theta, kappa(a.alpha, a.theta, &ctl, method)?)?;
            if let Some(b) = a.beta {
                writeln!(out, "K({}, {}) = {:.15e}", b, a.theta, K_bound(b, a.theta, &ctl)?)?;
            }
            Ok(())
        }
        Command::Sigma(a) => {
            writeln!(out, "{}", sigma(a.alpha, a.beta)?)?;
            Ok(())
        }
    }
}

fn cmd_bound(a: BoundArgs, out: Out) -> std::result::Result<(), Failure> {
    let tau = match (a.t, a.tau_re, a.tau_im) {
        (Some(t), _, _) => {
            check_t(t)?;
            Complex64::new(t, 0.0)
        }
        (None, None, None) => return Err(Failure::Usage("bound needs --t or --tau-re/--tau-im".into())),
        (None, re, im) => {
            let tau = Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0));
            if tau.norm() == 0.0 {
                return Err(Failure::Usage("tau = 0 needs no bound: B_S(0) = 0 trivially".into()));
            }
            tau
        }
    };
    let cfg = a.descent.config()?;
    let cert = descend(tau, &cfg)?;
    let json = serde_json::to_string_pretty(&cert)?;
    if let Some(p) = &a.out {
        std::fs::write(p, format!("{json}\n"))?;
    }
    match a.format {
        Format::Json => writeln!(out, "{json}")?,
        Format::Text => writeln!(
            out,
            "tau = {}{:+}i  beta = {:.6}  criterion = {}  steps = {}",
            tau.re,
            tau.im,
            cert.beta_final,
            cert.tag,
            cert.steps.len()
        )?,
    }
    Ok(())
}

fn parse_ts(a: &TableArgs) -> std::result::Result<Vec<f64>, Failure> {
    let bad = |m: String| Failure::Usage(m);
    let ts: Vec<f64> = if a.standard {
        TABLE_TS.to_vec()
    } else if let Some(list) = &a.ts {
        list.split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| bad(format!("bad t '{s}': {e}"))))
            .collect::<std::result::Result<_, _>>()?
    } else if let Some(r) = &a.range {
        let parts: Vec<f64> = r
            .split(':')
            .map(|s| s.trim().parse::<f64>().map_err(|e| bad(format!("bad range '{r}': {e}"))))
            .collect::<std::result::Result<_, _>>()?;
        let [lo, hi, step] = parts[..] else {
            return Err(bad(format!("range must be start:stop:step, got '{r}'")));
        };
        if !(step > 0.0) || hi < lo {
            return Err(bad(format!("empty range '{r}'")));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        // skip 0: its value is known
        (0..=n).map(|i| lo + step * i as f64).filter(|t| t.abs() > 1e-12).collect()
    } else {
        return Err(bad("table needs --ts, --range or --standard".into()));
    };
    for &t in &ts {
        check_t(t)?;
    }
    Ok(ts)
}

fn write_certificates(dir: &Path, table: &SpectrumTable) -> std::result::Result<(), Failure> {
    for r in &table.rows {
        if let Some(c) = &r.certificate {
            std::fs::write(dir.join(format!("certificate_t{}.json", r.t)), serde_json::to_string_pretty(c)? + "\n")?;
        }
    }
    Ok(())
}

fn cmd_table(a: TableArgs, out: Out, plot: bool) -> std::result::Result<(), Failure> {
    let ts = parse_ts(&a)?;
    let cfg = a.descent.config()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let table = pool.install(|| build_table_with(&ts, &cfg, a.timing))?;
    let echo = format!("# config {}\n", serde_json::to_string(&cfg)?);
    let body = if plot {
        format!("{echo}{}", table.plot_data())
    } else {
        match a.format {
            Format::Text => format!("{echo}{}", table.to_delimited()),
            Format::Json => serde_json::to_string_pretty(&table)? + "\n",
        }
    };
    match &a.out {
        None => out.write_all(body.as_bytes())?,
        Some(p) if plot => std::fs::write(p, body)?,
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let name = if a.format == Format::Json { "table.json" } else { "table.csv" };
            std::fs::write(dir.join(name), body)?;
            write_certificates(dir, &table)?;
            writeln!(out, "wrote {} rows to {}", table.rows.len(), dir.display())?;
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: Out) -> std::result::Result<(), Failure> {
    let report = run_suite(&DiskQuadrature::default())?;
    let mut ok = report.all_pass();
    if a.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        for c in &report.checks {
            writeln!(
                out,
                "{}  {:<48} value={:.12} ref={:.12} gap={:.3e} tol={:.0e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.reference,
                c.gap,
                c.tol
            )?;
        }
    }
    if let Some(p) = &a.certificate {
        let text = std::fs::read_to_string(p)?;
        let cert: BoundCertificate = serde_json::from_str(&text)?;
        let rep = replay(&cert);
        writeln!(
            out,
            "{}  replay {} ({} steps, beta = {})",
            if rep.ok { "PASS" } else { "FAIL" },
            p.display(),
            cert.steps.len(),
            cert.beta_final
        )?;
        for f in &rep.failures {
            writeln!(out, "      {f}")?;
        }
        ok &= rep.ok;
    }
    writeln!(out, "{}", if ok { "all checks passed" } else { "verification FAILED" })?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
