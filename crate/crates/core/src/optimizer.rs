//! β-descent: start from the trivial bound, step down while some criterion
//! certifies the next value, bisect the last edge. Every accepted step keeps
//! its witness so the whole chain can be replayed.

use crate::coeffs::{one_term_margin, one_term_verdict, OneTermVerdict};
use crate::criteria::{
    family_empty, golden_min, region_for, triple_region_empty, EmptinessEvidence, GridSpec, Mode, Region,
    RegionResult, Witness,
};
use crate::error::{domain, Error, Result};
use crate::specfun::SeriesControl;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Instant;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    OneTerm,
    TwoTermI,
    TwoTermJ,
    ThreeTermE,
}

impl Criterion {
    pub fn short(&self) -> &'static str {
        match self {
            Criterion::OneTerm => "one",
            Criterion::TwoTermI => "I",
            Criterion::TwoTermJ => "J",
            Criterion::ThreeTermE => "E",
        }
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "one" | "one-term" | "1" => Ok(Criterion::OneTerm),
            "i" | "two-term-i" => Ok(Criterion::TwoTermI),
            "j" | "two-term-j" => Ok(Criterion::TwoTermJ),
            "e" | "three-term-e" => Ok(Criterion::ThreeTermE),
            other => Err(Error::Config(format!("unknown criterion '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentConfig {
    pub theta0: f64,
    pub grid: GridSpec,
    pub criteria_order: Vec<Criterion>,
    pub step: f64,
    pub bisect_tol: f64,
    pub epsilon_start: f64,
    pub series: SeriesControl,
}

impl Default for DescentConfig {
    fn default() -> Self {
        DescentConfig {
            theta0: 0.01,
            grid: GridSpec::default(),
            criteria_order: vec![Criterion::TwoTermI, Criterion::TwoTermJ, Criterion::OneTerm],
            step: 0.01,
            bisect_tol: 5e-4,
            epsilon_start: 1e-3,
            series: SeriesControl::default(),
        }
    }
}

impl DescentConfig {
    pub fn one_term_only() -> Self {
        DescentConfig {
            criteria_order: vec![Criterion::OneTerm],
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.theta0 > 0.0 && self.theta0 <= 1.0) {
            return bad(format!("theta0 must lie in (0,1], got {}", self.theta0));
        }
        if !(self.step > 0.0 && self.step <= self.theta0) {
            return bad(format!("step must lie in (0, theta0], got {}", self.step));
        }
        if !(self.bisect_tol > 0.0) || !(self.epsilon_start > 0.0) {
            return bad("bisect_tol and epsilon_start must be positive".into());
        }
        if self.grid.n < 2 {
            return bad("grid needs at least 2 points".into());
        }
        if self.criteria_order.is_empty() {
            return bad("criteria_order is empty".into());
        }
        self.series.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StepEvidence {
    Family(EmptinessEvidence),
    OneTerm { theta: f64, margin: f64, boundary: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentStep {
    pub beta_from: f64,
    pub beta_to: f64,
    pub criterion: Criterion,
    pub evidence: StepEvidence,
    pub margin: f64,
}

impl DescentStep {
    /// θ for which the norm hypothesis at β_to − 1 + θ is assumed.
    pub fn theta_hypothesis(&self, theta0: f64) -> f64 {
        match &self.evidence {
            StepEvidence::OneTerm { theta, .. } => *theta,
            StepEvidence::Family(_) => theta0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub format_version: u32,
    pub tau: Complex64,
    pub beta_start: f64,
    pub beta_final: f64,
    pub tag: String,
    pub steps: Vec<DescentStep>,
    pub config: DescentConfig,
}

pub fn trivial_start(tau: Complex64, epsilon: f64) -> Result<f64> {
    if tau.norm() == 0.0 {
        return domain("tau must be nonzero");
    }
    if !(epsilon > 0.0) {
        return domain("epsilon must be positive");
    }
    Ok(2.0 * tau.norm() + tau.re + epsilon)
}

/// Largest one-term margin over θ ∈ [θ_min, 1).
pub fn best_one_term(tau: Complex64, beta: f64, theta_min: f64, ctl: &SeriesControl) -> Option<(f64, f64)> {
    let lo = theta_min.max(1e-4);
    let hi = 0.999;
    if lo >= hi {
        return None;
    }
    let f = |th: f64| one_term_margin(tau, beta, th, ctl).unwrap_or(f64::NEG_INFINITY);
    let n = 48;
    let pts: Vec<f64> = (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect();
    let vals: Vec<f64> = pts.iter().map(|&th| f(th)).collect();
    let k = (0..n).max_by(|&i, &j| vals[i].total_cmp(&vals[j]))?;
    let a = pts[k.saturating_sub(1)];
    let b = pts[(k + 1).min(n - 1)];
    let (th, v) = golden_min(|th| -f(th), a, b, 1e-9 * b);
    let v = -v;
    Some(if v > vals[k] { (th, v) } else { (pts[k], vals[k]) })
}

fn family_mode(c: Criterion, tau: Complex64) -> Option<Mode> {
    let real = tau.im == 0.0;
    match c {
        Criterion::TwoTermI => Some(if real { Mode::I } else { Mode::D }),
        Criterion::TwoTermJ if real => Some(Mode::J),
        Criterion::ThreeTermE if real => Some(Mode::E),
        _ => None,
    }
}

fn try_step(tau: Complex64, from: f64, to: f64, cfg: &DescentConfig) -> Option<DescentStep> {
    let h = from - to;
    for &c in &cfg.criteria_order {
        let evidence = match c {
            Criterion::OneTerm => {
                let Some((theta, margin)) = best_one_term(tau, to, h, &cfg.series) else { continue };
                match one_term_verdict(margin) {
                    OneTermVerdict::Fails => continue,
                    v => StepEvidence::OneTerm {
                        theta,
                        margin,
                        boundary: v == OneTermVerdict::Boundary,
                    },
                }
            }
            _ => {
                let Some(mode) = family_mode(c, tau) else { continue };
                if h > cfg.theta0 {
                    continue;
                }
                match family_empty(tau, to, cfg.theta0, mode, &cfg.grid, &cfg.series) {
                    Ok(ev) if ev.is_empty() => StepEvidence::Family(ev),
                    _ => continue,
                }
            }
        };
        let margin = match &evidence {
            StepEvidence::Family(ev) => ev.margin,
            StepEvidence::OneTerm { margin, .. } => *margin,
        };
        return Some(DescentStep {
            beta_from: from,
            beta_to: to,
            criterion: c,
            evidence,
            margin,
        });
    }
    None
}

/// β − step, rounded up so that the computed difference never exceeds step.
fn step_target(beta: f64, step: f64) -> f64 {
    let mut target = beta - step;
    while target > 0.0 && beta - target > step {
        target = f64::from_bits(target.to_bits() + 1);
    }
    target
}

pub fn descend(tau: Complex64, cfg: &DescentConfig) -> Result<BoundCertificate> {
    cfg.validate()?;
    let start = trivial_start(tau, cfg.epsilon_start)?;
    let mut beta = start;
    let mut steps = Vec::new();
    loop {
        let target = step_target(beta, cfg.step);
        if target > 0.0 {
            if let Some(s) = try_step(tau, beta, target, cfg) {
                steps.push(s);
                beta = target;
                continue;
            }
        }
        let mut lo = target.max(0.0);
        let mut hi = beta;
        while hi - lo > cfg.bisect_tol * hi.min(1.0) {
            let mid = 0.5 * (lo + hi);
            if let Some(s) = try_step(tau, beta, mid, cfg) {
                steps.push(s);
                beta = mid;
                hi = mid;
            } else {
                lo = mid;
            }
        }
        break;
    }
    let tag = match steps.last() {
        None => "trivial".to_string(),
        Some(s) if s.criterion == Criterion::TwoTermJ => "J*".to_string(),
        Some(s) => match family_mode(s.criterion, tau) {
            Some(mode) => format!("{mode:?}"),
            None => "one".to_string(),
        },
    };
    Ok(BoundCertificate {
        format_version: FORMAT_VERSION,
        tau,
        beta_start: start,
        beta_final: beta,
        tag,
        steps,
        config: cfg.clone(),
    })
}

/// Structural checks: chain continuity, strict decrease, hypothesis reach.
pub fn hypothesis_chain_ok(cert: &BoundCertificate) -> bool {
    let th0 = cert.config.theta0;
    let mut b = cert.beta_start;
    for s in &cert.steps {
        if s.beta_from != b || !(s.beta_to < s.beta_from) || s.beta_to <= 0.0 {
            return false;
        }
        if s.beta_from - s.beta_to > s.theta_hypothesis(th0) {
            return false;
        }
        b = s.beta_to;
    }
    b == cert.beta_final
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

fn check_witness(cert: &BoundCertificate, s: &DescentStep) -> std::result::Result<(), String> {
    let cfg = &cert.config;
    let ctl = &cfg.series;
    let tau = cert.tau;
    let beta = s.beta_to;
    let holds = |th: f64| -> std::result::Result<(), String> {
        let m = one_term_margin(tau, beta, th, ctl).map_err(|e| e.to_string())?;
        if one_term_verdict(m) == OneTermVerdict::Fails {
            Err(format!("one-term margin {m:e} at theta {th}"))
        } else {
            Ok(())
        }
    };
    match &s.evidence {
        StepEvidence::OneTerm { theta, .. } => {
            if !(*theta > 0.0 && *theta < 1.0) {
                return Err(format!("theta {theta} out of range"));
            }
            holds(*theta)
        }
        StepEvidence::Family(ev) => {
            let mode = ev.mode;
            let in_range = |th: f64| th >= cfg.theta0 && th <= 1.0;
            let region = |th: f64| -> std::result::Result<Region, String> {
                match region_for(th, tau, beta, mode, ctl).map_err(|e| e.to_string())? {
                    RegionResult::Region(w) => Ok(w.region),
                    RegionResult::OneTermFallback { .. } => Err(format!("no region at theta {th}")),
                }
            };
            match &ev.witness {
                Witness::SingleEmpty { theta } if in_range(*theta) => match region(*theta)? {
                    Region::Empty => Ok(()),
                    r => Err(format!("region at {theta} is {r:?}")),
                },
                Witness::OneTermFallback { theta, .. } if in_range(*theta) => holds(*theta),
                Witness::IntervalPair { theta_sup, theta_inf, .. } if in_range(*theta_sup) && in_range(*theta_inf) => {
                    let (a, b) = (region(*theta_sup)?, region(*theta_inf)?);
                    match (a, b) {
                        (Region::Interval { lo, .. }, Region::Interval { hi, .. }) if lo - hi > cfg.grid.margin_guard => {
                            Ok(())
                        }
                        _ => Err(format!("intervals {a:?} and {b:?} are not disjoint")),
                    }
                }
                Witness::Triplet { thetas, .. } if thetas.iter().all(|&t| in_range(t)) => {
                    let mut ws = Vec::new();
                    for &th in thetas {
                        match region_for(th, tau, beta, mode, ctl).map_err(|e| e.to_string())? {
                            RegionResult::Region(w) => ws.push(w),
                            RegionResult::OneTermFallback { .. } => return Err(format!("no region at theta {th}")),
                        }
                    }
                    let c = triple_region_empty(&ws[0], &ws[1], &ws[2]).map_err(|e| e.to_string())?;
                    if c.empty {
                        Ok(())
                    } else {
                        Err("triplet has a common point".into())
                    }
                }
                w => Err(format!("witness {w:?} does not certify emptiness")),
            }
        }
    }
}

/// Re-validate every witness of a certificate from the recorded data.
pub fn replay(cert: &BoundCertificate) -> ReplayReport {
    let mut failures = Vec::new();
    if cert.format_version != FORMAT_VERSION {
        failures.push(format!("format version {}", cert.format_version));
    }
    if let Err(e) = cert.config.validate() {
        failures.push(e.to_string());
    }
    match trivial_start(cert.tau, cert.config.epsilon_start) {
        Ok(b) if b == cert.beta_start => {}
        _ => failures.push("beta_start is not the trivial start".into()),
    }
    if !hypothesis_chain_ok(cert) {
        failures.push("hypothesis chain broken".into());
    }
    for (i, s) in cert.steps.iter().enumerate() {
        if let Err(e) = check_witness(cert, s) {
            failures.push(format!("step {i} ({} -> {}): {e}", s.beta_from, s.beta_to));
        }
    }
    ReplayReport {
        ok: failures.is_empty(),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub t: f64,
    pub beta: f64,
    pub tag: String,
    /// max{−t−1, 0} for t < 0, max{3t−1, 0} otherwise.
    pub comparison: f64,
    pub steps: usize,
    pub runtime_ms: u64,
    /// Set when the descent failed and the row fell back to the trivial start.
    pub degraded: bool,
    pub certificate: Option<BoundCertificate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub rows: Vec<TableRow>,
    pub config: DescentConfig,
}

pub fn comparison_value(t: f64) -> f64 {
    if t < 0.0 {
        (-t - 1.0).max(0.0)
    } else {
        (3.0 * t - 1.0).max(0.0)
    }
}

/// Sample points of the standard table.
pub const TABLE_TS: &[f64] = &[
    -20.0, -10.0, -8.0, -6.0, -5.0, -4.0, -3.0, -2.5, -2.4, -2.3, -2.2, -2.1, -2.0, -1.9, -1.8, -1.752, -1.7, -1.6,
    -1.5, -1.4, -1.3, -1.2, -1.1, -1.0, -0.9, -0.8, -0.7, -0.6, -0.5, -0.4, -0.3, -0.2, -0.15, -0.1, -0.05, 0.05, 0.1,
    0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9,
    2.0, 2.1, 2.2, 2.3, 2.4, 2.5, 3.0, 4.0, 5.0, 6.0,
];

pub fn build_table(ts: &[f64], cfg: &DescentConfig) -> Result<SpectrumTable> {
    build_table_with(ts, cfg, false)
}

/// As `build_table`; with `timing` the runtime column is measured, otherwise 0
/// so that output stays reproducible.
pub fn build_table_with(ts: &[f64], cfg: &DescentConfig, timing: bool) -> Result<SpectrumTable> {
    cfg.validate()?;
    if ts.iter().any(|&t| t == 0.0 || !t.is_finite()) {
        return domain("table points must be finite and nonzero");
    }
    let mut rows: Vec<TableRow> = ts
        .par_iter()
        .map(|&t| {
            let clock = Instant::now();
            let tau = Complex64::new(t, 0.0);
            let res = descend(tau, cfg);
            let runtime_ms = if timing { clock.elapsed().as_millis() as u64 } else { 0 };
            match res {
                Ok(cert) => TableRow {
                    t,
                    beta: cert.beta_final,
                    tag: cert.tag.clone(),
                    comparison: comparison_value(t),
                    steps: cert.steps.len(),
                    runtime_ms,
                    degraded: false,
                    certificate: Some(cert),
                },
                Err(_) => TableRow {
                    t,
                    beta: trivial_start(tau, cfg.epsilon_start).unwrap_or(f64::NAN),
                    tag: "trivial!".into(),
                    comparison: comparison_value(t),
                    steps: 0,
                    runtime_ms,
                    degraded: true,
                    certificate: None,
                },
            }
        })
        .collect();
    rows.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(SpectrumTable {
        rows,
        config: cfg.clone(),
    })
}

impl SpectrumTable {
    pub fn to_delimited(&self) -> String {
        let mut s = String::from("t,beta,criterion,theta0,grid_n,steps,runtime_ms,comparison\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:.6},{},{},{},{},{},{:.3}",
                r.t, r.beta, r.tag, self.config.theta0, self.config.grid.n, r.steps, r.runtime_ms, r.comparison
            );
        }
        s
    }

    /// Whitespace-separated series: the bound and the two support lines.
    pub fn plot_data(&self) -> String {
        let mut s = String::from("# series: bound\n# t beta\n");
        for r in &self.rows {
            let _ = writeln!(s, "{} {:.6}", r.t, r.beta);
        }
        let (lo, hi) = match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => (a.t, b.t),
            _ => (-1.0, 1.0),
        };
        s.push_str("\n# series: B = -t-1\n# t beta\n");
        for t in [lo.min(-1.0), -1.0] {
            let _ = writeln!(s, "{} {}", t, -t - 1.0);
        }
        s.push_str("\n# series: B = 3t-1\n# t beta\n");
        for t in [1.0 / 3.0, hi.max(1.0 / 3.0)] {
            let _ = writeln!(s, "{} {}", t, 3.0 * t - 1.0);
        }
        s
    }
}

/// Chord bound for the exterior class: convexity, the anchor value 1 at
/// t = 2, and the table values as upper bounds.
pub fn sigma_class_bound_at(s: f64, table: &SpectrumTable) -> Result<f64> {
    if !(s <= 2.0) || !s.is_finite() {
        return domain(format!("s must not exceed 2, got {s}"));
    }
    if s == 2.0 {
        return Ok(1.0);
    }
    let best = table
        .rows
        .iter()
        .filter(|r| r.t <= s && !r.degraded)
        .map(|r| {
            if r.t == s {
                r.beta
            } else {
                let lambda = (2.0 - s) / (2.0 - r.t);
                lambda * r.beta + (1.0 - lambda)
            }
        })
        .fold(f64::INFINITY, f64::min);
    if best.is_finite() {
        Ok(best)
    } else {
        domain(format!("no table point at or below s = {s}"))
    }
}
