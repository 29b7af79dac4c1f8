//! Numerical checks on concrete maps: the Prawitz area integral, its
//! two-variable form, σ(α,β) as a double integral, and the Taylor-coefficient
//! norm identities of the weighted Bergman spaces.

use crate::coeffs::{kronecker_sum, A_coefficients, derived_a12};
use crate::error::{domain, Result};
use crate::specfun::{hyp2f1, hyp2f1_at_1, hyp2f1_series_at_1, kappa, pochhammer, sigma, KappaMethod, SeriesControl};
use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MapSample {
    Identity,
    Koebe,
    /// e^{−ia} k(e^{ia} z)
    RotatedKoebe(f64),
    /// z + a z², univalent for |a| ≤ 1/2
    Quadratic(f64),
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// exp(z) − 1 without cancellation for small z.
fn cexpm1(z: Complex64) -> Complex64 {
    let h = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * z.im.cos() - 2.0 * h * h, z.re.exp() * z.im.sin())
}

/// ln(1 + z), accurate for small z.
fn cln1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // z − z²/2 + z³/3 − z⁴/4
        z * (c(1.0) - z * (c(0.5) - z * (c(1.0 / 3.0) - z * 0.25)))
    } else {
        (c(1.0) + z).ln()
    }
}

impl MapSample {
    pub fn zoo() -> Vec<MapSample> {
        vec![
            MapSample::Identity,
            MapSample::Koebe,
            MapSample::RotatedKoebe(0.7),
            MapSample::RotatedKoebe(2.0),
            MapSample::Quadratic(0.3),
            MapSample::Quadratic(-0.5),
        ]
    }

    pub fn name(&self) -> String {
        match self {
            MapSample::Identity => "identity".into(),
            MapSample::Koebe => "koebe".into(),
            MapSample::RotatedKoebe(a) => format!("rotated-koebe({a})"),
            MapSample::Quadratic(a) => format!("quadratic({a})"),
        }
    }

    fn rot(&self) -> Option<Complex64> {
        match self {
            MapSample::Identity | MapSample::Quadratic(_) => None,
            MapSample::Koebe => Some(c(1.0)),
            MapSample::RotatedKoebe(a) => Some(Complex64::from_polar(1.0, *a)),
        }
    }

    pub fn phi(&self, z: Complex64) -> Complex64 {
        if let MapSample::Quadratic(a) = *self {
            return z + z * z * a;
        }
        match self.rot() {
            None => z,
            Some(e) => {
                let u = e * z;
                u / ((c(1.0) - u) * (c(1.0) - u)) / e
            }
        }
    }

    pub fn dphi(&self, z: Complex64) -> Complex64 {
        self.log_dphi(z).exp()
    }

    /// Branch with value 0 at the origin; 1 ± u stay in the right half plane.
    pub fn log_dphi(&self, z: Complex64) -> Complex64 {
        if let MapSample::Quadratic(a) = *self {
            return cln1p(z * (2.0 * a));
        }
        match self.rot() {
            None => c(0.0),
            Some(e) => {
                let u = e * z;
                cln1p(u) - cln1p(-u) * 3.0
            }
        }
    }

    /// log(z/φ(z)), zero at the origin.
    pub fn log_z_over_phi(&self, z: Complex64) -> Complex64 {
        if let MapSample::Quadratic(a) = *self {
            return -cln1p(z * a);
        }
        match self.rot() {
            None => c(0.0),
            Some(e) => cln1p(-(e * z)) * 2.0,
        }
    }

    /// log of φ′(w)(z−w)/(φ(z)−φ(w)), zero on the diagonal.
    pub fn log_q(&self, z: Complex64, w: Complex64) -> Complex64 {
        if let MapSample::Quadratic(a) = *self {
            return cln1p(w * (2.0 * a)) - cln1p((z + w) * a);
        }
        match self.rot() {
            None => c(0.0),
            Some(e) => {
                let (u, v) = (e * z, e * w);
                cln1p(v) - cln1p(-v) + cln1p(-u) * 2.0 - cln1p(-(u * v))
            }
        }
    }

    /// φ″/φ′
    pub fn pre_schwarzian(&self, z: Complex64) -> Complex64 {
        if let MapSample::Quadratic(a) = *self {
            return c(2.0 * a) / (c(1.0) + z * (2.0 * a));
        }
        match self.rot() {
            None => c(0.0),
            Some(e) => {
                let u = e * z;
                e * (c(1.0) / (c(1.0) + u) + c(3.0) / (c(1.0) - u))
            }
        }
    }

    /// Boundary point where the map is singular.
    pub fn singular_point(&self) -> Option<Complex64> {
        if let MapSample::Quadratic(a) = *self {
            // zero of φ′, on the circle only when |a| = 1/2
            return (a != 0.0).then(|| c(-0.5 / a));
        }
        self.rot().map(|e| c(1.0) / e)
    }
}

/// Polar quadrature on the unit disk about a center point: Gauss–Legendre
/// panels, graded dyadically toward the center, toward the circle, and in
/// angle toward one focus direction. Weights are for dA = dx dy / π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskQuadrature {
    pub order: usize,
    pub center_levels: usize,
    pub edge_levels: usize,
    pub angular_panels: usize,
    pub focus_levels: usize,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        DiskQuadrature {
            order: 10,
            center_levels: 24,
            edge_levels: 24,
            angular_panels: 16,
            focus_levels: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadEstimate {
    pub value: f64,
    /// Difference to the same integral on the refined rule.
    pub error: f64,
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = s + v;
        comp += if s.abs() >= v.abs() { (s - t) + v } else { (v - t) + s };
        s = t;
    }
    s + comp
}

fn gl_panels(breaks: &[f64], rule: &GaussLegendre) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        for &(x, wt) in rule.as_node_weight_pairs() {
            out.push((0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * wt));
        }
    }
    out
}

impl DiskQuadrature {
    pub fn refined(&self) -> Self {
        DiskQuadrature {
            order: self.order + 6,
            center_levels: self.center_levels + 8,
            edge_levels: self.edge_levels + 8,
            angular_panels: self.angular_panels * 2,
            focus_levels: self.focus_levels + 8,
        }
    }

    fn rule(&self) -> Result<GaussLegendre> {
        match std::num::NonZeroUsize::new(self.order) {
            Some(n) => Ok(GaussLegendre::new(n)),
            None => domain("quadrature order must be positive"),
        }
    }

    /// Radial parameter s ∈ [0,1] (fraction of the distance to the circle).
    fn radial(&self, rule: &GaussLegendre) -> Vec<(f64, f64)> {
        let mut b = vec![0.0];
        for k in (1..=self.center_levels).rev() {
            b.push(0.5f64.powi(k as i32));
        }
        for k in 2..=self.edge_levels {
            b.push(1.0 - 0.5f64.powi(k as i32));
        }
        b.push(1.0);
        gl_panels(&b, rule)
    }

    fn angular(&self, rule: &GaussLegendre, focus: Option<f64>) -> Vec<(f64, f64)> {
        let Some(f) = focus else {
            let b: Vec<f64> = (0..=self.angular_panels)
                .map(|i| 2.0 * PI * i as f64 / self.angular_panels as f64)
                .collect();
            return gl_panels(&b, rule);
        };
        // offsets in [0, π], graded toward 0, mirrored to [−π, 0]
        let mut half = vec![0.0];
        for k in (2..=self.focus_levels).rev() {
            half.push(PI * 0.5f64.powi(k as i32));
        }
        let m = (self.angular_panels / 2).max(1);
        for i in 0..=m {
            half.push(PI / 2.0 + PI / 2.0 * i as f64 / m as f64);
        }
        let mut b: Vec<f64> = half.iter().rev().map(|u| f - u).collect();
        b.extend(half.iter().skip(1).map(|u| f + u));
        gl_panels(&b, rule)
    }

    /// Nodes z with weights, polar about `center`, angularly graded toward `focus`.
    pub fn nodes(&self, center: Complex64, focus: Option<f64>) -> Result<Vec<(Complex64, f64)>> {
        if !(center.norm() < 1.0) {
            return domain("quadrature center must lie in the open disk");
        }
        let rule = self.rule()?;
        let radial = self.radial(&rule);
        let angular = self.angular(&rule, focus);
        let d = 1.0 - center.norm_sqr();
        let mut out = Vec::with_capacity(radial.len() * angular.len());
        for &(psi, wpsi) in &angular {
            let e = Complex64::from_polar(1.0, psi);
            let p = (center.conj() * e).re;
            // distance from center to the circle along direction e
            let rho = -p + (p * p + d).sqrt();
            for &(s, ws) in &radial {
                out.push((center + e * (s * rho), ws * wpsi * s * rho * rho / PI));
            }
        }
        Ok(out)
    }

    pub fn integrate(&self, center: Complex64, focus: Option<f64>, f: impl Fn(Complex64) -> f64) -> Result<f64> {
        Ok(neumaier(self.nodes(center, focus)?.into_iter().map(|(z, w)| w * f(z))))
    }

    /// Integral on this rule and on the refined rule.
    pub fn estimate(&self, center: Complex64, focus: Option<f64>, f: impl Fn(Complex64) -> f64) -> Result<QuadEstimate> {
        let v1 = self.integrate(center, focus, &f)?;
        let v2 = self.refined().integrate(center, focus, &f)?;
        Ok(QuadEstimate {
            value: v2,
            error: (v2 - v1).abs(),
        })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(())
    } else {
        domain(format!("theta must lie in (0,1], got {theta}"))
    }
}

fn focus_from(map: &MapSample, center: Complex64) -> Option<f64> {
    map.singular_point().map(|p| (p - center).arg())
}

fn prawitz_integrand(map: MapSample, theta: f64) -> impl Fn(Complex64) -> f64 {
    move |z: Complex64| {
        let f = cexpm1(map.log_dphi(z) + map.log_z_over_phi(z) * (theta + 1.0));
        f.norm_sqr() / z.norm().powf(2.0 * theta + 2.0)
    }
}

/// ∫_D |φ′(z)(z/φ(z))^{θ+1} − 1|² dA(z)/|z|^{2θ+2}
pub fn prawitz_integral(map: MapSample, theta: f64, quad: &DiskQuadrature) -> Result<f64> {
    check_theta(theta)?;
    quad.integrate(c(0.0), focus_from(&map, c(0.0)), prawitz_integrand(map, theta))
}

/// The Prawitz integral of z + a z² from its Taylor series: Σ_{n≥1} |c_n|²/(n−θ)
/// where Σ c_n zⁿ = (1+2az)(1+az)^{−θ−1} − 1.
pub fn prawitz_quadratic_series(a: f64, theta: f64, ctl: &SeriesControl) -> Result<f64> {
    check_theta(theta)?;
    if !(a.abs() <= 0.5) {
        return domain(format!("quadratic map needs |a| <= 1/2, got {a}"));
    }
    let mut b_prev = 1.0;
    let mut terms = vec![];
    for n in 1..=ctl.max_terms {
        let b = b_prev * a * (-(theta + n as f64)) / n as f64;
        let cn = b + 2.0 * a * b_prev;
        // c_1 = a(1−θ), so the first term is a²(1−θ)
        let term = if n == 1 { a * a * (1.0 - theta) } else { cn * cn / (n as f64 - theta) };
        terms.push(term);
        b_prev = b;
        // |b_n| decays like |a|^n n^θ
        if n > 4 && term.abs() < ctl.abs_tol * 1e-2 && b.abs() < ctl.abs_tol {
            return Ok(neumaier(terms.into_iter()));
        }
    }
    Err(crate::Error::NonConvergence { terms: ctl.max_terms, err: f64::NAN })
}

pub fn prawitz_estimate(map: MapSample, theta: f64, quad: &DiskQuadrature) -> Result<QuadEstimate> {
    check_theta(theta)?;
    quad.estimate(c(0.0), focus_from(&map, c(0.0)), prawitz_integrand(map, theta))
}

/// Φ_θ(z,w) + L_θ(z,w); on and near the diagonal the diagonal values are used.
pub fn phi_plus_l(map: &MapSample, z: Complex64, w: Complex64, theta: f64) -> Complex64 {
    let d = z - w;
    let one_w = 1.0 - w.norm_sqr();
    if d.norm() < 1e-9 {
        return map.pre_schwarzian(w) * ((1.0 - theta) / 2.0) - w.conj() * ((1.0 - theta) / one_w);
    }
    let a = map.log_dphi(z) - map.log_dphi(w) + map.log_q(z, w) * (theta + 1.0);
    // log((1−|w|²)/(1−w̄z)) = −ln(1 − w̄(z−w)/(1−|w|²))
    let log_r = -cln1p(-(w.conj() * d) / one_w);
    (cexpm1(a) - cexpm1(log_r * (1.0 - theta))) / d
}

/// LHS of the two-variable inequality at w.
pub fn two_var_check(map: MapSample, w: Complex64, theta: f64, quad: &DiskQuadrature) -> Result<f64> {
    check_theta(theta)?;
    if !(w.norm() < 1.0) {
        return domain("w must lie in the open disk");
    }
    quad.integrate(w, focus_from(&map, w), move |z| {
        phi_plus_l(&map, z, w, theta).norm_sqr() / (z - w).norm().powf(2.0 * theta)
    })
}

/// (1/θ)(1−|w|²)^{−2θ}
pub fn two_var_rhs(w: Complex64, theta: f64) -> f64 {
    (1.0 - w.norm_sqr()).powf(-2.0 * theta) / theta
}

/// Value of the two-variable integral for the identity map.
pub fn two_var_identity_closed(w: Complex64, theta: f64, ctl: &SeriesControl) -> Result<f64> {
    let x = w.norm_sqr();
    Ok((1.0 - hyp2f1(1.0 - theta, -theta, 1.0, x, ctl)?) * (1.0 - x).powf(-2.0 * theta) / theta)
}

/// ∫∫ |z−w|^{2β} dA(z) dA_α(w); the inner integral depends on |w| only.
pub fn sigma_numeric(alpha: f64, beta: f64, quad: &DiskQuadrature) -> Result<f64> {
    if !(alpha > -1.0) || !(beta > -1.0) {
        return domain(format!("need alpha, beta > -1, got ({alpha}, {beta})"));
    }
    let rule = quad.rule()?;
    let mut b = vec![0.0, 0.25, 0.5];
    for k in 2..=quad.edge_levels {
        b.push(1.0 - 0.5f64.powi(k as i32));
    }
    b.push(1.0);
    let outer = gl_panels(&b, &rule);
    let inner_quad = DiskQuadrature {
        edge_levels: 3,
        ..*quad
    };
    let mut terms = Vec::with_capacity(outer.len());
    for &(r, wr) in &outer {
        let w = c(r);
        let inner = inner_quad.integrate(w, Some(0.0), |z| (z - w).norm().powf(2.0 * beta))?;
        terms.push(wr * inner * (alpha + 1.0) * (1.0 - r * r).powf(alpha) * 2.0 * r);
    }
    Ok(neumaier(terms.into_iter()))
}

/// ‖g‖²_α = Σ k!/(α+2)_k |ĝ(k)|²
pub fn norm_alpha(coeffs: &[Complex64], alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return domain(format!("alpha must exceed -1, got {alpha}"));
    }
    let mut w = 1.0;
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            w *= k as f64 / (alpha + 1.0 + k as f64);
        }
        terms.push(w * a.norm_sqr());
    }
    Ok(neumaier(terms.into_iter()))
}

/// Taylor coefficients of g^{(n)}.
pub fn derivative_coeffs(coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    (n..coeffs.len())
        .map(|k| {
            let m = k - n;
            let f: f64 = ((m + 1)..=k).map(|j| j as f64).product();
            coeffs[k] * f
        })
        .collect()
}

/// (α+2)_{2n}‖g‖²_α − ‖g^{(n)}‖²_{α+2n}, from the termwise closed form.
pub fn asympt_gap(coeffs: &[Complex64], alpha: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return domain("n must be positive");
    }
    if !(alpha > -1.0) {
        return domain(format!("alpha must exceed -1, got {alpha}"));
    }
    let p = pochhammer(alpha + 2.0, 2 * n)?;
    let mut w = 1.0;
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            w *= k as f64 / (alpha + 1.0 + k as f64);
        }
        // (k−n+1)_n / (k+α+2)_n, zero for k < n
        let ratio = if k < n {
            0.0
        } else {
            (0..n).map(|j| (k - n + 1 + j) as f64 / (k as f64 + alpha + 2.0 + j as f64)).product()
        };
        terms.push((1.0 - ratio) * w * a.norm_sqr());
    }
    Ok(p * neumaier(terms.into_iter()))
}

/// The same gap from the two norms directly.
pub fn asympt_gap_direct(coeffs: &[Complex64], alpha: f64, n: usize) -> Result<f64> {
    let p = pochhammer(alpha + 2.0, 2 * n)?;
    Ok(p * norm_alpha(coeffs, alpha)? - norm_alpha(&derivative_coeffs(coeffs, n), alpha + 2.0 * n as f64)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub gap: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn close(&mut self, name: String, value: f64, reference: f64, tol: f64) {
        let gap = (value - reference).abs();
        self.checks.push(OracleCheck {
            name,
            value,
            reference,
            gap,
            tol,
            pass: gap <= tol,
        });
    }

    /// value ≤ bound + tol; gap is bound − value.
    fn below(&mut self, name: String, value: f64, bound: f64, tol: f64) {
        self.checks.push(OracleCheck {
            name,
            value,
            reference: bound,
            gap: bound - value,
            tol,
            pass: value <= bound + tol,
        });
    }
}

/// Full verification suite; deterministic.
pub fn run_suite(quad: &DiskQuadrature) -> Result<OracleReport> {
    let ctl = SeriesControl::default();
    let mut rep = OracleReport { checks: vec![] };

    for map in MapSample::zoo() {
        for theta in [0.25, 0.5, 0.75, 1.0] {
            let v = prawitz_integral(map, theta, quad)?;
            rep.below(format!("prawitz {} theta={theta}", map.name()), v, 1.0 / theta, 1e-3);
            if let MapSample::Quadratic(a) = map {
                rep.close(
                    format!("prawitz {} theta={theta} vs series", map.name()),
                    v,
                    prawitz_quadratic_series(a, theta, &ctl)?,
                    1e-6,
                );
            } else if map != MapSample::Identity && (theta == 0.5 || theta == 1.0) {
                rep.close(format!("prawitz equality {} theta={theta}", map.name()), v, 1.0 / theta, 1e-3);
            }
        }
    }
    let k = prawitz_integral(MapSample::Koebe, 0.5, quad)?;
    let kr = prawitz_integral(MapSample::RotatedKoebe(2.0), 0.5, quad)?;
    rep.close("prawitz rotation invariance".into(), kr, k, 1e-6);

    for theta in [0.5, 0.75] {
        let p = prawitz_integral(MapSample::Koebe, theta, quad)?;
        let t = two_var_check(MapSample::Koebe, c(0.0), theta, quad)?;
        rep.close(format!("two-var at w=0 vs prawitz theta={theta}"), t, p, 1e-6);
    }
    let w = Complex64::new(0.3, 0.0);
    let idv = two_var_check(MapSample::Identity, w, 0.5, quad)?;
    rep.close("two-var identity closed form".into(), idv, two_var_identity_closed(w, 0.5, &ctl)?, 1e-4);
    let kv = two_var_check(MapSample::Koebe, w, 0.5, quad)?;
    rep.close("two-var koebe equality w=0.3".into(), kv, two_var_rhs(w, 0.5), 1e-3);
    let w2 = Complex64::new(-0.2, 0.4);
    let rv = two_var_check(MapSample::RotatedKoebe(0.7), w2, 0.75, quad)?;
    rep.below("two-var rotated koebe bound".into(), rv, two_var_rhs(w2, 0.75), 1e-3);

    rep.close("sigma (0,0)".into(), sigma_numeric(0.0, 0.0, quad)?, 1.0, 1e-10);
    rep.close("sigma (0.5,0.25)".into(), sigma_numeric(0.5, 0.25, quad)?, 1.0 / sigma(0.5, 0.25)?, 1e-4);
    rep.close("sigma (0,-0.5)".into(), sigma_numeric(0.0, -0.5, quad)?, 1.0 / sigma(0.0, -0.5)?, 1e-3);

    let mut worst_mono = f64::INFINITY;
    for theta in [0.1, 0.3, 0.5, 0.9] {
        let mut prev = f64::INFINITY;
        for i in 0..=20 {
            let x = 0.049 * i as f64;
            let v = hyp2f1(1.0 - theta, -theta, 1.0, x, &ctl)?;
            worst_mono = worst_mono.min(prev - v);
            prev = v;
        }
    }
    rep.checks.push(OracleCheck {
        name: "2F1(1-t,-t;1;x) nonincreasing".into(),
        value: worst_mono,
        reference: 0.0,
        gap: worst_mono,
        tol: 0.0,
        pass: worst_mono >= 0.0,
    });

    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let (mut min_gap, mut worst_rel) = (f64::INFINITY, 0.0f64);
    for _ in 0..1000 {
        let len = rng.gen_range(1..24);
        let co: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let alpha = rng.gen_range(-0.9..3.0);
        let n = rng.gen_range(1..4);
        let g = asympt_gap(&co, alpha, n)?;
        let d = asympt_gap_direct(&co, alpha, n)?;
        min_gap = min_gap.min(g);
        worst_rel = worst_rel.max((g - d).abs() / g.abs().max(d.abs()).max(1e-300));
    }
    rep.checks.push(OracleCheck {
        name: "asympt_gap >= 0 (1000 random)".into(),
        value: min_gap,
        reference: 0.0,
        gap: min_gap,
        tol: 0.0,
        pass: min_gap >= 0.0,
    });
    rep.close("asympt_gap closed vs direct (rel)".into(), worst_rel, 0.0, 1e-12);

    for &(alpha, theta) in &[(0.5, 0.5), (1.0, 0.5), (2.0, 0.25), (1.9, 0.9)] {
        let s = kappa(alpha, theta, &ctl, KappaMethod::Series)?;
        let h = kappa(alpha, theta, &ctl, KappaMethod::Hyp4F3)?;
        rep.close(format!("kappa series vs 4F3 ({alpha},{theta})"), s, h, 1e-10);
    }
    for theta in [0.2, 0.5, 0.8] {
        let a = hyp2f1_at_1(1.0 - theta, -theta, 1.0, &ctl)?;
        let b = hyp2f1_series_at_1(1.0 - theta, -theta, 1.0, &ctl)?.value;
        rep.close(format!("2F1(1-t,-t;1;1) closed vs series t={theta}"), b, a, 1e-10);
    }
    let mut worst_kr = 0.0f64;
    for big_n in 0..=6 {
        for n in 0..=big_n {
            let v = kronecker_sum(n, big_n, 0.7, 0.3);
            worst_kr = worst_kr.max((v - if n == big_n { 1.0 } else { 0.0 }).abs());
        }
    }
    rep.close("Kronecker sums".into(), worst_kr, 0.0, 1e-12);
    let mut worst_a = 0.0f64;
    for &(theta, t, beta) in &[(0.5, -1.0, 0.5), (0.8, -2.0, 1.3), (0.9, 1.0, 2.1)] {
        let tau = c(t);
        let p = A_coefficients(theta, tau, beta, 2, &ctl)?;
        if let Some([a1, a2]) = derived_a12(theta, tau, beta, &ctl)? {
            worst_a = worst_a.max((a1 - p.a1).norm()).max((a2 - p.a2).norm());
        }
    }
    rep.close("row-derived A1,A2 vs closed form".into(), worst_a, 0.0, 1e-12);
    Ok(rep)
}
