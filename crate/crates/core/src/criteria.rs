//! Per-θ convex regions and emptiness of their intersection over θ ∈ [θ₀, 1].
//!
//! Intervals are decided by comparing inf α₂ with sup α₁ (one-dimensional
//! Helly: a disjoint pair is the witness). Disks and ellipses are decided by
//! minimizing the convex function F = max_θ q_θ over the plane; a positive
//! minimum is then certified on a triplet of θ values.

use crate::coeffs::{one_term_verdict, A_coefficients, OneTermVerdict};
use crate::error::{domain, Result};
use crate::specfun::SeriesControl;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    I,
    J,
    D,
    E,
}

/// θ-grid on [θ₀, 1] and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub refine_tol: f64,
    pub margin_guard: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n: 256,
            refine_tol: 1e-6,
            margin_guard: 1e-9,
        }
    }
}

impl GridSpec {
    pub fn thetas(&self, theta0: f64) -> Vec<f64> {
        if self.n <= 1 {
            return vec![1.0];
        }
        (0..self.n)
            .map(|i| {
                if i == self.n - 1 {
                    1.0
                } else {
                    theta0 + (1.0 - theta0) * i as f64 / (self.n - 1) as f64
                }
            })
            .collect()
    }
}

/// Quadratic data of one ellipse: (A₁−xA₂)² + (A₃−xA₄−yA₅)² ≤ r².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseData {
    pub a: [f64; 5],
    pub r: f64,
}

impl EllipseData {
    pub fn q(&self, x: f64, y: f64) -> f64 {
        let [a1, a2, a3, a4, a5] = self.a;
        (a1 - x * a2).powi(2) + (a3 - x * a4 - y * a5).powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Interval { lo: f64, hi: f64 },
    WholeLine,
    Empty,
    Disk { center: Complex64, radius: f64 },
    WholePlane,
    Ellipse(EllipseData),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexWitness {
    pub theta: f64,
    pub region: Region,
}

/// Outcome of building a region at one θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RegionResult {
    Region(ConvexWitness),
    /// The denominator K − M is not positive: the one-term condition holds at θ.
    OneTermFallback { theta: f64, margin: f64 },
}

pub fn radius_i(beta: f64) -> f64 {
    1.0 / ((beta + 1.0) * (beta + 2.0) * (beta + 3.0) * (beta + 4.0)).sqrt()
}

pub fn radius_j(t: f64, beta: f64) -> f64 {
    t * t / (4.0 * (beta + 1.0) * (beta * (beta + 4.0)).sqrt())
}

/// Solve |c − x·l| ≤ r.
pub fn linear_interval(c: f64, l: f64, r: f64) -> Region {
    if l == 0.0 {
        return if c.abs() <= r { Region::WholeLine } else { Region::Empty };
    }
    let (e1, e2) = ((c - r) / l, (c + r) / l);
    Region::Interval {
        lo: e1.min(e2),
        hi: e1.max(e2),
    }
}

pub fn region_for(theta: f64, tau: Complex64, beta: f64, mode: Mode, ctl: &SeriesControl) -> Result<RegionResult> {
    if matches!(mode, Mode::I | Mode::J | Mode::E) && tau.im != 0.0 {
        return domain(format!("mode {mode:?} needs real tau"));
    }
    let order = if mode == Mode::E { 3 } else { 2 };
    let a = A_coefficients(theta, tau, beta, order, ctl)?;
    if !a.positive {
        return Ok(RegionResult::OneTermFallback {
            theta,
            margin: -a.denominator,
        });
    }
    let region = match mode {
        Mode::I => linear_interval(a.a1.re, a.a2.re, radius_i(beta)),
        Mode::J => linear_interval(a.a2.re, a.a1.re, radius_j(tau.re, beta)),
        Mode::D => {
            let r = radius_i(beta);
            if a.a2.norm() == 0.0 {
                if a.a1.norm() <= r {
                    Region::WholePlane
                } else {
                    Region::Empty
                }
            } else {
                Region::Disk {
                    center: a.a1 / a.a2,
                    radius: r / a.a2.norm(),
                }
            }
        }
        Mode::E => Region::Ellipse(EllipseData {
            a: [
                a.a1.re,
                a.a2.re,
                a.a3.unwrap().re,
                a.a4.unwrap().re,
                a.a5.unwrap().re,
            ],
            r: radius_i(beta),
        }),
    };
    Ok(RegionResult::Region(ConvexWitness { theta, region }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Empty,
    Nonempty,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    /// α₁(θ_sup) > α₂(θ_inf): two disjoint intervals.
    IntervalPair {
        theta_sup: f64,
        theta_inf: f64,
        sup_alpha1: f64,
        inf_alpha2: f64,
    },
    /// A single region is already empty.
    SingleEmpty { theta: f64 },
    /// K − M ≤ 0 at θ, so the one-term criterion applies there.
    OneTermFallback { theta: f64, margin: f64, boundary: bool },
    /// Three regions with empty common part.
    Triplet { thetas: [f64; 3], margin: f64 },
    CommonPoint { x: f64, y: f64 },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmptinessEvidence {
    pub mode: Mode,
    pub verdict: Verdict,
    pub witness: Witness,
    /// Regions named by the witness.
    pub family: Vec<ConvexWitness>,
    /// Positive amount by which the family misses a common point; for
    /// intervals sup α₁ − inf α₂, for disks the radius enlargement needed,
    /// for ellipses min max q − r².
    pub margin: f64,
}

impl EmptinessEvidence {
    fn new(mode: Mode, verdict: Verdict, witness: Witness, family: Vec<ConvexWitness>, margin: f64) -> Self {
        EmptinessEvidence {
            mode,
            verdict,
            witness,
            family,
            margin,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.verdict == Verdict::Empty
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Minimize a unimodal function on [a, b]; returns (argmin, min).
pub fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let (mut xb, mut fb) = if fc <= fd { (c, fc) } else { (d, fd) };
    for x in [a, b] {
        let fx = f(x);
        if fx < fb {
            xb = x;
            fb = fx;
        }
    }
    (xb, fb)
}

fn lower_end(r: &Region) -> f64 {
    match r {
        Region::Interval { lo, .. } => *lo,
        Region::Empty => f64::INFINITY,
        _ => f64::NEG_INFINITY,
    }
}

fn upper_end(r: &Region) -> f64 {
    match r {
        Region::Interval { hi, .. } => *hi,
        Region::Empty => f64::NEG_INFINITY,
        _ => f64::INFINITY,
    }
}

fn fallback_evidence(mode: Mode, theta: f64, margin: f64) -> Option<EmptinessEvidence> {
    match one_term_verdict(margin) {
        OneTermVerdict::Fails => None,
        v => Some(EmptinessEvidence::new(
            mode,
            Verdict::Empty,
            Witness::OneTermFallback {
                theta,
                margin,
                boundary: v == OneTermVerdict::Boundary,
            },
            vec![],
            margin,
        )),
    }
}

fn evaluate_family(
    thetas: &[f64],
    tau: Complex64,
    beta: f64,
    mode: Mode,
    ctl: &SeriesControl,
) -> Result<std::result::Result<Vec<ConvexWitness>, EmptinessEvidence>> {
    let results: Vec<Result<RegionResult>> = thetas
        .iter()
        .map(|&th| region_for(th, tau, beta, mode, ctl))
        .collect();
    let mut regions = Vec::with_capacity(thetas.len());
    for r in results {
        match r? {
            RegionResult::OneTermFallback { theta, margin } => {
                if let Some(ev) = fallback_evidence(mode, theta, margin) {
                    return Ok(Err(ev));
                }
            }
            RegionResult::Region(w) => {
                if w.region == Region::Empty {
                    return Ok(Err(EmptinessEvidence::new(
                        mode,
                        Verdict::Empty,
                        Witness::SingleEmpty { theta: w.theta },
                        vec![w],
                        f64::INFINITY,
                    )));
                }
                regions.push(w);
            }
        }
    }
    Ok(Ok(regions))
}

/// Decide whether the regions over θ ∈ [θ₀, 1] have empty intersection.
/// For mode E the interval projection is tried first, so the evidence may
/// carry mode I.
pub fn family_empty(
    tau: Complex64,
    beta: f64,
    theta0: f64,
    mode: Mode,
    grid: &GridSpec,
    ctl: &SeriesControl,
) -> Result<EmptinessEvidence> {
    if !(theta0 > 0.0 && theta0 <= 1.0) {
        return domain(format!("theta0 must lie in (0,1], got {theta0}"));
    }
    let thetas = grid.thetas(theta0);
    match mode {
        Mode::I | Mode::J => interval_family(&thetas, tau, beta, theta0, mode, grid, ctl),
        Mode::D => disk_family(&thetas, tau, beta, mode, grid, ctl),
        Mode::E => ellipse_family(&thetas, tau, beta, theta0, grid, ctl),
    }
}

fn interval_family(
    thetas: &[f64],
    tau: Complex64,
    beta: f64,
    theta0: f64,
    mode: Mode,
    grid: &GridSpec,
    ctl: &SeriesControl,
) -> Result<EmptinessEvidence> {
    let regions = match evaluate_family(thetas, tau, beta, mode, ctl)? {
        Ok(r) => r,
        Err(ev) => return Ok(ev),
    };
    let mut sup = (f64::NEG_INFINITY, None::<usize>);
    let mut inf = (f64::INFINITY, None::<usize>);
    for (i, w) in regions.iter().enumerate() {
        let l = lower_end(&w.region);
        let u = upper_end(&w.region);
        if l > sup.0 {
            sup = (l, Some(i));
        }
        if u < inf.0 {
            inf = (u, Some(i));
        }
    }
    let (Some(is), Some(ii)) = (sup.1, inf.1) else {
        return Ok(EmptinessEvidence::new(
            mode,
            Verdict::Nonempty,
            Witness::CommonPoint { x: 0.0, y: 0.0 },
            vec![],
            f64::NEG_INFINITY,
        ));
    };
    // refine around the extremizers; a probe that is not an interval ends the search
    let probe = |th: f64| -> Result<RegionResult> { region_for(th, tau, beta, mode, ctl) };
    let bracket = |i: usize| -> (f64, f64) {
        let w = &regions[i];
        let k = thetas.iter().position(|&t| t == w.theta).unwrap_or(0);
        let a = if k == 0 { theta0 } else { thetas[k - 1] };
        let b = if k + 1 >= thetas.len() { 1.0 } else { thetas[k + 1] };
        (a, b)
    };
    let mut special: Option<EmptinessEvidence> = None;
    let mut refine = |i: usize, upper: bool, best: (f64, f64)| -> Result<(f64, f64)> {
        let (a, b) = bracket(i);
        let mut err = None;
        let (th, v) = golden_min(
            |th| match probe(th) {
                Ok(RegionResult::Region(w)) => {
                    if upper {
                        upper_end(&w.region)
                    } else {
                        -lower_end(&w.region)
                    }
                }
                Ok(RegionResult::OneTermFallback { .. }) => f64::NEG_INFINITY,
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            },
            a,
            b,
            grid.refine_tol,
        );
        if let Some(e) = err {
            return Err(e);
        }
        let v = if upper { v } else { -v };
        let better = if upper { v < best.1 } else { v > best.1 };
        if better {
            if !v.is_finite() {
                // the probe hit an empty region or a one-term point
                match probe(th)? {
                    RegionResult::OneTermFallback { theta, margin } => {
                        if special.is_none() {
                            special = fallback_evidence(mode, theta, margin);
                        }
                    }
                    RegionResult::Region(w) if w.region == Region::Empty => {
                        special = Some(EmptinessEvidence::new(
                            mode,
                            Verdict::Empty,
                            Witness::SingleEmpty { theta: w.theta },
                            vec![w],
                            f64::INFINITY,
                        ));
                    }
                    _ => {}
                }
                return Ok(best);
            }
            Ok((th, v))
        } else {
            Ok(best)
        }
    };
    let (th_sup, sup_v) = refine(is, false, (regions[is].theta, sup.0))?;
    let (th_inf, inf_v) = refine(ii, true, (regions[ii].theta, inf.0))?;
    if let Some(ev) = special {
        return Ok(ev);
    }
    let margin = sup_v - inf_v;
    let pick = |th: f64| -> Result<ConvexWitness> {
        match probe(th)? {
            RegionResult::Region(w) => Ok(w),
            RegionResult::OneTermFallback { .. } => unreachable!("checked above"),
        }
    };
    if margin > grid.margin_guard {
        let family = vec![pick(th_sup)?, pick(th_inf)?];
        Ok(EmptinessEvidence::new(
            mode,
            Verdict::Empty,
            Witness::IntervalPair {
                theta_sup: th_sup,
                theta_inf: th_inf,
                sup_alpha1: sup_v,
                inf_alpha2: inf_v,
            },
            family,
            margin,
        ))
    } else if margin <= 0.0 {
        let x = if sup_v.is_finite() && inf_v.is_finite() {
            0.5 * (sup_v + inf_v)
        } else if sup_v.is_finite() {
            sup_v
        } else if inf_v.is_finite() {
            inf_v
        } else {
            0.0
        };
        Ok(EmptinessEvidence::new(mode, Verdict::Nonempty, Witness::CommonPoint { x, y: 0.0 }, vec![], margin))
    } else {
        Ok(EmptinessEvidence::new(mode, Verdict::Inconclusive, Witness::None, vec![], margin))
    }
}

/// Convex functions of (x, y) whose pointwise maximum is minimized.
trait PlaneFamily {
    fn len(&self) -> usize;
    fn eval(&self, i: usize, x: f64, y: f64) -> f64;
    /// A box that contains every minimizer of the maximum.
    fn x_bracket(&self) -> (f64, f64);
    fn y_bracket(&self, x: f64) -> (f64, f64);

    fn max_at(&self, x: f64, y: f64) -> f64 {
        (0..self.len()).map(|i| self.eval(i, x, y)).fold(f64::NEG_INFINITY, f64::max)
    }

    fn minimize(&self) -> (f64, f64, f64) {
        let (xa, xb) = self.x_bracket();
        let inner = |x: f64| -> (f64, f64) {
            let (ya, yb) = self.y_bracket(x);
            let tol = 1e-13 * (1.0 + ya.abs().max(yb.abs()));
            golden_min(|y| self.max_at(x, y), ya, yb, tol)
        };
        let tol = 1e-13 * (1.0 + xa.abs().max(xb.abs()));
        let (x, v) = golden_min(|x| inner(x).1, xa, xb, tol);
        let (y, _) = inner(x);
        (x, y, v)
    }
}

struct Disks<'a>(&'a [(Complex64, f64)]);

impl PlaneFamily for Disks<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }
    fn eval(&self, i: usize, x: f64, y: f64) -> f64 {
        let (c, r) = self.0[i];
        (Complex64::new(x, y) - c).norm() - r
    }
    fn x_bracket(&self) -> (f64, f64) {
        let (c, h) = self.anchor();
        (c.re - h, c.re + h)
    }
    fn y_bracket(&self, _x: f64) -> (f64, f64) {
        let (c, h) = self.anchor();
        (c.im - h, c.im + h)
    }
}

impl Disks<'_> {
    /// Minimizers lie within r_k + F(c_k) of c_k.
    fn anchor(&self) -> (Complex64, f64) {
        let mut best = (Complex64::new(0.0, 0.0), f64::INFINITY);
        for &(c, r) in self.0 {
            let h = r + self.max_at(c.re, c.im);
            if h < best.1 {
                best = (c, h);
            }
        }
        (best.0, best.1.max(1e-300) * (1.0 + 1e-9))
    }
}

struct Ellipses<'a>(&'a [EllipseData]);

impl PlaneFamily for Ellipses<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }
    fn eval(&self, i: usize, x: f64, y: f64) -> f64 {
        self.0[i].q(x, y)
    }
    fn x_bracket(&self) -> (f64, f64) {
        // (A₁ − x A₂)² ≤ F(x₀, y₀) for every minimizer, using the largest |A₂|
        let k = (0..self.0.len())
            .max_by(|&i, &j| self.0[i].a[1].abs().total_cmp(&self.0[j].a[1].abs()))
            .unwrap();
        let e = self.0[k];
        if e.a[1] == 0.0 {
            return (-1.0, 1.0);
        }
        let x0 = e.a[0] / e.a[1];
        let (ya, yb) = self.y_bracket(x0);
        let y0 = 0.5 * (ya + yb);
        let h = self.max_at(x0, y0).sqrt() / e.a[1].abs() * (1.0 + 1e-9) + 1e-300;
        (x0 - h, x0 + h)
    }
    fn y_bracket(&self, x: f64) -> (f64, f64) {
        let k = (0..self.0.len())
            .max_by(|&i, &j| self.0[i].a[4].abs().total_cmp(&self.0[j].a[4].abs()))
            .unwrap();
        let e = self.0[k];
        if e.a[4] == 0.0 {
            return (-1.0, 1.0);
        }
        let y0 = (e.a[2] - x * e.a[3]) / e.a[4];
        let h = self.max_at(x, y0).sqrt() / e.a[4].abs() * (1.0 + 1e-9) + 1e-300;
        (y0 - h, y0 + h)
    }
}

/// Relative tolerance below which a positive minimax value is not trusted.
pub const PLANE_TOL: f64 = 1e-9;

fn circle_intersections(c1: Complex64, r1: f64, c2: Complex64, r2: f64) -> Vec<Complex64> {
    let d = (c2 - c1).norm();
    if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
        return vec![];
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let u = (c2 - c1) / d;
    let p = c1 + u * a;
    let n = Complex64::new(-u.im, u.re);
    vec![p + n * h, p - n * h]
}

fn disks_common_point(d: &[(Complex64, f64)], grow: f64) -> Option<Complex64> {
    let g: Vec<(Complex64, f64)> = d.iter().map(|&(c, r)| (c, r + grow)).collect();
    if g.iter().any(|&(_, r)| r < 0.0) {
        return None;
    }
    let scale = g.iter().map(|&(c, r)| c.norm() + r).fold(1.0, f64::max);
    let inside = |p: Complex64| g.iter().all(|&(c, r)| (p - c).norm() <= r + 1e-12 * scale);
    let mut cands: Vec<Complex64> = g.iter().map(|&(c, _)| c).collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            cands.extend(circle_intersections(g[i].0, g[i].1, g[j].0, g[j].1));
        }
    }
    cands.into_iter().find(|&p| inside(p))
}

/// Result of a triple test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleCertificate {
    pub empty: bool,
    /// Disks: radius enlargement at which the three first meet. Ellipses:
    /// min max q − r². Positive iff empty.
    pub margin: f64,
    pub point: Option<(f64, f64)>,
}

/// Decide whether three disks or three ellipses have a common point.
pub fn triple_region_empty(r1: &ConvexWitness, r2: &ConvexWitness, r3: &ConvexWitness) -> Result<TripleCertificate> {
    let rs = [r1.region, r2.region, r3.region];
    if rs.contains(&Region::Empty) {
        return Ok(TripleCertificate {
            empty: true,
            margin: f64::INFINITY,
            point: None,
        });
    }
    match rs {
        [Region::Disk { .. } | Region::WholePlane, Region::Disk { .. } | Region::WholePlane, Region::Disk { .. } | Region::WholePlane] => {
            let d: Vec<(Complex64, f64)> = rs
                .iter()
                .filter_map(|r| match r {
                    Region::Disk { center, radius } => Some((*center, *radius)),
                    _ => None,
                })
                .collect();
            if let Some(p) = disks_common_point(&d, 0.0) {
                return Ok(TripleCertificate {
                    empty: false,
                    margin: -1.0,
                    point: Some((p.re, p.im)),
                });
            }
            // enlargement needed before a common point appears
            let mut lo = 0.0;
            let mut hi = d.iter().map(|&(c, r)| (c - d[0].0).norm() + r).fold(0.0, f64::max) + 1.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if disks_common_point(&d, mid).is_some() {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-15 * hi {
                    break;
                }
            }
            Ok(TripleCertificate {
                empty: true,
                margin: lo,
                point: None,
            })
        }
        [Region::Ellipse(a), Region::Ellipse(b), Region::Ellipse(c)] => {
            let es = [a, b, c];
            let r2 = es.iter().map(|e| e.r * e.r).fold(f64::INFINITY, f64::min);
            let (x, y, v) = Ellipses(&es).minimize();
            let margin = v - r2;
            Ok(TripleCertificate {
                empty: margin > PLANE_TOL * r2,
                margin,
                point: (margin <= 0.0).then_some((x, y)),
            })
        }
        _ => domain("triple test needs three disks or three ellipses"),
    }
}

fn plane_family_evidence(
    mode: Mode,
    regions: &[ConvexWitness],
    values: &dyn Fn(usize, f64, f64) -> f64,
    minimum: (f64, f64, f64),
    threshold: f64,
) -> Result<EmptinessEvidence> {
    let (x, y, v) = minimum;
    let margin = v - threshold;
    if margin <= 0.0 {
        return Ok(EmptinessEvidence::new(mode, Verdict::Nonempty, Witness::CommonPoint { x, y }, vec![], margin));
    }
    // Helly: some triplet among the most active regions is already empty
    let mut order: Vec<usize> = (0..regions.len()).collect();
    order.sort_by(|&i, &j| values(j, x, y).total_cmp(&values(i, x, y)));
    let top: Vec<usize> = order.into_iter().take(8).collect();
    let mut best: Option<(usize, usize, usize, TripleCertificate)> = None;
    for a in 0..top.len() {
        for b in a..top.len() {
            for c in b..top.len() {
                let (i, j, k) = (top[a], top[b], top[c]);
                let cert = triple_region_empty(&regions[i], &regions[j], &regions[k])?;
                if cert.empty && best.as_ref().is_none_or(|bc| cert.margin > bc.3.margin) {
                    best = Some((i, j, k, cert));
                }
            }
        }
    }
    match best {
        Some((i, j, k, cert)) => Ok(EmptinessEvidence::new(
            mode,
            Verdict::Empty,
            Witness::Triplet {
                thetas: [regions[i].theta, regions[j].theta, regions[k].theta],
                margin: cert.margin,
            },
            vec![regions[i], regions[j], regions[k]],
            cert.margin,
        )),
        None => Ok(EmptinessEvidence::new(mode, Verdict::Inconclusive, Witness::None, vec![], margin)),
    }
}

fn disk_family(
    thetas: &[f64],
    tau: Complex64,
    beta: f64,
    mode: Mode,
    grid: &GridSpec,
    ctl: &SeriesControl,
) -> Result<EmptinessEvidence> {
    match evaluate_family(thetas, tau, beta, mode, ctl)? {
        Ok(regions) => disks_empty(&regions, grid.margin_guard),
        Err(ev) => Ok(ev),
    }
}

fn ellipse_family(
    thetas: &[f64],
    tau: Complex64,
    beta: f64,
    theta0: f64,
    grid: &GridSpec,
    ctl: &SeriesControl,
) -> Result<EmptinessEvidence> {
    // the ellipses project into the intervals of mode I, so an empty
    // interval family already settles the question
    let iv = interval_family(thetas, tau, beta, theta0, Mode::I, grid, ctl)?;
    if iv.is_empty() {
        return Ok(iv);
    }
    match evaluate_family(thetas, tau, beta, Mode::E, ctl)? {
        Ok(regions) => ellipses_empty(&regions, grid.margin_guard),
        Err(ev) => Ok(ev),
    }
}

fn demote_small(mut ev: EmptinessEvidence, floor: f64) -> EmptinessEvidence {
    if ev.verdict == Verdict::Empty && !(ev.margin > floor) {
        ev.verdict = Verdict::Inconclusive;
        ev.witness = Witness::None;
        ev.family.clear();
    }
    ev
}

/// Emptiness of a list of disks (whole-plane entries are ignored). An empty
/// verdict needs a triplet whose margin exceeds `guard`.
pub fn disks_empty(regions: &[ConvexWitness], guard: f64) -> Result<EmptinessEvidence> {
    if let Some(w) = regions.iter().find(|w| w.region == Region::Empty) {
        return Ok(EmptinessEvidence::new(Mode::D, Verdict::Empty, Witness::SingleEmpty { theta: w.theta }, vec![*w], f64::INFINITY));
    }
    let disks: Vec<ConvexWitness> = regions
        .iter()
        .copied()
        .filter(|w| matches!(w.region, Region::Disk { .. }))
        .collect();
    if disks.is_empty() {
        return Ok(EmptinessEvidence::new(Mode::D, Verdict::Nonempty, Witness::CommonPoint { x: 0.0, y: 0.0 }, vec![], -1.0));
    }
    let data: Vec<(Complex64, f64)> = disks
        .iter()
        .map(|w| match w.region {
            Region::Disk { center, radius } => (center, radius),
            _ => unreachable!(),
        })
        .collect();
    let fam = Disks(&data);
    let min = fam.minimize();
    let scale = data.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    let vals = |i: usize, x: f64, y: f64| fam.eval(i, x, y);
    let ev = plane_family_evidence(Mode::D, &disks, &vals, min, 0.0)?;
    Ok(demote_small(ev, guard.max(PLANE_TOL * scale)))
}

/// Emptiness of a list of ellipses, all with the same radius.
pub fn ellipses_empty(regions: &[ConvexWitness], guard: f64) -> Result<EmptinessEvidence> {
    let mut data = Vec::with_capacity(regions.len());
    for w in regions {
        match w.region {
            Region::Ellipse(e) => data.push(e),
            _ => return domain("ellipses_empty needs ellipse regions"),
        }
    }
    if data.is_empty() {
        return Ok(EmptinessEvidence::new(Mode::E, Verdict::Nonempty, Witness::CommonPoint { x: 0.0, y: 0.0 }, vec![], -1.0));
    }
    let r2 = data.iter().map(|e| e.r * e.r).fold(f64::INFINITY, f64::min);
    let fam = Ellipses(&data);
    let min = fam.minimize();
    let vals = |i: usize, x: f64, y: f64| fam.eval(i, x, y);
    let ev = plane_family_evidence(Mode::E, regions, &vals, min, r2)?;
    Ok(demote_small(ev, guard.max(PLANE_TOL * r2)))
}

/// Emptiness decided directly from a list of intervals (1-D Helly).
pub fn intervals_empty(family: &[ConvexWitness]) -> EmptinessEvidence {
    let mut sup = (f64::NEG_INFINITY, 0usize);
    let mut inf = (f64::INFINITY, 0usize);
    for (i, w) in family.iter().enumerate() {
        if w.region == Region::Empty {
            return EmptinessEvidence::new(Mode::I, Verdict::Empty, Witness::SingleEmpty { theta: w.theta }, vec![*w], f64::INFINITY);
        }
        if lower_end(&w.region) > sup.0 {
            sup = (lower_end(&w.region), i);
        }
        if upper_end(&w.region) < inf.0 {
            inf = (upper_end(&w.region), i);
        }
    }
    let margin = sup.0 - inf.0;
    if margin > 0.0 {
        EmptinessEvidence::new(
            Mode::I,
            Verdict::Empty,
            Witness::IntervalPair {
                theta_sup: family[sup.1].theta,
                theta_inf: family[inf.1].theta,
                sup_alpha1: sup.0,
                inf_alpha2: inf.0,
            },
            vec![family[sup.1], family[inf.1]],
            margin,
        )
    } else {
        let x = if sup.0.is_finite() && inf.0.is_finite() {
            0.5 * (sup.0 + inf.0)
        } else {
            0.0
        };
        EmptinessEvidence::new(Mode::I, Verdict::Nonempty, Witness::CommonPoint { x, y: 0.0 }, vec![], margin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(theta: f64, lo: f64, hi: f64) -> ConvexWitness {
        ConvexWitness {
            theta,
            region: Region::Interval { lo, hi },
        }
    }

    fn disk(x: f64, y: f64, r: f64) -> ConvexWitness {
        ConvexWitness {
            theta: 0.5,
            region: Region::Disk {
                center: Complex64::new(x, y),
                radius: r,
            },
        }
    }

    #[test]
    fn linear_interval_cases() {
        assert_eq!(linear_interval(2.0, 0.0, 1.0), Region::Empty);
        assert_eq!(linear_interval(0.5, 0.0, 1.0), Region::WholeLine);
        assert_eq!(linear_interval(1.0, -2.0, 1.0), Region::Interval { lo: -1.0, hi: 0.0 });
    }

    #[test]
    fn interval_families() {
        let e = intervals_empty(&[iv(0.1, 0.0, 1.0), iv(0.2, 2.0, 3.0)]);
        assert_eq!(e.verdict, Verdict::Empty);
        assert!(matches!(e.witness, Witness::IntervalPair { theta_sup, theta_inf, .. } if theta_sup == 0.2 && theta_inf == 0.1));
        let n = intervals_empty(&[iv(0.1, 0.0, 2.0), iv(0.2, 1.0, 3.0)]);
        assert_eq!(n.verdict, Verdict::Nonempty);
        assert_eq!(n.witness, Witness::CommonPoint { x: 1.5, y: 0.0 });
    }

    #[test]
    fn equilateral_disks() {
        let s = 1.8;
        let h = s * 3f64.sqrt() / 2.0;
        let (a, b, c) = (disk(0.0, 0.0, 1.0), disk(s, 0.0, 1.0), disk(s / 2.0, h, 1.0));
        let cert = triple_region_empty(&a, &b, &c).unwrap();
        assert!(cert.empty);
        // circumradius minus radius
        assert!((cert.margin - (s / 3f64.sqrt() - 1.0)).abs() < 1e-12);
        let same = triple_region_empty(&a, &a, &a).unwrap();
        assert!(!same.empty);
        assert_eq!(same.point, Some((0.0, 0.0)));
    }

    #[test]
    fn degenerate_ellipse_is_strip_test() {
        let e = |a1: f64, a2: f64, th: f64| ConvexWitness {
            theta: th,
            region: Region::Ellipse(EllipseData {
                a: [a1, a2, 0.0, 0.0, 0.0],
                r: 1.0,
            }),
        };
        // x-strips [0,2] and [3,5]
        let c = triple_region_empty(&e(1.0, 1.0, 0.1), &e(4.0, 1.0, 0.2), &e(1.0, 1.0, 0.3)).unwrap();
        assert!(c.empty);
        assert!((c.margin - 1.25).abs() < 1e-9, "{}", c.margin);
        let c = triple_region_empty(&e(1.0, 1.0, 0.1), &e(2.5, 1.0, 0.2), &e(1.0, 1.0, 0.3)).unwrap();
        assert!(!c.empty);
    }

    #[test]
    fn golden_finds_vertex() {
        let (x, v) = golden_min(|x| (x - 0.3).abs(), -2.0, 5.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-10 && v < 1e-10);
    }

    #[test]
    fn grid_endpoints() {
        let g = GridSpec { n: 5, ..Default::default() };
        assert_eq!(g.thetas(0.2), vec![0.2, 0.4, 0.6000000000000001, 0.8, 1.0]);
    }
}
