//! Coefficients of the main inequality and the A-functions consumed by the
//! criteria.
//!
//! Throughout, α = β + 2θ − 1 and g = (φ′)^{τ/2}, λ = τ/2. Every row of the
//! inequality is a φ-form of degree N+1 multiplying g. Rows are assembled
//! from Ω (derivatives of g) and Φ_{k,θ}, then rewritten in a basis of
//! {g^{(N+1)}, …} whose norms compare to ‖g‖ with known constants.

use crate::error::{domain, Error, Result};
use crate::phiforms::{omega_form, phi_k_form, Monomial, NumericForm, PhiForm};
use std::sync::OnceLock;
use crate::specfun::{gamma_ratio, pochhammer, K_bound, SeriesControl};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Equality of the one-term condition within this tolerance counts as a boundary pass.
pub const BOUNDARY_TOL: f64 = 1e-12;

fn check_range(alpha: f64, theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta <= 1.0) {
        return domain(format!("theta must lie in (0,1], got {theta}"));
    }
    if !(alpha > 2.0 * theta - 1.0) {
        return domain(format!("need alpha > 2 theta - 1, got alpha={alpha}, theta={theta}"));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |p, i| p * i as f64)
}

/// b_N = (−1)^{N+1}(1−θ)_{N+1} / ((N+1)! (α−2θ+N+2)_{N+1}).
pub fn b_coeff(n: usize, alpha: f64, theta: f64) -> Result<f64> {
    check_range(alpha, theta)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * pochhammer(1.0 - theta, n + 1)?
        / (factorial(n + 1) * pochhammer(alpha - 2.0 * theta + n as f64 + 2.0, n + 1)?))
}

/// a_{k,N} = ((−1)^{N−k}/(k!(N−k)!)) (−θ+k+2)_{N−k} / (α−2θ+N+k+3)_{N−k}.
pub fn a_coeff(k: usize, n: usize, alpha: f64, theta: f64) -> Result<f64> {
    check_range(alpha, theta)?;
    if k > n {
        return domain(format!("a_coeff needs k <= N, got k={k}, N={n}"));
    }
    Ok(a_coeff_general(k, n, alpha, -theta))
}

/// a_{k,N} with −θ replaced by a free parameter b (the form in which the
/// Kronecker identity is stated).
pub fn a_coeff_general(k: usize, n: usize, alpha: f64, b: f64) -> f64 {
    let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
    let m = n - k;
    let num: f64 = (0..m).map(|i| b + k as f64 + 2.0 + i as f64).product();
    let den: f64 = (0..m).map(|i| alpha + 2.0 * b + (n + k) as f64 + 3.0 + i as f64).product();
    sign / (factorial(k) * factorial(m)) * num / den
}

/// Σ_{k=n}^{N} a_{k,N} n! C(k,n) (b+n+2)_{k−n} / (α+2b+2n+4)_{k−n}; equals δ_{n,N}.
pub fn kronecker_sum(n: usize, big_n: usize, alpha: f64, b: f64) -> f64 {
    (n..=big_n)
        .map(|k| {
            let binom = factorial(k) / (factorial(n) * factorial(k - n));
            let num: f64 = (0..k - n).map(|i| b + n as f64 + 2.0 + i as f64).product();
            let den: f64 = (0..k - n).map(|i| alpha + 2.0 * b + 2.0 * n as f64 + 4.0 + i as f64).product();
            a_coeff_general(k, big_n, alpha, b) * factorial(n) * binom * num / den
        })
        .sum()
}

/// 1/σ(α, N−θ) with α = β+2θ−1, in Gamma form.
pub fn row_weight(n: usize, beta: f64, theta: f64) -> Result<f64> {
    let nn = n as f64;
    Ok(gamma_ratio(
        &[beta + 2.0 * theta + 1.0, beta + 2.0 * nn + 2.0],
        &[beta + theta + nn + 1.0, beta + theta + nn + 2.0],
    )? / (nn + 1.0 - theta))
}

fn check_tau(tau: Complex64) -> Result<()> {
    if tau.norm() == 0.0 || !tau.re.is_finite() || !tau.im.is_finite() {
        return domain("tau must be finite and nonzero");
    }
    Ok(())
}

/// (1−θ)(β+1)(β+2)|1/(β+1) − 1/τ|² Γ(β+2θ+1)Γ(β+2)/(Γ(β+θ+1)Γ(β+θ+2)).
pub fn one_term_rhs(tau: Complex64, beta: f64, theta: f64) -> Result<f64> {
    check_tau(tau)?;
    if !(beta > 0.0) {
        return domain(format!("beta must be positive, got {beta}"));
    }
    if theta == 1.0 {
        return Ok(0.0);
    }
    let d = (Complex64::new(1.0 / (beta + 1.0), 0.0) - 1.0 / tau).norm_sqr();
    Ok((1.0 - theta)
        * (beta + 1.0)
        * (beta + 2.0)
        * d
        * gamma_ratio(&[beta + 2.0 * theta + 1.0, beta + 2.0], &[beta + theta + 1.0, beta + theta + 2.0])?)
}

/// RHS − LHS of the one-term condition; positive means it holds at θ.
pub fn one_term_margin(tau: Complex64, beta: f64, theta: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return domain(format!("one-term margin needs theta in (0,1), got {theta}"));
    }
    Ok(one_term_rhs(tau, beta, theta)? - K_bound(beta, theta, ctl)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OneTermVerdict {
    Holds,
    Boundary,
    Fails,
}

pub fn one_term_verdict(margin: f64) -> OneTermVerdict {
    if margin > BOUNDARY_TOL {
        OneTermVerdict::Holds
    } else if margin >= -BOUNDARY_TOL {
        OneTermVerdict::Boundary
    } else {
        OneTermVerdict::Fails
    }
}

/// N-th row of the main inequality at fixed (θ, τ, β).
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityRow {
    pub n: usize,
    pub weight: f64,
    pub b: f64,
    pub a: Vec<f64>,
    pub phi_terms: Vec<NumericForm>,
    /// The row as a φ-form multiplying g.
    pub form: NumericForm,
}

/// D f = f′ + λ(φ″/φ′) f, i.e. ∂[f g] = (D f) g.
fn d_op(f: &NumericForm, lambda: Complex64) -> NumericForm {
    f.differentiate().add(&f.mul_monomial(&Monomial::p()).scale(lambda))
}

const CACHED_ORDERS: usize = 8;

/// Exact Φ_k (phi = true) or Ω_k forms; small orders are built once.
fn cached(k: usize, phi: bool) -> Result<std::borrow::Cow<'static, PhiForm>> {
    static PHI: OnceLock<Vec<PhiForm>> = OnceLock::new();
    static OMEGA: OnceLock<Vec<PhiForm>> = OnceLock::new();
    if k >= CACHED_ORDERS {
        let f = if phi { phi_k_form(k as u32)? } else { omega_form(k as u32)? };
        return Ok(std::borrow::Cow::Owned(f));
    }
    let table = if phi {
        PHI.get_or_init(|| (0..CACHED_ORDERS as u32).map(|k| phi_k_form(k).expect("small order")).collect())
    } else {
        OMEGA.get_or_init(|| {
            std::iter::once(PhiForm::zero())
                .chain((1..CACHED_ORDERS as u32).map(|k| omega_form(k).expect("small order")))
                .collect()
        })
    };
    if !phi && k == 0 {
        return domain("omega form needs k >= 1");
    }
    Ok(std::borrow::Cow::Borrowed(&table[k]))
}

pub fn assemble_row(n: usize, theta: f64, tau: Complex64, beta: f64) -> Result<InequalityRow> {
    check_tau(tau)?;
    if !(beta > 0.0) {
        return domain(format!("beta must be positive, got {beta}"));
    }
    let alpha = beta + 2.0 * theta - 1.0;
    let lambda = tau / 2.0;
    let th = Complex64::new(theta, 0.0);
    let b = b_coeff(n, alpha, theta)?;
    let a: Vec<f64> = (0..=n).map(|k| a_coeff(k, n, alpha, theta)).collect::<Result<_>>()?;
    let phi_terms: Vec<NumericForm> = (0..=n)
        .map(|k| Ok(cached(k, true)?.evaluate(th)))
        .collect::<Result<_>>()?;
    let mut form = cached(n + 1, false)?.evaluate(lambda).scale(Complex64::new(b, 0.0));
    for (k, phi) in phi_terms.iter().enumerate() {
        let mut t = phi.clone();
        for _ in 0..(n - k) {
            t = d_op(&t, lambda);
        }
        form = form.add(&t.scale(Complex64::new(a[k], 0.0)));
    }
    Ok(InequalityRow {
        n,
        weight: row_weight(n, beta, theta)?,
        b,
        a,
        phi_terms,
        form,
    })
}

fn mono(o: &[u32]) -> Monomial {
    Monomial::new(o).expect("static monomial")
}

/// Coordinates of row 1 in the basis {g″, (φ″/φ′)² g}.
pub fn solve_row1(row: &NumericForm, lambda: Complex64) -> Result<[Complex64; 2]> {
    if lambda.norm() == 0.0 {
        return Err(Error::SingularBasis("lambda = 0".into()));
    }
    let c2 = row.coeff(&mono(&[2]));
    let c11 = row.coeff(&mono(&[1, 1]));
    let r1 = c2 / lambda;
    let r2 = c11 - r1 * lambda * (lambda - 1.0);
    Ok([r1, r2])
}

/// Coordinates of row 2 in the basis {g‴, ∂[(φ″/φ′)² g], (φ″/φ′)³ g}.
/// In monomial coordinates [(3), (1,2), (1,1,1)] these are
/// (λ, 3λ(λ−1), λ(λ−1)(λ−2)), (0, 2, λ−2), (0, 0, 1); the determinant is 2λ.
pub fn solve_row2(row: &NumericForm, lambda: Complex64) -> Result<[Complex64; 3]> {
    if lambda.norm() == 0.0 {
        return Err(Error::SingularBasis("lambda = 0".into()));
    }
    let c3 = row.coeff(&mono(&[3]));
    let c12 = row.coeff(&mono(&[1, 2]));
    let c111 = row.coeff(&mono(&[1, 1, 1]));
    let r3 = c3 / lambda;
    let r4 = (c12 - r3 * 3.0 * lambda * (lambda - 1.0)) / 2.0;
    let r5 = c111 - r3 * lambda * (lambda - 1.0) * (lambda - 2.0) - r4 * (lambda - 2.0);
    Ok([r3, r4, r5])
}

/// A-values at one θ. `positive` is false when K − M ≤ 0, in which case no
/// values are returned and the one-term criterion applies instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ACoefficients {
    pub theta: f64,
    pub positive: bool,
    /// K(β,θ) − M(θ)
    pub denominator: f64,
    pub a1: Complex64,
    pub a2: Complex64,
    pub a3: Option<Complex64>,
    pub a4: Option<Complex64>,
    pub a5: Option<Complex64>,
}

/// The two-term coefficients in closed form.
pub fn printed_c12(theta: f64, tau: Complex64, beta: f64) -> [Complex64; 2] {
    let one = Complex64::new(1.0, 0.0);
    let c1 = one * (1.0 - theta) / (2.0 * (beta + 2.0) * (beta + 3.0)) - (1.0 - theta) / (tau * (beta + 3.0))
        + 1.0 / (3.0 * tau);
    let c2 = (one - tau / 2.0) / 6.0 - (theta + 1.0) / 8.0;
    [c1, c2]
}

/// W1 = (2−θ)Γ(β+2θ+1)Γ(β+4)/(Γ(β+θ+2)Γ(β+θ+3)).
pub fn w1(beta: f64, theta: f64) -> Result<f64> {
    Ok((2.0 - theta)
        * gamma_ratio(&[beta + 2.0 * theta + 1.0, beta + 4.0], &[beta + theta + 2.0, beta + theta + 3.0])?)
}

#[allow(non_snake_case)]
pub fn A_coefficients(
    theta: f64,
    tau: Complex64,
    beta: f64,
    order: usize,
    ctl: &SeriesControl,
) -> Result<ACoefficients> {
    if order != 2 && order != 3 {
        return domain(format!("order must be 2 or 3, got {order}"));
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return domain(format!("theta must lie in (0,1], got {theta}"));
    }
    let k = K_bound(beta, theta, ctl)?;
    let m = one_term_rhs(tau, beta, theta)?;
    let den = k - m;
    let zero = Complex64::new(0.0, 0.0);
    if den <= 0.0 {
        return Ok(ACoefficients {
            theta,
            positive: false,
            denominator: den,
            a1: zero,
            a2: zero,
            a3: None,
            a4: None,
            a5: None,
        });
    }
    let s = (w1(beta, theta)? / den).sqrt();
    let [c1, c2] = printed_c12(theta, tau, beta);
    let mut out = ACoefficients {
        theta,
        positive: true,
        denominator: den,
        a1: c1 * s,
        a2: c2 * s,
        a3: None,
        a4: None,
        a5: None,
    };
    if order == 3 {
        let row = assemble_row(2, theta, tau, beta)?;
        let r = solve_row2(&row.form, tau / 2.0)?;
        let s3 = (row.weight * (beta + 5.0) * (beta + 6.0) / den).sqrt();
        out.a3 = Some(r[0] * s3);
        out.a4 = Some(r[1] * s3);
        out.a5 = Some(r[2] * s3);
    }
    Ok(out)
}

/// A₁, A₂ through the generic row pipeline (row 1, basis solve, weight).
pub fn derived_a12(theta: f64, tau: Complex64, beta: f64, ctl: &SeriesControl) -> Result<Option<[Complex64; 2]>> {
    let den = K_bound(beta, theta, ctl)? - one_term_rhs(tau, beta, theta)?;
    if den <= 0.0 {
        return Ok(None);
    }
    let row = assemble_row(1, theta, tau, beta)?;
    let r = solve_row1(&row.form, tau / 2.0)?;
    let s = (row.weight / den).sqrt();
    Ok(Some([r[0] * s, r[1] * s]))
}

/// M(θ) through the generic row pipeline: w₀ (β+1)(β+2) |r/λ|² for row 0 = r·(φ″/φ′).
pub fn derived_m(theta: f64, tau: Complex64, beta: f64) -> Result<f64> {
    let row = assemble_row(0, theta, tau, beta)?;
    let r = row.form.coeff(&Monomial::p());
    Ok(row.weight * (beta + 1.0) * (beta + 2.0) * (r / (tau / 2.0)).norm_sqr())
}
