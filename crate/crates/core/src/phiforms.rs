//! Exact algebra of monomial φ-forms.
//!
//! A monomial with orders (j₁ ≤ … ≤ jₙ) stands for Π φ^{(jᵢ+1)} / (φ′)ⁿ.
//! Its degree is Σ jᵢ and its bidegree is n. Coefficients are polynomials
//! in one formal variable (λ or θ) with exact rational coefficients.

use crate::error::{domain, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, i| acc * rat(i, 1))
}

/// Sorted tuple of derivative orders. The empty tuple is the unit form.
/// Ordered by bidegree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    orders: Vec<u32>,
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.orders.len(), &self.orders).cmp(&(o.orders.len(), &o.orders))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Monomial {
    pub fn new(orders: &[u32]) -> Result<Self> {
        if orders.contains(&0) {
            return domain("monomial orders must be positive");
        }
        let mut o = orders.to_vec();
        o.sort_unstable();
        Ok(Monomial { orders: o })
    }

    pub fn unit() -> Self {
        Monomial { orders: vec![] }
    }

    /// φ″/φ′
    pub fn p() -> Self {
        Monomial { orders: vec![1] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn degree(&self) -> u32 {
        self.orders.iter().sum()
    }

    pub fn bidegree(&self) -> usize {
        self.orders.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut o = self.orders.clone();
        o.extend_from_slice(&other.orders);
        o.sort_unstable();
        Monomial { orders: o }
    }

    /// z-derivative as a list of (multiplicity, monomial).
    fn derivative(&self) -> Vec<(i64, Monomial)> {
        let n = self.orders.len();
        if n == 0 {
            return vec![];
        }
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut o = self.orders.clone();
            o[i] += 1;
            o.sort_unstable();
            out.push((1, Monomial { orders: o }));
        }
        out.push((-(n as i64), self.mul(&Monomial::p())));
        out
    }
}

fn primes(j: u32) -> String {
    match j + 1 {
        1 => "φ'".into(),
        2 => "φ''".into(),
        3 => "φ'''".into(),
        m => format!("φ^({m})"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let mut groups: Vec<(u32, usize)> = vec![];
        for &j in &self.orders {
            match groups.last_mut() {
                Some((g, c)) if *g == j => *c += 1,
                _ => groups.push((j, 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|&(j, c)| {
                if c == 1 {
                    format!("{}/φ'", primes(j))
                } else {
                    format!("({}/φ')^{}", primes(j), c)
                }
            })
            .collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            let wrapped: Vec<String> = parts
                .iter()
                .map(|p| if p.starts_with('(') { p.clone() } else { format!("({p})") })
                .collect();
            write!(f, "{}", wrapped.join(""))
        }
    }
}

/// Polynomial with exact rational coefficients in one formal variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = CoeffPoly::default();
        p.add_term(0, c);
        p
    }

    pub fn from_int(c: i64) -> Self {
        CoeffPoly::constant(rat(c, 1))
    }

    /// The formal variable itself.
    pub fn var() -> Self {
        let mut p = CoeffPoly::default();
        p.add_term(1, Rational::one());
        p
    }

    /// c0 + c1·x
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        let mut p = CoeffPoly::default();
        p.add_term(0, c0);
        p.add_term(1, c1);
        p
    }

    fn add_term(&mut self, e: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.coeffs.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = CoeffPoly::default();
        for (e, v) in &self.coeffs {
            p.add_term(*e, v * c);
        }
        p
    }

    /// Rising factorial (x + shift)_n as a polynomial in x.
    pub fn rising(shift: Rational, n: u32) -> Self {
        let mut p = CoeffPoly::from_int(1);
        for i in 0..n {
            p = &p * &CoeffPoly::linear(shift.clone() + rat(i as i64, 1), Rational::one());
        }
        p
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_complex(Complex64::new(x, 0.0)).re
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let top = self.degree().unwrap_or(0);
        for e in (0..=top).rev() {
            acc = acc * x + self.coeff(e).to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let top = self.degree().unwrap_or(0);
        for e in (0..=top).rev() {
            acc = acc * x + self.coeff(e);
        }
        acc
    }

    /// Render with the given variable name, e.g. "1/3 - 1/6θ".
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if a.is_one() && *e > 0 {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}{mono}"));
            }
        }
        s
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, o: &CoeffPoly) -> CoeffPoly {
        let mut p = self.clone();
        for (e, c) in &o.coeffs {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, o: &CoeffPoly) -> CoeffPoly {
        self + &(-o)
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scale(&rat(-1, 1))
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, o: &CoeffPoly) -> CoeffPoly {
        let mut p = CoeffPoly::default();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

/// Linear combination of monomials with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhiForm {
    terms: BTreeMap<Monomial, CoeffPoly>,
}

impl PhiForm {
    pub fn zero() -> Self {
        PhiForm::default()
    }

    pub fn monomial(m: Monomial, c: CoeffPoly) -> Self {
        let mut f = PhiForm::default();
        f.add_term(m, c);
        f
    }

    pub fn add_term(&mut self, m: Monomial, c: CoeffPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CoeffPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &CoeffPoly) -> Self {
        let mut f = PhiForm::default();
        for (m, p) in &self.terms {
            f.add_term(m.clone(), p * c);
        }
        f
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut f = PhiForm::default();
        for (k, p) in &self.terms {
            f.add_term(k.mul(m), p.clone());
        }
        f
    }

    pub fn differentiate(&self) -> Self {
        differentiate_form(self)
    }

    /// Substitute a rational value for the formal variable.
    pub fn specialize(&self, x: &Rational) -> Self {
        let mut f = PhiForm::default();
        for (m, p) in &self.terms {
            f.add_term(m.clone(), CoeffPoly::constant(p.eval_rational(x)));
        }
        f
    }

    pub fn evaluate(&self, x: Complex64) -> NumericForm {
        let mut f = NumericForm::default();
        for (m, p) in &self.terms {
            f.add_term(m.clone(), p.eval_complex(x));
        }
        f
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, p)| {
                let c = p.render(var);
                let simple = p.terms().count() == 1 && p.degree() == Some(0);
                if simple && p.coeff(0).is_one() {
                    format!("{m}")
                } else if simple {
                    format!("{c} {m}")
                } else {
                    format!("({c}) {m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &PhiForm {
    type Output = PhiForm;
    fn add(self, o: &PhiForm) -> PhiForm {
        let mut f = self.clone();
        for (m, p) in &o.terms {
            f.add_term(m.clone(), p.clone());
        }
        f
    }
}

impl Sub for &PhiForm {
    type Output = PhiForm;
    fn sub(self, o: &PhiForm) -> PhiForm {
        let mut f = self.clone();
        for (m, p) in &o.terms {
            f.add_term(m.clone(), -p);
        }
        f
    }
}

impl Mul for &PhiForm {
    type Output = PhiForm;
    fn mul(self, o: &PhiForm) -> PhiForm {
        let mut f = PhiForm::default();
        for (m1, p1) in &self.terms {
            for (m2, p2) in &o.terms {
                f.add_term(m1.mul(m2), p1 * p2);
            }
        }
        f
    }
}

impl fmt::Display for PhiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// Formal z-derivative, using d/dz[φ^{(j+1)}/φ′] = φ^{(j+2)}/φ′ − (φ″/φ′)(φ^{(j+1)}/φ′).
pub fn differentiate_form(f: &PhiForm) -> PhiForm {
    let mut out = PhiForm::default();
    for (m, p) in &f.terms {
        for (mult, dm) in m.derivative() {
            out.add_term(dm, p.scale(&rat(mult, 1)));
        }
    }
    out
}

/// Ordered n-tuples of positive integers summing to k.
pub fn compositions(k: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(k: u32, n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            if k == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if k < n as u32 {
            return;
        }
        for j in 1..=(k - (n as u32 - 1)) {
            prefix.push(j);
            rec(k - j, n - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    rec(k, n, &mut vec![], &mut out);
    out
}

/// Ψ_{k,n}: sum over compositions of k into n parts of Π 1/(jᵢ+1)! times the monomial.
pub fn psi_form(k: u32, n: usize) -> Result<PhiForm> {
    if n < 1 || n as u32 > k {
        return domain(format!("psi_form needs 1 <= n <= k, got k={k}, n={n}"));
    }
    let mut f = PhiForm::default();
    for c in compositions(k, n) {
        let w = c.iter().fold(Rational::one(), |acc, &j| acc / factorial(j + 1));
        f.add_term(Monomial::new(&c)?, CoeffPoly::constant(w));
    }
    Ok(f)
}

/// Ω_{k,λ} by the recursion Ω_{k+1} = Ω_k′ + λ(φ″/φ′)Ω_k, coefficients in λ.
pub fn omega_form(k: u32) -> Result<PhiForm> {
    if k < 1 {
        return domain("omega_form needs k >= 1");
    }
    let mut om = PhiForm::monomial(Monomial::p(), CoeffPoly::var());
    for _ in 1..k {
        let d = differentiate_form(&om);
        let sh = om.mul_monomial(&Monomial::p()).scale(&CoeffPoly::var());
        om = &d + &sh;
    }
    Ok(om)
}

/// Coefficient c(j₁,…,jₙ) of the closed form of Ω, from its defining recursion.
/// The tuple is taken as given (not sorted), so permutation invariance is a
/// property of the recursion and can be tested.
pub fn c_coefficient(orders: &[u32]) -> Result<Rational> {
    if orders.is_empty() || orders[..orders.len() - 1].contains(&0) {
        return domain("c_coefficient needs positive orders (last may be 0)");
    }
    let mut memo = HashMap::new();
    Ok(c_rec(orders, &mut memo))
}

fn c_rec(t: &[u32], memo: &mut HashMap<Vec<u32>, Rational>) -> Rational {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let n = t.len();
    let v = if t == [1] {
        Rational::one()
    } else if t[n - 1] == 0 {
        if n == 1 {
            Rational::zero()
        } else {
            c_rec(&t[..n - 1], memo) / rat(n as i64, 1)
        }
    } else {
        let perms = distinct_permutations(t);
        let mut acc = Rational::zero();
        for p in &perms {
            let mut q = p.clone();
            q[n - 1] -= 1;
            acc += c_rec(&q, memo);
        }
        acc * rat(n as i64, perms.len() as i64)
    };
    memo.insert(t.to_vec(), v.clone());
    v
}

pub fn distinct_permutations(t: &[u32]) -> Vec<Vec<u32>> {
    let mut s = t.to_vec();
    s.sort_unstable();
    let mut out = vec![s.clone()];
    // lexicographic next_permutation
    loop {
        let n = s.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| s[i] < s[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| s[j] > s[i]).unwrap();
        s.swap(i, j);
        s[i + 1..].reverse();
        out.push(s.clone());
    }
    out
}

/// Ω_{k,λ} from the closed form Σₙ (λ−n+1)ₙ Σ_{I(k,n)} c(j) Π φ^{(jᵢ+1)}/(φ′)ⁿ.
pub fn omega_closed_form(k: u32) -> Result<PhiForm> {
    if k < 1 {
        return domain("omega_closed_form needs k >= 1");
    }
    let mut f = PhiForm::default();
    let mut memo = HashMap::new();
    for n in 1..=k as usize {
        let poch = CoeffPoly::rising(rat(1 - n as i64, 1), n as u32);
        for c in compositions(k, n) {
            let cc = c_rec(&c, &mut memo);
            f.add_term(Monomial::new(&c)?, poch.scale(&cc));
        }
    }
    Ok(f)
}

/// Φ_{k,θ} = (k+1−θ) k! Σ_{n=1}^{k+1} (−1)^{n−1}(θ+1)_{n−1}/n! · Ψ_{k+1,n}, coefficients in θ.
pub fn phi_k_form(k: u32) -> Result<PhiForm> {
    let lead = CoeffPoly::linear(rat(k as i64 + 1, 1), rat(-1, 1)).scale(&factorial(k));
    let mut f = PhiForm::default();
    for n in 1..=(k as usize + 1) {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let c = CoeffPoly::rising(Rational::one(), n as u32 - 1)
            .scale(&(rat(sign, 1) / factorial(n as u32)));
        let psi = psi_form(k + 1, n)?;
        f = &f + &psi.scale(&(&c * &lead));
    }
    Ok(f)
}

/// φ-form with numeric complex coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NumericForm {
    terms: BTreeMap<Monomial, Complex64>,
}

impl NumericForm {
    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        *self.terms.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        NumericForm {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, o: &NumericForm) -> Self {
        let mut f = self.clone();
        for (m, v) in &o.terms {
            f.add_term(m.clone(), *v);
        }
        f
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut f = NumericForm::default();
        for (k, v) in &self.terms {
            f.add_term(k.mul(m), *v);
        }
        f
    }

    pub fn differentiate(&self) -> Self {
        let mut f = NumericForm::default();
        for (m, v) in &self.terms {
            for (mult, dm) in m.derivative() {
                f.add_term(dm, v * mult as f64);
            }
        }
        f
    }

    /// Value on a concrete map, given φ^{(j+1)}/φ′ for j = 1, 2, ….
    pub fn eval_at(&self, ratios: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.orders()
                    .iter()
                    .fold(*c, |acc, &j| acc * ratios[j as usize - 1])
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(o: &[u32]) -> Monomial {
        Monomial::new(o).unwrap()
    }

    #[test]
    fn psi_examples() {
        for k in 1..6 {
            let f = psi_form(k, 1).unwrap();
            assert_eq!(f.len(), 1);
            assert_eq!(f.coeff(&mono(&[k])), CoeffPoly::constant(Rational::one() / factorial(k + 1)));
        }
        let f = psi_form(2, 2).unwrap();
        assert_eq!(f.coeff(&mono(&[1, 1])), CoeffPoly::constant(rat(1, 4)));
        let f = psi_form(3, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.coeff(&mono(&[1, 2])), CoeffPoly::constant(rat(1, 6)));
        assert!(psi_form(2, 3).is_err());
        assert!(psi_form(2, 0).is_err());
    }

    #[test]
    fn omega_low_orders() {
        let lam = CoeffPoly::var();
        assert_eq!(omega_form(1).unwrap(), PhiForm::monomial(mono(&[1]), lam.clone()));
        let o3 = omega_form(3).unwrap();
        let l1 = CoeffPoly::linear(rat(-1, 1), rat(1, 1));
        let l2 = CoeffPoly::linear(rat(-2, 1), rat(1, 1));
        assert_eq!(o3.coeff(&mono(&[3])), lam);
        assert_eq!(o3.coeff(&mono(&[1, 2])), (&lam * &l1).scale(&rat(3, 1)));
        assert_eq!(o3.coeff(&mono(&[1, 1, 1])), &(&lam * &l1) * &l2);
        assert_eq!(o3.len(), 3);
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_coefficient(&[1]).unwrap(), rat(1, 1));
        assert_eq!(c_coefficient(&[1, 1]).unwrap(), rat(1, 1));
        assert_eq!(c_coefficient(&[1, 2]).unwrap(), rat(3, 2));
        assert_eq!(c_coefficient(&[2, 1]).unwrap(), rat(3, 2));
    }

    #[test]
    fn omega_closed_form_matches_recursion() {
        for k in 1..=8 {
            assert_eq!(omega_form(k).unwrap(), omega_closed_form(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn phi_k_examples() {
        let th = CoeffPoly::var();
        let one_minus = CoeffPoly::linear(rat(1, 1), rat(-1, 1));
        let p0 = phi_k_form(0).unwrap();
        assert_eq!(p0, PhiForm::monomial(mono(&[1]), one_minus.scale(&rat(1, 2))));
        let two_minus = CoeffPoly::linear(rat(2, 1), rat(-1, 1));
        let p1 = phi_k_form(1).unwrap();
        assert_eq!(p1.coeff(&mono(&[2])), two_minus.scale(&rat(1, 6)));
        let q = CoeffPoly::linear(rat(1, 1), rat(1, 1)).scale(&rat(-1, 8));
        assert_eq!(p1.coeff(&mono(&[1, 1])), &two_minus * &q);
        assert_eq!(p1.len(), 2);
        let _ = th;
        assert!(p0.specialize(&rat(1, 1)).is_zero());
    }

    #[test]
    fn phi_2_expansion() {
        let three_minus = CoeffPoly::linear(rat(3, 1), rat(-1, 1)).scale(&rat(2, 1));
        let a = CoeffPoly::from_int(1);
        let b = CoeffPoly::linear(rat(1, 1), rat(1, 1)).scale(&rat(-1, 2));
        let c = CoeffPoly::rising(rat(1, 1), 2).scale(&rat(1, 6));
        let want = &(&psi_form(3, 1).unwrap().scale(&a) + &psi_form(3, 2).unwrap().scale(&b))
            + &psi_form(3, 3).unwrap().scale(&c);
        assert_eq!(phi_k_form(2).unwrap(), want.scale(&three_minus));
        assert_eq!(phi_k_form(2).unwrap().degree(), Some(3));
    }

    #[test]
    fn derivative_examples() {
        let p = PhiForm::monomial(mono(&[1]), CoeffPoly::from_int(1));
        let d = differentiate_form(&p);
        assert_eq!(d.coeff(&mono(&[2])), CoeffPoly::from_int(1));
        assert_eq!(d.coeff(&mono(&[1, 1])), CoeffPoly::from_int(-1));
        let p2 = PhiForm::monomial(mono(&[1, 1]), CoeffPoly::from_int(1));
        let d2 = differentiate_form(&p2);
        assert_eq!(d2.coeff(&mono(&[1, 2])), CoeffPoly::from_int(2));
        assert_eq!(d2.coeff(&mono(&[1, 1, 1])), CoeffPoly::from_int(-2));
        assert_eq!(d2.len(), 2);
    }

    #[test]
    fn rendering() {
        let p1 = phi_k_form(1).unwrap();
        assert_eq!(p1.render("θ"), "(1/3 - 1/6θ) φ'''/φ' + (-1/4 - 1/8θ + 1/8θ^2) (φ''/φ')^2");
        assert_eq!(format!("{}", mono(&[1, 2])), "(φ''/φ')(φ'''/φ')");
        assert_eq!(format!("{}", mono(&[4])), "φ^(5)/φ'");
    }
}
