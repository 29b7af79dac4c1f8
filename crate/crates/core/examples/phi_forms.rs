//! Exact φ-form algebra: Φ_k, Ω_k and the c-coefficients.

use means_spectrum::phiforms::{c_coefficient, omega_closed_form, omega_form, phi_k_form, rat};

fn main() -> means_spectrum::Result<()> {
    for k in 0..3 {
        println!("Phi_{k}(theta) = {}", phi_k_form(k)?.render("θ"));
    }
    println!();
    for k in 1..4 {
        println!("Omega_{k}(lambda) = {}", omega_form(k)?.render("λ"));
    }

    // recursion vs closed form, exactly
    for k in 1..=8 {
        let same = omega_form(k)? == omega_closed_form(k)?;
        println!("k = {k}: recursion == closed form: {same}");
    }

    println!("c(1,2) = {}", c_coefficient(&[1, 2])?);
    println!("c(1,1,2) = {}", c_coefficient(&[1, 1, 2])?);

    let p1 = phi_k_form(1)?;
    println!("Phi_1 at theta = 1/2: {}", p1.specialize(&rat(1, 2)).render("θ"));
    Ok(())
}
