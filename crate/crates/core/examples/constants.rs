//! The closed-form constants behind the criteria: σ, κ and K.

use means_spectrum::specfun::{kappa, sigma, K_bound, KappaMethod, SeriesControl};

fn main() -> means_spectrum::Result<()> {
    let ctl = SeriesControl::default();

    println!("sigma(alpha, beta)");
    for (a, b) in [(0.0, 0.0), (0.5, 0.25), (0.0, -0.5), (1.0, 2.0)] {
        println!("  sigma({a}, {b}) = {:.15}", sigma(a, b)?);
    }

    // both evaluation routes should agree to ~1e-12
    println!("kappa(alpha, theta): series vs 4F3");
    for (a, th) in [(1.0, 0.5), (2.0, 0.25), (0.5, 0.1), (19.0, 0.01)] {
        let s = kappa(a, th, &ctl, KappaMethod::Series)?;
        let h = kappa(a, th, &ctl, KappaMethod::Hyp4F3)?;
        println!("  kappa({a}, {th}) = {s:.12}  4F3 {h:.12}  diff {:.1e}", (s - h).abs());
    }

    println!("K(beta, theta)");
    for th in [0.01, 0.1, 0.5, 1.0] {
        println!("  K(0.5, {th}) = {:.10}", K_bound(0.5, th, &ctl)?);
    }
    Ok(())
}
