//! One-term descent near the origin; B_*(t)/t² tends to 1/2 from below on the left.

use means_spectrum::optimizer::{descend, replay, DescentConfig};
use num_complex::Complex64;

fn main() -> means_spectrum::Result<()> {
    let cfg = DescentConfig::one_term_only();
    for t in [-0.2, -0.1, -0.05, 0.05, 0.1] {
        let cert = descend(Complex64::new(t, 0.0), &cfg)?;
        println!(
            "t = {t:>5}: B = {:.7}  B/t^2 = {:.4}  steps = {:>3}  replay = {}",
            cert.beta_final,
            cert.beta_final / (t * t),
            cert.steps.len(),
            replay(&cert).ok
        );
    }
    Ok(())
}
