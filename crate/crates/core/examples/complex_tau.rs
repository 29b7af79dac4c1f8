//! The descent works for complex τ as well; disks replace intervals.

use means_spectrum::optimizer::{descend, replay, Criterion, DescentConfig};
use num_complex::Complex64;

fn main() -> means_spectrum::Result<()> {
    let cfg = DescentConfig {
        criteria_order: vec![Criterion::TwoTermI, Criterion::OneTerm],
        ..DescentConfig::default()
    };
    for tau in [Complex64::new(-1.0, 0.5), Complex64::new(0.0, 1.0), Complex64::new(0.5, -0.5)] {
        let cert = descend(tau, &cfg)?;
        println!(
            "tau = {tau}: start {:.4}, B_* = {:.5} [{}], replay {}",
            cert.beta_start,
            cert.beta_final,
            cert.tag,
            replay(&cert).ok
        );
    }
    Ok(())
}
