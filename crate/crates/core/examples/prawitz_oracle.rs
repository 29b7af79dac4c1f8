//! Quadrature checks of the integral inequalities on a few sample maps.

use means_spectrum::oracle::{prawitz_estimate, run_suite, DiskQuadrature, MapSample};

fn main() -> means_spectrum::Result<()> {
    let quad = DiskQuadrature::default();
    for map in MapSample::zoo() {
        for theta in [0.25, 0.5, 1.0] {
            let est = prawitz_estimate(map, theta, &quad)?;
            println!("{:<16} theta = {theta:<4} integral = {:.8} (1/theta = {:.4})", map.name(), est.value, 1.0 / theta);
        }
    }
    let report = run_suite(&quad)?;
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    for c in report.checks.iter().filter(|c| !c.pass) {
        println!("FAILED {}: {} vs {} (tol {})", c.name, c.value, c.reference, c.tol);
    }
    println!("suite: {} checks, {} failed", report.checks.len(), failed);
    Ok(())
}
