//! Default descent at a single t, with the step chain.

use means_spectrum::optimizer::{descend, replay, DescentConfig, StepEvidence};
use num_complex::Complex64;

fn main() -> means_spectrum::Result<()> {
    let t: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-1.0);
    let cfg = DescentConfig::default();
    let cert = descend(Complex64::new(t, 0.0), &cfg)?;
    println!("t = {t}: start {:.4}, B_* = {:.5} [{}]", cert.beta_start, cert.beta_final, cert.tag);
    for (i, s) in cert.steps.iter().enumerate().rev().take(5) {
        let what = match &s.evidence {
            StepEvidence::OneTerm { theta, .. } => format!("one-term at theta = {theta:.4}"),
            StepEvidence::Family(ev) => format!("{:?} family, witness {:?}", ev.mode, ev.witness),
        };
        println!("  step {i}: {:.5} -> {:.5}  margin {:.2e}  {what}", s.beta_from, s.beta_to, s.margin);
    }
    let rep = replay(&cert);
    println!("replay ok: {} ({} failures)", rep.ok, rep.failures.len());
    Ok(())
}
