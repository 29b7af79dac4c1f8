//! Adding the second-order row: ellipses instead of intervals.

use means_spectrum::coeffs::A_coefficients;
use means_spectrum::optimizer::{descend, Criterion, DescentConfig};
use means_spectrum::specfun::SeriesControl;
use num_complex::Complex64;

fn main() -> means_spectrum::Result<()> {
    let a = A_coefficients(0.5, Complex64::new(-1.0, 0.0), 0.45, 3, &SeriesControl::default())?;
    println!("A at theta=0.5, t=-1, beta=0.45: {:?}", [a.a1, a.a2, a.a3.unwrap(), a.a4.unwrap(), a.a5.unwrap()].map(|z| z.re));

    let two = DescentConfig::default();
    let three = DescentConfig {
        criteria_order: vec![Criterion::ThreeTermE, Criterion::TwoTermJ, Criterion::OneTerm],
        ..DescentConfig::default()
    };
    for t in [-2.0, -1.0, 0.5, 1.0] {
        let tau = Complex64::new(t, 0.0);
        let b2 = descend(tau, &two)?.beta_final;
        let b3 = descend(tau, &three)?.beta_final;
        println!("t = {t:>4}: two-term {b2:.5}  three-term {b3:.5}");
    }
    Ok(())
}
