//! Upper bound at s = 1 for the exterior class, from chords of the table.

use means_spectrum::optimizer::{build_table, sigma_class_bound_at, DescentConfig, TABLE_TS};

fn main() -> means_spectrum::Result<()> {
    let ts: Vec<f64> = TABLE_TS.iter().copied().filter(|&t| t <= 1.0).collect();
    let table = build_table(&ts, &DescentConfig::default())?;
    for s in [0.5, 1.0, 1.5] {
        println!("B_Sigma({s}) <= {:.5}", sigma_class_bound_at(s, &table)?);
    }
    Ok(())
}
