//! Builds a table of B_*(t) next to the trivial comparison values.
//! Pass `--full` for every standard t (about half a minute in release).

use means_spectrum::optimizer::{build_table, DescentConfig, TABLE_TS};

fn main() -> means_spectrum::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    let ts: Vec<f64> = if full {
        TABLE_TS.to_vec()
    } else {
        vec![-5.0, -2.0, -1.0, -0.5, -0.1, 0.05, 0.25, 0.5, 1.0, 2.0]
    };
    let table = build_table(&ts, &DescentConfig::default())?;
    println!("{:>8} {:>10} {:>6} {:>8}", "t", "B_*", "tag", "trivial");
    for r in &table.rows {
        println!("{:>8.3} {:>10.5} {:>6} {:>8.3}", r.t, r.beta, r.tag, r.comparison);
    }
    Ok(())
}
