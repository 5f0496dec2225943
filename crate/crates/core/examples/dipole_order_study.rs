//! Global error at t = 0.5 against a sixth-order reference.
//!
//! `cargo run --release --example dipole_order_study -- vcg yoshida6`

use symplectic_lie::harness::{run_order_study, ExperimentConfig, Problem};
use symplectic_lie::Method;

fn main() -> symplectic_lie::Result<()> {
    let mut args = std::env::args().skip(1);
    let method: Method = args.next().as_deref().unwrap_or("vrkmk").parse()?;
    let tableau = args.next().unwrap_or_else(|| "gauss2".into());

    let cfg = ExperimentConfig::new(Problem::Dipole, method, &tableau);
    let study = run_order_study(&cfg)?;
    println!("{method} {tableau}");
    println!("{:>10} {:>6} {:>12} {:>7}", "h", "steps", "error", "slope");
    for row in &study.rows {
        let err = row.error.map_or("failed".to_string(), |e| format!("{e:.4e}"));
        let slope = row.local_slope.map_or("-".to_string(), |s| format!("{s:.2}"));
        println!("{:>10.3e} {:>6} {:>12} {:>7}", row.h, row.steps, err, slope);
    }
    match study.slope {
        Some(s) => println!("fitted order {s:.2}"),
        None => println!("too few points above the solver noise"),
    }
    Ok(())
}
