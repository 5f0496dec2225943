//! Kutta's third-order tableau on a non-regular Hamiltonian: with the
//! dexp⁻¹ series cut at r = 0 the position error is only second order.

use symplectic_lie::harness::{run_order_study, ErrorMetric, ExperimentConfig, Problem};
use symplectic_lie::Method;

fn main() -> symplectic_lie::Result<()> {
    for r in [0, 1] {
        let cfg = ExperimentConfig {
            cutoff: Some(r),
            metric: ErrorMetric::Group,
            ..ExperimentConfig::new(Problem::NonRegular, Method::Vrkmk, "kutta3")
        };
        let study = run_order_study(&cfg)?;
        println!("r = {r}: slope {:.2}", study.slope.unwrap_or(f64::NAN));
    }
    Ok(())
}
