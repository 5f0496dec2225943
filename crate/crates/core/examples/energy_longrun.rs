//! Energy error of the dipole over a long run. Pass the number of steps
//! (default 20000) as the first argument.

use symplectic_lie::harness::{run_longrun, ExperimentConfig, Problem};
use symplectic_lie::Method;

fn main() -> symplectic_lie::Result<()> {
    let steps = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    for (method, tableau) in [(Method::Vrkmk, "gauss1"), (Method::Vrkmk, "gauss2"), (Method::Vcg, "yoshida4")] {
        let cfg = ExperimentConfig { h: 0.01, steps, ..ExperimentConfig::new(Problem::Dipole, method, tableau) };
        let run = run_longrun(&cfg)?;
        println!(
            "{method:>5} {tableau:<9} max|dH| {:.3e}  first/last tenth {:.3e} / {:.3e}  drift-free {}",
            run.max_abs_error,
            run.first_tenth_max,
            run.last_tenth_max,
            run.drift_free()
        );
    }
    Ok(())
}
