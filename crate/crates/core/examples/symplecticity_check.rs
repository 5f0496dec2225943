use symplectic_lie::harness::{run_symplecticity_check, ExperimentConfig, Problem, SYMPLECTICITY_THRESHOLD};
use symplectic_lie::Method;

// `rkmk` on the dipole runs the non-variational control.
fn main() -> symplectic_lie::Result<()> {
    println!("max |J^T W(z1) J - W(z0)| at h = 0.01, threshold {SYMPLECTICITY_THRESHOLD:.0e}");
    for (method, tableau) in [
        (Method::Vrkmk, "gauss2"),
        (Method::Vrkmk, "kutta3"),
        (Method::Vcg, "yoshida4"),
        (Method::Cg, "gauss2"),
        (Method::Rkmk, "gauss2"),
    ] {
        let cfg = ExperimentConfig { h: 0.01, ..ExperimentConfig::new(Problem::Dipole, method, tableau) };
        let r = run_symplecticity_check(&cfg)?;
        println!("{method:>5} {tableau:<9} {:.3e} {}", r.defect, if r.passed() { "ok" } else { "not symplectic" });
    }
    Ok(())
}
