//! On ℝ² both variational methods reduce to a symplectic partitioned RK method.

use nalgebra::SVector;
use symplectic_lie::cotangent::CotangentPoint;
use symplectic_lie::integrators::{sprk_step, vcg_step, vrkmk_step};
use symplectic_lie::lie::Abelian;
use symplectic_lie::systems::AbelianOscillator;
use symplectic_lie::tableau::{hat_coefficients, tableau_by_name};
use symplectic_lie::{CoVector, StepConfig};

fn main() -> symplectic_lie::Result<()> {
    let osc = AbelianOscillator::new(1.0, 0.5);
    let z = CotangentPoint::<Abelian<2>, 2>::new(SVector::from([0.8, -0.3]), CoVector::from([0.1, 0.6]));
    let cfg = StepConfig::new(0.1);
    for name in ["gauss2", "kutta3", "yoshida4"] {
        let t = tableau_by_name(name)?;
        let reference = sprk_step(&osc, &z, &cfg, &t)?;
        let a = vrkmk_step(&osc, &z, &cfg, &t)?;
        let b = vcg_step(&osc, &z, &cfg, &t)?;
        println!(
            "{name:<9} vrkmk {:.1e}  vcg {:.1e}",
            a.distance(&reference),
            b.distance(&reference)
        );
    }
    println!("\nmomentum coefficients of kutta3:\n{}", hat_coefficients(&tableau_by_name("kutta3")?)?);
    Ok(())
}
