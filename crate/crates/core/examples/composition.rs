//! Composing VCG steps is a VCG step with the composed tableau.

use symplectic_lie::integrators::{compose_steps, vcg_step};
use symplectic_lie::systems::Dipole;
use symplectic_lie::tableau::{compose_tableaux, midpoint_tableau, yoshida4_weights, yoshida_dirk};
use symplectic_lie::StepConfig;

fn main() -> symplectic_lie::Result<()> {
    let d = Dipole::standard();
    let z0 = d.initial_state();
    let cfg = StepConfig::new(0.05);
    let mid = midpoint_tableau();

    let gamma = yoshida4_weights()[0];
    let two_steps = compose_steps(&d, &z0, &cfg, &mid, &mid, gamma)?;
    let one_step = vcg_step(&d, &z0, &cfg, &compose_tableaux(&mid, &mid, gamma)?)?;
    println!("gamma = {gamma:.6}: |two steps - one step| = {:.2e}\n", two_steps.distance(&one_step));

    print!("{}", yoshida_dirk(4)?);
    Ok(())
}
