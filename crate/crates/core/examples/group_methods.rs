//! RKMK and Crouch-Grossman steps for `q̇ = ξ(q) q` on SO(3).

use nalgebra::{Matrix3, Vector3};
use symplectic_lie::integrators::{cg_group_step, rkmk_group_step};
use symplectic_lie::lie::orthogonality_defect;
use symplectic_lie::systems::FnField;
use symplectic_lie::tableau::{gauss_tableau, kutta3_tableau};
use symplectic_lie::{AlgebraVector, So3, StepConfig};

fn main() -> symplectic_lie::Result<()> {
    // a field that depends on the configuration
    let a = Matrix3::new(0.0, 1.0, 0.5, -0.4, 0.0, 1.2, 0.7, -0.3, 0.0);
    let field = FnField(move |q: &Matrix3<f64>| {
        let m = a * q;
        AlgebraVector(Vector3::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]) * 0.5)
    });

    let n = 200;
    let cfg = StepConfig::new(2.0 / n as f64);
    let mut q_rkmk = Matrix3::identity();
    let mut q_cg = Matrix3::identity();
    let (t_rkmk, t_cg) = (kutta3_tableau(), gauss_tableau(2)?);
    for _ in 0..n {
        q_rkmk = rkmk_group_step::<So3, 3, _>(&field, &q_rkmk, &cfg, &t_rkmk)?;
        q_cg = cg_group_step::<So3, 3, _>(&field, &q_cg, &cfg, &t_cg)?;
    }
    println!("rkmk kutta3 at t = 2:\n{q_rkmk:.8}");
    println!("difference to cg gauss2: {:.2e}", (q_rkmk - q_cg).amax());
    println!("orthogonality defects: {:.1e}, {:.1e}", orthogonality_defect(&q_rkmk), orthogonality_defect(&q_cg));
    Ok(())
}
