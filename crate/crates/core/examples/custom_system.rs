//! A free rigid body supplied as a closure. Its energy ½ μᵀ g 𝐈⁻¹ gᵀ μ
//! and the spatial momentum are both conserved.

use nalgebra::{Matrix3, Vector3};
use symplectic_lie::cotangent::{BigAlgebraElement, CotangentPoint};
use symplectic_lie::integrators::integrate;
use symplectic_lie::systems::FnSystem;
use symplectic_lie::tableau::gauss_tableau;
use symplectic_lie::{AlgebraVector, CoVector, Method, So3, StepConfig};

fn main() -> symplectic_lie::Result<()> {
    let inertia_inv = Matrix3::from_diagonal(&Vector3::new(1.0, 0.5, 1.0 / 3.0));
    let body = FnSystem(move |z: &CotangentPoint<So3, 3>| {
        let xi = z.q * inertia_inv * z.q.transpose() * z.mu.0;
        BigAlgebraElement::new(AlgebraVector(xi), CoVector(-xi.cross(&z.mu.0)))
    });
    let energy = |z: &CotangentPoint<So3, 3>| 0.5 * z.mu.0.dot(&(z.q * inertia_inv * z.q.transpose() * z.mu.0));

    let z0 = CotangentPoint::new(Matrix3::identity(), CoVector::from([0.1, 1.0, 0.2]));
    let traj = integrate(&body, &z0, &StepConfig::new(0.05), &gauss_tableau(2)?, Method::Vrkmk, 2000)?;
    let worst = traj.states.iter().map(|z| (energy(z) - energy(&z0)).abs()).fold(0.0, f64::max);
    let drift = (traj.last().mu - z0.mu).norm();
    println!("max |dH| {worst:.2e}, |mu_N - mu_0| {drift:.2e}");
    Ok(())
}
