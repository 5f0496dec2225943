//! "Dipole on a stick": a massless unit rod pivoting at the origin whose
//! far end carries a crossbar of length `2α` with charges `±q` (mass `m/2`
//! each), moving under gravity along `−e₃` and the field of a fixed charge `β`.
//!
//! ```text
//! ℋ(g, μ) = ½ μᵀ g 𝐈⁻¹ gᵀ μ − γ m e₃ᵀ g e₃ + qβ (‖g y₊⁰ − z‖⁻¹ − ‖g y₋⁰ − z‖⁻¹)
//! 𝐈 = m diag(1 + α², 1, α²),   y±⁰ = (0, ±α, −1),   z = (0, 0, −3/2)
//! ```
//!
//! The rod points along `g y±⁰ ≈ −g e₃`, so its height is `−e₃ᵀ g e₃` and
//! `γ = 1` is the hanging pendulum. `γ = −1` flips the potential to
//! `+m e₃ᵀ g e₃`, an inverted pendulum.

use nalgebra::{Matrix3, Vector3};

use super::TrivializedSystem;
use crate::cotangent::{BigAlgebraElement, CotangentPoint};
use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, CoVector, So3};

const COLLISION_DISTANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DipoleParams {
    pub m: f64,
    pub charge: f64,
    pub beta: f64,
    /// Half length of the crossbar.
    pub alpha: f64,
    pub field_charge_pos: Vector3<f64>,
    /// Gravitational acceleration along `−e₃`.
    pub gravity: f64,
}

impl Default for DipoleParams {
    /// `m = q = β = γ = 1`, `α = 0.1`.
    fn default() -> Self {
        Self {
            m: 1.0,
            charge: 1.0,
            beta: 1.0,
            alpha: 0.1,
            field_charge_pos: Vector3::new(0.0, 0.0, -1.5),
            gravity: 1.0,
        }
    }
}

impl DipoleParams {
    /// Diagonal of `𝐈 = m diag(1 + α², 1, α²)`.
    pub fn inertia(&self) -> Vector3<f64> {
        let a2 = self.alpha * self.alpha;
        Vector3::new(1.0 + a2, 1.0, a2) * self.m
    }

    /// Body-frame charge positions `y₊⁰, y₋⁰`.
    pub fn charge_positions(&self) -> (Vector3<f64>, Vector3<f64>) {
        (
            Vector3::new(0.0, self.alpha, -1.0),
            Vector3::new(0.0, -self.alpha, -1.0),
        )
    }
}

#[derive(Clone, Debug)]
pub struct Dipole {
    params: DipoleParams,
    inertia: Vector3<f64>,
    inertia_inv: Vector3<f64>,
}

impl Dipole {
    pub fn new(params: DipoleParams) -> Result<Self> {
        if !(params.m > 0.0) || !(params.alpha > 0.0) {
            return Err(Error::InvalidInput(format!(
                "dipole needs m > 0 and alpha > 0 (got m = {}, alpha = {})",
                params.m, params.alpha
            )));
        }
        let inertia = params.inertia();
        Ok(Self {
            inertia_inv: inertia.map(|v| 1.0 / v),
            inertia,
            params,
        })
    }

    /// The standard test configuration.
    pub fn standard() -> Self {
        Self::new(DipoleParams::default()).expect("default parameters are valid")
    }

    pub fn params(&self) -> &DipoleParams {
        &self.params
    }

    /// `g(0)` with rows `(1,0,0), (0,0,−1), (0,1,0)` and `μ(0) = g(0) 𝐈 g(0)ᵀ e₂`,
    /// chosen so that the velocity part of `f(g(0), μ(0))` is `e₂`.
    pub fn initial_state(&self) -> CotangentPoint<So3, 3> {
        let g = Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0);
        let mu = g * Matrix3::from_diagonal(&self.inertia) * g.transpose() * Vector3::y();
        CotangentPoint::new(g, CoVector(mu))
    }

    /// Spatial charge positions `g y±⁰` and their offsets from the field charge.
    fn charges(&self, g: &Matrix3<f64>) -> Result<[(Vector3<f64>, Vector3<f64>, f64); 2]> {
        let (yp, ym) = self.params.charge_positions();
        let mut out = [(Vector3::zeros(), Vector3::zeros(), 0.0); 2];
        for (slot, y) in out.iter_mut().zip([yp, ym]) {
            let p = g * y;
            let d = p - self.params.field_charge_pos;
            let r = d.norm();
            if !(r >= COLLISION_DISTANCE) {
                return Err(Error::Singularity(format!(
                    "charge at {p:?} collides with field charge (distance {r:e})"
                )));
            }
            *slot = (p, d, r);
        }
        Ok(out)
    }

    /// Spatial angular velocity `g 𝐈⁻¹ gᵀ μ`.
    fn velocity(&self, g: &Matrix3<f64>, mu: &Vector3<f64>) -> Vector3<f64> {
        g * self.inertia_inv.component_mul(&g.tr_mul(mu))
    }

    pub fn energy(&self, z: &CotangentPoint<So3, 3>) -> Result<f64> {
        let g = &z.q;
        let [(_, _, rp), (_, _, rm)] = self.charges(g)?;
        let kinetic = 0.5 * z.mu.0.dot(&self.velocity(g, &z.mu.0));
        let gravity = -self.params.gravity * self.params.m * g[(2, 2)];
        let electric = self.params.charge * self.params.beta * (1.0 / rp - 1.0 / rm);
        Ok(kinetic + gravity + electric)
    }

    /// Analytic `f = (D₂ℋ, −(D₁ℋ)·g⁻¹)`.
    ///
    /// With `δg = η g` the right-trivialized gradient of `ℋ` is
    /// `ξ × μ − γm (g e₃) × e₃ + qβ Σ± ±(p± × z)/‖p± − z‖³`, `p± = g y±⁰`.
    pub fn f(&self, z: &CotangentPoint<So3, 3>) -> Result<BigAlgebraElement<3>> {
        let g = &z.q;
        let mu = &z.mu.0;
        let [(pp, _, rp), (pm, _, rm)] = self.charges(g)?;
        let xi = self.velocity(g, mu);
        let zc = &self.params.field_charge_pos;
        let kinetic = xi.cross(mu);
        let gravity = g.column(2).cross(&Vector3::z()) * (-self.params.gravity * self.params.m);
        let qb = self.params.charge * self.params.beta;
        let electric = (pp.cross(zc) / (rp * rp * rp) - pm.cross(zc) / (rm * rm * rm)) * qb;
        let grad = kinetic + gravity + electric;
        Ok(BigAlgebraElement::new(AlgebraVector(xi), CoVector(-grad)))
    }
}

impl TrivializedSystem<So3, 3> for Dipole {
    fn f_map(&self, z: &CotangentPoint<So3, 3>) -> Result<BigAlgebraElement<3>> {
        self.f(z)
    }

    fn energy(&self, z: &CotangentPoint<So3, 3>) -> Result<Option<f64>> {
        Dipole::energy(self, z).map(Some)
    }
}
