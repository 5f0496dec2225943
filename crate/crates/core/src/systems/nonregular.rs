//! A Hamiltonian linear in the momentum, `ℋ(q, μ) = ⟨μ, v(q)⟩`, with
//! `v(g) = vee(skew(A g))`.
//!
//! Its Legendre map is degenerate, so `q(t)` solves `q̇ = v(q)·q` regardless
//! of `μ`. The system also serves as a group vector field for the group-only
//! integrators.

use nalgebra::Matrix3;

use super::{GroupVectorField, TrivializedSystem};
use crate::cotangent::{BigAlgebraElement, CotangentPoint};
use crate::error::Result;
use crate::lie::{hat, AlgebraVector, CoVector, So3};

fn skew_vee(m: &Matrix3<f64>) -> AlgebraVector<3> {
    AlgebraVector(crate::lie::so3_vee_skew_part(m))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonRegular {
    pub a: Matrix3<f64>,
}

impl Default for NonRegular {
    /// A generic `A`: `[v, dv·v]` is nonzero along the flow from `g = I`, so
    /// third-order terms of one-exponential methods do not cancel.
    fn default() -> Self {
        Self { a: Matrix3::new(0.3, -0.8, 0.5, 0.9, 0.2, -0.4, -0.6, 0.7, 0.1) }
    }
}

impl NonRegular {
    pub fn new(a: Matrix3<f64>) -> Self {
        Self { a }
    }

    /// `v(g)`
    pub fn v(&self, g: &Matrix3<f64>) -> AlgebraVector<3> {
        skew_vee(&(self.a * g))
    }

    /// `∂/∂ε v(exp(ε η) g)` at `ε = 0`. Exact because `v` is linear in `g`.
    pub fn dv(&self, g: &Matrix3<f64>, eta: &AlgebraVector<3>) -> AlgebraVector<3> {
        skew_vee(&(self.a * hat(&eta.0) * g))
    }

    /// Starting point `g = I`, `μ = (1, −1, ½)`.
    pub fn initial_state(&self) -> CotangentPoint<So3, 3> {
        CotangentPoint::new(Matrix3::identity(), CoVector::from([1.0, -1.0, 0.5]))
    }

    pub fn energy(&self, z: &CotangentPoint<So3, 3>) -> f64 {
        z.mu.pair(&self.v(&z.q))
    }

    /// `f(q, μ) = (v(q), −((∂v/∂q)* μ)·q⁻¹)`
    pub fn f(&self, z: &CotangentPoint<So3, 3>) -> BigAlgebraElement<3> {
        let mut n = CoVector::zeros();
        for k in 0..3 {
            n.0[k] = -z.mu.pair(&self.dv(&z.q, &AlgebraVector::basis(k)));
        }
        BigAlgebraElement::new(self.v(&z.q), n)
    }
}

impl TrivializedSystem<So3, 3> for NonRegular {
    fn f_map(&self, z: &CotangentPoint<So3, 3>) -> Result<BigAlgebraElement<3>> {
        Ok(self.f(z))
    }

    fn energy(&self, z: &CotangentPoint<So3, 3>) -> Result<Option<f64>> {
        Ok(Some(NonRegular::energy(self, z)))
    }
}

impl GroupVectorField<So3, 3> for NonRegular {
    fn eval(&self, q: &Matrix3<f64>) -> Result<AlgebraVector<3>> {
        Ok(self.v(q))
    }
}
