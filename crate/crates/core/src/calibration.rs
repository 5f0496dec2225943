//! Finite-difference symplecticity checks and the sign of the curvature
//! term of the trivialized two-form.
//!
//! The sign is fixed by [`TWO_FORM_SIGN`]. [`calibrate_two_form_sign`]
//! recovers it numerically: it picks the sign under which a Gauss-2 VRKMK
//! step of the dipole preserves the form.

use nalgebra::DMatrix;

use crate::cotangent::{two_form_matrix, CotangentPoint, FormSign};
use crate::error::{Error, Result};
use crate::integrators::{vrkmk_step, StepConfig};
use crate::lie::{CoVector, LieGroup};
use crate::systems::Dipole;
use crate::tableau::gauss_tableau;

/// Calibrated sign `s` in `ω = ⟨ρ₂, η₁⟩ − ⟨ρ₁, η₂⟩ + s⟨μ, [η₁, η₂]⟩`.
pub const TWO_FORM_SIGN: Option<FormSign> = Some(FormSign::Negative);

pub const CALIBRATION_STEP: f64 = 1e-3;
pub const CALIBRATION_PERTURBATION: f64 = 1e-6;
pub const CALIBRATION_TOLERANCE: f64 = 1e-8;

pub fn two_form_sign() -> Result<FormSign> {
    TWO_FORM_SIGN.ok_or(Error::CalibrationMissing)
}

/// Central-difference Jacobian of `step` at `z0` in the trivialized frames
/// `(η, ρ)` at `z0` and at `z1 = step(z0)`.
///
/// Inputs are perturbed as `(exp(ε eₖ) q₀, μ₀)` and `(q₀, μ₀ + ε eₖ)`;
/// outputs are read back through `log(q q₁⁻¹)` and `μ − μ₁`.
pub fn step_jacobian<G, const N: usize, F>(
    step: F,
    z0: &CotangentPoint<G, N>,
    eps: f64,
) -> Result<(DMatrix<f64>, CotangentPoint<G, N>)>
where
    G: LieGroup<N>,
    F: Fn(&CotangentPoint<G, N>) -> Result<CotangentPoint<G, N>>,
{
    let z1 = step(z0)?;
    let q1_inv = G::inverse(&z1.q);
    let perturb = |k: usize, e: f64| -> CotangentPoint<G, N> {
        if k < N {
            let mut eta = crate::lie::AlgebraVector::zeros();
            eta.0[k] = e;
            CotangentPoint::new(G::exp_mul(&eta, &z0.q), z0.mu)
        } else {
            CotangentPoint::new(z0.q.clone(), z0.mu + CoVector::basis(k - N) * e)
        }
    };
    let read = |z: &CotangentPoint<G, N>| -> Result<Vec<f64>> {
        let eta = G::log(&G::compose(&z.q, &q1_inv))?;
        let rho = z.mu - z1.mu;
        Ok(eta.as_slice().iter().chain(rho.as_slice()).copied().collect())
    };
    let mut jac = DMatrix::zeros(2 * N, 2 * N);
    for k in 0..2 * N {
        let plus = read(&step(&perturb(k, eps))?)?;
        let minus = read(&step(&perturb(k, -eps))?)?;
        for i in 0..2 * N {
            jac[(i, k)] = (plus[i] - minus[i]) / (2.0 * eps);
        }
    }
    Ok((jac, z1))
}

/// `max |JᵀΩ(z₁)J − Ω(z₀)|` for the finite-difference Jacobian of `step`.
pub fn symplecticity_defect<G, const N: usize, F>(
    step: F,
    z0: &CotangentPoint<G, N>,
    eps: f64,
    sign: FormSign,
) -> Result<f64>
where
    G: LieGroup<N>,
    F: Fn(&CotangentPoint<G, N>) -> Result<CotangentPoint<G, N>>,
{
    let (jac, z1) = step_jacobian(step, z0, eps)?;
    let omega0 = two_form_matrix(z0, sign);
    let omega1 = two_form_matrix(&z1, sign);
    Ok((jac.transpose() * omega1 * jac - omega0).amax())
}

/// Defects of the calibration step under both signs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration {
    pub positive: f64,
    pub negative: f64,
}

impl Calibration {
    /// The sign whose defect is within [`CALIBRATION_TOLERANCE`], if exactly one is.
    pub fn sign(&self) -> Option<FormSign> {
        match (self.positive <= CALIBRATION_TOLERANCE, self.negative <= CALIBRATION_TOLERANCE) {
            (true, false) => Some(FormSign::Positive),
            (false, true) => Some(FormSign::Negative),
            _ => None,
        }
    }
}

/// Gauss-2 VRKMK on the dipole at `h = 10⁻³`, tested against both signs.
pub fn calibrate_two_form_sign() -> Result<Calibration> {
    let d = Dipole::standard();
    let z0 = d.initial_state();
    let t = gauss_tableau(2)?;
    let cfg = StepConfig::new(CALIBRATION_STEP);
    let step = |z: &CotangentPoint<_, 3>| vrkmk_step(&d, z, &cfg, &t);
    Ok(Calibration {
        positive: symplecticity_defect(step, &z0, CALIBRATION_PERTURBATION, FormSign::Positive)?,
        negative: symplecticity_defect(step, &z0, CALIBRATION_PERTURBATION, FormSign::Negative)?,
    })
}
