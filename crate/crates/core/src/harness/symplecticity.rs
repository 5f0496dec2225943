use super::{with_problem, ExperimentConfig};
use crate::calibration::{symplecticity_defect, two_form_sign};
use crate::cotangent::{CotangentPoint, FormSign};
use crate::error::Result;
use crate::integrators::{rkmk_euler_step, step, Method};
use crate::lie::LieGroup;
use crate::systems::TrivializedSystem;
use crate::tableau::ButcherTableau;

/// Pass threshold for `max |JᵀΩ₁J − Ω₀|`.
pub const SYMPLECTICITY_THRESHOLD: f64 = 1e-6;

/// Perturbation size of the finite-difference Jacobian.
pub const JACOBIAN_PERTURBATION: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticityReport {
    pub problem: String,
    pub method: String,
    pub tableau: String,
    pub h: f64,
    pub sign: FormSign,
    pub defect: f64,
}

impl SymplecticityReport {
    pub const CSV_HEADER: [&'static str; 3] = ["h", "defect", "pass"];

    pub fn passed(&self) -> bool {
        self.defect <= SYMPLECTICITY_THRESHOLD
    }

    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        vec![vec![self.h, self.defect, if self.passed() { 1.0 } else { 0.0 }]]
    }
}

fn check<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &ExperimentConfig,
    t: &ButcherTableau,
    sign: FormSign,
) -> Result<f64>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N>,
{
    let step_cfg = cfg.step_config(cfg.h)?;
    match cfg.method {
        Method::Rkmk => symplecticity_defect(|z| rkmk_euler_step(sys, z, &step_cfg, t), z0, JACOBIAN_PERTURBATION, sign),
        m => symplecticity_defect(
            |z| step(m, sys, z, &step_cfg, t, None).map(|out| out.z),
            z0,
            JACOBIAN_PERTURBATION,
            sign,
        ),
    }
}

/// Finite-difference test of one step at the problem's initial state.
///
/// `Method::Rkmk` selects the non-variational control: an RKMK step for
/// `q` followed by a naive explicit update `μ₁ = μ₀ + h n₀`.
pub fn run_symplecticity_check(cfg: &ExperimentConfig) -> Result<SymplecticityReport> {
    let sign = two_form_sign()?;
    cfg.validate()?;
    let t = cfg.resolve_tableau()?;
    let defect = with_problem!(cfg.problem, |sys, z0| check(&sys, &z0, cfg, &t, sign))?;
    Ok(SymplecticityReport {
        problem: cfg.problem.to_string(),
        method: cfg.method.to_string(),
        tableau: t.name.clone(),
        h: cfg.h,
        sign,
        defect,
    })
}
