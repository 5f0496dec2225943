use super::{with_problem, ExperimentConfig};
use crate::cotangent::CotangentPoint;
use crate::error::{Error, Result};
use crate::integrators::integrate;
use crate::lie::LieGroup;
use crate::systems::TrivializedSystem;
use crate::tableau::ButcherTableau;

/// Long-run output is thinned to at most this many rows unless a stride is given.
pub const LONGRUN_MAX_ROWS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct LongRun {
    pub h: f64,
    pub steps: usize,
    /// `(tₖ, ℋ(zₖ) − ℋ(z₀))` for every step, including `k = 0`.
    pub energy_error: Vec<(f64, f64)>,
    pub stride: usize,
    /// `max |ℋ(zₖ) − ℋ(z₀)|` over the whole run.
    pub max_abs_error: f64,
    /// Maxima over the first and last tenth of the run.
    pub first_tenth_max: f64,
    pub last_tenth_max: f64,
    /// `‖qᵀq − I‖∞` at the final state; `None` for vector groups.
    pub final_orthogonality_defect: Option<f64>,
    pub max_iterations: usize,
}

impl LongRun {
    pub const CSV_HEADER: [&'static str; 2] = ["t", "energy_error"];

    /// No secular drift: the error late in the run is at most twice the error early on.
    pub fn drift_free(&self) -> bool {
        self.last_tenth_max <= 2.0 * self.first_tenth_max
    }

    /// Thinned rows for CSV output (the final step is always kept).
    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        let last = self.energy_error.len() - 1;
        self.energy_error
            .iter()
            .enumerate()
            .filter(|(k, _)| k % self.stride == 0 || *k == last)
            .map(|(_, &(t, e))| vec![t, e])
            .collect()
    }
}

fn auto_stride(steps: usize) -> usize {
    (steps + 1).div_ceil(LONGRUN_MAX_ROWS - 1).max(1)
}

fn tenth_max(errors: &[(f64, f64)], last: bool) -> f64 {
    let n = errors.len() - 1;
    let w = (n / 10).max(1);
    let range = if last { n + 1 - w..n + 1 } else { 1..w + 1 };
    errors[range].iter().fold(0.0f64, |m, e| m.max(e.1.abs()))
}

fn long_run<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &ExperimentConfig,
    t: &ButcherTableau,
) -> Result<LongRun>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N>,
{
    let step = cfg.step_config(cfg.h)?;
    let traj = integrate(sys, z0, &step, t, cfg.method, cfg.steps)?;
    let errors = traj
        .energy_errors()
        .ok_or_else(|| Error::InvalidInput(format!("problem {} has no energy", cfg.problem)))?;
    let energy_error: Vec<(f64, f64)> = errors.iter().enumerate().map(|(k, &e)| (traj.time(k), e)).collect();
    let stride = match cfg.stride {
        Some(0) => return Err(Error::InvalidInput("stride must be at least 1".into())),
        Some(s) => s,
        None => auto_stride(cfg.steps),
    };
    Ok(LongRun {
        h: cfg.h,
        steps: cfg.steps,
        max_abs_error: errors.iter().fold(0.0f64, |m, e| m.max(e.abs())),
        first_tenth_max: tenth_max(&energy_error, false),
        last_tenth_max: tenth_max(&energy_error, true),
        final_orthogonality_defect: (!G::IS_ABELIAN).then(|| G::manifold_defect(&traj.last().q)),
        max_iterations: traj.max_iterations(),
        energy_error,
        stride,
    })
}

/// Integrates `cfg.steps` steps of size `cfg.h` and records the energy error.
/// Any solver failure aborts the run.
pub fn run_longrun(cfg: &ExperimentConfig) -> Result<LongRun> {
    cfg.validate()?;
    let t = cfg.resolve_tableau()?;
    with_problem!(cfg.problem, |sys, z0| long_run(&sys, &z0, cfg, &t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Problem;
    use crate::integrators::Method;

    #[test]
    fn stride_keeps_rows_bounded() {
        assert_eq!(auto_stride(100), 1);
        assert!(100_001usize.div_ceil(auto_stride(100_000)) < LONGRUN_MAX_ROWS);
    }

    #[test]
    fn short_run_on_dipole() {
        let cfg = ExperimentConfig {
            steps: 1000,
            stride: Some(100),
            ..ExperimentConfig::new(Problem::Dipole, Method::Vcg, "midpoint")
        };
        let run = run_longrun(&cfg).unwrap();
        assert_eq!(run.energy_error.len(), 1001);
        assert_eq!(run.csv_rows().len(), 11);
        assert!(run.max_abs_error < 1e-2);
        assert!(run.final_orthogonality_defect.unwrap() < 1e-13);
    }
}
