use rayon::prelude::*;

use super::{with_problem, ExperimentConfig};
use crate::cotangent::CotangentPoint;
use crate::error::{Error, Result};
use crate::integrators::{integrate, Method, StepConfig};
use crate::lie::LieGroup;
use crate::systems::TrivializedSystem;
use crate::tableau::{gauss_tableau, ButcherTableau};

/// Step size of the reference solution (sixth-order VRKMK).
pub const REFERENCE_STEP: f64 = 1e-3;

/// Errors below `NOISE_FACTOR · fp_tol` are left out of slope fits.
pub const NOISE_FACTOR: f64 = 100.0;

/// An `n`-step run accumulates solver noise of about `n · fp_tol`; errors
/// within this factor of it are left out of slope fits as well.
pub const ACCUMULATED_NOISE_MARGIN: f64 = 10.0;

/// The fit uses at most this many of the smallest usable step sizes.
pub const ASYMPTOTIC_POINTS: usize = 6;

/// Whether an error at `steps` steps is clear of the solver noise floor.
pub fn above_noise_floor(error: f64, steps: usize, fp_tol: f64) -> bool {
    let tol = fp_tol.max(f64::EPSILON);
    error > NOISE_FACTOR * tol && error > ACCUMULATED_NOISE_MARGIN * steps as f64 * tol
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderRow {
    pub h: f64,
    pub steps: usize,
    /// `None` when the integration failed.
    pub error: Option<f64>,
    pub failure: Option<String>,
    /// Largest number of fixed-point sweeps of any step.
    pub max_iterations: usize,
    /// Slope against the previous (larger) step size.
    pub local_slope: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderStudy {
    pub rows: Vec<OrderRow>,
    /// Least-squares slope of `log error` against `log h` over the smallest
    /// step sizes whose errors are clear of the noise floor.
    pub slope: Option<f64>,
    /// Number of rows entering the fit.
    pub fitted: usize,
}

impl OrderStudy {
    pub const CSV_HEADER: [&'static str; 5] = ["h", "error", "iterations", "slope_local", "steps"];

    pub fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.h,
                    r.error.unwrap_or(f64::NAN),
                    r.max_iterations as f64,
                    r.local_slope.unwrap_or(f64::NAN),
                    r.steps as f64,
                ]
            })
            .collect()
    }
}

/// `count` step sizes between `h_min` and `h_max`, log-spaced and rounded
/// so that each divides `t_end`; strictly decreasing.
pub fn log_spaced_steps(t_end: f64, h_min: f64, h_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(t_end > 0.0 && h_min > 0.0 && h_max >= h_min && count >= 1) {
        return Err(Error::InvalidInput(format!(
            "need t_end > 0, 0 < h_min <= h_max and count >= 1 (got {t_end}, {h_min}, {h_max}, {count})"
        )));
    }
    let mut counts: Vec<usize> = (0..count)
        .map(|k| {
            let frac = if count == 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
            let h = h_max * (h_min / h_max).powf(frac);
            ((t_end / h).round() as usize).max(1)
        })
        .collect();
    counts.dedup();
    Ok(counts.into_iter().map(|n| t_end / n as f64).collect())
}

/// Least-squares slope through `(log hₖ, log eₖ)`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn study<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &ExperimentConfig,
    t: &ButcherTableau,
) -> Result<OrderStudy>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N>,
{
    let steps = cfg.order_steps()?;
    let reference_steps = (cfg.t_end / REFERENCE_STEP).round().max(1.0) as usize;
    // a sweep cap set for the method under test must not break the reference
    let reference_cfg = StepConfig {
        fp_max_iter: cfg.fp_max_iter.max(StepConfig::DEFAULT_FP_MAX_ITER),
        ..cfg.step_config(cfg.t_end / reference_steps as f64)?
    };
    let reference = integrate(sys, z0, &reference_cfg, &gauss_tableau(3)?, Method::Vrkmk, reference_steps)?;
    let z_ref = reference.last();

    let mut rows: Vec<OrderRow> = steps
        .par_iter()
        .map(|&h| {
            let n = (cfg.t_end / h).round().max(1.0) as usize;
            let run = cfg
                .step_config(h)
                .and_then(|step: StepConfig| integrate(sys, z0, &step, t, cfg.method, n));
            match run {
                Ok(traj) => OrderRow {
                    h,
                    steps: n,
                    error: Some(cfg.metric.eval(traj.last(), z_ref)),
                    failure: None,
                    max_iterations: traj.max_iterations(),
                    local_slope: None,
                },
                Err(e) => OrderRow {
                    h,
                    steps: n,
                    error: None,
                    failure: Some(e.to_string()),
                    max_iterations: 0,
                    local_slope: None,
                },
            }
        })
        .collect();

    for k in 1..rows.len() {
        if let (Some(e0), Some(e1)) = (rows[k - 1].error, rows[k].error) {
            if e0 > 0.0 && e1 > 0.0 {
                rows[k].local_slope = Some((e1 / e0).ln() / (rows[k].h / rows[k - 1].h).ln());
            }
        }
    }

    let usable: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.error.filter(|&e| above_noise_floor(e, r.steps, cfg.fp_tol)).map(|e| (r.h, e)))
        .collect();
    let points = &usable[usable.len().saturating_sub(ASYMPTOTIC_POINTS)..];
    Ok(OrderStudy { slope: fit_slope(points), fitted: points.len(), rows })
}

/// Integrates to `t_end` for every step size of `cfg` (in parallel) and
/// compares with a sixth-order VRKMK reference at `h = 10⁻³`.
///
/// Failures at individual step sizes are recorded in their rows.
pub fn run_order_study(cfg: &ExperimentConfig) -> Result<OrderStudy> {
    cfg.validate()?;
    let t = cfg.resolve_tableau()?;
    with_problem!(cfg.problem, |sys, z0| study(&sys, &z0, cfg, &t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Problem;

    #[test]
    fn steps_divide_final_time() {
        let hs = log_spaced_steps(0.5, 1e-3, 1e-1, 12).unwrap();
        assert_eq!(hs.len(), 12);
        assert_eq!(hs[0], 0.1);
        assert_eq!(*hs.last().unwrap(), 1e-3);
        for w in hs.windows(2) {
            assert!(w[1] < w[0]);
        }
        for h in &hs {
            let n = 0.5 / h;
            assert!((n - n.round()).abs() < 1e-9);
        }
        assert!(log_spaced_steps(0.5, 0.1, 1e-3, 12).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = [0.1, 0.05, 0.02].iter().map(|&h: &f64| (h, 3.0 * h.powi(4))).collect();
        assert!((fit_slope(&pts).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(fit_slope(&pts[..1]), None);
    }

    #[test]
    fn noise_floor_grows_with_steps() {
        assert!(above_noise_floor(1e-11, 10, 1e-14));
        assert!(!above_noise_floor(1e-11, 500, 1e-14));
        assert!(!above_noise_floor(5e-13, 1, 1e-14));
    }

    #[test]
    fn midpoint_study_on_dipole() {
        let cfg = ExperimentConfig {
            h_list: vec![0.1, 0.05, 0.025],
            ..ExperimentConfig::new(Problem::Dipole, Method::Vrkmk, "gauss1")
        };
        let st = run_order_study(&cfg).unwrap();
        assert_eq!(st.rows.len(), 3);
        assert!((st.slope.unwrap() - 2.0).abs() < 0.3, "{st:?}");
    }
}
