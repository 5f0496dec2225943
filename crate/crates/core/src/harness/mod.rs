//! Experiment driver: convergence-order studies, long-time energy runs and
//! finite-difference symplecticity checks, with CSV output.

mod csv_out;
mod longrun;
mod order;
mod symplecticity;

pub use csv_out::{format_float, write_csv, write_csv_to};
pub use longrun::{run_longrun, LongRun, LONGRUN_MAX_ROWS};
pub use order::{above_noise_floor, fit_slope, log_spaced_steps, run_order_study, OrderRow, OrderStudy};
pub use symplecticity::{run_symplecticity_check, SymplecticityReport, SYMPLECTICITY_THRESHOLD};

use std::fmt;
use std::str::FromStr;

use nalgebra::SVector;

use crate::cotangent::CotangentPoint;
use crate::error::{Error, Result};
use crate::integrators::{Method, StepConfig};
use crate::lie::{Abelian, CoVector, Cutoff, LieGroup};
use crate::systems::AbelianOscillator;
use crate::tableau::{tableau_by_name, ButcherTableau};

/// Test problems known to the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Dipole,
    NonRegular,
    AbelianOscillator,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::Dipole, Problem::NonRegular, Problem::AbelianOscillator];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Dipole => "dipole",
            Problem::NonRegular => "nonregular",
            Problem::AbelianOscillator => "abelian-oscillator",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown problem '{s}'")))
    }
}

/// Distance between a computed and a reference end point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ErrorMetric {
    /// `‖μ − μ_ref‖₂ + ‖q − q_ref‖₂`
    #[default]
    Full,
    /// `‖q − q_ref‖₂` only.
    Group,
}

impl ErrorMetric {
    pub fn name(self) -> &'static str {
        match self {
            ErrorMetric::Full => "full",
            ErrorMetric::Group => "group",
        }
    }

    pub fn eval<G: LieGroup<N>, const N: usize>(self, z: &CotangentPoint<G, N>, reference: &CotangentPoint<G, N>) -> f64 {
        match self {
            ErrorMetric::Full => z.distance(reference),
            ErrorMetric::Group => G::distance(&z.q, &reference.q),
        }
    }
}

impl FromStr for ErrorMetric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ErrorMetric::Full),
            "group" => Ok(ErrorMetric::Group),
            _ => Err(Error::InvalidInput(format!("unknown metric '{s}' (full, group)"))),
        }
    }
}

/// Settings shared by all experiments. Study-specific fields are ignored
/// by the experiments that do not use them.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub method: Method,
    pub tableau: String,
    /// Overrides the tableau's truncation degree.
    pub cutoff: Option<usize>,
    pub fp_tol: f64,
    pub fp_max_iter: usize,
    /// Step size of long runs and symplecticity checks.
    pub h: f64,
    /// Number of steps of long runs.
    pub steps: usize,
    /// Final time of order studies.
    pub t_end: f64,
    /// Step sizes of order studies; derived from `h_min`, `h_max`, `h_count` when empty.
    pub h_list: Vec<f64>,
    pub h_min: f64,
    pub h_max: f64,
    pub h_count: usize,
    pub metric: ErrorMetric,
    /// Keep every `stride`-th row of long runs; chosen automatically when `None`.
    pub stride: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: Problem::Dipole,
            method: Method::Vrkmk,
            tableau: "gauss2".into(),
            cutoff: None,
            fp_tol: StepConfig::DEFAULT_FP_TOL,
            fp_max_iter: StepConfig::DEFAULT_FP_MAX_ITER,
            h: 0.01,
            steps: 100_000,
            t_end: 0.5,
            h_list: Vec::new(),
            h_min: 1e-3,
            h_max: 1e-1,
            h_count: 12,
            metric: ErrorMetric::Full,
            stride: None,
        }
    }
}

/// Names accepted by [`ExperimentConfig::preset`].
pub const PRESETS: [&str; 1] = ["paper-dipole"];

impl ExperimentConfig {
    pub fn new(problem: Problem, method: Method, tableau: &str) -> Self {
        Self { problem, method, tableau: tableau.into(), ..Self::default() }
    }

    /// `paper-dipole`: the dipole with `m = q = β = 1`, `α = 0.1` and its
    /// standard initial state.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "paper-dipole" => Ok(Self { problem: Problem::Dipole, ..Self::default() }),
            _ => Err(Error::InvalidInput(format!(
                "unknown preset '{name}' (expected one of {})",
                PRESETS.join(", ")
            ))),
        }
    }

    pub fn resolve_tableau(&self) -> Result<ButcherTableau> {
        let t = tableau_by_name(&self.tableau)?;
        Ok(match self.cutoff {
            Some(r) => t.with_cutoff(Cutoff::new(r)?),
            None => t,
        })
    }

    pub fn step_config(&self, h: f64) -> Result<StepConfig> {
        let cfg = StepConfig { h, fp_tol: self.fp_tol, fp_max_iter: self.fp_max_iter, cutoff: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.resolve_tableau()?;
        self.step_config(self.h)?;
        if self.method == Method::Sprk && self.problem != Problem::AbelianOscillator {
            return Err(Error::InvalidInput(format!(
                "method sprk needs an abelian problem, got {}",
                self.problem
            )));
        }
        Ok(())
    }

    /// Step sizes of an order study, each dividing `t_end` exactly.
    pub fn order_steps(&self) -> Result<Vec<f64>> {
        if self.h_list.is_empty() {
            log_spaced_steps(self.t_end, self.h_min, self.h_max, self.h_count)
        } else {
            let ok = self.h_list.iter().all(|&h| h > 0.0) && self.h_list.windows(2).all(|w| w[1] < w[0]);
            if !ok {
                return Err(Error::InvalidInput("step sizes must be positive and strictly decreasing".into()));
            }
            Ok(self.h_list.clone())
        }
    }
}

/// Two-dimensional anharmonic oscillator used for the abelian problem.
pub fn abelian_problem() -> (AbelianOscillator, CotangentPoint<Abelian<2>, 2>) {
    (
        AbelianOscillator::new(1.0, 0.5),
        CotangentPoint::new(SVector::from([1.0, 0.0]), CoVector::from([0.0, 0.5])),
    )
}

/// Runs `$body` with `sys` and `z0` bound to the selected problem.
macro_rules! with_problem {
    ($problem:expr, |$sys:ident, $z0:ident| $body:expr) => {
        match $problem {
            $crate::harness::Problem::Dipole => {
                let $sys = $crate::systems::Dipole::standard();
                let $z0 = $sys.initial_state();
                $body
            }
            $crate::harness::Problem::NonRegular => {
                let $sys = $crate::systems::NonRegular::default();
                let $z0 = $sys.initial_state();
                $body
            }
            $crate::harness::Problem::AbelianOscillator => {
                let ($sys, $z0) = $crate::harness::abelian_problem();
                $body
            }
        }
    };
}
pub(crate) use with_problem;
