//! One-step maps and the trajectory driver.
//!
//! * [`rkmk_group_step`], [`cg_group_step`]: Lie group methods for `q̇ = f(q)·q`.
//! * [`vrkmk_step`], [`vcg_step`]: symplectic (variational) methods on `G × 𝔤*`.
//! * [`sprk_step`]: classical symplectic partitioned RK, abelian groups only.
//! * [`rkmk_cotangent_step`], [`cg_cotangent_step`], [`rkmk_euler_step`]:
//!   non-variational methods for `ż = f(z)·z`, kept for comparison.
//!
//! Implicit stage equations are solved by fixed-point iteration.

mod fixed_point;
mod group;
mod nonvariational;
mod sprk;
mod vcg;
mod vrkmk;

pub use fixed_point::{fixed_point_solve, FixedPoint, DIVERGENCE_NORM, STAGNATION_FACTOR};
pub use group::{cg_group_step, rkmk_group_step};
pub use nonvariational::{cg_cotangent_step, rkmk_cotangent_step, rkmk_euler_step};
pub use sprk::{sprk_step, sprk_step_warm};
pub use vcg::{vcg_step, vcg_step_warm, MomentumForm};
pub use vrkmk::{vrkmk_step, vrkmk_step_warm};

use std::fmt;
use std::str::FromStr;

use crate::cotangent::CotangentPoint;
use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, CoVector, Cutoff, LieGroup};
use crate::systems::TrivializedSystem;
use crate::tableau::ButcherTableau;

/// Step size and stage-solver settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepConfig {
    pub h: f64,
    /// Relative tolerance on the change of the stage unknowns per sweep.
    pub fp_tol: f64,
    pub fp_max_iter: usize,
    /// Overrides the truncation degree stored on the tableau.
    pub cutoff: Option<Cutoff>,
}

impl StepConfig {
    pub const DEFAULT_FP_TOL: f64 = 1e-14;
    pub const DEFAULT_FP_MAX_ITER: usize = 100;

    pub fn new(h: f64) -> Self {
        Self {
            h,
            fp_tol: Self::DEFAULT_FP_TOL,
            fp_max_iter: Self::DEFAULT_FP_MAX_ITER,
            cutoff: None,
        }
    }

    pub fn with_cutoff(mut self, r: Cutoff) -> Self {
        self.cutoff = Some(r);
        self
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h.is_finite() && self.h != 0.0) {
            return Err(Error::InvalidInput(format!("step size must be finite and nonzero, got {}", self.h)));
        }
        if !(self.fp_tol > 0.0) {
            return Err(Error::InvalidInput(format!("fp_tol must be positive, got {}", self.fp_tol)));
        }
        if self.fp_max_iter == 0 {
            return Err(Error::InvalidInput("fp_max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// The truncation degree in effect for `t`.
    pub fn cutoff_for(&self, t: &ButcherTableau) -> Cutoff {
        self.cutoff.unwrap_or(t.cutoff())
    }
}

/// Converged stage unknowns of one step, reused as the initial guess of the next.
#[derive(Clone, Debug, PartialEq)]
pub enum StageState<const N: usize> {
    Vrkmk {
        x: Vec<AlgebraVector<N>>,
        m: Vec<CoVector<N>>,
        lambda: Vec<CoVector<N>>,
        xi: Vec<AlgebraVector<N>>,
    },
    Vcg {
        xi: Vec<AlgebraVector<N>>,
        m: Vec<CoVector<N>>,
    },
    /// Stage positions (as algebra increments) and momenta of a partitioned method.
    Partitioned {
        x: Vec<AlgebraVector<N>>,
        m: Vec<CoVector<N>>,
    },
}

impl<const N: usize> StageState<N> {
    pub fn stages(&self) -> usize {
        match self {
            StageState::Vrkmk { x, .. } | StageState::Partitioned { x, .. } => x.len(),
            StageState::Vcg { xi, .. } => xi.len(),
        }
    }
}

/// Result of one step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepOutcome<G: LieGroup<N>, const N: usize> {
    pub z: CotangentPoint<G, N>,
    /// Fixed-point sweeps used (0 for explicit updates).
    pub iterations: usize,
    pub stages: Option<StageState<N>>,
}

/// Integrator families selectable at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Vrkmk,
    Vcg,
    /// RKMK on `G × 𝔤*` (not symplectic).
    Rkmk,
    /// Crouch–Grossman on `G × 𝔤*` (not symplectic).
    Cg,
    /// Abelian groups only.
    Sprk,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Vrkmk, Method::Vcg, Method::Rkmk, Method::Cg, Method::Sprk];

    pub fn name(self) -> &'static str {
        match self {
            Method::Vrkmk => "vrkmk",
            Method::Vcg => "vcg",
            Method::Rkmk => "rkmk",
            Method::Cg => "cg",
            Method::Sprk => "sprk",
        }
    }

    pub fn is_symplectic(self) -> bool {
        matches!(self, Method::Vrkmk | Method::Vcg | Method::Sprk)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method '{s}'")))
    }
}

/// One step of `method`, warm-started from `guess` when it fits.
pub fn step<G, const N: usize, S>(
    method: Method,
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
    guess: Option<&StageState<N>>,
) -> Result<StepOutcome<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    match method {
        Method::Vrkmk => vrkmk_step_warm(sys, z0, cfg, t, guess),
        Method::Vcg => vcg_step_warm(sys, z0, cfg, t, guess, MomentumForm::Final),
        Method::Rkmk => rkmk_cotangent_step(sys, z0, cfg, t),
        Method::Cg => cg_cotangent_step(sys, z0, cfg, t),
        Method::Sprk => sprk_step_warm(sys, z0, cfg, t, guess),
    }
}

/// Recorded solution of [`integrate`]; index 0 is the initial state.
#[derive(Clone, Debug)]
pub struct Trajectory<G: LieGroup<N>, const N: usize> {
    pub h: f64,
    pub states: Vec<CotangentPoint<G, N>>,
    /// `ℋ(zₖ)` when the system provides an energy.
    pub energies: Vec<Option<f64>>,
    /// Fixed-point sweeps per step (`iterations[k]` produced `states[k + 1]`).
    pub iterations: Vec<usize>,
}

impl<G: LieGroup<N>, const N: usize> Trajectory<G, N> {
    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.h
    }

    pub fn last(&self) -> &CotangentPoint<G, N> {
        self.states.last().expect("trajectory holds the initial state")
    }

    /// `ℋ(zₖ) − ℋ(z₀)` for each recorded state, if energies are available.
    pub fn energy_errors(&self) -> Option<Vec<f64>> {
        let e0 = self.energies.first().copied().flatten()?;
        self.energies.iter().map(|e| e.map(|e| e - e0)).collect()
    }

    pub fn max_iterations(&self) -> usize {
        self.iterations.iter().copied().max().unwrap_or(0)
    }
}

/// Applies `n_steps` steps of `method`, warm-starting each stage solve from
/// the previous step. Failures carry the index of the failing step.
pub fn integrate<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
    method: Method,
    n_steps: usize,
) -> Result<Trajectory<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    integrate_with(sys, z0, cfg.h, n_steps, |z, guess| step(method, sys, z, cfg, t, guess))
}

/// [`integrate`] with an arbitrary step function.
pub fn integrate_with<G, const N: usize, S, F>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    h: f64,
    n_steps: usize,
    mut step_fn: F,
) -> Result<Trajectory<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
    F: FnMut(&CotangentPoint<G, N>, Option<&StageState<N>>) -> Result<StepOutcome<G, N>>,
{
    if n_steps == 0 {
        return Err(Error::InvalidInput("n_steps must be at least 1".into()));
    }
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut energies = Vec::with_capacity(n_steps + 1);
    let mut iterations = Vec::with_capacity(n_steps);
    energies.push(sys.energy(z0)?);
    states.push(z0.clone());
    let mut guess: Option<StageState<N>> = None;
    for k in 0..n_steps {
        let wrap = |e: Error| Error::StepFailed { step: k + 1, source: Box::new(e) };
        let current = states.last().expect("non-empty");
        let out = step_fn(current, guess.as_ref()).map_err(wrap)?;
        if !out.z.is_finite() {
            return Err(wrap(Error::Divergence { iterations: out.iterations, norm: f64::INFINITY }));
        }
        energies.push(sys.energy(&out.z).map_err(wrap)?);
        iterations.push(out.iterations);
        guess = out.stages;
        states.push(out.z);
    }
    Ok(Trajectory { h, states, energies, iterations })
}

/// VCG step with `t1` over `γh` followed by `t2` over `(1−γ)h`.
pub fn compose_steps<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t1: &ButcherTableau,
    t2: &ButcherTableau,
    gamma: f64,
) -> Result<CotangentPoint<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    let z_mid = vcg_step(sys, z0, &cfg.with_h(gamma * cfg.h), t1)?;
    vcg_step(sys, &z_mid, &cfg.with_h((1.0 - gamma) * cfg.h), t2)
}

/// Stacks blocks of `N`-vectors into one flat vector.
pub(crate) fn pack<'a, I>(blocks: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a [f64]>,
{
    blocks.into_iter().flatten().copied().collect()
}

/// Splits `flat` into consecutive blocks of `s` vectors of length `N`.
pub(crate) fn unpack<const N: usize>(flat: &[f64], s: usize) -> impl Iterator<Item = Vec<[f64; N]>> + '_ {
    flat.chunks(s * N).map(move |block| {
        block
            .chunks(N)
            .map(|v| <[f64; N]>::try_from(v).expect("block length"))
            .collect()
    })
}
