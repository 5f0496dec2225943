use super::StepConfig;
use crate::error::{Error, Result};

/// States whose sup-norm exceeds this are treated as divergent.
pub const DIVERGENCE_NORM: f64 = 1e6;

/// A sweep whose change no longer decreases is accepted once the change is
/// within this multiple of the tolerance: the iteration has reached the
/// rounding floor of a slowly contracting map.
pub const STAGNATION_FACTOR: f64 = 100.0;

/// Converged fixed point together with the number of sweeps used.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub state: Vec<f64>,
    pub iterations: usize,
}

/// Iterates `x ← sweep(x)` until `max |Δxₖ| ≤ fp_tol·(1 + ‖x‖∞)`.
///
/// A guess that is already a fixed point is returned after one sweep. See
/// [`STAGNATION_FACTOR`] for the rounding-floor exit.
pub fn fixed_point_solve<F>(mut sweep: F, guess: Vec<f64>, cfg: &StepConfig) -> Result<FixedPoint>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let mut state = guess;
    let mut change = f64::INFINITY;
    for iteration in 1..=cfg.fp_max_iter {
        let next = sweep(&state)?;
        debug_assert_eq!(next.len(), state.len());
        let norm = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !norm.is_finite() || norm > DIVERGENCE_NORM {
            return Err(Error::Divergence { iterations: iteration, norm });
        }
        let previous = change;
        change = next
            .iter()
            .zip(&state)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        state = next;
        let tol = cfg.fp_tol * (1.0 + norm);
        if change <= tol || (change >= previous && change <= STAGNATION_FACTOR * tol) {
            return Ok(FixedPoint { state, iterations: iteration });
        }
    }
    Err(Error::NoConvergence { iterations: cfg.fp_max_iter, change })
}
