//! Symplectic Lie group integrators on right-trivialized cotangent bundles.
//!
//! The crate is organized bottom-up:
//!
//! * [`lie`]: group and algebra kernels (`SO(3)` and `ℝᴺ`), `dexp`, `dexp⁻¹`
//!   and their truncated series;
//! * [`cotangent`]: `G × 𝔤*` as a Lie group and its canonical two-form;
//! * [`systems`]: Hamiltonian problems given by their map `f: G × 𝔤* → 𝔤 × 𝔤*`;
//! * [`tableau`]: Butcher tableaux and their composition;
//! * [`integrators`]: one-step maps and the trajectory driver;
//! * [`harness`]: order studies, long runs and symplecticity checks.

pub mod calibration;
pub mod cotangent;
pub mod error;
pub mod harness;
pub mod integrators;
pub mod lie;
pub mod systems;
pub mod tableau;

pub use cotangent::{CotangentPoint, FormSign};
pub use error::{Error, Result};
pub use integrators::{integrate, Method, StepConfig, Trajectory};
pub use lie::{AlgebraVector, CoVector, Cutoff, LieGroup, So3};
pub use tableau::ButcherTableau;
