//! Lie group and Lie algebra kernels.
//!
//! A group is described by a zero-sized type implementing [`LieGroup`]. The
//! algebra 𝔤 and its dual 𝔤* are both coordinatized by `ℝᴺ`
//! ([`AlgebraVector`], [`CoVector`]) with the dual basis chosen so that the
//! pairing is the dot product. All translations are right-trivialized:
//! a curve `q(t)` has velocity `q̇ = ξ·q`, and
//!
//! * `Ad_g x = g x g⁻¹`, `ad_x y = [x, y]`,
//! * `dexp_x = Σₖ ad_xᵏ / (k+1)!`, so that `d/dt exp(x(t)) = dexp_x(ẋ)·exp(x)`,
//! * starred maps are duals: `⟨A* μ, y⟩ = ⟨μ, A y⟩`.
//!
//! Two instances are provided: rotations [`So3`] and the abelian vector
//! group [`Abelian`].

mod abelian;
mod so3;
mod truncated;
mod vector;

pub use abelian::Abelian;
pub use so3::{hat, orthogonality_defect, vee, So3};
pub(crate) use so3::vee_skew_part as so3_vee_skew_part;
pub use truncated::{bernoulli, dexpinv_trunc, dexpinv_trunc_star, p_star_poly, Cutoff, MAX_CUTOFF};
pub use vector::{AlgebraVector, CoVector};

use std::fmt::Debug;

use crate::error::Result;

/// Capabilities of a matrix-free Lie group of dimension `N`.
///
/// Implementors are stateless marker types; every operation is a pure
/// function of its arguments.
pub trait LieGroup<const N: usize>: Copy + Clone + Debug + PartialEq + Send + Sync + 'static {
    type Element: Clone + Debug + PartialEq + Send + Sync;

    /// Short identifier used in reports.
    const NAME: &'static str;

    /// True when all brackets vanish.
    const IS_ABELIAN: bool = false;

    fn identity() -> Self::Element;
    fn compose(a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(g: &Self::Element) -> Self::Element;

    fn exp(x: &AlgebraVector<N>) -> Self::Element;
    /// Principal logarithm.
    fn log(g: &Self::Element) -> Result<AlgebraVector<N>>;

    fn bracket(x: &AlgebraVector<N>, y: &AlgebraVector<N>) -> AlgebraVector<N>;
    /// `ad*_x μ`, defined by `⟨ad*_x μ, y⟩ = ⟨μ, [x, y]⟩`.
    fn ad_star(x: &AlgebraVector<N>, mu: &CoVector<N>) -> CoVector<N>;

    /// `Ad_g x`.
    fn adjoint(g: &Self::Element, x: &AlgebraVector<N>) -> AlgebraVector<N>;
    /// `Ad*_g μ`, the dual of `Ad_g`.
    fn coadjoint(g: &Self::Element, mu: &CoVector<N>) -> CoVector<N>;

    fn dexp(x: &AlgebraVector<N>, y: &AlgebraVector<N>) -> AlgebraVector<N>;
    fn dexp_star(x: &AlgebraVector<N>, mu: &CoVector<N>) -> CoVector<N>;
    fn dexpinv(x: &AlgebraVector<N>, y: &AlgebraVector<N>) -> Result<AlgebraVector<N>>;
    fn dexpinv_star(x: &AlgebraVector<N>, mu: &CoVector<N>) -> Result<CoVector<N>>;

    /// Distance used for error measurements (subordinate 2-norm of the
    /// difference for matrix groups).
    fn distance(a: &Self::Element, b: &Self::Element) -> f64;

    fn is_finite(g: &Self::Element) -> bool;

    /// Distance of a stored element from the group manifold (zero for
    /// groups whose elements cannot leave it).
    fn manifold_defect(_g: &Self::Element) -> f64 {
        0.0
    }

    /// `exp(x)·g`.
    fn exp_mul(x: &AlgebraVector<N>, g: &Self::Element) -> Self::Element {
        Self::compose(&Self::exp(x), g)
    }
}
