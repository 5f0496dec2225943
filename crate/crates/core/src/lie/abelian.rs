//! The abelian vector group `(ℝᴺ, +)`.
//!
//! Every bracket vanishes, so `exp`, `Ad`, `dexp` and their duals reduce
//! to identities on coordinates. Used as a cross-check: on this group the
//! variational Lie group methods collapse to classical partitioned
//! Runge–Kutta methods.

use nalgebra::SVector;

use super::{AlgebraVector, CoVector, LieGroup};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Abelian<const N: usize>;

impl<const N: usize> LieGroup<N> for Abelian<N> {
    type Element = SVector<f64, N>;
    const NAME: &'static str = "R^n";
    const IS_ABELIAN: bool = true;

    fn identity() -> SVector<f64, N> {
        SVector::zeros()
    }

    fn compose(a: &SVector<f64, N>, b: &SVector<f64, N>) -> SVector<f64, N> {
        a + b
    }

    fn inverse(g: &SVector<f64, N>) -> SVector<f64, N> {
        -g
    }

    fn exp(x: &AlgebraVector<N>) -> SVector<f64, N> {
        x.0
    }

    fn log(g: &SVector<f64, N>) -> Result<AlgebraVector<N>> {
        Ok(AlgebraVector(*g))
    }

    fn bracket(_x: &AlgebraVector<N>, _y: &AlgebraVector<N>) -> AlgebraVector<N> {
        AlgebraVector::zeros()
    }

    fn ad_star(_x: &AlgebraVector<N>, _mu: &CoVector<N>) -> CoVector<N> {
        CoVector::zeros()
    }

    fn adjoint(_g: &SVector<f64, N>, x: &AlgebraVector<N>) -> AlgebraVector<N> {
        *x
    }

    fn coadjoint(_g: &SVector<f64, N>, mu: &CoVector<N>) -> CoVector<N> {
        *mu
    }

    fn dexp(_x: &AlgebraVector<N>, y: &AlgebraVector<N>) -> AlgebraVector<N> {
        *y
    }

    fn dexp_star(_x: &AlgebraVector<N>, mu: &CoVector<N>) -> CoVector<N> {
        *mu
    }

    fn dexpinv(_x: &AlgebraVector<N>, y: &AlgebraVector<N>) -> Result<AlgebraVector<N>> {
        Ok(*y)
    }

    fn dexpinv_star(_x: &AlgebraVector<N>, mu: &CoVector<N>) -> Result<CoVector<N>> {
        Ok(*mu)
    }

    fn distance(a: &SVector<f64, N>, b: &SVector<f64, N>) -> f64 {
        (a - b).norm()
    }

    fn is_finite(g: &SVector<f64, N>) -> bool {
        g.iter().all(|v| v.is_finite())
    }
}
