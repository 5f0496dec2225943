//! Trivialized Hamiltonian systems `ż = f(z)·z` on `G × 𝔤*`.
//!
//! A system supplies the map `f: G × 𝔤* → 𝔤 × 𝔤*`; for a regular
//! Hamiltonian `ℋ` it is `f(q, μ) = (D₂ℋ, −(D₁ℋ)·q⁻¹)`. Group-only
//! problems `q̇ = f(q)·q` implement [`GroupVectorField`] instead.

mod dipole;
mod nonregular;
mod oscillator;

pub use dipole::{Dipole, DipoleParams};
pub use nonregular::NonRegular;
pub use oscillator::AbelianOscillator;

use crate::cotangent::{BigAlgebraElement, CotangentPoint};
use crate::error::Result;
use crate::lie::{AlgebraVector, CoVector, LieGroup};

pub trait TrivializedSystem<G: LieGroup<N>, const N: usize>: Send + Sync {
    fn f_map(&self, z: &CotangentPoint<G, N>) -> Result<BigAlgebraElement<N>>;

    /// `ℋ(z)`, or `None` when the system carries no energy.
    fn energy(&self, _z: &CotangentPoint<G, N>) -> Result<Option<f64>> {
        Ok(None)
    }
}

impl<G: LieGroup<N>, const N: usize, S: TrivializedSystem<G, N> + ?Sized> TrivializedSystem<G, N> for &S {
    fn f_map(&self, z: &CotangentPoint<G, N>) -> Result<BigAlgebraElement<N>> {
        (**self).f_map(z)
    }

    fn energy(&self, z: &CotangentPoint<G, N>) -> Result<Option<f64>> {
        (**self).energy(z)
    }
}

/// Right-trivialized vector field `q̇ = f(q)·q` on `G`.
pub trait GroupVectorField<G: LieGroup<N>, const N: usize>: Send + Sync {
    fn eval(&self, q: &G::Element) -> Result<AlgebraVector<N>>;
}

/// Adapter turning a closure into a [`TrivializedSystem`] without energy.
pub struct FnSystem<F>(pub F);

impl<G, const N: usize, F> TrivializedSystem<G, N> for FnSystem<F>
where
    G: LieGroup<N>,
    F: Fn(&CotangentPoint<G, N>) -> BigAlgebraElement<N> + Send + Sync,
{
    fn f_map(&self, z: &CotangentPoint<G, N>) -> Result<BigAlgebraElement<N>> {
        Ok((self.0)(z))
    }
}

/// Adapter turning a closure into a [`GroupVectorField`].
pub struct FnField<F>(pub F);

impl<G, const N: usize, F> GroupVectorField<G, N> for FnField<F>
where
    G: LieGroup<N>,
    F: Fn(&G::Element) -> AlgebraVector<N> + Send + Sync,
{
    fn eval(&self, q: &G::Element) -> Result<AlgebraVector<N>> {
        Ok((self.0)(q))
    }
}

/// `f ≡ 0`, the system with `ℋ ≡ 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroSystem;

impl<G: LieGroup<N>, const N: usize> TrivializedSystem<G, N> for ZeroSystem {
    fn f_map(&self, _z: &CotangentPoint<G, N>) -> Result<BigAlgebraElement<N>> {
        Ok(BigAlgebraElement::zeros())
    }

    fn energy(&self, _z: &CotangentPoint<G, N>) -> Result<Option<f64>> {
        Ok(Some(0.0))
    }
}

impl<G: LieGroup<N>, const N: usize> GroupVectorField<G, N> for ZeroSystem {
    fn eval(&self, _q: &G::Element) -> Result<AlgebraVector<N>> {
        Ok(AlgebraVector::zeros())
    }
}

/// Central-difference approximation of `f(q, μ) = (D₂ℋ, −(D₁ℋ)·q⁻¹)`.
///
/// The group derivative is taken along `ε ↦ exp(ε eₖ) q`. Test oracle only;
/// production systems differentiate analytically.
pub fn fd_f_from_energy<G, const N: usize, E>(
    energy: E,
    z: &CotangentPoint<G, N>,
    step: f64,
) -> Result<BigAlgebraElement<N>>
where
    G: LieGroup<N>,
    E: Fn(&CotangentPoint<G, N>) -> Result<f64>,
{
    let mut xi = AlgebraVector::zeros();
    let mut nu = CoVector::zeros();
    for k in 0..N {
        let dmu = CoVector::<N>::basis(k) * step;
        let plus = energy(&CotangentPoint::new(z.q.clone(), z.mu + dmu))?;
        let minus = energy(&CotangentPoint::new(z.q.clone(), z.mu - dmu))?;
        xi.0[k] = (plus - minus) / (2.0 * step);

        let eta = AlgebraVector::<N>::basis(k) * step;
        let plus = energy(&CotangentPoint::new(G::exp_mul(&eta, &z.q), z.mu))?;
        let minus = energy(&CotangentPoint::new(G::exp_mul(&-eta, &z.q), z.mu))?;
        nu.0[k] = -(plus - minus) / (2.0 * step);
    }
    Ok(BigAlgebraElement::new(xi, nu))
}
