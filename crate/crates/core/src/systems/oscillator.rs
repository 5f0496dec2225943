//! Anharmonic oscillator `ℋ(q, p) = ½|p|² + ½k|q|² + (c/4)|q|⁴` on the
//! abelian group `ℝᴺ`, where trivialized and canonical coordinates agree.

use nalgebra::SVector;

use super::TrivializedSystem;
use crate::cotangent::{BigAlgebraElement, CotangentPoint};
use crate::error::Result;
use crate::lie::{Abelian, AlgebraVector, CoVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbelianOscillator {
    pub stiffness: f64,
    pub quartic: f64,
}

impl Default for AbelianOscillator {
    /// Harmonic oscillator with unit frequency.
    fn default() -> Self {
        Self { stiffness: 1.0, quartic: 0.0 }
    }
}

impl AbelianOscillator {
    pub fn new(stiffness: f64, quartic: f64) -> Self {
        Self { stiffness, quartic }
    }

    pub fn energy<const N: usize>(&self, z: &CotangentPoint<Abelian<N>, N>) -> f64 {
        let q2 = z.q.norm_squared();
        0.5 * z.mu.0.norm_squared() + 0.5 * self.stiffness * q2 + 0.25 * self.quartic * q2 * q2
    }

    pub fn f<const N: usize>(&self, z: &CotangentPoint<Abelian<N>, N>) -> BigAlgebraElement<N> {
        let q: &SVector<f64, N> = &z.q;
        let force = -(q * (self.stiffness + self.quartic * q.norm_squared()));
        BigAlgebraElement::new(AlgebraVector(z.mu.0), CoVector(force))
    }
}

impl<const N: usize> TrivializedSystem<Abelian<N>, N> for AbelianOscillator {
    fn f_map(&self, z: &CotangentPoint<Abelian<N>, N>) -> Result<BigAlgebraElement<N>> {
        Ok(self.f(z))
    }

    fn energy(&self, z: &CotangentPoint<Abelian<N>, N>) -> Result<Option<f64>> {
        Ok(Some(AbelianOscillator::energy(self, z)))
    }
}
