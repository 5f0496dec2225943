//! Coordinate vectors for a Lie algebra and its dual.
//!
//! Both live in `ℝᴺ`; the dual basis is chosen so that the pairing
//! `⟨μ, ξ⟩` is the Euclidean dot product of coordinates.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use nalgebra::SVector;

macro_rules! coordinate_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name<const N: usize>(pub SVector<f64, N>);

        impl<const N: usize> $name<N> {
            pub fn zeros() -> Self {
                Self(SVector::zeros())
            }

            pub fn new(coords: SVector<f64, N>) -> Self {
                Self(coords)
            }

            pub fn from_slice(coords: &[f64]) -> Self {
                Self(SVector::from_column_slice(coords))
            }

            /// The `k`-th basis vector.
            pub fn basis(k: usize) -> Self {
                let mut v = SVector::zeros();
                v[k] = 1.0;
                Self(v)
            }

            pub fn coords(&self) -> &SVector<f64, N> {
                &self.0
            }

            pub fn as_slice(&self) -> &[f64] {
                self.0.as_slice()
            }

            pub fn norm(&self) -> f64 {
                self.0.norm()
            }

            pub fn norm_inf(&self) -> f64 {
                self.0.amax()
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().all(|v| v.is_finite())
            }
        }

        impl<const N: usize> From<SVector<f64, N>> for $name<N> {
            fn from(v: SVector<f64, N>) -> Self {
                Self(v)
            }
        }

        impl<const N: usize> From<[f64; N]> for $name<N> {
            fn from(v: [f64; N]) -> Self {
                Self(SVector::from(v))
            }
        }

        impl<const N: usize> Index<usize> for $name<N> {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }

        impl<const N: usize> Add for $name<N> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self(self.0 + rhs.0)
            }
        }

        impl<const N: usize> Sub for $name<N> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self(self.0 - rhs.0)
            }
        }

        impl<const N: usize> AddAssign for $name<N> {
            fn add_assign(&mut self, rhs: Self) {
                self.0 += rhs.0;
            }
        }

        impl<const N: usize> SubAssign for $name<N> {
            fn sub_assign(&mut self, rhs: Self) {
                self.0 -= rhs.0;
            }
        }

        impl<const N: usize> Neg for $name<N> {
            type Output = Self;
            fn neg(self) -> Self {
                Self(-self.0)
            }
        }

        impl<const N: usize> Mul<f64> for $name<N> {
            type Output = Self;
            fn mul(self, rhs: f64) -> Self {
                Self(self.0 * rhs)
            }
        }

        impl<const N: usize> Mul<$name<N>> for f64 {
            type Output = $name<N>;
            fn mul(self, rhs: $name<N>) -> $name<N> {
                $name(rhs.0 * self)
            }
        }

        impl<const N: usize> std::iter::Sum for $name<N> {
            fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
                iter.fold(Self::zeros(), |acc, v| acc + v)
            }
        }
    };
}

coordinate_vector!(
    /// Element `ξ` of the Lie algebra 𝔤 in a fixed basis.
    AlgebraVector
);

coordinate_vector!(
    /// Element `μ` of the dual 𝔤* in the dual basis.
    CoVector
);

impl<const N: usize> CoVector<N> {
    /// The duality pairing `⟨μ, ξ⟩`.
    pub fn pair(&self, xi: &AlgebraVector<N>) -> f64 {
        self.0.dot(&xi.0)
    }
}
