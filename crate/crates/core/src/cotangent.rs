//! The right-trivialized cotangent bundle `T*G ≅ G × 𝔤*` as a Lie group.
//!
//! Product `(g, μ)(h, ν) = (gh, μ + Ad*_{g⁻¹} ν)`, algebra `𝔤 × 𝔤*` with
//! bracket `[(ξ, μ), (η, ν)] = (ad_ξ η, ad*_η μ − ad*_ξ ν)`.
//! Tangent vectors at `(q, μ)` are stored trivialized as `(η, ρ) = (δq·q⁻¹, δμ)`.

use nalgebra::DMatrix;

use crate::lie::{AlgebraVector, CoVector, LieGroup};

/// Phase point `z = (q, μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CotangentPoint<G: LieGroup<N>, const N: usize> {
    pub q: G::Element,
    pub mu: CoVector<N>,
}

impl<G: LieGroup<N>, const N: usize> CotangentPoint<G, N> {
    pub fn new(q: G::Element, mu: CoVector<N>) -> Self {
        Self { q, mu }
    }

    pub fn identity() -> Self {
        Self { q: G::identity(), mu: CoVector::zeros() }
    }

    pub fn is_finite(&self) -> bool {
        G::is_finite(&self.q) && self.mu.is_finite()
    }

    /// `‖μ − ν‖₂ + d(q, p)`, the error measure of the order studies.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.mu - other.mu).norm() + G::distance(&self.q, &other.q)
    }
}

/// Element `ζ = (ξ, ν)` of the algebra `𝔤 × 𝔤*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BigAlgebraElement<const N: usize> {
    pub xi: AlgebraVector<N>,
    pub nu: CoVector<N>,
}

impl<const N: usize> BigAlgebraElement<N> {
    pub fn new(xi: AlgebraVector<N>, nu: CoVector<N>) -> Self {
        Self { xi, nu }
    }

    pub fn zeros() -> Self {
        Self { xi: AlgebraVector::zeros(), nu: CoVector::zeros() }
    }

    pub fn is_finite(&self) -> bool {
        self.xi.is_finite() && self.nu.is_finite()
    }
}

/// Trivialized tangent vector `(η, ρ)` at a phase point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentVector<const N: usize> {
    pub eta: AlgebraVector<N>,
    pub rho: CoVector<N>,
}

impl<const N: usize> TangentVector<N> {
    pub fn new(eta: AlgebraVector<N>, rho: CoVector<N>) -> Self {
        Self { eta, rho }
    }

    /// The `k`-th vector of the frame `(e₁,0), …, (e_N,0), (0,e₁), …, (0,e_N)`.
    pub fn basis(k: usize) -> Self {
        if k < N {
            Self { eta: AlgebraVector::basis(k), rho: CoVector::zeros() }
        } else {
            Self { eta: AlgebraVector::zeros(), rho: CoVector::basis(k - N) }
        }
    }

    /// Coordinates `(η, ρ)` stacked into a length-`2N` vector.
    pub fn to_vec(&self) -> Vec<f64> {
        self.eta.as_slice().iter().chain(self.rho.as_slice()).copied().collect()
    }
}

pub fn ct_identity<G: LieGroup<N>, const N: usize>() -> CotangentPoint<G, N> {
    CotangentPoint::identity()
}

pub fn ct_product<G: LieGroup<N>, const N: usize>(
    a: &CotangentPoint<G, N>,
    b: &CotangentPoint<G, N>,
) -> CotangentPoint<G, N> {
    let g_inv = G::inverse(&a.q);
    CotangentPoint {
        q: G::compose(&a.q, &b.q),
        mu: a.mu + G::coadjoint(&g_inv, &b.mu),
    }
}

/// `(g, μ)⁻¹ = (g⁻¹, −Ad*_g μ)`
pub fn ct_inverse<G: LieGroup<N>, const N: usize>(a: &CotangentPoint<G, N>) -> CotangentPoint<G, N> {
    CotangentPoint {
        q: G::inverse(&a.q),
        mu: -G::coadjoint(&a.q, &a.mu),
    }
}

pub fn big_bracket<G: LieGroup<N>, const N: usize>(
    a: &BigAlgebraElement<N>,
    b: &BigAlgebraElement<N>,
) -> BigAlgebraElement<N> {
    BigAlgebraElement {
        xi: G::bracket(&a.xi, &b.xi),
        nu: G::ad_star(&b.xi, &a.nu) - G::ad_star(&a.xi, &b.nu),
    }
}

/// `TR_z ζ = (η·q, ν − ad*_η μ)`, returned trivialized.
pub fn right_translate<G: LieGroup<N>, const N: usize>(
    z: &CotangentPoint<G, N>,
    zeta: &BigAlgebraElement<N>,
) -> TangentVector<N> {
    TangentVector {
        eta: zeta.xi,
        rho: zeta.nu - G::ad_star(&zeta.xi, &z.mu),
    }
}

/// Sign `s` of the curvature term in the trivialized canonical two-form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormSign {
    Positive,
    Negative,
}

impl FormSign {
    pub fn value(self) -> f64 {
        match self {
            FormSign::Positive => 1.0,
            FormSign::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            FormSign::Positive => FormSign::Negative,
            FormSign::Negative => FormSign::Positive,
        }
    }
}

/// `ω_z(t₁, t₂) = ⟨ρ₂, η₁⟩ − ⟨ρ₁, η₂⟩ + s⟨μ, [η₁, η₂]⟩`
pub fn two_form<G: LieGroup<N>, const N: usize>(
    z: &CotangentPoint<G, N>,
    t1: &TangentVector<N>,
    t2: &TangentVector<N>,
    sign: FormSign,
) -> f64 {
    t2.rho.pair(&t1.eta) - t1.rho.pair(&t2.eta)
        + sign.value() * z.mu.pair(&G::bracket(&t1.eta, &t2.eta))
}

/// Matrix `Ω` with `ω_z(t₁, t₂) = t₁ᵀ Ω t₂` in the frame of [`TangentVector::basis`].
pub fn two_form_matrix<G: LieGroup<N>, const N: usize>(
    z: &CotangentPoint<G, N>,
    sign: FormSign,
) -> DMatrix<f64> {
    DMatrix::from_fn(2 * N, 2 * N, |i, j| {
        two_form(z, &TangentVector::basis(i), &TangentVector::basis(j), sign)
    })
}
