//! Truncated Bernoulli series for `dexp⁻¹` and the adjoint of its
//! derivative with respect to the base point.
//!
//! ```text
//! dexp⁻¹₍ᵣ₎,ₓ = id − ½ ad_x + Σₖ₌₂ʳ (Bₖ/k!) ad_xᵏ        (r ≥ 1; identity for r = 0)
//! P*₍ᵣ₎(x, ξ) = ½ ad*_ξ − Σₖ₌₂ʳ (Bₖ/k!) Σᵢ₌₀ᵏ⁻¹ ad*_{ad_xⁱ ξ} (ad*_x)ᵏ⁻ⁱ⁻¹
//! ```
//!
//! `P*₍ᵣ₎(x, ξ)` is the dual of `δx ↦ ∂/∂x (dexp⁻¹₍ᵣ₎,ₓ ξ)·δx`.

use super::{AlgebraVector, CoVector, LieGroup};
use crate::error::{Error, Result};

/// Largest supported truncation degree.
pub const MAX_CUTOFF: usize = 6;

/// Bernoulli numbers `B₀ … B₆` (convention `B₁ = −½`) as exact fractions.
const BERNOULLI: [(i64, i64); MAX_CUTOFF + 1] =
    [(1, 1), (-1, 2), (1, 6), (0, 1), (-1, 30), (0, 1), (1, 42)];

/// `Bₖ` for `k ≤ 6`.
pub fn bernoulli(k: usize) -> Option<f64> {
    BERNOULLI.get(k).map(|&(n, d)| n as f64 / d as f64)
}

/// `Bₖ / k!`
fn series_coeff(k: usize) -> f64 {
    let (n, d) = BERNOULLI[k];
    let factorial: i64 = (1..=k as i64).product();
    n as f64 / (d * factorial) as f64
}

/// Validated truncation degree `r ∈ {0, …, 6}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cutoff(usize);

impl Cutoff {
    pub fn new(r: usize) -> Result<Self> {
        if r > MAX_CUTOFF {
            return Err(Error::InvalidInput(format!(
                "cut-off r = {r} outside 0..={MAX_CUTOFF}"
            )));
        }
        Ok(Cutoff(r))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Cutoff {
    type Error = Error;
    fn try_from(r: usize) -> Result<Self> {
        Cutoff::new(r)
    }
}

impl std::fmt::Display for Cutoff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `dexp⁻¹₍ᵣ₎,ₓ y`
pub fn dexpinv_trunc<G: LieGroup<N>, const N: usize>(
    r: Cutoff,
    x: &AlgebraVector<N>,
    y: &AlgebraVector<N>,
) -> AlgebraVector<N> {
    if r.0 == 0 {
        return *y;
    }
    let mut ad_pow = G::bracket(x, y);
    let mut out = *y - ad_pow * 0.5;
    for k in 2..=r.0 {
        ad_pow = G::bracket(x, &ad_pow);
        let c = series_coeff(k);
        if c != 0.0 {
            out += ad_pow * c;
        }
    }
    out
}

/// `(dexp⁻¹₍ᵣ₎,ₓ)* μ`
pub fn dexpinv_trunc_star<G: LieGroup<N>, const N: usize>(
    r: Cutoff,
    x: &AlgebraVector<N>,
    mu: &CoVector<N>,
) -> CoVector<N> {
    if r.0 == 0 {
        return *mu;
    }
    let mut ad_pow = G::ad_star(x, mu);
    let mut out = *mu - ad_pow * 0.5;
    for k in 2..=r.0 {
        ad_pow = G::ad_star(x, &ad_pow);
        let c = series_coeff(k);
        if c != 0.0 {
            out += ad_pow * c;
        }
    }
    out
}

/// `P*₍ᵣ₎(x, ξ) μ`
pub fn p_star_poly<G: LieGroup<N>, const N: usize>(
    r: Cutoff,
    x: &AlgebraVector<N>,
    xi: &AlgebraVector<N>,
    mu: &CoVector<N>,
) -> CoVector<N> {
    if r.0 == 0 {
        return CoVector::zeros();
    }
    let mut out = G::ad_star(xi, mu) * 0.5;
    if r.0 < 2 {
        return out;
    }
    // (ad*_x)ʲ μ for j = 0..r-1 and ad_xⁱ ξ for i = 0..r-1
    let mut star_pows = Vec::with_capacity(r.0);
    let mut ad_pows = Vec::with_capacity(r.0);
    star_pows.push(*mu);
    ad_pows.push(*xi);
    for j in 1..r.0 {
        star_pows.push(G::ad_star(x, &star_pows[j - 1]));
        ad_pows.push(G::bracket(x, &ad_pows[j - 1]));
    }
    for k in 2..=r.0 {
        let c = series_coeff(k);
        if c == 0.0 {
            continue;
        }
        let inner: CoVector<N> = (0..k)
            .map(|i| G::ad_star(&ad_pows[i], &star_pows[k - i - 1]))
            .sum();
        out -= inner * c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::So3;

    #[test]
    fn cutoff_range() {
        assert!(Cutoff::new(6).is_ok());
        assert!(matches!(Cutoff::new(7), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn degree_zero_is_identity() {
        let r = Cutoff::new(0).unwrap();
        let x = AlgebraVector::from([0.3, -0.2, 0.9]);
        let y = AlgebraVector::from([1.0, 2.0, 3.0]);
        let mu = CoVector::from([-1.0, 0.5, 0.25]);
        assert_eq!(dexpinv_trunc::<So3, 3>(r, &x, &y), y);
        assert_eq!(dexpinv_trunc_star::<So3, 3>(r, &x, &mu), mu);
        assert_eq!(p_star_poly::<So3, 3>(r, &x, &y, &mu), CoVector::zeros());
    }

    #[test]
    fn degree_one_subtracts_half_bracket() {
        let r = Cutoff::new(1).unwrap();
        let x = AlgebraVector::from([0.3, -0.2, 0.9]);
        let y = AlgebraVector::from([1.0, 2.0, 3.0]);
        let expected = y - So3::bracket(&x, &y) * 0.5;
        assert_eq!(dexpinv_trunc::<So3, 3>(r, &x, &y), expected);
        let mu = CoVector::from([-1.0, 0.5, 0.25]);
        assert_eq!(
            p_star_poly::<So3, 3>(r, &x, &y, &mu),
            So3::ad_star(&y, &mu) * 0.5
        );
    }

    #[test]
    fn degree_two_matches_explicit_operator_form() {
        // ½ad*_ξ − ⅙ad*_ξ ad*_x + 1/12 ad*_x ad*_ξ
        let r = Cutoff::new(2).unwrap();
        let x = AlgebraVector::from([0.3, -0.2, 0.9]);
        let xi = AlgebraVector::from([1.0, 2.0, -3.0]);
        let mu = CoVector::from([-1.0, 0.5, 0.25]);
        let expected = So3::ad_star(&xi, &mu) * 0.5
            - So3::ad_star(&xi, &So3::ad_star(&x, &mu)) * (1.0 / 6.0)
            + So3::ad_star(&x, &So3::ad_star(&xi, &mu)) * (1.0 / 12.0);
        let got = p_star_poly::<So3, 3>(r, &x, &xi, &mu);
        assert!((got - expected).norm_inf() < 1e-15);
    }
}
