//! Runge–Kutta–Munthe-Kaas and Crouch–Grossman methods for `q̇ = f(q)·q`.

use super::{fixed_point_solve, pack, unpack, StepConfig};
use crate::error::Result;
use crate::lie::{dexpinv_trunc, AlgebraVector, LieGroup};
use crate::systems::GroupVectorField;
use crate::tableau::ButcherTableau;

/// ```text
/// xᵢ = h Σⱼ aᵢⱼ dexp⁻¹₍ᵣ₎,xⱼ ξⱼ,   ξᵢ = f(exp(xᵢ) q₀),   q₁ = exp(h Σᵢ bᵢ dexp⁻¹₍ᵣ₎,xᵢ ξᵢ) q₀
/// ```
pub fn rkmk_group_step<G, const N: usize, F>(
    field: &F,
    q0: &G::Element,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<G::Element>
where
    G: LieGroup<N>,
    F: GroupVectorField<G, N> + ?Sized,
{
    cfg.validate()?;
    let s = t.stages();
    let h = cfg.h;
    let r = cfg.cutoff_for(t);
    let xi_at = |x: &[AlgebraVector<N>]| -> Result<Vec<AlgebraVector<N>>> {
        x.iter().map(|xi| field.eval(&G::exp_mul(xi, q0))).collect()
    };
    let f0 = field.eval(q0)?;
    let guess: Vec<AlgebraVector<N>> = (0..s).map(|i| f0 * (h * t.c(i))).collect();

    let solved = fixed_point_solve(
        |flat| {
            let x: Vec<AlgebraVector<N>> =
                unpack::<N>(flat, s).next().unwrap().into_iter().map(AlgebraVector::from).collect();
            let xi = xi_at(&x)?;
            let x_new: Vec<AlgebraVector<N>> = (0..s)
                .map(|i| {
                    (0..s)
                        .filter(|&j| t.a(i, j) != 0.0)
                        .map(|j| dexpinv_trunc::<G, N>(r, &x[j], &xi[j]) * (h * t.a(i, j)))
                        .sum()
                })
                .collect();
            Ok(pack(x_new.iter().map(|v| v.as_slice())))
        },
        pack(guess.iter().map(|v| v.as_slice())),
        cfg,
    )?;

    let x: Vec<AlgebraVector<N>> =
        unpack::<N>(&solved.state, s).next().unwrap().into_iter().map(AlgebraVector::from).collect();
    let xi = xi_at(&x)?;
    let y: AlgebraVector<N> = (0..s).map(|i| dexpinv_trunc::<G, N>(r, &x[i], &xi[i]) * (h * t.b(i))).sum();
    Ok(G::exp_mul(&y, q0))
}

/// ```text
/// Qᵢ = exp(h aᵢₛ ξₛ) ⋯ exp(h aᵢ₁ ξ₁) q₀,   ξᵢ = f(Qᵢ),   q₁ = exp(h bₛ ξₛ) ⋯ exp(h b₁ ξ₁) q₀
/// ```
pub fn cg_group_step<G, const N: usize, F>(
    field: &F,
    q0: &G::Element,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<G::Element>
where
    G: LieGroup<N>,
    F: GroupVectorField<G, N> + ?Sized,
{
    cfg.validate()?;
    let s = t.stages();
    let h = cfg.h;
    let chain = |coeff: &dyn Fn(usize) -> f64, xi: &[AlgebraVector<N>]| {
        (0..s).fold(q0.clone(), |q, j| {
            let c = coeff(j);
            if c == 0.0 {
                q
            } else {
                G::exp_mul(&(xi[j] * (h * c)), &q)
            }
        })
    };
    let f0 = field.eval(q0)?;

    let solved = fixed_point_solve(
        |flat| {
            let xi: Vec<AlgebraVector<N>> =
                unpack::<N>(flat, s).next().unwrap().into_iter().map(AlgebraVector::from).collect();
            let xi_new = (0..s)
                .map(|i| field.eval(&chain(&|j| t.a(i, j), &xi)))
                .collect::<Result<Vec<_>>>()?;
            Ok(pack(xi_new.iter().map(|v| v.as_slice())))
        },
        pack(std::iter::repeat(f0.as_slice()).take(s)),
        cfg,
    )?;

    let xi: Vec<AlgebraVector<N>> =
        unpack::<N>(&solved.state, s).next().unwrap().into_iter().map(AlgebraVector::from).collect();
    Ok(chain(&|j| t.b(j), &xi))
}
