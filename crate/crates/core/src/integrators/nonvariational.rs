//! Lie group methods applied to `ż = f(z)·z` on `G × 𝔤*` without the
//! variational structure. `G × 𝔤*` is treated as the direct product of `G`
//! with the vector group `𝔤*`, on which the momentum equation reads
//! `μ̇ = n − ad*_ξ μ`. None of these maps is symplectic.

use super::{fixed_point_solve, pack, unpack, StepConfig, StepOutcome};
use crate::cotangent::CotangentPoint;
use crate::error::Result;
use crate::lie::{dexpinv_trunc, AlgebraVector, CoVector, LieGroup};
use crate::systems::{GroupVectorField, TrivializedSystem};
use crate::tableau::ButcherTableau;

use super::rkmk_group_step;

/// Velocity `(ξ, n − ad*_ξ μ)` of the product-group formulation.
fn velocity<G, const N: usize, S>(sys: &S, q: G::Element, mu: CoVector<N>) -> Result<(AlgebraVector<N>, CoVector<N>)>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    let f = sys.f_map(&CotangentPoint::new(q, mu))?;
    Ok((f.xi, f.nu - G::ad_star(&f.xi, &mu)))
}

/// RKMK on the product group: stage unknowns `(xᵢ, mᵢ)` with
/// `Qᵢ = exp(xᵢ) q₀`, `Mᵢ = μ₀ + mᵢ`.
pub fn rkmk_cotangent_step<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<StepOutcome<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    cfg.validate()?;
    let s = t.stages();
    let h = cfg.h;
    let r = cfg.cutoff_for(t);
    let stage_velocities = |x: &[AlgebraVector<N>], m: &[CoVector<N>]| {
        (0..s)
            .map(|i| velocity(sys, G::exp_mul(&x[i], &z0.q), z0.mu + m[i]))
            .collect::<Result<Vec<_>>>()
    };
    let increments = |x: &[AlgebraVector<N>], k: &[(AlgebraVector<N>, CoVector<N>)], w: &dyn Fn(usize) -> f64| {
        let mut dx = AlgebraVector::zeros();
        let mut dm = CoVector::zeros();
        for j in 0..s {
            let c = w(j);
            if c != 0.0 {
                dx += dexpinv_trunc::<G, N>(r, &x[j], &k[j].0) * (h * c);
                dm += k[j].1 * (h * c);
            }
        }
        (dx, dm)
    };
    let (xi0, dmu0) = velocity(sys, z0.q.clone(), z0.mu)?;
    let guess = pack(
        (0..s)
            .map(|i| (xi0 * (h * t.c(i))).0)
            .chain((0..s).map(|i| (dmu0 * (h * t.c(i))).0))
            .collect::<Vec<_>>()
            .iter()
            .map(|v| v.as_slice()),
    );

    let split = |flat: &[f64]| {
        let mut blocks = unpack::<N>(flat, s);
        let x: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
        let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
        (x, m)
    };

    let solved = fixed_point_solve(
        |flat| {
            let (x, m) = split(flat);
            let k = stage_velocities(&x, &m)?;
            let new: Vec<_> = (0..s).map(|i| increments(&x, &k, &|j| t.a(i, j))).collect();
            Ok(pack(
                new.iter().map(|(dx, _)| dx.as_slice()).chain(new.iter().map(|(_, dm)| dm.as_slice())),
            ))
        },
        guess,
        cfg,
    )?;

    let (x, m) = split(&solved.state);
    let k = stage_velocities(&x, &m)?;
    let (y, dm) = increments(&x, &k, &|j| t.b(j));
    Ok(StepOutcome {
        z: CotangentPoint::new(G::exp_mul(&y, &z0.q), z0.mu + dm),
        iterations: solved.iterations,
        stages: None,
    })
}

/// Crouch–Grossman on the product group: stage unknowns `(ξᵢ, kᵢ)`, the
/// velocities of `q` and `μ`.
pub fn cg_cotangent_step<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<StepOutcome<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    cfg.validate()?;
    let s = t.stages();
    let h = cfg.h;
    let advance = |xi: &[AlgebraVector<N>], k: &[CoVector<N>], w: &dyn Fn(usize) -> f64| {
        let mut q = z0.q.clone();
        let mut mu = z0.mu;
        for j in 0..s {
            let c = w(j);
            if c != 0.0 {
                q = G::exp_mul(&(xi[j] * (h * c)), &q);
                mu += k[j] * (h * c);
            }
        }
        (q, mu)
    };
    let split = |flat: &[f64]| {
        let mut blocks = unpack::<N>(flat, s);
        let xi: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
        let k: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
        (xi, k)
    };
    let (xi0, k0) = velocity(sys, z0.q.clone(), z0.mu)?;
    let guess = pack(
        std::iter::repeat(xi0.as_slice()).take(s).chain(std::iter::repeat(k0.as_slice()).take(s)),
    );

    let solved = fixed_point_solve(
        |flat| {
            let (xi, k) = split(flat);
            let new = (0..s)
                .map(|i| {
                    let (q, mu) = advance(&xi, &k, &|j| t.a(i, j));
                    velocity(sys, q, mu)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(pack(new.iter().map(|(x, _)| x.as_slice()).chain(new.iter().map(|(_, k)| k.as_slice()))))
        },
        guess,
        cfg,
    )?;

    let (xi, k) = split(&solved.state);
    let (q1, mu1) = advance(&xi, &k, &|j| t.b(j));
    Ok(StepOutcome { z: CotangentPoint::new(q1, mu1), iterations: solved.iterations, stages: None })
}

/// `q ↦ ξ(q, μ)` at a fixed momentum.
struct FrozenMomentum<'a, S: ?Sized, const N: usize> {
    sys: &'a S,
    mu: CoVector<N>,
}

impl<G, const N: usize, S> GroupVectorField<G, N> for FrozenMomentum<'_, S, N>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    fn eval(&self, q: &G::Element) -> Result<AlgebraVector<N>> {
        self.sys.f_map(&CotangentPoint::new(q.clone(), self.mu)).map(|f| f.xi)
    }
}

/// RKMK group step for `q` with the momentum frozen at `μ₀`, followed by the
/// naive update `μ₁ = μ₀ + h n₀` that treats `μ` as a canonical momentum and
/// drops the coadjoint term. A deliberately non-symplectic reference whose
/// defect is first order in `h`.
pub fn rkmk_euler_step<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<CotangentPoint<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    let mu0 = z0.mu;
    let frozen = FrozenMomentum { sys, mu: mu0 };
    let q1 = rkmk_group_step::<G, N, _>(&frozen, &z0.q, cfg, t)?;
    let n0 = sys.f_map(z0)?.nu;
    Ok(CotangentPoint::new(q1, mu0 + n0 * cfg.h))
}
