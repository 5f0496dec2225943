//! Variational Runge–Kutta–Munthe-Kaas methods.
//!
//! With `dexp⁻¹₍ᵣ₎` the truncated series and stage unknowns `(Xᵢ, Mᵢ, λᵢ)`:
//!
//! ```text
//! Xᵢ = h Σⱼ aᵢⱼ dexp⁻¹₍ᵣ₎,Xⱼ ξⱼ,        (ξᵢ, nᵢ) = f(exp(Xᵢ) q₀, Mᵢ)
//! Y  = h Σᵢ bᵢ dexp⁻¹₍ᵣ₎,Xᵢ ξᵢ,        Λ = dexp*₋Y (μ₀ + h Σᵢ bᵢ Ad*_{exp Xᵢ} nᵢ)
//! λᵢ = −h bᵢ dexp*_Xᵢ nᵢ + h P*₍ᵣ₎(Xᵢ, ξᵢ)(bᵢΛ + Σⱼ aⱼᵢ λⱼ)
//! Mᵢ = (dexp⁻¹₍ᵣ₎,Xᵢ)* (bᵢΛ + Σⱼ aⱼᵢ λⱼ) / bᵢ
//! q₁ = exp(Y) q₀,   μ₁ = Ad*_{exp(−Y)} (μ₀ + h Σᵢ bᵢ Ad*_{exp Xᵢ} nᵢ)
//! ```
//!
//! One sweep updates `X` from the previous `ξ`, evaluates `f`, then updates
//! `Λ`, `λ` and `M`. The iterate is `(X, M, λ, ξ)`; leaving `ξ` out lets the
//! change vanish while `ξ` still lags `M`.

use super::{fixed_point_solve, pack, unpack, StageState, StepConfig, StepOutcome};
use crate::cotangent::CotangentPoint;
use crate::error::Result;
use crate::lie::{dexpinv_trunc, dexpinv_trunc_star, p_star_poly, AlgebraVector, CoVector, Cutoff, LieGroup};
use crate::systems::TrivializedSystem;
use crate::tableau::ButcherTableau;

pub fn vrkmk_step<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<CotangentPoint<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    vrkmk_step_warm(sys, z0, cfg, t, None).map(|out| out.z)
}

/// Stage values evaluated at a set of `X` and `M`.
struct Stages<G: LieGroup<N>, const N: usize> {
    xi: Vec<AlgebraVector<N>>,
    n: Vec<CoVector<N>>,
    exp_x: Vec<G::Element>,
}

fn evaluate<G, const N: usize, S>(
    sys: &S,
    q0: &G::Element,
    x: &[AlgebraVector<N>],
    m: &[CoVector<N>],
) -> Result<Stages<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    let s = x.len();
    let mut out = Stages { xi: Vec::with_capacity(s), n: Vec::with_capacity(s), exp_x: Vec::with_capacity(s) };
    for i in 0..s {
        let e = G::exp(&x[i]);
        let f = sys.f_map(&CotangentPoint::new(G::compose(&e, q0), m[i]))?;
        out.xi.push(f.xi);
        out.n.push(f.nu);
        out.exp_x.push(e);
    }
    Ok(out)
}

/// `(Y, μ₀ + h Σ bᵢ Ad*_{exp Xᵢ} nᵢ)`
fn outer<G: LieGroup<N>, const N: usize>(
    t: &ButcherTableau,
    h: f64,
    r: Cutoff,
    mu0: &CoVector<N>,
    x: &[AlgebraVector<N>],
    st: &Stages<G, N>,
) -> (AlgebraVector<N>, CoVector<N>) {
    let mut y = AlgebraVector::zeros();
    let mut sum = *mu0;
    for i in 0..t.stages() {
        y += dexpinv_trunc::<G, N>(r, &x[i], &st.xi[i]) * (h * t.b(i));
        sum += G::coadjoint(&st.exp_x[i], &st.n[i]) * (h * t.b(i));
    }
    (y, sum)
}

pub fn vrkmk_step_warm<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
    guess: Option<&StageState<N>>,
) -> Result<StepOutcome<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    cfg.validate()?;
    t.check_variational()?;
    let s = t.stages();
    let h = cfg.h;
    let r = cfg.cutoff_for(t);

    let (x0, m0, lambda0, xi0) = match guess {
        Some(StageState::Vrkmk { x, m, lambda, xi }) if x.len() == s => {
            (x.clone(), m.clone(), lambda.clone(), xi.clone())
        }
        _ => {
            let f0 = sys.f_map(z0)?;
            (
                (0..s).map(|i| f0.xi * (h * t.c(i))).collect::<Vec<_>>(),
                vec![z0.mu; s],
                (0..s).map(|i| f0.nu * (-h * t.b(i))).collect::<Vec<_>>(),
                vec![f0.xi; s],
            )
        }
    };

    let guess_flat = pack(
        x0.iter()
            .map(|v| v.as_slice())
            .chain(m0.iter().map(|v| v.as_slice()))
            .chain(lambda0.iter().map(|v| v.as_slice()))
            .chain(xi0.iter().map(|v| v.as_slice())),
    );

    let solved = fixed_point_solve(
        |flat| {
            let mut blocks = unpack::<N>(flat, s);
            let x: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
            let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
            let lambda: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
            let xi: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();

            let x_new: Vec<AlgebraVector<N>> = (0..s)
                .map(|i| {
                    (0..s)
                        .filter(|&j| t.a(i, j) != 0.0)
                        .map(|j| dexpinv_trunc::<G, N>(r, &x[j], &xi[j]) * (h * t.a(i, j)))
                        .sum()
                })
                .collect();
            let st = evaluate(sys, &z0.q, &x_new, &m)?;

            let (y, sum) = outer(t, h, r, &z0.mu, &x_new, &st);
            let big_lambda = G::dexp_star(&-y, &sum);

            let lambda_new: Vec<CoVector<N>> = (0..s)
                .map(|i| {
                    let arg = big_lambda * t.b(i) + (0..s).map(|j| lambda[j] * t.a(j, i)).sum::<CoVector<N>>();
                    G::dexp_star(&x_new[i], &st.n[i]) * (-h * t.b(i))
                        + p_star_poly::<G, N>(r, &x_new[i], &st.xi[i], &arg) * h
                })
                .collect();
            let m_new: Vec<CoVector<N>> = (0..s)
                .map(|i| {
                    let arg = big_lambda * t.b(i)
                        + (0..s).map(|j| lambda_new[j] * t.a(j, i)).sum::<CoVector<N>>();
                    dexpinv_trunc_star::<G, N>(r, &x_new[i], &arg) * (1.0 / t.b(i))
                })
                .collect();

            Ok(pack(
                x_new
                    .iter()
                    .map(|v| v.as_slice())
                    .chain(m_new.iter().map(|v| v.as_slice()))
                    .chain(lambda_new.iter().map(|v| v.as_slice()))
                    .chain(st.xi.iter().map(|v| v.as_slice())),
            ))
        },
        guess_flat,
        cfg,
    )?;

    let mut blocks = unpack::<N>(&solved.state, s);
    let x: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
    let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
    let lambda: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();

    let st = evaluate(sys, &z0.q, &x, &m)?;
    let (y, sum) = outer(t, h, r, &z0.mu, &x, &st);
    let q1 = G::exp_mul(&y, &z0.q);
    let mu1 = G::coadjoint(&G::exp(&-y), &sum);

    Ok(StepOutcome {
        z: CotangentPoint::new(q1, mu1),
        iterations: solved.iterations,
        stages: Some(StageState::Vrkmk { x, m, lambda, xi: st.xi }),
    })
}
