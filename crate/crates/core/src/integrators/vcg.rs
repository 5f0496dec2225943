//! Variational Crouch–Grossman methods.
//!
//! ```text
//! qʲ = exp(h bⱼ ξⱼ) qʲ⁻¹,  q⁰ = q₀,       Qᵢⱼ = exp(h aᵢⱼ ξⱼ) Qᵢ,ⱼ₋₁,  Qᵢ₀ = q₀,  Qᵢ = Qᵢₛ
//! (ξᵢ, nᵢ) = f(Qᵢ, Mᵢ)
//! μ̄₀ = Ad*_{q₀} μ₀,   n̄ᵢ = Ad*_{Qᵢ} nᵢ,   μ̄₁ = μ̄₀ + h Σⱼ bⱼ n̄ⱼ = Ad*_{q₁} μ₁
//! Mᵢ = dexp*_{h bᵢ ξᵢ} Ad*_{(qⁱ)⁻¹} μ̄₁ − h Σⱼ (bⱼ aⱼᵢ / bᵢ) dexp*_{h aⱼᵢ ξᵢ} Ad*_{Qⱼᵢ⁻¹} n̄ⱼ
//! ```
//!
//! Unknowns are `(ξᵢ, Mᵢ)`; each sweep rebuilds the exponential chains from
//! the current `ξ` and updates both blocks from them.

use super::{fixed_point_solve, pack, unpack, StageState, StepConfig, StepOutcome};
use crate::cotangent::CotangentPoint;
use crate::error::Result;
use crate::lie::{AlgebraVector, CoVector, LieGroup};
use crate::systems::TrivializedSystem;
use crate::tableau::ButcherTableau;

/// Which of the two equivalent expressions for `Mᵢ` the sweep uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MomentumForm {
    /// In terms of the final body momentum `μ̄₁`.
    #[default]
    Final,
    /// In terms of the initial body momentum `μ̄₀`.
    Initial,
}

pub fn vcg_step<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<CotangentPoint<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    vcg_step_warm(sys, z0, cfg, t, None, MomentumForm::Final).map(|out| out.z)
}

/// Partial products `qʲ` (`j = 0..=s`) and `Qᵢⱼ` (`i < s`, `j = 0..=s`).
struct Chains<G: LieGroup<N>, const N: usize> {
    q: Vec<G::Element>,
    stage: Vec<Vec<G::Element>>,
}

fn chains<G: LieGroup<N>, const N: usize>(
    t: &ButcherTableau,
    h: f64,
    q0: &G::Element,
    xi: &[AlgebraVector<N>],
) -> Chains<G, N> {
    let s = t.stages();
    let mut q = Vec::with_capacity(s + 1);
    q.push(q0.clone());
    for j in 0..s {
        let next = G::exp_mul(&(xi[j] * (h * t.b(j))), &q[j]);
        q.push(next);
    }
    let stage = (0..s)
        .map(|i| {
            let mut chain = Vec::with_capacity(s + 1);
            chain.push(q0.clone());
            for j in 0..s {
                let a = t.a(i, j);
                let next = if a == 0.0 { chain[j].clone() } else { G::exp_mul(&(xi[j] * (h * a)), &chain[j]) };
                chain.push(next);
            }
            chain
        })
        .collect();
    Chains { q, stage }
}

struct Evaluated<const N: usize> {
    xi: Vec<AlgebraVector<N>>,
    n_bar: Vec<CoVector<N>>,
    mu_bar1: CoVector<N>,
}

fn evaluate<G, const N: usize, S>(
    sys: &S,
    t: &ButcherTableau,
    h: f64,
    mu_bar0: &CoVector<N>,
    ch: &Chains<G, N>,
    m: &[CoVector<N>],
) -> Result<Evaluated<N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    let s = t.stages();
    let mut xi = Vec::with_capacity(s);
    let mut n_bar = Vec::with_capacity(s);
    let mut mu_bar1 = *mu_bar0;
    for i in 0..s {
        let qi = &ch.stage[i][s];
        let f = sys.f_map(&CotangentPoint::new(qi.clone(), m[i]))?;
        let nb = G::coadjoint(qi, &f.nu);
        mu_bar1 += nb * (h * t.b(i));
        xi.push(f.xi);
        n_bar.push(nb);
    }
    Ok(Evaluated { xi, n_bar, mu_bar1 })
}

pub fn vcg_step_warm<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
    guess: Option<&StageState<N>>,
    form: MomentumForm,
) -> Result<StepOutcome<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    cfg.validate()?;
    t.check_variational()?;
    let s = t.stages();
    let h = cfg.h;
    let mu_bar0 = G::coadjoint(&z0.q, &z0.mu);

    let (xi0, m0) = match guess {
        Some(StageState::Vcg { xi, m }) if xi.len() == s => (xi.clone(), m.clone()),
        _ => {
            let f0 = sys.f_map(z0)?;
            (vec![f0.xi; s], vec![z0.mu; s])
        }
    };
    let guess_flat = pack(xi0.iter().map(|v| v.as_slice()).chain(m0.iter().map(|v| v.as_slice())));

    let solved = fixed_point_solve(
        |flat| {
            let mut blocks = unpack::<N>(flat, s);
            let xi: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
            let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();

            let ch = chains::<G, N>(t, h, &z0.q, &xi);
            let ev = evaluate(sys, t, h, &mu_bar0, &ch, &m)?;

            let m_new: Vec<CoVector<N>> = (0..s)
                .map(|i| {
                    let to_stage = |mu_bar: &CoVector<N>| {
                        G::dexp_star(&(xi[i] * (h * t.b(i))), &G::coadjoint(&G::inverse(&ch.q[i + 1]), mu_bar))
                    };
                    let from_stage = |j: usize| {
                        let a = t.a(j, i);
                        if a == 0.0 {
                            return CoVector::zeros();
                        }
                        G::dexp_star(&(xi[i] * (h * a)), &G::coadjoint(&G::inverse(&ch.stage[j][i + 1]), &ev.n_bar[j]))
                            * (a / t.b(i))
                    };
                    match form {
                        MomentumForm::Final => {
                            to_stage(&ev.mu_bar1)
                                - (0..s).map(|j| from_stage(j) * (h * t.b(j))).sum::<CoVector<N>>()
                        }
                        MomentumForm::Initial => {
                            to_stage(&mu_bar0)
                                + (0..s)
                                    .map(|j| (to_stage(&ev.n_bar[j]) - from_stage(j)) * (h * t.b(j)))
                                    .sum::<CoVector<N>>()
                        }
                    }
                })
                .collect();

            Ok(pack(ev.xi.iter().map(|v| v.as_slice()).chain(m_new.iter().map(|v| v.as_slice()))))
        },
        guess_flat,
        cfg,
    )?;

    let mut blocks = unpack::<N>(&solved.state, s);
    let xi: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
    let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();

    let ch = chains::<G, N>(t, h, &z0.q, &xi);
    let ev = evaluate(sys, t, h, &mu_bar0, &ch, &m)?;
    let q1 = ch.q[s].clone();
    let mu1 = G::coadjoint(&G::inverse(&q1), &ev.mu_bar1);

    Ok(StepOutcome {
        z: CotangentPoint::new(q1, mu1),
        iterations: solved.iterations,
        stages: Some(StageState::Vcg { xi, m }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{Dipole, ZeroSystem};
    use crate::tableau::{midpoint_tableau, yoshida_dirk};

    #[test]
    fn zero_system_is_identity() {
        let z0 = Dipole::standard().initial_state();
        let z1 = vcg_step(&ZeroSystem, &z0, &StepConfig::new(0.1), &yoshida_dirk(4).unwrap()).unwrap();
        assert!(z1.distance(&z0) < 1e-15);
    }

    #[test]
    fn both_momentum_forms_agree() {
        let d = Dipole::standard();
        let z0 = d.initial_state();
        let t = yoshida_dirk(4).unwrap();
        let cfg = StepConfig::new(0.02);
        let a = vcg_step_warm(&d, &z0, &cfg, &t, None, MomentumForm::Final).unwrap().z;
        let b = vcg_step_warm(&d, &z0, &cfg, &t, None, MomentumForm::Initial).unwrap().z;
        assert!(a.distance(&b) < 1e-13, "{}", a.distance(&b));
    }

    #[test]
    fn midpoint_is_symmetric() {
        let d = Dipole::standard();
        let z0 = d.initial_state();
        let t = midpoint_tableau();
        let cfg = StepConfig::new(0.05);
        let z1 = vcg_step(&d, &z0, &cfg, &t).unwrap();
        let back = vcg_step(&d, &z1, &cfg.with_h(-0.05), &t).unwrap();
        assert!(back.distance(&z0) < 10.0 * cfg.fp_tol, "{}", back.distance(&z0));
    }
}
