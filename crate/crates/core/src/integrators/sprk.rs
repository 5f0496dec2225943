//! Symplectic partitioned Runge–Kutta methods on abelian groups.
//!
//! Positions use `(a, b)`, momenta the hat coefficients
//! `âᵢⱼ = bⱼ − bⱼaⱼᵢ/bᵢ`:
//!
//! ```text
//! Qᵢ = q₀ + h Σⱼ aᵢⱼ ξⱼ,    Pᵢ = p₀ + h Σⱼ âᵢⱼ nⱼ,    (ξᵢ, nᵢ) = f(Qᵢ, Pᵢ)
//! q₁ = q₀ + h Σᵢ bᵢ ξᵢ,     p₁ = p₀ + h Σᵢ bᵢ nᵢ
//! ```

use super::{fixed_point_solve, pack, unpack, StageState, StepConfig, StepOutcome};
use crate::cotangent::CotangentPoint;
use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, CoVector, LieGroup};
use crate::systems::TrivializedSystem;
use crate::tableau::{hat_coefficients, ButcherTableau};

pub fn sprk_step<G, const N: usize, S>(
    sys: &S,
    z0: &CotangentPoint<G, N>,
    cfg: &StepConfig,
    t: &ButcherTableau,
) -> Result<CotangentPoint<G, N>>
where
    G: LieGroup<N>,
    S: TrivializedSystem<G, N> + ?Sized,
{
    sprk_step_warm(sys, z0, cfg, t, None).map(|out| out.z)
}

pub fn sprk_step_warm<G, const N: usize, S>(
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
    if !G::IS_ABELIAN {
        return Err(Error::InvalidInput(format!(
            "partitioned RK needs an abelian group, got {}",
            G::NAME
        )));
    }
    cfg.validate()?;
    let hat = hat_coefficients(t)?;
    let s = t.stages();
    let h = cfg.h;

    let (x0, m0) = match guess {
        Some(StageState::Partitioned { x, m }) if x.len() == s => (x.clone(), m.clone()),
        _ => {
            let f0 = sys.f_map(z0)?;
            ((0..s).map(|i| f0.xi * (h * t.c(i))).collect::<Vec<_>>(), vec![z0.mu; s])
        }
    };

    let eval = |x: &[AlgebraVector<N>], m: &[CoVector<N>]| -> Result<(Vec<AlgebraVector<N>>, Vec<CoVector<N>>)> {
        let mut xi = Vec::with_capacity(s);
        let mut n = Vec::with_capacity(s);
        for i in 0..s {
            let f = sys.f_map(&CotangentPoint::new(G::exp_mul(&x[i], &z0.q), m[i]))?;
            xi.push(f.xi);
            n.push(f.nu);
        }
        Ok((xi, n))
    };

    let solved = fixed_point_solve(
        |flat| {
            let mut blocks = unpack::<N>(flat, s);
            let x: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
            let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
            let (xi, n) = eval(&x, &m)?;
            let x_new: Vec<AlgebraVector<N>> =
                (0..s).map(|i| (0..s).map(|j| xi[j] * (h * t.a(i, j))).sum()).collect();
            let m_new: Vec<CoVector<N>> = (0..s)
                .map(|i| z0.mu + (0..s).map(|j| n[j] * (h * hat.a(i, j))).sum::<CoVector<N>>())
                .collect();
            Ok(pack(x_new.iter().map(|v| v.as_slice()).chain(m_new.iter().map(|v| v.as_slice()))))
        },
        pack(x0.iter().map(|v| v.as_slice()).chain(m0.iter().map(|v| v.as_slice()))),
        cfg,
    )?;

    let mut blocks = unpack::<N>(&solved.state, s);
    let x: Vec<AlgebraVector<N>> = blocks.next().unwrap().into_iter().map(AlgebraVector::from).collect();
    let m: Vec<CoVector<N>> = blocks.next().unwrap().into_iter().map(CoVector::from).collect();
    let (xi, n) = eval(&x, &m)?;
    let dq: AlgebraVector<N> = (0..s).map(|i| xi[i] * (h * t.b(i))).sum();
    let mu1 = z0.mu + (0..s).map(|i| n[i] * (h * t.b(i))).sum::<CoVector<N>>();

    Ok(StepOutcome {
        z: CotangentPoint::new(G::exp_mul(&dq, &z0.q), mu1),
        iterations: solved.iterations,
        stages: Some(StageState::Partitioned { x, m }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{Abelian, So3};
    use crate::systems::{AbelianOscillator, ZeroSystem};
    use crate::tableau::gauss_tableau;
    use nalgebra::SVector;

    #[test]
    fn rejects_nonabelian_groups() {
        let z0 = CotangentPoint::<So3, 3>::identity();
        let err = sprk_step(&ZeroSystem, &z0, &StepConfig::new(0.1), &gauss_tableau(1).unwrap());
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn zero_system_is_identity() {
        let z0 = CotangentPoint::<Abelian<2>, 2>::new(SVector::from([1.0, 2.0]), CoVector::from([3.0, 4.0]));
        let z1 = sprk_step(&ZeroSystem, &z0, &StepConfig::new(0.1), &gauss_tableau(2).unwrap()).unwrap();
        assert_eq!(z1, z0);
    }

    #[test]
    fn midpoint_on_harmonic_oscillator_is_closed_form() {
        // implicit midpoint for q' = p, p' = −q is the Cayley map of the rotation generator
        let osc = AbelianOscillator::default();
        let h = 0.1;
        let z0 = CotangentPoint::<Abelian<1>, 1>::new(SVector::from([1.0]), CoVector::from([0.0]));
        let z1 = sprk_step(&osc, &z0, &StepConfig::new(h), &gauss_tableau(1).unwrap()).unwrap();
        let d = 1.0 + h * h / 4.0;
        assert!((z1.q[0] - (1.0 - h * h / 4.0) / d).abs() < 1e-14);
        assert!((z1.mu[0] - (-h / d)).abs() < 1e-14);
    }

    #[test]
    fn midpoint_energy_is_bounded() {
        let osc = AbelianOscillator::default();
        let mut z = CotangentPoint::<Abelian<1>, 1>::new(SVector::from([1.0]), CoVector::from([0.5]));
        let e0 = osc.energy(&z);
        let t = gauss_tableau(1).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..10_000 {
            z = sprk_step(&osc, &z, &StepConfig::new(0.1), &t).unwrap();
            worst = worst.max((osc.energy(&z) - e0).abs());
        }
        // quadratic invariants are preserved exactly by Gauss methods
        assert!(worst < 1e-12, "{worst}");
    }
}
