#![allow(dead_code)]

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symplectic_lie::lie::{dexpinv_trunc, hat, Cutoff};
use symplectic_lie::{AlgebraVector, CoVector, LieGroup, So3};

pub type V3 = AlgebraVector<3>;
pub type M3 = CoVector<3>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut impl Rng, scale: f64) -> Vector3<f64> {
    Vector3::from_fn(|_, _| rng.random_range(-scale..scale))
}

/// Random vector with norm log-uniform in `[lo, hi]`.
pub fn random_vec_norm(rng: &mut impl Rng, lo: f64, hi: f64) -> Vector3<f64> {
    let dir = loop {
        let v = random_vec(rng, 1.0);
        if v.norm() > 1e-3 {
            break v.normalize();
        }
    };
    dir * (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp()
}

pub fn random_rotation(rng: &mut impl Rng) -> Matrix3<f64> {
    So3::exp(&AlgebraVector(random_vec_norm(rng, 1e-3, 3.0)))
}

fn ad(x: &Vector3<f64>) -> Matrix3<f64> {
    hat(x)
}

/// `Bₖ/k!` from the generating function `x / (eˣ − 1)`.
pub fn bernoulli_over_factorial(n: usize) -> Vec<f64> {
    let mut fact = vec![1.0f64; n + 2];
    for k in 1..n + 2 {
        fact[k] = fact[k - 1] * k as f64;
    }
    let mut c = vec![0.0; n];
    c[0] = 1.0;
    for m in 1..n {
        c[m] = -(0..m).map(|k| c[k] / fact[m + 1 - k]).sum::<f64>();
    }
    c
}

pub fn series_exp(x: &Vector3<f64>) -> Matrix3<f64> {
    let a = hat(x);
    let mut term = Matrix3::identity();
    let mut sum = term;
    for k in 1..40 {
        term = term * a / k as f64;
        sum += term;
    }
    sum
}

pub fn series_dexp(x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    let a = ad(x);
    let mut term = *y;
    let mut sum = term;
    for k in 1..40 {
        term = a * term / (k + 1) as f64;
        sum += term;
    }
    sum
}

pub fn series_dexpinv(x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    let c = bernoulli_over_factorial(40);
    let a = ad(x);
    let mut pow = *y;
    let mut sum = pow;
    for ck in c.iter().skip(1) {
        pow = a * pow;
        sum += pow * *ck;
    }
    sum
}

pub fn jacobi_residual(x: &V3, y: &V3, z: &V3) -> f64 {
    let b = So3::bracket;
    (b(x, &b(y, z)) + b(y, &b(z, x)) + b(z, &b(x, y))).norm_inf()
}

pub fn antisymmetry_residual(x: &V3, y: &V3) -> f64 {
    (So3::bracket(x, y) + So3::bracket(y, x)).norm_inf().max(So3::bracket(x, x).norm_inf())
}

/// Largest violation of the duality relations between the algebra maps and
/// their coalgebra counterparts.
pub fn pairing_residual(g: &Matrix3<f64>, x: &V3, y: &V3, mu: &M3) -> f64 {
    let r = [
        So3::ad_star(x, mu).pair(y) - mu.pair(&So3::bracket(x, y)),
        So3::coadjoint(g, mu).pair(x) - mu.pair(&So3::adjoint(g, x)),
        So3::dexp_star(x, mu).pair(y) - mu.pair(&So3::dexp(x, y)),
        So3::dexpinv_star(x, mu).unwrap().pair(y) - mu.pair(&So3::dexpinv(x, y).unwrap()),
    ];
    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// `dexp_x ∘ dexp⁻¹₋ₓ − Ad_exp(x)` applied to `y`.
pub fn dexp_adjoint_residual(x: &V3, y: &V3) -> f64 {
    let lhs = So3::dexp(x, &So3::dexpinv(&-*x, y).unwrap());
    (lhs - So3::adjoint(&So3::exp(x), y)).norm_inf()
}

/// Closed forms of `exp`, `dexp`, `dexp⁻¹` against their power series.
pub fn series_residual(x: &V3, y: &V3) -> f64 {
    let e = (So3::exp(x) - series_exp(&x.0)).amax();
    let d = (So3::dexp(x, y).0 - series_dexp(&x.0, &y.0)).amax();
    let di = (So3::dexpinv(x, y).unwrap().0 - series_dexpinv(&x.0, &y.0)).amax();
    e.max(d).max(di)
}

/// Observed order of `dexp⁻¹ₓ y − dexp⁻¹₍ᵣ₎,ₓ y` in `|x|`, from `x` and `x/2`.
pub fn truncation_order(x: &V3, y: &V3, r: usize) -> f64 {
    let cut = Cutoff::new(r).unwrap();
    let rem = |t: f64| {
        let xt = *x * t;
        (So3::dexpinv(&xt, y).unwrap() - dexpinv_trunc::<So3, 3>(cut, &xt, y)).norm()
    };
    (rem(1.0) / rem(0.5)).log2()
}
