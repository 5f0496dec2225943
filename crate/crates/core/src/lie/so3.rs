//! The rotation group SO(3) with so(3) identified with ℝ³ through `hat`.
//!
//! All maps are evaluated in closed form. The rational functions of the
//! rotation angle that appear in `exp`, `dexp` and `dexp⁻¹` switch to
//! Taylor polynomials near zero where the closed forms cancel.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use super::{AlgebraVector, CoVector, LieGroup};
use crate::error::{Error, Result};

/// Below this angle `sin θ/θ` and `(1 − cos θ)/θ²` use their series.
const SMALL_ANGLE: f64 = 1e-4;
/// Below this angle the third-order coefficients of `dexp`/`dexp⁻¹` use
/// their series; `θ − sin θ` loses too many digits otherwise.
const SERIES_ANGLE: f64 = 0.25;
/// `log` refuses rotations closer than this to a half turn.
const LOG_BRANCH_MARGIN: f64 = 1e-6;
/// `dexp⁻¹` is singular at `|x| = 2π`.
const DEXPINV_BRANCH_MARGIN: f64 = 1e-6;
const SKEW_TOL: f64 = 1e-12;

/// Marker type for SO(3). Elements are 3×3 rotation matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct So3;

/// The skew matrix with `hat(v)·w = v × w`.
pub fn hat(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Inverse of [`hat`]; rejects matrices that are not skew to 1e-12.
pub fn vee(m: &Matrix3<f64>) -> Result<Vector3<f64>> {
    let asym = (m + m.transpose()).amax();
    if !(asym <= SKEW_TOL) {
        return Err(Error::InvalidInput(format!(
            "vee: matrix is not skew-symmetric (|m + mᵀ|∞ = {asym:e})"
        )));
    }
    Ok(vee_skew_part(m))
}

/// `vee` of the skew part `(m − mᵀ)/2`.
pub(crate) fn vee_skew_part(m: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(
        0.5 * (m[(2, 1)] - m[(1, 2)]),
        0.5 * (m[(0, 2)] - m[(2, 0)]),
        0.5 * (m[(1, 0)] - m[(0, 1)]),
    )
}

/// `sin θ / θ`
fn sinc(theta: f64) -> f64 {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        theta.sin() / theta
    }
}

/// `(1 − cos θ) / θ²`
fn cosc(theta: f64) -> f64 {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        0.5 - t2 / 24.0 + t2 * t2 / 720.0
    } else {
        let s = (0.5 * theta).sin();
        2.0 * s * s / (theta * theta)
    }
}

/// `(θ − sin θ) / θ³`
fn sin3c(theta: f64) -> f64 {
    if theta < SERIES_ANGLE {
        let t2 = theta * theta;
        1.0 / 6.0
            - t2 / 120.0
            + t2 * t2 / 5040.0
            - t2 * t2 * t2 / 362_880.0
            + t2 * t2 * t2 * t2 / 39_916_800.0
    } else {
        (theta - theta.sin()) / (theta * theta * theta)
    }
}

/// `(1 − (θ/2) cot(θ/2)) / θ²`
fn cot_coeff(theta: f64) -> f64 {
    if theta < SERIES_ANGLE {
        let t2 = theta * theta;
        1.0 / 12.0
            + t2 / 720.0
            + t2 * t2 / 30_240.0
            + t2 * t2 * t2 / 1_209_600.0
            + t2 * t2 * t2 * t2 / 47_900_160.0
    } else {
        let half = 0.5 * theta;
        (1.0 - half * half.cos() / half.sin()) / (theta * theta)
    }
}

fn check_dexpinv_domain(theta: f64) -> Result<()> {
    let limit = 2.0 * PI - DEXPINV_BRANCH_MARGIN;
    if theta >= limit {
        return Err(Error::BranchCut { angle: theta, limit });
    }
    Ok(())
}

impl LieGroup<3> for So3 {
    type Element = Matrix3<f64>;
    const NAME: &'static str = "SO(3)";

    fn identity() -> Matrix3<f64> {
        Matrix3::identity()
    }

    fn compose(a: &Matrix3<f64>, b: &Matrix3<f64>) -> Matrix3<f64> {
        a * b
    }

    fn inverse(g: &Matrix3<f64>) -> Matrix3<f64> {
        g.transpose()
    }

    fn exp(x: &AlgebraVector<3>) -> Matrix3<f64> {
        let theta = x.norm();
        let k = hat(x.coords());
        Matrix3::identity() + k * sinc(theta) + k * k * cosc(theta)
    }

    fn log(g: &Matrix3<f64>) -> Result<AlgebraVector<3>> {
        let axis_sin = vee_skew_part(g);
        let cos = ((g.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
        let sin = axis_sin.norm();
        let theta = sin.atan2(cos);
        let limit = PI - LOG_BRANCH_MARGIN;
        if theta >= limit {
            return Err(Error::BranchCut { angle: theta, limit });
        }
        if theta < SMALL_ANGLE {
            return Ok(AlgebraVector(axis_sin * (1.0 + theta * theta / 6.0)));
        }
        if cos > -0.5 {
            return Ok(AlgebraVector(axis_sin * (theta / sin)));
        }
        // Near a half turn the skew part is tiny; recover the axis from
        // the symmetric part n nᵀ = ((g + gᵀ)/2 − cos θ I) / (1 − cos θ).
        let sym = (g + g.transpose()) * 0.5 - Matrix3::identity() * cos;
        let nnt = sym / (1.0 - cos);
        let k = (0..3)
            .max_by(|&i, &j| nnt[(i, i)].total_cmp(&nnt[(j, j)]))
            .unwrap_or(0);
        let mut axis = nnt.column(k).into_owned() / nnt[(k, k)].sqrt();
        axis /= axis.norm();
        if axis.dot(&axis_sin) < 0.0 {
            axis = -axis;
        }
        Ok(AlgebraVector(axis * theta))
    }

    fn bracket(x: &AlgebraVector<3>, y: &AlgebraVector<3>) -> AlgebraVector<3> {
        AlgebraVector(x.0.cross(&y.0))
    }

    fn ad_star(x: &AlgebraVector<3>, mu: &CoVector<3>) -> CoVector<3> {
        CoVector(mu.0.cross(&x.0))
    }

    fn adjoint(g: &Matrix3<f64>, x: &AlgebraVector<3>) -> AlgebraVector<3> {
        AlgebraVector(g * x.0)
    }

    fn coadjoint(g: &Matrix3<f64>, mu: &CoVector<3>) -> CoVector<3> {
        CoVector(g.tr_mul(&mu.0))
    }

    fn dexp(x: &AlgebraVector<3>, y: &AlgebraVector<3>) -> AlgebraVector<3> {
        let theta = x.norm();
        let xy = x.0.cross(&y.0);
        AlgebraVector(y.0 + xy * cosc(theta) + x.0.cross(&xy) * sin3c(theta))
    }

    fn dexp_star(x: &AlgebraVector<3>, mu: &CoVector<3>) -> CoVector<3> {
        let theta = x.norm();
        let xm = x.0.cross(&mu.0);
        CoVector(mu.0 - xm * cosc(theta) + x.0.cross(&xm) * sin3c(theta))
    }

    fn dexpinv(x: &AlgebraVector<3>, y: &AlgebraVector<3>) -> Result<AlgebraVector<3>> {
        let theta = x.norm();
        check_dexpinv_domain(theta)?;
        let xy = x.0.cross(&y.0);
        Ok(AlgebraVector(y.0 - xy * 0.5 + x.0.cross(&xy) * cot_coeff(theta)))
    }

    fn dexpinv_star(x: &AlgebraVector<3>, mu: &CoVector<3>) -> Result<CoVector<3>> {
        let theta = x.norm();
        check_dexpinv_domain(theta)?;
        let xm = x.0.cross(&mu.0);
        Ok(CoVector(mu.0 + xm * 0.5 + x.0.cross(&xm) * cot_coeff(theta)))
    }

    fn distance(a: &Matrix3<f64>, b: &Matrix3<f64>) -> f64 {
        (a - b).singular_values().max()
    }

    fn manifold_defect(g: &Matrix3<f64>) -> f64 {
        orthogonality_defect(g)
    }

    fn is_finite(g: &Matrix3<f64>) -> bool {
        g.iter().all(|v| v.is_finite())
    }
}

/// `‖gᵀg − I‖∞`, the departure of `g` from orthogonality.
pub fn orthogonality_defect(g: &Matrix3<f64>) -> f64 {
    (g.tr_mul(g) - Matrix3::identity()).amax()
}
