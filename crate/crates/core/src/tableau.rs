//! Butcher tableaux, their composition, and the momentum-side ("hat")
//! coefficients of the induced partitioned method.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::Cutoff;

/// An `s`-stage tableau `(A, b, c)` with `cᵢ = Σⱼ aᵢⱼ` and the default
/// truncation degree `r` used by Munthe-Kaas type methods.
#[derive(Clone, Debug, PartialEq)]
pub struct ButcherTableau {
    pub name: String,
    a: DMatrix<f64>,
    b: DVector<f64>,
    c: DVector<f64>,
    cutoff: Cutoff,
}

impl ButcherTableau {
    /// Builds a tableau from `A` and `b`; `c` is taken as the row sums of `A`.
    pub fn new(name: impl Into<String>, a: DMatrix<f64>, b: DVector<f64>, cutoff: Cutoff) -> Result<Self> {
        let s = b.len();
        if s == 0 || a.nrows() != s || a.ncols() != s {
            return Err(Error::InvalidInput(format!(
                "tableau needs a square {s}x{s} matrix, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("tableau has non-finite entries".into()));
        }
        let c = DVector::from_fn(s, |i, _| a.row(i).sum());
        Ok(Self { name: name.into(), a, b, c, cutoff })
    }

    pub fn from_rows(name: &str, rows: &[&[f64]], b: &[f64], r: usize) -> Result<Self> {
        let s = b.len();
        if rows.len() != s || rows.iter().any(|row| row.len() != s) {
            return Err(Error::InvalidInput(format!("{name}: rows do not form a {s}x{s} matrix")));
        }
        let a = DMatrix::from_fn(s, s, |i, j| rows[i][j]);
        Self::new(name, a, DVector::from_column_slice(b), Cutoff::new(r)?)
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[(i, j)]
    }

    pub fn b(&self, i: usize) -> f64 {
        self.b[i]
    }

    pub fn c(&self, i: usize) -> f64 {
        self.c[i]
    }

    pub fn a_matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b_vector(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn c_vector(&self) -> &DVector<f64> {
        &self.c
    }

    pub fn cutoff(&self) -> Cutoff {
        self.cutoff
    }

    pub fn with_cutoff(mut self, cutoff: Cutoff) -> Self {
        self.cutoff = cutoff;
        self
    }

    /// `aᵢⱼ = 0` for `j > i`.
    pub fn is_diagonally_implicit(&self) -> bool {
        (0..self.stages()).all(|i| (i + 1..self.stages()).all(|j| self.a[(i, j)] == 0.0))
    }

    /// Variational methods divide by every `bᵢ`.
    pub fn check_variational(&self) -> Result<()> {
        match self.b.iter().position(|&bi| bi == 0.0) {
            Some(i) => Err(Error::InvalidInput(format!(
                "{}: weight b[{i}] is zero, variational methods need all bᵢ ≠ 0",
                self.name
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ButcherTableau {
    /// Plain-text table: a header line, one `c | a` row per stage, then
    /// `b` and `r`. Entries are printed with 17 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.stages();
        writeln!(f, "# {} stages={} r={}", self.name, s, self.cutoff)?;
        for i in 0..s {
            write!(f, "{:>24.16e} |", self.c[i])?;
            for j in 0..s {
                write!(f, " {:>24.16e}", self.a[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "{:>24} |", "b")?;
        for j in 0..s {
            write!(f, " {:>24.16e}", self.b[j])?;
        }
        writeln!(f)
    }
}

/// Gauss–Legendre collocation with `s ∈ {1, 2, 3}` stages, orders 2, 4, 6
/// and truncation degrees 0, 2, 4.
pub fn gauss_tableau(s: usize) -> Result<ButcherTableau> {
    match s {
        1 => ButcherTableau::from_rows("gauss1", &[&[0.5]], &[1.0], 0),
        2 => {
            let d = 3f64.sqrt() / 6.0;
            ButcherTableau::from_rows(
                "gauss2",
                &[&[0.25, 0.25 - d], &[0.25 + d, 0.25]],
                &[0.5, 0.5],
                2,
            )
        }
        3 => {
            let r15 = 15f64.sqrt();
            ButcherTableau::from_rows(
                "gauss3",
                &[
                    &[5.0 / 36.0, 2.0 / 9.0 - r15 / 15.0, 5.0 / 36.0 - r15 / 30.0],
                    &[5.0 / 36.0 + r15 / 24.0, 2.0 / 9.0, 5.0 / 36.0 - r15 / 24.0],
                    &[5.0 / 36.0 + r15 / 30.0, 2.0 / 9.0 + r15 / 15.0, 5.0 / 36.0],
                ],
                &[5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0],
                4,
            )
        }
        _ => Err(Error::InvalidInput(format!("no Gauss tableau with {s} stages (use 1, 2 or 3)"))),
    }
}

/// Kutta's explicit third-order method, `r = 1`.
pub fn kutta3_tableau() -> ButcherTableau {
    ButcherTableau::from_rows(
        "kutta3",
        &[&[0.0, 0.0, 0.0], &[0.5, 0.0, 0.0], &[-1.0, 2.0, 0.0]],
        &[1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
        1,
    )
    .expect("static tableau")
}

/// The implicit midpoint rule.
pub fn midpoint_tableau() -> ButcherTableau {
    gauss_tableau(1).expect("static tableau").renamed("midpoint")
}

impl ButcherTableau {
    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// Triple-jump weights `(γ₁, γ₂, γ₁)` for order 4.
pub fn yoshida4_weights() -> [f64; 3] {
    let cbrt2 = 2f64.cbrt();
    let g1 = 1.0 / (2.0 - cbrt2);
    let g2 = -cbrt2 / (2.0 - cbrt2);
    [g1, g2, g1]
}

/// Symmetric seven-fold weights `(γ₁, γ₂, γ₃, γ₄, γ₃, γ₂, γ₁)` for order 6.
pub fn yoshida6_weights() -> [f64; 7] {
    let g1 = 0.78451361047755726381949763;
    let g2 = 0.23557321335935813368479318;
    let g3 = -1.17767998417887100694641568;
    let g4 = 1.31518632068391121888424973;
    [g1, g2, g3, g4, g3, g2, g1]
}

/// Composition of midpoint steps as a single diagonally implicit tableau
/// (order 2, 4 or 6).
pub fn yoshida_dirk(order: usize) -> Result<ButcherTableau> {
    let weights: &[f64] = match order {
        2 => &[1.0],
        4 => &yoshida4_weights(),
        6 => &yoshida6_weights(),
        _ => {
            return Err(Error::InvalidInput(format!(
                "no Yoshida composition of order {order} (use 2, 4 or 6)"
            )))
        }
    };
    let mid = midpoint_tableau();
    let parts: Vec<_> = weights.iter().map(|&w| (&mid, w)).collect();
    Ok(compose_sequence(&parts)?.renamed(&format!("yoshida{order}")))
}

/// Names accepted by [`tableau_by_name`].
pub const TABLEAU_NAMES: [&str; 8] =
    ["midpoint", "gauss1", "gauss2", "gauss3", "kutta3", "yoshida2", "yoshida4", "yoshida6"];

pub fn tableau_by_name(name: &str) -> Result<ButcherTableau> {
    match name {
        "midpoint" => Ok(midpoint_tableau()),
        "gauss1" => gauss_tableau(1),
        "gauss2" => gauss_tableau(2),
        "gauss3" => gauss_tableau(3),
        "kutta3" => Ok(kutta3_tableau()),
        "yoshida2" => yoshida_dirk(2),
        "yoshida4" => yoshida_dirk(4),
        "yoshida6" => yoshida_dirk(6),
        _ => Err(Error::InvalidInput(format!(
            "unknown tableau '{name}' (expected one of {})",
            TABLEAU_NAMES.join(", ")
        ))),
    }
}

/// Tableau of the step `Φ₂((1−γ)h) ∘ Φ₁(γh)`:
///
/// ```text
/// γA⁽¹⁾    0
/// 𝟙γb⁽¹⁾ᵀ  (1−γ)A⁽²⁾
/// γb⁽¹⁾ᵀ   (1−γ)b⁽²⁾ᵀ
/// ```
pub fn compose_tableaux(t1: &ButcherTableau, t2: &ButcherTableau, gamma: f64) -> Result<ButcherTableau> {
    let composed = compose_sequence(&[(t1, gamma), (t2, 1.0 - gamma)])?;
    Ok(composed.renamed(&format!("{}∘{}", t2.name, t1.name)))
}

/// Tableau of `Φₘ(wₘh) ∘ ⋯ ∘ Φ₁(w₁h)` for the pairs `(Φₖ, wₖ)`, the
/// repeated application of the block rule of [`compose_tableaux`].
/// The cut-off of the result is the smallest among the parts.
pub fn compose_sequence(parts: &[(&ButcherTableau, f64)]) -> Result<ButcherTableau> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("empty composition".into()));
    }
    let s: usize = parts.iter().map(|(t, _)| t.stages()).sum();
    let mut a = DMatrix::zeros(s, s);
    let mut b = DVector::zeros(s);
    let mut offset = 0;
    for (k, &(t, w)) in parts.iter().enumerate() {
        let n = t.stages();
        for i in 0..n {
            for j in 0..n {
                a[(offset + i, offset + j)] = w * t.a[(i, j)];
            }
            b[offset + i] = w * t.b[i];
        }
        // later blocks see this block through its weights
        let mut later = offset + n;
        for &(t_later, _) in &parts[k + 1..] {
            for i in 0..t_later.stages() {
                for j in 0..n {
                    a[(later + i, offset + j)] = b[offset + j];
                }
            }
            later += t_later.stages();
        }
        offset += n;
    }
    let cutoff = parts.iter().map(|(t, _)| t.cutoff).min().expect("non-empty");
    let name = parts.iter().map(|(t, _)| t.name.as_str()).collect::<Vec<_>>().join("+");
    ButcherTableau::new(name, a, b, cutoff)
}

/// Momentum-side tableau `âᵢⱼ = bⱼ − bⱼaⱼᵢ/bᵢ`, `b̂ = b`.
pub fn hat_coefficients(t: &ButcherTableau) -> Result<ButcherTableau> {
    t.check_variational()?;
    let s = t.stages();
    let a = DMatrix::from_fn(s, s, |i, j| t.b[j] - t.b[j] * t.a[(j, i)] / t.b[i]);
    ButcherTableau::new(format!("{}^", t.name), a, t.b.clone(), t.cutoff)
}

/// Classical order conditions satisfied up to `p ≤ 3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderReport {
    /// `Σbᵢ − 1`
    pub order1: f64,
    /// `Σbᵢcᵢ − ½`
    pub order2: f64,
    /// `max(|Σbᵢcᵢ² − ⅓|, |Σbᵢaᵢⱼcⱼ − ⅙|)`
    pub order3: f64,
}

impl OrderReport {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn satisfies(&self, p: usize) -> bool {
        let residuals = [self.order1, self.order2, self.order3];
        residuals.iter().take(p).all(|r| r.abs() <= Self::TOLERANCE)
    }

    /// Largest `p ≤ 3` whose conditions all hold.
    pub fn order(&self) -> usize {
        (1..=3).take_while(|&p| self.satisfies(p)).last().unwrap_or(0)
    }
}

pub fn check_order_conditions(t: &ButcherTableau) -> OrderReport {
    let b = &t.b;
    let c = &t.c;
    let bc2: f64 = b.iter().zip(c.iter()).map(|(bi, ci)| bi * ci * ci).sum();
    let bac = b.dot(&(&t.a * c));
    OrderReport {
        order1: b.sum() - 1.0,
        order2: b.dot(c) - 0.5,
        order3: (bc2 - 1.0 / 3.0).abs().max((bac - 1.0 / 6.0).abs()),
    }
}
