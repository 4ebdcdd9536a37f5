//! The two `l1` programs the recovery method needs.
//!
//! [`solve_l1_program`] computes `min ||B x||_1 s.t. (B x)(i) = 1`. Its
//! epigraph form has variables `(x, t)`, objective `sum t`, rows
//! `-t <= B x <= t` and `(B x)(i) = 1`. The solver works on the Lagrange
//! dual of that epigraph LP,
//!
//! ```text
//! maximize  lambda  subject to  B^T y = lambda * b_i,  -1 <= y <= 1
//! ```
//!
//! with `b_i` the i-th row of `B`. The dual has only `d` equality rows,
//! and its simplex multipliers at an optimal basis are exactly a vertex
//! optimizer `x` of the primal. Strong duality gives the certificate: the
//! optimal `lambda` must equal `||B x||_1`.
//!
//! [`min_l1_gain`] computes `min_{x != 0} ||A x||_1 / ||x||_1` exactly by
//! minimizing over each face of the `l1` sphere, again through the dual of
//! the face LP.

pub mod simplex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{extreme_singular_values, norm, DenseMatrix, DenseVector, NormKind};
use crate::scalar::Scalar;

pub use simplex::{solve_bounded, BoundedLp, LpResult, LpStatus, SimplexOptions};

/// Largest column count for which [`min_l1_gain`] enumerates faces.
pub const MAX_EXACT_GAIN_COLS: usize = 16;

/// Absolute tolerance on the pinned coordinate `z(i) = 1`.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Relative tolerance on the primal-dual gap.
pub const OPTIMALITY_TOL: f64 = 1e-8;
/// Anti-cycling pivot tolerance.
pub const PIVOT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    NumericalFailure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct L1ProgramSolution<T> {
    /// Coefficients in the given basis.
    pub x: DenseVector<T>,
    /// `B x`, with `z(i) = 1`.
    pub z: DenseVector<T>,
    /// `||z||_1`; `+inf` unless `status` is `Optimal`.
    pub objective: T,
    pub status: SolveStatus,
    pub iterations: usize,
}

impl<T: Scalar> L1ProgramSolution<T> {
    fn failed(n: usize, d: usize, status: SolveStatus, iterations: usize) -> Self {
        Self {
            x: DenseVector::zeros(d),
            z: DenseVector::zeros(n),
            objective: T::infinity(),
            status,
            iterations,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

fn options(n: usize, d: usize) -> SimplexOptions {
    SimplexOptions {
        feasibility_tol: FEASIBILITY_TOL,
        pivot_tol: PIVOT_TOL,
        max_iterations: 50 * (n + d),
        ..SimplexOptions::default()
    }
}

/// Solves `min ||B x||_1` subject to `(B x)(i) = 1` (zero-based `i`).
///
/// When the optimum is not unique any optimal vertex is returned. A row
/// `i` that is identically zero makes the program infeasible; running
/// out of pivots (cap `50 (n + d)`) or failing the duality-gap check is
/// reported as `NumericalFailure`.
pub fn solve_l1_program<T: Scalar>(b: &DenseMatrix<T>, i: usize) -> Result<L1ProgramSolution<T>> {
    let (n, d) = (b.rows(), b.cols());
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "normalization index {i} out of range for {n} rows"
        )));
    }
    if d == 0 || d > n {
        return Err(Error::InvalidArgument(format!(
            "basis must have 1 <= d <= n columns, got {n}x{d}"
        )));
    }
    if !b.is_finite() {
        return Err(Error::InvalidArgument("basis has non-finite entries".into()));
    }
    let row_i = b.row(i);
    if row_i.iter().all(|&v| v == T::zero()) {
        return Ok(L1ProgramSolution::failed(n, d, SolveStatus::Infeasible, 0));
    }

    // Columns: y_0..y_{n-1} (row j of B), then lambda (-b_i).
    let mut data = Vec::with_capacity(d * (n + 1));
    for j in 0..n {
        data.extend(b.row(j));
    }
    data.extend(row_i.iter().map(|&v| -v));
    let constraints = DenseMatrix::from_column_major(d, n + 1, data)?;
    let mut cost = vec![T::zero(); n + 1];
    cost[n] = -T::one();
    let mut lower = vec![-T::one(); n + 1];
    let mut upper = vec![T::one(); n + 1];
    lower[n] = -T::infinity();
    upper[n] = T::infinity();
    let lp = BoundedLp {
        cost,
        constraints,
        rhs: vec![T::zero(); d],
        lower,
        upper,
    };
    let res = solve_bounded(&lp, options(n, d));
    match res.status {
        LpStatus::Optimal => {}
        // Unbounded dual means an empty primal.
        LpStatus::Unbounded | LpStatus::Infeasible => {
            return Ok(L1ProgramSolution::failed(
                n,
                d,
                SolveStatus::Infeasible,
                res.iterations,
            ))
        }
        LpStatus::IterationLimit | LpStatus::NumericalFailure => {
            return Ok(L1ProgramSolution::failed(
                n,
                d,
                SolveStatus::NumericalFailure,
                res.iterations,
            ))
        }
    }

    let mut x = res.duals;
    let zi = row_i.iter().zip(&x).fold(T::zero(), |acc, (&a, &c)| acc + a * c);
    if !zi.is_finite() || (zi - T::one()).abs() > T::lit(1e-6) {
        return Ok(L1ProgramSolution::failed(
            n,
            d,
            SolveStatus::NumericalFailure,
            res.iterations,
        ));
    }
    // Pin the normalized coordinate exactly.
    for v in x.iter_mut() {
        *v /= zi;
    }
    let mut z = b.matvec_slice(&x);
    // Strictly interior y_j forces (B x)_j = 0 by complementary slackness.
    let interior = T::one() - T::tol(FEASIBILITY_TOL);
    for (zj, &yj) in z.iter_mut().zip(&res.values[..n]) {
        if yj.abs() < interior {
            *zj = T::zero();
        }
    }
    z[i] = T::one();
    let objective = norm(&z, NormKind::L1);
    let lambda = -res.objective;
    let gap_tol = T::tol(OPTIMALITY_TOL) * (T::one() + objective);
    if !objective.is_finite() || (objective - lambda).abs() > gap_tol {
        return Ok(L1ProgramSolution::failed(
            n,
            d,
            SolveStatus::NumericalFailure,
            res.iterations,
        ));
    }
    Ok(L1ProgramSolution {
        x: DenseVector::new(x)?,
        z: DenseVector::new(z)?,
        objective,
        status: SolveStatus::Optimal,
        iterations: res.iterations,
    })
}

/// Minimum of `||A x||_1` over one face `{ sign_j x_j >= 0, sum sign_j x_j = 1 }`.
///
/// Dual of the face LP: maximize `lambda` subject to
/// `(A D)^T y - lambda 1 - mu = 0`, `-1 <= y <= 1`, `mu >= 0`, with
/// `D = diag(sign)`. Returns the primal value of the recovered face point.
fn face_minimum<T: Scalar>(a: &DenseMatrix<T>, signs: &[T]) -> Result<T> {
    let (n, k) = (a.rows(), a.cols());
    let mut data = Vec::with_capacity(k * (n + 1 + k));
    for r in 0..n {
        data.extend((0..k).map(|j| a[(r, j)] * signs[j]));
    }
    data.extend(std::iter::repeat_n(-T::one(), k));
    for j in 0..k {
        data.extend((0..k).map(|c| if c == j { -T::one() } else { T::zero() }));
    }
    let constraints = DenseMatrix::from_column_major(k, n + 1 + k, data)?;
    let mut cost = vec![T::zero(); n + 1 + k];
    cost[n] = -T::one();
    let mut lower = vec![-T::one(); n + 1 + k];
    let mut upper = vec![T::one(); n + 1 + k];
    lower[n] = -T::infinity();
    upper[n] = T::infinity();
    for j in 0..k {
        lower[n + 1 + j] = T::zero();
        upper[n + 1 + j] = T::infinity();
    }
    let lp = BoundedLp {
        cost,
        constraints,
        rhs: vec![T::zero(); k],
        lower,
        upper,
    };
    let res = solve_bounded(&lp, options(n, k));
    if res.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure(format!(
            "face LP ended with status {:?}",
            res.status
        )));
    }
    // Multipliers are the face weights w >= 0 with sum 1.
    let w: Vec<T> = res.duals.iter().map(|&v| v.max(T::zero())).collect();
    let total: T = w.iter().copied().sum();
    if !(total > T::zero()) {
        return Err(Error::NumericalFailure("degenerate face weights".into()));
    }
    let x: Vec<T> = w.iter().zip(signs).map(|(&wj, &s)| s * wj / total).collect();
    let value = norm(&a.matvec_slice(&x), NormKind::L1);
    let lambda = -res.objective;
    let gap_tol = T::tol(1e-7) * (T::one() + value);
    if (value - lambda).abs() > gap_tol {
        return Err(Error::NumericalFailure(format!(
            "face LP duality gap {} too large",
            (value - lambda).abs()
        )));
    }
    Ok(value)
}

/// `min_{x != 0} ||A x||_1 / ||x||_1`, computed exactly.
///
/// Enumerates the `2^(k-1)` sign faces of the `l1` sphere with the first
/// sign fixed positive (`x -> -x` covers the rest). Faces run in parallel
/// for `k >= 8`; the result does not depend on scheduling.
pub fn min_l1_gain<T: Scalar>(a: &DenseMatrix<T>) -> Result<T> {
    let k = a.cols();
    if k == 0 || a.rows() == 0 {
        return Err(Error::InvalidArgument("min_l1_gain needs a nonempty matrix".into()));
    }
    if k > MAX_EXACT_GAIN_COLS {
        return Err(Error::Capability {
            k,
            max: MAX_EXACT_GAIN_COLS,
        });
    }
    let faces = 1usize << (k - 1);
    let signs_of = |mask: usize| -> Vec<T> {
        (0..k)
            .map(|j| {
                if j > 0 && (mask >> (j - 1)) & 1 == 1 {
                    -T::one()
                } else {
                    T::one()
                }
            })
            .collect()
    };
    let values: Vec<Result<T>> = if k >= 8 {
        (0..faces)
            .into_par_iter()
            .map(|mask| face_minimum(a, &signs_of(mask)))
            .collect()
    } else {
        (0..faces).map(|mask| face_minimum(a, &signs_of(mask))).collect()
    };
    let mut best = T::infinity();
    for v in values {
        best = best.min(v?);
    }
    Ok(best)
}

/// `sigma_min(A) / sqrt(k)`, a lower bound on [`min_l1_gain`] for any `k`.
pub fn min_l1_gain_lower_bound<T: Scalar>(a: &DenseMatrix<T>) -> Result<T> {
    let (sigma_min, _) = extreme_singular_values(a)?;
    Ok(sigma_min / T::lit(a.cols() as f64).sqrt())
}
