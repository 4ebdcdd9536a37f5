//! Singular values by one-sided (Hestenes) Jacobi.
//!
//! Rotating column pairs of `A` until they are mutually orthogonal is the
//! cyclic Jacobi eigen-iteration on `A^T A` carried out implicitly, without
//! forming the Gram matrix. Column norms at convergence are the singular
//! values, accurate to high relative precision.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{dot, DenseMatrix};

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Runs Jacobi sweeps in place. Returns the sweeps used.
///
/// On return the columns of `u` are mutually orthogonal and equal
/// `sigma_j * u_j`; `v` (if given) accumulates the right rotations.
pub(crate) fn jacobi_orthogonalize<T: Scalar>(
    u: &mut DenseMatrix<T>,
    mut v: Option<&mut DenseMatrix<T>>,
) -> Result<usize> {
    let k = u.cols();
    let n = u.rows();
    let tol = T::epsilon() * T::lit(n.max(2) as f64).sqrt();
    let mut norms: Vec<T> = (0..k).map(|j| dot(u.column(j), u.column(j))).collect();
    let floor = norms.iter().fold(T::zero(), |m, &x| m.max(x)) * T::epsilon() * T::epsilon();
    for sweep in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha = norms[p];
                let beta = norms[q];
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma = dot(u.column(p), u.column(q));
                if gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate_columns(u, p, q, c, s);
                if let Some(v) = v.as_deref_mut() {
                    rotate_columns(v, p, q, c, s);
                }
                norms[p] = dot(u.column(p), u.column(p));
                norms[q] = dot(u.column(q), u.column(q));
            }
        }
        if !rotated {
            return Ok(sweep + 1);
        }
    }
    Err(Error::NumericalFailure(format!(
        "Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
    )))
}

fn rotate_columns<T: Scalar>(m: &mut DenseMatrix<T>, p: usize, q: usize, c: T, s: T) {
    let rows = m.rows();
    for i in 0..rows {
        let a = m[(i, p)];
        let b = m[(i, q)];
        m[(i, p)] = c * a - s * b;
        m[(i, q)] = s * a + c * b;
    }
}

/// All singular values of an `n x k` matrix (`k <= n`), descending.
pub fn singular_values<T: Scalar>(a: &DenseMatrix<T>) -> Result<Vec<T>> {
    if a.cols() > a.rows() {
        // Same nonzero spectrum; keep the tall orientation.
        return singular_values(&a.transpose());
    }
    let mut u = a.clone();
    jacobi_orthogonalize(&mut u, None)?;
    let mut s: Vec<T> = (0..u.cols())
        .map(|j| super::norm(u.column(j), super::NormKind::L2))
        .collect();
    s.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    Ok(s)
}

/// `(sigma_min, sigma_max)` of an `n x k` matrix with `1 <= k <= n`.
pub fn extreme_singular_values<T: Scalar>(a: &DenseMatrix<T>) -> Result<(T, T)> {
    if a.cols() == 0 || a.cols() > a.rows() {
        return Err(Error::InvalidArgument(format!(
            "extreme singular values need 1 <= k <= n, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let s = singular_values(a)?;
    Ok((s[s.len() - 1], s[0]))
}
