use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::svd::jacobi_orthogonalize;
use super::{dot, norm, DenseMatrix, DenseVector, NormKind};

/// Relative singular-value cutoff for numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Orthonormal basis of `range(A)`, one column per numerical rank.
///
/// Directions with singular value at most `1e-10 * sigma_max` are
/// dropped. A zero matrix yields an `n x 0` result.
pub fn orthonormal_basis<T: Scalar>(a: &DenseMatrix<T>) -> DenseMatrix<T> {
    let n = a.rows();
    let mut u = a.clone();
    if jacobi_orthogonalize(&mut u, None).is_err() {
        // Jacobi failed to settle; Gram-Schmidt below still produces a basis.
        u = a.clone();
    }
    let mut cols: Vec<(T, usize)> = (0..u.cols())
        .map(|j| (norm(u.column(j), NormKind::L2), j))
        .collect();
    cols.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite norms").then(x.1.cmp(&y.1)));
    let sigma_max = cols.first().map_or(T::zero(), |c| c.0);
    let cutoff = T::tol(RANK_TOLERANCE) * sigma_max;
    let mut basis: Vec<Vec<T>> = Vec::new();
    for &(sigma, j) in &cols {
        if sigma <= cutoff || sigma == T::zero() {
            break;
        }
        let mut q: Vec<T> = u.column(j).iter().map(|&x| x / sigma).collect();
        // Two passes of modified Gram-Schmidt against the accepted columns.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&q, b);
                for (qi, &bi) in q.iter_mut().zip(b) {
                    *qi -= c * bi;
                }
            }
        }
        let len = norm(&q, NormKind::L2);
        if len <= T::lit(0.5) {
            // Lost to cancellation: not an independent direction.
            continue;
        }
        for qi in q.iter_mut() {
            *qi /= len;
        }
        basis.push(q);
    }
    let mut out = DenseMatrix::zeros(n, basis.len());
    for (j, b) in basis.iter().enumerate() {
        out.column_mut(j).copy_from_slice(b);
    }
    out
}

/// Least-squares solution of `A x ~ b` by Householder QR.
///
/// `A` must be `n x d` with `d <= n` and full column rank.
pub fn least_squares<T: Scalar>(a: &DenseMatrix<T>, b: &DenseVector<T>) -> Result<DenseVector<T>> {
    let (n, d) = (a.rows(), a.cols());
    if b.len() != n {
        return Err(Error::dims("least_squares", n, b.len()));
    }
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "least squares needs a tall matrix, got {n}x{d}"
        )));
    }
    let mut r = a.clone();
    let mut rhs = b.as_slice().to_vec();
    let scale = r.max_abs();
    for j in 0..d {
        let col = &r.column(j)[j..];
        let alpha = norm(col, NormKind::L2);
        if alpha <= T::epsilon() * T::lit(n as f64) * scale {
            return Err(Error::NumericalFailure(format!(
                "rank deficient least squares at column {j}"
            )));
        }
        let alpha = if col[0] > T::zero() { -alpha } else { alpha };
        let mut h: Vec<T> = col.to_vec();
        h[0] -= alpha;
        let hh = dot(&h, &h);
        if hh == T::zero() {
            continue;
        }
        for c in j..d {
            let f = T::lit(2.0) * dot(&h, &r.column(c)[j..]) / hh;
            for (x, &hi) in r.column_mut(c)[j..].iter_mut().zip(&h) {
                *x -= f * hi;
            }
        }
        let f = T::lit(2.0) * dot(&h, &rhs[j..]) / hh;
        for (x, &hi) in rhs[j..].iter_mut().zip(&h) {
            *x -= f * hi;
        }
    }
    let mut x = vec![T::zero(); d];
    for i in (0..d).rev() {
        let mut acc = rhs[i];
        for c in i + 1..d {
            acc -= r[(i, c)] * x[c];
        }
        x[i] = acc / r[(i, i)];
    }
    DenseVector::new(x)
}
