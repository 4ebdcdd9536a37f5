use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::DenseMatrix;

/// LU factorization with partial pivoting, `P A = L U`, stored packed.
#[derive(Clone, Debug)]
pub struct LuFactors<T> {
    n: usize,
    // Row-major packed L (unit diagonal, below) and U (on and above).
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> LuFactors<T> {
    pub fn new(a: &DenseMatrix<T>) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n {
            return Err(Error::dims("lu", "square matrix", format!("{}x{}", n, a.cols())));
        }
        let mut lu: Vec<T> = (0..n * n).map(|k| a[(k / n, k % n)]).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        let tiny = T::epsilon() * T::lit(n.max(1) as f64) * scale;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if lu[r * n + col].abs() > lu[piv * n + col].abs() {
                    piv = r;
                }
            }
            if lu[piv * n + col].abs() <= tiny {
                return Err(Error::NumericalFailure(format!(
                    "singular matrix at column {col}"
                )));
            }
            if piv != col {
                for c in 0..n {
                    lu.swap(piv * n + c, col * n + c);
                }
                perm.swap(piv, col);
            }
            let p = lu[col * n + col];
            for r in col + 1..n {
                let f = lu[r * n + col] / p;
                lu[r * n + col] = f;
                if f != T::zero() {
                    for c in col + 1..n {
                        let u = lu[col * n + c];
                        lu[r * n + c] -= f * u;
                    }
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            let mut acc = x[r];
            for c in 0..r {
                acc -= self.lu[r * n + c] * x[c];
            }
            x[r] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = x[r];
            for c in r + 1..n {
                acc -= self.lu[r * n + c] * x[c];
            }
            x[r] = acc / self.lu[r * n + r];
        }
        x
    }

    /// Solves `A^T x = b`.
    pub fn solve_transposed(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        // U^T w = b, then L^T y = w, then x = P^T y.
        let mut w = b.to_vec();
        for r in 0..n {
            let mut acc = w[r];
            for c in 0..r {
                acc -= self.lu[c * n + r] * w[c];
            }
            w[r] = acc / self.lu[r * n + r];
        }
        for r in (0..n).rev() {
            let mut acc = w[r];
            for c in r + 1..n {
                acc -= self.lu[c * n + r] * w[c];
            }
            w[r] = acc;
        }
        let mut x = vec![T::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        x
    }

    pub fn inverse(&self) -> DenseMatrix<T> {
        let n = self.n;
        let mut inv = DenseMatrix::zeros(n, n);
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e[j] = T::one();
            let col = self.solve(&e);
            inv.column_mut(j).copy_from_slice(&col);
            e[j] = T::zero();
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DenseMatrix<f64> {
        DenseMatrix::from_rows(&[
            vec![0.0, 2.0, 1.0],
            vec![1.0, -1.0, 3.0],
            vec![4.0, 0.5, -2.0],
        ])
    }

    #[test]
    fn solve_and_transpose_solve() {
        let a = sample();
        let lu = LuFactors::new(&a).unwrap();
        let b = [1.0, 2.0, 3.0];
        let x = lu.solve(&b);
        let ax = a.matvec_slice(&x);
        for i in 0..3 {
            assert!((ax[i] - b[i]).abs() < 1e-12);
        }
        let y = lu.solve_transposed(&b);
        let aty = a.transpose().matvec_slice(&y);
        for i in 0..3 {
            assert!((aty[i] - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = sample();
        let inv = LuFactors::new(&a).unwrap().inverse();
        let p = inv.matmul(&a).unwrap();
        let err = p.sub(&DenseMatrix::identity(3)).unwrap().max_abs();
        assert!(err < 1e-12);
    }

    #[test]
    fn singular_detected() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(LuFactors::new(&a).is_err());
    }
}
