//! Subspace and signal generators.
//!
//! The planted model hides `v` in `span{v, vtilde_1, .., vtilde_k}` with
//! iid standard normal `vtilde_j`; the recovery path sees only a mixed
//! basis `W` of that span.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::numerics::{orthonormal_basis, singular_values, DenseMatrix, DenseVector, NormKind};
use crate::randomness::RngStream;
use crate::scalar::Scalar;

/// Largest accepted condition number of the mixing matrix.
pub const MAX_MIX_CONDITION: f64 = 1e3;
const MAX_MIX_ATTEMPTS: usize = 1000;

/// `v = 1_S + delta * u` with `u` an `l1`-normalized Gaussian vector.
#[derive(Clone, Debug, PartialEq)]
pub struct TestVectorSpec {
    pub n: usize,
    pub delta: f64,
    pub support: Vec<usize>,
}

impl TestVectorSpec {
    /// Support `{0, .., s-1}`.
    pub fn leading(n: usize, s: usize, delta: f64) -> Self {
        Self {
            n,
            delta,
            support: (0..s).collect(),
        }
    }

    pub fn s(&self) -> usize {
        self.support.len()
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.s();
        if s == 0 || s > self.n {
            return Err(Error::InvalidArgument(format!(
                "support size must lie in 1..={}, got {s}",
                self.n
            )));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "delta must be finite and nonnegative, got {}",
                self.delta
            )));
        }
        let mut seen = vec![false; self.n];
        for &i in &self.support {
            if i >= self.n || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "support index {i} is out of range or repeated"
                )));
            }
            seen[i] = true;
        }
        Ok(())
    }
}

/// Draws `1_S + delta * g / ||g||_1`.
///
/// `g` is drawn even when `delta = 0`, so vectors built from the same
/// stream at different `delta` share their noise direction.
pub fn make_test_vector<T: Scalar>(spec: &TestVectorSpec, stream: &mut RngStream) -> Result<DenseVector<T>> {
    spec.validate()?;
    let g: Vec<f64> = (0..spec.n).map(|_| stream.standard_normal()).collect();
    let g1: f64 = g.iter().map(|x| x.abs()).sum();
    let mut v = vec![0.0f64; spec.n];
    for &i in &spec.support {
        v[i] = 1.0;
    }
    if spec.delta > 0.0 {
        for (vi, gi) in v.iter_mut().zip(&g) {
            *vi += spec.delta * gi / g1;
        }
    }
    DenseVector::new(v.into_iter().map(T::lit).collect())
}

/// Ground truth of one planted trial.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance<T> {
    pub n: usize,
    pub k: usize,
    pub v: DenseVector<T>,
    /// `n x k`, iid standard normal.
    pub vtilde: DenseMatrix<T>,
    /// Observed basis `[v | vtilde] * mix`.
    pub w: DenseMatrix<T>,
    pub mix: DenseMatrix<T>,
    /// Lowest index of a largest `|v(i)|`.
    pub i_star: usize,
    /// Indices of the `s` largest `|v(i)|`, ascending.
    pub support: Vec<usize>,
}

impl<T: Scalar> PlantedInstance<T> {
    /// `[v | vtilde]`, the basis before mixing.
    pub fn unmixed(&self) -> DenseMatrix<T> {
        DenseMatrix::from_columns(std::slice::from_ref(&self.v))
            .and_then(|m| m.hcat(&self.vtilde))
            .expect("v and vtilde have n rows")
    }

    /// `v / v(i_star)`, the target of recovery.
    pub fn target(&self) -> DenseVector<T> {
        self.v.scaled(T::one() / self.v[self.i_star])
    }
}

/// Indices of the `s` largest magnitudes, ties to the lowest index,
/// returned in ascending order.
pub fn top_indices<T: Scalar>(x: &[T], s: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| {
        x[b].abs()
            .partial_cmp(&x[a].abs())
            .expect("finite entries")
            .then(a.cmp(&b))
    });
    idx.truncate(s);
    idx.sort_unstable();
    idx
}

fn condition_number<T: Scalar>(m: &DenseMatrix<T>) -> Result<T> {
    let s = singular_values(m)?;
    let lo = s[s.len() - 1];
    Ok(if lo > T::zero() { s[0] / lo } else { T::infinity() })
}

/// Plants `v` among `k` Gaussian directions.
///
/// `vtilde` is drawn first, then (when `mixed`) the mixing matrix, which
/// is redrawn until its condition number is at most `1e3`. With `mixed`
/// off the mix is the identity and `W = [v | vtilde]`. `support_size`
/// fixes how many of the largest `|v(i)|` form the recorded support.
pub fn planted_random<T: Scalar>(
    v: &DenseVector<T>,
    k: usize,
    support_size: usize,
    mixed: bool,
    stream: &mut RngStream,
) -> Result<PlantedInstance<T>> {
    let n = v.len();
    if k == 0 || k + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "planted model needs 1 <= k <= n - 1, got k = {k}, n = {n}"
        )));
    }
    if support_size == 0 || support_size > n {
        return Err(Error::InvalidArgument(format!(
            "support size must lie in 1..={n}, got {support_size}"
        )));
    }
    if !v.is_finite() || v.norm(NormKind::Linf) == T::zero() {
        return Err(Error::InvalidArgument(
            "planted vector must be finite and nonzero".into(),
        ));
    }
    let vtilde: DenseMatrix<T> = stream.gaussian_matrix(n, k);
    let mix = if mixed {
        let mut attempt = 0;
        loop {
            let m: DenseMatrix<T> = stream.gaussian_matrix(k + 1, k + 1);
            if condition_number(&m)? <= T::lit(MAX_MIX_CONDITION) {
                break m;
            }
            attempt += 1;
            if attempt == MAX_MIX_ATTEMPTS {
                return Err(Error::NumericalFailure(format!(
                    "no mixing matrix with condition <= {MAX_MIX_CONDITION} in {MAX_MIX_ATTEMPTS} draws"
                )));
            }
        }
    } else {
        DenseMatrix::identity(k + 1)
    };
    let mut inst = PlantedInstance {
        n,
        k,
        v: v.clone(),
        vtilde,
        w: DenseMatrix::zeros(n, k + 1),
        mix,
        i_star: v.argmax_abs(),
        support: top_indices(v.as_slice(), support_size),
    };
    inst.w = if mixed {
        inst.unmixed().matmul(&inst.mix)?
    } else {
        inst.unmixed()
    };
    Ok(inst)
}

/// `n x k` iid standard normal basis with no planted vector.
pub fn pure_random_basis<T: Scalar>(n: usize, k: usize, stream: &mut RngStream) -> Result<DenseMatrix<T>> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "random basis needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(stream.gaussian_matrix(n, k))
}

/// Each entry zero with probability `1 - theta`, else standard normal.
pub fn bernoulli_gaussian<T: Scalar>(
    rows: usize,
    cols: usize,
    theta: f64,
    stream: &mut RngStream,
) -> Result<DenseMatrix<T>> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, 1], got {theta}"
        )));
    }
    Ok(DenseMatrix::from_fn(rows, cols, |_, _| {
        // Two draws per entry whatever theta is.
        let keep = stream.bernoulli(theta);
        let g = stream.standard_normal();
        if keep {
            T::lit(g)
        } else {
            T::zero()
        }
    }))
}

/// Diagonal of the orthogonal projector onto `range(W)`.
pub fn projector_diagonal<T: Scalar>(w: &DenseMatrix<T>) -> DenseVector<T> {
    let q = orthonormal_basis(w);
    DenseVector::from_fn(w.rows(), |i| q.row(i).iter().map(|&x| x * x).sum())
}

/// Text form: a `rows cols` header, then one line per row.
pub fn matrix_to_text<T: Scalar>(m: &DenseMatrix<T>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{:.16e}", m[(i, j)].as_f64()).expect("write to string");
        }
        out.push('\n');
    }
    out
}

pub fn matrix_from_text<T: Scalar>(text: &str) -> std::result::Result<DenseMatrix<T>, String> {
    let mut tokens = text.split_whitespace();
    let mut header = |what: &str| -> std::result::Result<usize, String> {
        tokens
            .next()
            .ok_or_else(|| format!("missing {what} in header"))?
            .parse()
            .map_err(|e| format!("bad {what} in header: {e}"))
    };
    let rows = header("row count")?;
    let cols = header("column count")?;
    let mut m = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let tok = tokens
                .next()
                .ok_or_else(|| format!("expected {} entries, found fewer", rows * cols))?;
            let x: f64 = tok
                .parse()
                .map_err(|_| format!("entry ({i}, {j}) is not a number: {tok:?}"))?;
            if !x.is_finite() {
                return Err(format!("entry ({i}, {j}) is not finite"));
            }
            m[(i, j)] = T::lit(x);
        }
    }
    if tokens.next().is_some() {
        return Err(format!("more than {} entries", rows * cols));
    }
    Ok(m)
}

pub fn write_matrix<T: Scalar>(m: &DenseMatrix<T>, path: &Path) -> Result<()> {
    std::fs::write(path, matrix_to_text(m)).map_err(|e| Error::io(path, e))
}

pub fn read_matrix<T: Scalar>(path: &Path) -> Result<DenseMatrix<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    matrix_from_text(&text).map_err(|msg| Error::parse(path, msg))
}
