//! Reference computations that share no code with the library's solvers.
#![allow(dead_code)]

use sparsest::Matrix;

/// Gaussian elimination with partial pivoting on a row-major system.
/// Returns `None` when the system is (numerically) singular.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for c in r + 1..n {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    Some(x)
}

fn combinations(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (p, &first) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[p + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Minimum of `||B x||_1` subject to `(B x)(i) = 1` by enumerating the
/// basic feasible points of the epigraph LP.
///
/// With `d` coefficients a vertex of the epigraph pins `(B x)(i) = 1` and
/// makes `d - 1` further coordinates of `B x` vanish (both epigraph
/// inequalities active there). Every such choice is solved directly.
/// Requires `B` of full column rank, so that vertices exist.
pub fn l1_program_by_vertices(b: &Matrix, i: usize) -> f64 {
    let (n, d) = (b.rows(), b.cols());
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let mut best = f64::INFINITY;
    for zeros in combinations(&others, d - 1) {
        let mut rows = vec![b.row(i)];
        let mut rhs = vec![1.0];
        for &j in &zeros {
            rows.push(b.row(j));
            rhs.push(0.0);
        }
        if let Some(x) = solve_dense(rows, rhs) {
            let z: f64 = (0..n)
                .map(|r| (0..d).map(|c| b[(r, c)] * x[c]).sum::<f64>().abs())
                .sum();
            best = best.min(z);
        }
    }
    best
}

fn ratio(a: &Matrix, x: &[f64]) -> f64 {
    let num: f64 = (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a[(r, c)] * x[c]).sum::<f64>().abs())
        .sum();
    num / x.iter().map(|v| v.abs()).sum::<f64>()
}

/// `min ||A x||_1 / ||x||_1` over `steps` angles of the half circle.
pub fn gain_by_angle_grid(a: &Matrix, steps: usize) -> f64 {
    assert_eq!(a.cols(), 2);
    (0..steps)
        .map(|t| {
            let th = std::f64::consts::PI * t as f64 / steps as f64;
            ratio(a, &[th.cos(), th.sin()])
        })
        .fold(f64::INFINITY, f64::min)
}

/// Same over `points` points of a Fibonacci lattice on the 2-sphere.
pub fn gain_by_sphere_grid(a: &Matrix, points: usize) -> f64 {
    assert_eq!(a.cols(), 3);
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..points)
        .map(|p| {
            let y = 1.0 - 2.0 * (p as f64 + 0.5) / points as f64;
            let r = (1.0 - y * y).sqrt();
            let th = golden * p as f64;
            ratio(a, &[r * th.cos(), y, r * th.sin()])
        })
        .fold(f64::INFINITY, f64::min)
}

/// Indices of nonzero entries above `tol`.
pub fn support(z: &[f64], tol: f64) -> Vec<usize> {
    (0..z.len()).filter(|&i| z[i].abs() > tol).collect()
}
