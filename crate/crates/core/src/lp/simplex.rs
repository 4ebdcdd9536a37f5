//! Dense revised simplex for bounded-variable linear programs
//!
//! ```text
//! minimize c^T u  subject to  A u = b,  lower <= u <= upper
//! ```
//!
//! Bounds may be infinite. Nonbasic variables may rest anywhere inside
//! their bounds (not only at a bound), which lets the caller start from a
//! feasible interior point and skip phase one entirely. One artificial
//! column per row absorbs the initial residual `b - A u0`; when that
//! residual vanishes the artificials are fixed at zero from the start and
//! the first pivots simply exchange them out of the basis.
//!
//! The basis inverse is kept explicitly (rows are few) and updated by
//! product-form pivots, with a fresh LU refactorization every
//! `refactor_period` pivots. Pricing is Dantzig's rule; after
//! `stall_limit` consecutive degenerate steps Bland's rule takes over until
//! the objective moves again. The ratio test is the two-pass Harris test.

use crate::numerics::{DenseMatrix, LuFactors};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct BoundedLp<T> {
    pub cost: Vec<T>,
    /// `m x N` constraint matrix.
    pub constraints: DenseMatrix<T>,
    pub rhs: Vec<T>,
    pub lower: Vec<T>,
    pub upper: Vec<T>,
}

#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    /// Absolute primal feasibility tolerance.
    pub feasibility_tol: f64,
    /// Reduced-cost tolerance for optimality.
    pub optimality_tol: f64,
    /// Smallest acceptable pivot magnitude.
    pub pivot_tol: f64,
    pub max_iterations: usize,
    pub stall_limit: usize,
    pub refactor_period: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-9,
            optimality_tol: 1e-11,
            pivot_tol: 1e-10,
            max_iterations: 10_000,
            stall_limit: 50,
            refactor_period: 40,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalFailure,
}

#[derive(Clone, Debug)]
pub struct LpResult<T> {
    pub status: LpStatus,
    /// Final values of the `N` structural variables.
    pub values: Vec<T>,
    /// Simplex multipliers `pi` with `B^T pi = c_B`.
    pub duals: Vec<T>,
    pub objective: T,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Position {
    Basic(usize),
    Nonbasic,
}

struct Tableau<'a, T> {
    lp: &'a BoundedLp<T>,
    opts: SimplexOptions,
    m: usize,
    n_struct: usize,
    // Artificial column r is `art_sign[r] * e_r`.
    art_sign: Vec<T>,
    lower: Vec<T>,
    upper: Vec<T>,
    x: Vec<T>,
    pos: Vec<Position>,
    basis: Vec<usize>,
    binv: DenseMatrix<T>,
    iterations: usize,
    pivots_since_refactor: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
    Failed,
}

impl<'a, T: Scalar> Tableau<'a, T> {
    fn new(lp: &'a BoundedLp<T>, opts: SimplexOptions) -> Self {
        let m = lp.constraints.rows();
        let n_struct = lp.constraints.cols();
        let mut x: Vec<T> = (0..n_struct)
            .map(|j| {
                // Start from 0 clipped into the bounds.
                let v = T::zero();
                if v < lp.lower[j] {
                    lp.lower[j]
                } else if v > lp.upper[j] {
                    lp.upper[j]
                } else {
                    v
                }
            })
            .collect();
        let mut residual = lp.rhs.clone();
        for (j, &xj) in x.iter().enumerate() {
            if xj != T::zero() {
                for (r, &a) in residual.iter_mut().zip(lp.constraints.column(j)) {
                    *r -= a * xj;
                }
            }
        }
        let art_sign: Vec<T> = residual
            .iter()
            .map(|&r| if r < T::zero() { -T::one() } else { T::one() })
            .collect();
        x.extend(residual.iter().map(|r| r.abs()));
        let mut lower = lp.lower.clone();
        let mut upper = lp.upper.clone();
        lower.extend(std::iter::repeat_n(T::zero(), m));
        upper.extend(std::iter::repeat_n(T::infinity(), m));
        let mut pos = vec![Position::Nonbasic; n_struct + m];
        for r in 0..m {
            pos[n_struct + r] = Position::Basic(r);
        }
        let mut binv = DenseMatrix::zeros(m, m);
        for r in 0..m {
            binv[(r, r)] = art_sign[r];
        }
        Self {
            lp,
            opts,
            m,
            n_struct,
            art_sign,
            lower,
            upper,
            x,
            pos,
            basis: (n_struct..n_struct + m).collect(),
            binv,
            iterations: 0,
            pivots_since_refactor: 0,
        }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.n_struct
    }

    fn cost(&self, j: usize, phase_one: bool) -> T {
        match (phase_one, self.is_artificial(j)) {
            (true, true) => T::one(),
            (true, false) | (false, true) => T::zero(),
            (false, false) => self.lp.cost[j],
        }
    }

    /// `B^{-1} a_j`.
    fn ftran(&self, j: usize) -> Vec<T> {
        if self.is_artificial(j) {
            let r = j - self.n_struct;
            self.binv.column(r).iter().map(|&v| v * self.art_sign[r]).collect()
        } else {
            self.binv.matvec_slice(self.lp.constraints.column(j))
        }
    }

    fn column_dot(&self, j: usize, y: &[T]) -> T {
        if self.is_artificial(j) {
            let r = j - self.n_struct;
            self.art_sign[r] * y[r]
        } else {
            self.lp
                .constraints
                .column(j)
                .iter()
                .zip(y)
                .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
        }
    }

    /// `pi = B^{-T} c_B`.
    fn duals(&self, phase_one: bool) -> Vec<T> {
        let cb: Vec<T> = self.basis.iter().map(|&j| self.cost(j, phase_one)).collect();
        (0..self.m)
            .map(|i| {
                self.binv
                    .column(i)
                    .iter()
                    .zip(&cb)
                    .fold(T::zero(), |acc, (&a, &c)| acc + a * c)
            })
            .collect()
    }

    fn refactor(&mut self) -> bool {
        let m = self.m;
        let mut bmat = DenseMatrix::zeros(m, m);
        for (r, &j) in self.basis.iter().enumerate() {
            if self.is_artificial(j) {
                let a = j - self.n_struct;
                bmat[(a, r)] = self.art_sign[a];
            } else {
                bmat.column_mut(r).copy_from_slice(self.lp.constraints.column(j));
            }
        }
        let Ok(lu) = LuFactors::new(&bmat) else {
            return false;
        };
        self.binv = lu.inverse();
        self.pivots_since_refactor = 0;
        // Recompute basic values from the nonbasic ones.
        let mut rhs = self.lp.rhs.clone();
        for j in 0..self.x.len() {
            if self.pos[j] == Position::Nonbasic && self.x[j] != T::zero() {
                let xj = self.x[j];
                if self.is_artificial(j) {
                    let a = j - self.n_struct;
                    rhs[a] -= self.art_sign[a] * xj;
                } else {
                    for (r, &a) in rhs.iter_mut().zip(self.lp.constraints.column(j)) {
                        *r -= a * xj;
                    }
                }
            }
        }
        let xb = self.binv.matvec_slice(&rhs);
        for (r, &j) in self.basis.iter().enumerate() {
            self.x[j] = xb[r];
        }
        true
    }

    fn step(&mut self, phase_one: bool, bland: bool) -> (Step, bool) {
        let opt_tol = T::tol(self.opts.optimality_tol);
        let feas_tol = T::tol(self.opts.feasibility_tol);
        let pivot_tol = T::tol(self.opts.pivot_tol);
        let pi = self.duals(phase_one);

        // Pricing.
        let mut entering: Option<(usize, T, T)> = None; // (j, direction, |d_j|)
        for j in 0..self.x.len() {
            if self.pos[j] != Position::Nonbasic || self.lower[j] == self.upper[j] {
                continue;
            }
            let d = self.cost(j, phase_one) - self.column_dot(j, &pi);
            let dir = if d < -opt_tol && self.x[j] < self.upper[j] {
                T::one()
            } else if d > opt_tol && self.x[j] > self.lower[j] {
                -T::one()
            } else {
                continue;
            };
            if bland {
                entering = Some((j, dir, d.abs()));
                break;
            }
            if entering.is_none_or(|(_, _, best)| d.abs() > best) {
                entering = Some((j, dir, d.abs()));
            }
        }
        let Some((q, dir, _)) = entering else {
            return (Step::Optimal, false);
        };

        let alpha = self.ftran(q);
        let alpha_scale = alpha.iter().fold(T::one(), |m, a| m.max(a.abs()));
        let piv_min = pivot_tol * alpha_scale;

        // Harris pass one: largest step with bounds relaxed by feas_tol.
        let mut theta_relaxed = T::infinity();
        for (r, &a) in alpha.iter().enumerate() {
            if a.abs() <= piv_min {
                continue;
            }
            let j = self.basis[r];
            let rate = -dir * a;
            let limit = if rate < T::zero() {
                (self.x[j] - self.lower[j] + feas_tol) / (-rate)
            } else {
                (self.upper[j] - self.x[j] + feas_tol) / rate
            };
            if limit < theta_relaxed {
                theta_relaxed = limit;
            }
        }
        let flip = if dir > T::zero() {
            self.upper[q] - self.x[q]
        } else {
            self.x[q] - self.lower[q]
        };

        // Pass two: among rows within the relaxed step, the largest pivot.
        let mut leave: Option<(usize, T, T)> = None; // (row, exact ratio, |alpha|)
        for (r, &a) in alpha.iter().enumerate() {
            if a.abs() <= piv_min {
                continue;
            }
            let j = self.basis[r];
            let rate = -dir * a;
            let ratio = if rate < T::zero() {
                (self.x[j] - self.lower[j]) / (-rate)
            } else {
                (self.upper[j] - self.x[j]) / rate
            };
            if !ratio.is_finite() || ratio > theta_relaxed {
                continue;
            }
            let ratio = ratio.max(T::zero());
            let better = match leave {
                None => true,
                Some((lr, lratio, la)) => {
                    if bland {
                        ratio < lratio || (ratio == lratio && j < self.basis[lr])
                    } else {
                        // Prefer leaving artificials, then the largest pivot.
                        let art_now = self.is_artificial(j);
                        let art_prev = self.is_artificial(self.basis[lr]);
                        (art_now && !art_prev) || (art_now == art_prev && a.abs() > la)
                    }
                }
            };
            if better {
                leave = Some((r, ratio, a.abs()));
            }
        }

        let row_step = leave.map_or(T::infinity(), |(_, ratio, _)| ratio);
        if flip.is_infinite() && row_step.is_infinite() {
            return (Step::Unbounded, false);
        }
        self.iterations += 1;

        if flip <= row_step {
            // Bound flip: no basis change.
            let theta = flip;
            self.x[q] = if dir > T::zero() { self.upper[q] } else { self.lower[q] };
            for (r, &a) in alpha.iter().enumerate() {
                let j = self.basis[r];
                self.x[j] -= dir * theta * a;
            }
            return (Step::Moved, theta <= feas_tol);
        }

        let (r_leave, theta, _) = leave.expect("finite row step");
        let leaving = self.basis[r_leave];
        for (r, &a) in alpha.iter().enumerate() {
            let j = self.basis[r];
            self.x[j] -= dir * theta * a;
        }
        self.x[q] += dir * theta;
        // Snap the leaving variable onto the bound it reached.
        let rate = -dir * alpha[r_leave];
        self.x[leaving] = if rate < T::zero() {
            self.lower[leaving]
        } else {
            self.upper[leaving]
        };
        self.pos[leaving] = Position::Nonbasic;
        self.pos[q] = Position::Basic(r_leave);
        self.basis[r_leave] = q;

        // Product-form update of the inverse.
        let ar = alpha[r_leave];
        for c in 0..self.m {
            let t = self.binv[(r_leave, c)] / ar;
            if t == T::zero() {
                continue;
            }
            for (i, &ai) in alpha.iter().enumerate() {
                if i == r_leave {
                    self.binv[(i, c)] = t;
                } else {
                    self.binv[(i, c)] -= ai * t;
                }
            }
        }
        self.pivots_since_refactor += 1;
        if self.pivots_since_refactor >= self.opts.refactor_period && !self.refactor() {
            return (Step::Failed, false);
        }
        (Step::Moved, theta <= feas_tol)
    }

    fn run_phase(&mut self, phase_one: bool) -> LpStatus {
        let mut stalled = 0usize;
        loop {
            if self.iterations >= self.opts.max_iterations {
                return LpStatus::IterationLimit;
            }
            let bland = stalled >= self.opts.stall_limit;
            match self.step(phase_one, bland) {
                (Step::Optimal, _) => {
                    // Confirm on a fresh factorization before declaring victory.
                    if self.pivots_since_refactor == 0 {
                        return LpStatus::Optimal;
                    }
                    if !self.refactor() {
                        return LpStatus::NumericalFailure;
                    }
                    if let (Step::Optimal, _) = self.step(phase_one, bland) {
                        return LpStatus::Optimal;
                    }
                }
                (Step::Unbounded, _) => return LpStatus::Unbounded,
                (Step::Failed, _) => return LpStatus::NumericalFailure,
                (Step::Moved, degenerate) => {
                    if degenerate {
                        stalled += 1;
                    } else {
                        stalled = 0;
                    }
                }
            }
        }
    }

    fn finish(mut self, status: LpStatus) -> LpResult<T> {
        if status == LpStatus::Optimal && self.pivots_since_refactor > 0 && !self.refactor() {
            return self.finish(LpStatus::NumericalFailure);
        }
        let duals = self.duals(false);
        let values = self.x[..self.n_struct].to_vec();
        let objective = values
            .iter()
            .zip(&self.lp.cost)
            .fold(T::zero(), |acc, (&x, &c)| acc + x * c);
        LpResult {
            status,
            values,
            duals,
            objective,
            iterations: self.iterations,
        }
    }
}

/// Solves `lp`. Never panics on numerical trouble; inspect `status`.
pub fn solve_bounded<T: Scalar>(lp: &BoundedLp<T>, opts: SimplexOptions) -> LpResult<T> {
    let m = lp.constraints.rows();
    let n = lp.constraints.cols();
    assert_eq!(lp.cost.len(), n, "cost length");
    assert_eq!(lp.rhs.len(), m, "rhs length");
    assert_eq!(lp.lower.len(), n, "lower length");
    assert_eq!(lp.upper.len(), n, "upper length");

    let mut tab = Tableau::new(lp, opts);
    let feas_tol = T::tol(opts.feasibility_tol);
    let rhs_scale = lp.rhs.iter().fold(T::one(), |m, r| m.max(r.abs()));
    let needs_phase_one = tab.x[n..].iter().any(|&a| a > feas_tol * rhs_scale);

    if needs_phase_one {
        let status = tab.run_phase(true);
        if status != LpStatus::Optimal {
            return tab.finish(status);
        }
        let infeasibility: T = tab.x[n..].iter().copied().sum();
        if infeasibility > feas_tol * rhs_scale * T::lit(m.max(1) as f64) {
            return tab.finish(LpStatus::Infeasible);
        }
    }
    for r in 0..m {
        tab.upper[n + r] = T::zero();
        if tab.pos[n + r] == Position::Nonbasic {
            tab.x[n + r] = T::zero();
        }
    }
    let status = tab.run_phase(false);
    tab.finish(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(cost: Vec<f64>, rows: &[Vec<f64>], rhs: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> BoundedLp<f64> {
        BoundedLp {
            cost,
            constraints: DenseMatrix::from_rows(rows),
            rhs,
            lower,
            upper,
        }
    }

    #[test]
    fn small_bounded_problem() {
        // min -x - 2y s.t. x + y = 1, 0 <= x, y <= 1  -> y = 1, objective -2
        let p = lp(vec![-1.0, -2.0], &[vec![1.0, 1.0]], vec![1.0], vec![0.0; 2], vec![1.0; 2]);
        let res = solve_bounded(&p, SimplexOptions::default());
        assert_eq!(res.status, LpStatus::Optimal);
        assert!((res.objective + 2.0).abs() < 1e-12);
        assert!((res.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 3 with both in [0, 1].
        let p = lp(vec![1.0, 1.0], &[vec![1.0, 1.0]], vec![3.0], vec![0.0; 2], vec![1.0; 2]);
        assert_eq!(solve_bounded(&p, SimplexOptions::default()).status, LpStatus::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // min -x s.t. x - y = 0, x, y >= 0.
        let inf = f64::INFINITY;
        let p = lp(vec![-1.0, 0.0], &[vec![1.0, -1.0]], vec![0.0], vec![0.0; 2], vec![inf; 2]);
        assert_eq!(solve_bounded(&p, SimplexOptions::default()).status, LpStatus::Unbounded);
    }

    #[test]
    fn free_variable_and_duals() {
        // max t s.t. y1 + y2 - t = 0, -1 <= y <= 1, t free: t = 2, dual pi = 1.
        let inf = f64::INFINITY;
        let p = lp(
            vec![0.0, 0.0, -1.0],
            &[vec![1.0, 1.0, -1.0]],
            vec![0.0],
            vec![-1.0, -1.0, -inf],
            vec![1.0, 1.0, inf],
        );
        let res = solve_bounded(&p, SimplexOptions::default());
        assert_eq!(res.status, LpStatus::Optimal);
        assert!((res.objective + 2.0).abs() < 1e-12);
        assert!((res.duals[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn iteration_cap_reported() {
        let p = lp(vec![-1.0, -2.0], &[vec![1.0, 1.0]], vec![1.0], vec![0.0; 2], vec![1.0; 2]);
        let opts = SimplexOptions {
            max_iterations: 0,
            ..SimplexOptions::default()
        };
        assert_eq!(solve_bounded(&p, opts).status, LpStatus::IterationLimit);
    }
}
