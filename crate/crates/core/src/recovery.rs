//! Solve all `n` programs, pick the sparsest output, judge it, and check
//! the deterministic recovery certificates.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{min_l1_gain, solve_l1_program, L1ProgramSolution, SolveStatus, MAX_EXACT_GAIN_COLS};
use crate::models::{projector_diagonal, top_indices};
use crate::numerics::{l1_operator_norm, DenseMatrix, DenseVector, NormKind};
use crate::scalar::Scalar;

pub const DEFAULT_EPSILON: f64 = 0.01;
pub const DEFAULT_ZERO_TOL: f64 = 1e-6;
pub const DEFAULT_TAU: f64 = 0.01;

/// Rule that picks one output among the `n` candidates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Selector {
    /// The program normalized at `i*`; needs the ground truth.
    Oracle,
    L1OverLinf,
    L1OverL2,
    /// `#{i : |z(i)| >= epsilon}`.
    ThresholdedL0 { epsilon: f64 },
    /// `#{i : |z(i)| > zero_tol}`.
    StrictL0 { zero_tol: f64 },
}

impl Selector {
    pub fn thresholded() -> Self {
        Selector::ThresholdedL0 { epsilon: DEFAULT_EPSILON }
    }

    pub fn strict() -> Self {
        Selector::StrictL0 { zero_tol: DEFAULT_ZERO_TOL }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Selector::ThresholdedL0 { epsilon: t } | Selector::StrictL0 { zero_tol: t }
                if !(t > 0.0 && t.is_finite()) =>
            {
                Err(Error::InvalidArgument(format!(
                    "selector threshold must be positive, got {t}"
                )))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Oracle => f.write_str("oracle"),
            Selector::L1OverLinf => f.write_str("l1linf"),
            Selector::L1OverL2 => f.write_str("l1l2"),
            Selector::ThresholdedL0 { epsilon } => write!(f, "tl0={epsilon}"),
            Selector::StrictL0 { zero_tol } => write!(f, "l0={zero_tol}"),
        }
    }
}

/// Accepts `oracle`, `l1linf`, `l1l2`, `tl0[=eps]` and `l0[=tol]`.
impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once('=') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let param = |default: f64| -> Result<f64> {
            arg.map_or(Ok(default), |a| {
                a.parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad selector parameter in {s:?}")))
            })
        };
        let sel = match (name, arg) {
            ("oracle", None) => Selector::Oracle,
            ("l1linf", None) => Selector::L1OverLinf,
            ("l1l2", None) => Selector::L1OverL2,
            ("tl0", _) => Selector::ThresholdedL0 { epsilon: param(DEFAULT_EPSILON)? },
            ("l0", _) => Selector::StrictL0 { zero_tol: param(DEFAULT_ZERO_TOL)? },
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown selector {s:?} (expected oracle, l1linf, l1l2, tl0[=eps], l0[=tol])"
                )))
            }
        };
        sel.validate()?;
        Ok(sel)
    }
}

impl serde::Serialize for Selector {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Selector {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSolution<T> {
    /// Normalization index of the program.
    pub index: usize,
    pub solution: L1ProgramSolution<T>,
}

/// Solves the program for every normalization index.
///
/// Infeasible and failed programs stay in the list with their status.
pub fn recover_all<T: Scalar>(w: &DenseMatrix<T>) -> Result<Vec<CandidateSolution<T>>> {
    if w.cols() > w.rows() {
        return Err(Error::InvalidArgument(format!(
            "basis must have at most n columns, got {}x{}",
            w.rows(),
            w.cols()
        )));
    }
    if !w.is_finite() {
        return Err(Error::InvalidArgument("basis has non-finite entries".into()));
    }
    (0..w.rows())
        .into_par_iter()
        .map(|i| solve_l1_program(w, i).map(|solution| CandidateSolution { index: i, solution }))
        .collect()
}

/// Sparsity of `z` under `selector`; lower is sparser.
pub fn sparsity_score<T: Scalar>(z: &DenseVector<T>, selector: &Selector) -> Result<T> {
    let count = |pred: &dyn Fn(T) -> bool| T::lit(z.iter().filter(|&&x| pred(x)).count() as f64);
    match *selector {
        Selector::Oracle => Err(Error::InvalidArgument(
            "the oracle selector has no sparsity score".into(),
        )),
        Selector::L1OverLinf | Selector::L1OverL2 => {
            let den = z.norm(if *selector == Selector::L1OverLinf {
                NormKind::Linf
            } else {
                NormKind::L2
            });
            if den == T::zero() {
                return Err(Error::InvalidArgument(
                    "ratio sparsity of the zero vector".into(),
                ));
            }
            Ok(z.norm(NormKind::L1) / den)
        }
        Selector::ThresholdedL0 { epsilon } => Ok(count(&|x| x.abs() >= T::lit(epsilon))),
        Selector::StrictL0 { zero_tol } => Ok(count(&|x| x.abs() > T::lit(zero_tol))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Selection<T> {
    pub chosen_index: usize,
    pub z_hat: DenseVector<T>,
    /// One per candidate; `+inf` for candidates that are not optimal.
    /// Under the oracle these are the `l1` objectives.
    pub scores: Vec<T>,
}

/// Picks a candidate. Ties go to the lowest index.
pub fn select<T: Scalar>(
    candidates: &[CandidateSolution<T>],
    selector: &Selector,
    oracle_index: Option<usize>,
) -> Result<Selection<T>> {
    let scores = candidates
        .iter()
        .map(|c| {
            if !c.solution.is_optimal() {
                Ok(T::infinity())
            } else if *selector == Selector::Oracle {
                Ok(c.solution.objective)
            } else {
                sparsity_score(&c.solution.z, selector)
            }
        })
        .collect::<Result<Vec<T>>>()?;
    let pos = if *selector == Selector::Oracle {
        let want = oracle_index.ok_or_else(|| {
            Error::Selection("the oracle selector needs the index i*".into())
        })?;
        let pos = candidates
            .iter()
            .position(|c| c.index == want)
            .ok_or_else(|| Error::Selection(format!("no candidate for index {want}")))?;
        if !candidates[pos].solution.is_optimal() {
            return Err(Error::Selection(format!(
                "program at i* = {want} ended {:?}",
                candidates[pos].solution.status
            )));
        }
        pos
    } else {
        let mut best: Option<usize> = None;
        for (p, c) in candidates.iter().enumerate() {
            if !c.solution.is_optimal() {
                continue;
            }
            best = match best {
                Some(b)
                    if scores[b] < scores[p]
                        || (scores[b] == scores[p] && candidates[b].index < c.index) =>
                {
                    Some(b)
                }
                _ => Some(p),
            };
        }
        best.ok_or_else(|| Error::Selection("no candidate program was solved".into()))?
    };
    Ok(Selection {
        chosen_index: candidates[pos].index,
        z_hat: candidates[pos].solution.z.clone(),
        scores,
    })
}

/// `(||z_hat - v / v(i*)||_2, error <= tau)`.
pub fn evaluate_success<T: Scalar>(z_hat: &DenseVector<T>, v: &DenseVector<T>, tau: T) -> Result<(T, bool)> {
    if z_hat.len() != v.len() {
        return Err(Error::dims("evaluate_success", v.len(), z_hat.len()));
    }
    let i_star = v.argmax_abs();
    if v[i_star] == T::zero() {
        return Err(Error::InvalidArgument("reference vector is zero".into()));
    }
    let err = z_hat.sub(&v.scaled(T::one() / v[i_star])).norm(NormKind::L2);
    Ok((err, err <= tau))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome<T> {
    pub chosen_index: usize,
    pub z_hat: DenseVector<T>,
    pub error: T,
    pub success: bool,
    pub per_candidate_scores: Vec<T>,
}

/// Selects among `candidates` and judges the pick against `v`.
pub fn judge<T: Scalar>(
    candidates: &[CandidateSolution<T>],
    selector: &Selector,
    v: &DenseVector<T>,
    tau: T,
) -> Result<TrialOutcome<T>> {
    let sel = select(candidates, selector, Some(v.argmax_abs()))?;
    let (error, success) = evaluate_success(&sel.z_hat, v, tau)?;
    Ok(TrialOutcome {
        chosen_index: sel.chosen_index,
        z_hat: sel.z_hat,
        error,
        success,
        per_candidate_scores: sel.scores,
    })
}

/// Minimum `l1` norm in `range(vtilde)` with coordinate `i_star` pinned
/// to one: the largest `||v||_1 / ||v||_inf` that exact recovery at
/// `i*` can tolerate.
pub fn necessary_condition_value<T: Scalar>(vtilde: &DenseMatrix<T>, i_star: usize) -> Result<T> {
    let sol = solve_l1_program(vtilde, i_star)?;
    match sol.status {
        SolveStatus::Optimal => Ok(sol.objective),
        SolveStatus::Infeasible => Err(Error::Infeasible(format!(
            "row {i_star} of the random basis is zero"
        ))),
        SolveStatus::NumericalFailure => Err(Error::NumericalFailure(format!(
            "necessary-condition program at {i_star} did not converge"
        ))),
    }
}

/// The quantities the recovery certificates compare, with `v` rescaled
/// so that `v(i*) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateTerms<T> {
    pub s: usize,
    /// `l1 -> l1` norm of the rows of `vtilde` in `S`.
    pub inside_norm: T,
    /// Minimum `l1` gain of the rows of `vtilde` outside `S`.
    pub outside_gain: T,
    /// `||a||_inf` for `a` the row `i*` of `vtilde`.
    pub a_inf: T,
    /// `l1` mass of the rescaled `v` outside `S`.
    pub tail: T,
}

impl<T: Scalar> CertificateTerms<T> {
    fn holds(&self, alpha: T) -> bool {
        let s = T::lit(self.s as f64);
        self.inside_norm <= T::lit(2.0) * s
            && self.outside_gain >= (T::lit(2.0) * self.a_inf + T::lit(2.0) + alpha) * s
    }
}

/// Computes the certificate terms. `support` must hold a best
/// `|S|`-term approximation of `v` (no entry outside may exceed one
/// inside in magnitude).
pub fn certificate_terms<T: Scalar>(
    v: &DenseVector<T>,
    vtilde: &DenseMatrix<T>,
    support: &[usize],
) -> Result<CertificateTerms<T>> {
    let n = v.len();
    if vtilde.rows() != n {
        return Err(Error::dims("certificate", n, vtilde.rows()));
    }
    if vtilde.cols() > MAX_EXACT_GAIN_COLS {
        return Err(Error::Capability {
            k: vtilde.cols(),
            max: MAX_EXACT_GAIN_COLS,
        });
    }
    let i_star = v.argmax_abs();
    if v[i_star] == T::zero() {
        return Err(Error::InvalidArgument("planted vector is zero".into()));
    }
    let mut inside = vec![false; n];
    for &i in support {
        if i >= n || inside[i] {
            return Err(Error::InvalidArgument(format!(
                "support index {i} is out of range or repeated"
            )));
        }
        inside[i] = true;
    }
    if support.is_empty() {
        return Err(Error::InvalidArgument("support is empty".into()));
    }
    let vr = v.scaled(T::one() / v[i_star]);
    let min_in = support.iter().map(|&i| vr[i].abs()).fold(T::infinity(), T::min);
    let outside: Vec<usize> = (0..n).filter(|&i| !inside[i]).collect();
    let max_out = outside.iter().map(|&i| vr[i].abs()).fold(T::zero(), T::max);
    if max_out > min_in {
        return Err(Error::InvalidArgument(
            "support does not hold the largest entries of v".into(),
        ));
    }
    let outside_gain = if outside.is_empty() {
        T::zero()
    } else {
        min_l1_gain(&vtilde.select_rows(&outside))?
    };
    Ok(CertificateTerms {
        s: support.len(),
        inside_norm: l1_operator_norm(&vtilde.select_rows(support)),
        outside_gain,
        a_inf: vtilde.row(i_star).iter().fold(T::zero(), |m, x| m.max(x.abs())),
        tail: outside.iter().map(|&i| vr[i].abs()).sum(),
    })
}

/// Exact-recovery certificate: when true, `v / v(i*)` is the unique
/// optimizer of the program at `i*`. Needs `supp(v)` inside `support`.
pub fn certify_exact<T: Scalar>(v: &DenseVector<T>, vtilde: &DenseMatrix<T>, support: &[usize]) -> Result<bool> {
    let terms = certificate_terms(v, vtilde, support)?;
    if terms.tail != T::zero() {
        return Err(Error::InvalidArgument(
            "v has mass outside the given support".into(),
        ));
    }
    Ok(terms.holds(T::zero()))
}

/// Error bounds in the coordinates of `[v / v(i*), vtilde]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityBounds<T> {
    /// Bound on `|x(0) - 1|`.
    pub b1: T,
    /// Bound on `||x[1..]||_1`.
    pub b2: T,
    /// `||v - v_s||_1` of the rescaled `v`.
    pub delta: T,
}

/// Stable-recovery certificate with margin `alpha`; `None` when its
/// hypotheses fail.
pub fn certify_stable<T: Scalar>(
    v: &DenseVector<T>,
    vtilde: &DenseMatrix<T>,
    support: &[usize],
    alpha: T,
) -> Result<Option<StabilityBounds<T>>> {
    if !(alpha > T::zero() && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let terms = certificate_terms(v, vtilde, support)?;
    if !terms.holds(alpha) {
        return Ok(None);
    }
    let s = T::lit(terms.s as f64);
    let two = T::lit(2.0);
    Ok(Some(StabilityBounds {
        b1: two * terms.tail / s,
        b2: two * terms.tail / (s * (terms.a_inf + alpha)),
        delta: terms.tail,
    }))
}

/// The `s` largest entries of the projector diagonal, ascending.
pub fn diagonal_threshold_support<T: Scalar>(w: &DenseMatrix<T>, s: usize) -> Result<Vec<usize>> {
    if s == 0 || s > w.rows() {
        return Err(Error::InvalidArgument(format!(
            "support size must lie in 1..={}, got {s}",
            w.rows()
        )));
    }
    Ok(top_indices(projector_diagonal(w).as_slice(), s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec(x: &[f64]) -> DenseVector<f64> {
        DenseVector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn selector_names_round_trip() {
        for sel in [
            Selector::Oracle,
            Selector::L1OverLinf,
            Selector::L1OverL2,
            Selector::thresholded(),
            Selector::strict(),
            Selector::ThresholdedL0 { epsilon: 0.25 },
        ] {
            assert_eq!(sel.to_string().parse::<Selector>().unwrap(), sel);
        }
        assert_eq!("tl0".parse::<Selector>().unwrap(), Selector::thresholded());
        assert!("tl0=0".parse::<Selector>().is_err());
        assert!("l2".parse::<Selector>().is_err());
        assert!("oracle=1".parse::<Selector>().is_err());
    }

    #[test]
    fn scores_by_hand() {
        let z = vec(&[1.0, 1.0, 0.0]);
        assert_eq!(sparsity_score(&z, &Selector::L1OverLinf).unwrap(), 2.0);
        assert!((sparsity_score(&z, &Selector::L1OverL2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            sparsity_score(&z, &Selector::ThresholdedL0 { epsilon: 0.5 }).unwrap(),
            2.0
        );
        let e1 = vec(&[1.0, 0.0, 0.0, 0.0]);
        for sel in [Selector::L1OverLinf, Selector::L1OverL2, Selector::thresholded(), Selector::strict()] {
            assert_eq!(sparsity_score(&e1, &sel).unwrap(), 1.0);
        }
        assert!(sparsity_score(&DenseVector::<f64>::zeros(3), &Selector::L1OverL2).is_err());
        assert!(sparsity_score(&z, &Selector::Oracle).is_err());
    }

    #[test]
    fn ratio_scores_scale_invariant() {
        let z = vec(&[0.3, -1.7, 0.02, 4.0]);
        for sel in [Selector::L1OverLinf, Selector::L1OverL2] {
            let a = sparsity_score(&z, &sel).unwrap();
            let b = sparsity_score(&z.scaled(-37.5), &sel).unwrap();
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    fn candidate(index: usize, z: &[f64], status: SolveStatus) -> CandidateSolution<f64> {
        let z = vec(z);
        CandidateSolution {
            index,
            solution: L1ProgramSolution {
                x: DenseVector::zeros(1),
                objective: if status == SolveStatus::Optimal {
                    z.norm(NormKind::L1)
                } else {
                    f64::INFINITY
                },
                z,
                status,
                iterations: 0,
            },
        }
    }

    #[test]
    fn selection_rules() {
        let cands = vec![
            candidate(0, &[1.0, 1.0, 1.0, 1.0, 1.0], SolveStatus::Optimal),
            candidate(1, &[0.0, 1.0, 1.0, 1.0, 0.0], SolveStatus::Optimal),
            candidate(2, &[0.0, 0.0, 1.0, 0.0, 0.0], SolveStatus::Infeasible),
        ];
        let s = select(&cands, &Selector::L1OverLinf, None).unwrap();
        assert_eq!(s.chosen_index, 1);
        assert_eq!(s.scores, vec![5.0, 3.0, f64::INFINITY]);
        assert_eq!(select(&cands, &Selector::Oracle, Some(0)).unwrap().chosen_index, 0);
        assert!(select(&cands, &Selector::Oracle, Some(2)).is_err());
        assert!(select(&cands, &Selector::Oracle, None).is_err());

        let tied = vec![
            candidate(0, &[1.0, 1.0, 0.0], SolveStatus::Optimal),
            candidate(1, &[0.0, 1.0, 1.0], SolveStatus::Optimal),
        ];
        assert_eq!(select(&tied, &Selector::L1OverL2, None).unwrap().chosen_index, 0);

        let single = vec![candidate(3, &[0.2, 1.0], SolveStatus::Optimal)];
        for sel in [Selector::Oracle, Selector::L1OverLinf, Selector::L1OverL2, Selector::thresholded(), Selector::strict()] {
            assert_eq!(select(&single, &sel, Some(3)).unwrap().chosen_index, 3);
        }

        let none = vec![candidate(0, &[0.0], SolveStatus::NumericalFailure)];
        assert!(matches!(select(&none, &Selector::L1OverL2, None), Err(Error::Selection(_))));
    }

    #[test]
    fn success_metric() {
        let v = vec(&[2.0, -4.0, 0.0, 1.0]);
        let (err, ok) = evaluate_success(&v.scaled(-0.25), &v, 0.01).unwrap();
        assert_eq!((err, ok), (0.0, true));
        let (err, ok) = evaluate_success(&DenseVector::zeros(4), &v, 0.01).unwrap();
        assert!((err - v.norm(NormKind::L2) / 4.0).abs() < 1e-15 && !ok);
        let ind = DenseVector::<f64>::indicator(8, &[0, 1, 2, 3]);
        let mut z = ind.clone();
        z[2] += 0.005;
        let (err, ok) = evaluate_success(&z, &ind, 0.01).unwrap();
        assert!((err - 0.005).abs() < 1e-15 && ok);
    }

    #[test]
    fn recover_all_on_identity() {
        let c = recover_all(&DenseMatrix::<f64>::identity(4)).unwrap();
        for (i, cand) in c.iter().enumerate() {
            assert_eq!(cand.index, i);
            assert_eq!(cand.solution.z.as_slice(), DenseVector::<f64>::basis(4, i).as_slice());
            assert!((cand.solution.objective - 1.0).abs() < 1e-12);
        }
        let line = DenseMatrix::<f64>::from_rows(&[vec![1.0], vec![1.0]]);
        for cand in recover_all(&line).unwrap() {
            assert_eq!(cand.solution.z.as_slice(), &[1.0, 1.0]);
        }
    }

    #[test]
    fn necessary_condition_closed_forms() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![0.5], vec![-2.0], vec![1.0]]);
        let nc = necessary_condition_value(&a, 1).unwrap();
        assert!((nc - 3.5 / 2.0).abs() < 1e-12);
        let e = DenseMatrix::<f64>::from_rows(&[vec![0.0], vec![1.0], vec![0.0]]);
        assert!((necessary_condition_value(&e, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(necessary_condition_value(&e, 0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn certificate_degenerate_gain_fails() {
        let v = DenseVector::<f64>::basis(6, 0);
        let vt = DenseMatrix::from_fn(6, 2, |i, j| 1e-9 * (i + j) as f64);
        assert!(!certify_exact(&v, &vt, &[0]).unwrap());
    }

    #[test]
    fn certificate_holds_for_large_vtilde_with_zero_pinned_row() {
        let v = DenseVector::<f64>::basis(6, 0);
        let base = DenseMatrix::from_fn(6, 2, |i, j| if i == 0 { 0.0 } else { ((i * 7 + j * 3) as f64).sin() });
        assert!(certify_exact(&v, &base.scaled(1e6), &[0]).unwrap());
        assert!(!certify_exact(&v, &base.scaled(1e-3), &[0]).unwrap());
    }

    #[test]
    fn certificate_argument_checks() {
        let v = vec(&[1.0, 0.5, 0.0, 0.1]);
        let vt = DenseMatrix::<f64>::zeros(4, 1);
        assert!(certify_exact(&v, &vt, &[0, 1]).is_err());
        assert!(certify_exact(&v, &vt, &[0, 2]).is_err());
        assert!(certify_exact(&v, &vt, &[]).is_err());
        let wide = DenseMatrix::<f64>::zeros(4, 17);
        assert!(matches!(
            certify_exact(&v, &wide, &[0, 1, 3]),
            Err(Error::Capability { k: 17, max: 16 })
        ));
    }

    #[test]
    fn stability_bounds_linear_in_tail() {
        let base = DenseMatrix::from_fn(40, 1, |i, _| if i < 2 { 0.0 } else { 10.0 * ((i * 13) as f64).cos().signum() });
        let mk = |t: f64| DenseVector::from_fn(40, |i| if i < 2 { 1.0 } else { t / 38.0 });
        let b0 = certify_stable(&mk(0.0), &base, &[0, 1], 1.0).unwrap().unwrap();
        assert_eq!((b0.b1, b0.b2), (0.0, 0.0));
        let b = certify_stable(&mk(0.1), &base, &[0, 1], 1.0).unwrap().unwrap();
        let bb = certify_stable(&mk(0.2), &base, &[0, 1], 1.0).unwrap().unwrap();
        assert!((bb.b1 - 2.0 * b.b1).abs() < 1e-12 && (bb.b2 - 2.0 * b.b2).abs() < 1e-12);
        assert!((b.b1 - 2.0 * 0.1 / 2.0).abs() < 1e-12);
        assert!((b.b2 - 2.0 * 0.1 / (2.0 * 1.0)).abs() < 1e-12);
        assert!(certify_stable(&mk(0.1), &base.scaled(1e-3), &[0, 1], 1.0).unwrap().is_none());
    }

    #[test]
    fn diagonal_thresholding() {
        let e1 = DenseMatrix::<f64>::from_rows(&[vec![1.0], vec![0.0], vec![0.0]]);
        assert_eq!(diagonal_threshold_support(&e1, 1).unwrap(), vec![0]);
        assert_eq!(diagonal_threshold_support(&e1, 3).unwrap(), vec![0, 1, 2]);
        assert!(diagonal_threshold_support(&e1, 0).is_err());
    }
}
