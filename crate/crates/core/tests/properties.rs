use proptest::prelude::*;

use sparsest::lp::{min_l1_gain, solve_l1_program};
use sparsest::models::{make_test_vector, planted_random, TestVectorSpec};
use sparsest::numerics::{extreme_singular_values, l1_operator_norm, DenseMatrix, DenseVector, NormKind};
use sparsest::randomness::RngStream;
use sparsest::recovery::{judge, recover_all, sparsity_score, Selector};
use sparsest::{Matrix, Vector};

fn gaussian(seed: u64, rows: usize, cols: usize) -> Matrix {
    RngStream::new(seed).gaussian_matrix(rows, cols)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn well_conditioned(seed: u64, d: usize) -> Matrix {
    let mut s = RngStream::new(seed ^ 0x5eed);
    loop {
        let m: Matrix = s.gaussian_matrix(d, d);
        let (lo, hi) = extreme_singular_values(&m).unwrap();
        if hi / lo < 50.0 {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn norm_chain(xs in prop::collection::vec(-10.0f64..10.0, 1..20)) {
        let x = Vector::new(xs.clone()).unwrap();
        let n = xs.len() as f64;
        let (l1, l2, li) = (x.norm(NormKind::L1), x.norm(NormKind::L2), x.norm(NormKind::Linf));
        let slack = 1e-12 * (1.0 + l1);
        prop_assert!(li <= l2 + slack);
        prop_assert!(l2 <= l1 + slack);
        prop_assert!(l1 <= n * li + slack);
        prop_assert!(l1 <= n.sqrt() * l2 + slack);
    }

    #[test]
    fn operator_norm_attained_on_signed_units(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..6) {
        let a = gaussian(seed, rows, cols);
        let op = l1_operator_norm(&a);
        let mut best = 0.0f64;
        for j in 0..cols {
            for sign in [1.0, -1.0] {
                let e = Vector::basis(cols, j).scaled(sign);
                best = best.max(a.matvec(&e).unwrap().norm(NormKind::L1));
            }
        }
        prop_assert!(rel(op, best) < 1e-12);
        let x: Vector = RngStream::new(seed.wrapping_add(1)).gaussian_vector(cols);
        prop_assert!(a.matvec(&x).unwrap().norm(NormKind::L1) <= op * x.norm(NormKind::L1) * (1.0 + 1e-12));
    }

    #[test]
    fn singular_values_bound_stretch(seed in any::<u64>(), rows in 2usize..9, cols in 1usize..5) {
        prop_assume!(cols <= rows);
        let a = gaussian(seed, rows, cols);
        let (lo, hi) = extreme_singular_values(&a).unwrap();
        prop_assert!(hi <= a.frobenius_norm() * (1.0 + 1e-12));
        let mut s = RngStream::new(seed.wrapping_add(2));
        for _ in 0..5 {
            let x: Vector = s.gaussian_vector(cols);
            let r = a.matvec(&x).unwrap().norm(NormKind::L2) / x.norm(NormKind::L2);
            prop_assert!(r >= lo * (1.0 - 1e-10) && r <= hi * (1.0 + 1e-10));
        }
    }

    #[test]
    fn matvec_matches_naive(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..8) {
        let a = gaussian(seed, rows, cols);
        let x: Vector = RngStream::new(!seed).gaussian_vector(cols);
        let y = a.matvec(&x).unwrap();
        for i in 0..rows {
            let naive: f64 = (0..cols).map(|j| a[(i, j)] * x[j]).sum();
            prop_assert!((y[i] - naive).abs() <= 1e-12 * (1.0 + naive.abs()));
        }
    }

    #[test]
    fn program_invariant_under_scale_and_mixing(seed in any::<u64>(), n in 4usize..9, d in 1usize..4, c in 0.01f64..100.0) {
        let b = gaussian(seed, n, d);
        let m = well_conditioned(seed, d);
        let mixed = b.matmul(&m).unwrap();
        let scaled = b.scaled(c);
        for i in 0..n {
            let base = solve_l1_program(&b, i).unwrap();
            prop_assume!(base.is_optimal());
            for other in [&mixed, &scaled] {
                let sol = solve_l1_program(other, i).unwrap();
                prop_assert!(sol.is_optimal());
                prop_assert!(rel(sol.objective, base.objective) < 1e-8);
            }
        }
    }

    #[test]
    fn program_invariant_under_row_signs_and_permutation(seed in any::<u64>(), n in 4usize..9, d in 1usize..4) {
        let b = gaussian(seed, n, d);
        let mut s = RngStream::new(seed.wrapping_mul(3));
        let signs: Vec<f64> = (0..n).map(|_| if s.bernoulli(0.5) { -1.0 } else { 1.0 }).collect();
        let flipped = DenseMatrix::from_fn(n, d, |i, j| signs[i] * b[(i, j)]);
        let perm: Vec<usize> = (0..n).map(|i| (i * 3 + 1) % n).collect();
        prop_assume!({ let mut p = perm.clone(); p.sort(); p.dedup(); p.len() == n });
        let permuted = b.select_rows(&perm);
        for i in 0..n {
            let base = solve_l1_program(&b, i).unwrap();
            prop_assume!(base.is_optimal());
            let f = solve_l1_program(&flipped, i).unwrap();
            prop_assert!(rel(f.objective, base.objective) < 1e-8);
            let pos = perm.iter().position(|&p| p == i).unwrap();
            let p = solve_l1_program(&permuted, pos).unwrap();
            prop_assert!(rel(p.objective, base.objective) < 1e-8);
        }
    }

    #[test]
    fn gain_is_homogeneous(seed in any::<u64>(), n in 3usize..8, d in 1usize..3, c in -50.0f64..50.0) {
        prop_assume!(c.abs() > 1e-3);
        let a = gaussian(seed, n, d);
        let g = min_l1_gain(&a).unwrap();
        let gc = min_l1_gain(&a.scaled(c)).unwrap();
        prop_assert!(rel(gc, c.abs() * g) < 1e-9);
    }

    #[test]
    fn mixing_does_not_change_programs(seed in any::<u64>(), k in 1usize..4, s in 1usize..5) {
        let n = 24;
        let root = RngStream::new(seed);
        let v: Vector = make_test_vector(&TestVectorSpec::leading(n, s, 0.02), &mut root.derive(&[0])).unwrap();
        let inst = planted_random(&v, k, s, true, &mut root.derive(&[1])).unwrap();
        let plain = inst.unmixed();
        for i in 0..n {
            let a = solve_l1_program(&inst.w, i).unwrap();
            let b = solve_l1_program(&plain, i).unwrap();
            prop_assert_eq!(a.is_optimal(), b.is_optimal());
            if a.is_optimal() {
                prop_assert!(rel(a.objective, b.objective) < 1e-7);
            }
        }
    }

    #[test]
    fn selector_scores_are_ordered(xs in prop::collection::vec(-3.0f64..3.0, 2..16)) {
        let z = Vector::new(xs).unwrap();
        prop_assume!(z.norm(NormKind::Linf) > 1e-3);
        let l1l2 = sparsity_score(&z, &Selector::L1OverL2).unwrap();
        let l1li = sparsity_score(&z, &Selector::L1OverLinf).unwrap();
        let tl0 = sparsity_score(&z, &Selector::thresholded()).unwrap();
        let l0 = sparsity_score(&z, &Selector::strict()).unwrap();
        let nnz = z.iter().filter(|x| **x != 0.0).count() as f64;
        prop_assert!(1.0 - 1e-12 <= l1l2);
        prop_assert!(l1l2 <= l1li * (1.0 + 1e-12));
        prop_assert!(l1li <= nnz * (1.0 + 1e-12));
        prop_assert!(tl0 <= l0);
        prop_assert!(l0 <= nnz);
    }

    #[test]
    fn outcome_invariant_under_basis_scale(seed in any::<u64>(), c in 0.1f64..10.0) {
        let (n, k, s) = (20, 2, 2);
        let root = RngStream::new(seed);
        let v: Vector = make_test_vector(&TestVectorSpec::leading(n, s, 0.01), &mut root.derive(&[0])).unwrap();
        let inst = planted_random(&v, k, s, true, &mut root.derive(&[1])).unwrap();
        let a = recover_all(&inst.w).unwrap();
        let b = recover_all(&inst.w.scaled(c)).unwrap();
        let oa = judge(&a, &Selector::Oracle, &v, 0.01).unwrap();
        let ob = judge(&b, &Selector::Oracle, &v, 0.01).unwrap();
        prop_assert_eq!(oa.chosen_index, ob.chosen_index);
        prop_assert!((oa.error - ob.error).abs() < 1e-7);
        // Support coordinates give the same direction, so ratio scores can
        // tie to rounding and the pick may move between them.
        for sel in [Selector::L1OverLinf, Selector::L1OverL2] {
            let oa = judge(&a, &sel, &v, 0.01).unwrap();
            let ob = judge(&b, &sel, &v, 0.01).unwrap();
            let best_a = oa.per_candidate_scores[oa.chosen_index];
            let best_b = ob.per_candidate_scores[ob.chosen_index];
            prop_assert!(rel(best_a, best_b) < 1e-8);
        }
        let vs = v.scaled(-c);
        let oa = judge(&a, &Selector::Oracle, &v, 0.01).unwrap();
        let ov = judge(&a, &Selector::Oracle, &vs, 0.01).unwrap();
        prop_assert!((oa.error - ov.error).abs() < 1e-9);
    }
}

#[test]
fn ratio_score_of_zero_vector_is_an_error() {
    let z: DenseVector<f64> = DenseVector::zeros(4);
    assert!(sparsity_score(&z, &Selector::L1OverLinf).is_err());
    assert_eq!(sparsity_score(&z, &Selector::strict()).unwrap(), 0.0);
}
