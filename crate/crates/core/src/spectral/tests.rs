use approx::assert_abs_diff_eq;
use ndarray::{array, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::{unnormalized_laplacian, Graph};

fn random_symmetric(n: usize, seed: u64) -> SymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SymMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

fn check_contract(s: &SymMatrix, e: &EigenPair) {
    let n = s.dim();
    let scale = s.max_abs().max(1.0) * n as f64;
    let v = e.vectors();
    let gram = v.t().dot(v);
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!(
                (gram[[i, j]] - want).abs() < 1e-10,
                "orthonormality ({i},{j})"
            );
        }
    }
    let recon = v.dot(&Array2::from_diag(e.values())).dot(&v.t());
    let err = (&recon - s.as_array())
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(err <= 1e-10 * scale, "reconstruction error {err}");
    assert!(e.values().windows(2).into_iter().all(|w| w[0] <= w[1]));
}

#[test]
fn diagonal_input() {
    let s = SymMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
    let e = eigh(&s).unwrap();
    assert_eq!(e.values().to_vec(), vec![1.0, 2.0, 3.0]);
    for x in e.vectors().iter() {
        assert!(x.abs() == 0.0 || x.abs() == 1.0);
    }
    assert_eq!(e.vector(0)[1].abs(), 1.0);
    assert_eq!(e.vector(2)[0].abs(), 1.0);
}

#[test]
fn complete_graph_laplacian() {
    let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let l = unnormalized_laplacian(&k3);
    let e = eigh(&l).unwrap();
    assert_abs_diff_eq!(e.values()[0], 0.0, epsilon = 1e-12);
    assert_abs_diff_eq!(e.values()[1], 3.0, epsilon = 1e-12);
    assert_abs_diff_eq!(e.values()[2], 3.0, epsilon = 1e-12);
    check_contract(&l, &e);
}

#[test]
fn random_reconstruction() {
    for (n, seed) in [(1, 1), (2, 2), (5, 3), (50, 4), (131, 5)] {
        let s = random_symmetric(n, seed);
        let e = eigh(&s).unwrap();
        check_contract(&s, &e);
        let vals = eigvalsh(&s).unwrap();
        for (a, b) in vals.iter().zip(e.values()) {
            assert!((a - b).abs() < 1e-12 * n as f64);
        }
    }
}

#[test]
fn structured_inputs() {
    check_contract(&SymMatrix::zeros(4), &eigh(&SymMatrix::zeros(4)).unwrap());
    let id = SymMatrix::identity(6);
    check_contract(&id, &eigh(&id).unwrap());
    // already tridiagonal, plus a zero sub-diagonal splitting the problem
    let t = SymMatrix::from_fn(7, |i, j| match j - i {
        0 => i as f64,
        1 if i != 3 => 1.0,
        _ => 0.0,
    });
    check_contract(&t, &eigh(&t).unwrap());
    let empty = eigh(&SymMatrix::zeros(0)).unwrap();
    assert_eq!(empty.dim(), 0);
}

#[test]
fn canonical_sign_examples() {
    let e = EigenPair::new(array![1.0, 2.0], array![[-0.8, 0.6], [0.6, 0.8]]).unwrap();
    let c = canonical_signs(&e);
    assert_eq!(c.vector(0).to_vec(), vec![0.8, -0.6]);
    assert_eq!(c.vector(1).to_vec(), vec![0.6, 0.8]);
    assert_eq!(canonical_signs(&c), c);
    // exact tie: the first index decides
    let tie = EigenPair::new(array![0.0], array![[-1.0]]).unwrap();
    assert_eq!(canonical_signs(&tie).vector(0)[0], 1.0);
}

#[test]
fn alignment_removes_flips() {
    let s = random_symmetric(8, 9);
    let e = eigh(&s).unwrap();
    let v = e.vectors().view();
    let neg = v.mapv(|x| -x);
    assert_eq!(align_signs(v, neg.view()).unwrap(), v.to_owned());
    assert_eq!(align_signs(v, v).unwrap(), v.to_owned());
    assert!(align_signs(v, v.slice(s![.., ..3])).is_err());
}

#[test]
fn alignment_matches_exhaustive_sign_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let v = Array2::from_shape_fn((6, 2), |_| rng.random_range(-1.0..1.0));
        let vhat = Array2::from_shape_fn((6, 2), |_| rng.random_range(-1.0..1.0));
        let greedy = align_signs(v.view(), vhat.view()).unwrap();
        let frob = |m: &Array2<f64>| (&v - m).iter().map(|x| x * x).sum::<f64>();
        let best = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .map(|&(a, b)| {
                let mut m = vhat.clone();
                m.column_mut(0).mapv_inplace(|x| a * x);
                m.column_mut(1).mapv_inplace(|x| b * x);
                frob(&m)
            })
            .fold(f64::INFINITY, f64::min);
        assert!((frob(&greedy) - best).abs() < 1e-12);
    }
}

#[test]
fn spectral_norm_examples() {
    let d = SymMatrix::from_diagonal(&[-5.0, 3.0]);
    assert_eq!(spectral_norm(&d).unwrap(), 5.0);
    assert_eq!(spectral_norm(&SymMatrix::zeros(3)).unwrap(), 0.0);
}

#[test]
fn spectral_norm_matches_power_iteration() {
    let s = random_symmetric(30, 77);
    // Power iteration on S² avoids sign cancellation between ±λ_max.
    let a = s.as_array();
    let mut x = ndarray::Array1::from_elem(30, 1.0 / (30f64).sqrt());
    let mut est = 0.0;
    for _ in 0..20_000 {
        let y = a.dot(&a.dot(&x));
        let nrm = y.dot(&y).sqrt();
        x = y / nrm;
        est = nrm.sqrt();
    }
    let got = spectral_norm(&s).unwrap();
    assert!((got - est).abs() <= 1e-8 * est, "{got} vs {est}");
}

#[test]
fn operator_norm_of_rectangular() {
    let m = array![[3.0, 0.0], [0.0, 4.0], [0.0, 0.0]];
    assert_abs_diff_eq!(operator_norm(m.view()).unwrap(), 4.0, epsilon = 1e-12);
    assert_abs_diff_eq!(operator_norm(m.t()).unwrap(), 4.0, epsilon = 1e-12);
}

#[test]
fn structural_terms_identical_and_negated() {
    let s = random_symmetric(10, 3);
    let e = eigh(&s).unwrap();
    let t = structural_terms(&e, &e, 3).unwrap();
    assert_eq!((t.eig_drift, t.vec_drift), (0.0, 0.0));
    assert!(t.proj_drift < 1e-12);
    let neg = EigenPair::new(e.values().clone(), e.vectors().mapv(|x| -x)).unwrap();
    let t = structural_terms(&e, &neg, 3).unwrap();
    assert_eq!(t.vec_drift, 0.0);
    assert!(t.proj_drift < 1e-12);
    let raw = structural_terms_with(&e, &neg, 3, SignAlignment::Raw).unwrap();
    assert!((raw.vec_drift - 2.0).abs() < 1e-12);
    assert!(structural_terms(&e, &e, 0).is_err());
    assert!(structural_terms(&e, &e, 11).is_err());
}

#[test]
fn projection_drift_ignores_rotation_within_eigenspace() {
    // −L_U(K3) has the doubly degenerate eigenvalue −3 at the bottom.
    let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let l = unnormalized_laplacian(&k3);
    let neg = SymMatrix::from_fn(3, |i, j| -l.get(i, j));
    let e = eigh(&neg).unwrap();
    let (c, s) = (0.6f64, 0.8f64);
    let mut rotated = e.vectors().clone();
    for r in 0..3 {
        let (a, b) = (e.vectors()[[r, 0]], e.vectors()[[r, 1]]);
        rotated[[r, 0]] = c * a - s * b;
        rotated[[r, 1]] = s * a + c * b;
    }
    let ehat = EigenPair::new(e.values().clone(), rotated).unwrap();
    let t = structural_terms(&e, &ehat, 2).unwrap();
    assert!(t.proj_drift < 1e-12);
    assert!(t.vec_drift > 0.1);
    assert!(t.eig_drift < 1e-12);
}

#[test]
fn gap_interval_examples() {
    let a = array![0.0, 1.0, 5.0, 6.0];
    let b = array![0.0, 1.2, 4.8, 6.0];
    let g = spectral_gap_interval(a.view(), b.view(), 2).unwrap();
    assert_eq!((g.lower, g.upper), (1.2, 4.8));
    let g = spectral_gap_interval(a.view(), a.view(), 2).unwrap();
    assert_eq!((g.lower, g.upper), (1.0, 5.0));
    let a = array![0.0, 1.0, 2.0];
    let b = array![0.0, 3.0, 4.0];
    let g = spectral_gap_interval(a.view(), b.view(), 1).unwrap();
    assert_eq!((g.lower, g.upper), (0.0, 1.0));
    assert!(matches!(
        spectral_gap_interval(a.view(), b.view(), 2),
        Err(Error::GapViolation { k: 2, .. })
    ));
    assert!(spectral_gap_interval(a.view(), b.view(), 3).is_err());
}
