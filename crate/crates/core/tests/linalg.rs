use entroplex::linalg::*;
use entroplex::quantum::random::{haar_isometry, random_psd, RandomSource};
use entroplex::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_hermitian(d: usize, rng: &mut RandomSource) -> ComplexMatrix {
    let a = rng.ginibre(d, d);
    &a + &a.adjoint()
}

/// Largest eigenvalue of a PSD matrix by power iteration, independent of the
/// Jacobi solver.
fn power_iteration(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| c(1.0 + i as f64 * 0.37, 0.1 * i as f64))
        .collect();
    let mut lambda = 0.0;
    for _ in 0..5000 {
        let w = m.apply(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w.into_iter().map(|z| z / norm).collect();
    }
    lambda
}

#[test]
fn eigenvalues_of_simple_matrices() {
    let e = hermitian_eig(&ComplexMatrix::identity(3)).unwrap();
    assert_eq!(e.eigenvalues.len(), 3);
    for l in &e.eigenvalues {
        assert!((l - 1.0).abs() < 1e-14);
    }
    let x = ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap();
    let e = hermitian_eigenvalues(&x).unwrap();
    assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
}

#[test]
fn eig_rejects_bad_input() {
    let rect = ComplexMatrix::zeros(2, 3);
    assert!(matches!(hermitian_eig(&rect), Err(Error::NotSquare { .. })));
    let skew = ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap();
    assert!(matches!(hermitian_eig(&skew), Err(Error::NotHermitian(_))));
}

#[test]
fn eig_reconstructs_random_hermitian_matrices() {
    let mut rng = RandomSource::new(17);
    for i in 0..1000 {
        let d = 2 + i % 7;
        let h = random_hermitian(d, &mut rng);
        let e = hermitian_eig(&h).unwrap();
        let scale = operator_norm_inf(&h).max(1.0);
        assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10 * scale);
        let v = &e.eigenvectors;
        assert!(
            v.adjoint()
                .matmul(v)
                .max_abs_diff(&ComplexMatrix::identity(d))
                <= 1e-10
        );
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn eig_is_deterministic() {
    let h = random_hermitian(5, &mut RandomSource::new(3));
    let a = hermitian_eig(&h).unwrap();
    let b = hermitian_eig(&h).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
    assert_eq!(a.eigenvectors, b.eigenvectors);
}

#[test]
fn operator_norm_examples() {
    assert!(
        (operator_norm_inf(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0])) - 3.0).abs()
            < 1e-14
    );
    let mut rng = RandomSource::new(5);
    let v = haar_isometry(5, 3, &mut rng).unwrap();
    assert!((operator_norm_inf(&v) - 1.0).abs() < 1e-12);
    for _ in 0..20 {
        let m = rng.ginibre(4, 4);
        let gram = m.adjoint().matmul(&m);
        let expected = power_iteration(&gram).sqrt();
        assert!((operator_norm_inf(&m) - expected).abs() < 1e-8 * expected.max(1.0));
    }
}

#[test]
fn psd_sqrt_examples() {
    let i = ComplexMatrix::identity(4);
    assert!(psd_sqrt(&i).unwrap().max_abs_diff(&i) < 1e-14);
    let s = psd_sqrt(&ComplexMatrix::from_real_diagonal(&[4.0, 9.0])).unwrap();
    assert!(s.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 3.0])) < 1e-14);
    let v = [c(0.6, 0.0), c(0.0, 0.8)];
    let p = ComplexMatrix::outer(&v, &v);
    assert!(psd_sqrt(&p).unwrap().max_abs_diff(&p) < 1e-12);
    let mut rng = RandomSource::new(8);
    for d in 1..7 {
        let m = random_psd(d, d, &mut rng);
        let r = psd_sqrt(&m).unwrap();
        assert!(r.matmul(&r).max_abs_diff(&m) <= 1e-9);
        assert!(hermitian_eigenvalues(&r).unwrap()[0] >= -1e-12);
    }
    assert!(matches!(
        psd_sqrt(&ComplexMatrix::from_real_diagonal(&[1.0, -0.1])),
        Err(Error::NotPositive(_))
    ));
}

#[test]
fn tensor_product_examples() {
    let i6 = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
    assert_eq!(i6, ComplexMatrix::identity(6));
    let t = tensor_product(
        &ComplexMatrix::from_real_diagonal(&[1.0, 2.0]),
        &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]),
    );
    assert_eq!(t, ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 2.0, 0.0]));
    let mut rng = RandomSource::new(9);
    let [a, b, cc, d] = [0, 1, 2, 3].map(|_| rng.ginibre(2, 2));
    let lhs = tensor_product(&a, &b).matmul(&tensor_product(&cc, &d));
    let rhs = tensor_product(&a.matmul(&cc), &b.matmul(&d));
    assert!(lhs.max_abs_diff(&rhs) < 1e-12);
}

#[test]
fn partial_trace_examples() {
    let mut rng = RandomSource::new(10);
    let ra = random_psd(2, 2, &mut rng);
    let ra = ra.scale(1.0 / ra.trace().re);
    let rb = random_psd(3, 3, &mut rng);
    let rb = rb.scale(1.0 / rb.trace().re);
    let ab = tensor_product(&ra, &rb);
    assert!(partial_trace(&ab, &[2, 3], &[0]).unwrap().max_abs_diff(&ra) < 1e-12);
    assert!(partial_trace(&ab, &[2, 3], &[1]).unwrap().max_abs_diff(&rb) < 1e-12);

    let s = 0.5f64.sqrt();
    let phi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
    let bell = ComplexMatrix::outer(&phi, &phi);
    let half = ComplexMatrix::identity(2).scale(0.5);
    assert!(
        partial_trace(&bell, &[2, 2], &[0])
            .unwrap()
            .max_abs_diff(&half)
            < 1e-15
    );

    for dims in [vec![2, 3], vec![3, 2, 2], vec![2, 2, 2, 2]] {
        let n: usize = dims.iter().product();
        let m = random_psd(n, n, &mut rng);
        for keep in 0..dims.len() {
            let r = partial_trace(&m, &dims, &[keep]).unwrap();
            assert!((r.trace() - m.trace()).norm() < 1e-12);
        }
    }
    assert!(matches!(
        partial_trace(&bell, &[3, 2], &[0]),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(partial_trace(&bell, &[2, 2], &[]).is_err());
}

#[test]
fn partial_trace_keeps_factors_in_ascending_order() {
    let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
    let b = ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0]);
    let cc = ComplexMatrix::from_real_diagonal(&[0.25, 0.75]);
    let abc = tensor_all([&a, &b, &cc]);
    let ac = partial_trace(&abc, &[2, 3, 2], &[2, 0]).unwrap();
    assert!(ac.max_abs_diff(&tensor_product(&a, &cc)) < 1e-15);
    let ca = permute_subsystems(&ac, &[2, 2], &[1, 0]).unwrap();
    assert!(ca.max_abs_diff(&tensor_product(&cc, &a)) < 1e-15);
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_submultiplicative(s in seed(), d in 2usize..6) {
        let mut rng = RandomSource::new(s);
        let a = rng.ginibre(d, d);
        let b = rng.ginibre(d, d);
        let lhs = operator_norm_inf(&a.matmul(&b));
        let rhs = operator_norm_inf(&a) * operator_norm_inf(&b);
        prop_assert!(lhs <= rhs * (1.0 + 1e-10));
    }

    #[test]
    fn pinching_never_increases_the_norm(s in seed(), d in 2usize..7, rank in 1usize..4) {
        let mut rng = RandomSource::new(s);
        let rho = random_psd(d, d, &mut rng);
        let v = haar_isometry(d, rank.min(d), &mut rng).unwrap();
        let proj = v.matmul(&v.adjoint());
        let pinched = rho.conjugate_by(&proj);
        prop_assert!(operator_norm_inf(&pinched) <= operator_norm_inf(&rho) + 1e-12);
    }

    #[test]
    fn sequential_partial_traces_give_the_trace(s in seed(), da in 2usize..4, db in 2usize..4) {
        let mut rng = RandomSource::new(s);
        let m = random_psd(da * db, da * db, &mut rng);
        let b = partial_trace(&m, &[da, db], &[1]).unwrap();
        prop_assert!((b.trace() - m.trace()).norm() < 1e-12);
        let a = partial_trace(&m, &[da, db], &[0]).unwrap();
        prop_assert!((a.trace() - b.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_is_linear(s in seed(), w in 0.0f64..1.0) {
        let mut rng = RandomSource::new(s);
        let m1 = random_psd(6, 6, &mut rng);
        let m2 = random_psd(6, 6, &mut rng);
        let mix = &m1.scale(w) + &m2.scale(1.0 - w);
        let lhs = partial_trace(&mix, &[2, 3], &[1]).unwrap();
        let rhs = &partial_trace(&m1, &[2, 3], &[1]).unwrap().scale(w)
            + &partial_trace(&m2, &[2, 3], &[1]).unwrap().scale(1.0 - w);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }
}
