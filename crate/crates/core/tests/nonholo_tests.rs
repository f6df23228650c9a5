use num_complex::Complex64;
use quadlab::error::DynError;
use quadlab::family::{self, Family};
use quadlab::nonholo::{
    critical_circle_radius, cycle_eigen, jacobian, real_line_agreement, transverse_stability,
    Mat2, TransverseStability,
};

#[test]
fn jacobian_is_diagonal_on_the_real_axis() {
    let beta = -0.327;
    for x in [0.44, -0.55, 0.9, 2.0] {
        let j = jacobian(beta, x, 0.0).unwrap();
        assert_eq!(j.a12, 0.0);
        assert_eq!(j.a21, 0.0);
        assert!((j.a11 - (2.0 * x - beta / (x * x))).abs() < 1e-14);
        assert!((j.a22 - (2.0 * x + beta / (x * x))).abs() < 1e-14);
        assert!((j.trace() - 4.0 * x).abs() < 1e-12);
        let det_expect = 4.0 * x * x - beta * beta / x.powi(4);
        assert!((j.det() - det_expect).abs() < 1e-12 * (1.0 + det_expect.abs()));
    }
}

#[test]
fn jacobian_rejects_origin() {
    assert!(matches!(jacobian(1.0, 0.0, 0.0), Err(DynError::PoleHit)));
}

#[test]
fn jacobian_matches_finite_differences_off_axis() {
    let fam = |beta: f64| Family::NonholoPerturbed { m: 1, beta: Complex64::new(beta, 0.0) };
    let g = |beta: f64, x: f64, y: f64| family::eval(fam(beta), Complex64::new(x, y)).unwrap();
    let h = 1e-6;
    for (beta, x, y) in [(-0.327, 0.7, 0.3), (0.5, -0.4, 0.9), (2.0, 1.1, -0.2)] {
        let j = jacobian(beta, x, y).unwrap();
        let dx = (g(beta, x + h, y) - g(beta, x - h, y)) / (2.0 * h);
        let dy = (g(beta, x, y + h) - g(beta, x, y - h)) / (2.0 * h);
        assert!((j.a11 - dx.re).abs() < 1e-5, "a11 {} vs {}", j.a11, dx.re);
        assert!((j.a21 - dx.im).abs() < 1e-5, "a21 {} vs {}", j.a21, dx.im);
        assert!((j.a12 - dy.re).abs() < 1e-5, "a12 {} vs {}", j.a12, dy.re);
        assert!((j.a22 - dy.im).abs() < 1e-5, "a22 {} vs {}", j.a22, dy.im);
    }
}

#[test]
fn period_three_cycle_eigenvalues_split_attracting_and_repelling() {
    let points = [-0.549241, 0.897033, 0.440311];
    let report = cycle_eigen(-0.327, &points).unwrap();
    assert_eq!(report.period, 3);
    assert!(!report.complex_pair);
    // Diagonal product: off-diagonal entries stay exactly zero on the axis.
    assert_eq!(report.product.a12, 0.0);
    assert_eq!(report.product.a21, 0.0);
    // Larger-modulus eigenvalue first.
    assert!((report.eigenvalues[0].re - 2.44116).abs() < 1e-4, "{}", report.eigenvalues[0]);
    assert!((report.eigenvalues[1].re + 0.081916).abs() < 1e-4, "{}", report.eigenvalues[1]);
    assert_eq!(report.eigenvalues[0].im, 0.0);
    assert_eq!(report.eigenvalues[1].im, 0.0);
}

#[test]
fn period_three_in_plane_multiplier_matches_holomorphic_derivative_product() {
    let points = [-0.549241, 0.897033, 0.440311];
    let report = cycle_eigen(-0.327, &points).unwrap();
    let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(-0.327, 0.0) };
    let mut prod = Complex64::new(1.0, 0.0);
    for &x in &points {
        prod *= family::derivative_holo(fam, Complex64::new(x, 0.0)).unwrap();
    }
    // The in-plane direction of the diagonal product carries exactly the
    // holomorphic multiplier.
    assert!((report.product.a11 - prod.re).abs() < 1e-12);
}

#[test]
fn period_four_cycle_is_transversely_unstable() {
    let points = [-0.632282, 1.201797, 1.022799, 0.550833];
    let report = cycle_eigen(-0.507, &points).unwrap();
    assert!((report.eigenvalues[0].re - 4.619786).abs() < 1e-4, "{}", report.eigenvalues[0]);
    assert!((report.eigenvalues[1].re - 0.070184).abs() < 1e-4, "{}", report.eigenvalues[1]);
    assert_eq!(
        transverse_stability(-0.507, &points).unwrap(),
        TransverseStability::SaddleInPlane
    );
}

#[test]
fn period_three_cycle_is_a_transverse_saddle() {
    let points = [-0.549241, 0.897033, 0.440311];
    assert_eq!(
        transverse_stability(-0.327, &points).unwrap(),
        TransverseStability::SaddleInPlane
    );
}

#[test]
fn cycle_eigen_rejects_points_that_do_not_close_up() {
    let err = cycle_eigen(0.0, &[0.5]).unwrap_err();
    match err {
        DynError::NotACycle { residual } => assert!((residual - 0.25).abs() < 1e-15),
        other => panic!("expected NotACycle, got {other:?}"),
    }
    assert!(matches!(
        cycle_eigen(0.3, &[]),
        Err(DynError::PreconditionViolated(_))
    ));
}

#[test]
fn holo_and_nonholo_agree_on_the_real_line() {
    for x in [0.73, -0.549241, 1.5, -2.0] {
        assert!(real_line_agreement(-0.327, x).unwrap());
    }
    assert!(matches!(real_line_agreement(-0.327, 0.0), Err(DynError::PoleHit)));
}

#[test]
fn critical_circle_radius_closed_forms() {
    assert!((critical_circle_radius(Complex64::new(2.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
    assert!((critical_circle_radius(Complex64::new(16.0, 0.0)).unwrap() - 2.0).abs() < 1e-15);
    let r = critical_circle_radius(Complex64::new(-0.327, 0.0)).unwrap();
    assert!((r.powi(3) - 0.1635).abs() < 1e-15);
    assert!(matches!(
        critical_circle_radius(Complex64::new(0.0, 0.0)),
        Err(DynError::PreconditionViolated(_))
    ));
}

#[test]
fn rotation_matrix_yields_conjugate_eigenvalue_pair() {
    let rot = Mat2 { a11: 0.0, a12: -1.0, a21: 1.0, a22: 0.0 };
    let (vals, complex_pair) = rot.eigenvalues();
    assert!(complex_pair);
    assert!((vals[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    assert!((vals[1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
}

#[test]
fn matrix_product_multiplies_determinants() {
    let a = Mat2 { a11: 1.0, a12: 2.0, a21: -0.5, a22: 0.25 };
    let b = Mat2 { a11: -3.0, a12: 0.5, a21: 1.5, a22: 2.0 };
    let ab = a.mul(b);
    assert!((ab.det() - a.det() * b.det()).abs() < 1e-12);
    assert_eq!(Mat2::IDENTITY.mul(a), a);
    assert_eq!(a.mul(Mat2::IDENTITY), a);
    assert_eq!(Mat2::IDENTITY.apply((3.0, -4.0)), (3.0, -4.0));
}
