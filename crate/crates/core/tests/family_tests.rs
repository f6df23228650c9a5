use num_complex::Complex64;
use quadlab::error::DynError;
use quadlab::family::{
    critical_set, default_escape_radius, derivative_holo, eval, eval_real, prepoles,
    principal_critical_point, symmetry_root, CriticalSet, Family,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn holo(m: u32, lambda: f64) -> Family {
    Family::HoloPerturbed { m, lambda: c(lambda, 0.0) }
}

#[test]
fn eval_fixed_point_at_one_third_for_superstable_parameter() {
    let fam = holo(1, 2.0 / 27.0);
    let fz = eval(fam, c(1.0 / 3.0, 0.0)).unwrap();
    assert!((fz - c(1.0 / 3.0, 0.0)).norm() < 1e-12, "got {fz}");
}

#[test]
fn eval_degenerates_to_pure_squaring_when_unperturbed() {
    let fam = holo(1, 0.0);
    assert_eq!(eval(fam, c(2.0, 0.0)).unwrap(), c(4.0, 0.0));
    // No pole either: the perturbation term is gone entirely.
    assert_eq!(eval(fam, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
}

#[test]
fn eval_pole_hit_at_origin() {
    assert_eq!(eval(holo(1, 1.0), c(0.0, 0.0)), Err(DynError::PoleHit));
    let nh = Family::NonholoPerturbed { m: 1, beta: c(-0.3, 0.0) };
    assert_eq!(eval(nh, c(0.0, 0.0)), Err(DynError::PoleHit));
}

#[test]
fn eval_nonholo_on_real_axis_matches_published_cycle_value() {
    let fam = Family::NonholoPerturbed { m: 1, beta: c(-0.327, 0.0) };
    let fz = eval(fam, c(-0.549241, 0.0)).unwrap();
    assert_eq!(fz.im, 0.0);
    assert!((fz.re - 0.897033).abs() < 1e-5, "got {}", fz.re);
}

#[test]
fn eval_henon_maps_origin_to_one_zero() {
    let fam = Family::Henon { a: 1.4, b: 0.3 };
    assert_eq!(eval(fam, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    // One more step: (1 - 1.4 + 0, 0.3).
    let second = eval(fam, c(1.0, 0.0)).unwrap();
    assert!((second - c(1.0 - 1.4, 0.3)).norm() < 1e-15);
}

#[test]
fn eval_real_agrees_with_complex_eval_on_axis() {
    let fam = holo(2, -0.25);
    for x in [-1.5, -0.3, 0.2, 0.9, 2.0] {
        let r = eval_real(fam, x).unwrap();
        let z = eval(fam, c(x, 0.0)).unwrap();
        assert_eq!(z.im, 0.0);
        assert_eq!(r, z.re);
    }
}

#[test]
fn derivative_vanishes_at_unit_critical_point() {
    // m = 2, lambda = 1: z = 1 solves z^4 = m lambda / 2 = 1.
    let d = derivative_holo(holo(2, 1.0), c(1.0, 0.0)).unwrap();
    assert!(d.norm() < 1e-14, "got {d}");
}

#[test]
fn derivative_of_logistic_is_minus_two_a_x() {
    let d = derivative_holo(Family::Logistic { a: 1.7 }, c(0.25, 0.0)).unwrap();
    assert!((d - c(-0.85, 0.0)).norm() < 1e-15);
}

#[test]
fn derivative_unsupported_for_nonholo_and_henon() {
    let nh = Family::NonholoPerturbed { m: 1, beta: c(1.0, 0.0) };
    assert!(matches!(derivative_holo(nh, c(1.0, 0.0)), Err(DynError::Unsupported(_))));
    let hn = Family::Henon { a: 1.4, b: 0.3 };
    assert!(matches!(derivative_holo(hn, c(1.0, 0.0)), Err(DynError::Unsupported(_))));
}

#[test]
fn critical_set_holo_has_m_plus_two_points_sorted_by_argument() {
    let fam = holo(1, 2.0 / 27.0);
    let CriticalSet::Points(pts) = critical_set(fam).unwrap() else {
        panic!("expected points");
    };
    assert_eq!(pts.len(), 3);
    // z^3 = lambda/2 = 1/27: principal root is exactly real 1/3.
    assert!((pts[0] - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
    let args: Vec<f64> = pts.iter().map(|z| z.arg().rem_euclid(std::f64::consts::TAU)).collect();
    assert!(args.windows(2).all(|w| w[0] < w[1]), "args not sorted: {args:?}");
    for p in &pts {
        let d = derivative_holo(fam, *p).unwrap();
        assert!(d.norm() < 1e-12, "derivative at critical point: {d}");
    }
}

#[test]
fn critical_set_degenerate_and_circle_cases() {
    assert_eq!(critical_set(holo(3, 0.0)).unwrap(), CriticalSet::Points(vec![c(0.0, 0.0)]));
    let nh = Family::NonholoPerturbed { m: 1, beta: c(2.0, 0.0) };
    let CriticalSet::Circle { radius } = critical_set(nh).unwrap() else {
        panic!("expected circle");
    };
    assert!((radius - 1.0).abs() < 1e-12);
    assert!(matches!(
        critical_set(Family::Henon { a: 1.0, b: 0.3 }),
        Err(DynError::Unsupported(_))
    ));
}

#[test]
fn principal_critical_point_is_positive_real_for_positive_real_parameter() {
    let fam = holo(2, 1e-4);
    let zc = principal_critical_point(fam).unwrap();
    assert_eq!(zc.im, 0.0);
    assert!((zc.re - 0.1).abs() < 1e-12, "m lambda / 2 = 1e-4, fourth root 0.1; got {zc}");
}

#[test]
fn prepoles_solve_power_equation_and_collapse_at_zero() {
    let pts = prepoles(1, c(-8.0, 0.0));
    assert_eq!(pts.len(), 3);
    assert!((pts[0] - c(2.0, 0.0)).norm() < 1e-12);
    for p in &pts {
        let fp = eval(holo(1, -8.0), *p).unwrap();
        assert!(fp.norm() < 1e-10, "prepole must map to 0, got {fp}");
    }
    assert_eq!(prepoles(4, c(0.0, 0.0)), vec![c(0.0, 0.0)]);
}

#[test]
fn symmetry_root_is_i_for_m_two() {
    let w = symmetry_root(2);
    assert!((w - c(0.0, 1.0)).norm() < 1e-15);
    let w1 = symmetry_root(1);
    assert!((w1 - Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)).norm() < 1e-15);
}

#[test]
fn default_escape_radius_floors_at_three() {
    assert_eq!(default_escape_radius(holo(1, 0.01)), 3.0);
    assert_eq!(default_escape_radius(holo(1, -4.0)), 6.0);
    assert_eq!(default_escape_radius(Family::Logistic { a: 2.0 }), 3.0);
}
