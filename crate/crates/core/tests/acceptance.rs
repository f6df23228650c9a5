//! Acceptance gate: one test per headline requirement, each printing a single
//! `ACCEPTANCE NN PASS/FAIL` line (visible with `--nocapture`) and failing
//! loudly when the requirement is not met at its stated tolerance. Several
//! requirements are not attainable from the implemented dynamics; those tests
//! are intentionally left red rather than weakened, and the FAIL line carries
//! the measured values.

use num_complex::Complex64;
use quadlab::equilibria::{
    complex_fixed_points_m1, henon_fixed_points, saddle_node_numeric, saddle_node_value,
    FixedPointClass,
};
use quadlab::family::{derivative_real, eval, eval_real, Family};
use quadlab::julia::{classify_julia, circle_contraction_check, disk_covering_radius, JuliaLabel};
use quadlab::nonholo::cycle_eigen;
use quadlab::orbit::{detect_cycle, lyapunov_1d, lyapunov_2d};
use quadlab::render::{
    grid_to_pgm, render_dynamical, render_parameter, ParamPlane, Viewport,
};
use quadlab::sweep::{
    critical_escape_time, find_homoclinic, find_superstable, homoclinic_one_sided_check,
    real_critical_start, window_scan, SweepTemplate,
};
use quadlab::stats::topological_entropy_estimate;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const PERIOD3_BETA: f64 = -0.327;
const PERIOD3_POINTS: [f64; 3] = [-0.549241, 0.897033, 0.440311];
const PERIOD4_BETA: f64 = -0.507;
const PERIOD4_POINTS: [f64; 4] = [-0.632282, 1.201797, 1.022799, 0.550833];

fn report(id: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("ACCEPTANCE {id:02} PASS - {what}");
    } else {
        let detail = failures.join("; ");
        println!("ACCEPTANCE {id:02} FAIL - {what}: {detail}");
        panic!("ACCEPTANCE {id:02} FAIL - {what}: {detail}");
    }
}

fn check(failures: &mut Vec<String>, ok: bool, msg: String) {
    if !ok {
        failures.push(msg);
    }
}

#[test]
fn acceptance_01_period3_jacobian_diagonal() {
    let mut bad = Vec::new();

    cycle_eigen(PERIOD3_BETA, &PERIOD3_POINTS).unwrap();
    let mut best = Duration::MAX;
    let mut rep = None;
    for _ in 0..5 {
        let t = Instant::now();
        let r = cycle_eigen(PERIOD3_BETA, &PERIOD3_POINTS).unwrap();
        best = best.min(t.elapsed());
        rep = Some(r);
    }
    let rep = rep.unwrap();

    let (d1, d2) = (rep.product.a11, rep.product.a22);
    check(&mut bad, (d1 - -0.081916).abs() <= 2e-4, format!("in-plane entry {d1:.6} vs -0.081916"));
    check(&mut bad, (d2 - 2.44116).abs() <= 2e-4, format!("transverse entry {d2:.6} vs 2.44116"));
    check(&mut bad, !rep.complex_pair, "eigenvalues unexpectedly complex".into());
    check(&mut bad, best < Duration::from_millis(1), format!("runtime {best:?} >= 1 ms"));

    report(1, &format!("period-3 Jacobian diagonal ({d1:.6}, {d2:.6}) in {best:?}"), &bad);
}

#[test]
fn acceptance_02_period4_eigenvalues() {
    let mut bad = Vec::new();
    let t = Instant::now();

    let rep = cycle_eigen(PERIOD4_BETA, &PERIOD4_POINTS).unwrap();
    let (big, small) = (rep.eigenvalues[0].re, rep.eigenvalues[1].re);
    check(
        &mut bad,
        (big - 4.60841).abs() <= 1e-3 && small.abs() <= 1e-3,
        format!("quoted points give eigenvalues ({big:.6}, {small:.6}), not (4.60841, 0) within 1e-3"),
    );

    // Rebuild the superstable period-4 cycle from scratch; the critical point
    // is on the orbit, so the transverse eigenvalue must collapse to zero.
    let c4 = find_superstable(SweepTemplate::Holo { m: 1 }, 4, (-0.54, -0.48)).unwrap();
    let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(c4, 0.0) };
    let mut pts = vec![real_critical_start(1, c4)];
    for _ in 0..3 {
        let last = *pts.last().unwrap();
        pts.push(eval_real(fam, last).unwrap());
    }
    let rep2 = cycle_eigen(c4, &pts).unwrap();
    let transverse = rep2.eigenvalues[1].norm();
    check(
        &mut bad,
        transverse <= 1e-9,
        format!("recomputed superstable cycle at {c4:.9} has transverse eigenvalue {transverse:.3e}"),
    );

    let dt = t.elapsed();
    check(&mut bad, dt < Duration::from_secs(1), format!("runtime {dt:?} >= 1 s"));

    report(
        2,
        &format!(
            "period-4 eigenvalues: quoted points ({big:.6}, {small:.6}), recomputed transverse {transverse:.1e}"
        ),
        &bad,
    );
}

#[test]
fn acceptance_03_saddle_node_values() {
    let mut bad = Vec::new();
    for (m, expected) in [(1u32, 4.0 / 27.0), (2, 27.0 / 256.0)] {
        let formula = saddle_node_value(m);
        let numeric = saddle_node_numeric(m).unwrap();
        check(&mut bad, (formula - expected).abs() <= 1e-6, format!("formula m={m}: {formula}"));
        check(&mut bad, (numeric - expected).abs() <= 1e-6, format!("numeric m={m}: {numeric}"));
    }
    report(3, "saddle-node parameters 4/27 and 27/256 by formula and by search", &bad);
}

#[test]
fn acceptance_04_superattracting_third() {
    let mut bad = Vec::new();
    let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(2.0 / 27.0, 0.0) };
    let image = eval_real(fam, 1.0 / 3.0).unwrap();
    let slope = derivative_real(fam, 1.0 / 3.0).unwrap();
    check(&mut bad, (image - 1.0 / 3.0).abs() <= 1e-12, format!("F(1/3) = {image}"));
    check(&mut bad, slope.abs() <= 1e-12, format!("F'(1/3) = {slope}"));
    report(4, "x = 1/3 is superattracting at parameter 2/27", &bad);
}

#[test]
fn acceptance_05_homoclinic_parameter() {
    let mut bad = Vec::new();
    let cstar = find_homoclinic().unwrap();
    check(&mut bad, (cstar - -0.593).abs() <= 5e-3, format!("located {cstar:.6}"));

    let below = critical_escape_time(cstar - 1e-3, 500);
    let above = critical_escape_time(cstar + 1e-3, 500);
    let one_sided = homoclinic_one_sided_check(cstar, 500);
    check(
        &mut bad,
        one_sided,
        format!(
            "one-sided escape check failed: critical orbit escapes on both sides \
             (below at {below:?}, above at {above:?})"
        ),
    );

    report(5, &format!("homoclinic parameter {cstar:.6} with one-sided escape"), &bad);
}

#[test]
fn acceptance_06_vieta_and_repulsion_past_saddle_node() {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(602);
    let lo = 4.0 / 27.0;
    for _ in 0..100 {
        let lambda = lo + (1.0 - lo) * (1.0 - rng.gen::<f64>());
        let reports = complex_fixed_points_m1(Complex64::new(lambda, 0.0)).unwrap();
        if reports.len() != 3 {
            bad.push(format!("lambda={lambda}: {} fixed points", reports.len()));
            break;
        }
        let sum: Complex64 = reports.iter().map(|r| r.location).sum();
        if (sum - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            bad.push(format!("lambda={lambda}: fixed points sum to {sum}"));
            break;
        }
        if let Some(r) =
            reports.iter().find(|r| r.classification != FixedPointClass::Repelling)
        {
            bad.push(format!(
                "lambda={lambda}: point {} is {:?}, |multiplier| {}",
                r.location,
                r.classification,
                r.multiplier.norm()
            ));
            break;
        }
    }
    report(6, "100 random lambda in (4/27, 1]: roots sum to 1 and all repel", &bad);
}

#[test]
fn acceptance_07_escape_region_soundness() {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7_000);
    for _ in 0..10_000 {
        let lambda = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let r = (1.0 + lambda.norm()) * (1.0 + 1e-6 + 3.0 * rng.gen::<f64>());
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(r, theta);
        let fam = Family::HoloPerturbed { m: 1, lambda };
        let image = eval(fam, z).unwrap();
        if image.norm() <= z.norm() {
            bad.push(format!("z={z}, lambda={lambda}: |F(z)|={} <= |z|={}", image.norm(), z.norm()));
            break;
        }
    }
    report(7, "10^4 random samples past radius 1+|lambda| strictly grow", &bad);
}

#[test]
fn acceptance_08_circle_contraction_small_lambda() {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..50 {
        let r = (1.0 / 27.0) * rng.gen_range(0.05_f64..1.0).sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let lambda = Complex64::from_polar(r, theta);
        match circle_contraction_check(lambda, 360) {
            Ok(true) => {}
            Ok(false) => {
                bad.push(format!("lambda={lambda}: contraction bound violated"));
                break;
            }
            Err(e) => {
                bad.push(format!("lambda={lambda}: {e}"));
                break;
            }
        }
    }
    report(8, "50 random |lambda| < 1/27 keep the unit circle strictly contracting", &bad);
}

#[test]
fn acceptance_09_disk_covering_trend() {
    let mut bad = Vec::new();
    let t = Instant::now();
    let near = disk_covering_radius(Complex64::new(-0.001, 0.0), 600, 2000);
    let far = disk_covering_radius(Complex64::new(-0.1, 0.0), 600, 2000);
    let dt = t.elapsed();

    match (&near, &far) {
        (Ok(a), Ok(b)) => {
            check(
                &mut bad,
                a.radius < b.radius,
                format!("radius({:.6}) !< radius({:.6})", a.radius, b.radius),
            );
        }
        _ => bad.push(format!(
            "covering radius undefined: lambda=-0.001 -> {:?}, lambda=-0.1 -> {:?} \
             (at lambda=-0.1 every pixel escapes by iteration 2000, so the grid \
             contains no bounded/escaped interface to measure)",
            near.as_ref().map(|d| d.radius),
            far.as_ref().map(|d| d.radius),
        )),
    }
    check(&mut bad, dt < Duration::from_secs(60), format!("runtime {dt:?} >= 60 s"));

    report(9, &format!("unit-disk covering radius shrinks as lambda -> 0 ({dt:?})"), &bad);
}

#[test]
fn acceptance_10_classification_labels() {
    let mut bad = Vec::new();
    let vp = Viewport::square(0.0, 0.0, 4.0, 301);

    let fam2 = Family::HoloPerturbed { m: 2, lambda: Complex64::new(1e-4, 0.0) };
    let base = classify_julia(fam2, vp, 256);
    let doubled = classify_julia(fam2, vp, 512);
    match (&base, &doubled) {
        (Ok(a), Ok(b)) => {
            check(
                &mut bad,
                a.label == JuliaLabel::CantorCurves && b.label == a.label,
                format!("m=2, lambda=1e-4: got {:?} / {:?}", a.label, b.label),
            );
        }
        _ => bad.push(format!(
            "m=2, lambda=1e-4 expected CantorCurves but classification is {:?} / {:?} \
             (critical orbit stays bounded without settling on a cycle, so the \
             escape trichotomy never fires)",
            base.as_ref().map(|c| c.label),
            doubled.as_ref().map(|c| c.label),
        )),
    }

    let fam1 = Family::HoloPerturbed { m: 1, lambda: Complex64::new(0.01, 0.0) };
    let a = classify_julia(fam1, vp, 256).unwrap();
    let b = classify_julia(fam1, vp, 512).unwrap();
    check(
        &mut bad,
        a.label == JuliaLabel::Connected && b.label == JuliaLabel::Connected,
        format!("m=1, lambda=0.01: got {:?} / {:?}", a.label, b.label),
    );

    report(10, "escape-trichotomy labels (stable under doubled iteration budget)", &bad);
}

#[test]
fn acceptance_11_henon_regimes() {
    let mut bad = Vec::new();

    let none = henon_fixed_points(-0.2, 0.3);
    check(&mut bad, none.is_empty(), format!("a=-0.2: {} fixed points", none.len()));

    let two = henon_fixed_points(0.2, 0.3);
    check(&mut bad, two.len() == 2, format!("a=0.2: {} fixed points", two.len()));
    check(
        &mut bad,
        two.iter().any(|r| r.classification == FixedPointClass::Attracting),
        "a=0.2: no attracting fixed point".into(),
    );

    let pair = henon_fixed_points(0.5, 0.3);
    check(
        &mut bad,
        pair.len() == 2 && pair.iter().all(|r| r.classification != FixedPointClass::Attracting),
        format!("a=0.5: {} fixed points, expected two non-attracting", pair.len()),
    );
    let cyc = detect_cycle(Family::Henon { a: 0.5, b: 0.3 }, Complex64::new(0.0, 0.0), 3000, 16, 1e-7)
        .unwrap();
    check(&mut bad, cyc.period == 2, format!("a=0.5 attractor period {}", cyc.period));

    for (a, want) in [(0.2, 1usize), (0.5, 2), (0.9, 4)] {
        let got = detect_cycle(Family::Henon { a, b: 0.4 }, Complex64::new(0.0, 0.0), 3000, 16, 1e-7)
            .unwrap()
            .period;
        check(&mut bad, got == want, format!("b=0.4, a={a}: period {got}, expected {want}"));
    }

    report(11, "Henon fixed-point census at b=0.3 and period ladder 1/2/4 at b=0.4", &bad);
}

#[test]
fn acceptance_12_henon_lyapunov_spectrum() {
    let mut bad = Vec::new();
    let t = Instant::now();
    let est = lyapunov_2d(Family::Henon { a: 1.4, b: 0.3 }, (0.0, 0.0), 1000, 1_000_000).unwrap();
    let dt = t.elapsed();

    let sum: f64 = est.exponents.iter().sum();
    check(&mut bad, est.exponents[0] > 0.0, format!("largest exponent {}", est.exponents[0]));
    check(
        &mut bad,
        (sum - 0.3_f64.ln()).abs() <= 0.02,
        format!("exponent sum {sum:.5} vs ln 0.3 = {:.5}", 0.3_f64.ln()),
    );
    check(&mut bad, dt < Duration::from_secs(30), format!("runtime {dt:?} >= 30 s"));

    report(
        12,
        &format!(
            "Henon (1.4, 0.3) exponents ({:.4}, {:.4}) sum to ln 0.3 ({dt:?})",
            est.exponents[0], est.exponents[1]
        ),
        &bad,
    );
}

#[test]
fn acceptance_13_logistic_full_chaos_rates() {
    let mut bad = Vec::new();
    let ln2 = std::f64::consts::LN_2;

    let lyap =
        lyapunov_1d(Family::Logistic { a: 2.0 }, 0.3, 1000, 200_000).unwrap().exponents[0];
    check(&mut bad, (lyap - ln2).abs() <= 0.02, format!("Lyapunov exponent {lyap:.5}"));

    let entropy = topological_entropy_estimate(2.0, 12, 0.2, 20001);
    check(&mut bad, (entropy - ln2).abs() <= 0.1, format!("entropy estimate {entropy:.5}"));

    report(
        13,
        &format!("logistic a=2 rates: Lyapunov {lyap:.4}, entropy {entropy:.4}, target ln 2"),
        &bad,
    );
}

#[test]
fn acceptance_14_window_scan_structure() {
    let mut bad = Vec::new();
    let t = Instant::now();
    let scan = window_scan(SweepTemplate::Holo { m: 1 }, (-0.593, -0.3237), 10_000, 8);
    let dt = t.elapsed();

    let p3 = scan.windows.iter().find(|w| w.period == 3 && w.lo <= -0.325 && w.hi >= -0.335);
    let p4 = scan.windows.iter().find(|w| w.period == 4 && w.lo <= -0.502 && w.hi >= -0.512);
    let gap = scan
        .escape_gaps
        .iter()
        .find(|&&(lo, hi)| lo > -0.593 && hi < -0.3237);
    check(&mut bad, p3.is_some(), "no period-3 window meeting -0.33 +/- 5e-3".into());
    check(&mut bad, p4.is_some(), "no period-4 window meeting -0.507 +/- 5e-3".into());
    check(&mut bad, gap.is_some(), "no interior escape gap".into());
    check(&mut bad, dt < Duration::from_secs(60), format!("runtime {dt:?} >= 60 s"));

    report(
        14,
        &format!(
            "parameter scan: {} windows, {} escape gaps, period-3 and period-4 windows at the \
             quoted locations ({dt:?})",
            scan.windows.len(),
            scan.escape_gaps.len()
        ),
        &bad,
    );
}

#[test]
fn acceptance_15_renderer_determinism() {
    let mut bad = Vec::new();

    let fam = Family::HoloPerturbed { m: 2, lambda: Complex64::new(-0.25, 0.0) };
    let vp = Viewport::square(0.0, 0.0, 4.0, 800);
    let render_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| grid_to_pgm(&render_dynamical(fam, vp, 100, 2.0)))
    };
    let one = render_with(1);
    let eight = render_with(8);
    check(&mut bad, one == eight, "PGM bytes differ between 1 and 8 workers".into());

    let pvp = Viewport::square(0.0, 0.0, 4.0, 301);
    let holo = render_parameter(ParamPlane::Holo { m: 2 }, pvp, 100, 2.0);
    let nonholo = render_parameter(ParamPlane::Nonholo { m: 2 }, pvp, 100, 2.0);
    let mid = 150;
    let mismatch = (151..301).find(|&i| holo.cell(i, mid) != nonholo.cell(i, mid));
    check(
        &mut bad,
        mismatch.is_none(),
        format!("parameter grids disagree on the positive real axis at column {mismatch:?}"),
    );

    report(15, "byte-identical PGM across worker counts; real-axis grid agreement", &bad);
}
