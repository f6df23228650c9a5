//! Built-in invariant suite behind `quadlab selftest`. Every check is fast,
//! deterministic (seeded randomness), and tied to a structural property that
//! must hold regardless of platform or worker count.

use anyhow::{bail, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadlab::equilibria::{
    complex_fixed_points_m1, henon_fixed_points, saddle_node_numeric, saddle_node_value,
};
use quadlab::family::{derivative_real, eval, eval_real, Family};
use quadlab::julia::circle_contraction_check;
use quadlab::nonholo::{cycle_eigen, real_line_agreement};
use quadlab::orbit::detect_cycle;
use quadlab::render::{
    cell_grey, grid_to_pgm, parse_pgm, render_dynamical, render_dynamical_seq, render_parameter,
    render_parameter_seq, ParamPlane, Viewport,
};
use quadlab::sweep::{find_homoclinic, find_superstable, SweepTemplate};

type Check = (&'static str, fn() -> Result<()>);

fn saddle_node_consistency() -> Result<()> {
    for m in 1..=3 {
        let formula = saddle_node_value(m);
        let numeric = saddle_node_numeric(m)?;
        if (formula - numeric).abs() > 1e-9 {
            bail!("m={m}: formula {formula} vs numeric {numeric}");
        }
    }
    Ok(())
}

fn superattracting_third() -> Result<()> {
    let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(2.0 / 27.0, 0.0) };
    let image = eval_real(fam, 1.0 / 3.0)?;
    let slope = derivative_real(fam, 1.0 / 3.0)?;
    if (image - 1.0 / 3.0).abs() > 1e-12 || slope.abs() > 1e-12 {
        bail!("F(1/3)={image}, F'(1/3)={slope}");
    }
    Ok(())
}

fn vieta_sums() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let lambda = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if lambda.norm() < 1e-3 {
            continue;
        }
        let reports = complex_fixed_points_m1(lambda)?;
        let sum: Complex64 = reports.iter().map(|r| r.location).sum();
        if (sum - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
            bail!("lambda={lambda}: fixed points sum to {sum}");
        }
    }
    Ok(())
}

fn escape_region_growth() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..2000 {
        let lambda = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let r = (1.0 + lambda.norm()) * (1.0 + 1e-6 + 3.0 * rng.gen::<f64>());
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(r, theta);
        let image = eval(Family::HoloPerturbed { m: 1, lambda }, z)?;
        if image.norm() <= z.norm() {
            bail!("z={z}, lambda={lambda}: |F(z)| = {} <= |z| = {}", image.norm(), z.norm());
        }
    }
    Ok(())
}

fn circle_contraction() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for _ in 0..8 {
        let r = (1.0 / 27.0) * rng.gen_range(0.05_f64..1.0).sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let lambda = Complex64::from_polar(r, theta);
        if !circle_contraction_check(lambda, 180)? {
            bail!("lambda={lambda}: contraction bound violated");
        }
    }
    Ok(())
}

fn period3_diagonal() -> Result<()> {
    let rep = cycle_eigen(-0.327, &[-0.549241, 0.897033, 0.440311])?;
    let (d1, d2) = (rep.product.a11, rep.product.a22);
    if (d1 - -0.081916).abs() > 2e-4 || (d2 - 2.44116).abs() > 2e-4 {
        bail!("diagonal ({d1}, {d2})");
    }
    Ok(())
}

fn homoclinic_value() -> Result<()> {
    let c = find_homoclinic()?;
    if (c + 16.0 / 27.0).abs() > 1e-9 {
        bail!("located {c}, expected -16/27");
    }
    Ok(())
}

fn renders_agree_across_backends() -> Result<()> {
    let fam = Family::HoloPerturbed { m: 2, lambda: Complex64::new(-0.25, 0.0) };
    let vp = Viewport::square(0.0, 0.0, 4.0, 64);
    let par = render_dynamical(fam, vp, 60, 2.0);
    let seq = render_dynamical_seq(fam, vp, 60, 2.0);
    if par.cells != seq.cells {
        bail!("dynamical-plane renders differ between parallel and sequential backends");
    }
    let pvp = Viewport::square(0.0, 0.0, 4.0, 41);
    let par = render_parameter(ParamPlane::Holo { m: 2 }, pvp, 40, 2.0);
    let seq = render_parameter_seq(ParamPlane::Holo { m: 2 }, pvp, 40, 2.0);
    if par.cells != seq.cells {
        bail!("parameter-plane renders differ between parallel and sequential backends");
    }
    Ok(())
}

fn pgm_round_trip() -> Result<()> {
    let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(0.01, 0.0) };
    let grid = render_dynamical(fam, Viewport::square(0.0, 0.0, 4.0, 33), 50, 2.0);
    let pgm = parse_pgm(&grid_to_pgm(&grid))?;
    if pgm.width != 33 || pgm.height != 33 || pgm.maxval != 255 {
        bail!("header {}x{} maxval {}", pgm.width, pgm.height, pgm.maxval);
    }
    let expected: Vec<u8> = grid.cells.iter().map(|&c| cell_grey(c, grid.max_iter)).collect();
    if pgm.data != expected {
        bail!("raster bytes changed across the PGM round trip");
    }
    Ok(())
}

fn logistic_superstable_period2() -> Result<()> {
    let a = find_superstable(SweepTemplate::Logistic, 2, (0.5, 1.5))?;
    if (a - 1.0).abs() > 1e-9 {
        bail!("located {a}, expected 1");
    }
    Ok(())
}

fn real_axis_conjugate_agreement() -> Result<()> {
    for x in [0.73, -0.549241, 1.5, -2.0] {
        if !real_line_agreement(-0.327, x)? {
            bail!("holo and nonholo steps disagree at x={x}");
        }
    }
    Ok(())
}

fn henon_fixed_points_on_line() -> Result<()> {
    let reports = henon_fixed_points(0.2, 0.3);
    if reports.len() != 2 {
        bail!("{} fixed points at (0.2, 0.3), expected 2", reports.len());
    }
    for r in &reports {
        if (r.location.im - 0.3 * r.location.re).abs() > 1e-9 {
            bail!("fixed point {} is off the line y = b x", r.location);
        }
    }
    Ok(())
}

fn henon_period_ladder() -> Result<()> {
    for (a, want) in [(0.2, 1usize), (0.5, 2), (0.9, 4)] {
        let got = detect_cycle(Family::Henon { a, b: 0.4 }, Complex64::new(0.0, 0.0), 3000, 16, 1e-7)?
            .period;
        if got != want {
            bail!("b=0.4, a={a}: period {got}, expected {want}");
        }
    }
    Ok(())
}

const CHECKS: &[Check] = &[
    ("saddle-node formula vs numeric search", saddle_node_consistency),
    ("superattracting fixed point at 2/27", superattracting_third),
    ("fixed-point Vieta sums (m=1)", vieta_sums),
    ("escape-region growth", escape_region_growth),
    ("unit-circle contraction at small lambda", circle_contraction),
    ("period-3 Jacobian diagonal", period3_diagonal),
    ("homoclinic parameter equals -16/27", homoclinic_value),
    ("parallel and sequential renders agree", renders_agree_across_backends),
    ("PGM round trip", pgm_round_trip),
    ("logistic superstable period 2 at a=1", logistic_superstable_period2),
    ("real-axis conjugate agreement", real_axis_conjugate_agreement),
    ("Henon fixed points on y = b x", henon_fixed_points_on_line),
    ("Henon period ladder at b=0.4", henon_period_ladder),
];

pub fn run() -> Result<()> {
    let mut failed = 0usize;
    for (name, check) in CHECKS {
        match check() {
            Ok(()) => println!("ok {name}"),
            Err(e) => {
                failed += 1;
                println!("FAILED {name}: {e}");
            }
        }
    }
    println!("selftest: {} passed, {failed} failed", CHECKS.len() - failed);
    if failed > 0 {
        bail!("{failed} of {} checks failed", CHECKS.len());
    }
    Ok(())
}
