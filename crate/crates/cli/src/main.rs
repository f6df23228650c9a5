//! Single binary exposing the quadlab operations as subcommands. Outputs are
//! deterministic for a fixed configuration (seeded randomness, worker-count
//! independent), which keeps them usable in golden tests and scripts.
//!
//! Exit codes: 0 on success, 1 on a domain error (message on stderr), 2 on a
//! usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use quadlab::equilibria::{
    complex_fixed_points_m1, henon_fixed_points, real_fixed_points, saddle_node_value,
    FixedPointReport,
};
use quadlab::family::Family;
use quadlab::julia::{classify_julia, disk_covering_radius};
use quadlab::nonholo::cycle_eigen;
use quadlab::orbit::{lyapunov_1d, lyapunov_2d};
use quadlab::render::{
    default_palette, grid_to_csv, grid_to_pgm, grid_to_ppm, render_dynamical, render_parameter,
    EscapeGrid, ParamPlane, Viewport,
};
use quadlab::stats::{
    correlation, dichotomy_scan_with_len, henon_attractor_from, henon_bifurcation, nowicki_sums,
    schwarzian, topological_entropy_estimate, Rect, Verdict,
};
use quadlab::sweep::{
    find_homoclinic, find_superstable, orbit_diagram, real_critical_start, window_scan,
    SweepTemplate, X0Rule,
};

mod selftest;

/// A comma-separated list of reals, parsed from a single flag value.
#[derive(Clone, Debug)]
struct FloatList(Vec<f64>);

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let (re, im) = match s.split_once(',') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "0"),
    };
    let re: f64 = re.parse().map_err(|_| format!("invalid real part `{re}`"))?;
    let im: f64 = im.parse().map_err(|_| format!("invalid imaginary part `{im}`"))?;
    Ok(Complex64::new(re, im))
}

fn parse_float_list(s: &str) -> Result<FloatList, String> {
    let vals: Result<Vec<f64>, String> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("invalid number `{t}`")))
        .collect();
    let vals = vals?;
    if vals.is_empty() {
        return Err("expected at least one value".into());
    }
    Ok(FloatList(vals))
}

/// An axis-aligned box given as "xmin,xmax,ymin,ymax".
fn parse_rect(s: &str) -> Result<Rect, String> {
    let FloatList(v) = parse_float_list(s)?;
    if v.len() != 4 {
        return Err(format!("expected 4 comma-separated numbers, got {}", v.len()));
    }
    if v[0] > v[1] || v[2] > v[3] {
        return Err("box bounds must satisfy xmin <= xmax and ymin <= ymax".into());
    }
    Ok(Rect { x_min: v[0], x_max: v[1], y_min: v[2], y_max: v[3] })
}

/// Fixed-notation formatting at 9 significant digits with trailing zeros
/// trimmed, so that text outputs are stable across platforms.
fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (9 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{},{}", fmt_sig(z.re), fmt_sig(z.im))
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneKind {
    /// z^2 + lambda / z^m
    Holo,
    /// z^2 + beta / conj(z)^m
    Nonholo,
}

#[derive(Clone, Copy, ValueEnum)]
enum DynKind {
    /// z^2 + lambda / z^m; param = "re,im"
    Holo,
    /// z^2 + beta / conj(z)^m; param = "re,im"
    Nonholo,
    /// x -> 1 - a x^2; param = a
    Logistic,
    /// (x, y) -> (1 - a x^2 + y, b x); param = "a,b"
    Henon,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Holo,
    Nonholo,
    Logistic,
    Henon,
}

#[derive(Clone, Copy, ValueEnum)]
enum LyapKind {
    Logistic,
    Holo,
    Henon,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixedKind {
    /// Real fixed points of x^2 + c/x^m
    Real,
    /// All three complex fixed points (m = 1)
    Complex,
    /// Henon fixed points on the line y = b x
    Henon,
}

#[derive(Parser)]
#[command(
    name = "quadlab",
    version,
    about = "Deterministic laboratory for quadratic-family dynamics",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores). Outputs do
    /// not depend on this value.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Escape-time render of a dynamical plane, written by output extension
    /// (.pgm, .ppm, or .csv).
    RenderDyn {
        /// Family to iterate.
        #[arg(long, value_enum, default_value_t = DynKind::Holo)]
        kind: DynKind,
        /// Pole order m for the perturbed families.
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Family parameter: "re,im" (holo/nonholo), a (logistic), "a,b" (henon).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        param: Complex64,
        /// Viewport center as "re,im".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
        center: Complex64,
        /// Viewport width in plane units (square pixels).
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        /// Pixels per side.
        #[arg(long, default_value_t = 800)]
        res: usize,
        /// Iteration budget per pixel.
        #[arg(long, default_value_t = 256)]
        max_iter: u32,
        /// Escape radius; derived from the family when omitted.
        #[arg(long)]
        escape_radius: Option<f64>,
        /// Output file (.pgm, .ppm, or .csv).
        #[arg(long)]
        out: PathBuf,
    },

    /// Escape-time render of a parameter plane (critical orbit per pixel).
    RenderParam {
        #[arg(long, value_enum, default_value_t = PlaneKind::Holo)]
        kind: PlaneKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Viewport center as "re,im".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
        center: Complex64,
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        #[arg(long, default_value_t = 800)]
        res: usize,
        #[arg(long, default_value_t = 256)]
        max_iter: u32,
        /// Escape radius applied at every pixel's parameter.
        #[arg(long, default_value_t = 4.0)]
        escape_radius: f64,
        #[arg(long)]
        out: PathBuf,
    },

    /// Classify the Julia set of z^2 + lambda/z^m from the critical orbit's
    /// fate (connected vs. Cantor-type escape configurations).
    Classify {
        #[arg(long, value_enum, default_value_t = PlaneKind::Holo)]
        kind: PlaneKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Perturbation parameter as "re,im".
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        param: Complex64,
        #[arg(long, default_value_t = 301)]
        res: usize,
        #[arg(long, default_value_t = 256)]
        max_iter: usize,
    },

    /// Covering radius of the closed unit disk by the rendered Julia
    /// interface (how closely the set fills the disk).
    DiskCoverage {
        /// Perturbation parameter as "re,im" (m = 1).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        param: Complex64,
        #[arg(long, default_value_t = 600)]
        res: usize,
        #[arg(long, default_value_t = 2000)]
        max_iter: u32,
    },

    /// Orbit diagram: asymptotic real states of the seeded orbit against a
    /// swept parameter, as CSV rows "param,value".
    OrbitDiagram {
        #[arg(long, value_enum, default_value_t = SweepKind::Holo)]
        kind: SweepKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Fixed Henon b (henon kind only).
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        /// Low end of the parameter range.
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        /// High end of the parameter range.
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 600)]
        samples: usize,
        #[arg(long, default_value_t = 300)]
        burn_in: usize,
        /// Post-burn-in states kept per parameter.
        #[arg(long, default_value_t = 120)]
        kept: usize,
        /// Fixed seed; defaults to the critical point of the family.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Fixed points with multipliers and stability classes.
    FixedPoints {
        #[arg(long, value_enum, default_value_t = FixedKind::Real)]
        kind: FixedKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Family parameter (real c, or "re,im" for the complex kind).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        param: Option<Complex64>,
        /// Henon a (henon kind only).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// Henon b (henon kind only).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
    },

    /// Saddle-node parameter (1+m)^(1+m) / (2+m)^(2+m) of the real family.
    SaddleNode {
        #[arg(long, default_value_t = 1)]
        m: u32,
    },

    /// Leftmost parameter in a bracket whose critical orbit is periodic with
    /// the given period (superstable cycle).
    Superstable {
        #[arg(long, value_enum, default_value_t = SweepKind::Holo)]
        kind: SweepKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        period: usize,
        /// Bracket low end.
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        /// Bracket high end.
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
    },

    /// Parameter at which the real critical orbit lands on a fixed point
    /// (homoclinic boundary of the m = 1 family).
    Homoclinic,

    /// Periodic windows and escape gaps over a real parameter range, as CSV
    /// rows "kind,period,lo,hi".
    WindowScan {
        #[arg(long, value_enum, default_value_t = SweepKind::Holo)]
        kind: SweepKind,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Jacobian product around a real cycle of z^2 + beta/conj(z): prints the
    /// in-plane and transverse eigenvalues.
    CycleEigen {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Cycle points as a comma-separated list "x1,x2,...".
        #[arg(long, value_parser = parse_float_list, allow_hyphen_values = true)]
        points: FloatList,
    },

    /// Henon orbit after burn-in, as CSV rows "x,y".
    HenonAttractor {
        #[arg(long, default_value_t = 1.4, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long, default_value_t = 10000)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        burn_in: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Henon bifurcation diagram at fixed b, as CSV rows "a,x".
    HenonBif {
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 600)]
        samples: usize,
        #[arg(long, default_value_t = 300)]
        burn_in: usize,
        #[arg(long, default_value_t = 40)]
        kept: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Lyapunov exponents (one per line, descending).
    Lyapunov {
        #[arg(long, value_enum, default_value_t = LyapKind::Logistic)]
        kind: LyapKind,
        /// Logistic/Henon a.
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        a: f64,
        /// Henon b.
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Real parameter c of the holo kind.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        param: Option<Complex64>,
        /// Start point; defaults to 0.3 (1-D) or the critical point (holo).
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long, default_value_t = 1000)]
        burn_in: usize,
        #[arg(long, default_value_t = 200000)]
        n: usize,
    },

    /// Indicator autocorrelation C(n) along a Henon orbit, as CSV rows
    /// "lag,value"; the fitted decay rate goes to stderr.
    Correlation {
        #[arg(long, default_value_t = 1.4, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 200000)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        burn_in: usize,
        #[arg(long, default_value_t = 20)]
        max_lag: usize,
        /// Seed of the shuffled noise-floor estimate.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Indicator box A as "xmin,xmax,ymin,ymax"; default x >= 0.
        #[arg(long, value_parser = parse_rect, allow_hyphen_values = true)]
        box_a: Option<Rect>,
        /// Indicator box B as "xmin,xmax,ymin,ymax"; default x >= 0.
        #[arg(long, value_parser = parse_rect, allow_hyphen_values = true)]
        box_b: Option<Rect>,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Topological entropy estimate of the logistic map from (n, eps)-separated
    /// orbit counts.
    Entropy {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Separation window length.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        /// Number of seed points across [-1, 1].
        #[arg(long, default_value_t = 20001)]
        grid: usize,
    },

    /// Schwarzian derivative of the logistic map at a point.
    Schwarzian {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
    },

    /// Partial sums of the derivative-reciprocal series along the critical
    /// orbit (one per line).
    Nowicki {
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 50)]
        terms: usize,
    },

    /// Regular-or-stochastic verdict per logistic parameter, as CSV rows
    /// "a,verdict,lyapunov,period".
    DichotomyScan {
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Lyapunov threshold separating stochastic from undecided.
        #[arg(long, default_value_t = 0.05)]
        threshold: f64,
        /// Lyapunov sample length per parameter.
        #[arg(long, default_value_t = 3000)]
        sample_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run the built-in invariant suite; exits nonzero on any failure.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2));
        }
    };

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} worker threads: {e}");
            return ExitCode::from(1);
        }
    }

    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dyn_family(kind: DynKind, m: u32, param: Complex64) -> Result<Family> {
    Ok(match kind {
        DynKind::Holo => Family::HoloPerturbed { m, lambda: param },
        DynKind::Nonholo => Family::NonholoPerturbed { m, beta: param },
        DynKind::Logistic => {
            if param.im != 0.0 {
                bail!("the logistic parameter must be real, got {}", fmt_c(param));
            }
            Family::Logistic { a: param.re }
        }
        DynKind::Henon => Family::Henon { a: param.re, b: param.im },
    })
}

fn sweep_template(kind: SweepKind, m: u32, b: f64) -> SweepTemplate {
    match kind {
        SweepKind::Holo => SweepTemplate::Holo { m },
        SweepKind::Nonholo => SweepTemplate::Nonholo { m },
        SweepKind::Logistic => SweepTemplate::Logistic,
        SweepKind::Henon => SweepTemplate::Henon { b },
    }
}

fn write_grid(grid: &EscapeGrid, path: &Path) -> Result<()> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let bytes = match ext {
        "pgm" => grid_to_pgm(grid),
        "ppm" => grid_to_ppm(grid, &default_palette()),
        "csv" => grid_to_csv(grid).into_bytes(),
        other => bail!("unsupported output extension `{other}` (use .pgm, .ppm, or .csv)"),
    };
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    eprintln!(
        "wrote {} ({}x{}, max-iter {})",
        path.display(),
        grid.viewport.pixels_x,
        grid.viewport.pixels_y,
        grid.max_iter
    );
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn fixed_point_lines(reports: &[FixedPointReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "location={} multiplier={} class={:?}\n",
            fmt_c(r.location),
            fmt_c(r.multiplier),
            r.classification
        ));
    }
    s
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::RenderDyn { kind, m, param, center, width, res, max_iter, escape_radius, out } => {
            let fam = dyn_family(kind, m, param)?;
            let vp = Viewport::square(center.re, center.im, width, res);
            let radius = escape_radius.unwrap_or_else(|| quadlab::family::default_escape_radius(fam));
            let grid = render_dynamical(fam, vp, max_iter, radius);
            write_grid(&grid, &out)
        }

        Cmd::RenderParam { kind, m, center, width, res, max_iter, escape_radius, out } => {
            let plane = match kind {
                PlaneKind::Holo => ParamPlane::Holo { m },
                PlaneKind::Nonholo => ParamPlane::Nonholo { m },
            };
            let vp = Viewport::square(center.re, center.im, width, res);
            let grid = render_parameter(plane, vp, max_iter, escape_radius);
            write_grid(&grid, &out)
        }

        Cmd::Classify { kind, m, param, res, max_iter } => {
            let fam = match kind {
                PlaneKind::Holo => Family::HoloPerturbed { m, lambda: param },
                PlaneKind::Nonholo => Family::NonholoPerturbed { m, beta: param },
            };
            let vp = Viewport::square(0.0, 0.0, 4.0, res);
            let class = classify_julia(fam, vp, max_iter)?;
            let idx = class
                .evidence
                .escape_index
                .map_or_else(|| "-".to_string(), |i| i.to_string());
            let comp = class
                .evidence
                .component_of_critical
                .map_or_else(|| "-".to_string(), |c| format!("{c:?}"));
            println!(
                "label={:?} escaped={} escape_index={} component={}",
                class.label, class.evidence.critical_escaped, idx, comp
            );
            Ok(())
        }

        Cmd::DiskCoverage { param, res, max_iter } => {
            let cov = disk_covering_radius(param, res, max_iter)?;
            println!(
                "radius={} interface_pixels={} disk_samples={}",
                fmt_sig(cov.radius),
                cov.interface_pixels,
                cov.disk_samples
            );
            Ok(())
        }

        Cmd::OrbitDiagram { kind, m, b, from, to, samples, burn_in, kept, x0, out } => {
            let template = sweep_template(kind, m, b);
            let rule = match x0 {
                Some(v) => X0Rule::Fixed(v),
                None => X0Rule::CriticalPoint,
            };
            let data = orbit_diagram(template, (from, to), samples, burn_in, kept, rule);
            let mut csv = String::from("param,value\n");
            for (c, values) in &data.rows {
                for v in values {
                    csv.push_str(&format!("{},{}\n", fmt_sig(*c), fmt_sig(*v)));
                }
            }
            emit(&csv, out.as_deref())
        }

        Cmd::FixedPoints { kind, m, param, a, b } => {
            let reports = match kind {
                FixedKind::Real => {
                    let c = param.context("--param is required for the real kind")?;
                    if c.im != 0.0 {
                        bail!("the real kind needs a real parameter, got {}", fmt_c(c));
                    }
                    real_fixed_points(m, c.re)?
                }
                FixedKind::Complex => {
                    if m != 1 {
                        bail!("complex fixed points are implemented for m = 1 only");
                    }
                    let lambda = param.context("--param is required for the complex kind")?;
                    complex_fixed_points_m1(lambda)?
                }
                FixedKind::Henon => {
                    let a = a.context("--a is required for the henon kind")?;
                    let b = b.context("--b is required for the henon kind")?;
                    henon_fixed_points(a, b)
                }
            };
            print!("{}", fixed_point_lines(&reports));
            Ok(())
        }

        Cmd::SaddleNode { m } => {
            println!("{}", fmt_sig(saddle_node_value(m)));
            Ok(())
        }

        Cmd::Superstable { kind, m, b, period, lo, hi } => {
            let c = find_superstable(sweep_template(kind, m, b), period, (lo, hi))?;
            println!("{}", fmt_sig(c));
            Ok(())
        }

        Cmd::Homoclinic => {
            println!("{}", fmt_sig(find_homoclinic()?));
            Ok(())
        }

        Cmd::WindowScan { kind, m, b, from, to, samples, max_period, out } => {
            let report = window_scan(sweep_template(kind, m, b), (from, to), samples, max_period);
            let mut csv = String::from("kind,period,lo,hi\n");
            for w in &report.windows {
                csv.push_str(&format!("window,{},{},{}\n", w.period, fmt_sig(w.lo), fmt_sig(w.hi)));
            }
            for &(lo, hi) in &report.escape_gaps {
                csv.push_str(&format!("gap,,{},{}\n", fmt_sig(lo), fmt_sig(hi)));
            }
            emit(&csv, out.as_deref())
        }

        Cmd::CycleEigen { beta, points } => {
            let report = cycle_eigen(beta, &points.0)?;
            if report.complex_pair {
                println!(
                    "eigenvalues: {} and {}",
                    fmt_c(report.eigenvalues[0]),
                    fmt_c(report.eigenvalues[1])
                );
            } else {
                // Diagonal order: in-plane entry first, transverse second.
                println!(
                    "eigenvalues: {}, {}",
                    fmt_sig(report.product.a11),
                    fmt_sig(report.product.a22)
                );
            }
            Ok(())
        }

        Cmd::HenonAttractor { a, b, x0, y0, n, burn_in, out } => {
            let cloud = henon_attractor_from(a, b, (x0, y0), n, burn_in)?;
            let mut csv = String::from("x,y\n");
            for (x, y) in &cloud.points {
                csv.push_str(&format!("{},{}\n", fmt_sig(*x), fmt_sig(*y)));
            }
            emit(&csv, out.as_deref())
        }

        Cmd::HenonBif { b, from, to, samples, burn_in, kept, out } => {
            let data = henon_bifurcation(b, (from, to), samples, burn_in, kept);
            let mut csv = String::from("a,x\n");
            for (a, values) in &data.rows {
                for v in values {
                    csv.push_str(&format!("{},{}\n", fmt_sig(*a), fmt_sig(*v)));
                }
            }
            emit(&csv, out.as_deref())
        }

        Cmd::Lyapunov { kind, a, b, m, param, x0, y0, burn_in, n } => {
            let estimate = match kind {
                LyapKind::Logistic => {
                    lyapunov_1d(Family::Logistic { a }, x0.unwrap_or(0.3), burn_in, n)?
                }
                LyapKind::Holo => {
                    let c = param.context("--param is required for the holo kind")?;
                    if c.im != 0.0 {
                        bail!("the holo kind sweeps the real axis; got {}", fmt_c(c));
                    }
                    let fam = Family::HoloPerturbed { m, lambda: c };
                    let start = x0.unwrap_or_else(|| real_critical_start(m, c.re));
                    lyapunov_1d(fam, start, burn_in, n)?
                }
                LyapKind::Henon => {
                    lyapunov_2d(Family::Henon { a, b }, (x0.unwrap_or(0.0), y0), burn_in, n)?
                }
            };
            for e in &estimate.exponents {
                println!("{}", fmt_sig(*e));
            }
            Ok(())
        }

        Cmd::Correlation { a, b, n, burn_in, max_lag, seed, box_a, box_b, out } => {
            let cloud = henon_attractor_from(a, b, (0.0, 0.0), n, burn_in)?;
            let set_a = box_a.unwrap_or_else(Rect::right_half);
            let set_b = box_b.unwrap_or_else(Rect::right_half);
            let series = correlation(&cloud, set_a, set_b, max_lag, seed)?;
            let mut csv = String::from("lag,value\n");
            for (lag, v) in series.values.iter().enumerate() {
                csv.push_str(&format!("{},{}\n", lag, fmt_sig(*v)));
            }
            let rate = series
                .fitted_rate
                .map_or_else(|| "-".to_string(), fmt_sig);
            eprintln!(
                "noise_floor={} usable_lags={} rate={}",
                fmt_sig(series.noise_floor),
                series.usable_lags,
                rate
            );
            emit(&csv, out.as_deref())
        }

        Cmd::Entropy { a, n, epsilon, grid } => {
            println!("{}", fmt_sig(topological_entropy_estimate(a, n, epsilon, grid)));
            Ok(())
        }

        Cmd::Schwarzian { a, x } => {
            println!("{}", fmt_sig(schwarzian(a, x)?));
            Ok(())
        }

        Cmd::Nowicki { a, terms } => {
            for s in nowicki_sums(a, terms)? {
                println!("{}", fmt_sig(s));
            }
            Ok(())
        }

        Cmd::DichotomyScan { from, to, samples, threshold, sample_len, out } => {
            let scan = dichotomy_scan_with_len((from, to), samples, threshold, sample_len);
            let mut csv = String::from("a,verdict,lyapunov,period\n");
            for row in &scan.rows {
                let verdict = match row.verdict {
                    Verdict::Regular => "regular",
                    Verdict::Stochastic => "stochastic",
                    Verdict::Undecided => "undecided",
                };
                let period = row.period.map_or_else(String::new, |p| p.to_string());
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_sig(row.a),
                    verdict,
                    fmt_sig(row.lyapunov),
                    period
                ));
            }
            emit(&csv, out.as_deref())
        }

        Cmd::Selftest => selftest::run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting_trims_trailing_zeros() {
        assert_eq!(fmt_sig(27.0 / 256.0), "0.10546875");
        assert_eq!(fmt_sig(4.0 / 27.0), "0.148148148");
        assert_eq!(fmt_sig(-16.0 / 27.0), "-0.592592593");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1_000_000.0), "1000000");
        assert_eq!(fmt_sig(2.0_f64.ln()), "0.693147181");
        assert_eq!(fmt_sig(1.5e-4), "0.00015");
    }

    #[test]
    fn complex_flag_parsing_accepts_scalar_and_pair() {
        assert_eq!(parse_complex("-0.25,0").unwrap(), Complex64::new(-0.25, 0.0));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex(" 0.1 , -0.2 ").unwrap(), Complex64::new(0.1, -0.2));
        assert!(parse_complex("a,b").is_err());
        assert!(parse_complex("1,2,3").is_err());
    }

    #[test]
    fn rect_flag_requires_ordered_bounds() {
        let r = parse_rect("0,1.5,-0.45,0.45").unwrap();
        assert_eq!((r.x_min, r.x_max, r.y_min, r.y_max), (0.0, 1.5, -0.45, 0.45));
        assert!(parse_rect("1,0,0,1").is_err());
        assert!(parse_rect("0,1,0").is_err());
    }
}
