//! Critical-orbit classification of Julia-set topology for the holomorphic
//! family, plus quantitative checks: covering radius of the escaped/bounded
//! interface over the unit disk, critical-circle contraction, and escape
//! monotonicity outside the sound radius.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DynError, Result};
use crate::family::{self, Family};
use crate::orbit;
use crate::render::{self, EscapeGrid, Viewport};

/// Topological type claimed for the Julia set, by critical-orbit evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JuliaLabel {
    /// Critical orbit stays bounded and settles: connected Julia set.
    Connected,
    /// Critical orbit escapes within the border component.
    CantorSet,
    /// Critical orbit escapes within a trap-door component distinct from the
    /// border: Cantor family of circles.
    CantorCurves,
    /// Critical orbit escapes in some other component: Sierpinski-like
    /// candidate configuration.
    SierpinskiCandidate,
}

/// Which escaped component contained the critical pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentClass {
    Border,
    Pole,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evidence {
    pub critical_escaped: bool,
    pub escape_index: Option<usize>,
    pub component_of_critical: Option<ComponentClass>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JuliaClass {
    pub label: JuliaLabel,
    pub evidence: Evidence,
}

/// Period bound and tolerance used to decide that a bounded critical orbit
/// has settled onto a cycle.
pub const SETTLE_MAX_PERIOD: usize = 64;
pub const SETTLE_TOL: f64 = 1e-6;

/// Classify the Julia set of z^2 + lambda/z^m from the fate of the critical
/// orbit. Escaping orbits are located in the component structure of an
/// escape-time render over `vp`; bounded orbits must settle onto a cycle
/// within `SETTLE_MAX_PERIOD`, otherwise the outcome is `Inconclusive`.
pub fn classify_julia(fam: Family, vp: Viewport, max_iter: usize) -> Result<JuliaClass> {
    let (_m, lambda) = match fam {
        Family::HoloPerturbed { m, lambda } => (m, lambda),
        _ => return Err(DynError::Unsupported("classification needs the holomorphic family")),
    };
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(DynError::PreconditionViolated("lambda must be nonzero"));
    }
    let radius = family::default_escape_radius(fam);
    let zc = family::principal_critical_point(fam)?;
    let orb = orbit::iterate(fam, zc, max_iter, radius);
    if !orb.escaped {
        return match orbit::detect_cycle(fam, orb.final_state, 0, SETTLE_MAX_PERIOD, SETTLE_TOL) {
            Ok(_) => Ok(JuliaClass {
                label: JuliaLabel::Connected,
                evidence: Evidence {
                    critical_escaped: false,
                    escape_index: None,
                    component_of_critical: None,
                },
            }),
            Err(_) => Err(DynError::Inconclusive),
        };
    }
    let grid = render::render_dynamical(fam, vp, max_iter as u32, radius);
    let labeling = render::label_components(&grid);
    let (i, j) = vp.nearest_pixel(zc);
    let label_at = labeling.labels[j * vp.pixels_x + i];
    if label_at == 0 {
        // The orbit escaped but the critical pixel renders bounded: the
        // evidence is contradictory at this resolution.
        return Err(DynError::Inconclusive);
    }
    let component = if Some(label_at) == labeling.border_label {
        ComponentClass::Border
    } else if Some(label_at) == labeling.pole_label {
        ComponentClass::Pole
    } else {
        ComponentClass::Other
    };
    let label = match component {
        ComponentClass::Border => JuliaLabel::CantorSet,
        ComponentClass::Pole => JuliaLabel::CantorCurves,
        ComponentClass::Other => JuliaLabel::SierpinskiCandidate,
    };
    Ok(JuliaClass {
        label,
        evidence: Evidence {
            critical_escaped: true,
            escape_index: orb.escape_index,
            component_of_critical: Some(component),
        },
    })
}

/// Cells adjacent to the escaped/bounded interface: escaped cells with a
/// bounded 4-neighbour, bounded cells with an escaped 4-neighbour, and
/// escaped cells whose 8-neighbourhood meets a different escaped component.
pub fn interface_cells(grid: &EscapeGrid) -> Vec<(usize, usize)> {
    let labeling = render::label_components(grid);
    let px = grid.viewport.pixels_x;
    let py = grid.viewport.pixels_y;
    let mut out = Vec::new();
    for j in 0..py {
        for i in 0..px {
            let idx = j * px + i;
            let here = grid.cells[idx];
            let mut boundary = false;
            let neigh4 = |di: isize, dj: isize| -> Option<u32> {
                let ni = i as isize + di;
                let nj = j as isize + dj;
                if ni < 0 || nj < 0 || ni >= px as isize || nj >= py as isize {
                    return None;
                }
                Some(grid.cells[nj as usize * px + ni as usize])
            };
            for (di, dj) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                if let Some(n) = neigh4(di, dj) {
                    if (here == 0) != (n == 0) {
                        boundary = true;
                    }
                }
            }
            if !boundary && here != 0 {
                let l = labeling.labels[idx];
                'outer: for dj in -1isize..=1 {
                    for di in -1isize..=1 {
                        let ni = i as isize + di;
                        let nj = j as isize + dj;
                        if ni < 0 || nj < 0 || ni >= px as isize || nj >= py as isize {
                            continue;
                        }
                        let nl = labeling.labels[nj as usize * px + ni as usize];
                        if nl != 0 && nl != l {
                            boundary = true;
                            break 'outer;
                        }
                    }
                }
            }
            if boundary {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiskCoverage {
    /// Largest distance from a unit-disk sample point to the nearest
    /// interface pixel center.
    pub radius: f64,
    pub interface_pixels: usize,
    pub disk_samples: usize,
}

/// Sample grid across [-1,1]^2 for the unit-disk covering measure: 41 x 41
/// lattice points, those with |p| <= 1 kept (1253 samples).
pub const DISK_GRID: usize = 41;

/// How well the rendered interface (a stand-in for the Julia set) covers the
/// closed unit disk: the max-min distance from disk samples to interface
/// pixel centers, for z^2 + lambda/z over the standard width-4 viewport.
pub fn disk_covering_radius(lambda: Complex64, res: usize, max_iter: u32) -> Result<DiskCoverage> {
    let fam = Family::HoloPerturbed { m: 1, lambda };
    let vp = Viewport::square(0.0, 0.0, 4.0, res);
    let grid = render::render_dynamical(fam, vp, max_iter, family::default_escape_radius(fam));
    let cells = interface_cells(&grid);
    if cells.is_empty() {
        return Err(DynError::NoJuliaPixels);
    }
    let coords: Vec<(f64, f64)> = cells
        .iter()
        .map(|&(i, j)| (vp.pixel_re(i), vp.pixel_im(j)))
        .collect();
    let mut radius: f64 = 0.0;
    let mut samples = 0usize;
    for gj in 0..DISK_GRID {
        for gi in 0..DISK_GRID {
            let x = -1.0 + 2.0 * gi as f64 / (DISK_GRID - 1) as f64;
            let y = -1.0 + 2.0 * gj as f64 / (DISK_GRID - 1) as f64;
            if x * x + y * y > 1.0 {
                continue;
            }
            samples += 1;
            let mut best = f64::INFINITY;
            for &(cx, cy) in &coords {
                let d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                if d2 < best {
                    best = d2;
                }
            }
            radius = radius.max(best.sqrt());
        }
    }
    Ok(DiskCoverage { radius, interface_pixels: coords.len(), disk_samples: samples })
}

/// For 0 < |lambda| < 1/27 the circle |z| = |lambda|^(1/3) maps strictly
/// inside itself under z^2 + lambda/z. Checks `samples` equispaced points.
pub fn circle_contraction_check(lambda: Complex64, samples: usize) -> Result<bool> {
    let norm = lambda.norm();
    if norm == 0.0 || norm >= 1.0 / 27.0 {
        return Err(DynError::PreconditionViolated("need 0 < |lambda| < 1/27"));
    }
    let fam = Family::HoloPerturbed { m: 1, lambda };
    let r = norm.powf(1.0 / 3.0);
    for k in 0..samples {
        let z = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / samples as f64);
        let fz = family::eval(fam, z)?;
        if fz.norm() >= r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outside the sound escape radius the modulus grows monotonically:
/// |F(z)| > |z| whenever |z| > 1 + |lambda|. Checked on seeded random points
/// with moduli in (1 + |lambda|, 2(1 + |lambda|)].
pub fn escape_monotonicity_check(lambda: Complex64, trials: usize, seed: u64) -> bool {
    let fam = Family::HoloPerturbed { m: 1, lambda };
    let base = 1.0 + lambda.norm();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let r = base * (1.0 + rng.gen_range(f64::EPSILON..=1.0));
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(r, theta);
        let fz = match family::eval(fam, z) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if fz.norm() <= z.norm() {
            return false;
        }
    }
    true
}
