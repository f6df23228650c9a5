//! Parameter sweeps along the real axis: orbit diagrams, superstable
//! parameters, the period-doubling onset of the invariant interval, the
//! homoclinic parameter, and periodic-window scans.

use num_complex::Complex64;

use crate::error::{DynError, Result};
use crate::exec;
use crate::family::{self, Family};
use crate::orbit::ESCAPE_GUARD;

/// Which family a sweep runs over; the swept parameter is real
/// (lambda/beta/a respectively; the Henon sweep fixes b and sweeps a).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepTemplate {
    Holo { m: u32 },
    Nonholo { m: u32 },
    Logistic,
    Henon { b: f64 },
}

impl SweepTemplate {
    fn family_at(self, c: f64) -> Family {
        match self {
            SweepTemplate::Holo { m } => Family::HoloPerturbed { m, lambda: Complex64::new(c, 0.0) },
            SweepTemplate::Nonholo { m } => {
                Family::NonholoPerturbed { m, beta: Complex64::new(c, 0.0) }
            }
            SweepTemplate::Logistic => Family::Logistic { a: c },
            SweepTemplate::Henon { b } => Family::Henon { a: c, b },
        }
    }
}

/// Seed rule for each sweep sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum X0Rule {
    /// The real critical point: sign(mc/2)|mc/2|^(1/(m+2)) for the perturbed
    /// families, 0 for the logistic family, (0, 0) for Henon.
    CriticalPoint,
    Fixed(f64),
}

/// Real critical seed for a perturbed family at parameter c.
pub fn real_critical_start(m: u32, c: f64) -> f64 {
    let v = m as f64 * c / 2.0;
    if v == 0.0 {
        0.0
    } else {
        v.signum() * v.abs().powf(1.0 / (m as f64 + 2.0))
    }
}

fn seed(template: SweepTemplate, c: f64, rule: X0Rule) -> Complex64 {
    let x = match rule {
        X0Rule::Fixed(x) => x,
        X0Rule::CriticalPoint => match template {
            SweepTemplate::Holo { m } | SweepTemplate::Nonholo { m } => real_critical_start(m, c),
            SweepTemplate::Logistic | SweepTemplate::Henon { .. } => 0.0,
        },
    };
    Complex64::new(x, 0.0)
}

/// One row per parameter sample: the retained post-burn-in states' real
/// parts. Escaping samples keep an empty row.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramData {
    pub rows: Vec<(f64, Vec<f64>)>,
    pub burn_in: usize,
    pub kept: usize,
}

/// Uniform parameter grid over [lo, hi], endpoints included.
pub fn param_grid(range: (f64, f64), samples: usize) -> Vec<f64> {
    if samples == 1 {
        return vec![range.0];
    }
    (0..samples)
        .map(|i| range.0 + (range.1 - range.0) * i as f64 / (samples - 1) as f64)
        .collect()
}

pub fn orbit_diagram(
    template: SweepTemplate,
    range: (f64, f64),
    samples: usize,
    burn_in: usize,
    kept: usize,
    rule: X0Rule,
) -> DiagramData {
    let params = param_grid(range, samples);
    let rows = exec::map_indexed(params.len(), |i| {
        let c = params[i];
        (c, sample_row(template.family_at(c), seed(template, c, rule), burn_in, kept))
    });
    DiagramData { rows, burn_in, kept }
}

fn sample_row(fam: Family, z0: Complex64, burn_in: usize, kept: usize) -> Vec<f64> {
    let mut z = z0;
    for _ in 0..burn_in {
        match family::eval(fam, z) {
            Ok(next) if family::is_finite(next) && next.norm() <= ESCAPE_GUARD => z = next,
            _ => return Vec::new(),
        }
    }
    let mut out = Vec::with_capacity(kept);
    for _ in 0..kept {
        out.push(z.re);
        match family::eval(fam, z) {
            Ok(next) if family::is_finite(next) && next.norm() <= ESCAPE_GUARD => z = next,
            _ => return Vec::new(),
        }
    }
    out
}

/// g(c) = F_c^period(x_c) - x_c, the superstable defect at the critical seed.
/// Escaping parameters contribute a large signed carrier so bisection can
/// still bracket roots adjacent to escape regions.
fn superstable_defect(template: SweepTemplate, period: usize, c: f64) -> f64 {
    let fam = template.family_at(c);
    let xc = match template {
        SweepTemplate::Holo { m } | SweepTemplate::Nonholo { m } => real_critical_start(m, c),
        SweepTemplate::Logistic => 0.0,
        SweepTemplate::Henon { .. } => unreachable!("1-D sweep only"),
    };
    let mut x = xc;
    for _ in 0..period {
        match family::eval_real(fam, x) {
            Ok(next) if next.is_finite() && next.abs() <= ESCAPE_GUARD => x = next,
            Ok(next) => return if next > 0.0 { 1e12 } else { -1e12 },
            Err(_) => return 1e12,
        }
    }
    x - xc
}

/// Find a parameter in `bracket` whose critical point is periodic with the
/// given period, by a 512-segment scan for sign changes of the defect
/// followed by bisection. Returns the leftmost validated root; `NoSignChange`
/// if no segment brackets one.
pub fn find_superstable(
    template: SweepTemplate,
    period: usize,
    bracket: (f64, f64),
) -> Result<f64> {
    if matches!(template, SweepTemplate::Henon { .. }) {
        return Err(DynError::Unsupported("superstable search is 1-D only"));
    }
    if period == 0 {
        return Err(DynError::PreconditionViolated("period must be positive"));
    }
    let g = |c: f64| superstable_defect(template, period, c);
    const SEGMENTS: usize = 512;
    let (lo, hi) = bracket;
    let mut best: Option<f64> = None;
    let mut prev_c = lo;
    let mut prev_g = g(lo);
    for j in 1..=SEGMENTS {
        let c = lo + (hi - lo) * j as f64 / SEGMENTS as f64;
        let gc = g(c);
        if sgn(prev_g) * sgn(gc) < 0 || prev_g == 0.0 {
            let root = if prev_g == 0.0 { prev_c } else { bisect_fn(&g, prev_c, c) };
            if g(root).abs() < 1e-8 && best.map_or(true, |b| root < b) {
                best = Some(root);
            }
        }
        prev_c = c;
        prev_g = gc;
    }
    best.ok_or(DynError::NoSignChange)
}

fn sgn(x: f64) -> i32 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

fn bisect_fn<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if sgn(flo) * sgn(fm) <= 0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Largest positive fixed point of x^2 + c/x^m (the interval endpoint z2).
fn upper_fixed_point(m: u32, c: f64) -> f64 {
    let p = |x: f64| x.powi(m as i32 + 1) * (x - 1.0) + c;
    let xstar = (m as f64 + 1.0) / (m as f64 + 2.0);
    bisect_fn(&p, xstar, 1.0)
}

/// Smallest lambda > 0 at which the critical value's second image leaves
/// through the top of the invariant interval [F(x_c), z2]: the sign change of
/// F^2(x_c) - z2 over a geometric grid below the saddle-node parameter.
/// For m = 2 no such crossing exists and the search reports `NoSignChange`.
pub fn find_period_doubling(m: u32) -> Result<f64> {
    if m < 2 {
        return Err(DynError::PreconditionViolated("interval dynamics needs m >= 2"));
    }
    let lam0 = crate::equilibria::saddle_node_value(m);
    let g = |lam: f64| {
        let fam = Family::HoloPerturbed { m, lambda: Complex64::new(lam, 0.0) };
        let xc = real_critical_start(m, lam);
        let v1 = family::eval_real(fam, xc).unwrap_or(f64::INFINITY);
        let v2 = family::eval_real(fam, v1).unwrap_or(f64::INFINITY);
        v2 - upper_fixed_point(m, lam)
    };
    const POINTS: usize = 1024;
    let lo = lam0 * 1e-8;
    let hi = lam0 * (1.0 - 1e-9);
    let ratio = hi / lo;
    let mut prev = lo;
    let mut gprev = g(lo);
    for j in 1..POINTS {
        let lam = lo * ratio.powf(j as f64 / (POINTS - 1) as f64);
        let gl = g(lam);
        if sgn(gprev) * sgn(gl) < 0 {
            return Ok(bisect_fn(&g, prev, lam));
        }
        prev = lam;
        gprev = gl;
    }
    Err(DynError::NoSignChange)
}

/// Parameter c* where the critical orbit of x^2 + c/x lands on the repelling
/// fixed point after two steps (F^2(x_c) = x_fix): the root is exactly
/// -16/27. Bracketed on (-0.65, -0.50).
pub fn find_homoclinic() -> Result<f64> {
    let g = |c: f64| {
        let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(c, 0.0) };
        let xc = real_critical_start(1, c);
        let v1 = family::eval_real(fam, xc).unwrap_or(f64::INFINITY);
        let v2 = family::eval_real(fam, v1).unwrap_or(f64::INFINITY);
        v2 - repelling_fixed_point_m1(c)
    };
    let (lo, hi) = (-0.65, -0.50);
    if sgn(g(lo)) * sgn(g(hi)) >= 0 {
        return Err(DynError::NoSignChange);
    }
    Ok(bisect_fn(&g, lo, hi))
}

/// The unique real fixed point of x^2 + c/x for c < 0, in [1, 2].
fn repelling_fixed_point_m1(c: f64) -> f64 {
    let p = |x: f64| x * x * x - x * x + c;
    bisect_fn(&p, 1.0, 2.0)
}

/// Number of iterations the critical orbit of x^2 + c/x survives before
/// leaving the escape guard, up to `budget`. `None` means it stayed bounded.
pub fn critical_escape_time(c: f64, budget: usize) -> Option<usize> {
    let fam = Family::HoloPerturbed { m: 1, lambda: Complex64::new(c, 0.0) };
    let mut x = real_critical_start(1, c);
    for k in 1..=budget {
        match family::eval_real(fam, x) {
            Ok(next) if next.is_finite() && next.abs() <= ESCAPE_GUARD => x = next,
            _ => return Some(k),
        }
    }
    None
}

/// Two-sided probe of the homoclinic parameter: the orbit just below c*
/// escapes while the orbit just above stays bounded for the whole budget.
pub fn homoclinic_one_sided_check(cstar: f64, budget: usize) -> bool {
    let escapes_below = critical_escape_time(cstar - 1e-3, budget).is_some();
    let bounded_above = critical_escape_time(cstar + 1e-3, budget).is_none();
    escapes_below && bounded_above
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleClass {
    Escape,
    Period(usize),
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub period: usize,
    pub lo: f64,
    pub hi: f64,
}

/// Periodic windows and escape gaps over a parameter range. Adjacent samples
/// with the same class merge into maximal closed intervals; unresolved
/// samples separate runs and are not reported.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowReport {
    pub windows: Vec<Window>,
    pub escape_gaps: Vec<(f64, f64)>,
    pub samples: usize,
}

pub const WINDOW_BURN_IN: usize = 3000;
pub const WINDOW_TOL: f64 = 1e-7;

pub fn window_scan(
    template: SweepTemplate,
    range: (f64, f64),
    samples: usize,
    max_period: usize,
) -> WindowReport {
    let params = param_grid(range, samples);
    let classes = exec::map_indexed(params.len(), |i| {
        classify_sample(template, params[i], max_period)
    });
    let mut windows = Vec::new();
    let mut escape_gaps = Vec::new();
    let mut i = 0usize;
    while i < classes.len() {
        let class = classes[i];
        let mut j = i;
        while j + 1 < classes.len() && classes[j + 1] == class {
            j += 1;
        }
        match class {
            SampleClass::Escape => escape_gaps.push((params[i], params[j])),
            SampleClass::Period(p) => windows.push(Window { period: p, lo: params[i], hi: params[j] }),
            SampleClass::Unresolved => {}
        }
        i = j + 1;
    }
    WindowReport { windows, escape_gaps, samples }
}

fn classify_sample(template: SweepTemplate, c: f64, max_period: usize) -> SampleClass {
    let fam = template.family_at(c);
    let mut x = match template {
        SweepTemplate::Holo { m } | SweepTemplate::Nonholo { m } => real_critical_start(m, c),
        SweepTemplate::Logistic => 0.0,
        SweepTemplate::Henon { .. } => 0.0,
    };
    if matches!(template, SweepTemplate::Henon { .. }) {
        // Planar case: reuse the complex-state path.
        let mut z = Complex64::new(0.0, 0.0);
        for _ in 0..WINDOW_BURN_IN {
            match family::eval(fam, z) {
                Ok(next) if family::is_finite(next) && next.norm() <= ESCAPE_GUARD => z = next,
                _ => return SampleClass::Escape,
            }
        }
        let mut orb = vec![z];
        for _ in 0..max_period {
            match family::eval(fam, z) {
                Ok(next) if family::is_finite(next) && next.norm() <= ESCAPE_GUARD => z = next,
                _ => return SampleClass::Escape,
            }
            orb.push(z);
        }
        return match (1..=max_period).find(|&p| (orb[p] - orb[0]).norm() < WINDOW_TOL) {
            Some(p) => SampleClass::Period(p),
            None => SampleClass::Unresolved,
        };
    }
    for _ in 0..WINDOW_BURN_IN {
        match family::eval_real(fam, x) {
            Ok(next) if next.is_finite() && next.abs() <= ESCAPE_GUARD => x = next,
            _ => return SampleClass::Escape,
        }
    }
    let mut orb = vec![x];
    for _ in 0..max_period {
        match family::eval_real(fam, x) {
            Ok(next) if next.is_finite() && next.abs() <= ESCAPE_GUARD => x = next,
            _ => return SampleClass::Escape,
        }
        orb.push(x);
    }
    match (1..=max_period).find(|&p| (orb[p] - orb[0]).abs() < WINDOW_TOL) {
        Some(p) => SampleClass::Period(p),
        None => SampleClass::Unresolved,
    }
}
