//! Escape-time rendering of dynamical and parameter planes, connected-
//! component labelling of the escaped region, and PGM/PPM/CSV encoding.
//!
//! Pixel centers: re = centerRe + ((i + 0.5)/pixelsX - 0.5) * width and
//! im = centerIm + (0.5 - (j + 0.5)/pixelsY - 0.5 sign flipped) * height, so
//! the top row carries the largest imaginary part. With an odd resolution
//! and a centered viewport the middle row/column sample the axes exactly,
//! which matters for maps whose bounded sets contain axis material.

use num_complex::Complex64;

use crate::error::{DynError, Result};
use crate::exec;
use crate::family::{self, Family};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub center_re: f64,
    pub center_im: f64,
    pub width: f64,
    pub pixels_x: usize,
    pub pixels_y: usize,
}

impl Viewport {
    /// Square viewport centered at (center_re, center_im).
    pub fn square(center_re: f64, center_im: f64, width: f64, pixels: usize) -> Viewport {
        Viewport { center_re, center_im, width, pixels_x: pixels, pixels_y: pixels }
    }

    pub fn height(&self) -> f64 {
        self.width * self.pixels_y as f64 / self.pixels_x as f64
    }

    pub fn pixel_re(&self, i: usize) -> f64 {
        self.center_re + ((i as f64 + 0.5) / self.pixels_x as f64 - 0.5) * self.width
    }

    pub fn pixel_im(&self, j: usize) -> f64 {
        self.center_im + (0.5 - (j as f64 + 0.5) / self.pixels_y as f64) * self.height()
    }

    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.pixel_re(i), self.pixel_im(j))
    }

    /// Pixel indices whose center is nearest to the point, clamped into range.
    pub fn nearest_pixel(&self, z: Complex64) -> (usize, usize) {
        let fx = (z.re - self.center_re) / self.width + 0.5;
        let i = ((fx * self.pixels_x as f64 - 0.5).round().max(0.0) as usize).min(self.pixels_x - 1);
        let fy = 0.5 - (z.im - self.center_im) / self.height();
        let j = ((fy * self.pixels_y as f64 - 0.5).round().max(0.0) as usize).min(self.pixels_y - 1);
        (i, j)
    }
}

/// Escape-time grid, row major, top row first. Cell value 0 means the orbit
/// stayed bounded through max_iter; k in [1, max_iter] is the first index
/// whose state has modulus > escape_radius (a pole counts as escape at the
/// next index; a seed already outside the radius is clamped to 1).
#[derive(Debug, Clone, PartialEq)]
pub struct EscapeGrid {
    pub viewport: Viewport,
    pub max_iter: u32,
    pub escape_radius: f64,
    pub cells: Vec<u32>,
}

impl EscapeGrid {
    pub fn cell(&self, i: usize, j: usize) -> u32 {
        self.cells[j * self.viewport.pixels_x + i]
    }
}

fn escape_index(fam: Family, z0: Complex64, max_iter: u32, radius: f64) -> u32 {
    if z0.norm() > radius {
        return 1;
    }
    let mut z = z0;
    for k in 1..=max_iter {
        match family::eval(fam, z) {
            Ok(next) => {
                z = next;
                if !family::is_finite(z) || z.norm() > radius {
                    return k;
                }
            }
            Err(_) => return k,
        }
    }
    0
}

fn assemble(viewport: Viewport, max_iter: u32, escape_radius: f64, rows: Vec<Vec<u32>>) -> EscapeGrid {
    let mut cells = Vec::with_capacity(viewport.pixels_x * viewport.pixels_y);
    for row in rows {
        cells.extend_from_slice(&row);
    }
    EscapeGrid { viewport, max_iter, escape_radius, cells }
}

fn dyn_row(fam: Family, vp: Viewport, max_iter: u32, radius: f64, j: usize) -> Vec<u32> {
    let im = vp.pixel_im(j);
    (0..vp.pixels_x)
        .map(|i| escape_index(fam, Complex64::new(vp.pixel_re(i), im), max_iter, radius))
        .collect()
}

/// Escape-time render of the dynamical plane. Work is split by rows and
/// reassembled in order, so the result is identical for any worker count.
pub fn render_dynamical(fam: Family, vp: Viewport, max_iter: u32, escape_radius: f64) -> EscapeGrid {
    let rows = exec::map_indexed(vp.pixels_y, |j| dyn_row(fam, vp, max_iter, escape_radius, j));
    assemble(vp, max_iter, escape_radius, rows)
}

/// Sequential reference for [`render_dynamical`].
pub fn render_dynamical_seq(fam: Family, vp: Viewport, max_iter: u32, escape_radius: f64) -> EscapeGrid {
    let rows = exec::map_indexed_seq(vp.pixels_y, |j| dyn_row(fam, vp, max_iter, escape_radius, j));
    assemble(vp, max_iter, escape_radius, rows)
}

/// Which parameter plane to render: the pixel is the parameter, the seed is
/// the family's critical point (the principal one for the holomorphic
/// family; the positive real point of the critical circle otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamPlane {
    Holo { m: u32 },
    Nonholo { m: u32 },
}

fn param_pixel(plane: ParamPlane, c: Complex64, max_iter: u32, radius_floor: f64) -> u32 {
    let (fam, z0) = match plane {
        ParamPlane::Holo { m } => {
            let fam = Family::HoloPerturbed { m, lambda: c };
            // lambda = 0 collapses the critical points onto the pole; the
            // orbit of 0 under z^2 is the fixed point 0 and never escapes,
            // but by convention the degenerate center pixel renders as an
            // immediate pole escape.
            if c == Complex64::new(0.0, 0.0) {
                return 1;
            }
            (fam, family::principal_critical_point(fam).expect("holomorphic critical point"))
        }
        ParamPlane::Nonholo { m } => {
            let fam = Family::NonholoPerturbed { m, beta: c };
            if c == Complex64::new(0.0, 0.0) {
                return 1;
            }
            (fam, family::principal_critical_point(fam).expect("critical circle point"))
        }
    };
    let radius = radius_floor.max(family::default_escape_radius(fam));
    escape_index(fam, z0, max_iter, radius)
}

fn param_row(plane: ParamPlane, vp: Viewport, max_iter: u32, radius_floor: f64, j: usize) -> Vec<u32> {
    let im = vp.pixel_im(j);
    (0..vp.pixels_x)
        .map(|i| param_pixel(plane, Complex64::new(vp.pixel_re(i), im), max_iter, radius_floor))
        .collect()
}

/// Escape-time render of the parameter plane: each pixel iterates the
/// critical orbit of its own parameter. The escape radius is raised per
/// pixel to at least the sound bound max(2, 1 + |c|) + 1.
pub fn render_parameter(plane: ParamPlane, vp: Viewport, max_iter: u32, escape_radius: f64) -> EscapeGrid {
    let rows = exec::map_indexed(vp.pixels_y, |j| param_row(plane, vp, max_iter, escape_radius, j));
    assemble(vp, max_iter, escape_radius, rows)
}

/// Sequential reference for [`render_parameter`].
pub fn render_parameter_seq(plane: ParamPlane, vp: Viewport, max_iter: u32, escape_radius: f64) -> EscapeGrid {
    let rows = exec::map_indexed_seq(vp.pixels_y, |j| param_row(plane, vp, max_iter, escape_radius, j));
    assemble(vp, max_iter, escape_radius, rows)
}

/// Connected components of the escaped cells, 4-connectivity.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentLabeling {
    /// Per cell: 0 for bounded cells, otherwise a component id >= 1 assigned
    /// in row-major discovery order.
    pub labels: Vec<u32>,
    pub component_count: u32,
    /// Smallest component id touching the image border, if any escaped cell does.
    pub border_label: Option<u32>,
    /// Component id of the escaped cell nearest the origin, when distinct
    /// from `border_label`.
    pub pole_label: Option<u32>,
}

/// Label escaped components by breadth-first flood fill. Single threaded:
/// labelling is ordering-sensitive and cheap next to rendering.
pub fn label_components(grid: &EscapeGrid) -> ComponentLabeling {
    let px = grid.viewport.pixels_x;
    let py = grid.viewport.pixels_y;
    let mut labels = vec![0u32; px * py];
    let mut next = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..px * py {
        if grid.cells[start] == 0 || labels[start] != 0 {
            continue;
        }
        next += 1;
        labels[start] = next;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            let (i, j) = (idx % px, idx / px);
            let mut visit = |n: usize| {
                if grid.cells[n] != 0 && labels[n] == 0 {
                    labels[n] = next;
                    queue.push_back(n);
                }
            };
            if i > 0 {
                visit(idx - 1);
            }
            if i + 1 < px {
                visit(idx + 1);
            }
            if j > 0 {
                visit(idx - px);
            }
            if j + 1 < py {
                visit(idx + px);
            }
        }
    }
    let mut border_label: Option<u32> = None;
    let mut consider = |idx: usize| {
        if labels[idx] != 0 && border_label.map_or(true, |b| labels[idx] < b) {
            border_label = Some(labels[idx]);
        }
    };
    for i in 0..px {
        consider(i);
        consider((py - 1) * px + i);
    }
    for j in 0..py {
        consider(j * px);
        consider(j * px + px - 1);
    }
    let i0 = (0..px).min_by(|&a, &b| {
        grid.viewport
            .pixel_re(a)
            .abs()
            .partial_cmp(&grid.viewport.pixel_re(b).abs())
            .unwrap()
    });
    let j0 = (0..py).min_by(|&a, &b| {
        grid.viewport
            .pixel_im(a)
            .abs()
            .partial_cmp(&grid.viewport.pixel_im(b).abs())
            .unwrap()
    });
    let pole_label = match (i0, j0) {
        (Some(i), Some(j)) => {
            let l = labels[j * px + i];
            if l != 0 && Some(l) != border_label {
                Some(l)
            } else {
                None
            }
        }
        _ => None,
    };
    ComponentLabeling { labels, component_count: next, border_label, pole_label }
}

/// Grey value for a cell: bounded cells are black; escaped cells ramp from
/// 55 upward with the escape index, clamped to 255.
pub fn cell_grey(cell: u32, max_iter: u32) -> u8 {
    if cell == 0 {
        0
    } else {
        let v = 55 + (200 * cell as u64) / max_iter.max(1) as u64;
        v.min(255) as u8
    }
}

/// Binary PGM (P5, maxval 255).
pub fn grid_to_pgm(grid: &EscapeGrid) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.viewport.pixels_x, grid.viewport.pixels_y)
        .into_bytes();
    out.extend(grid.cells.iter().map(|&c| cell_grey(c, grid.max_iter)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: u32,
    pub data: Vec<u8>,
}

fn pgm_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    while *pos < bytes.len() {
        let b = bytes[*pos];
        if b == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else if b.is_ascii_whitespace() {
            *pos += 1;
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(DynError::PreconditionViolated("truncated PGM header"));
    }
    Ok(&bytes[start..*pos])
}

fn pgm_number(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    std::str::from_utf8(pgm_token(bytes, pos)?)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or(DynError::PreconditionViolated("bad PGM header number"))
}

/// Strict reference reader for the P5 files this crate writes (whitespace-
/// separated header tokens, `#` comments allowed, maxval <= 255).
pub fn parse_pgm(bytes: &[u8]) -> Result<Pgm> {
    let mut pos = 0usize;
    if pgm_token(bytes, &mut pos)? != b"P5" {
        return Err(DynError::PreconditionViolated("not a P5 PGM"));
    }
    let width = pgm_number(bytes, &mut pos)?;
    let height = pgm_number(bytes, &mut pos)?;
    let maxval = pgm_number(bytes, &mut pos)?;
    if maxval == 0 || maxval > 255 {
        return Err(DynError::PreconditionViolated("unsupported PGM maxval"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    pos += 1;
    if bytes.len() < pos || bytes.len() - pos < width * height {
        return Err(DynError::PreconditionViolated("truncated PGM raster"));
    }
    Ok(Pgm {
        width,
        height,
        maxval: maxval as u32,
        data: bytes[pos..pos + width * height].to_vec(),
    })
}

/// 256-entry palette for PPM output. Index 0 (bounded) is black; escaped
/// values ramp r = v, g = v^2/255, b = 255 - v.
pub fn default_palette() -> [[u8; 3]; 256] {
    std::array::from_fn(|v| {
        if v == 0 {
            [0, 0, 0]
        } else {
            [v as u8, ((v * v) / 255) as u8, (255 - v) as u8]
        }
    })
}

/// Binary PPM (P6) through a palette indexed by the PGM grey value.
pub fn grid_to_ppm(grid: &EscapeGrid, palette: &[[u8; 3]; 256]) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", grid.viewport.pixels_x, grid.viewport.pixels_y)
        .into_bytes();
    for &c in &grid.cells {
        out.extend_from_slice(&palette[cell_grey(c, grid.max_iter) as usize]);
    }
    out
}

/// Raw escape indices as CSV, one image row per line.
pub fn grid_to_csv(grid: &EscapeGrid) -> String {
    let px = grid.viewport.pixels_x;
    let mut out = String::new();
    for row in grid.cells.chunks(px) {
        let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
