//! Pixel grids over parameter and dynamical planes, and box-counting
//! dimension of their boundaries.

use std::path::Path;

use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::green::{poly_green_core, PolyGreen};
use crate::io;
use crate::parameter::{self, cubic_green_depth, per1_plus, CubicParam, Per1Param};

/// Fewest boundary pixels a box count is attempted on.
pub const MIN_BOUNDARY_PIXELS: usize = 64;
/// Smallest grid side that resolves a boundary well enough to box-count.
pub const MIN_BOXDIM_RESOLUTION: usize = 1024;
/// Box sizes in pixels. Single pixels are skipped: the flagged band is
/// about two pixels thick, which inflates the finest count.
pub const DEFAULT_BOX_SCALES: [usize; 6] = [2, 4, 8, 16, 32, 64];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// Parameter plane of `z² + c`, value `G_M(c)`.
    Quadratic,
    /// Slice of the cubic family at fixed `a`, value `G(c, a)`.
    CubicSlice { a_re: f64, a_im: f64 },
    /// `Per₁(κ)` in the `s` coordinate, value `G⁺(s)`.
    Per1 { kappa_re: f64, kappa_im: f64 },
    /// Dynamical plane of `z² + c`, value `G_{f_c}(z)`.
    Julia { c_re: f64, c_im: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Viewport {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite())
            && re_max > re_min
            && im_max > im_min;
        if !ok {
            return Err(Error::domain("viewport must be finite and nondegenerate"));
        }
        Ok(Viewport {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PixelStatus {
    /// The orbit escaped and the Green value met the tolerance.
    Escaped,
    /// The orbit stayed bounded through the depth cap; the value is 0.
    Bounded,
    /// Escape too late to certify the value, or too large to follow.
    Undecided,
}

impl PixelStatus {
    fn as_str(self) -> &'static str {
        match self {
            PixelStatus::Escaped => "escaped",
            PixelStatus::Bounded => "bounded",
            PixelStatus::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pixel {
    pub status: PixelStatus,
    /// Green value; for undecided pixels the upper end of the bracket.
    pub green: f64,
    /// Distance estimate `G/|∇G|` when available.
    pub distance: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct LocusGrid {
    pub family: Family,
    pub viewport: Viewport,
    pub width: usize,
    pub height: usize,
    pub depth: usize,
    pub tol: f64,
    /// Row-major, top row (largest imaginary part) first.
    pub pixels: Vec<Pixel>,
}

fn from_poly_green(r: Result<PolyGreen>) -> Pixel {
    match r {
        Ok(g) if g.green.value > 0.0 => Pixel {
            status: PixelStatus::Escaped,
            green: g.green.value,
            distance: g.distance_estimate(),
        },
        Ok(_) => Pixel {
            status: PixelStatus::Bounded,
            green: 0.0,
            distance: None,
        },
        Err(e) => undecided(&e),
    }
}

fn undecided(e: &Error) -> Pixel {
    let green = match e {
        Error::Undecided { hi, .. } => *hi,
        Error::Numeric { best, .. } => *best,
        _ => f64::NAN,
    };
    Pixel {
        status: PixelStatus::Undecided,
        green,
        distance: None,
    }
}

fn from_value(r: Result<f64>) -> Pixel {
    match r {
        Ok(v) if v > 0.0 => Pixel {
            status: PixelStatus::Escaped,
            green: v,
            distance: None,
        },
        Ok(_) => Pixel {
            status: PixelStatus::Bounded,
            green: 0.0,
            distance: None,
        },
        Err(e) => undecided(&e),
    }
}

fn eval_pixel(family: &Family, w: C, tol: f64, depth: usize) -> Pixel {
    match *family {
        Family::Quadratic => from_poly_green(parameter::mandelbrot_green_full(w, tol, depth)),
        Family::Julia { c_re, c_im } => {
            let f = parameter::quadratic(C::new(c_re, c_im));
            from_poly_green(poly_green_core(&f, w, false, tol, depth))
        }
        Family::CubicSlice { a_re, a_im } => {
            let p = CubicParam::new(w, C::new(a_re, a_im));
            from_value(cubic_green_depth(&p, tol, depth).map(|g| g.value))
        }
        Family::Per1 { kappa_re, kappa_im } => {
            let r = Per1Param::new(w, C::new(kappa_re, kappa_im))
                .and_then(|p| per1_plus(&p, tol, depth))
                .map(|g| g.value);
            from_value(r)
        }
    }
}

/// Evaluates `family` at every pixel center of `viewport`. Deterministic
/// regardless of thread count.
pub fn locus_grid(
    family: Family,
    viewport: Viewport,
    width: usize,
    height: usize,
    tol: f64,
    depth: usize,
) -> Result<LocusGrid> {
    if width < 2 || height < 2 {
        return Err(Error::domain("locus grid needs at least 2x2 pixels"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let grid = LocusGrid {
        family,
        viewport,
        width,
        height,
        depth,
        tol,
        pixels: Vec::new(),
    };
    let pixels = (0..width * height)
        .into_par_iter()
        .map(|idx| eval_pixel(&family, grid.center(idx % width, idx / width), tol, depth))
        .collect();
    Ok(LocusGrid { pixels, ..grid })
}

impl LocusGrid {
    pub fn pixel_width(&self) -> f64 {
        (self.viewport.re_max - self.viewport.re_min) / self.width as f64
    }

    pub fn pixel_height(&self) -> f64 {
        (self.viewport.im_max - self.viewport.im_min) / self.height as f64
    }

    /// Center of pixel `(col, row)`.
    pub fn center(&self, col: usize, row: usize) -> C {
        C::new(
            self.viewport.re_min + (col as f64 + 0.5) * self.pixel_width(),
            self.viewport.im_max - (row as f64 + 0.5) * self.pixel_height(),
        )
    }

    pub fn pixel(&self, col: usize, row: usize) -> &Pixel {
        &self.pixels[row * self.width + col]
    }

    pub fn count(&self, status: PixelStatus) -> usize {
        self.pixels.iter().filter(|p| p.status == status).count()
    }

    /// Area of the pixels decided to be bounded. Undecided pixels are
    /// never counted.
    pub fn bounded_area(&self) -> f64 {
        self.count(PixelStatus::Bounded) as f64 * self.pixel_width() * self.pixel_height()
    }

    /// Pixels within about one pixel of the boundary of the bounded set:
    /// undecided pixels, bounded pixels next to an escaped one, and escaped
    /// pixels whose distance estimate is below the pixel size.
    pub fn boundary_mask(&self) -> Vec<bool> {
        let size = self.pixel_width().max(self.pixel_height());
        let (w, h) = (self.width, self.height);
        (0..w * h)
            .map(|idx| {
                let p = &self.pixels[idx];
                match p.status {
                    PixelStatus::Undecided => true,
                    PixelStatus::Escaped => p.distance.is_some_and(|d| d < size),
                    PixelStatus::Bounded => {
                        let (col, row) = (idx % w, idx / w);
                        let mut near = Vec::with_capacity(4);
                        if col > 0 {
                            near.push(idx - 1);
                        }
                        if col + 1 < w {
                            near.push(idx + 1);
                        }
                        if row > 0 {
                            near.push(idx - w);
                        }
                        if row + 1 < h {
                            near.push(idx + w);
                        }
                        near.iter().any(|&j| self.pixels[j].status == PixelStatus::Escaped)
                    }
                }
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let rows = self.pixels.iter().enumerate().map(|(idx, p)| {
            let z = self.center(idx % self.width, idx / self.width);
            vec![
                format!("{}", z.re),
                format!("{}", z.im),
                p.status.as_str().to_string(),
                format!("{}", p.green),
                p.distance.map_or(String::new(), |d| format!("{d}")),
            ]
        });
        io::csv(&["re", "im", "status", "green", "distance"], rows)
    }

    /// 16-bit PGM of `min(G, green_max) / green_max`; undecided pixels are
    /// drawn at full scale.
    pub fn to_pgm(&self, green_max: f64) -> Vec<u8> {
        let samples: Vec<u16> = self
            .pixels
            .iter()
            .map(|p| match p.status {
                PixelStatus::Undecided => u16::MAX,
                _ => ((p.green / green_max).clamp(0.0, 1.0) * 65535.0).round() as u16,
            })
            .collect();
        io::pgm16(self.width, self.height, &samples)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        io::write_atomic(path, self.to_csv().as_bytes())
    }

    pub fn write_pgm(&self, path: &Path, green_max: f64) -> Result<()> {
        io::write_atomic(path, &self.to_pgm(green_max))
    }

    pub fn summary(&self) -> Value {
        json!({
            "family": self.family,
            "viewport": self.viewport,
            "width": self.width,
            "height": self.height,
            "depth": self.depth,
            "escaped": self.count(PixelStatus::Escaped),
            "bounded": self.count(PixelStatus::Bounded),
            "undecided": self.count(PixelStatus::Undecided),
            "bounded_area": self.bounded_area(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxDimension {
    pub estimate: f64,
    /// `(scale in pixels, occupied boxes)` for each scale.
    pub counts: Vec<(usize, usize)>,
    pub boundary_pixels: usize,
}

impl BoxDimension {
    pub fn to_json(&self) -> Value {
        json!({
            "estimate": self.estimate,
            "boundary_pixels": self.boundary_pixels,
            "counts": self.counts,
        })
    }
}

/// Least-squares slope of `log N(s)` against `log(1/s)`, where `N(s)` counts
/// `s × s` pixel boxes meeting the boundary mask.
pub fn boundary_box_dimension(grid: &LocusGrid, scales: &[usize]) -> Result<BoxDimension> {
    let mut scales: Vec<usize> = scales.to_vec();
    scales.sort_unstable();
    scales.dedup();
    if scales.len() < 2 || scales[0] == 0 {
        return Err(Error::domain("box counting needs at least two positive scales"));
    }
    if grid.width.min(grid.height) < MIN_BOXDIM_RESOLUTION {
        return Err(Error::domain(format!(
            "box counting needs at least {MIN_BOXDIM_RESOLUTION} pixels per side"
        )));
    }
    let mask = grid.boundary_mask();
    let boundary_pixels = mask.iter().filter(|&&b| b).count();
    if boundary_pixels < MIN_BOUNDARY_PIXELS {
        return Err(Error::domain(format!(
            "only {boundary_pixels} boundary pixels, need {MIN_BOUNDARY_PIXELS}"
        )));
    }
    let counts: Vec<(usize, usize)> = scales
        .iter()
        .map(|&s| {
            let bw = grid.width.div_ceil(s);
            let mut occupied = vec![false; bw * grid.height.div_ceil(s)];
            for (idx, _) in mask.iter().enumerate().filter(|(_, &b)| b) {
                let (col, row) = (idx % grid.width, idx / grid.width);
                occupied[(row / s) * bw + col / s] = true;
            }
            (s, occupied.iter().filter(|&&b| b).count())
        })
        .collect();
    let pts: Vec<(f64, f64)> = counts
        .iter()
        .map(|&(s, n)| (-(s as f64).ln(), (n as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(BoxDimension {
        estimate: sxy / sxx,
        counts,
        boundary_pixels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mandel_box() -> Viewport {
        Viewport::new(-2.5, 1.5, -2.0, 2.0).unwrap()
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(Viewport::new(0.0, 0.0, -1.0, 1.0).is_err());
        assert!(locus_grid(Family::Quadratic, mandel_box(), 1, 5, 1e-6, 100).is_err());
    }

    #[test]
    fn cardioid_zoom_is_interior() {
        let v = Viewport::new(-0.3, 0.1, -0.2, 0.2).unwrap();
        let g = locus_grid(Family::Quadratic, v, 16, 16, 1e-6, 500).unwrap();
        assert_eq!(g.count(PixelStatus::Bounded), 256);
    }

    #[test]
    fn small_mandelbrot_area() {
        let g = locus_grid(Family::Quadratic, mandel_box(), 128, 128, 1e-6, 300).unwrap();
        let a = g.bounded_area();
        assert!(a > 1.3 && a < 1.8, "{a}");
        // symmetric under conjugation
        for row in 0..64 {
            for col in 0..128 {
                assert_eq!(g.pixel(col, row).status, g.pixel(col, 127 - row).status);
            }
        }
    }

    #[test]
    fn exports() {
        let g = locus_grid(Family::Julia { c_re: 0.0, c_im: 0.0 }, mandel_box(), 4, 3, 1e-6, 50).unwrap();
        let pgm = g.to_pgm(4.0);
        assert!(pgm.starts_with(b"P5\n4 3\n65535\n"));
        assert_eq!(pgm.len(), 13 + 24);
        let csv = g.to_csv();
        assert_eq!(csv.lines().count(), 13);
        assert!(csv.starts_with("re,im,status,green,distance\n-2,1.3333333333333335,escaped,"));
    }

    #[test]
    fn circle_dimension_is_one() {
        let v = Viewport::new(-1.5, 1.5, -1.5, 1.5).unwrap();
        let g = locus_grid(Family::Julia { c_re: 0.0, c_im: 0.0 }, v, 1024, 1024, 1e-6, 100).unwrap();
        let d = boundary_box_dimension(&g, &DEFAULT_BOX_SCALES).unwrap();
        assert!((d.estimate - 1.0).abs() < 0.05, "{d:?}");
        assert!(boundary_box_dimension(&g, &[4]).is_err());
        let small = locus_grid(Family::Julia { c_re: 0.0, c_im: 0.0 }, v, 64, 64, 1e-6, 100).unwrap();
        assert!(boundary_box_dimension(&small, &DEFAULT_BOX_SCALES).is_err());
    }
}
