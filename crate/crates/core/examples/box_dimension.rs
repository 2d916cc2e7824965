//! Box-counting dimension of boundaries: a circle, a segment, and the
//! boundary of the Mandelbrot set (dimension 2, approached slowly).

use arithdyn::locus::{boundary_box_dimension, locus_grid, Family, Viewport, DEFAULT_BOX_SCALES};

fn main() -> arithdyn::Result<()> {
    let cases = [
        ("circle (z^2)", Family::Julia { c_re: 0.0, c_im: 0.0 }, Viewport::new(-1.5, 1.5, -1.5, 1.5)?, 100),
        ("segment (z^2-2)", Family::Julia { c_re: -2.0, c_im: 0.0 }, Viewport::new(-2.2, 2.2, -2.2, 2.2)?, 100),
        ("Mandelbrot set", Family::Quadratic, Viewport::new(-2.5, 1.5, -2.0, 2.0)?, 500),
    ];
    for (name, family, view, depth) in cases {
        let grid = locus_grid(family, view, 1024, 1024, 1e-6, depth)?;
        let d = boundary_box_dimension(&grid, &DEFAULT_BOX_SCALES)?;
        println!("{name:>16}: {:.4} from {} boundary pixels", d.estimate, d.boundary_pixels);
    }
    Ok(())
}
