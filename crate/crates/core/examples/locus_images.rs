//! Renders Green-value grids for the four families as 16-bit PGM images.

use std::path::Path;

use arithdyn::locus::{locus_grid, Family, Viewport};

fn main() -> arithdyn::Result<()> {
    let out = Path::new("arithdyn-out/locus");
    let jobs = [
        ("mandelbrot", Family::Quadratic, Viewport::new(-2.5, 1.5, -2.0, 2.0)?),
        ("cubic-a1", Family::CubicSlice { a_re: 1.0, a_im: 0.0 }, Viewport::new(-4.0, 4.0, -4.0, 4.0)?),
        ("per1-half", Family::Per1 { kappa_re: 0.5, kappa_im: 0.0 }, Viewport::new(-3.0, 3.0, -3.0, 3.0)?),
        ("rabbit", Family::Julia { c_re: -0.1226, c_im: 0.7449 }, Viewport::new(-1.6, 1.6, -1.6, 1.6)?),
    ];
    for (name, family, view) in jobs {
        let grid = locus_grid(family, view, 400, 400, 1e-6, 300)?;
        let path = out.join(format!("{name}.pgm"));
        grid.write_pgm(&path, 3.0)?;
        println!("{}: bounded area {:.4} -> {}", name, grid.bounded_area(), path.display());
    }
    Ok(())
}
