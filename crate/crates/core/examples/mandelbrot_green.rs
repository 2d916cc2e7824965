//! The Green function of the Mandelbrot set and its distance estimate.

use arithdyn::parameter::mandelbrot_green_full;
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    for c in [C::new(0.26, 0.0), C::new(1.0, 0.0), C::new(-2.1, 0.0), C::new(0.0, 1.1), C::new(-0.75, 0.1)] {
        let r = mandelbrot_green_full(c, 1e-12, 500)?;
        let de = r.distance_estimate().map_or("-".to_string(), |d| format!("{d:.3e}"));
        let escape = r.escape_time.map_or("-".to_string(), |n| n.to_string());
        println!("c = {c:>12}: G_M = {:.12}  escape time {escape:>3}  distance ~ {de}", r.green.value);
    }
    Ok(())
}
