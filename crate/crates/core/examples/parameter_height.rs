//! Adelic height of rational parameters in the quadratic family. It
//! vanishes exactly at the post-critically finite parameters 0, -1 and -2.

use arithdyn::parameter::mandelbrot_param_height;
use arithdyn::rational::BigRat;

fn main() -> arithdyn::Result<()> {
    for c in ["0", "-1", "-2", "1/2", "7/12", "-3/4", "100"] {
        let h = mandelbrot_param_height(&c.parse::<BigRat>()?, 1e-10)?;
        let finite: Vec<String> = h
            .finite
            .iter()
            .map(|g| format!("{}: {} log p", g.place, g.log_coeff.as_ref().unwrap()))
            .collect();
        println!(
            "c = {c:>5}: h_M = {:.10}  (inf: {:.10}; {})",
            h.height.value,
            h.archimedean.value,
            finite.join(", ")
        );
    }
    Ok(())
}
