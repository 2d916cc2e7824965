//! Critical Green values in the cubic family and the Branner-Hubbard
//! estimate max(G(0), G(c)) = log max(|a|, |c|) + O(1).

use arithdyn::parameter::{branner_hubbard_sweep, cubic_green, CubicParam};
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    for (c, a) in [(0.0, 0.0), (1.0, 0.5), (10.0, 2.0), (0.0, 30.0)] {
        let p = CubicParam::new(C::new(c, 0.0), C::new(a, 0.0));
        let g = cubic_green(&p, 1e-10)?;
        println!(
            "c = {c:>4}, a = {a:>4}: G(0) = {:.6}  G(c) = {:.6}  log+ max = {:.6}",
            g.at_zero.value,
            g.at_c.value,
            c.abs().max(a.abs()).max(1.0).ln()
        );
    }
    let sup = branner_hubbard_sweep(2000, 1e3, 1e6, 42, 1e-9)?;
    println!("sup over 2000 random parameters with 1e3 <= max(|a|,|c|) <= 1e6: {sup:.4}");
    Ok(())
}
