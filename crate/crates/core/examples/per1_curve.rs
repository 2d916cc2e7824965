//! Critical Green values along Per1(kappa): cubic polynomials with a fixed
//! point of multiplier kappa, parameterized so the critical points are s
//! and 1/s.

use arithdyn::parameter::{per1_asymptotic_constant, per1_greens, Per1Param};
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    let kappa = C::new(4.0, 0.0);
    let constant = per1_asymptotic_constant(kappa);
    println!("kappa = 4, limiting G+(s) - log|s| = {constant:.6}");
    for r in [10.0, 100.0, 1000.0] {
        let p = Per1Param::new(C::from_polar(r, 0.7), kappa)?;
        let (plus, minus) = per1_greens(&p, 1e-10)?;
        println!(
            "|s| = {r:>6}: G+ - log|s| = {:.6}  G- = {:.6}",
            plus.value - r.ln(),
            minus.value
        );
    }
    let p = Per1Param::new(C::new(2.0, 1.0), kappa)?;
    let (plus, _) = per1_greens(&p, 1e-12)?;
    let (_, minus) = per1_greens(&p.inverted(), 1e-12)?;
    println!("G+(s) = {:.15}, G-(1/s) = {:.15}", plus.value, minus.value);

    // an attracting fixed point always captures one of the critical points
    let p = Per1Param::new(C::new(2.5, 0.0), C::new(0.5, 0.0))?;
    let (plus, minus) = per1_greens(&p, 1e-10)?;
    println!("kappa = 0.5, s = 2.5: G+ = {:.6}, G- = {:.6}", plus.value, minus.value);
    Ok(())
}
