//! Archimedean Green functions of a few lifts, checked against closed forms.

use arithdyn::green::{green_arch_vector, green_poly};
use arithdyn::map::{RationalMapC, RationalMapQ};
use arithdyn::poly::PolyC;
use arithdyn::rational::BigRat;
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    let square = RationalMapC::from_q(&RationalMapQ::power(2)?);
    let z = C::new(3.0, 4.0);
    let one = C::new(1.0, 0.0);
    // G_F at the vector (z, 1); for a finite point this is the affine escape rate
    let g = green_arch_vector(&square, z, one, 0.0, 1e-12)?;
    println!("z^2 at {z}: G = {:.15}  log max(|z|,1) = {:.15}", g.value, z.norm().ln());

    // z^2 - 2 at x > 2: G = log((x + sqrt(x^2 - 4)) / 2)
    let cheb = RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::from_integer(-2))?);
    for x in [2.5, 3.0, 10.0] {
        let g = green_arch_vector(&cheb, C::new(x, 0.0), one, 0.0, 1e-12)?;
        let exact = ((x + (x * x - 4.0f64).sqrt()) / 2.0).ln();
        println!("z^2-2 at {x}: G = {:.15}  closed form {:.15}", g.value, exact);
    }

    // the affine escape-rate Green function of a polynomial
    let f = PolyC::new(vec![C::new(-0.75, 0.1), C::new(0.0, 0.0), C::new(1.0, 0.0)]);
    let g = green_poly(&f, C::new(1.5, 0.0), 1e-12)?;
    println!("z^2 - 0.75 + 0.1i at 1.5: G = {:.12} (depth {})", g.value, g.depth);
    Ok(())
}
