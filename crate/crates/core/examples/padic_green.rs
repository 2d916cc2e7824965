//! Green functions at finite places. Values are exact multiples of log p.

use arithdyn::green::{green_padic, green_padic_affine};
use arithdyn::map::{ProjPointQ, RationalMapQ};
use arithdyn::rational::BigRat;

fn main() -> arithdyn::Result<()> {
    let c = BigRat::new(1, 12)?;
    let f = RationalMapQ::quadratic(&c)?;
    println!("f(z) = z^2 + {c}, bad primes {:?}", f.bad_primes()?);
    for p in [2, 3, 5] {
        for x in ["0", "1/2", "3/4", "inf"] {
            let pt: ProjPointQ = if x == "inf" {
                ProjPointQ::infinity()
            } else {
                ProjPointQ::from_rat(&x.parse()?)
            };
            let g = green_padic(&f, p, &pt, 64)?;
            println!("p = {p}, x = {x:>4}: G_F = {} log p", g.log_coeff.unwrap());
        }
        let g = green_padic_affine(&f, p, &BigRat::zero(), 64)?;
        println!("p = {p}: affine Green function at 0 = {} log p", g.log_coeff.unwrap());
    }
    Ok(())
}
