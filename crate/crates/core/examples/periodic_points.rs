//! Periodic points with their multipliers; a stand-in for the dynamics that
//! the Green functions average over.

use arithdyn::map::{RationalMapC, RationalMapQ};
use arithdyn::periodic::periodic_points;
use arithdyn::rational::BigRat;

fn main() -> arithdyn::Result<()> {
    let f = RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::new(-3, 4)?)?);
    for n in 1..=3 {
        let pts = periodic_points(&f, n, 1e-12)?;
        println!("z^2 - 3/4, period {n}: {} points", pts.len());
        for p in pts.iter().filter(|p| p.minimal_period == n) {
            let loc = p.location.to_complex().map_or("inf".to_string(), |z| format!("{z:.6}"));
            println!("    {loc:>28}  multiplier {:.6}  {:?}", p.multiplier, p.stability);
        }
    }
    Ok(())
}
