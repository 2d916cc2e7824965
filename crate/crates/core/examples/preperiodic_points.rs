//! Certified preperiodicity and the exhaustive search below a height bound.

use arithdyn::height::{is_preperiodic, preperiodic_search, Verdict};
use arithdyn::map::{ProjPointQ, RationalMapQ};
use arithdyn::rational::BigRat;

fn main() -> arithdyn::Result<()> {
    let f = RationalMapQ::quadratic(&BigRat::new(-29, 16)?)?;
    let found = preperiodic_search(&f, 50f64.ln())?;
    let shown: Vec<String> = found.iter().map(ToString::to_string).collect();
    println!("z^2 - 29/16: {} preperiodic points of height <= log 50", found.len());
    println!("  {}", shown.join(", "));

    for x in ["-3/4", "1/4", "5/4", "2"] {
        let pt = ProjPointQ::from_rat(&x.parse()?);
        let cert = is_preperiodic(&f, &pt)?;
        match cert.verdict {
            Verdict::Preperiodic { tail, period } => println!("  {x}: tail {tail}, period {period}"),
            Verdict::Wandering { index, height, bound } => {
                println!("  {x}: wandering, orbit point {index} has height {height:.3} > {bound:.3}")
            }
        }
    }
    Ok(())
}
