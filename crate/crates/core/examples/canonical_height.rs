//! Canonical heights by global iteration and by the sum of local Green
//! functions, side by side.

use arithdyn::height::{canonical_height_adelic, canonical_height_global, naive_height};
use arithdyn::map::{ProjPointQ, RationalMapQ};
use arithdyn::rational::BigRat;

fn main() -> arithdyn::Result<()> {
    let maps = [
        ("z^2 - 1", RationalMapQ::quadratic(&BigRat::from_integer(-1))?),
        ("z^2 + 1/4", RationalMapQ::quadratic(&BigRat::new(1, 4)?)?),
        ("Lattes", RationalMapQ::lattes()),
    ];
    for (name, f) in &maps {
        println!("{name}");
        for x in ["0", "1", "2/3", "-7/5"] {
            let pt = ProjPointQ::from_rat(&x.parse::<BigRat>()?);
            let a = canonical_height_adelic(f, &pt, 1e-10)?;
            let g = canonical_height_global(f, &pt, 1e-4)?;
            println!(
                "  x = {x:>5}  h = {:.6}  adelic = {:.10}  global = {:.10} (depth {})",
                naive_height(&pt),
                a.value,
                g.value,
                g.depth
            );
        }
    }
    Ok(())
}
