//! Lyapunov exponents from Birkhoff averages along orbits started on the
//! Julia set. For polynomials the exponent is log d plus the Green values
//! at the critical points; it is never below (log d)/2.

use arithdyn::equilibrium::{backward_cloud, lyapunov, Branching};
use arithdyn::map::{ProjPointC, RationalMapC, RationalMapQ};
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    let z0 = ProjPointC::from_complex(C::new(0.3, 0.1));
    let maps = [
        ("z^2", RationalMapC::from_q(&RationalMapQ::power(2)?)),
        ("z^2 + i", RationalMapC::polynomial(&[C::new(0.0, 1.0), C::new(0.0, 0.0), C::new(1.0, 0.0)])?),
        ("z^2 + 0.5", RationalMapC::polynomial(&[C::new(0.5, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)])?),
        ("Lattes", RationalMapC::from_q(&RationalMapQ::lattes())),
    ];
    for (name, f) in &maps {
        let cloud = backward_cloud(f, &z0, 40, Branching::Random { width: 2048 }, 1)?;
        let est = lyapunov(f, &cloud, 5, 20, 1)?;
        println!(
            "{name:>9}: L = {:.5} +- {:.1e}   (log d)/2 = {:.5}",
            est.value,
            est.stderr,
            (f.degree() as f64).ln() / 2.0
        );
    }
    Ok(())
}
