//! Parameters with a periodic or preperiodic critical orbit, and how their
//! potential approaches the Green function of the Mandelbrot set.

use arithdyn::parameter::{percrit_equidistribution_test, percrit_roots};
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    for (n, k) in [(3, 0), (3, 1), (4, 2), (5, 0)] {
        let r = percrit_roots(n, k)?;
        println!("n = {n}, k = {k}: degree {}, {} distinct roots, residual {:.1e}", r.degree, r.roots.len(), r.residual);
        for root in r.roots.iter().filter(|x| x.value.im >= 0.0).take(4) {
            println!("    {:.10} (multiplicity {})", root.value, root.multiplicity);
        }
    }
    let probes = [C::new(1.0, 0.0), C::new(0.0, 1.5), C::new(-2.5, 0.0)];
    for n in [4, 8, 10] {
        let rep = percrit_equidistribution_test(n, 0, &probes)?;
        println!("n = {n:>2}: max |mean log|c - c0| - G_M(c0)| = {:.3e}", rep.max_deviation);
    }
    Ok(())
}
