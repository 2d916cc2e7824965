//! Samples of the equilibrium measure and the statistics that test them.

use arithdyn::equilibrium::{
    angle_star_discrepancy, arcsine_ks_distance, backward_cloud, compare_clouds, periodic_cloud, probe_ring, Branching,
};
use arithdyn::map::{ProjPointC, RationalMapC, RationalMapQ};
use arithdyn::rational::BigRat;
use num_complex::Complex64 as C;

fn main() -> arithdyn::Result<()> {
    let square = RationalMapC::from_q(&RationalMapQ::power(2)?);
    let z0 = ProjPointC::from_complex(C::new(0.5, 0.0));
    let cloud = backward_cloud(&square, &z0, 12, Branching::Full, 0)?;
    println!("z^2: {} atoms, angular star discrepancy {:.2e}", cloud.len(), angle_star_discrepancy(&cloud)?);

    let cheb = RationalMapC::from_q(&RationalMapQ::quadratic(&BigRat::from_integer(-2))?);
    let cloud = backward_cloud(&cheb, &z0, 12, Branching::Full, 0)?;
    println!("z^2-2: KS distance to the arcsine law {:.2e}", arcsine_ks_distance(&cloud)?);

    let rabbit = RationalMapC::polynomial(&[C::new(-0.1226, 0.7449), C::new(0.0, 0.0), C::new(1.0, 0.0)])?;
    let probes = probe_ring(3.0, 64);
    let a = backward_cloud(&rabbit, &ProjPointC::from_complex(C::new(5.0, 0.0)), 12, Branching::Full, 0)?;
    let b = backward_cloud(&rabbit, &z0, 16, Branching::Random { width: 4096 }, 7)?;
    let per = periodic_cloud(&rabbit, 10)?;
    println!("rabbit: potential gap backward/backward {:.2e}", compare_clouds(&a, &b, &probes)?);
    println!("rabbit: potential gap backward/periodic {:.2e}", compare_clouds(&a, &per, &probes)?);
    Ok(())
}
