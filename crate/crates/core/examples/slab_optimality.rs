//! When y_G < d, products of an optimal set beat the slabs {u}^s x V^t in a
//! large enough power. K_m has y_G = d and gets no certificate.
//!
//! cargo run --example slab_optimality

use isobound::certify::q72_certificate;
use isobound::graph::{generate, petersen, Family};
use isobound::minorant::regular_summary;
use isobound::profile::profile_bruteforce;
use isobound::Error;

fn main() -> isobound::Result<()> {
    for (name, g) in [
        ("cycle:5", generate(Family::Cycle, 5)?),
        ("cycle:8", generate(Family::Cycle, 8)?),
        ("petersen", petersen()),
        ("complete:5", generate(Family::Complete, 5)?),
    ] {
        let p = profile_bruteforce(&g)?;
        let s = regular_summary(&g, &p)?;
        match q72_certificate(&g, &s, &p, 0.1) {
            Ok(c) => {
                println!(
                    "{name:<11} y_G={:.4} d={}  eps={:.3e} s={} t={}  {:.4} < {:.4}  recheck={:?}",
                    c.y_g,
                    c.degree,
                    c.epsilon,
                    c.s,
                    c.t,
                    c.lhs,
                    c.rhs,
                    c.recheck()
                );
            }
            Err(Error::SlabOptimal { y_g, degree }) => {
                println!("{name:<11} y_G={y_g:.4} d={degree}  slabs optimal, no certificate");
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
