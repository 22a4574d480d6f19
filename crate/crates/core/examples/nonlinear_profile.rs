//! The profile of a power need not be affine in log |A|: for C_5^2 three
//! sizes are pinned exactly and the middle one sits below the chord.
//!
//! cargo run --example nonlinear_profile

use isobound::certify::q71_witness;
use isobound::graph::{generate, Family};
use isobound::minorant::build_minorant;
use isobound::profile::profile_closed_form;

fn main() -> isobound::Result<()> {
    for (m, n) in [(5, 2), (5, 3), (7, 2)] {
        let g = generate(Family::Cycle, m)?;
        let p = profile_closed_form(Family::Cycle, m)?;
        let w = q71_witness(&g, &p, &build_minorant(&p), n)?;
        println!("{}^{}:", w.graph, w.n);
        for pt in &w.points {
            println!(
                "  |A| = {}^{n}  i = {:.6}  (bound {:.6}, construction {:.6}, counted {:?})",
                pt.k, pt.upper, pt.lower, pt.upper, pt.explicit_boundary
            );
        }
        println!("  chord minus middle value: {:.6}", w.residual);
    }
    Ok(())
}
