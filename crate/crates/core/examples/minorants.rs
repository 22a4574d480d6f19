//! Convex minorants in log scale, and the steepest chord of regular graphs.
//!
//! cargo run --example minorants

use isobound::graph::{generate, petersen, Family};
use isobound::minorant::{build_minorant, regular_summary};
use isobound::profile::{profile_bruteforce, profile_closed_form};

fn main() -> isobound::Result<()> {
    for m in [5, 7, 10] {
        let p = profile_closed_form(Family::Path, m)?;
        let psi = build_minorant(&p);
        let ks: Vec<usize> = psi.breakpoints().iter().map(|b| b.k).collect();
        println!("path:{m:<3} breakpoints at k = {ks:?}");
        for x in [0.0, 0.5, 1.0, psi.domain_end()] {
            let d = psi.one_sided_derivatives(x)?;
            println!("    psi({x:.3}) = {:.6}  derivatives {:?} / {:.6}", psi.evaluate(x)?, d.left, d.right);
        }
    }

    println!();
    for (name, g) in [
        ("cycle:5", generate(Family::Cycle, 5)?),
        ("cycle:12", generate(Family::Cycle, 12)?),
        ("complete:6", generate(Family::Complete, 6)?),
        ("petersen", petersen()),
    ] {
        let s = regular_summary(&g, &profile_bruteforce(&g)?)?;
        println!(
            "{name:<11} d={} k*={:<2} i_k*={:.4} y_G={:.6}{}",
            s.degree,
            s.k_star,
            s.i_k_star,
            s.y_g,
            if s.y_g < s.degree as f64 - 1e-12 { "  (y_G < d)" } else { "" }
        );
    }
    Ok(())
}
