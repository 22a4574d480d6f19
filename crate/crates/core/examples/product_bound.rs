//! Lower bound for the edge boundary of a set in a product, computed from the
//! factor minorants alone. The product itself is never built.
//!
//! cargo run --example product_bound

use isobound::bound::theorem_bound;
use isobound::graph::{petersen, Family};
use isobound::minorant::build_minorant;
use isobound::profile::{profile_bruteforce, profile_closed_form};

fn main() -> isobound::Result<()> {
    let minorants = vec![
        build_minorant(&profile_closed_form(Family::Path, 9)?),
        build_minorant(&profile_closed_form(Family::Cycle, 6)?),
        build_minorant(&profile_closed_form(Family::Complete, 4)?),
        build_minorant(&profile_bruteforce(&petersen())?),
    ];
    let size: u128 = 9 * 6 * 4 * 10;
    println!("P_9 x C_6 x K_4 x Petersen, {size} vertices (never materialized)");
    println!("{:>6} {:>10} {:>12}  allocation", "|A|", "per vertex", "e(A) >=");
    for a in [1u128, 2, 4, 10, 40, 100, 360, 1000, size / 2, size] {
        let r = theorem_bound(&minorants, (a as f64).ln())?.with_size(a);
        let alloc: Vec<String> = r.allocation.iter().map(|h| format!("{:.3}", h.exp())).collect();
        println!(
            "{a:>6} {:>10.4} {:>12.3}  {}",
            r.bound_per_vertex,
            r.bound_total.unwrap_or(f64::NAN),
            alloc.join(" x ")
        );
    }

    // a large power is no harder
    let k2 = build_minorant(&profile_closed_form(Family::Complete, 2)?);
    let cube: Vec<_> = std::iter::repeat_n(k2, 40).collect();
    let r = theorem_bound(&cube, 20.0 * 2f64.ln())?;
    println!("\nQ_40 at |A| = 2^20: {:.3} per vertex", r.bound_per_vertex);
    Ok(())
}
