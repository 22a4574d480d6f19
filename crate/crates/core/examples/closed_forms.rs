//! Closed-form specializations of the product bound.
//!
//! cargo run --example closed_forms

use isobound::closed_forms::{
    connected_regular_bound, grid_bound, grid_regime_split, hamming_bound, regular_power_bound,
    regular_product_bound, torus_bound,
};
use isobound::graph::{generate, Family};
use isobound::minorant::regular_summary;
use isobound::profile::profile_closed_form;

fn main() -> isobound::Result<()> {
    let (n, m) = (4, 5);
    let end = n as f64 * (m as f64).ln();
    println!("n={n}, m={m}: grid regime split at log|A| = {:.4}", grid_regime_split(n, m));
    println!("{:>8} {:>9} {:>9} {:>9}", "log|A|", "hamming", "grid", "torus");
    for j in 0..=8 {
        let x = end * j as f64 / 8.0;
        println!(
            "{x:>8.3} {:>9.4} {:>9.4} {:>9.4}",
            hamming_bound(n, m, x)?,
            grid_bound(n, m, x)?,
            torus_bound(n, m, x)?
        );
    }

    let sizes = [4usize, 6, 8];
    let degrees = [3usize, 5, 2];
    let total: f64 = sizes.iter().map(|&s| (s as f64).ln()).sum();
    let x = total / 2.0;
    println!("\nsizes {sizes:?}, degrees {degrees:?}, log|A| = {x:.4}");
    println!("  regular product bound:   {:.4}", regular_product_bound(&degrees, &sizes, x)?);
    println!("  connected regular bound: {:.4}", connected_regular_bound(&sizes, x, total)?);

    let g = generate(Family::Cycle, 5)?;
    let s = regular_summary(&g, &profile_closed_form(Family::Cycle, 5)?)?;
    println!("\nC_5^6 through y_G = {:.4}:", s.y_g);
    for t in 0..=6 {
        let x = t as f64 * 5f64.ln();
        println!("  |A| = 5^{t}: {:.4} per vertex", regular_power_bound(&s, 5, 6, x)?);
    }
    Ok(())
}
