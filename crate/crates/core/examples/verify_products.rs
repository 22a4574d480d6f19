//! Brute-force check of the product bound on small products.
//!
//! cargo run --release --example verify_products

use isobound::certify::verify_theorem;
use isobound::graph::{generate, Family, ProductSpec};

fn main() -> isobound::Result<()> {
    let p3 = generate(Family::Path, 3)?;
    let c4 = generate(Family::Cycle, 4)?;
    let k2 = generate(Family::Complete, 2)?;
    let k3 = generate(Family::Complete, 3)?;
    let specs = [
        ProductSpec::power(&p3, 2)?,
        ProductSpec::new(vec![p3, c4.clone()])?,
        ProductSpec::power(&k2, 4)?,
        ProductSpec::power(&c4, 2)?,
        ProductSpec::power(&k3, 2)?,
    ];
    for spec in &specs {
        let report = verify_theorem(spec)?;
        let worst = report.rows.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min);
        println!(
            "{:<28} valid={} smallest gap={worst:.4} tight at {:?}",
            report.product,
            report.all_valid(),
            report.tight_sizes()
        );
    }
    Ok(())
}
