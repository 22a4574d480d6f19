//! Grid and torus bounds next to the Bollobás–Leader bound. The two agree for
//! small sets; for larger sets the ratio stays within 2/(e ln 2).
//!
//! cargo run --example bollobas_leader

use isobound::closed_forms::{bl_bound, grid_bound, grid_regime_split, torus_bound};

fn main() -> isobound::Result<()> {
    for (n, m) in [(3usize, 5usize), (5, 10)] {
        let split = grid_regime_split(n, m);
        let end = n as f64 * (m as f64).ln() - 2f64.ln();
        println!("[{m}]^{n}: split at {split:.4}, sampled up to |A| = m^n/2");
        println!("{:>8} {:>9} {:>9} {:>7}   {:>9} {:>9} {:>7}", "log|A|", "grid", "BL", "ratio", "torus", "BL", "ratio");
        for j in 0..=10 {
            let x = end * j as f64 / 10.0;
            let (g, bg) = (grid_bound(n, m, x)?, bl_bound(n, m, x, false)?);
            let (t, bt) = (torus_bound(n, m, x)?, bl_bound(n, m, x, true)?);
            println!("{x:>8.3} {g:>9.4} {bg:>9.4} {:>7.4}   {t:>9.4} {bt:>9.4} {:>7.4}", bg / g, bt / t);
        }
        println!();
    }
    println!("2/(e ln 2) = {:.6}", 2.0 / (std::f64::consts::E * 2f64.ln()));
    Ok(())
}
