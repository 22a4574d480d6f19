//! Exact isoperimetric profiles of a few small graphs.
//!
//! cargo run --example profiles

use isobound::graph::{generate, parse_graph, petersen, Family};
use isobound::profile::{profile_bruteforce, profile_closed_form};

fn main() -> isobound::Result<()> {
    for (family, m) in [(Family::Complete, 5), (Family::Path, 6), (Family::Cycle, 7)] {
        let g = generate(family, m)?;
        let searched = profile_bruteforce(&g)?;
        let closed = profile_closed_form(family, m)?;
        print!("{:<12}", format!("{family}:{m}"));
        for e in searched.entries() {
            print!(" {:>5}", e.i_k().to_string());
        }
        println!("   closed form agrees: {}", searched == closed);
    }

    let p = profile_bruteforce(&petersen())?;
    println!("\npetersen");
    for e in p.entries() {
        println!("  k={:<2} e={:<2} i_k={:<5} witness={:?}", e.k, e.min_boundary, e.i_k().to_string(), e.witness);
    }

    // the 3-cube, read from the text format
    let cube = parse_graph(
        "# Q_3\n8\n0 1\n0 2\n0 4\n1 3\n1 5\n2 3\n2 6\n3 7\n4 5\n4 6\n5 7\n6 7\n",
    )?;
    let p = profile_bruteforce(&cube)?;
    println!("\nQ_3 as csv:");
    p.write_csv(std::io::stdout())?;
    Ok(())
}
