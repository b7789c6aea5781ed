//! Symmetry analysis: rd32 is totally symmetric, the table passed on the command line may not be.
//!
//!     cargo run --example symmetry [file.rtab]

use rpga::io::parse_rtab;
use rpga::symmetry::{analyze, indices_to_function};
use std::collections::BTreeSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let paths = match std::env::args().nth(1) {
        Some(p) => vec![p],
        None => vec![format!("{data}/fig4_9.rtab"), format!("{data}/table1_2b.rtab")],
    };
    for path in paths {
        let t = parse_rtab(&std::fs::read_to_string(&path)?)?;
        println!("{path}");
        print!("{}", analyze(&t).render_text());
    }

    // S{0,2,4} on four inputs, built from its index set and analyzed back
    let even = indices_to_function(4, &BTreeSet::from([0, 2, 4]))?;
    print!("{}", analyze(&even).render_text());
    Ok(())
}
