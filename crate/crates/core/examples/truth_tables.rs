//! Full reversible table of rd32 and its projection onto the two primary outputs.

use rpga::io::{emit_rtab, parse_rcir};
use rpga::sim::{full_table, projected_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/rd32.rcir");
    let c = parse_rcir(&std::fs::read_to_string(path)?)?;

    let full = full_table(&c)?;
    println!("reversible ({} rows)", full.rows().count());
    for (i, o) in full.rows() {
        println!("  {i} -> {o}");
    }

    println!("\nprojected");
    print!("{}", emit_rtab(&projected_table(&c)?));
    Ok(())
}
