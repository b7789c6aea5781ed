//! Reads a RevLib-style .real file and reports metrics and symmetry of its outputs.
//!
//!     cargo run --example benchmark_real [file.real]

use rpga::io::parse_real;
use rpga::sim::projected_table;
use rpga::symmetry::analyze;
use rpga::table::metrics;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/rd32.real").to_string());
    let c = parse_real(&std::fs::read_to_string(&path)?)?;
    let m = metrics(&c);
    println!("{path}: {} lines, {} gates, QC {}", c.width(), m.gate_count, m.quantum_cost);
    let report = analyze(&projected_table(&c)?);
    print!("{}", report.render_text());
    if report.is_fully_symmetric() {
        println!("fits a {}-input fabric", c.free_inputs());
    }
    Ok(())
}
