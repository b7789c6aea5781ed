//! Walks the full flow: circuit, symmetry report, configured fabric, then steps a session
//! through all eight inputs the way the interactive view does.

use std::sync::Arc;

use rpga::fabric::{build, configure, Realization};
use rpga::io::parse_rcir;
use rpga::session::Session;
use rpga::sim::projected_table;
use rpga::symmetry::analyze;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/rd32.rcir");
    let circuit = parse_rcir(&std::fs::read_to_string(path)?)?;
    let report = analyze(&projected_table(&circuit)?);
    let fabric = Arc::new(build(3, Realization::Kerntopf)?);
    let config = Arc::new(configure(&fabric, &report)?);

    let mut s = Session::start(fabric);
    println!("{:?}", s.snapshot().mode);
    let r = s.load_config(config)?;
    println!("{:?}: {} active nodes, {}", r.mode, r.active_nodes(), r.outputs_line());

    let r = s.apply_input(&"100".parse()?)?;
    println!("apply 100: {}", r.outputs_line());
    for _ in 0..8 {
        let r = s.next()?;
        println!("next -> {} {}", r.input.as_ref().unwrap(), r.outputs_line());
    }
    println!("{}", serde_json::to_string_pretty(&s.snapshot())?);
    println!("reset: {:?}", s.reset().mode);
    Ok(())
}
