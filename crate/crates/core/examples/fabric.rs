//! A 4-input fabric in both realizations: resources, threshold taps and an index-set configuration.

use std::collections::BTreeSet;
use std::sync::Arc;

use rpga::fabric::{build, Configuration, Realization};
use rpga::io::emit_fabric_doc;
use rpga::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in [Realization::Kerntopf, Realization::Picton] {
        let f = Arc::new(build(4, r)?);
        let res = f.unconfigured().resource_report();
        println!(
            "{r}: {} nodes, {} node constants, {} node garbage, {} netlist lines",
            res.nodes,
            res.node_constants,
            res.node_garbage,
            f.netlist().width()
        );
    }

    let f = Arc::new(build(4, Realization::Kerntopf)?);
    println!("\ninput T    S");
    for x in 0..16 {
        let w = Word::from_index(x, 4);
        let (t, s) = f.eval_taps(&w)?;
        println!("{w}  {t} {s}");
    }

    // odd parity is S{1,3}
    let cfg = Configuration::new(f, vec![("parity".into(), BTreeSet::from([1, 3]))])?;
    let e = cfg.eval(&"1011".parse()?)?;
    println!("\nparity(1011) = {}", e.output("parity").unwrap() as u8);
    for stage in &e.stages {
        println!("  {:<24} {}", stage.label, stage.lines);
    }
    print!("\n{}", emit_fabric_doc(&cfg));
    Ok(())
}
