//! Builds the 1-bit full adder (rd32) gate by gate, then saves it as rcir and .real text.

use rpga::gate::builtin;
use rpga::io::{emit_rcir, emit_real, parse_rcir};
use rpga::sim::{check_bijective, trace};
use rpga::table::metrics;
use rpga::Circuit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut c = Circuit::new(4)?;
    c.set_name("rd32");
    for (line, name) in ["a", "b", "c", "d"].into_iter().enumerate() {
        c.set_line_name(line, name)?;
    }
    c.set_constant(3, false)?;
    c.set_garbage(0)?;
    c.set_garbage(1)?;
    c.set_output_name(2, "O1")?;
    c.set_output_name(3, "O2")?;
    c.append_gate(builtin("toffoli")?, &[0, 1, 3])?;
    c.append_gate(builtin("feynman")?, &[0, 1])?;
    c.append_gate(builtin("toffoli")?, &[1, 2, 3])?;
    c.append_gate(builtin("feynman")?, &[1, 2])?;
    c.validate()?;

    let text = emit_rcir(&c);
    print!("{text}");
    assert_eq!(parse_rcir(&text).expect("own output parses"), c);
    println!();
    print!("{}", emit_real(&c).expect("toffoli/feynman only"));

    println!("\nbijective: {}", check_bijective(&c)?.is_bijective());
    let m = metrics(&c);
    println!("N={} CI={} GO={} GL={} QC={}", m.gate_count, m.constant_inputs, m.garbage_outputs, m.gate_levels, m.quantum_cost);

    for snap in trace(&c, &"1010".parse()?)?.snapshots {
        match snap.slot {
            None => println!("in      {}", snap.lines),
            Some(k) => println!("slot {k}  {}", snap.lines),
        }
    }
    Ok(())
}
