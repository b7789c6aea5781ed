//! Native circuit text.
//!
//! ```text
//! circuit rd32        # optional
//! lines 4
//! name 0 a            # optional line names
//! constant 3 0
//! garbage 0
//! output 2 O1         # optional output names
//! slot 0 toffoli 0 1 3
//! ```

use std::fmt::Write;

use super::{parse_bit, parse_num, tokenize, FormatError};
use crate::circuit::{default_line_name, Circuit, InputRole, OutputRole};
use crate::gate;

pub fn parse_rcir(text: &str) -> Result<Circuit, FormatError> {
    let mut lines = tokenize(text).into_iter();
    let mut name = None;
    let mut header = lines.next();
    if let Some((ln, toks)) = &header {
        if toks[0].text == "circuit" {
            if toks.len() != 2 {
                return Err(FormatError::new(*ln, toks[0].column, "`circuit` takes one name"));
            }
            name = Some(toks[1].text.to_string());
            header = lines.next();
        }
    }
    let (ln, toks) = header.ok_or_else(|| FormatError::new(1, 1, "empty circuit").expecting("`lines <n>`"))?;
    if toks[0].text != "lines" || toks.len() != 2 {
        return Err(FormatError::new(ln, toks[0].column, "missing header").expecting("`lines <n>`"));
    }
    let width = parse_num(&toks[1], ln, "line count")?;
    let mut circuit = Circuit::new(width).map_err(|e| FormatError::new(ln, toks[1].column, e.to_string()))?;
    if let Some(name) = name {
        circuit.set_name(name);
    }

    for (ln, toks) in lines {
        let key = toks[0];
        let arg = |i: usize| {
            toks.get(i).copied().ok_or_else(|| {
                FormatError::new(ln, key.column, format!("`{}` is missing an argument", key.text))
            })
        };
        let line_arg = |i: usize| -> Result<usize, FormatError> {
            let tok = arg(i)?;
            let l = parse_num(&tok, ln, "line index")?;
            if l >= width {
                return Err(FormatError::new(ln, tok.column, format!("line {l} out of range")));
            }
            Ok(l)
        };
        let exact = |n: usize| -> Result<(), FormatError> {
            if toks.len() != n {
                return Err(FormatError::new(ln, key.column, format!("`{}` takes {} arguments", key.text, n - 1)));
            }
            Ok(())
        };
        let domain = |col: usize| move |e: crate::Error| FormatError::new(ln, col, e.to_string());
        match key.text {
            "name" => {
                exact(3)?;
                circuit.set_line_name(line_arg(1)?, arg(2)?.text).map_err(domain(key.column))?;
            }
            "constant" => {
                exact(3)?;
                let bit = parse_bit(&arg(2)?, ln)?;
                circuit.set_constant(line_arg(1)?, bit).map_err(domain(key.column))?;
            }
            "garbage" => {
                exact(2)?;
                circuit.set_garbage(line_arg(1)?).map_err(domain(key.column))?;
            }
            "output" => {
                exact(3)?;
                circuit.set_output_name(line_arg(1)?, arg(2)?.text).map_err(domain(key.column))?;
            }
            "slot" => {
                let slot = parse_num(&arg(1)?, ln, "slot")?;
                let gate_tok = arg(2)?;
                let gate = gate::lookup(gate_tok.text).map_err(domain(gate_tok.column))?;
                let pins = (3..toks.len()).map(line_arg).collect::<Result<Vec<_>, _>>()?;
                circuit.place_gate(slot, gate, &pins).map_err(domain(gate_tok.column))?;
            }
            other => {
                return Err(FormatError::new(ln, key.column, format!("unknown directive `{other}`"))
                    .expecting("name, constant, garbage, output or slot"));
            }
        }
    }
    Ok(circuit)
}

pub fn emit_rcir(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "circuit {}", circuit.name()).unwrap();
    writeln!(out, "lines {}", circuit.width()).unwrap();
    for l in circuit.lines() {
        if l.name != default_line_name(l.index) {
            writeln!(out, "name {} {}", l.index, l.name).unwrap();
        }
    }
    for l in circuit.lines() {
        if let InputRole::Constant(v) = l.input {
            writeln!(out, "constant {} {}", l.index, v as u8).unwrap();
        }
    }
    for l in circuit.lines() {
        match &l.output {
            OutputRole::Garbage => writeln!(out, "garbage {}", l.index).unwrap(),
            OutputRole::Primary(o) if *o != l.name => writeln!(out, "output {} {}", l.index, o).unwrap(),
            OutputRole::Primary(_) => {}
        }
    }
    for p in circuit.placements() {
        write!(out, "slot {} {}", p.slot, p.gate.name()).unwrap();
        for pin in &p.pins {
            write!(out, " {pin}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnot_circuit() {
        let c = parse_rcir("lines 2\nslot 0 feynman 0 1\n").unwrap();
        assert_eq!(c.width(), 2);
        assert_eq!(c.placements()[0].gate.name(), "feynman");
    }

    #[test]
    fn duplicate_pin_is_positioned() {
        let e = parse_rcir("lines 2\nslot 0 feynman 0 0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        assert!(e.message.contains("twice"), "{e}");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_rcir("").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_rcir("lines 2\n  slot 0 maj 0 1").unwrap_err();
        assert_eq!((e.line, e.column), (2, 10));
        let e = parse_rcir("lines 2\nconstant 1 2").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        let e = parse_rcir("lines 2\nslot 0 feynman 0 5").unwrap_err();
        assert_eq!((e.line, e.column), (2, 18));
        let e = parse_rcir("lines 2\nwire 0").unwrap_err();
        assert!(e.expected.is_some());
        let e = parse_rcir("lines 0").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_rcir("lines 3\nslot 0 toffoli 0 1 2\nslot 0 not 1").unwrap_err();
        assert!(e.message.contains("already used"), "{e}");
    }

    #[test]
    fn emit_skips_defaults() {
        let c = parse_rcir("lines 2\nslot 0 feynman 0 1").unwrap();
        assert_eq!(emit_rcir(&c), "circuit circuit\nlines 2\nslot 0 feynman 0 1\n");
    }
}
