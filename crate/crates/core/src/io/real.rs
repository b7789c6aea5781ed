//! Subset of the RevLib `.real` benchmark format: `t<k>` multiple-control
//! Toffoli and `f<k>` multiple-control Fredkin gates, each placed in its own
//! slot in file order.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{tokenize, FormatError, Token};
use crate::circuit::{Circuit, InputRole, OutputRole};
use crate::gate;

fn gate_width(tok: &Token<'_>, ln: usize) -> Result<(char, usize), FormatError> {
    let unsupported = || {
        FormatError::new(ln, tok.column, format!("unsupported gate token `{}`", tok.text))
            .expecting("t<k> or f<k>")
    };
    let mut chars = tok.text.chars();
    let kind = chars.next().filter(|c| *c == 't' || *c == 'f').ok_or_else(unsupported)?;
    let k: usize = chars.as_str().parse().map_err(|_| unsupported())?;
    Ok((kind, k))
}

pub fn parse_real(text: &str) -> Result<Circuit, FormatError> {
    let mut numvars: Option<(usize, usize)> = None;
    let mut variables: Option<(usize, Vec<String>)> = None;
    let mut outputs: Option<(usize, Vec<String>)> = None;
    let mut constants: Option<(usize, usize, String)> = None;
    let mut garbage: Option<(usize, usize, String)> = None;
    let mut circuit: Option<Circuit> = None;
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut ended = false;

    for (ln, toks) in tokenize(text) {
        let key = toks[0];
        if ended {
            return Err(FormatError::new(ln, key.column, "content after `.end`"));
        }
        let rest = || toks[1..].iter().map(|t| t.text.to_string()).collect::<Vec<_>>();
        let single = |what: &str| -> Result<Token<'_>, FormatError> {
            match toks.len() {
                2 => Ok(toks[1]),
                _ => Err(FormatError::new(ln, key.column, format!("`{}` takes one {what}", key.text))),
            }
        };
        if circuit.is_none() {
            match key.text {
                ".version" | ".model" => {}
                ".numvars" => {
                    let tok = single("count")?;
                    let n = super::parse_num(&tok, ln, "variable count")?;
                    numvars = Some((ln, n));
                }
                ".variables" => variables = Some((ln, rest())),
                ".inputs" => {}
                ".outputs" => outputs = Some((ln, rest())),
                ".constants" => constants = Some((ln, single("string")?.column, single("string")?.text.to_string())),
                ".garbage" => garbage = Some((ln, single("string")?.column, single("string")?.text.to_string())),
                ".begin" => {
                    circuit = Some(start_circuit(ln, numvars, &variables, &outputs, &constants, &garbage)?);
                    if let Some((_, vars)) = &variables {
                        index = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
                    }
                }
                other => {
                    return Err(FormatError::new(ln, key.column, format!("unsupported directive `{other}`")));
                }
            }
            continue;
        }
        let c = circuit.as_mut().expect("inside .begin/.end");
        if key.text == ".end" {
            ended = true;
            continue;
        }
        let (kind, k) = gate_width(&key, ln)?;
        if toks.len() - 1 != k {
            return Err(FormatError::new(ln, key.column, format!("`{}` needs {k} lines, got {}", key.text, toks.len() - 1)));
        }
        let pins = toks[1..]
            .iter()
            .map(|t| {
                index.get(t.text).copied().ok_or_else(|| {
                    FormatError::new(ln, t.column, format!("unknown variable `{}`", t.text))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let domain = |e: crate::Error| FormatError::new(ln, key.column, e.to_string());
        let g = match kind {
            't' if k >= 1 => gate::mct_positive(k - 1),
            'f' if k >= 2 => gate::mcf(k - 2),
            _ => return Err(FormatError::new(ln, key.column, format!("unsupported gate token `{}`", key.text))),
        }
        .map_err(domain)?;
        c.append_gate(g, &pins).map_err(domain)?;
    }
    match (circuit, ended) {
        (Some(c), true) => Ok(c),
        (Some(_), false) => Err(FormatError::new(text.lines().count().max(1), 1, "missing `.end`")),
        (None, _) => Err(FormatError::new(text.lines().count().max(1), 1, "missing `.begin`")),
    }
}

fn start_circuit(
    ln: usize,
    numvars: Option<(usize, usize)>,
    variables: &Option<(usize, Vec<String>)>,
    outputs: &Option<(usize, Vec<String>)>,
    constants: &Option<(usize, usize, String)>,
    garbage: &Option<(usize, usize, String)>,
) -> Result<Circuit, FormatError> {
    let (vln, vars) = variables
        .clone()
        .ok_or_else(|| FormatError::new(ln, 1, "`.begin` before `.variables`"))?;
    let n = vars.len();
    if let Some((nln, count)) = numvars {
        if count != n {
            return Err(FormatError::new(nln, 1, format!(".numvars {count} but {n} variables")));
        }
    }
    let mut c = Circuit::new(n).map_err(|e| FormatError::new(vln, 1, e.to_string()))?;
    for (i, v) in vars.iter().enumerate() {
        c.set_line_name(i, v.as_str()).expect("line in range");
    }
    if let Some((oln, outs)) = outputs {
        if outs.len() != n {
            return Err(FormatError::new(*oln, 1, format!("{} outputs for {n} variables", outs.len())));
        }
        for (i, o) in outs.iter().enumerate() {
            c.set_output_name(i, o.as_str()).expect("line in range");
        }
    }
    if let Some((cln, col, s)) = constants {
        check_len(*cln, *col, s, n)?;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' | '1' => c.set_constant(i, ch == '1').expect("line in range"),
                '-' => {}
                other => return Err(FormatError::new(*cln, col + i, format!("invalid constant `{other}`")).expecting("0, 1 or -")),
            }
        }
    }
    if let Some((gln, col, s)) = garbage {
        check_len(*gln, *col, s, n)?;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '1' => c.set_garbage(i).expect("line in range"),
                '-' => {}
                other => return Err(FormatError::new(*gln, col + i, format!("invalid garbage flag `{other}`")).expecting("1 or -")),
            }
        }
    }
    Ok(c)
}

fn check_len(ln: usize, col: usize, s: &str, n: usize) -> Result<(), FormatError> {
    if s.chars().count() != n {
        return Err(FormatError::new(ln, col, format!("expected {n} characters, got {}", s.chars().count())));
    }
    Ok(())
}

/// Writes the circuit in `.real` syntax. Only positive-control Toffoli and
/// Fredkin families are expressible; slots collapse to file order.
pub fn emit_real(circuit: &Circuit) -> crate::Result<String> {
    let mut out = String::new();
    let names: Vec<&str> = circuit.lines().iter().map(|l| l.name.as_str()).collect();
    writeln!(out, ".version 1.0").unwrap();
    writeln!(out, ".numvars {}", circuit.width()).unwrap();
    writeln!(out, ".variables {}", names.join(" ")).unwrap();
    let inputs: Vec<String> = circuit
        .lines()
        .iter()
        .map(|l| match l.input {
            InputRole::Constant(v) => (v as u8).to_string(),
            InputRole::Primary => l.name.clone(),
        })
        .collect();
    writeln!(out, ".inputs {}", inputs.join(" ")).unwrap();
    let outputs: Vec<String> = circuit
        .lines()
        .iter()
        .map(|l| match &l.output {
            OutputRole::Primary(o) => o.clone(),
            OutputRole::Garbage => l.name.clone(),
        })
        .collect();
    writeln!(out, ".outputs {}", outputs.join(" ")).unwrap();
    let constants: String = circuit
        .lines()
        .iter()
        .map(|l| match l.input {
            InputRole::Constant(true) => '1',
            InputRole::Constant(false) => '0',
            InputRole::Primary => '-',
        })
        .collect();
    writeln!(out, ".constants {constants}").unwrap();
    let garbage: String = circuit
        .lines()
        .iter()
        .map(|l| if l.output == OutputRole::Garbage { '1' } else { '-' })
        .collect();
    writeln!(out, ".garbage {garbage}").unwrap();
    writeln!(out, ".begin").unwrap();
    let mut ordered: Vec<_> = circuit.placements().iter().collect();
    ordered.sort_by_key(|p| p.slot);
    for p in ordered {
        let k = p.pins.len();
        let token = if gate::mct_positive(k - 1).as_ref() == Ok(&*p.gate) {
            format!("t{k}")
        } else if k >= 2 && gate::mcf(k - 2).as_ref() == Ok(&*p.gate) {
            format!("f{k}")
        } else {
            return Err(crate::Error::UnknownGate(format!("{} has no .real token", p.gate.name())));
        };
        let pins: Vec<&str> = p.pins.iter().map(|&l| names[l]).collect();
        writeln!(out, "{token} {}", pins.join(" ")).unwrap();
    }
    writeln!(out, ".end").unwrap();
    Ok(out)
}
