//! Truth-table text.
//!
//! ```text
//! inputs 3 outputs 2
//! names a b c -> O1 O2     # optional, defaults I1.. and O1..
//! 000 -> 00
//! 001 -> 10
//! ...
//! ```
//!
//! Rows must appear in ascending input order and cover all 2^n inputs. Bits
//! on either side of `->` may be split across several tokens.

use std::fmt::Write;

use super::{parse_num, tokenize, FormatError, Token};
use crate::table::{default_input_names, default_output_names, IrreversibleTruthTable};
use crate::word::Word;

fn split_arrow<'a, 'b>(
    toks: &'b [Token<'a>],
    ln: usize,
) -> Result<(&'b [Token<'a>], &'b [Token<'a>]), FormatError> {
    let arrow = toks
        .iter()
        .position(|t| t.text == "->")
        .ok_or_else(|| FormatError::new(ln, toks[0].column, "missing `->`").expecting("`<bits> -> <bits>`"))?;
    Ok((&toks[..arrow], &toks[arrow + 1..]))
}

fn bits(toks: &[Token<'_>], ln: usize) -> Result<Word, FormatError> {
    let mut out = Vec::new();
    for t in toks {
        let w: Word = t.text.parse().map_err(|e| {
            FormatError::new(ln, t.column, format!("{e} in `{}`", t.text)).expecting("0/1 bits")
        })?;
        out.extend_from_slice(w.bits());
    }
    Ok(Word::from(out))
}

pub fn parse_rtab(text: &str) -> Result<IrreversibleTruthTable, FormatError> {
    let mut lines = tokenize(text).into_iter().peekable();
    let (ln, head) = lines
        .next()
        .ok_or_else(|| FormatError::new(1, 1, "empty table").expecting("`inputs <n> outputs <m>`"))?;
    if head.len() != 4 || head[0].text != "inputs" || head[2].text != "outputs" {
        return Err(FormatError::new(ln, head[0].column, "bad header").expecting("`inputs <n> outputs <m>`"));
    }
    let n = parse_num(&head[1], ln, "input count")?;
    let m = parse_num(&head[3], ln, "output count")?;
    if m == 0 {
        return Err(FormatError::new(ln, head[3].column, "a table needs at least one output"));
    }
    if n > crate::circuit::DEFAULT_LINE_CAP {
        return Err(FormatError::new(ln, head[1].column, format!("{n} inputs exceed the cap")));
    }

    let (mut input_names, mut output_names) = (default_input_names(n), default_output_names(m));
    if let Some((ln, toks)) = lines.next_if(|(_, t)| t[0].text == "names") {
        let (ins, outs) = split_arrow(&toks[1..], ln)?;
        if ins.len() != n || outs.len() != m {
            return Err(FormatError::new(ln, toks[0].column, format!("need {n} input and {m} output names")));
        }
        input_names = ins.iter().map(|t| t.text.to_string()).collect();
        output_names = outs.iter().map(|t| t.text.to_string()).collect();
    }

    let mut rows = Vec::with_capacity(1 << n);
    let mut last_line = ln;
    for (ln, toks) in lines {
        last_line = ln;
        let (ins, outs) = split_arrow(&toks, ln)?;
        let col = toks[0].column;
        let (input, output) = (bits(ins, ln)?, bits(outs, ln)?);
        if input.width() != n || output.width() != m {
            return Err(FormatError::new(ln, col, format!("row needs {n} input and {m} output bits")));
        }
        let expected = rows.len() as u64;
        if expected >= 1 << n {
            return Err(FormatError::new(ln, col, "more rows than 2^n"));
        }
        if input.index() != expected {
            return Err(FormatError::new(ln, col, format!("row {input} out of order"))
                .expecting(Word::from_index(expected, n).to_string()));
        }
        rows.push((input, output));
    }
    if rows.len() as u64 != 1 << n {
        return Err(FormatError::new(last_line, 1, format!("{} of {} rows present", rows.len(), 1u64 << n))
            .expecting(Word::from_index(rows.len() as u64, n).to_string()));
    }
    IrreversibleTruthTable::from_rows(input_names, output_names, rows)
        .map_err(|e| FormatError::new(ln, 1, e.to_string()))
}

pub fn emit_rtab(table: &IrreversibleTruthTable) -> String {
    let mut out = String::new();
    writeln!(out, "inputs {} outputs {}", table.num_inputs(), table.num_outputs()).unwrap();
    if table.input_names() != default_input_names(table.num_inputs())
        || table.output_names() != default_output_names(table.num_outputs())
    {
        writeln!(out, "names {} -> {}", table.input_names().join(" "), table.output_names().join(" ")).unwrap();
    }
    for (input, output) in table.rows() {
        writeln!(out, "{input} -> {output}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spaced_bits_and_names() {
        let t = parse_rtab("inputs 2 outputs 1\nnames x y -> f\n0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n1 1 -> 0\n").unwrap();
        assert_eq!(t.input_names(), &["x".to_string(), "y".to_string()]);
        assert_eq!(t.column(0), vec![false, true, true, false]);
    }

    #[test]
    fn out_of_order_rows() {
        let e = parse_rtab("inputs 1 outputs 1\n1 -> 0\n0 -> 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.expected.as_deref(), Some("0"));
    }

    #[test]
    fn missing_and_extra_rows() {
        let e = parse_rtab("inputs 2 outputs 1\n00 -> 0\n01 -> 0\n10 -> 0\n").unwrap_err();
        assert!(e.message.contains("3 of 4"), "{e}");
        let e = parse_rtab("inputs 1 outputs 1\n0 -> 0\n1 -> 0\n1 -> 1\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn malformed_rows() {
        assert!(parse_rtab("inputs 1 outputs 1\n0 0\n1 -> 1").is_err());
        assert!(parse_rtab("inputs 1 outputs 1\n0 -> 2\n1 -> 1").is_err());
        assert!(parse_rtab("inputs 1 outputs 2\n0 -> 1\n1 -> 1").is_err());
        assert!(parse_rtab("inputs 1 outputs 0\n").is_err());
        assert!(parse_rtab("outputs 1 inputs 1\n").is_err());
    }

    #[test]
    fn zero_input_table() {
        let t = parse_rtab("inputs 0 outputs 1\n -> 1\n").unwrap();
        assert_eq!(t.rows().count(), 1);
        assert_eq!(parse_rtab(&emit_rtab(&t)).unwrap(), t);
    }
}
