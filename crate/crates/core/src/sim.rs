//! Slot-by-slot evaluation and full truth-table generation.

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{Circuit, InputRole, Placement, DEFAULT_LINE_CAP};
use crate::error::{Error, Result};
use crate::table::{project, IrreversibleTruthTable, ReversibleTruthTable};
use crate::word::Word;

/// Line values before the first slot and after every occupied slot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub snapshots: Vec<Snapshot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Snapshot {
    /// `None` for the input snapshot.
    pub slot: Option<usize>,
    pub lines: Word,
}

impl Trace {
    pub fn output(&self) -> &Word {
        &self.snapshots.last().expect("trace always holds the input snapshot").lines
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Bijectivity {
    Permutation { outputs: Vec<u64> },
    /// Two inputs reaching the same output.
    NotReversible { first: u64, second: u64, output: u64 },
}

impl Bijectivity {
    pub fn is_bijective(&self) -> bool {
        matches!(self, Bijectivity::Permutation { .. })
    }
}

pub(crate) fn apply_placement(p: &Placement, state: &mut [bool]) {
    let input = p.pins.iter().fold(0u32, |acc, &l| (acc << 1) | state[l] as u32);
    let output = p.gate.apply_index(input);
    let k = p.pins.len();
    for (i, &l) in p.pins.iter().enumerate() {
        state[l] = (output >> (k - 1 - i)) & 1 == 1;
    }
}

fn check_width(circuit: &Circuit, input: &Word) -> Result<()> {
    if input.width() != circuit.width() {
        return Err(Error::WidthError { expected: circuit.width(), actual: input.width() });
    }
    Ok(())
}

/// Placements in evaluation order: ascending slot, placement order within a slot.
fn ordered(circuit: &Circuit) -> Vec<&Placement> {
    let mut ps: Vec<&Placement> = circuit.placements().iter().collect();
    ps.sort_by_key(|p| p.slot);
    ps
}

pub fn eval(circuit: &Circuit, input: &Word) -> Result<Word> {
    check_width(circuit, input)?;
    let mut state = input.clone();
    for p in ordered(circuit) {
        apply_placement(p, state.bits_mut());
    }
    Ok(state)
}

pub fn trace(circuit: &Circuit, input: &Word) -> Result<Trace> {
    check_width(circuit, input)?;
    let mut state = input.clone();
    let mut snapshots = vec![Snapshot { slot: None, lines: state.clone() }];
    for (slot, placements) in circuit.slots() {
        for p in placements {
            apply_placement(p, state.bits_mut());
        }
        snapshots.push(Snapshot { slot: Some(slot), lines: state.clone() });
    }
    Ok(Trace { snapshots })
}

pub fn full_table(circuit: &Circuit) -> Result<ReversibleTruthTable> {
    full_table_with_cap(circuit, DEFAULT_LINE_CAP)
}

/// Enumerates all 2^n inputs in ascending order. Rows are computed in
/// parallel and merged in input order.
pub fn full_table_with_cap(circuit: &Circuit, cap: usize) -> Result<ReversibleTruthTable> {
    let n = circuit.width();
    if n > cap.min(63) {
        return Err(Error::TooWide { width: n, cap });
    }
    let order = ordered(circuit);
    let outputs: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .map(|i| {
            let mut state = Word::from_index(i, n);
            for p in &order {
                apply_placement(p, state.bits_mut());
            }
            state.index()
        })
        .collect();
    Ok(ReversibleTruthTable::from_outputs(n, outputs).expect("table built from full enumeration"))
}

/// The full table with constant inputs fixed and garbage outputs dropped.
pub fn projected_table(circuit: &Circuit) -> Result<IrreversibleTruthTable> {
    project(&full_table(circuit)?, &circuit.roles())
}

/// Full line word for an assignment of the free inputs, in line order.
pub fn line_input(circuit: &Circuit, free: &Word) -> Result<Word> {
    if free.width() != circuit.free_inputs() {
        return Err(Error::WidthError { expected: circuit.free_inputs(), actual: free.width() });
    }
    let mut bits = free.bits().iter();
    Ok(Word::from_bits(circuit.lines().iter().map(|l| match l.input {
        InputRole::Constant(v) => v,
        InputRole::Primary => *bits.next().expect("one bit per free input"),
    })))
}

pub fn check_bijective(circuit: &Circuit) -> Result<Bijectivity> {
    check_bijective_with_cap(circuit, DEFAULT_LINE_CAP)
}

pub fn check_bijective_with_cap(circuit: &Circuit, cap: usize) -> Result<Bijectivity> {
    let table = full_table_with_cap(circuit, cap)?;
    let mut preimage: Vec<Option<u64>> = vec![None; table.outputs().len()];
    for (i, &o) in table.outputs().iter().enumerate() {
        if let Some(first) = preimage[o as usize] {
            return Ok(Bijectivity::NotReversible { first, second: i as u64, output: o });
        }
        preimage[o as usize] = Some(i as u64);
    }
    Ok(Bijectivity::Permutation { outputs: table.outputs().to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::builtin;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(3).unwrap();
        assert_eq!(eval(&c, &w("101")).unwrap(), w("101"));
        let t = trace(&c, &w("101")).unwrap();
        assert_eq!(t.snapshots.len(), 1);
        assert_eq!(
            check_bijective(&c).unwrap(),
            Bijectivity::Permutation { outputs: (0..8).collect() }
        );
    }

    #[test]
    fn single_not() {
        let mut c = Circuit::new(1).unwrap();
        c.place_gate(0, builtin("not").unwrap(), &[0]).unwrap();
        assert_eq!(eval(&c, &w("0")).unwrap(), w("1"));
        assert_eq!(trace(&c, &w("0")).unwrap().snapshots.len(), 2);
        assert_eq!(full_table(&c).unwrap().outputs(), &[1, 0]);
    }

    #[test]
    fn feynman_permutation() {
        let mut c = Circuit::new(2).unwrap();
        c.place_gate(0, builtin("feynman").unwrap(), &[0, 1]).unwrap();
        assert_eq!(
            check_bijective(&c).unwrap(),
            Bijectivity::Permutation { outputs: vec![0, 1, 3, 2] }
        );
    }

    #[test]
    fn width_checks() {
        let c = Circuit::new(2).unwrap();
        assert_eq!(eval(&c, &w("1")), Err(Error::WidthError { expected: 2, actual: 1 }));
        let wide = Circuit::with_line_cap(17, 20).unwrap();
        assert!(matches!(full_table(&wide), Err(Error::TooWide { width: 17, .. })));
    }

    #[test]
    fn pins_map_to_gate_bits_in_order() {
        // feynman controlled by line 2 targeting line 0
        let mut c = Circuit::new(3).unwrap();
        c.place_gate(0, builtin("feynman").unwrap(), &[2, 0]).unwrap();
        assert_eq!(eval(&c, &w("001")).unwrap(), w("101"));
        assert_eq!(eval(&c, &w("100")).unwrap(), w("100"));
    }
}
