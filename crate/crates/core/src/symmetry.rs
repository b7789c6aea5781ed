//! Total-symmetry analysis of irreversible truth tables.
//!
//! A column is totally symmetric when its value depends only on the Hamming
//! weight of the input row. The scan buckets rows by weight and keeps the
//! first value seen per bucket; any later disagreement is a witness.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::IrreversibleTruthTable;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub inputs: usize,
    pub outputs: Vec<OutputSymmetry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSymmetry {
    pub name: String,
    pub symmetric: bool,
    /// Output value per input weight 0..=n.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_vector: Option<Vec<bool>>,
    /// Weights carrying a 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_set: Option<BTreeSet<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Two rows of equal weight with different outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub first: WitnessRow,
    pub second: WitnessRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub input: Word,
    pub value: bool,
}

impl OutputSymmetry {
    pub fn symmetric(name: impl Into<String>, value_vector: Vec<bool>) -> Self {
        let index_set = value_vector.iter().enumerate().filter(|(_, &v)| v).map(|(w, _)| w).collect();
        OutputSymmetry {
            name: name.into(),
            symmetric: true,
            value_vector: Some(value_vector),
            index_set: Some(index_set),
            witness: None,
        }
    }

    pub fn asymmetric(name: impl Into<String>, witness: Witness) -> Self {
        OutputSymmetry {
            name: name.into(),
            symmetric: false,
            value_vector: None,
            index_set: None,
            witness: Some(witness),
        }
    }

    /// Checks the field invariants, for reports that arrive from outside.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: &str| Err(Error::MalformedTable(format!("output `{}`: {msg}", self.name)));
        match (self.symmetric, &self.value_vector, &self.index_set, &self.witness) {
            (true, Some(a), Some(k), None) => {
                if a.len() != n + 1 {
                    return bad("value vector length must be n+1");
                }
                let expected: BTreeSet<usize> =
                    a.iter().enumerate().filter(|(_, &v)| v).map(|(w, _)| w).collect();
                if &expected != k {
                    return bad("index set disagrees with value vector");
                }
                Ok(())
            }
            (false, None, None, Some(_)) => Ok(()),
            _ => bad("symmetric flag, value vector and witness disagree"),
        }
    }
}

impl SymmetryReport {
    pub fn is_fully_symmetric(&self) -> bool {
        self.outputs.iter().all(|o| o.symmetric)
    }

    pub fn validate(&self) -> Result<()> {
        self.outputs.iter().try_for_each(|o| o.validate(self.inputs))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outputs {
            match (&o.index_set, &o.witness) {
                (Some(k), _) => {
                    let a: String = o
                        .value_vector
                        .iter()
                        .flatten()
                        .map(|&b| if b { '1' } else { '0' })
                        .collect();
                    let ks: Vec<String> = k.iter().map(|w| w.to_string()).collect();
                    out.push_str(&format!(
                        "{}: symmetric S{{{}}} A={}\n",
                        o.name,
                        ks.join(","),
                        a
                    ));
                }
                (None, Some(w)) => out.push_str(&format!(
                    "{}: asymmetric ({} -> {} vs {} -> {})\n",
                    o.name,
                    w.first.input,
                    w.first.value as u8,
                    w.second.input,
                    w.second.value as u8
                )),
                (None, None) => out.push_str(&format!("{}: invalid entry\n", o.name)),
            }
        }
        out
    }
}

pub fn analyze(tt: &IrreversibleTruthTable) -> SymmetryReport {
    let n = tt.num_inputs();
    let outputs = (0..tt.num_outputs())
        .map(|j| analyze_column(n, &tt.output_names()[j], tt.rows().map(|(i, o)| (i, o.bit(j)))))
        .collect();
    SymmetryReport { inputs: n, outputs }
}

fn analyze_column(
    n: usize,
    name: &str,
    rows: impl Iterator<Item = (Word, bool)>,
) -> OutputSymmetry {
    // first row seen per weight; `None` is the unset state
    let mut seen: Vec<Option<WitnessRow>> = vec![None; n + 1];
    for (input, value) in rows {
        let weight = input.weight();
        match &seen[weight] {
            None => seen[weight] = Some(WitnessRow { input, value }),
            Some(first) if first.value != value => {
                let witness = Witness { first: first.clone(), second: WitnessRow { input, value } };
                return OutputSymmetry::asymmetric(name, witness);
            }
            Some(_) => {}
        }
    }
    let a = seen.into_iter().map(|r| r.map(|r| r.value).unwrap_or(false)).collect();
    OutputSymmetry::symmetric(name, a)
}

/// Independent check: a column is totally symmetric iff it is invariant under
/// every transposition of two input columns.
pub fn brute_force_symmetric(tt: &IrreversibleTruthTable, output: usize) -> bool {
    let n = tt.num_inputs();
    let column = tt.column(output);
    for i in 0..n {
        for j in i + 1..n {
            for (row, &value) in column.iter().enumerate() {
                let mut swapped = Word::from_index(row as u64, n);
                let (a, b) = (swapped.bit(i), swapped.bit(j));
                swapped.set(i, b);
                swapped.set(j, a);
                if column[swapped.index() as usize] != value {
                    return false;
                }
            }
        }
    }
    true
}

/// The single-output symmetric function that is 1 exactly on inputs whose
/// weight lies in `index_set`.
pub fn indices_to_function(n: usize, index_set: &BTreeSet<usize>) -> Result<IrreversibleTruthTable> {
    if let Some(&k) = index_set.iter().find(|&&k| k > n) {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let column: Vec<bool> = (0..1u64 << n).map(|x| index_set.contains(&(x.count_ones() as usize))).collect();
    IrreversibleTruthTable::from_columns(
        crate::table::default_input_names(n),
        vec!["O1".to_string()],
        &[column],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, column: Vec<bool>) -> IrreversibleTruthTable {
        IrreversibleTruthTable::from_columns(
            crate::table::default_input_names(n),
            vec!["O1".into()],
            &[column],
        )
        .unwrap()
    }

    #[test]
    fn constant_zero_is_symmetric_with_empty_set() {
        let r = analyze(&table(3, vec![false; 8]));
        assert!(r.outputs[0].symmetric);
        assert_eq!(r.outputs[0].index_set, Some(BTreeSet::new()));
        assert_eq!(r.outputs[0].value_vector, Some(vec![false; 4]));
    }

    #[test]
    fn indices_round_trip_edges() {
        let none = indices_to_function(3, &BTreeSet::new()).unwrap();
        assert!(none.column(0).iter().all(|&b| !b));
        let all = indices_to_function(3, &(0..=3).collect()).unwrap();
        assert!(all.column(0).iter().all(|&b| b));
        assert!(indices_to_function(3, &BTreeSet::from([4])).is_err());
    }

    #[test]
    fn zero_inputs() {
        let t = table(0, vec![true]);
        let r = analyze(&t);
        assert_eq!(r.outputs[0].index_set, Some(BTreeSet::from([0])));
        assert!(brute_force_symmetric(&t, 0));
    }

    #[test]
    fn external_report_validation() {
        let mut o = OutputSymmetry::symmetric("O1", vec![false, true, false, true]);
        assert!(o.validate(3).is_ok());
        assert!(o.validate(2).is_err());
        o.index_set = Some(BTreeSet::from([2]));
        assert!(o.validate(3).is_err());
        o.symmetric = false;
        assert!(o.validate(3).is_err());
    }
}
