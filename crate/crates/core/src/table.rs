//! Reversible and irreversible truth tables, constant/garbage projection and
//! circuit design metrics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::circuit::{Circuit, Roles, DEFAULT_LINE_CAP};
use crate::error::{Error, Result};
use crate::gate::GateDef;
use crate::word::Word;

/// Full input/output table of an n-line reversible circuit. Inputs are
/// implicit: row `i` is the input word whose integer reading is `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleTruthTable {
    width: usize,
    outputs: Vec<u64>,
}

impl ReversibleTruthTable {
    pub fn from_outputs(width: usize, outputs: Vec<u64>) -> Result<Self> {
        if outputs.len() as u64 != 1u64 << width {
            return Err(Error::MalformedTable(format!(
                "{} rows for a {width}-line table",
                outputs.len()
            )));
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >> width != 0) {
            return Err(Error::MalformedTable(format!("output {o} wider than {width} bits")));
        }
        Ok(ReversibleTruthTable { width, outputs })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Input plus output columns.
    pub fn columns(&self) -> usize {
        2 * self.width
    }

    pub fn outputs(&self) -> &[u64] {
        &self.outputs
    }

    pub fn rows(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        self.outputs.iter().enumerate().map(move |(i, &o)| {
            (Word::from_index(i as u64, self.width), Word::from_index(o, self.width))
        })
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.outputs.len()];
        self.outputs.iter().all(|&o| !std::mem::replace(&mut seen[o as usize], true))
    }
}

/// n input columns by m output columns over all 2^n input rows, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreversibleTruthTable {
    input_names: Vec<String>,
    output_names: Vec<String>,
    #[serde(rename = "rows", serialize_with = "serialize_rows")]
    outputs: Vec<Word>,
}

fn serialize_rows<S: serde::Serializer>(outputs: &[Word], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct Row<'a> {
        input: Word,
        output: &'a Word,
    }
    let width = outputs.len().trailing_zeros() as usize;
    let mut seq = s.serialize_seq(Some(outputs.len()))?;
    for (i, output) in outputs.iter().enumerate() {
        seq.serialize_element(&Row { input: Word::from_index(i as u64, width), output })?;
    }
    seq.end()
}

pub fn default_input_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("I{i}")).collect()
}

pub fn default_output_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("O{i}")).collect()
}

impl IrreversibleTruthTable {
    /// Direct entry: rows may come in any order but must cover every input
    /// exactly once.
    pub fn from_rows(
        input_names: Vec<String>,
        output_names: Vec<String>,
        rows: Vec<(Word, Word)>,
    ) -> Result<Self> {
        let n = input_names.len();
        let m = output_names.len();
        if m == 0 {
            return Err(Error::NoOutputs);
        }
        if n > DEFAULT_LINE_CAP {
            return Err(Error::TooWide { width: n, cap: DEFAULT_LINE_CAP });
        }
        let mut slots: Vec<Option<Word>> = vec![None; 1 << n];
        for (input, output) in rows {
            if input.width() != n || output.width() != m {
                return Err(Error::MalformedTable(format!(
                    "row {input} -> {output} does not match {n} inputs and {m} outputs"
                )));
            }
            let slot = &mut slots[input.index() as usize];
            if slot.is_some() {
                return Err(Error::MalformedTable(format!("duplicate row {input}")));
            }
            *slot = Some(output);
        }
        let outputs = slots
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::MalformedTable(format!("missing row {}", Word::from_index(i as u64, n)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IrreversibleTruthTable { input_names, output_names, outputs })
    }

    /// Builds a table from one value list per output column, rows ascending.
    pub fn from_columns(
        input_names: Vec<String>,
        output_names: Vec<String>,
        columns: &[Vec<bool>],
    ) -> Result<Self> {
        let n = input_names.len();
        if columns.len() != output_names.len() {
            return Err(Error::MalformedTable("column count differs from output names".into()));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != 1 << n) {
            return Err(Error::MalformedTable(format!("column of {} rows, need {}", c.len(), 1 << n)));
        }
        let rows = (0..1usize << n)
            .map(|i| {
                (Word::from_index(i as u64, n), Word::from_bits(columns.iter().map(|c| c[i])))
            })
            .collect();
        Self::from_rows(input_names, output_names, rows)
    }

    pub fn num_inputs(&self) -> usize {
        self.input_names.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.output_names.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn output(&self, row: usize) -> &Word {
        &self.outputs[row]
    }

    pub fn rows(&self) -> impl Iterator<Item = (Word, &Word)> + '_ {
        let n = self.num_inputs();
        self.outputs.iter().enumerate().map(move |(i, o)| (Word::from_index(i as u64, n), o))
    }

    pub fn column(&self, output: usize) -> Vec<bool> {
        self.outputs.iter().map(|o| o.bit(output)).collect()
    }
}

/// Drops constant-input rows that disagree with their declared value and the
/// garbage output columns. Remaining inputs are the free lines in index order.
pub fn project(rtt: &ReversibleTruthTable, roles: &Roles) -> Result<IrreversibleTruthTable> {
    let n = rtt.width();
    if roles.width() != n {
        return Err(Error::WidthError { expected: n, actual: roles.width() });
    }
    if let Some(&line) = roles.constants.keys().chain(&roles.garbage).find(|&&l| l >= n) {
        return Err(Error::LineOutOfRange { line, width: n });
    }
    let free: Vec<usize> = (0..n).filter(|l| !roles.constants.contains_key(l)).collect();
    let kept: Vec<usize> = (0..n).filter(|l| !roles.garbage.contains(l)).collect();
    if kept.is_empty() {
        return Err(Error::NoOutputs);
    }
    let mut base = Word::zeros(n);
    for (&line, &v) in &roles.constants {
        base.set(line, v);
    }
    let outputs = (0..1u64 << free.len())
        .map(|j| {
            let assignment = Word::from_index(j, free.len());
            let mut input = base.clone();
            for (k, &line) in free.iter().enumerate() {
                input.set(line, assignment.bit(k));
            }
            let out = Word::from_index(rtt.outputs()[input.index() as usize], n);
            Word::from_bits(kept.iter().map(|&l| out.bit(l)))
        })
        .collect();
    Ok(IrreversibleTruthTable {
        input_names: free.iter().map(|&l| roles.line_names[l].clone()).collect(),
        output_names: kept.iter().map(|&l| roles.output_names[l].clone()).collect(),
        outputs,
    })
}

/// Per-gate quantum cost convention. The defaults are a documented
/// convention, not measured values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostTable {
    costs: BTreeMap<String, u32>,
    /// mct with three or more controls.
    pub wide_mct: u32,
    /// mcf with two or more controls.
    pub wide_mcf: u32,
}

impl Default for CostTable {
    fn default() -> Self {
        let costs = [
            ("not", 1),
            ("feynman", 1),
            ("swap", 3),
            ("toffoli", 5),
            ("fredkin", 5),
            ("frg", 5),
            ("peres", 4),
            ("kerntopf", 5),
            ("picton", 6),
            ("f2g", 2),
            ("nft", 5),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        CostTable { costs, wide_mct: 13, wide_mcf: 15 }
    }
}

impl CostTable {
    pub fn set(&mut self, gate: impl Into<String>, cost: u32) {
        self.costs.insert(gate.into(), cost);
    }

    pub fn cost(&self, gate: &GateDef) -> Option<u32> {
        let name = gate.name();
        if let Some(&c) = self.costs.get(name) {
            return Some(c);
        }
        if let Some(rest) = name.strip_prefix("mct") {
            let m: usize = rest.split(':').next()?.parse().ok()?;
            return match m {
                0 => self.costs.get("not").copied(),
                1 => self.costs.get("feynman").copied(),
                2 => self.costs.get("toffoli").copied(),
                _ => Some(self.wide_mct),
            };
        }
        if let Some(rest) = name.strip_prefix("mcf") {
            return rest.parse::<usize>().ok().map(|_| self.wide_mcf);
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Metrics {
    /// N
    pub gate_count: usize,
    /// CI
    pub constant_inputs: usize,
    /// GO
    pub garbage_outputs: usize,
    /// GL
    pub gate_levels: usize,
    /// QC
    pub quantum_cost: u64,
    /// Gates missing from the cost table; each was counted at cost 1.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unpriced_gates: Vec<String>,
}

pub fn metrics(circuit: &Circuit) -> Metrics {
    metrics_with(circuit, &CostTable::default())
}

pub fn metrics_with(circuit: &Circuit, costs: &CostTable) -> Metrics {
    let mut unpriced = Vec::new();
    let quantum_cost = circuit
        .placements()
        .iter()
        .map(|p| match costs.cost(&p.gate) {
            Some(c) => c as u64,
            None => {
                if !unpriced.iter().any(|n| n == p.gate.name()) {
                    log::warn!("no quantum cost for gate `{}`, counting 1", p.gate.name());
                    unpriced.push(p.gate.name().to_string());
                }
                1
            }
        })
        .sum();
    Metrics {
        gate_count: circuit.placements().len(),
        constant_inputs: circuit.constant_count(),
        garbage_outputs: circuit.garbage_count(),
        gate_levels: circuit.depth(),
        quantum_cost,
        unpriced_gates: unpriced,
    }
}
