//! Reversible programmable gate-array fabric.
//!
//! The fabric is generated as an ordinary reversible [`Circuit`]:
//!
//! * a triangular plane of MAX/MIN nodes wired as a bubble-sort comparator
//!   network, leaving the threshold function `T_k` (input weight `>= k`) on
//!   input line `k-1`;
//! * a single-index plane where line `s_k` receives a copy of `T_k` and is
//!   then XORed with `T_{k+1}`, giving `S_k` (weight `== k`); `S_n` is `T_n`;
//! * one accumulator line per configured output, XORing the `S_k` of its index
//!   set. Index 0 is `T_1` XOR 1.
//!
//! Every MAX/MIN node is a Kerntopf gate with its third pin tied to 1, or a
//! pair of Picton gates fed by the constants 0 and 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, InputRole, OutputRole};
use crate::error::{Error, Result};
use crate::gate::{builtin, GateDef};
use crate::sim;
use crate::symmetry::SymmetryReport;
use crate::word::Word;

pub const MAX_FABRIC_INPUTS: usize = 12;

/// Largest fabric whose taps are checked exhaustively during [`build`].
const BUILD_CHECK_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    Kerntopf,
    Picton,
}

impl Realization {
    pub fn constants_per_node(self) -> usize {
        match self {
            Realization::Kerntopf => 1,
            Realization::Picton => 2,
        }
    }

    pub fn garbage_per_node(self) -> usize {
        self.constants_per_node()
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Kerntopf => "kerntopf",
            Realization::Picton => "picton",
        })
    }
}

impl std::str::FromStr for Realization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kerntopf" => Ok(Realization::Kerntopf),
            "picton" => Ok(Realization::Picton),
            other => Err(Error::UnknownGate(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxMinNode {
    pub id: usize,
    /// Column of the triangle (bubble-sort pass).
    pub level: usize,
    pub inputs: [String; 2],
    pub max_out: String,
    pub min_out: String,
    pub garbage: Vec<String>,
    /// Netlist lines carrying the two operands; MAX ends on the first, MIN
    /// on the second.
    pub lines: [usize; 2],
    pub constant_lines: Vec<usize>,
    placements: std::ops::Range<usize>,
}

/// A named wire exposed by the fabric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tap {
    pub name: String,
    pub wire: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fabric {
    n: usize,
    realization: Realization,
    nodes: Vec<MaxMinNode>,
    thresholds: Vec<Tap>,
    single_index: Vec<Tap>,
    netlist: Circuit,
    /// Placement count at the end of each triangle level.
    level_ends: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxMinOutput {
    pub max: bool,
    pub min: bool,
    pub garbage: [Option<bool>; 2],
}

/// Places one MAX/MIN node on `a`, `b` and its constant lines.
fn place_node(
    circuit: &mut Circuit,
    realization: Realization,
    a: usize,
    b: usize,
    constants: &[usize],
    kerntopf: &Arc<GateDef>,
    picton: &Arc<GateDef>,
) {
    let place = |c: &mut Circuit, g: &Arc<GateDef>, pins: &[usize]| {
        c.append_gate(g.clone(), pins).expect("fabric placements are conflict-free");
    };
    match realization {
        Realization::Kerntopf => place(circuit, kerntopf, &[a, b, constants[0]]),
        Realization::Picton => {
            let (c0, c1) = (constants[0], constants[1]);
            place(circuit, picton, &[a, b, c0, c1]);
            place(circuit, picton, &[c1, c0, a, b]);
        }
    }
}

fn node_constants(realization: Realization) -> &'static [bool] {
    match realization {
        Realization::Kerntopf => &[true],
        Realization::Picton => &[false, true],
    }
}

/// Evaluates a single MAX/MIN node on `(a, b)`.
pub fn maxmin_eval(realization: Realization, a: bool, b: bool) -> MaxMinOutput {
    let consts = node_constants(realization);
    let mut c = Circuit::unbounded(2 + consts.len());
    let lines: Vec<usize> = (2..2 + consts.len()).collect();
    let (k, p) = (Arc::new(builtin("kerntopf").unwrap()), Arc::new(builtin("picton").unwrap()));
    place_node(&mut c, realization, 0, 1, &lines, &k, &p);
    let mut input = Word::zeros(c.width());
    input.set(0, a);
    input.set(1, b);
    for (&l, &v) in lines.iter().zip(consts) {
        input.set(l, v);
    }
    let out = sim::eval(&c, &input).expect("width matches");
    let mut garbage = [None; 2];
    for (slot, &l) in garbage.iter_mut().zip(&lines) {
        *slot = Some(out.bit(l));
    }
    MaxMinOutput { max: out.bit(0), min: out.bit(1), garbage }
}

fn set_line(c: &mut Circuit, line: usize, name: &str, input: InputRole, output: OutputRole) {
    c.set_line_name(line, name).unwrap();
    match input {
        InputRole::Constant(v) => c.set_constant(line, v).unwrap(),
        InputRole::Primary => {}
    }
    match output {
        OutputRole::Garbage => c.set_garbage(line).unwrap(),
        OutputRole::Primary(o) => c.set_output_name(line, o).unwrap(),
    }
}

/// Generates the fabric for `n` inputs.
pub fn build(n: usize, realization: Realization) -> Result<Fabric> {
    if n == 0 || n > MAX_FABRIC_INPUTS {
        return Err(Error::BadWidth { requested: n, max: MAX_FABRIC_INPUTS });
    }
    let node_count = n * (n - 1) / 2;
    let per_node = realization.constants_per_node();
    let s_base = n + node_count * per_node;
    let mut netlist = Circuit::unbounded(s_base + n - 1);
    netlist.set_name(format!("rpga{n}_{realization}"));

    let mut wire: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    for (i, w) in wire.iter().enumerate() {
        set_line(&mut netlist, i, w, InputRole::Primary, OutputRole::Primary(format!("T{}", i + 1)));
    }

    let kerntopf = Arc::new(builtin("kerntopf")?);
    let picton = Arc::new(builtin("picton")?);
    let mut nodes = Vec::with_capacity(node_count);
    let mut level_ends = Vec::new();
    for level in 0..n.saturating_sub(1) {
        for i in 0..n - 1 - level {
            let id = nodes.len();
            let constant_lines: Vec<usize> = (0..per_node).map(|c| n + id * per_node + c).collect();
            let garbage: Vec<String> = match realization {
                Realization::Kerntopf => vec![format!("n{id}.g")],
                Realization::Picton => vec![format!("n{id}.g0"), format!("n{id}.g1")],
            };
            for ((&line, &value), g) in constant_lines.iter().zip(node_constants(realization)).zip(&garbage) {
                set_line(&mut netlist, line, g, InputRole::Constant(value), OutputRole::Garbage);
            }
            let start = netlist.placements().len();
            place_node(&mut netlist, realization, i, i + 1, &constant_lines, &kerntopf, &picton);
            let node = MaxMinNode {
                id,
                level,
                inputs: [wire[i].clone(), wire[i + 1].clone()],
                max_out: format!("n{id}.max"),
                min_out: format!("n{id}.min"),
                garbage,
                lines: [i, i + 1],
                constant_lines,
                placements: start..netlist.placements().len(),
            };
            wire[i] = node.max_out.clone();
            wire[i + 1] = node.min_out.clone();
            nodes.push(node);
        }
        level_ends.push(netlist.placements().len());
    }

    let thresholds: Vec<Tap> = (0..n)
        .map(|i| Tap { name: format!("T{}", i + 1), wire: wire[i].clone(), line: i })
        .collect();

    let feynman = Arc::new(builtin("feynman")?);
    let mut single_index = Vec::with_capacity(n);
    for k in 1..n {
        let line = s_base + k - 1;
        let name = format!("s{k}");
        set_line(&mut netlist, line, &name, InputRole::Constant(false), OutputRole::Primary(format!("S{k}")));
        netlist.append_gate(feynman.clone(), &[k - 1, line])?;
        netlist.append_gate(feynman.clone(), &[k, line])?;
        single_index.push(Tap { name: format!("S{k}"), wire: name, line });
    }
    single_index.push(Tap { name: format!("S{n}"), wire: wire[n - 1].clone(), line: n - 1 });

    let fabric = Fabric { n, realization, nodes, thresholds, single_index, netlist, level_ends };
    if n <= BUILD_CHECK_LIMIT {
        fabric.check_taps();
    }
    Ok(fabric)
}

impl Fabric {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn nodes(&self) -> &[MaxMinNode] {
        &self.nodes
    }

    /// `T_1..T_n`.
    pub fn thresholds(&self) -> &[Tap] {
        &self.thresholds
    }

    /// `S_1..S_n`.
    pub fn single_index(&self) -> &[Tap] {
        &self.single_index
    }

    /// The generated netlist as a plain reversible circuit.
    pub fn netlist(&self) -> &Circuit {
        &self.netlist
    }

    fn netlist_input(&self, input: &Word, width: usize) -> Result<Word> {
        if input.width() != self.n {
            return Err(Error::WidthError { expected: self.n, actual: input.width() });
        }
        let mut word = Word::zeros(width);
        for (i, &b) in input.bits().iter().enumerate() {
            word.set(i, b);
        }
        for line in &self.netlist.lines()[self.n..] {
            if let InputRole::Constant(v) = line.input {
                word.set(line.index, v);
            }
        }
        Ok(word)
    }

    /// Threshold and single-index tap values for one input.
    pub fn eval_taps(&self, input: &Word) -> Result<(Word, Word)> {
        let word = self.netlist_input(input, self.netlist.width())?;
        let out = sim::eval(&self.netlist, &word)?;
        Ok(self.read_taps(&out))
    }

    fn read_taps(&self, lines: &Word) -> (Word, Word) {
        (
            Word::from_bits(self.thresholds.iter().map(|t| lines.bit(t.line))),
            Word::from_bits(self.single_index.iter().map(|t| lines.bit(t.line))),
        )
    }

    fn check_taps(&self) {
        for x in 0..1u64 << self.n {
            let input = Word::from_index(x, self.n);
            let w = input.weight();
            let (t, s) = self.eval_taps(&input).expect("width matches");
            for k in 1..=self.n {
                assert_eq!(t.bit(k - 1), w >= k, "T{k} wrong on {input}");
                assert_eq!(s.bit(k - 1), w == k, "S{k} wrong on {input}");
            }
        }
    }

    /// The fabric with no outputs bound.
    pub fn unconfigured(self: &Arc<Self>) -> Configuration {
        Configuration::new(self.clone(), Vec::new()).expect("empty binding list is valid")
    }
}

/// One configured output: the accumulator line XORing `S_k` for `k` in the
/// index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub index_set: BTreeSet<usize>,
    pub line: usize,
    pub wire: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    fabric: Arc<Fabric>,
    bindings: Vec<Binding>,
    netlist: Circuit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputValue {
    pub name: String,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub label: String,
    pub lines: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FabricEval {
    pub input: Word,
    pub outputs: Vec<OutputValue>,
    pub thresholds: Word,
    pub single_index: Word,
    /// Node garbage wires in node order.
    pub garbage: Word,
    pub stages: Vec<Stage>,
}

impl FabricEval {
    pub fn output(&self, name: &str) -> Option<bool> {
        self.outputs.iter().find(|o| o.name == name).map(|o| o.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub nodes: usize,
    pub node_constants: usize,
    pub node_garbage: usize,
    /// Feynman gates whose target is a still-untouched constant-0 line.
    pub copy_gates: usize,
    /// The remaining Feynman gates (XOR accumulation).
    pub feynman_gates: usize,
    pub not_gates: usize,
    /// Constant-0 targets of the single-index plane and the accumulators.
    pub xor_plane_constants: usize,
    pub total_constants: usize,
    /// Every netlist line not bound to an output.
    pub total_garbage: usize,
    /// Some binding uses index 0, realized by inverting a copy of `T_1`.
    pub uses_index_zero: bool,
}

impl Configuration {
    pub fn new(fabric: Arc<Fabric>, bindings: Vec<(String, BTreeSet<usize>)>) -> Result<Self> {
        let n = fabric.n;
        let mut names = BTreeSet::new();
        for (name, set) in &bindings {
            if let Some(&k) = set.iter().find(|&&k| k > n) {
                return Err(Error::IndexOutOfRange { index: k, n });
            }
            if !names.insert(name.as_str()) {
                return Err(Error::ConfigMismatch(format!("output `{name}` bound twice")));
            }
        }

        let mut netlist = fabric.netlist.clone();
        // the bare taps are no longer outputs once a configuration exists
        for line in 0..netlist.width() {
            netlist.set_garbage(line)?;
        }
        let first_acc = netlist.width();
        netlist.resize_unbounded(first_acc + bindings.len());
        let feynman = Arc::new(builtin("feynman")?);
        let not = Arc::new(builtin("not")?);
        let mut out = Vec::with_capacity(bindings.len());
        for (i, (name, index_set)) in bindings.into_iter().enumerate() {
            let line = first_acc + i;
            let wire = format!("acc{i}");
            set_line(&mut netlist, line, &wire, InputRole::Constant(false), OutputRole::Primary(name.clone()));
            for &k in &index_set {
                if k == 0 {
                    netlist.append_gate(feynman.clone(), &[fabric.thresholds[0].line, line])?;
                    netlist.append_gate(not.clone(), &[line])?;
                } else {
                    netlist.append_gate(feynman.clone(), &[fabric.single_index[k - 1].line, line])?;
                }
            }
            out.push(Binding { name, index_set, line, wire });
        }
        Ok(Configuration { fabric, bindings: out, netlist })
    }

    pub fn fabric(&self) -> &Arc<Fabric> {
        &self.fabric
    }

    pub fn n(&self) -> usize {
        self.fabric.n
    }

    pub fn bindings(&self) -> &[Binding] {
        &self.bindings
    }

    /// Fabric plus accumulator lines, as a plain reversible circuit.
    pub fn netlist(&self) -> &Circuit {
        &self.netlist
    }

    pub fn eval(&self, input: &Word) -> Result<FabricEval> {
        let word = self.fabric.netlist_input(input, self.netlist.width())?;
        let trace = sim::trace(&self.netlist, &word)?;
        // each placement has its own slot, so snapshot k is after k placements
        let snap = |count: usize| trace.snapshots[count].lines.clone();
        let mut stages = vec![Stage { label: "inputs".into(), lines: snap(0) }];
        for (level, &end) in self.fabric.level_ends.iter().enumerate() {
            stages.push(Stage { label: format!("maxmin level {level}"), lines: snap(end) });
        }
        stages.push(Stage {
            label: "single-index plane".into(),
            lines: snap(self.fabric.netlist.placements().len()),
        });
        let last = trace.output().clone();
        stages.push(Stage { label: "outputs".into(), lines: last.clone() });

        let (thresholds, single_index) = self.fabric.read_taps(&last);
        let garbage = Word::from_bits(
            self.fabric.nodes.iter().flat_map(|n| &n.constant_lines).map(|&l| last.bit(l)),
        );
        let outputs = self
            .bindings
            .iter()
            .map(|b| OutputValue { name: b.name.clone(), value: last.bit(b.line) })
            .collect();
        Ok(FabricEval { input: input.clone(), outputs, thresholds, single_index, garbage, stages })
    }

    pub fn resource_report(&self) -> ResourceReport {
        let realization = self.fabric.realization;
        let nodes = self.fabric.nodes.len();
        let node_placements = self.fabric.level_ends.last().copied().unwrap_or(0);
        let mut untouched: BTreeSet<usize> = self
            .netlist
            .lines()
            .iter()
            .filter(|l| l.input == InputRole::Constant(false))
            .map(|l| l.index)
            .collect();
        let (mut copy_gates, mut feynman_gates, mut not_gates) = (0, 0, 0);
        for p in &self.netlist.placements()[node_placements..] {
            match p.gate.name() {
                "feynman" if untouched.contains(&p.pins[1]) => copy_gates += 1,
                "feynman" => feynman_gates += 1,
                "not" => not_gates += 1,
                _ => {}
            }
            for pin in &p.pins[p.pins.len() - 1..] {
                untouched.remove(pin);
            }
        }
        let node_constants = nodes * realization.constants_per_node();
        let total_constants = self.netlist.constant_count();
        ResourceReport {
            nodes,
            node_constants,
            node_garbage: nodes * realization.garbage_per_node(),
            copy_gates,
            feynman_gates,
            not_gates,
            xor_plane_constants: total_constants - node_constants,
            total_constants,
            total_garbage: self.netlist.garbage_count(),
            uses_index_zero: self.bindings.iter().any(|b| b.index_set.contains(&0)),
        }
    }

    /// Per node: whether it lies in the backward cone of a bound output.
    pub fn active_nodes(&self) -> Vec<bool> {
        let placements = self.netlist.placements();
        let mut needed: BTreeSet<usize> = self.bindings.iter().map(|b| b.line).collect();
        let mut used = vec![false; placements.len()];
        let mut through_cache: BTreeMap<&str, Vec<bool>> = BTreeMap::new();
        for (idx, p) in placements.iter().enumerate().rev() {
            let through = through_cache.entry(p.gate.name()).or_insert_with(|| pass_through(&p.gate));
            let writes_needed = p.pins.iter().zip(through.iter()).any(|(l, &t)| !t && needed.contains(l));
            if writes_needed {
                used[idx] = true;
                needed.extend(p.pins.iter().copied());
            }
        }
        self.fabric.nodes.iter().map(|n| n.placements.clone().any(|i| used[i])).collect()
    }
}

/// Pins whose output always equals their input.
fn pass_through(gate: &GateDef) -> Vec<bool> {
    let k = gate.arity();
    (0..k)
        .map(|pin| {
            let mask = 1u32 << (k - 1 - pin);
            gate.mapping().iter().enumerate().all(|(i, &o)| (i as u32 & mask) == (o & mask))
        })
        .collect()
}

/// Binds every output of a fully symmetric report to its index set.
pub fn configure(fabric: &Arc<Fabric>, report: &SymmetryReport) -> Result<Configuration> {
    if report.inputs != fabric.n {
        return Err(Error::ConfigMismatch(format!(
            "report has {} inputs, fabric has {}",
            report.inputs, fabric.n
        )));
    }
    report.validate()?;
    let bindings = report
        .outputs
        .iter()
        .map(|o| match &o.index_set {
            Some(k) if o.symmetric => Ok((o.name.clone(), k.clone())),
            _ => Err(Error::NotSymmetric(o.name.clone())),
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(fabric.clone(), bindings)
}
