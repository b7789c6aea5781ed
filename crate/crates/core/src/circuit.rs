//! Reversible circuits as lines crossed by time slots.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gate::GateDef;

/// Largest line count accepted by [`Circuit::new`]; keeps full-table
/// enumeration at 2^16 rows.
pub const DEFAULT_LINE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputRole {
    Primary,
    Constant(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputRole {
    Primary(String),
    Garbage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub index: usize,
    pub name: String,
    pub input: InputRole,
    pub output: OutputRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub slot: usize,
    pub gate: Arc<GateDef>,
    pub pins: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    lines: Vec<Line>,
    placements: Vec<Placement>,
}

/// Constant and garbage annotations plus column names, detached from a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roles {
    pub constants: BTreeMap<usize, bool>,
    pub garbage: BTreeSet<usize>,
    pub line_names: Vec<String>,
    pub output_names: Vec<String>,
}

impl Roles {
    /// No constants, no garbage, default names.
    pub fn plain(width: usize) -> Self {
        let names: Vec<String> = (0..width).map(default_line_name).collect();
        Roles {
            constants: BTreeMap::new(),
            garbage: BTreeSet::new(),
            output_names: names.clone(),
            line_names: names,
        }
    }

    pub fn width(&self) -> usize {
        self.line_names.len()
    }
}

pub fn default_line_name(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("x{index}")
    }
}

impl Circuit {
    pub fn new(num_lines: usize) -> Result<Self> {
        Self::with_line_cap(num_lines, DEFAULT_LINE_CAP)
    }

    /// Like [`Circuit::new`] with a different line cap. Raising the cap past
    /// the default makes full-table operations exponential in a big way.
    pub fn with_line_cap(num_lines: usize, cap: usize) -> Result<Self> {
        if num_lines == 0 || num_lines > cap {
            return Err(Error::BadWidth { requested: num_lines, max: cap });
        }
        if num_lines > DEFAULT_LINE_CAP {
            log::warn!("{num_lines}-line circuit exceeds the enumeration cap of {DEFAULT_LINE_CAP}");
        }
        Ok(Self::unbounded(num_lines))
    }

    pub(crate) fn unbounded(num_lines: usize) -> Self {
        let lines = (0..num_lines)
            .map(|i| Line {
                index: i,
                name: default_line_name(i),
                input: InputRole::Primary,
                output: OutputRole::Primary(default_line_name(i)),
            })
            .collect();
        Circuit { name: "circuit".to_string(), lines, placements: Vec::new() }
    }

    /// Appends default lines without any cap; used for generated netlists.
    pub(crate) fn resize_unbounded(&mut self, num_lines: usize) {
        let extra = Self::unbounded(num_lines).lines.split_off(self.width());
        self.lines.extend(extra);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn width(&self) -> usize {
        self.lines.len()
    }

    /// Number of gate levels: distinct occupied slots.
    pub fn depth(&self) -> usize {
        self.placements.iter().map(|p| p.slot).collect::<BTreeSet<_>>().len()
    }

    /// Placements grouped by slot in ascending order, placement order kept
    /// within a slot.
    pub fn slots(&self) -> BTreeMap<usize, Vec<&Placement>> {
        let mut slots: BTreeMap<usize, Vec<&Placement>> = BTreeMap::new();
        for p in &self.placements {
            slots.entry(p.slot).or_default().push(p);
        }
        slots
    }

    /// One past the highest occupied slot, i.e. the first free trailing slot.
    pub fn next_slot(&self) -> usize {
        self.placements.iter().map(|p| p.slot + 1).max().unwrap_or(0)
    }

    pub fn place_gate(
        &mut self,
        slot: usize,
        gate: impl Into<Arc<GateDef>>,
        pins: &[usize],
    ) -> Result<()> {
        let gate = gate.into();
        self.check_placement(slot, &gate, pins)?;
        self.placements.push(Placement { slot, gate, pins: pins.to_vec() });
        Ok(())
    }

    /// Places a gate in a new slot after everything else.
    pub fn append_gate(&mut self, gate: impl Into<Arc<GateDef>>, pins: &[usize]) -> Result<usize> {
        let slot = self.next_slot();
        self.place_gate(slot, gate, pins)?;
        Ok(slot)
    }

    fn check_placement(&self, slot: usize, gate: &GateDef, pins: &[usize]) -> Result<()> {
        if pins.len() != gate.arity() {
            return Err(Error::PinCount {
                gate: gate.name().to_string(),
                expected: gate.arity(),
                actual: pins.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for &pin in pins {
            if pin >= self.width() {
                return Err(Error::LineOutOfRange { line: pin, width: self.width() });
            }
            if !seen.insert(pin) {
                return Err(Error::PinClash(pin));
            }
        }
        for other in self.placements.iter().filter(|p| p.slot == slot) {
            if let Some(&line) = other.pins.iter().find(|l| seen.contains(l)) {
                return Err(Error::SlotConflict { slot, line });
            }
        }
        Ok(())
    }

    /// Removes the gate touching `line` in `slot`, if any.
    pub fn remove_gate(&mut self, slot: usize, line: usize) -> Option<Placement> {
        let pos = self.placements.iter().position(|p| p.slot == slot && p.pins.contains(&line))?;
        Some(self.placements.remove(pos))
    }

    /// Changes the line count. Shrinking fails while a gate still touches a
    /// line that would be dropped.
    pub fn resize(&mut self, num_lines: usize) -> Result<()> {
        if num_lines == 0 || num_lines > DEFAULT_LINE_CAP.max(self.width()) {
            return Err(Error::BadWidth { requested: num_lines, max: DEFAULT_LINE_CAP });
        }
        if let Some(&line) = self.placements.iter().flat_map(|p| &p.pins).find(|&&l| l >= num_lines) {
            return Err(Error::LineOutOfRange { line, width: num_lines });
        }
        if num_lines < self.width() {
            self.lines.truncate(num_lines);
        } else {
            let extra = Self::unbounded(num_lines).lines.split_off(self.width());
            self.lines.extend(extra);
        }
        Ok(())
    }

    fn line_mut(&mut self, line: usize) -> Result<&mut Line> {
        let width = self.width();
        self.lines.get_mut(line).ok_or(Error::LineOutOfRange { line, width })
    }

    pub fn set_line_name(&mut self, line: usize, name: impl Into<String>) -> Result<()> {
        let name = name.into();
        let l = self.line_mut(line)?;
        // an output that still carried the old line name follows the rename
        if l.output == OutputRole::Primary(l.name.clone()) {
            l.output = OutputRole::Primary(name.clone());
        }
        l.name = name;
        Ok(())
    }

    pub fn set_output_name(&mut self, line: usize, name: impl Into<String>) -> Result<()> {
        self.line_mut(line)?.output = OutputRole::Primary(name.into());
        Ok(())
    }

    pub fn set_constant(&mut self, line: usize, value: bool) -> Result<()> {
        self.line_mut(line)?.input = InputRole::Constant(value);
        Ok(())
    }

    pub fn set_garbage(&mut self, line: usize) -> Result<()> {
        self.line_mut(line)?.output = OutputRole::Garbage;
        Ok(())
    }

    /// Replaces every constant/garbage annotation. Lines left out become
    /// primary inputs/outputs again (outputs named after their line).
    pub fn set_roles(
        &mut self,
        constants: &BTreeMap<usize, bool>,
        garbage: &BTreeSet<usize>,
    ) -> Result<()> {
        let width = self.width();
        if let Some(&line) = constants.keys().chain(garbage).find(|&&l| l >= width) {
            return Err(Error::LineOutOfRange { line, width });
        }
        for line in &mut self.lines {
            line.input = match constants.get(&line.index) {
                Some(&v) => InputRole::Constant(v),
                None => InputRole::Primary,
            };
            if garbage.contains(&line.index) {
                line.output = OutputRole::Garbage;
            } else if line.output == OutputRole::Garbage {
                line.output = OutputRole::Primary(line.name.clone());
            }
        }
        Ok(())
    }

    pub fn roles(&self) -> Roles {
        Roles {
            constants: self
                .lines
                .iter()
                .filter_map(|l| match l.input {
                    InputRole::Constant(v) => Some((l.index, v)),
                    InputRole::Primary => None,
                })
                .collect(),
            garbage: self
                .lines
                .iter()
                .filter(|l| l.output == OutputRole::Garbage)
                .map(|l| l.index)
                .collect(),
            line_names: self.lines.iter().map(|l| l.name.clone()).collect(),
            output_names: self
                .lines
                .iter()
                .map(|l| match &l.output {
                    OutputRole::Primary(n) => n.clone(),
                    OutputRole::Garbage => l.name.clone(),
                })
                .collect(),
        }
    }

    pub fn constant_count(&self) -> usize {
        self.lines.iter().filter(|l| matches!(l.input, InputRole::Constant(_))).count()
    }

    pub fn garbage_count(&self) -> usize {
        self.lines.iter().filter(|l| l.output == OutputRole::Garbage).count()
    }

    /// Inputs that are not tied to a constant.
    pub fn free_inputs(&self) -> usize {
        self.width() - self.constant_count()
    }

    pub fn primary_outputs(&self) -> usize {
        self.width() - self.garbage_count()
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        for (i, line) in self.lines.iter().enumerate() {
            if line.index != i {
                return Err(Error::LineOutOfRange { line: line.index, width: self.width() });
            }
        }
        let mut check = Circuit { placements: Vec::new(), ..self.clone() };
        for p in &self.placements {
            check.place_gate(p.slot, p.gate.clone(), &p.pins)?;
        }
        Ok(())
    }

    /// The placements mirrored in time: slot `s` moves to `last - s`.
    pub fn reversed(&self) -> Circuit {
        let last = self.next_slot().saturating_sub(1);
        let mut placements: Vec<Placement> = self
            .placements
            .iter()
            .rev()
            .map(|p| Placement { slot: last - p.slot, ..p.clone() })
            .collect();
        placements.sort_by_key(|p| p.slot);
        Circuit { placements, ..self.clone() }
    }
}
