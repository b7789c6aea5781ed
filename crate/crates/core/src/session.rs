//! Configuration mode and user mode over one fabric.
//!
//! A session starts in [`Mode::Initial`] with nothing bound. Loading a
//! configuration moves it to [`Mode::Configured`]; applying an input, or
//! stepping with [`Session::next`] / [`Session::prev`], moves it to
//! [`Mode::User`]. The cursor wraps modulo `2^n`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fabric::{Configuration, Fabric, FabricEval};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Initial,
    Configured,
    User,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeState {
    Active,
    Inactive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TapState {
    Bound,
    Unbound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineState {
    On,
    Off,
    Undriven,
}

impl LineState {
    fn from_bit(b: bool) -> Self {
        if b {
            LineState::On
        } else {
            LineState::Off
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeView {
    pub id: usize,
    pub state: NodeState,
}

/// `S_0..S_n`; `S_0` is the inverted `T_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TapView {
    pub name: String,
    pub state: TapState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputView {
    pub name: String,
    pub index_set: BTreeSet<usize>,
    pub state: LineState,
}

/// Everything a front end needs to draw the fabric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RenderModel {
    pub mode: Mode,
    pub n: usize,
    pub input: Option<Word>,
    pub nodes: Vec<NodeView>,
    pub taps: Vec<TapView>,
    pub outputs: Vec<OutputView>,
}

impl RenderModel {
    pub fn output(&self, name: &str) -> Option<LineState> {
        self.outputs.iter().find(|o| o.name == name).map(|o| o.state)
    }

    pub fn active_nodes(&self) -> usize {
        self.nodes.iter().filter(|n| n.state == NodeState::Active).count()
    }

    /// `O1=1 O2=0`, or `O1=- O2=-` when nothing is applied.
    pub fn outputs_line(&self) -> String {
        let bit = |s: LineState| match s {
            LineState::On => "1",
            LineState::Off => "0",
            LineState::Undriven => "-",
        };
        self.outputs.iter().map(|o| format!("{}={}", o.name, bit(o.state))).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    fabric: Arc<Fabric>,
    mode: Mode,
    config: Option<Arc<Configuration>>,
    cursor: Option<u64>,
    last_result: Option<FabricEval>,
}

impl Session {
    pub fn start(fabric: Arc<Fabric>) -> Self {
        Session { fabric, mode: Mode::Initial, config: None, cursor: None, last_result: None }
    }

    /// Starts a session on the configuration's fabric and loads it.
    pub fn with_config(config: Arc<Configuration>) -> Self {
        let mut s = Session::start(config.fabric().clone());
        s.load_config(config).expect("same fabric");
        s
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn fabric(&self) -> &Arc<Fabric> {
        &self.fabric
    }

    pub fn config(&self) -> Option<&Arc<Configuration>> {
        self.config.as_ref()
    }

    pub fn cursor(&self) -> Option<u64> {
        self.cursor
    }

    pub fn last_result(&self) -> Option<&FabricEval> {
        self.last_result.as_ref()
    }

    fn size(&self) -> u64 {
        1 << self.fabric.n()
    }

    pub fn load_config(&mut self, config: impl Into<Arc<Configuration>>) -> Result<RenderModel> {
        let config = config.into();
        let f = config.fabric();
        if f.n() != self.fabric.n() || f.realization() != self.fabric.realization() {
            return Err(Error::ConfigMismatch(format!(
                "configuration is for a {}-input {} fabric, session has a {}-input {} fabric",
                f.n(),
                f.realization(),
                self.fabric.n(),
                self.fabric.realization()
            )));
        }
        self.config = Some(config);
        self.mode = Mode::Configured;
        self.cursor = None;
        self.last_result = None;
        Ok(self.snapshot())
    }

    fn go(&mut self, index: u64) -> Result<RenderModel> {
        let config = self.config.as_ref().ok_or(Error::NotConfigured)?;
        let eval = config.eval(&Word::from_index(index, self.fabric.n()))?;
        self.cursor = Some(index);
        self.last_result = Some(eval);
        self.mode = Mode::User;
        Ok(self.snapshot())
    }

    pub fn apply_input(&mut self, input: &Word) -> Result<RenderModel> {
        if self.config.is_none() {
            return Err(Error::NotConfigured);
        }
        if input.width() != self.fabric.n() {
            return Err(Error::WidthError { expected: self.fabric.n(), actual: input.width() });
        }
        self.go(input.index())
    }

    /// Binary increment; from configuration mode, the first input.
    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Result<RenderModel> {
        let target = match self.cursor {
            Some(c) => (c + 1) % self.size(),
            None => 0,
        };
        self.go(target)
    }

    /// Binary decrement; from configuration mode, the first input.
    pub fn prev(&mut self) -> Result<RenderModel> {
        let target = match self.cursor {
            Some(c) => (c + self.size() - 1) % self.size(),
            None => 0,
        };
        self.go(target)
    }

    /// Drops the configuration and returns to the initial mode.
    pub fn reset(&mut self) -> RenderModel {
        self.mode = Mode::Initial;
        self.config = None;
        self.cursor = None;
        self.last_result = None;
        self.snapshot()
    }

    pub fn snapshot(&self) -> RenderModel {
        let n = self.fabric.n();
        let mut nodes: Vec<NodeView> =
            self.fabric.nodes().iter().map(|nd| NodeView { id: nd.id, state: NodeState::Inactive }).collect();
        let mut taps: Vec<TapView> =
            (0..=n).map(|k| TapView { name: format!("S{k}"), state: TapState::Unbound }).collect();
        let mut outputs = Vec::new();
        if let Some(config) = &self.config {
            for (view, active) in nodes.iter_mut().zip(config.active_nodes()) {
                if active {
                    view.state = NodeState::Active;
                }
            }
            for b in config.bindings() {
                for &k in &b.index_set {
                    taps[k].state = TapState::Bound;
                }
                let state = match &self.last_result {
                    Some(r) => LineState::from_bit(r.output(&b.name).expect("bound output is evaluated")),
                    None => LineState::Undriven,
                };
                outputs.push(OutputView { name: b.name.clone(), index_set: b.index_set.clone(), state });
            }
        }
        RenderModel {
            mode: self.mode,
            n,
            input: self.cursor.map(|c| Word::from_index(c, n)),
            nodes,
            taps,
            outputs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fabric::{build, Realization};

    fn rd32() -> Arc<Configuration> {
        let f = Arc::new(build(3, Realization::Kerntopf).unwrap());
        let cfg = Configuration::new(
            f,
            vec![("O1".into(), BTreeSet::from([1, 3])), ("O2".into(), BTreeSet::from([2, 3]))],
        )
        .unwrap();
        Arc::new(cfg)
    }

    #[test]
    fn initial_mode_is_blank() {
        let s = Session::start(Arc::new(build(3, Realization::Kerntopf).unwrap()));
        let r = s.snapshot();
        assert_eq!(r.mode, Mode::Initial);
        assert_eq!(r.active_nodes(), 0);
        assert!(r.taps.iter().all(|t| t.state == TapState::Unbound));
        assert!(r.outputs.is_empty());
        assert!(r.input.is_none());
    }

    #[test]
    fn configured_outputs_are_undriven() {
        let r = Session::with_config(rd32()).snapshot();
        assert_eq!(r.mode, Mode::Configured);
        assert_eq!(r.outputs.len(), 2);
        assert!(r.outputs.iter().all(|o| o.state == LineState::Undriven));
        let bound: Vec<_> = r.taps.iter().filter(|t| t.state == TapState::Bound).map(|t| t.name.as_str()).collect();
        assert_eq!(bound, ["S1", "S2", "S3"]);
    }

    #[test]
    fn apply_100() {
        let mut s = Session::with_config(rd32());
        let r = s.apply_input(&"100".parse().unwrap()).unwrap();
        assert_eq!(r.mode, Mode::User);
        assert_eq!(r.output("O1"), Some(LineState::On));
        assert_eq!(r.output("O2"), Some(LineState::Off));
        assert_eq!(r.outputs_line(), "O1=1 O2=0");
        assert!(matches!(s.apply_input(&"10".parse().unwrap()), Err(Error::WidthError { .. })));
    }

    #[test]
    fn stepping_wraps() {
        let mut s = Session::with_config(rd32());
        s.apply_input(&"000".parse().unwrap()).unwrap();
        assert_eq!(s.next().unwrap().input.unwrap().to_string(), "001");
        s.prev().unwrap();
        assert_eq!(s.prev().unwrap().input.unwrap().to_string(), "111");
    }

    #[test]
    fn reset_and_mismatch() {
        let mut s = Session::with_config(rd32());
        s.next().unwrap();
        let r = s.reset();
        assert_eq!(r.mode, Mode::Initial);
        assert!(matches!(s.next(), Err(Error::NotConfigured)));
        let f4 = Arc::new(build(4, Realization::Kerntopf).unwrap());
        assert!(matches!(s.load_config(f4.unconfigured()), Err(Error::ConfigMismatch(_))));
    }
}
