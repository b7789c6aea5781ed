//! Reversible programmable gate array toolkit.
//!
//! Gates and circuits ([`gate`], [`circuit`]), simulation and truth tables
//! ([`sim`], [`table`]), symmetry analysis ([`symmetry`]), MAX/MIN fabrics
//! and their configuration ([`fabric`]), the interactive [`session`], text
//! formats ([`io`]), plus the command-line front end and HTTP server.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod fabric;
pub mod gate;
pub mod io;
pub mod session;
pub mod server;
pub mod sim;
pub mod symmetry;
pub mod table;
pub mod word;

pub use circuit::{Circuit, InputRole, OutputRole, Roles};
pub use error::{Error, Result};
pub use fabric::{build, configure, Configuration, Fabric, FabricEval, Realization};
pub use gate::GateDef;
pub use session::{RenderModel, Session};
pub use symmetry::{analyze, SymmetryReport};
pub use table::{IrreversibleTruthTable, ReversibleTruthTable};
pub use word::Word;
