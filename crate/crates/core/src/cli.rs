//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or usage error, 3 domain
//! error (for example an asymmetric table handed to `configure`).
//!
//! File kinds are chosen by extension: `.rcir` and `.real` circuits, `.rtab`
//! truth tables, `.json` fabric or configuration documents.
//!
//! `run --trace` prints one block per stage:
//!
//! ```text
//! input 100
//! stage inputs
//!   1000000000
//! stage maxmin level 0
//!   ...
//! outputs O1=1 O2=0
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::Error;
use crate::fabric::{build, configure, Configuration, FabricEval, OutputValue, Realization};
use crate::io::{self, FormatError};
use crate::sim;
use crate::symmetry::analyze;
use crate::table::{metrics, IrreversibleTruthTable};
use crate::word::Word;

#[derive(Debug, Parser)]
#[command(name = "rpga", version, about = "Reversible programmable gate array toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the reversible and projected truth tables of a circuit.
    Tt {
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Symmetry report for a circuit or truth table.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Emit a fabric document.
    Fabric {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "kerntopf")]
        realization: Realization,
    },
    /// Configure a fabric from a truth table or circuit; emits the configuration document.
    Configure {
        table: PathBuf,
        #[arg(long)]
        fabric: PathBuf,
    },
    /// Evaluate a configuration (or circuit) on one input, all inputs, or with a stage trace.
    Run {
        file: PathBuf,
        #[arg(long, conflicts_with = "all")]
        input: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Gate count, constants, garbage, levels and quantum cost.
    Metrics {
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check that a circuit realizes a bijection.
    Check {
        circuit: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Start the HTTP server.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Io(String),
    Usage(String),
    Parse(String),
    Domain(Error),
}

impl Failure {
    fn parse(path: &Path, e: FormatError) -> Self {
        Failure::Parse(format!("{}:{e}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(f) => Failure::Parse(f.to_string()),
            other => Failure::Domain(other),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    let mut err = String::new();
    let code = match dispatch(cli.command, &mut out, &mut err) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Io(m) => (1, m),
                Failure::Usage(m) => (2, m),
                Failure::Parse(m) => (2, format!("parse error: {m}")),
                Failure::Domain(e) => (3, format!("{}: {e}", e.code())),
            };
            writeln!(err, "error: {msg}").unwrap();
            code
        }
    };
    Outcome { code, stdout: out, stderr: err }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn load_circuit(path: &Path) -> Res<Circuit> {
    let text = read(path)?;
    match extension(path) {
        "rcir" => io::parse_rcir(&text),
        "real" => io::parse_real(&text),
        _ => return Err(Failure::Usage(format!("{}: expected a .rcir or .real circuit", path.display()))),
    }
    .map_err(|e| Failure::parse(path, e))
}

/// A truth table, either read directly or projected from a circuit.
fn load_table(path: &Path) -> Res<IrreversibleTruthTable> {
    if extension(path) == "rtab" {
        let text = read(path)?;
        return io::parse_rtab(&text).map_err(|e| Failure::parse(path, e));
    }
    Ok(sim::projected_table(&load_circuit(path)?)?)
}

fn load_config(path: &Path) -> Res<Configuration> {
    if extension(path) != "json" {
        return Err(Failure::Usage(format!("{}: expected a .json document", path.display())));
    }
    let text = read(path)?;
    io::parse_fabric_doc(&text).map_err(|e| Failure::parse(path, e))
}

fn parse_word(s: &str, width: usize) -> Res<Word> {
    let w: Word = s.parse().map_err(|e| Failure::Usage(format!("--input: {e}")))?;
    if w.width() != width {
        return Err(Error::WidthError { expected: width, actual: w.width() }.into());
    }
    Ok(w)
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn outputs_line(outputs: &[OutputValue]) -> String {
    outputs.iter().map(|o| format!("{}={}", o.name, o.value as u8)).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct Row {
    input: Word,
    outputs: Vec<OutputValue>,
}

fn dispatch(command: Command, out: &mut String, err: &mut String) -> Res<i32> {
    match command {
        Command::Tt { circuit, format } => {
            let c = load_circuit(&circuit)?;
            let full = sim::full_table(&c)?;
            let projected = crate::table::project(&full, &c.roles())?;
            match format {
                Format::Text => {
                    let names: Vec<&str> = c.lines().iter().map(|l| l.name.as_str()).collect();
                    writeln!(out, "reversible {}", names.join(" ")).unwrap();
                    for (i, o) in full.rows() {
                        writeln!(out, "{i} -> {o}").unwrap();
                    }
                    writeln!(out).unwrap();
                    out.push_str(&io::emit_rtab(&projected));
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Tables {
                        reversible: Vec<(Word, Word)>,
                        projected: IrreversibleTruthTable,
                    }
                    out.push_str(&json(&Tables { reversible: full.rows().collect(), projected }));
                }
            }
        }
        Command::Analyze { file, format } => {
            let report = analyze(&load_table(&file)?);
            match format {
                Format::Text => out.push_str(&report.render_text()),
                Format::Json => out.push_str(&json(&report)),
            }
        }
        Command::Fabric { n, realization } => {
            let fabric = Arc::new(build(n, realization)?);
            out.push_str(&io::emit_fabric_doc(&fabric.unconfigured()));
        }
        Command::Configure { table, fabric } => {
            let base = load_config(&fabric)?;
            let report = analyze(&load_table(&table)?);
            let config = configure(base.fabric(), &report)?;
            out.push_str(&io::emit_fabric_doc(&config));
        }
        Command::Run { file, input, all, trace, format } => {
            if extension(&file) == "json" {
                run_config(&load_config(&file)?, input, all, trace, format, out)?;
            } else {
                run_circuit(&load_circuit(&file)?, input, all, trace, format, out)?;
            }
        }
        Command::Metrics { circuit, format } => {
            let m = metrics(&load_circuit(&circuit)?);
            if !m.unpriced_gates.is_empty() {
                writeln!(err, "warning: no cost for {}; counted as 1", m.unpriced_gates.join(", ")).unwrap();
            }
            match format {
                Format::Text => {
                    writeln!(out, "N  {}", m.gate_count).unwrap();
                    writeln!(out, "CI {}", m.constant_inputs).unwrap();
                    writeln!(out, "GO {}", m.garbage_outputs).unwrap();
                    writeln!(out, "GL {}", m.gate_levels).unwrap();
                    writeln!(out, "QC {}", m.quantum_cost).unwrap();
                }
                Format::Json => out.push_str(&json(&m)),
            }
        }
        Command::Check { circuit, format } => {
            let c = load_circuit(&circuit)?;
            let verdict = sim::check_bijective(&c)?;
            match (format, &verdict) {
                (Format::Json, _) => out.push_str(&json(&verdict)),
                (Format::Text, sim::Bijectivity::Permutation { .. }) => {
                    writeln!(out, "bijective ({} lines)", c.width()).unwrap()
                }
                (Format::Text, sim::Bijectivity::NotReversible { first, second, output }) => {
                    let w = |x: u64| Word::from_index(x, c.width());
                    writeln!(out, "not reversible: {} and {} both map to {}", w(*first), w(*second), w(*output))
                        .unwrap()
                }
            }
            if !verdict.is_bijective() {
                return Ok(3);
            }
        }
        Command::Serve { port } => {
            crate::server::serve(port).map_err(|e| Failure::Io(format!("serve: {e}")))?;
        }
    }
    Ok(0)
}

fn inputs_for(input: Option<String>, all: bool, trace: bool, n: usize) -> Res<Vec<Word>> {
    match input {
        Some(s) => Ok(vec![parse_word(&s, n)?]),
        None if all || trace => Ok((0..1u64 << n).map(|i| Word::from_index(i, n)).collect()),
        None => Err(Failure::Usage("run needs --input <bits>, --all or --trace".into())),
    }
}

fn run_config(
    config: &Configuration,
    input: Option<String>,
    all: bool,
    trace: bool,
    format: Format,
    out: &mut String,
) -> Res<()> {
    let single = input.is_some() && !trace;
    let evals = inputs_for(input, all, trace, config.n())?
        .iter()
        .map(|w| config.eval(w))
        .collect::<crate::Result<Vec<FabricEval>>>()?;
    match (format, trace) {
        (Format::Json, true) => out.push_str(&json(&evals)),
        (Format::Json, false) => {
            let rows: Vec<Row> =
                evals.into_iter().map(|e| Row { input: e.input, outputs: e.outputs }).collect();
            if single {
                out.push_str(&json(&rows[0]));
            } else {
                out.push_str(&json(&rows));
            }
        }
        (Format::Text, true) => {
            for e in &evals {
                writeln!(out, "input {}", e.input).unwrap();
                for s in &e.stages {
                    writeln!(out, "stage {}\n  {}", s.label, s.lines).unwrap();
                }
                writeln!(out, "outputs {}", outputs_line(&e.outputs)).unwrap();
            }
        }
        (Format::Text, false) if single => writeln!(out, "{}", outputs_line(&evals[0].outputs)).unwrap(),
        (Format::Text, false) => {
            for e in &evals {
                writeln!(out, "{} {}", e.input, outputs_line(&e.outputs)).unwrap();
            }
        }
    }
    Ok(())
}

fn run_circuit(
    c: &Circuit,
    input: Option<String>,
    all: bool,
    trace: bool,
    format: Format,
    out: &mut String,
) -> Res<()> {
    let single = input.is_some() && !trace;
    let inputs = inputs_for(input, all, trace, c.free_inputs())?;
    let named = |w: &Word| -> Vec<OutputValue> {
        c.lines()
            .iter()
            .filter_map(|l| match &l.output {
                crate::OutputRole::Primary(name) => Some(OutputValue { name: name.clone(), value: w.bit(l.index) }),
                crate::OutputRole::Garbage => None,
            })
            .collect()
    };
    let mut rows = Vec::new();
    let mut traces = Vec::new();
    for free in inputs {
        let t = sim::trace(c, &sim::line_input(c, &free)?)?;
        rows.push(Row { input: free, outputs: named(t.output()) });
        traces.push(t);
    }
    match (format, trace) {
        (Format::Json, true) => out.push_str(&json(&traces)),
        (Format::Json, false) if single => out.push_str(&json(&rows[0])),
        (Format::Json, false) => out.push_str(&json(&rows)),
        (Format::Text, true) => {
            for (row, t) in rows.iter().zip(&traces) {
                writeln!(out, "input {}", row.input).unwrap();
                for s in &t.snapshots {
                    match s.slot {
                        None => writeln!(out, "stage inputs\n  {}", s.lines).unwrap(),
                        Some(k) => writeln!(out, "stage slot {k}\n  {}", s.lines).unwrap(),
                    }
                }
                writeln!(out, "outputs {}", outputs_line(&row.outputs)).unwrap();
            }
        }
        (Format::Text, false) if single => writeln!(out, "{}", outputs_line(&rows[0].outputs)).unwrap(),
        (Format::Text, false) => {
            for row in &rows {
                writeln!(out, "{} {}", row.input, outputs_line(&row.outputs)).unwrap();
            }
        }
    }
    Ok(())
}
