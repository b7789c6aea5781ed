use thiserror::Error;

use crate::io::FormatError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("gate too wide: {requested} exceeds the cap of {cap}")]
    GateTooWide { requested: usize, cap: usize },
    #[error("mapping of `{name}` is not a permutation: outputs of {first} and {second} collide")]
    NotBijective { name: String, first: u32, second: u32 },
    #[error("width mismatch: expected {expected} bits, got {actual}")]
    WidthError { expected: usize, actual: usize },
    #[error("line count {requested} outside 1..={max}")]
    BadWidth { requested: usize, max: usize },
    #[error("slot {slot}: line {line} is already used by another gate")]
    SlotConflict { slot: usize, line: usize },
    #[error("line {0} appears twice in the pin list")]
    PinClash(usize),
    #[error("line {line} out of range for a {width}-line circuit")]
    LineOutOfRange { line: usize, width: usize },
    #[error("gate `{gate}` takes {expected} pins, got {actual}")]
    PinCount { gate: String, expected: usize, actual: usize },
    #[error("{width} lines exceed the enumeration cap of {cap}")]
    TooWide { width: usize, cap: usize },
    #[error("table has no primary outputs")]
    NoOutputs,
    #[error("malformed truth table: {0}")]
    MalformedTable(String),
    #[error("output `{0}` is not totally symmetric")]
    NotSymmetric(String),
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("index {index} out of range for a {n}-input fabric")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("session has no configuration loaded")]
    NotConfigured,
    #[error(transparent)]
    Format(#[from] FormatError),
}

impl Error {
    /// Stable machine-readable code used by the CLI and the server.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownGate(_) => "UnknownGate",
            Error::GateTooWide { .. } => "GateTooWide",
            Error::NotBijective { .. } => "NotBijective",
            Error::WidthError { .. } => "WidthError",
            Error::BadWidth { .. } => "BadWidth",
            Error::SlotConflict { .. } => "SlotConflict",
            Error::PinClash(_) => "PinClash",
            Error::LineOutOfRange { .. } => "LineOutOfRange",
            Error::PinCount { .. } => "PinCount",
            Error::TooWide { .. } => "TooWide",
            Error::NoOutputs => "NoOutputs",
            Error::MalformedTable(_) => "MalformedTable",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::ConfigMismatch(_) => "ConfigMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotConfigured => "NotConfigured",
            Error::Format(_) => "FormatError",
        }
    }
}
