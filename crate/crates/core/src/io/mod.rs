//! Text formats: native circuits (`.rcir`), the benchmark `.real` subset,
//! truth tables (`.rtab`) and JSON fabric/configuration documents.

use std::fmt;

mod doc;
mod rcir;
mod real;
mod rtab;

pub use doc::{emit_fabric_doc, fabric_doc, parse_fabric_doc, BindingDoc, FabricDoc, NodeDoc, TapsDoc};
pub use rcir::{emit_rcir, parse_rcir};
pub use real::{emit_real, parse_real};
pub use rtab::{emit_rtab, parse_rtab};

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Option<String>,
}

impl FormatError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError { line, column, message: message.into(), expected: None }
    }

    pub fn expecting(mut self, hint: impl Into<String>) -> Self {
        self.expected = Some(hint.into());
        self
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if let Some(e) = &self.expected {
            write!(f, " (expected {e})")?;
        }
        Ok(())
    }
}

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits `text` into non-empty lines of tokens, dropping `#` comments.
fn tokenize(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push(Token { text: &content[s..pos], column: s + 1 });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

fn parse_num(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.text.parse().map_err(|_| {
        FormatError::new(line, tok.column, format!("invalid {what} `{}`", tok.text)).expecting(what)
    })
}

fn parse_bit(tok: &Token<'_>, line: usize) -> Result<bool, FormatError> {
    match tok.text {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(FormatError::new(line, tok.column, format!("invalid bit `{other}`")).expecting("0 or 1")),
    }
}
