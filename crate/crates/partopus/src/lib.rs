//! File formats and the command-line front end for `partopus-core`.

pub mod cli;
pub mod json;
pub mod model_file;

use partopus_core::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}", render_parse(input, error))]
    Parse { input: String, error: ParseError },
    #[error("bad input: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] partopus_core::Error),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn parse(input: &str, error: ParseError) -> Self {
        Error::Parse { input: input.into(), error }
    }
}

/// The message plus the input with a caret under the failing offset.
fn render_parse(input: &str, e: &ParseError) -> String {
    let col = input.get(..e.position.min(input.len())).map_or(e.position, |s| s.chars().count());
    format!("parse error at offset {}: {}\n  {input}\n  {}^", e.position, e.message, " ".repeat(col))
}
