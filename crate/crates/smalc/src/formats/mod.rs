//! Line-oriented text formats. `#` starts a comment everywhere.

mod derivation;
mod lexicon;
mod model;
mod signature;

use std::fmt;
use std::path::Path;

pub use derivation::{parse_derivation, print_derivation};
pub use lexicon::{load_lexicon, parse_lexicon};
pub use model::{
    parse_conucleus, parse_model, parse_quantale, print_conucleus, print_model, print_quantale,
    ModelFile,
};
pub use signature::{load_signature, parse_signature, print_signature};

/// An error tied to a line of an input file.
#[derive(Debug, thiserror::Error)]
pub struct FormatError {
    pub file: Option<String>,
    /// 1-based; 0 when the error concerns the whole file.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{}:", file)?;
        }
        if self.line > 0 {
            write!(f, "{}: ", self.line)?;
        } else if self.file.is_some() {
            f.write_str(" ")?;
        }
        f.write_str(&self.message)
    }
}

impl FormatError {
    pub fn at(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            file: None,
            line,
            message: message.into(),
        }
    }

    pub fn in_file(mut self, path: &Path) -> Self {
        self.file.get_or_insert_with(|| path.display().to_string());
        self
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim_end();
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

/// Reads a file, tagging IO errors with its path.
pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError {
        file: Some(path.display().to_string()),
        line: 0,
        message: e.to_string(),
    })
}
