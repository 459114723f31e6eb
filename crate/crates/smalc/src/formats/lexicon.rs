use std::path::Path;

use smalc_core::grammar::Lexicon;
use smalc_core::syntax::{parse_formula, Signature};

use super::{content_lines, read_file, signature::load_signature, FormatError};

/// Parses `target <formula>` and `word <token> : <formula>` lines. A
/// `signature <path>` line is resolved by `load_signature`, which receives the
/// path as written; without one the signature is empty.
pub fn parse_lexicon(
    text: &str,
    mut load_signature: impl FnMut(&str) -> Result<Signature, FormatError>,
) -> Result<Lexicon, FormatError> {
    let mut lex: Option<Lexicon> = None;
    for (n, line) in content_lines(text) {
        let line = line.trim();
        let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kind {
            "signature" => {
                if lex.is_some() {
                    return Err(FormatError::at(n, "`signature` must come before every other directive"));
                }
                let sig = load_signature(rest).map_err(|e| match e.file {
                    Some(_) => e,
                    None => FormatError::at(n, e.message),
                })?;
                lex = Some(Lexicon::new(sig));
            }
            "target" => {
                let f = parse_formula(rest).map_err(|e| FormatError::at(n, e.to_string()))?;
                lex.get_or_insert_with(|| Lexicon::new(Signature::empty()))
                    .set_target(f)
                    .map_err(|e| FormatError::at(n, e.to_string()))?;
            }
            "word" => {
                let (word, ty) = rest
                    .split_once(':')
                    .ok_or_else(|| FormatError::at(n, "expected `word <token> : <formula>`"))?;
                let word = word.trim();
                if word.is_empty() || word.contains(char::is_whitespace) {
                    return Err(FormatError::at(n, format!("invalid token `{}`", word)));
                }
                let f = parse_formula(ty.trim()).map_err(|e| FormatError::at(n, e.to_string()))?;
                lex.get_or_insert_with(|| Lexicon::new(Signature::empty()))
                    .add(word, f)
                    .map_err(|e| FormatError::at(n, e.to_string()))?;
            }
            other => return Err(FormatError::at(n, format!("unknown directive `{}`", other))),
        }
    }
    Ok(lex.unwrap_or_else(|| Lexicon::new(Signature::empty())))
}

/// Loads a lexicon; its `signature` path is relative to the lexicon file.
pub fn load_lexicon(path: &Path) -> Result<Lexicon, FormatError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_lexicon(&read_file(path)?, |p| load_signature(&dir.join(p))).map_err(|e| e.in_file(path))
}
