use std::fmt::Write;
use std::path::Path;

use smalc_core::syntax::{is_identifier, validate_signature, SetName, Signature, SignatureSpec};

use super::{content_lines, read_file, FormatError};

/// Parses `index s`, `order s <= t` and `set W = s,t` lines.
pub fn parse_signature(text: &str) -> Result<Signature, FormatError> {
    let mut spec = SignatureSpec::default();
    for (n, line) in content_lines(text) {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("index") => {
                let name = words.next().ok_or_else(|| FormatError::at(n, "expected an index name"))?;
                if words.next().is_some() {
                    return Err(FormatError::at(n, "trailing input after index name"));
                }
                spec.indices.push(name.to_string());
            }
            Some("order") => {
                let parts: Vec<&str> = words.collect();
                match parts[..] {
                    [s, "<=", t] => spec.order.push((s.to_string(), t.to_string())),
                    _ => return Err(FormatError::at(n, "expected `order s <= t`")),
                }
            }
            Some("set") => {
                let rest = line.trim_start()["set".len()..].trim();
                let (name, members) = rest
                    .split_once('=')
                    .ok_or_else(|| FormatError::at(n, "expected `set X = a,b`"))?;
                let members: Vec<String> = members
                    .split(',')
                    .map(str::trim)
                    .filter(|m| !m.is_empty())
                    .map(str::to_string)
                    .collect();
                if let Some(bad) = members.iter().find(|m| !is_identifier(m)) {
                    return Err(FormatError::at(n, format!("invalid index name `{}`", bad)));
                }
                let target = match name.trim() {
                    "W" => &mut spec.weakening,
                    "C" => &mut spec.contraction,
                    "E" => &mut spec.exchange,
                    other => return Err(FormatError::at(n, format!("unknown set `{}`, expected W, C or E", other))),
                };
                target.extend(members);
            }
            Some(other) => return Err(FormatError::at(n, format!("unknown directive `{}`", other))),
            None => {}
        }
    }
    validate_signature(&spec).map_err(|errs| {
        let msg: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
        FormatError::at(0, msg.join("; "))
    })
}

pub fn load_signature(path: &Path) -> Result<Signature, FormatError> {
    parse_signature(&read_file(path)?).map_err(|e| e.in_file(path))
}

/// Prints the order as its non-reflexive closure pairs.
pub fn print_signature(sig: &Signature) -> String {
    let spec = sig.to_spec();
    let mut out = String::new();
    for s in &spec.indices {
        writeln!(out, "index {}", s).unwrap();
    }
    for (s, t) in &spec.order {
        writeln!(out, "order {} <= {}", s, t).unwrap();
    }
    for (name, list) in [
        (SetName::W, &spec.weakening),
        (SetName::C, &spec.contraction),
        (SetName::E, &spec.exchange),
    ] {
        writeln!(out, "set {} = {}", name, list.join(",")).unwrap();
    }
    out
}
