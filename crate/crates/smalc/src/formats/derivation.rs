use smalc_core::calculus::{Derivation, RuleId};
use smalc_core::syntax::{parse_sequent, SubexpIndex};

use super::{content_lines, FormatError};

pub fn print_derivation(d: &Derivation) -> String {
    d.to_string()
}

struct Node {
    depth: usize,
    line: usize,
    derivation: Derivation,
}

/// Parses the indented tree printed by [`print_derivation`]: one node per
/// line, `rule [index] :: sequent`, premises indented two spaces deeper than
/// their conclusion.
pub fn parse_derivation(text: &str) -> Result<Derivation, FormatError> {
    let mut nodes = Vec::new();
    for (n, line) in content_lines(text) {
        let indent = line.len() - line.trim_start_matches(' ').len();
        if indent % 2 != 0 {
            return Err(FormatError::at(n, "indentation must be a multiple of two spaces"));
        }
        let (head, seq) = line
            .split_once("::")
            .ok_or_else(|| FormatError::at(n, "expected `rule [index] :: sequent`"))?;
        let mut words = head.split_whitespace();
        let rule: RuleId = words
            .next()
            .ok_or_else(|| FormatError::at(n, "missing rule name"))?
            .parse()
            .map_err(|e: smalc_core::calculus::UnknownName| FormatError::at(n, format!("unknown rule `{}`", e.0)))?;
        let index = words.next().map(SubexpIndex::new);
        if words.next().is_some() {
            return Err(FormatError::at(n, "trailing input before `::`"));
        }
        let conclusion = parse_sequent(seq.trim()).map_err(|e| FormatError::at(n, e.to_string()))?;
        nodes.push(Node {
            depth: indent / 2,
            line: n,
            derivation: Derivation {
                conclusion,
                rule,
                index,
                premises: Vec::new(),
            },
        });
    }
    if nodes.is_empty() {
        return Err(FormatError::at(0, "empty derivation"));
    }
    if nodes[0].depth != 0 {
        return Err(FormatError::at(nodes[0].line, "the root must not be indented"));
    }
    // Fold children into parents from the bottom up.
    let mut stack: Vec<Node> = Vec::new();
    for node in nodes {
        if let Some(top) = stack.last() {
            if node.depth > top.depth + 1 {
                return Err(FormatError::at(node.line, "indented more than one level below its parent"));
            }
        }
        if node.depth == 0 && !stack.is_empty() {
            return Err(FormatError::at(node.line, "more than one root"));
        }
        while stack.last().is_some_and(|t| t.depth >= node.depth) {
            close(&mut stack);
        }
        stack.push(node);
    }
    while stack.len() > 1 {
        close(&mut stack);
    }
    Ok(stack.pop().unwrap().derivation)
}

fn close(stack: &mut Vec<Node>) {
    let child = stack.pop().unwrap();
    stack.last_mut().unwrap().derivation.premises.push(child.derivation);
}
