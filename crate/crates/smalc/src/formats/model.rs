use std::fmt::Write;
use std::sync::Arc;

use smalc_core::quantale::{validate_quantale, ConucleusMap, Elem, FiniteQuantale, RawQuantale};
use smalc_core::semantics::{from_assignment, SubexpInterpretation, Valuation};
use smalc_core::syntax::{is_identifier, Signature};

use super::{content_lines, FormatError};

/// `quantale n=<size> unital=<elem|none>`, then `leq` with `n` rows of bits,
/// then `mult` with `n` rows of element indices.
pub fn print_quantale(q: &FiniteQuantale) -> String {
    let raw = q.to_raw();
    let mut out = String::new();
    write!(out, "quantale n={} unital=", q.size()).unwrap();
    match q.unit() {
        Some(e) => writeln!(out, "{}", e).unwrap(),
        None => out.push_str("none\n"),
    }
    out.push_str("leq\n");
    for row in &raw.leq {
        out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out.push_str("mult\n");
    for row in &raw.mult {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn parse_elem(s: &str, n: usize, line: usize) -> Result<Elem, FormatError> {
    let v: Elem = s
        .parse()
        .map_err(|_| FormatError::at(line, format!("expected an element index, found `{}`", s)))?;
    if v >= n {
        return Err(FormatError::at(line, format!("element {} out of range 0..{}", v, n)));
    }
    Ok(v)
}

fn header_field<'a>(field: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, FormatError> {
    field
        .and_then(|f| f.strip_prefix(key))
        .and_then(|f| f.strip_prefix('='))
        .ok_or_else(|| FormatError::at(line, format!("expected `{}=` in the quantale header", key)))
}

/// Parses a quantale block from `lines`, returning it and the lines after it.
fn quantale_block<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<FiniteQuantale, FormatError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hn, header) = lines.next().ok_or_else(|| FormatError::at(0, "empty quantale file"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("quantale") {
        return Err(FormatError::at(hn, "expected `quantale n=<size> unital=<elem|none>`"));
    }
    let n: usize = header_field(words.next(), "n", hn)?
        .parse()
        .map_err(|_| FormatError::at(hn, "size is not a number"))?;
    if n == 0 {
        return Err(FormatError::at(hn, "size must be positive"));
    }
    let unit = match header_field(words.next(), "unital", hn)? {
        "none" => None,
        s => Some(parse_elem(s, n, hn)?),
    };
    let mut expect = |word: &str| match lines.next() {
        Some((_, l)) if l.trim() == word => Ok(()),
        Some((k, _)) => Err(FormatError::at(k, format!("expected `{}`", word))),
        None => Err(FormatError::at(0, format!("missing `{}` section", word))),
    };
    expect("leq")?;
    let mut leq = Vec::with_capacity(n);
    for _ in 0..n {
        let (k, l) = lines.next().ok_or_else(|| FormatError::at(0, "too few `leq` rows"))?;
        let row: Vec<bool> = l
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(FormatError::at(k, format!("`leq` rows are bits, found `{}`", c))),
            })
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(FormatError::at(k, format!("`leq` row has {} bits, expected {}", row.len(), n)));
        }
        leq.push(row);
    }
    let mut expect = |word: &str| match lines.next() {
        Some((_, l)) if l.trim() == word => Ok(()),
        Some((k, _)) => Err(FormatError::at(k, format!("expected `{}`", word))),
        None => Err(FormatError::at(0, format!("missing `{}` section", word))),
    };
    expect("mult")?;
    let mut mult = Vec::with_capacity(n);
    for _ in 0..n {
        let (k, l) = lines.next().ok_or_else(|| FormatError::at(0, "too few `mult` rows"))?;
        let row: Vec<Elem> = l.split_whitespace().map(|s| parse_elem(s, n, k)).collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(FormatError::at(k, format!("`mult` row has {} entries, expected {}", row.len(), n)));
        }
        mult.push(row);
    }
    validate_quantale(&RawQuantale { leq, mult, unit }).map_err(|errs| {
        let msg: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
        FormatError::at(hn, msg.join("; "))
    })
}

pub fn parse_quantale(text: &str) -> Result<FiniteQuantale, FormatError> {
    let mut lines = content_lines(text).peekable();
    let q = quantale_block(&mut lines)?;
    if let Some((k, _)) = lines.next() {
        return Err(FormatError::at(k, "trailing input after the quantale"));
    }
    Ok(q)
}

pub fn print_conucleus(i: &ConucleusMap) -> String {
    format!("conucleus\n{}\n", i)
}

fn conucleus_line(q: &Arc<FiniteQuantale>, l: &str, k: usize) -> Result<ConucleusMap, FormatError> {
    let table = l
        .split_whitespace()
        .map(|s| parse_elem(s, q.size(), k))
        .collect::<Result<Vec<_>, _>>()?;
    ConucleusMap::new(q.clone(), table).map_err(|e| FormatError::at(k, e.to_string()))
}

/// `conucleus` followed by one line of `n` element indices.
pub fn parse_conucleus(q: &Arc<FiniteQuantale>, text: &str) -> Result<ConucleusMap, FormatError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, l)) if l.trim() == "conucleus" => {}
        Some((k, _)) => return Err(FormatError::at(k, "expected `conucleus`")),
        None => return Err(FormatError::at(0, "empty conucleus file")),
    }
    let (k, l) = lines.next().ok_or_else(|| FormatError::at(0, "missing conucleus table"))?;
    let i = conucleus_line(q, l, k)?;
    if let Some((k, _)) = lines.next() {
        return Err(FormatError::at(k, "trailing input after the conucleus"));
    }
    Ok(i)
}

/// A quantale with a subexponential interpretation and a valuation.
#[derive(Clone, Debug)]
pub struct ModelFile {
    pub model: SubexpInterpretation,
    pub valuation: Valuation,
}

/// Quantale block, then `sigma <index>=<table>` lines and
/// `valuation <atom>=<elem>` lines. Indices without a `sigma` line get the
/// identity conucleus.
pub fn print_model(model: &SubexpInterpretation, valuation: &Valuation) -> String {
    let mut out = print_quantale(model.quantale());
    let sig = model.signature();
    for s in 0..sig.len() {
        writeln!(out, "sigma {}={}", sig.name(s), model.sigma(s)).unwrap();
    }
    for (x, v) in valuation {
        writeln!(out, "valuation {}={}", x, v).unwrap();
    }
    out
}

pub fn parse_model(sig: &Signature, text: &str) -> Result<ModelFile, FormatError> {
    let mut lines = content_lines(text).peekable();
    let q = Arc::new(quantale_block(&mut lines)?);
    let mut conuclei: Vec<Option<ConucleusMap>> = vec![None; sig.len()];
    let mut valuation = Valuation::new();
    for (k, l) in lines {
        let l = l.trim();
        let (kind, rest) = l.split_once(' ').ok_or_else(|| FormatError::at(k, "expected `sigma` or `valuation`"))?;
        let (name, value) = rest
            .split_once('=')
            .ok_or_else(|| FormatError::at(k, "expected `name=value`"))?;
        let name = name.trim();
        match kind {
            "sigma" => {
                let s = sig
                    .lookup(name)
                    .ok_or_else(|| FormatError::at(k, format!("unknown subexponential index `{}`", name)))?;
                if conuclei[s].is_some() {
                    return Err(FormatError::at(k, format!("`{}` assigned twice", name)));
                }
                conuclei[s] = Some(conucleus_line(&q, value, k)?);
            }
            "valuation" => {
                if !is_identifier(name) {
                    return Err(FormatError::at(k, format!("invalid atom `{}`", name)));
                }
                let v = parse_elem(value.trim(), q.size(), k)?;
                if valuation.insert(name.to_string(), v).is_some() {
                    return Err(FormatError::at(k, format!("atom `{}` assigned twice", name)));
                }
            }
            other => return Err(FormatError::at(k, format!("unknown directive `{}`", other))),
        }
    }
    let conuclei = conuclei
        .into_iter()
        .map(|c| c.unwrap_or_else(|| ConucleusMap::identity(q.clone())))
        .collect();
    let model = from_assignment(&q, sig, conuclei).map_err(|e| FormatError::at(0, e.to_string()))?;
    Ok(ModelFile { model, valuation })
}
