//! Line-oriented text formats.
//!
//! Relation and partition files share a header:
//!
//! ```text
//! alphabet a b
//! bound 3
//! pair ab ba        # relation body
//! class aab aba baa # partition body; unlisted words are singletons
//! ```
//!
//! Semigroup tables use `elements <name>…` followed by `table` and one row
//! of element names per element. Letter maps are `map <symbol> <element>`
//! lines. `#` starts a comment everywhere.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::hom::{FiniteSemigroup, LetterMap};
use crate::relation::{PairRelation, Partition};
use crate::word::{Alphabet, Universe};

/// A parse failure, with the 1-based line it was found on when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct FormatError {
    pub line: Option<usize>,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, message: impl std::fmt::Display) -> Self {
        FormatError {
            line: Some(line),
            message: message.to_string(),
        }
    }

    fn whole(message: impl std::fmt::Display) -> Self {
        FormatError {
            line: None,
            message: message.to_string(),
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

/// Non-comment lines as `(line number, tokens)`.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// A parsed relation or partition file, words still unresolved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub alphabet: Option<Vec<String>>,
    pub bound: Option<usize>,
    pub pairs: Vec<(usize, String, String)>,
    pub classes: Vec<(usize, Vec<String>)>,
}

/// Universe after applying command-line overrides, with any mismatch warnings.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub universe: Arc<Universe>,
    pub warnings: Vec<String>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    for (line, toks) in tokens(text) {
        match toks[0] {
            "alphabet" => {
                if doc.alphabet.is_some() {
                    return Err(FormatError::at(line, "duplicate `alphabet` line"));
                }
                if toks.len() < 2 {
                    return Err(FormatError::at(
                        line,
                        "`alphabet` needs at least one symbol",
                    ));
                }
                doc.alphabet = Some(toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "bound" => {
                if doc.bound.is_some() {
                    return Err(FormatError::at(line, "duplicate `bound` line"));
                }
                let [_, value] = toks[..] else {
                    return Err(FormatError::at(line, "`bound` takes exactly one value"));
                };
                let value: usize = value
                    .parse()
                    .map_err(|_| FormatError::at(line, format!("invalid bound `{value}`")))?;
                doc.bound = Some(value);
            }
            "pair" => {
                let [_, u, v] = toks[..] else {
                    return Err(FormatError::at(line, "`pair` takes exactly two words"));
                };
                doc.pairs.push((line, u.to_string(), v.to_string()));
            }
            "class" => {
                if toks.len() < 2 {
                    return Err(FormatError::at(line, "`class` needs at least one word"));
                }
                doc.classes
                    .push((line, toks[1..].iter().map(|s| s.to_string()).collect()));
            }
            other => {
                return Err(FormatError::at(
                    line,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    if !doc.pairs.is_empty() && !doc.classes.is_empty() {
        let line = doc.pairs[0].0.max(doc.classes[0].0);
        return Err(FormatError::at(line, "file mixes `pair` and `class` lines"));
    }
    Ok(doc)
}

impl Document {
    pub fn is_partition(&self) -> bool {
        !self.classes.is_empty()
    }

    /// Builds the universe from the header; `alphabet` and `bound` override it.
    pub fn resolve(&self, alphabet: Option<&[String]>, bound: Option<usize>) -> Result<Resolved> {
        let mut warnings = Vec::new();
        let symbols = match (alphabet, &self.alphabet) {
            (Some(cli), Some(file)) => {
                if cli != file.as_slice() {
                    warnings.push(format!(
                        "command-line alphabet `{}` overrides file alphabet `{}`",
                        cli.join(" "),
                        file.join(" ")
                    ));
                }
                cli.to_vec()
            }
            (Some(cli), None) => cli.to_vec(),
            (None, Some(file)) => file.clone(),
            (None, None) => return Err(FormatError::whole("missing `alphabet` line")),
        };
        let bound = match (bound, self.bound) {
            (Some(cli), Some(file)) => {
                if cli != file {
                    warnings.push(format!(
                        "command-line bound {cli} overrides file bound {file}"
                    ));
                }
                cli
            }
            (Some(cli), None) => cli,
            (None, Some(file)) => file,
            (None, None) => return Err(FormatError::whole("missing `bound` line")),
        };
        let alphabet = Alphabet::new(symbols).map_err(FormatError::whole)?;
        let universe = Universe::new(Arc::new(alphabet), bound).map_err(FormatError::whole)?;
        Ok(Resolved { universe, warnings })
    }

    pub fn relation(&self, universe: &Arc<Universe>) -> Result<PairRelation> {
        if self.is_partition() {
            return Err(FormatError::at(
                self.classes[0].0,
                "expected `pair` lines, found `class`",
            ));
        }
        let mut rel = PairRelation::empty(universe.clone());
        for (line, u, v) in &self.pairs {
            let i = universe
                .parse_index(u)
                .map_err(|e| FormatError::at(*line, e))?;
            let j = universe
                .parse_index(v)
                .map_err(|e| FormatError::at(*line, e))?;
            rel.insert(i, j).map_err(|e| FormatError::at(*line, e))?;
        }
        Ok(rel)
    }

    pub fn partition(&self, universe: &Arc<Universe>) -> Result<Partition> {
        if !self.pairs.is_empty() {
            return Err(FormatError::at(
                self.pairs[0].0,
                "expected `class` lines, found `pair`",
            ));
        }
        let mut seen = vec![false; universe.len()];
        let mut classes = Vec::new();
        for (line, words) in &self.classes {
            let mut class = Vec::new();
            for w in words {
                let i = universe
                    .parse_index(w)
                    .map_err(|e| FormatError::at(*line, e))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(FormatError::at(
                        *line,
                        format!("word `{w}` appears in more than one class"),
                    ));
                }
                class.push(i);
            }
            classes.push(class);
        }
        Partition::from_classes(universe.clone(), &classes).map_err(FormatError::whole)
    }
}

fn header(universe: &Universe) -> String {
    format!(
        "alphabet {}\nbound {}\n",
        universe.alphabet(),
        universe.bound()
    )
}

/// Canonical relation text: pairs sorted by least member, then the other.
pub fn emit_relation(r: &PairRelation) -> String {
    let mut out = header(r.universe());
    for (u, v) in r.rendered() {
        let _ = writeln!(out, "pair {u} {v}");
    }
    out
}

/// Canonical partition text: non-singleton classes by least member, members sorted.
pub fn emit_partition(p: &Partition) -> String {
    let universe = p.universe();
    let mut out = header(universe);
    for class in p.classes().iter().filter(|c| c.len() > 1) {
        let words: Vec<String> = class.iter().map(|&i| universe.word(i).render()).collect();
        let _ = writeln!(out, "class {}", words.join(" "));
    }
    out
}

pub fn parse_relation(text: &str) -> Result<PairRelation> {
    let doc = parse_document(text)?;
    let resolved = doc.resolve(None, None)?;
    doc.relation(&resolved.universe)
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let doc = parse_document(text)?;
    let resolved = doc.resolve(None, None)?;
    doc.partition(&resolved.universe)
}

pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    let mut lines = tokens(text);
    let (line, toks) = lines
        .next()
        .ok_or_else(|| FormatError::whole("empty semigroup file"))?;
    if toks[0] != "elements" || toks.len() < 2 {
        return Err(FormatError::at(line, "expected `elements <name> ...`"));
    }
    let elements: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
    let (line, toks) = lines
        .next()
        .ok_or_else(|| FormatError::whole("missing `table` line"))?;
    if toks != ["table"] {
        return Err(FormatError::at(line, "expected `table`"));
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n);
    let mut last = line;
    for (line, toks) in lines {
        last = line;
        if table.len() == n {
            return Err(FormatError::at(
                line,
                format!("table has more than {n} rows"),
            ));
        }
        if toks.len() != n {
            return Err(FormatError::at(
                line,
                format!("row has {} entries, expected {n}", toks.len()),
            ));
        }
        let row = toks
            .iter()
            .map(|t| {
                elements
                    .iter()
                    .position(|e| e == t)
                    .ok_or_else(|| FormatError::at(line, format!("unknown element `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    if table.len() != n {
        return Err(FormatError::at(
            last,
            format!("table has {} rows, expected {n}", table.len()),
        ));
    }
    FiniteSemigroup::new(elements, table).map_err(FormatError::whole)
}

pub fn parse_letter_map(
    text: &str,
    alphabet: &Arc<Alphabet>,
    target: &FiniteSemigroup,
) -> Result<LetterMap> {
    let mut assignments: Vec<(String, String)> = Vec::new();
    for (line, toks) in tokens(text) {
        let ["map", symbol, element] = toks[..] else {
            return Err(FormatError::at(line, "expected `map <symbol> <element>`"));
        };
        if alphabet.letter(symbol).is_none() {
            return Err(FormatError::at(line, format!("unknown symbol `{symbol}`")));
        }
        if target.index_of(element).is_none() {
            return Err(FormatError::at(
                line,
                format!("unknown element `{element}`"),
            ));
        }
        if assignments.iter().any(|(s, _)| s == symbol) {
            return Err(FormatError::at(
                line,
                format!("symbol `{symbol}` mapped twice"),
            ));
        }
        assignments.push((symbol.to_string(), element.to_string()));
    }
    let refs: Vec<(&str, &str)> = assignments
        .iter()
        .map(|(s, e)| (s.as_str(), e.as_str()))
        .collect();
    LetterMap::from_names(alphabet.clone(), &refs, target).map_err(FormatError::whole)
}
