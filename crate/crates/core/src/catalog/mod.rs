//! Small-group catalogs: a line-oriented text format listing groups by
//! library id, name and permutation generators.
//!
//! ```text
//! # indexing: gap
//! !complete 1-8
//!
//! # dihedral group, natural action
//! 8 3 D8 : (1,2,3,4) ; (1,3)
//! ```
//!
//! Comment lines directly above an entry are kept with it as provenance.
//! Other comments are catalog-level. A catalog-level comment reading
//! `indexing: gap` declares that indices follow the GAP SmallGroups
//! numbering.

mod synth;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::Path;

use crate::error::Result;
use crate::group::{closure_cap, Group, GroupId};
use crate::perm::{parse_cycles, Permutation};

pub use synth::{synthesize, ReferenceEntry, SynthOptions, SynthReport};
pub use validate::{known_group_count, validate_catalog, Diagnostic, DiagnosticKind, KNOWN_COUNTS_MAX};

/// Marker comment for GAP-compatible indices.
pub const GAP_INDEXING: &str = "indexing: gap";

const DESK_CATALOG: &str = include_str!("../../data/desk_catalog.txt");

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub order: usize,
    pub index: usize,
    pub name: String,
    /// All of the same degree: the largest point mentioned in the entry.
    pub generators: Vec<Permutation>,
    /// Provenance comments, without the leading `#`.
    pub comments: Vec<String>,
}

impl CatalogEntry {
    pub fn id(&self) -> GroupId {
        GroupId {
            order: self.order,
            index: self.index,
        }
    }

    /// Closes the generators under the process-wide cap and attaches the id
    /// and name. Fails if the closure order disagrees with `order`.
    pub fn group(&self) -> Result<Group> {
        let g = Group::closure(&self.generators, closure_cap())?;
        Ok(g.with_id(self.id())?.with_name(self.name.clone()))
    }

    pub fn degree(&self) -> usize {
        self.generators.first().map_or(1, Permutation::degree)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub complete_orders: BTreeSet<usize>,
    /// Catalog-level comments, without the leading `#`.
    pub comments: Vec<String>,
}

impl Catalog {
    /// Whether indices follow the GAP SmallGroups numbering.
    pub fn gap_indexing(&self) -> bool {
        self.comments.iter().any(|c| c.trim() == GAP_INDEXING)
    }

    pub fn entry(&self, id: GroupId) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id() == id)
    }

    pub fn entries_of_order(&self, order: usize) -> impl Iterator<Item = &CatalogEntry> + '_ {
        self.entries.iter().filter(move |e| e.order == order)
    }

    /// Whether every order in `1..=n` is declared complete.
    pub fn complete_through(&self, n: usize) -> bool {
        (1..=n).all(|o| self.complete_orders.contains(&o))
    }

    pub fn sort(&mut self) {
        self.entries.sort_by_key(|e| (e.order, e.index));
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)?;
        Ok(parse_catalog(&text)?)
    }

    /// Serializes in canonical layout: catalog comments, the `!complete`
    /// directive, then entries with their provenance comments.
    pub fn write(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            writeln!(out, "#{c}").unwrap();
        }
        if !self.complete_orders.is_empty() {
            writeln!(out, "!complete {}", format_orders(&self.complete_orders)).unwrap();
        }
        if !out.is_empty() && !self.entries.is_empty() {
            out.push('\n');
        }
        for e in &self.entries {
            for c in &e.comments {
                writeln!(out, "#{c}").unwrap();
            }
            write!(out, "{} {} {} :", e.order, e.index, e.name).unwrap();
            for (i, g) in e.generators.iter().enumerate() {
                out.push_str(if i == 0 { " " } else { " ; " });
                write!(out, "{g}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.write())
    }
}

/// Compresses orders into `a-b` runs, e.g. `1-40,48,64`.
pub fn format_orders(orders: &BTreeSet<usize>) -> String {
    let mut parts = Vec::new();
    let mut iter = orders.iter().copied().peekable();
    while let Some(start) = iter.next() {
        let mut end = start;
        while iter.peek() == Some(&(end + 1)) {
            end = iter.next().unwrap();
        }
        parts.push(if end == start {
            start.to_string()
        } else {
            format!("{start}-{end}")
        });
    }
    parts.join(",")
}

fn parse_orders(text: &str, line: usize, offset: usize) -> std::result::Result<BTreeSet<usize>, ParseError> {
    let mut set = BTreeSet::new();
    let mut col = offset;
    for part in text.split(',') {
        let trimmed = part.trim();
        let here = col + (part.len() - part.trim_start().len());
        let err = |message: String| ParseError {
            line,
            column: here + 1,
            message,
        };
        let num = |s: &str| -> std::result::Result<usize, ParseError> {
            match s.trim().parse::<usize>() {
                Ok(0) => Err(err("orders start at 1".into())),
                Ok(v) => Ok(v),
                Err(_) => Err(err(format!("expected an order, found {:?}", s.trim()))),
            }
        };
        match trimmed.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(err(format!("empty range {a}-{b}")));
                }
                set.extend(a..=b);
            }
            None => {
                set.insert(num(trimmed)?);
            }
        }
        col += part.len() + 1;
    }
    Ok(set)
}

/// Parses the catalog format. Duplicate `(order, index)` pairs are errors.
pub fn parse_catalog(text: &str) -> std::result::Result<Catalog, ParseError> {
    let mut catalog = Catalog::default();
    let mut pending: Vec<String> = Vec::new();
    let mut seen: BTreeMap<GroupId, usize> = BTreeMap::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim_end_matches('\r');
        let body = line.trim_start();
        let indent = line.len() - body.len();
        if body.is_empty() {
            catalog.comments.append(&mut pending);
        } else if let Some(c) = body.strip_prefix('#') {
            pending.push(c.to_string());
        } else if let Some(rest) = body.strip_prefix('!') {
            catalog.comments.append(&mut pending);
            let word_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let (word, args) = rest.split_at(word_len);
            if word != "complete" {
                return Err(ParseError {
                    line: line_no,
                    column: indent + 1,
                    message: format!("unknown directive !{word}"),
                });
            }
            let offset = indent + 1 + word_len;
            if args.trim().is_empty() {
                return Err(ParseError {
                    line: line_no,
                    column: offset + 1,
                    message: "!complete needs a list of orders".into(),
                });
            }
            catalog.complete_orders.extend(parse_orders(args, line_no, offset)?);
        } else {
            let mut entry = parse_entry(line, line_no)?;
            entry.comments = std::mem::take(&mut pending);
            if let Some(first) = seen.insert(entry.id(), line_no) {
                return Err(ParseError {
                    line: line_no,
                    column: indent + 1,
                    message: format!("duplicate id {} (first defined on line {first})", entry.id()),
                });
            }
            catalog.entries.push(entry);
        }
    }
    catalog.comments.append(&mut pending);
    Ok(catalog)
}

fn parse_entry(line: &str, line_no: usize) -> std::result::Result<CatalogEntry, ParseError> {
    let err = |column: usize, message: String| ParseError {
        line: line_no,
        column: column + 1,
        message,
    };
    let bytes = line.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let number = |i: &mut usize, what: &str| -> std::result::Result<usize, ParseError> {
        skip_ws(i);
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        match line[start..*i].parse::<usize>() {
            Ok(0) => Err(err(start, format!("{what} must be positive"))),
            Ok(v) => Ok(v),
            Err(_) => Err(err(start, format!("expected {what}"))),
        }
    };
    let order = number(&mut i, "an order")?;
    let index = number(&mut i, "an index")?;
    skip_ws(&mut i);
    let name_start = i;
    while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
        i += 1;
    }
    if name_start == i {
        return Err(err(i, "expected a name".into()));
    }
    let name = line[name_start..i].to_string();
    skip_ws(&mut i);
    if bytes.get(i) != Some(&b':') {
        return Err(err(i, "expected ':' after the name".into()));
    }
    i += 1;

    let mut gens_cycles = Vec::new();
    let mut start = i;
    for piece in line[i..].split(';') {
        let cycles = parse_cycles(piece).map_err(|e| err(start + e.column, e.message))?;
        gens_cycles.push(cycles);
        start += piece.len() + 1;
    }
    let degree = gens_cycles.iter().flatten().flatten().copied().max().unwrap_or(1);
    let generators = gens_cycles
        .iter()
        .map(|c| Permutation::from_cycles(degree, c).expect("validated cycles"))
        .collect();
    Ok(CatalogEntry {
        order,
        index,
        name,
        generators,
        comments: Vec::new(),
    })
}

/// The catalog shipped with the library: every group of order at most 40,
/// with GAP SmallGroups ids and names.
pub fn bundled_desk_catalog() -> Catalog {
    parse_catalog(DESK_CATALOG).expect("bundled catalog parses")
}
