//! Census report rendering.
//!
//! The text layout lists, per δ, a heading with the group count spelled
//! out and one `NAME = [ order, index ]` line per group:
//!
//! ```text
//! Four groups with difference 1
//! C3 = [ 3, 1 ]
//! C4 = [ 4, 1 ]
//! S3 = [ 6, 1 ]
//! D8 = [ 8, 3 ]
//! ```

use std::fmt::Write as _;

use serde::Serialize;

use crate::census::{CensusResult, Completeness, GroupRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            other => Err(format!("unknown format {other:?} (expected text or structured)")),
        }
    }
}

pub fn emit_report(result: &CensusResult, format: Format) -> String {
    match format {
        Format::Text => text_report(result),
        Format::Structured => structured_report(result),
    }
}

const ONES: [&str; 20] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven", "twelve",
    "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
];
const TENS: [&str; 10] = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];

/// English cardinal for `n`, e.g. `twenty-one`. Falls back to digits from
/// one thousand on.
pub fn number_word(n: usize) -> String {
    match n {
        0..=19 => ONES[n].to_string(),
        20..=99 => match n % 10 {
            0 => TENS[n / 10].to_string(),
            r => format!("{}-{}", TENS[n / 10], ONES[r]),
        },
        100..=999 => match n % 100 {
            0 => format!("{} hundred", ONES[n / 100]),
            r => format!("{} hundred {}", ONES[n / 100], number_word(r)),
        },
        _ => n.to_string(),
    }
}

fn capitalized(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Spreads the compact catalog name out: `C2x(C3:C4)` becomes
/// `C2 x (C3 : C4)`.
pub fn display_name(compact: &str) -> String {
    let mut out = String::with_capacity(compact.len() + 8);
    for ch in compact.chars() {
        match ch {
            'x' | ':' | '.' | '=' => {
                out.push(' ');
                out.push(ch);
                out.push(' ');
            }
            _ => out.push(ch),
        }
    }
    out
}

fn group_line(out: &mut String, r: &GroupRecord) {
    writeln!(out, "{} = {}", display_name(&r.name), r.id).unwrap();
}

pub fn heading(count: usize, delta: u64) -> String {
    let noun = if count == 1 { "group" } else { "groups" };
    format!("{} {noun} with difference {delta}", capitalized(&number_word(count)))
}

fn text_report(result: &CensusResult) -> String {
    let mut out = String::new();
    for (&delta, groups) in &result.per_delta {
        out.push_str(&heading(groups.len(), delta));
        if result.completeness[&delta] == Completeness::Partial {
            write!(
                out,
                " (partial: needs orders up to {}, catalog complete through {})",
                8 * delta,
                result.complete_through
            )
            .unwrap();
        }
        out.push('\n');
        for r in groups {
            group_line(&mut out, r);
        }
        out.push('\n');
    }
    writeln!(
        out,
        "Elementary abelian 2-groups (difference 0) of order at most {}",
        8 * result.delta_max
    )
    .unwrap();
    for r in &result.delta_zero {
        group_line(&mut out, r);
    }
    out
}

#[derive(Serialize)]
struct StructuredBucket<'a> {
    delta: u64,
    completeness: Completeness,
    count: usize,
    groups: &'a [GroupRecord],
}

#[derive(Serialize)]
struct Structured<'a> {
    delta_max: u64,
    complete_through: usize,
    buckets: Vec<StructuredBucket<'a>>,
    delta_zero: &'a [GroupRecord],
}

fn structured_report(result: &CensusResult) -> String {
    let doc = Structured {
        delta_max: result.delta_max,
        complete_through: result.complete_through,
        buckets: result
            .per_delta
            .iter()
            .map(|(&delta, groups)| StructuredBucket {
                delta,
                completeness: result.completeness[&delta],
                count: groups.len(),
                groups,
            })
            .collect(),
        delta_zero: &result.delta_zero,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("census serializes");
    s.push('\n');
    s
}
