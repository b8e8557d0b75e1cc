//! Plain-text family files.
//!
//! ```text
//! # optional comments
//! n=4 k=2
//! 1 2
//! 1 3
//! 2 3
//! ```
//!
//! One member per nonblank line, elements 1-based and space separated.
//! For `k = 0` the single possible member `∅` is written as `-`.

use std::fmt::Write as _;

use super::{Family, GroundParams, KSet, Subset};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses an `n=<int> k=<int>` header line.
pub(crate) fn parse_header(line_no: usize, line: &str) -> Result<GroundParams> {
    let mut n = None;
    let mut k = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("malformed header token `{tok}`")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("malformed header value `{value}`")))?;
        let slot = match key {
            "n" => &mut n,
            "k" => &mut k,
            _ => return Err(parse_err(line_no, format!("unknown header key `{key}`"))),
        };
        if slot.replace(value).is_some() {
            return Err(parse_err(line_no, format!("header repeats `{key}`")));
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => GroundParams::new(n, k).map_err(|e| parse_err(line_no, e.to_string())),
        _ => Err(parse_err(line_no, "malformed header: expected `n=<int> k=<int>`")),
    }
}

/// Parses one member line against `params`.
pub(crate) fn parse_member(line_no: usize, line: &str, params: GroundParams) -> Result<KSet> {
    if line.trim() == "-" {
        if params.k == 0 {
            return Ok(Subset::EMPTY);
        }
        return Err(parse_err(line_no, format!("wrong set size: expected {} elements", params.k)));
    }
    let mut mask = 0u64;
    let mut count = 0u32;
    for tok in line.split_whitespace() {
        let e: u32 = tok
            .parse()
            .map_err(|_| parse_err(line_no, format!("malformed element `{tok}`")))?;
        if e == 0 || e > params.n {
            return Err(parse_err(line_no, format!("element out of range: {e} not in 1..={}", params.n)));
        }
        if mask >> (e - 1) & 1 == 1 {
            return Err(parse_err(line_no, format!("element {e} repeated")));
        }
        mask |= 1 << (e - 1);
        count += 1;
    }
    if count != params.k {
        return Err(parse_err(line_no, format!("wrong set size: {count} elements, expected {}", params.k)));
    }
    Ok(Subset(mask))
}

pub(crate) fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut params: Option<GroundParams> = None;
    let mut members: Vec<(usize, KSet)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if is_skippable(line) {
            continue;
        }
        match params {
            None => params = Some(parse_header(line_no, line)?),
            Some(p) => members.push((line_no, parse_member(line_no, line, p)?)),
        }
    }
    let params = params.ok_or_else(|| parse_err(1, "malformed header: file has no `n=<int> k=<int>` line"))?;
    let mut sorted = members.clone();
    sorted.sort_by_key(|(_, m)| *m);
    for w in sorted.windows(2) {
        if w[0].1 == w[1].1 {
            let line = w[0].0.max(w[1].0);
            return Err(parse_err(line, format!("duplicate set {} (first seen on line {})", w[0].1, w[0].0.min(w[1].0))));
        }
    }
    Family::new(params, members.into_iter().map(|(_, m)| m))
}

/// Member lines only, colex order, LF terminated.
pub fn write_members(out: &mut String, family: &Family) {
    for m in family.members() {
        if m.is_empty() {
            out.push_str("-\n");
            continue;
        }
        let parts: Vec<String> = m.elements().iter().map(u32::to_string).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
}

pub fn serialize_family(family: &Family) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", family.params());
    write_members(&mut out, family);
    out
}
