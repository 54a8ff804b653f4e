// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Trace CSV: an optional `arrival_ticks[,length_bits]` header, then one
//! packet per line.

use std::fmt::Write as _;
use std::path::Path;

use maxplus_tc_core::trace::DEFAULT_TICK_UNIT;
use maxplus_tc_core::Trace;

use crate::error::ToolError;

const ARRIVAL_COLUMN: &str = "arrival_ticks";
const LENGTH_COLUMN: &str = "length_bits";

/// Parses trace CSV text. `origin` names the source in error messages.
pub fn parse_trace(text: &str, origin: &str) -> Result<Trace, ToolError> {
    let err = |line: usize, msg: String| ToolError::parse(format!("{origin}:{line}"), msg);

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();

    let mut columns: Option<usize> = None;
    if let Some(&(lineno, first)) = lines.peek() {
        if first.starts_with(|c: char| c.is_ascii_alphabetic()) {
            let names: Vec<&str> = first.split(',').map(str::trim).collect();
            columns =
                Some(match names.as_slice() {
                    [a] if *a == ARRIVAL_COLUMN => 1,
                    [a, l] if *a == ARRIVAL_COLUMN && *l == LENGTH_COLUMN => 2,
                    _ => return Err(err(
                        lineno,
                        format!(
                            "header must be `{ARRIVAL_COLUMN}[,{LENGTH_COLUMN}]`, got `{first}`"
                        ),
                    )),
                });
            lines.next();
        }
    }

    let mut arrivals = Vec::new();
    let mut lengths = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let width = *columns.get_or_insert(fields.len());
        if fields.len() != width || !(1..=2).contains(&width) {
            return Err(err(
                lineno,
                format!("expected {width} field(s), got {}", fields.len()),
            ));
        }
        let tick = parse_u64(fields[0]).ok_or_else(|| {
            err(
                lineno,
                format!("arrival `{}` is not a nonnegative integer", fields[0]),
            )
        })?;
        if arrivals.last().is_some_and(|&prev| tick < prev) {
            return Err(err(
                lineno,
                format!("arrival {tick} precedes the previous row"),
            ));
        }
        arrivals.push(tick);
        if width == 2 {
            let bits = parse_u64(fields[1]).filter(|&b| b > 0).ok_or_else(|| {
                err(
                    lineno,
                    format!("length `{}` is not a positive integer", fields[1]),
                )
            })?;
            lengths.push(bits);
        }
    }
    let lengths = (columns == Some(2)).then_some(lengths);
    Ok(Trace::build(arrivals, lengths, DEFAULT_TICK_UNIT.into())?)
}

fn parse_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn read_trace(path: &Path) -> Result<Trace, ToolError> {
    let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    parse_trace(&text, &path.display().to_string())
}

/// Renders a trace as CSV; the header is always written.
pub fn render_trace(trace: &Trace) -> String {
    let mut out = String::with_capacity(trace.len() * 8 + 32);
    match trace.lengths() {
        Some(lengths) => {
            let _ = writeln!(out, "{ARRIVAL_COLUMN},{LENGTH_COLUMN}");
            for (a, l) in trace.arrivals().iter().zip(lengths) {
                let _ = writeln!(out, "{a},{l}");
            }
        }
        None => {
            let _ = writeln!(out, "{ARRIVAL_COLUMN}");
            for a in trace.arrivals() {
                let _ = writeln!(out, "{a}");
            }
        }
    }
    out
}

pub fn write_trace(path: &Path, trace: &Trace) -> Result<(), ToolError> {
    std::fs::write(path, render_trace(trace)).map_err(|e| ToolError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_and_without_header() {
        let t = parse_trace("arrival_ticks,length_bits\n0,100\n5,200\n", "t").unwrap();
        assert_eq!(t.arrivals(), &[0, 5]);
        assert_eq!(t.lengths(), Some(&[100, 200][..]));
        assert_eq!(parse_trace(&render_trace(&t), "t").unwrap(), t);

        let bare = parse_trace("3\n3\n7\n", "t").unwrap();
        assert_eq!(bare.arrivals(), &[3, 3, 7]);
        assert!(!bare.has_lengths());
        assert_eq!(render_trace(&bare), "arrival_ticks\n3\n3\n7\n");
    }

    #[test]
    fn empty_inputs() {
        assert!(parse_trace("", "t").unwrap().is_empty());
        assert!(parse_trace("arrival_ticks\n", "t").unwrap().is_empty());
    }

    #[test]
    fn rejects_malformed_rows() {
        for bad in [
            "5\n3\n",
            "-1\n",
            "1.5\n",
            "0,0\n",
            "0,10\n1\n",
            "arrival_ticks\n1,2\n",
            "ticks\n1\n",
            "+4\n",
        ] {
            let e = parse_trace(bad, "t").unwrap_err();
            assert_eq!(e.kind(), "parse", "{bad:?} gave {e}");
        }
    }

    #[test]
    fn error_carries_line_number() {
        let e = parse_trace("arrival_ticks\n1\n2\nx\n", "flow.csv").unwrap_err();
        assert!(e.to_string().starts_with("flow.csv:4:"), "{e}");
    }
}
