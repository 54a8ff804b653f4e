// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;
use core::fmt;

/// Errors raised by the traffic-calculus operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A rational with a zero denominator was requested.
    ZeroDenominator,
    /// A textual number could not be parsed.
    Parse,
    /// Packet or sequence index outside the valid range `0..=len`.
    IndexOutOfRange { index: usize, len: usize },
    /// The operation needs per-packet lengths but the trace has none.
    MissingLengths,
    /// Trace construction rejected its input.
    InvalidTrace(String),
    /// Model parameters violate the model's invariants.
    InvalidModel(String),
    /// Too few operands for the operation.
    Arity { needed: usize, got: usize },
    /// Inputs are individually valid but do not fit together.
    Inconsistent(String),
    /// No rate makes the trace conform: packets `m` and `n` coincide in time
    /// although `n - m` exceeds the burst allowance.
    Infeasible { m: usize, n: usize },
    /// No packet pair constrains the rate, so every `λ > 0` fits and no
    /// smallest one exists.
    Unconstrained,
    /// A max-plus curve that is identically zero admits no finite rate.
    DegenerateCurve,
    /// A parameter is not representable on the integer tick grid.
    Grid(String),
    /// A generated trace failed its own post-hoc conformance check.
    Verification(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => f.write_str("zero denominator"),
            Error::Parse => f.write_str("malformed number"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 0..={len}")
            }
            Error::MissingLengths => f.write_str("trace carries no packet lengths"),
            Error::InvalidTrace(msg) => write!(f, "invalid trace: {msg}"),
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::Arity { needed, got } => {
                write!(f, "expected at least {needed} operands, got {got}")
            }
            Error::Inconsistent(msg) => write!(f, "inconsistent inputs: {msg}"),
            Error::Infeasible { m, n } => write!(
                f,
                "infeasible: packets {m} and {n} arrive together but exceed the burst allowance"
            ),
            Error::Unconstrained => f.write_str("no packet pair constrains the rate"),
            Error::DegenerateCurve => f.write_str("curve is identically zero on 1..=H"),
            Error::Grid(msg) => write!(f, "not on the tick grid: {msg}"),
            Error::Verification(msg) => write!(f, "generated trace failed verification: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Stable machine-readable tag for each variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "zero_denominator",
            Error::Parse => "parse",
            Error::IndexOutOfRange { .. } => "range",
            Error::MissingLengths => "missing_lengths",
            Error::InvalidTrace(_) => "invalid_trace",
            Error::InvalidModel(_) => "invalid_model",
            Error::Arity { .. } => "arity",
            Error::Inconsistent(_) => "inconsistent",
            Error::Infeasible { .. } => "infeasible",
            Error::Unconstrained => "unconstrained",
            Error::DegenerateCurve => "degenerate_curve",
            Error::Grid(_) => "grid",
            Error::Verification(_) => "verification",
        }
    }
}
