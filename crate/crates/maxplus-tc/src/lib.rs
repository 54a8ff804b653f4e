// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! File formats, command-line front end and randomized property suite for
//! [`maxplus_tc_core`].
//!
//! - [`trace_csv`]: trace CSV reader and writer.
//! - [`wire`]: JSON shapes for models, reports, fits and merge provenance.
//! - [`table`]: the direct versus indirect superposition comparison.
//! - [`suite`]: seeded property suite.
//! - [`cli`]: argument parsing and subcommand dispatch.

pub mod cli;
pub mod error;
pub mod suite;
pub mod table;
pub mod trace_csv;
pub mod wire;

pub use error::{ExitCode, ToolError};
pub use maxplus_tc_core as core;
