// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use serde_json::json;

use maxplus_tc_core::Error as CoreError;

/// Process exit status for each failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Violation = 1,
    Usage = 2,
    Input = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl ToolError {
    pub fn parse(origin: impl Into<String>, message: impl Into<String>) -> Self {
        ToolError::Parse {
            origin: origin.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ToolError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ToolError::Usage(_) => "usage",
            ToolError::Io { .. } => "io",
            ToolError::Parse { .. } => "parse",
            ToolError::Core(e) => e.kind(),
        }
    }

    /// Infeasible or unconstrained fits mean no model of the requested shape
    /// exists for the input, which is reported like a violation. Other core
    /// errors come from argument combinations the caller chose.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            ToolError::Usage(_) => ExitCode::Usage,
            ToolError::Io { .. } | ToolError::Parse { .. } => ExitCode::Input,
            ToolError::Core(e) => match e {
                CoreError::Infeasible { .. }
                | CoreError::Unconstrained
                | CoreError::DegenerateCurve
                | CoreError::Verification(_) => ExitCode::Violation,
                CoreError::Parse | CoreError::ZeroDenominator | CoreError::InvalidTrace(_) => {
                    ExitCode::Input
                }
                _ => ExitCode::Usage,
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": self.kind(), "message": self.to_string() })
    }
}
