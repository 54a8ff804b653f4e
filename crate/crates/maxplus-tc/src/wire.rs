// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON shapes for models, mapping variants, reports and merge provenance.
//!
//! Rationals serialize as `{"num": n, "den": d}` in lowest terms with a
//! positive denominator. On input a bare integer or a `"n/d"` string is
//! accepted as well.

use std::path::Path;

use serde::{Deserialize, Serialize};

use maxplus_tc_core::{
    ConformanceReport, FitResult, LambdaNuModel, MappingVariant, MaxPlusCurve, Provenance,
    Rational, SigmaRhoModel, TSpecModel, TrafficModel, Variant, WindowMode, Witness,
};

use crate::error::ToolError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RationalInput")]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
}

// untagged buffering does not support 128-bit integers, so inputs are 64-bit
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalInput {
    Pair { num: i64, den: i64 },
    Integer(i64),
    Text(String),
}

impl From<RationalInput> for RationalJson {
    // Validation happens in `to_rational`; a zero denominator is kept here so
    // the error surfaces with context.
    fn from(input: RationalInput) -> Self {
        match input {
            RationalInput::Pair { num, den } => RationalJson {
                num: num.into(),
                den: den.into(),
            },
            RationalInput::Integer(num) => RationalJson {
                num: num.into(),
                den: 1,
            },
            RationalInput::Text(s) => match s.parse::<Rational>() {
                Ok(r) => r.into(),
                Err(_) => RationalJson { num: 0, den: 0 },
            },
        }
    }
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        RationalJson {
            num: r.numer(),
            den: r.denom(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(self) -> Result<Rational, ToolError> {
        Rational::new(self.num, self.den).map_err(|_| {
            ToolError::parse(
                "rational",
                format!(
                    "{}/{} has a zero denominator or is malformed",
                    self.num, self.den
                ),
            )
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum WindowModeJson {
    #[default]
    Closed,
    Open,
}

impl From<WindowMode> for WindowModeJson {
    fn from(m: WindowMode) -> Self {
        match m {
            WindowMode::Closed => WindowModeJson::Closed,
            WindowMode::Open => WindowModeJson::Open,
        }
    }
}

impl From<WindowModeJson> for WindowMode {
    fn from(m: WindowModeJson) -> Self {
        match m {
            WindowModeJson::Closed => WindowMode::Closed,
            WindowModeJson::Open => WindowMode::Open,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelJson {
    LambdaNu {
        lambda: RationalJson,
        nu: RationalJson,
        /// Present when the model was reduced from a sampled curve and only
        /// holds up to this packet separation.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        horizon: Option<usize>,
    },
    Tspec {
        tau: RationalJson,
        k_max: u64,
        #[serde(default)]
        window_mode: WindowModeJson,
    },
    SigmaRho {
        sigma: RationalJson,
        rho: RationalJson,
    },
    MaxplusCurve {
        values: Vec<RationalJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        horizon: Option<usize>,
    },
}

impl From<&TrafficModel> for ModelJson {
    fn from(model: &TrafficModel) -> Self {
        match model {
            TrafficModel::LambdaNu(m) => lambda_nu_json(m, None),
            TrafficModel::TSpec(t) => ModelJson::Tspec {
                tau: t.tau().into(),
                k_max: t.k_max(),
                window_mode: t.window_mode().into(),
            },
            TrafficModel::SigmaRho(s) => ModelJson::SigmaRho {
                sigma: s.sigma().into(),
                rho: s.rho().into(),
            },
            TrafficModel::MaxPlusCurve(c) => ModelJson::MaxplusCurve {
                values: c.values().iter().map(|&v| v.into()).collect(),
                horizon: Some(c.horizon()),
            },
        }
    }
}

pub fn lambda_nu_json(m: &LambdaNuModel, horizon: Option<usize>) -> ModelJson {
    ModelJson::LambdaNu {
        lambda: m.lambda().into(),
        nu: m.nu().into(),
        horizon,
    }
}

impl ModelJson {
    pub fn to_model(&self) -> Result<TrafficModel, ToolError> {
        let model = match self {
            ModelJson::LambdaNu { lambda, nu, .. } => {
                LambdaNuModel::new(lambda.to_rational()?, nu.to_rational()?)?.into()
            }
            ModelJson::Tspec {
                tau,
                k_max,
                window_mode,
            } => TSpecModel::new(tau.to_rational()?, *k_max, (*window_mode).into())?.into(),
            ModelJson::SigmaRho { sigma, rho } => {
                SigmaRhoModel::new(sigma.to_rational()?, rho.to_rational()?)?.into()
            }
            ModelJson::MaxplusCurve { values, horizon } => {
                let values = values
                    .iter()
                    .map(|v| v.to_rational())
                    .collect::<Result<Vec<_>, _>>()?;
                let curve = MaxPlusCurve::new(values)?;
                if horizon.is_some_and(|h| h != curve.horizon()) {
                    return Err(ToolError::parse(
                        "model",
                        format!(
                            "horizon {} disagrees with {} samples",
                            horizon.unwrap_or(0),
                            curve.values().len()
                        ),
                    ));
                }
                curve.into()
            }
        };
        Ok(model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantJson {
    pub variant: VariantName,
    pub j: u64,
}

impl VariantJson {
    pub fn to_variant(self) -> Result<MappingVariant, ToolError> {
        let v = match self.variant {
            VariantName::A => Variant::A,
            VariantName::B => Variant::B,
        };
        Ok(MappingVariant::new(v, self.j)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub m: usize,
    pub n: usize,
    pub required: RationalJson,
    pub actual: RationalJson,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            m: w.m,
            n: w.n,
            required: w.required.into(),
            actual: w.actual.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub conforms: bool,
    pub witness: Option<WitnessJson>,
    pub tight_pairs: Vec<[usize; 2]>,
    pub checked_pairs: u64,
}

impl From<&ConformanceReport> for ReportJson {
    fn from(r: &ConformanceReport) -> Self {
        ReportJson {
            conforms: r.conforms(),
            witness: r.witness.as_ref().map(WitnessJson::from),
            tight_pairs: r.tight_pairs.iter().map(|&(m, n)| [m, n]).collect(),
            checked_pairs: r.checked_pairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitJson {
    pub model: ModelJson,
    pub binding_pair: Option<[usize; 2]>,
}

impl From<&FitResult> for FitJson {
    fn from(f: &FitResult) -> Self {
        FitJson {
            model: (&f.model).into(),
            binding_pair: f.binding_pair.map(|(m, n)| [m, n]),
        }
    }
}

/// One aggregate packet's origin. `aggregate` and `index` are 1-based,
/// `flow` is the 0-based position in `inputs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub aggregate: usize,
    pub flow: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub inputs: Vec<String>,
    pub packets: Vec<ProvenanceEntry>,
}

impl ProvenanceJson {
    pub fn new(inputs: Vec<String>, provenance: &[Provenance]) -> Self {
        ProvenanceJson {
            inputs,
            packets: provenance
                .iter()
                .enumerate()
                .map(|(k, p)| ProvenanceEntry {
                    aggregate: k + 1,
                    flow: p.flow,
                    index: p.index,
                })
                .collect(),
        }
    }
}

/// Reads and deserializes a JSON file, mapping failures to IO / parse errors.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, ToolError> {
    let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| ToolError::parse(path.display().to_string(), e.to_string()))
}

pub fn read_model(path: &Path) -> Result<TrafficModel, ToolError> {
    read_json::<ModelJson>(path)?.to_model()
}
