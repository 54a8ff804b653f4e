// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Each subcommand reads its inputs, calls one core
//! operation and serializes the result.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use maxplus_tc_core::generators::{
    gen_extremal_lambda_nu, gen_jittered, gen_periodic, gen_tspec_extremal,
};
use maxplus_tc_core::{
    check_lambda_nu_via_convolution, check_lambda_nu_with, check_maxplus_curve, check_sigma_rho,
    check_sigma_rho_via_convolution, check_tspec, curve_to_lambda_nu, fit_lambda_nu, fit_sigma_rho,
    fit_tspec, map_lambda_nu_to_tspec, map_tspec_to_lambda_nu, merge_traces, superpose_curves,
    superpose_indirect, superpose_lambda_nu, superpose_sigma_rho, superpose_tspec, CheckOptions,
    ConformanceReport, FitTarget, IndirectInputs, MappingVariant, MergePolicy, Rational, Trace,
    TrafficModel, Variant,
};

use crate::error::{ExitCode, ToolError};
use crate::suite::{run_property_suite, SuiteConfig};
use crate::table::{reproduce_table1, table1_json, table1_text};
use crate::trace_csv::{read_trace, render_trace, write_trace};
use crate::wire::{
    lambda_nu_json, read_json, read_model, FitJson, ModelJson, ProvenanceJson, ReportJson,
    VariantJson,
};

pub const SEED_ENV: &str = "MAXPLUS_TC_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "maxplus-tc",
    version,
    about = "Traffic models on packet arrival-time functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a trace against a model and report the first violation.
    Check(CheckArgs),
    /// Fit the tightest model of a given shape to a trace.
    Fit(FitArgs),
    /// Map between (lambda, nu) and TSpec, or reduce a max-plus curve.
    Map(MapArgs),
    /// Superpose the models of several flows into one aggregate model.
    Superpose(SuperposeArgs),
    /// Merge traces into one aggregate trace.
    Merge(MergeArgs),
    /// Generate a trace.
    Generate(GenerateArgs),
    /// Print the direct versus indirect superposition comparison table.
    Table1(Table1Args),
    /// Run the seeded randomized property suite.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Route {
    /// Direct enumeration over packet pairs or windows.
    #[default]
    Pairwise,
    /// Convolution of the trace with the model curve.
    Convolution,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub route: Route,
    /// Record at most this many tight pairs.
    #[arg(long)]
    pub max_tight_pairs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowModeArg {
    Closed,
    Open,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("fixed").required(true).args(["lambda", "nu", "tau", "rho"])))]
pub struct FitArgs {
    #[arg(long)]
    pub trace: PathBuf,
    /// Fix the rate and fit the burst of a (lambda, nu) model.
    #[arg(long)]
    pub lambda: Option<Rational>,
    /// Fix the burst and fit the rate of a (lambda, nu) model.
    #[arg(long)]
    pub nu: Option<Rational>,
    /// Fit the packet count of a TSpec with this window.
    #[arg(long)]
    pub tau: Option<Rational>,
    #[arg(long, value_enum, requires = "tau")]
    pub window_mode: Option<WindowModeArg>,
    /// Fit the burst of a (sigma, rho) model at this rate.
    #[arg(long)]
    pub rho: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    A,
    B,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Mapping variant for (lambda, nu) inputs.
    #[arg(long, value_enum, conflicts_with = "variant_file")]
    pub variant: Option<VariantArg>,
    /// Window multiple for (lambda, nu) inputs.
    #[arg(long, requires = "variant")]
    pub j: Option<u64>,
    /// Variant as JSON `{"variant": "a"|"b", "j": int}`.
    #[arg(long)]
    pub variant_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuperposeArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub models: Vec<PathBuf>,
    /// Go through the bit domain using packet length bounds.
    #[arg(long, requires_all = ["max_lengths", "min_length"])]
    pub indirect: bool,
    /// Maximum packet length of each flow, in model order.
    #[arg(long, num_args = 1.., requires = "indirect")]
    pub max_lengths: Vec<Rational>,
    /// Minimum packet length over all flows.
    #[arg(long, requires = "indirect")]
    pub min_length: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub traces: Vec<PathBuf>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Provenance JSON; defaults to `<out>.provenance.json` when `--out` is set.
    #[arg(long)]
    pub provenance: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    Periodic,
    Extremal,
    Tspec,
    Jittered,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum, required_unless_present = "config")]
    pub kind: Option<GeneratorKind>,
    /// Generator parameters as JSON, e.g. `{"kind": "periodic", "period": 10, "count": 3}`.
    #[arg(long, conflicts_with = "kind")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub period: Option<u64>,
    #[arg(long)]
    pub phase: Option<u64>,
    #[arg(long)]
    pub jitter: Option<u64>,
    #[arg(long, env = SEED_ENV)]
    pub seed: Option<u64>,
    /// Model JSON for the extremal and tspec generators.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Where the jittered generator writes its fitted model.
    #[arg(long)]
    pub model_out: Option<PathBuf>,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, default_value_t = 5)]
    pub max_flows: usize,
    #[arg(long, default_value_t = 500)]
    pub max_packets: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Generator parameters accepted by `generate --config`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenerateConfig {
    Periodic {
        period: u64,
        #[serde(default)]
        phase: u64,
        count: usize,
    },
    Extremal {
        model: ModelJson,
        count: usize,
    },
    Tspec {
        model: ModelJson,
        count: usize,
    },
    Jittered {
        period: u64,
        jitter: u64,
        seed: u64,
        count: usize,
    },
}

/// Captured output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: e.to_string(),
                    ..Outcome::default()
                },
                _ => failure(&ToolError::Usage(
                    e.render().to_string().trim_end().to_string(),
                )),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => failure(&e),
    }
}

fn failure(e: &ToolError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("{}\n", e.to_json()),
        code: e.exit_code() as i32,
    }
}

fn json_line(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn success(stdout: String) -> Outcome {
    Outcome {
        stdout,
        ..Outcome::default()
    }
}

pub fn dispatch(command: Command) -> Result<Outcome, ToolError> {
    match command {
        Command::Check(a) => check(a),
        Command::Fit(a) => fit(a),
        Command::Map(a) => map(a),
        Command::Superpose(a) => superpose(a),
        Command::Merge(a) => merge(a),
        Command::Generate(a) => generate(a),
        Command::Table1(a) => table1(a),
        Command::Suite(a) => suite(a),
    }
}

fn check(a: CheckArgs) -> Result<Outcome, ToolError> {
    let trace = read_trace(&a.trace)?;
    let model = read_model(&a.model)?;
    let opts = CheckOptions {
        tight_pair_limit: a.max_tight_pairs,
    };
    let convolution = a.route == Route::Convolution;
    let mut report: ConformanceReport = match &model {
        TrafficModel::LambdaNu(m) if convolution => check_lambda_nu_via_convolution(&trace, m),
        TrafficModel::LambdaNu(m) => check_lambda_nu_with(&trace, m, &opts),
        TrafficModel::TSpec(t) => check_tspec(&trace, t),
        TrafficModel::SigmaRho(s) if convolution => check_sigma_rho_via_convolution(&trace, s)?,
        TrafficModel::SigmaRho(s) => check_sigma_rho(&trace, s)?,
        TrafficModel::MaxPlusCurve(c) => check_maxplus_curve(&trace, c),
    };
    if let Some(limit) = a.max_tight_pairs {
        report.tight_pairs.truncate(limit);
    }
    let stdout = match a.format {
        Format::Json => json_line(&ReportJson::from(&report)),
        Format::Text => report_text(&report),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if report.conforms() {
            ExitCode::Ok
        } else {
            ExitCode::Violation
        } as i32,
    })
}

fn report_text(report: &ConformanceReport) -> String {
    let mut out = match &report.witness {
        None => "conforms\n".to_string(),
        Some(w) => format!(
            "violation at (m, n) = ({}, {}): required {}, actual {}\n",
            w.m, w.n, w.required, w.actual
        ),
    };
    out.push_str(&format!(
        "checked {} pairs, {} tight\n",
        report.checked_pairs,
        report.tight_pairs.len()
    ));
    out
}

fn fit(a: FitArgs) -> Result<Outcome, ToolError> {
    let trace = read_trace(&a.trace)?;
    let result = match (a.lambda, a.nu, a.tau, a.rho) {
        (Some(l), None, None, None) => fit_lambda_nu(&trace, FitTarget::Lambda(l))?,
        (None, Some(n), None, None) => fit_lambda_nu(&trace, FitTarget::Nu(n))?,
        (None, None, Some(t), None) => {
            let mode = match a.window_mode {
                Some(WindowModeArg::Open) => maxplus_tc_core::WindowMode::Open,
                _ => maxplus_tc_core::WindowMode::Closed,
            };
            fit_tspec(&trace, t, mode)?
        }
        (None, None, None, Some(r)) => fit_sigma_rho(&trace, r)?,
        _ => {
            return Err(ToolError::Usage(
                "give exactly one of --lambda, --nu, --tau, --rho".into(),
            ))
        }
    };
    Ok(success(json_line(&FitJson::from(&result))))
}

fn map(a: MapArgs) -> Result<Outcome, ToolError> {
    let model = read_model(&a.model)?;
    let out = match model {
        TrafficModel::LambdaNu(m) => {
            let variant = match (a.variant_file, a.variant) {
                (Some(path), _) => read_json::<VariantJson>(&path)?.to_variant()?,
                (None, Some(v)) => {
                    let v = match v {
                        VariantArg::A => Variant::A,
                        VariantArg::B => Variant::B,
                    };
                    MappingVariant::new(v, a.j.unwrap_or(1))?
                }
                (None, None) => {
                    return Err(ToolError::Usage(
                        "a (lambda, nu) model needs --variant [--j] or --variant-file".into(),
                    ))
                }
            };
            ModelJson::from(&TrafficModel::from(map_lambda_nu_to_tspec(&m, variant)))
        }
        TrafficModel::TSpec(t) => lambda_nu_json(&map_tspec_to_lambda_nu(&t), None),
        TrafficModel::MaxPlusCurve(c) => {
            let reduced = curve_to_lambda_nu(&c)?;
            lambda_nu_json(&reduced.model, Some(reduced.horizon))
        }
        TrafficModel::SigmaRho(_) => {
            return Err(ToolError::Usage(
                "no mapping is defined for sigma_rho models".into(),
            ))
        }
    };
    Ok(success(json_line(&out)))
}

fn superpose(a: SuperposeArgs) -> Result<Outcome, ToolError> {
    let models = a
        .models
        .iter()
        .map(|p| read_model(p))
        .collect::<Result<Vec<_>, _>>()?;
    let kind = models[0].type_name();
    if let Some(other) = models.iter().find(|m| m.type_name() != kind) {
        return Err(ToolError::Usage(format!(
            "cannot superpose {kind} with {}",
            other.type_name()
        )));
    }
    let out = if a.indirect {
        let lambda_nu = models
            .iter()
            .map(|m| match m {
                TrafficModel::LambdaNu(m) => Ok(*m),
                other => Err(ToolError::Usage(format!(
                    "--indirect needs lambda_nu models, got {}",
                    other.type_name()
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let min_length = a.min_length.expect("clap enforces --min-length");
        let inputs = IndirectInputs::new(lambda_nu, a.max_lengths, min_length)?;
        lambda_nu_json(&superpose_indirect(&inputs), None)
    } else {
        match &models[0] {
            TrafficModel::LambdaNu(_) => {
                let ms: Vec<_> = models
                    .iter()
                    .filter_map(|m| match m {
                        TrafficModel::LambdaNu(m) => Some(*m),
                        _ => None,
                    })
                    .collect();
                lambda_nu_json(&superpose_lambda_nu(&ms)?, None)
            }
            TrafficModel::TSpec(_) => {
                let ts: Vec<_> = models
                    .iter()
                    .filter_map(|m| match m {
                        TrafficModel::TSpec(t) => Some(*t),
                        _ => None,
                    })
                    .collect();
                ModelJson::from(&TrafficModel::from(superpose_tspec(&ts)?))
            }
            TrafficModel::SigmaRho(_) => {
                let ss: Vec<_> = models
                    .iter()
                    .filter_map(|m| match m {
                        TrafficModel::SigmaRho(s) => Some(*s),
                        _ => None,
                    })
                    .collect();
                ModelJson::from(&TrafficModel::from(superpose_sigma_rho(&ss)?))
            }
            TrafficModel::MaxPlusCurve(_) => {
                let cs: Vec<_> = models
                    .iter()
                    .filter_map(|m| match m {
                        TrafficModel::MaxPlusCurve(c) => Some(c.clone()),
                        _ => None,
                    })
                    .collect();
                let reduced = superpose_curves(&cs)?;
                lambda_nu_json(&reduced.model, Some(reduced.horizon))
            }
        }
    };
    Ok(success(json_line(&out)))
}

fn merge(a: MergeArgs) -> Result<Outcome, ToolError> {
    let traces = a
        .traces
        .iter()
        .map(|p| read_trace(p))
        .collect::<Result<Vec<_>, _>>()?;
    let merged = merge_traces(&traces, MergePolicy::ByFlowIndex)?;
    let inputs = a.traces.iter().map(|p| p.display().to_string()).collect();
    let provenance = ProvenanceJson::new(inputs, &merged.provenance);
    let sidecar = a
        .provenance
        .clone()
        .or_else(|| a.out.as_ref().map(|p| sidecar_path(p)));
    if let Some(path) = &sidecar {
        let text = serde_json::to_string_pretty(&provenance).expect("serializable") + "\n";
        std::fs::write(path, text).map_err(|e| ToolError::io(path, e))?;
    }
    match &a.out {
        Some(path) => {
            write_trace(path, &merged.trace)?;
            Ok(success(String::new()))
        }
        None => Ok(success(render_trace(&merged.trace))),
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(OsString::from).unwrap_or_default();
    name.push(".provenance.json");
    out.with_file_name(name)
}

fn generate(a: GenerateArgs) -> Result<Outcome, ToolError> {
    let config = match (&a.config, a.kind) {
        (Some(path), _) => read_json::<GenerateConfig>(path)?,
        (None, Some(kind)) => config_from_flags(kind, &a)?,
        (None, None) => unreachable!("clap requires a kind or --config"),
    };
    let (trace, fitted): (Trace, Option<ModelJson>) = match config {
        GenerateConfig::Periodic {
            period,
            phase,
            count,
        } => (gen_periodic(period, phase, count)?, None),
        GenerateConfig::Extremal { model, count } => match model.to_model()? {
            TrafficModel::LambdaNu(m) => (gen_extremal_lambda_nu(&m, count), None),
            other => {
                return Err(ToolError::Usage(format!(
                    "extremal needs a lambda_nu model, got {}",
                    other.type_name()
                )))
            }
        },
        GenerateConfig::Tspec { model, count } => match model.to_model()? {
            TrafficModel::TSpec(t) => (gen_tspec_extremal(&t, count)?, None),
            other => {
                return Err(ToolError::Usage(format!(
                    "tspec needs a tspec model, got {}",
                    other.type_name()
                )))
            }
        },
        GenerateConfig::Jittered {
            period,
            jitter,
            seed,
            count,
        } => {
            let (trace, model) = gen_jittered(period, jitter, seed, count)?;
            (trace, Some(lambda_nu_json(&model, None)))
        }
    };
    if let (Some(path), Some(model)) = (&a.model_out, &fitted) {
        std::fs::write(path, json_line(model)).map_err(|e| ToolError::io(path, e))?;
    }
    match &a.out {
        Some(path) => {
            write_trace(path, &trace)?;
            Ok(success(String::new()))
        }
        None => Ok(success(render_trace(&trace))),
    }
}

fn config_from_flags(kind: GeneratorKind, a: &GenerateArgs) -> Result<GenerateConfig, ToolError> {
    fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, ToolError> {
        v.ok_or_else(|| ToolError::Usage(format!("{kind} needs --{flag}")))
    }
    let model = |name: &str| -> Result<ModelJson, ToolError> {
        let path = a
            .model
            .as_ref()
            .ok_or_else(|| ToolError::Usage(format!("{name} needs --model")))?;
        read_json(path)
    };
    Ok(match kind {
        GeneratorKind::Periodic => GenerateConfig::Periodic {
            period: need(a.period, "period", "periodic")?,
            phase: a.phase.unwrap_or(0),
            count: need(a.count, "count", "periodic")?,
        },
        GeneratorKind::Extremal => GenerateConfig::Extremal {
            model: model("extremal")?,
            count: need(a.count, "count", "extremal")?,
        },
        GeneratorKind::Tspec => GenerateConfig::Tspec {
            model: model("tspec")?,
            count: need(a.count, "count", "tspec")?,
        },
        GeneratorKind::Jittered => GenerateConfig::Jittered {
            period: need(a.period, "period", "jittered")?,
            jitter: need(a.jitter, "jitter", "jittered")?,
            seed: a.seed.unwrap_or(0),
            count: need(a.count, "count", "jittered")?,
        },
    })
}

fn table1(a: Table1Args) -> Result<Outcome, ToolError> {
    let rows = reproduce_table1()?;
    Ok(success(match a.format {
        Format::Json => json_line(&table1_json(&rows)),
        Format::Text => table1_text(&rows),
    }))
}

fn suite(a: SuiteArgs) -> Result<Outcome, ToolError> {
    let cfg = SuiteConfig {
        seed: a.seed,
        trials: a.trials,
        max_flows: a.max_flows,
        max_packets: a.max_packets,
    };
    let started = Instant::now();
    let summary = run_property_suite(&cfg)?;
    let elapsed = started.elapsed();
    let stdout = match a.format {
        Format::Json => json_line(&summary),
        Format::Text => summary.to_text(),
    };
    let stderr = format!(
        "{}\n",
        json!({ "wall_time_ms": elapsed.as_millis() as u64 })
    );
    Ok(Outcome {
        stdout,
        stderr,
        code: if summary.passed() {
            ExitCode::Ok
        } else {
            ExitCode::Violation
        } as i32,
    })
}

/// Writes captured output to the process streams and returns the status.
pub fn emit(outcome: &Outcome) -> i32 {
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.code
}
