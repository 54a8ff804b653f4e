// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Traffic calculus on packet arrival-time functions.
//!
//! This crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! - [`rational`], [`trace`], [`model`]: exact parameters, packet traces and
//!   the `(λ, ν)`, TSpec, `(σ, ρ)` and max-plus curve models.
//! - [`conformance`]: exhaustive checkers with violation witnesses and
//!   tightest-parameter fitting.
//! - [`algebra`]: max-plus / min-plus convolution, mappings between `(λ, ν)`
//!   and TSpec, and the superposition operators.
//! - [`aggregation`]: multiplexing flows into one aggregate trace.
//! - [`generators`]: periodic, jittered, extremal and random conforming
//!   traces driven by a portable seeded LCG.
//!
//! File formats, the CLI and the randomized property suite live in the
//! `maxplus-tc` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod aggregation;
pub mod algebra;
pub mod conformance;
pub mod error;
pub mod generators;
pub mod model;
pub mod rational;
pub mod trace;

pub use aggregation::{
    aggregate_by_composition, merge_traces, MergePolicy, MergedTrace, Provenance,
};
pub use algebra::{
    curve_to_lambda_nu, map_lambda_nu_to_tspec, map_tspec_to_lambda_nu, maxplus_convolve,
    minplus_convolve, superpose_curves, superpose_indirect, superpose_lambda_nu, superpose_pair,
    superpose_sigma_rho, superpose_tspec, CurveReduction, IndirectInputs, MappingVariant, Variant,
};
pub use conformance::{
    check_lambda_nu, check_lambda_nu_via_convolution, check_lambda_nu_with, check_maxplus_curve,
    check_sigma_rho, check_sigma_rho_via_convolution, check_tspec, fit_lambda_nu, fit_sigma_rho,
    fit_tspec, CheckOptions, ConformanceReport, FitResult, FitTarget, Witness,
};
pub use error::Error;
pub use model::{LambdaNuModel, MaxPlusCurve, SigmaRhoModel, TSpecModel, TrafficModel, WindowMode};
pub use rational::Rational;
pub use trace::Trace;
