// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Traffic models: the max-plus `(λ, ν)` model, the TSN/DetNet TSpec, the
//! min-plus `(σ, ρ)` model and general max-plus arrival curves.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::rational::Rational;

/// `(λ, ν)`-constraint: `Ā(m, n) >= (n - m - ν)⁺ / λ` for every packet pair.
///
/// `λ` is a rate in packets per tick, `ν` a burst allowance in packets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LambdaNuModel {
    lambda: Rational,
    nu: Rational,
}

impl LambdaNuModel {
    pub fn new(lambda: Rational, nu: Rational) -> Result<Self, Error> {
        if !lambda.is_positive() {
            return Err(Error::InvalidModel(format!(
                "lambda must be > 0, got {lambda}"
            )));
        }
        if nu.is_negative() {
            return Err(Error::InvalidModel(format!("nu must be >= 0, got {nu}")));
        }
        Ok(LambdaNuModel { lambda, nu })
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    pub fn nu(&self) -> Rational {
        self.nu
    }

    /// The bounding curve `ᾱ(d) = (d - ν)⁺ / λ`, in ticks.
    pub fn curve_at(&self, d: usize) -> Rational {
        (Rational::from(d) - self.nu).positive_part() / self.lambda
    }

    /// Samples `ᾱ(0), ..., ᾱ(horizon)`.
    pub fn curve(&self, horizon: usize) -> Vec<Rational> {
        (0..=horizon).map(|d| self.curve_at(d)).collect()
    }
}

impl fmt::Display for LambdaNuModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(lambda={}, nu={})", self.lambda, self.nu)
    }
}

/// Whether two packets exactly `τ` apart may share a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WindowMode {
    /// Windows are closed intervals of length `τ`: packets with
    /// `Ā(m, n) <= τ` are in a common window.
    #[default]
    Closed,
    /// Windows have length just below `τ`: only `Ā(m, n) < τ` co-reside.
    Open,
}

impl WindowMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            WindowMode::Closed => "closed",
            WindowMode::Open => "open",
        }
    }

    /// Whether a span of `span` ticks fits in one window of length `tau`.
    pub fn fits(&self, span: u64, tau: Rational) -> bool {
        let lhs = span as i128 * tau.denom();
        match self {
            WindowMode::Closed => lhs <= tau.numer(),
            WindowMode::Open => lhs < tau.numer(),
        }
    }
}

/// TSpec: at most `K` packets in any interval of length `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TSpecModel {
    tau: Rational,
    k_max: u64,
    window_mode: WindowMode,
}

impl TSpecModel {
    pub fn new(tau: Rational, k_max: u64, window_mode: WindowMode) -> Result<Self, Error> {
        if !tau.is_positive() {
            return Err(Error::InvalidModel(format!("tau must be > 0, got {tau}")));
        }
        if k_max == 0 {
            return Err(Error::InvalidModel("K must be >= 1".into()));
        }
        Ok(TSpecModel {
            tau,
            k_max,
            window_mode,
        })
    }

    pub fn closed(tau: Rational, k_max: u64) -> Result<Self, Error> {
        Self::new(tau, k_max, WindowMode::Closed)
    }

    pub fn open(tau: Rational, k_max: u64) -> Result<Self, Error> {
        Self::new(tau, k_max, WindowMode::Open)
    }

    pub fn tau(&self) -> Rational {
        self.tau
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    pub fn window_mode(&self) -> WindowMode {
        self.window_mode
    }
}

impl fmt::Display for TSpecModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(tau={}, K={}, {})",
            self.tau,
            self.k_max,
            self.window_mode.as_str()
        )
    }
}

/// `(σ, ρ)`-constraint on cumulative bits: `A[s, t] <= ρ (t - s) + σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SigmaRhoModel {
    sigma: Rational,
    rho: Rational,
}

impl SigmaRhoModel {
    pub fn new(sigma: Rational, rho: Rational) -> Result<Self, Error> {
        if sigma.is_negative() {
            return Err(Error::InvalidModel(format!(
                "sigma must be >= 0, got {sigma}"
            )));
        }
        if !rho.is_positive() {
            return Err(Error::InvalidModel(format!("rho must be > 0, got {rho}")));
        }
        Ok(SigmaRhoModel { sigma, rho })
    }

    pub fn sigma(&self) -> Rational {
        self.sigma
    }

    pub fn rho(&self) -> Rational {
        self.rho
    }

    /// `α(t) = ρ t + σ`.
    pub fn curve_at(&self, t: Rational) -> Rational {
        self.rho * t + self.sigma
    }
}

impl fmt::Display for SigmaRhoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sigma={}, rho={})", self.sigma, self.rho)
    }
}

/// A max-plus arrival curve sampled on `0..=H`: `ᾱ(0) = 0`, nonnegative,
/// nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaxPlusCurve {
    values: Vec<Rational>,
}

impl MaxPlusCurve {
    pub fn new(values: Vec<Rational>) -> Result<Self, Error> {
        if values.len() < 2 {
            return Err(Error::InvalidModel("curve horizon must be >= 1".into()));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidModel(format!(
                "curve must start at 0, got {}",
                values[0]
            )));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidModel(format!(
                "curve decreases between n={} and n={}",
                i,
                i + 1
            )));
        }
        Ok(MaxPlusCurve { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, n: usize) -> Result<Rational, Error> {
        self.values.get(n).copied().ok_or(Error::IndexOutOfRange {
            index: n,
            len: self.horizon(),
        })
    }
}

/// Any of the supported traffic models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrafficModel {
    LambdaNu(LambdaNuModel),
    TSpec(TSpecModel),
    SigmaRho(SigmaRhoModel),
    MaxPlusCurve(MaxPlusCurve),
}

impl TrafficModel {
    pub fn type_name(&self) -> &'static str {
        match self {
            TrafficModel::LambdaNu(_) => "lambda_nu",
            TrafficModel::TSpec(_) => "tspec",
            TrafficModel::SigmaRho(_) => "sigma_rho",
            TrafficModel::MaxPlusCurve(_) => "maxplus_curve",
        }
    }
}

impl From<LambdaNuModel> for TrafficModel {
    fn from(m: LambdaNuModel) -> Self {
        TrafficModel::LambdaNu(m)
    }
}

impl From<TSpecModel> for TrafficModel {
    fn from(m: TSpecModel) -> Self {
        TrafficModel::TSpec(m)
    }
}

impl From<SigmaRhoModel> for TrafficModel {
    fn from(m: SigmaRhoModel) -> Self {
        TrafficModel::SigmaRho(m)
    }
}

impl From<MaxPlusCurve> for TrafficModel {
    fn from(m: MaxPlusCurve) -> Self {
        TrafficModel::MaxPlusCurve(m)
    }
}
